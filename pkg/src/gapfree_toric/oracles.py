"""Brute-force references that share no code path with the walk enumerations.

Both work directly with the incidence matrix of the graph: the Graver oracle
scans every integer kernel vector in a box, the circuit oracle looks at every
edge subset with a one-dimensional kernel.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd

import numpy as np

from .graph import Graph
from .toric import Binomial


def incidence_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.m), dtype=np.int64)
    for j, (u, v) in enumerate(g.edges):
        a[u - 1, j] = 1
        a[v - 1, j] = 1
    return a


def _box(k: int, bound: int) -> np.ndarray:
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(product(range(-bound, bound + 1), repeat=k)), dtype=np.int64)


def kernel_box(g: Graph, bound: int = 2) -> np.ndarray:
    """All nonzero integer kernel vectors with entries in ``[-bound, bound]``.

    Meet in the middle: the coordinates are split in two halves and the halves
    are matched on their (negated) vertex-degree images.
    """
    a = incidence_matrix(g)
    half = g.m // 2
    left, right = _box(half, bound), _box(g.m - half, bound)
    img_left = left @ a[:, :half].T
    img_right = right @ a[:, half:].T
    buckets: dict[bytes, list[int]] = {}
    for i, row in enumerate(img_right):
        buckets.setdefault((-row).tobytes(), []).append(i)
    out = []
    for i, row in enumerate(img_left):
        for j in buckets.get(row.tobytes(), ()):
            out.append(np.concatenate([left[i], right[j]]))
    if not out:
        return np.zeros((0, g.m), dtype=np.int64)
    vecs = np.array(out)
    return vecs[np.any(vecs != 0, axis=1)]


def conformally_minimal(vecs: np.ndarray) -> np.ndarray:
    """Rows with no other nonzero row conformally below them."""
    order = np.argsort(np.abs(vecs).sum(axis=1), kind="stable")
    minimal: list[np.ndarray] = []
    for idx in order:
        v = vecs[idx]
        if minimal:
            mins = np.array(minimal)
            below = np.all((mins * v >= 0) & (np.abs(mins) <= np.abs(v)), axis=1)
            if below.any():
                continue
        minimal.append(v)
    return np.array(minimal) if minimal else np.zeros((0, vecs.shape[1]), dtype=np.int64)


def graver_oracle(g: Graph, bound: int = 2) -> set[Binomial]:
    """Conformally minimal kernel vectors with entries bounded by ``bound``."""
    return {Binomial.from_vector(tuple(int(x) for x in v)).normalized() for v in conformally_minimal(kernel_box(g, bound))}


def _nullspace_vector(cols: list[list[int]]):
    """Kernel of the matrix with the given columns if it is one-dimensional."""
    rows = len(cols[0])
    k = len(cols)
    mat = [[Fraction(cols[j][i]) for j in range(k)] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        piv = mat[r][c]
        mat[r] = [x / piv for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(k) if c not in pivots]
    if len(free) != 1:
        return None
    (fc,) = free
    vec = [Fraction(0)] * k
    vec[fc] = Fraction(1)
    for i, c in enumerate(pivots):
        vec[c] = -mat[i][fc]
    denom = 1
    for x in vec:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return [x // g for x in ints]


def circuit_oracle(g: Graph) -> set[Binomial]:
    """Support-minimal kernel vectors, one per edge subset with a 1-dimensional kernel of full support."""
    a = incidence_matrix(g)
    cols = [[int(x) for x in a[:, j]] for j in range(g.m)]
    found = set()
    for size in range(2, min(g.m, g.n + 1) + 1):
        for subset in combinations(range(g.m), size):
            vec = _nullspace_vector([cols[j] for j in subset])
            if vec is None or 0 in vec:
                continue
            full = [0] * g.m
            for j, x in zip(subset, vec):
                full[j] = x
            found.add(Binomial.from_vector(full).normalized())
    return found
