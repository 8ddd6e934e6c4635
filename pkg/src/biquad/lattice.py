"""Lattice points of Z^4 inside a polytope given in embedding coordinates.

Points u are mapped to embedding space by s = E @ u.  The polytope is
{s : A @ s <= b}.  Coordinates are enumerated one at a time; the range of the
next coordinate over the current slice is the solution of a tiny linear
program, solved by enumerating the vertices of the slice.  Bounds are widened
by a safety margin and outer-rounded, so the enumeration may visit a few
points outside the polytope but never skips one inside it; callers must
filter leaves with an exact test.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterator

import numpy as np

_REL_MARGIN = 1e-7
_ABS_MARGIN = 1e-6


class PolytopeEnumerator:
    def __init__(self, embed: np.ndarray, constraints: np.ndarray):
        self.E = np.asarray(embed, dtype=float)
        self.F = np.linalg.inv(self.E)
        self.A = np.asarray(constraints, dtype=float)
        m = self.A.shape[0]
        self._levels = []
        for k in range(4):
            subsets, invs = [], []
            for sub in combinations(range(m), 4 - k):
                mat = np.vstack([self.F[:k], self.A[list(sub)]]) if k else self.A[list(sub)]
                if abs(np.linalg.det(mat)) < 1e-12 * max(1.0, np.abs(mat).max()) ** 4:
                    continue
                if np.linalg.cond(mat) > 1e12:
                    continue
                subsets.append(sub)
                invs.append(np.linalg.inv(mat))
            self._levels.append((np.array(subsets, dtype=int).reshape(len(subsets), 4 - k),
                                 np.array(invs).reshape(len(invs), 4, 4)))

    def _range(self, k: int, prefix: list[int], b: np.ndarray) -> tuple[int, int] | None:
        subsets, invs = self._levels[k]
        if len(subsets) == 0:
            return None
        rhs = np.empty((len(subsets), 4))
        if k:
            rhs[:, :k] = prefix
        rhs[:, k:] = b[subsets]
        verts = np.einsum("sij,sj->si", invs, rhs)
        scale = 1.0 + float(np.abs(b).max()) + (max(abs(v) for v in prefix) if prefix else 0.0)
        slack = self.A @ verts.T - b[:, None]
        feasible = np.all(slack <= 1e-9 * scale * 100, axis=0)
        if k:
            eq_err = np.abs(verts @ self.F[:k].T - np.asarray(prefix, dtype=float))
            feasible &= np.all(eq_err <= 1e-7 * scale, axis=1)
        if not feasible.any():
            return None
        vals = verts[feasible] @ self.F[k]
        lo, hi = float(vals.min()), float(vals.max())
        lo -= _ABS_MARGIN + _REL_MARGIN * abs(lo)
        hi += _ABS_MARGIN + _REL_MARGIN * abs(hi)
        return math.ceil(lo), math.floor(hi)

    def points(self, b) -> Iterator[tuple[int, int, int, int]]:
        """All integer u (in lexicographic order) whose image may lie in {A s <= b}."""
        b = np.asarray(b, dtype=float)
        prefix: list[int] = []
        stack = []
        rng = self._range(0, prefix, b)
        if rng is None:
            return
        stack.append(iter(range(rng[0], rng[1] + 1)))
        while stack:
            try:
                v = next(stack[-1])
            except StopIteration:
                stack.pop()
                if prefix:
                    prefix.pop()
                continue
            k = len(stack) - 1
            if k == 3:
                yield (prefix[0], prefix[1], prefix[2], v)
                continue
            prefix.append(v)
            rng = self._range(k + 1, prefix, b)
            if rng is None or rng[0] > rng[1]:
                prefix.pop()
                continue
            stack.append(iter(range(rng[0], rng[1] + 1)))


def lll_reduce(basis: np.ndarray, delta: float = 0.99) -> tuple[np.ndarray, np.ndarray]:
    """LLL-reduce the columns of ``basis``; returns (reduced, U) with reduced = basis @ U.

    U is unimodular with integer entries, so the reduced columns span the same
    lattice.  Floating point only steers the reduction; U itself is exact.
    """
    B = np.asarray(basis, dtype=float).copy()
    n = B.shape[1]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def gso(B):
        Q = np.zeros_like(B)
        mu = np.zeros((n, n))
        for i in range(n):
            v = B[:, i].copy()
            for j in range(i):
                mu[i, j] = B[:, i] @ Q[:, j] / (Q[:, j] @ Q[:, j])
                v -= mu[i, j] * Q[:, j]
            Q[:, i] = v
        return Q, mu

    def add(i, j, c):
        B[:, i] -= c * B[:, j]
        for row in U:
            row[i] -= c * row[j]

    k = 1
    Q, mu = gso(B)
    for _ in range(10_000):
        if k >= n:
            break
        for j in range(k - 1, -1, -1):
            c = round(mu[k, j])
            if c:
                add(k, j, c)
                Q, mu = gso(B)
        if Q[:, k] @ Q[:, k] >= (delta - mu[k, k - 1] ** 2) * (Q[:, k - 1] @ Q[:, k - 1]):
            k += 1
        else:
            B[:, [k, k - 1]] = B[:, [k - 1, k]]
            for row in U:
                row[k], row[k - 1] = row[k - 1], row[k]
            Q, mu = gso(B)
            k = max(k - 1, 1)
    U = np.array(U, dtype=object)
    return np.asarray(basis, dtype=float) @ U.astype(float), U
