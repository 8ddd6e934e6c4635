from __future__ import annotations

import itertools

import numpy as np

from biquad.lattice import PolytopeEnumerator, lll_reduce


def _brute(E, A, b, box):
    pts = []
    for u in itertools.product(range(-box, box + 1), repeat=4):
        s = E @ np.array(u, dtype=float)
        if np.all(A @ s <= b + 1e-12):
            pts.append(u)
    return pts


def test_enumerator_complete_on_random_polytopes():
    rng = np.random.default_rng(3)
    done = 0
    while done < 20:
        E = rng.normal(size=(4, 4))
        if np.linalg.cond(E) > 8:
            continue
        A = np.vstack([-np.eye(4), np.eye(4)])
        b = np.concatenate([rng.uniform(0, 2, 4), rng.uniform(0, 2, 4)])
        enum_ = PolytopeEnumerator(E, A)
        got = [u for u in enum_.points(b) if np.all(A @ (E @ np.array(u, float)) <= b + 1e-12)]
        assert got == sorted(got)
        # every point of the polytope lies in a box of radius |F| * |b|
        box = int(np.ceil(np.abs(np.linalg.inv(E)).sum(axis=1).max() * np.abs(b).max())) + 1
        assert got == _brute(E, A, b, box)
        done += 1


def test_simplex():
    E = np.eye(4)
    A = np.vstack([-np.eye(4), np.ones((1, 4))])
    pts = list(PolytopeEnumerator(E, A).points([0, 0, 0, 0, 2]))
    assert len(pts) == 15  # compositions of 0, 1, 2 into four nonnegative parts


def test_lll_is_unimodular():
    rng = np.random.default_rng(5)
    for _ in range(10):
        B = rng.normal(size=(4, 4)) @ rng.integers(-20, 20, size=(4, 4))
        if abs(np.linalg.det(B)) < 1e-6:
            continue
        R, U = lll_reduce(B)
        Ui = np.array(U, dtype=float)
        assert round(abs(np.linalg.det(Ui))) == 1
        assert np.allclose(B @ Ui, R)
        assert np.linalg.norm(R[:, 0]) <= np.linalg.norm(B, axis=0).max() + 1e-9
