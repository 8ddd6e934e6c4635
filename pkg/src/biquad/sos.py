"""Sums of squares of algebraic integers: exhaustive rank search and certificates.

Elements inside the search are integer quadruples scaled by the common
denominator of the integral basis, so residuals hash cheaply and subtract
exactly.  A representation target = b_1^2 + ... + b_k^2 is searched with the
squares in a fixed order (non-decreasing candidate index), which visits every
multiset of squares exactly once.
"""

from __future__ import annotations

import enum
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, NotTotallyNonnegative, Refuted, WrongBasisType
from .field import EMBEDDING_SIGNS, BasisType, FieldElement, FieldSpec, sqrt_bracket
from .ring import (
    IntegralElement,
    from_integral_coords,
    integral_basis,
    rational_integral_coords,
    to_integral_coords,
)


class CertificateKind(str, enum.Enum):
    EXACT = "Exact"
    LOWER_BOUND = "LowerBound"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 8
    # nodes explored below a single root candidate
    node_limit: int = 5_000_000
    time_limit: float = 3600.0


@dataclass(frozen=True)
class SquareCandidate:
    beta: IntegralElement
    square: FieldElement


@dataclass
class RankCertificate:
    target: IntegralElement
    kind: CertificateKind
    rank_or_bound: int
    witness: list[IntegralElement] | None
    nodes_explored: int
    budget: SearchBudget
    candidates: int = 0
    wall_time: float = 0.0

    def verify_witness(self) -> bool:
        if self.witness is None:
            return False
        total = self.target.field.zero()
        for b in self.witness:
            v = b.value
            total = total + v * v
        return total == self.target.value

    def to_dict(self) -> dict:
        return {
            "target": str(self.target.value),
            "target_integral_coords": list(self.target.coords),
            "kind": self.kind.value,
            "rank_or_bound": self.rank_or_bound,
            "witness": None if self.witness is None else [str(b.value) for b in self.witness],
            "witness_integral_coords": None if self.witness is None else [list(b.coords) for b in self.witness],
            "nodes_explored": self.nodes_explored,
            "candidates": self.candidates,
            "wall_time": round(self.wall_time, 6),
            "budget": {
                "max_depth": self.budget.max_depth,
                "node_limit": self.budget.node_limit,
                "time_limit": self.budget.time_limit,
            },
        }


# -- scaled integer arithmetic ------------------------------------------------


class _Arith:
    """Integer-scaled arithmetic for elements with coordinates in (1/den) Z."""

    def __init__(self, f: FieldSpec):
        self.f = f
        self.den = integral_basis(f).denominator
        self.roots = f.float_roots
        inv = [[Fraction(v) for v in row] for row in _inv_basis(f)]
        lcm = 1
        for row in inv:
            for v in row:
                lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        self.member_den = lcm * self.den
        self.member_mat = [[int(v * lcm) for v in row] for row in inv]

    def scaled(self, a: FieldElement) -> tuple[int, int, int, int]:
        out = []
        for c in a.coords:
            v = c * self.den
            if v.denominator != 1:
                raise ValueError(f"{a} has coordinates outside (1/{self.den})Z")
            out.append(int(v))
        return tuple(out)

    def unscaled(self, s: Sequence[int]) -> FieldElement:
        return FieldElement(self.f, tuple(Fraction(v, self.den) for v in s))

    def integral_coords(self, s: Sequence[int]) -> tuple[int, ...] | None:
        out = []
        for j in range(4):
            v = sum(s[i] * self.member_mat[i][j] for i in range(4))
            if v % self.member_den:
                return None
            out.append(v // self.member_den)
        return tuple(out)

    def square(self, s: Sequence[int]) -> tuple[int, int, int, int]:
        f, d = self.f, self.den
        x, y, z, w = s
        out = (
            x * x + f.p * y * y + f.q * z * z + f.r * w * w,
            2 * (x * y + f.p0 * z * w),
            2 * (x * z + f.q0 * y * w),
            2 * (x * w + f.r0 * y * z),
        )
        return tuple(v // d for v in out)

    def embeddings(self, s: Sequence[int]) -> tuple[tuple[float, ...], float]:
        sp, sq, sr = self.roots
        x = float(s[0])
        ty, tz, tw = s[1] * sp, s[2] * sq, s[3] * sr
        emb = tuple(x + a * ty + b * tz + c * tw for a, b, c in EMBEDDING_SIGNS)
        margin = 1e-9 * (abs(x) + abs(ty) + abs(tz) + abs(tw)) + 1e-300
        return emb, margin

    def nonnegative(self, s: Sequence[int]) -> bool:
        """Zero or totally positive."""
        if not any(s):
            return True
        emb, margin = self.embeddings(s)
        if any(e < -margin for e in emb):
            return False
        if all(e > margin for e in emb):
            return True
        return self.unscaled(s).is_totally_positive_exact()


def _inv_basis(f: FieldSpec):
    from .ring import _inverse_basis_matrix

    return _inverse_basis_matrix(f)


# -- candidate enumeration ----------------------------------------------------


def _sqrt_upper(h: Fraction, bits: int = 20) -> Fraction:
    if h <= 0:
        return Fraction(0)
    scale = 1 << bits
    num = h.numerator * h.denominator * scale * scale
    s = math.isqrt(num)
    if s * s < num:
        s += 1
    return Fraction(s, h.denominator * scale)


def _canonical(coords: Sequence[int]) -> bool:
    for c in coords:
        if c:
            return c > 0
    return False


def _enumerate_scaled(ar: _Arith, target: tuple[int, ...]) -> list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]:
    """(integral coords of beta, scaled beta, scaled beta^2) with target - beta^2 >= 0."""
    f = ar.f
    if not any(target):
        return []
    tv = ar.unscaled(target)
    # rational upper bounds for sqrt(sigma_i(target)), i.e. for |sigma_i(beta)|
    s_up = []
    for i in (1, 2, 3, 4):
        iv = tv.refine_embedding(i, Fraction(1, 1 << 20))
        s_up.append(_sqrt_upper(iv.hi))
    total = sum(s_up)
    d = ar.den
    lows = [sqrt_bracket(m, 20)[0] for m in f.radicands]
    bx = math.floor(d * total / 4)
    by = math.floor(d * total / (4 * lows[0]))
    bz = math.floor(d * total / (4 * lows[1]))
    bw = math.floor(d * total / (4 * lows[2]))
    s_float = [float(v) * (1 + 1e-9) + 1e-9 for v in s_up]
    sp, sq, sr = ar.roots
    out = []
    for Y in range(-by, by + 1):
        for Z in range(-bz, bz + 1):
            for W in range(-bw, bw + 1):
                shifts = [(a * Y * sp + b * Z * sq + c * W * sr) / d for a, b, c in EMBEDDING_SIGNS]
                lo = max(-s - t for s, t in zip(s_float, shifts))
                hi = min(s - t for s, t in zip(s_float, shifts))
                if lo > hi:
                    continue
                xlo = max(-bx, math.floor(d * lo - 1e-6 * (1 + abs(d * lo))))
                xhi = min(bx, math.ceil(d * hi + 1e-6 * (1 + abs(d * hi))))
                for X in range(xlo, xhi + 1):
                    beta = (X, Y, Z, W)
                    ic = ar.integral_coords(beta)
                    if ic is None or not _canonical(ic):
                        continue
                    sq_ = ar.square(beta)
                    rest = tuple(a - b for a, b in zip(target, sq_))
                    if ar.nonnegative(rest):
                        out.append((ic, beta, sq_))
    out.sort(key=lambda item: (-item[2][0], item[0]))
    return out


def _require_nonneg(ar: _Arith, target: tuple[int, ...]):
    if not ar.nonnegative(target):
        raise NotTotallyNonnegative(f"{ar.unscaled(target)} is not totally nonnegative")


def enumerate_dominated_squares(target: IntegralElement) -> list[SquareCandidate]:
    f = target.field
    ar = _Arith(f)
    t = ar.scaled(target.value)
    _require_nonneg(ar, t)
    return [
        SquareCandidate(IntegralElement(f, ic), ar.unscaled(sq))
        for ic, _, sq in _enumerate_scaled(ar, t)
    ]


# -- depth-first search -------------------------------------------------------


class _Budget(Exception):
    pass


class _Branch:
    """Search below one root candidate with its own memo table."""

    def __init__(self, ar: _Arith, squares, embs, traces, budget: SearchBudget, deadline: float):
        self.ar = ar
        self.squares = squares
        self.embs = embs
        self.traces = traces
        self.index_of = {}
        for j, sq in enumerate(squares):
            self.index_of.setdefault(sq, j)
        self.budget = budget
        self.deadline = deadline
        self.nodes = 0
        self.memo: dict[tuple, int] = {}

    def feasible(self, res: tuple[int, ...], k: int, start: int) -> list[int] | None:
        """Indices j_1 <= ... <= j_m (m <= k, all >= start) with sum of squares == res."""
        if not any(res):
            return []
        if k == 0:
            return None
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            raise _Budget("node limit")
        if not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise _Budget("time limit")
        key = (res, start)
        if self.memo.get(key, 0) >= k:
            return None
        if k == 1:
            j = self.index_of.get(res)
            # equal squares share an index only through their first occurrence
            if j is not None:
                for jj in range(max(j, start), len(self.squares)):
                    if self.squares[jj] == res:
                        return [jj]
            self.memo[key] = max(self.memo.get(key, 0), k)
            return None
        ar = self.ar
        remb, margin = ar.embeddings(res)
        rtrace = res[0]
        squares, embs, traces = self.squares, self.embs, self.traces
        for j in range(start, len(squares)):
            if k * traces[j] < rtrace:
                break
            e = embs[j]
            ok = True
            exact_needed = False
            for i in range(4):
                dlt = remb[i] - e[i]
                if dlt < -margin:
                    ok = False
                    break
                if dlt <= margin:
                    exact_needed = True
            if not ok:
                continue
            nxt = tuple(a - b for a, b in zip(res, squares[j]))
            if exact_needed and not ar.nonnegative(nxt):
                continue
            sub = self.feasible(nxt, k - 1, j)
            if sub is not None:
                return [j] + sub
        self.memo[key] = max(self.memo.get(key, 0), k)
        return None


@dataclass
class _Problem:
    field: FieldSpec
    target: tuple[int, ...]
    cands: list
    budget: SearchBudget
    deadline: float = dc_field(default=0.0)


def _branch_job(args):
    prob, j, k = args
    ar = _Arith(prob.field)
    squares = [c[2] for c in prob.cands]
    embs = [ar.embeddings(s)[0] for s in squares]
    traces = [s[0] for s in squares]
    br = _Branch(ar, squares, embs, traces, prob.budget, prob.deadline)
    res = tuple(a - b for a, b in zip(prob.target, squares[j]))
    try:
        sub = br.feasible(res, k - 1, j)
    except _Budget as exc:
        return ("budget", str(exc), br.nodes)
    return ("ok", None if sub is None else [j] + sub, br.nodes)


class _Searcher:
    def __init__(self, target: IntegralElement, budget: SearchBudget, workers: int = 1):
        self.target = target
        self.f = target.field
        self.ar = _Arith(self.f)
        self.t = self.ar.scaled(target.value)
        _require_nonneg(self.ar, self.t)
        self.budget = budget
        self.workers = workers
        self.start = time.monotonic()
        self.deadline = self.start + budget.time_limit
        self.cands = _enumerate_scaled(self.ar, self.t)
        self.nodes = 0

    def witness(self, idx: list[int]) -> list[IntegralElement]:
        return [IntegralElement(self.f, self.cands[j][0]) for j in idx]

    def representable(self, k: int) -> list[int] | None:
        """Indices of at most k squares summing to the target, None if impossible.

        Raises _Budget when a branch runs out of budget before the answer is known.
        """
        if not any(self.t):
            return []
        if k == 0:
            return None
        prob = _Problem(self.f, self.t, self.cands, self.budget, self.deadline)
        root_trace = self.t[0]
        jobs = [(prob, j, k) for j in range(len(self.cands)) if k * self.cands[j][2][0] >= root_trace]
        if self.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(_branch_job, jobs))
        else:
            results = []
            for job in jobs:
                r = _branch_job(job)
                results.append(r)
                if r[0] == "budget" or r[1] is not None:
                    break
        for status, payload, nodes in results:
            self.nodes += nodes
            if status == "budget":
                raise _Budget(payload)
            if payload is not None:
                return payload
        return None

    def certificate(self, kind: CertificateKind, value: int, idx: list[int] | None) -> RankCertificate:
        return RankCertificate(
            target=self.target,
            kind=kind,
            rank_or_bound=value,
            witness=None if idx is None else self.witness(idx),
            nodes_explored=self.nodes,
            budget=self.budget,
            candidates=len(self.cands),
            wall_time=time.monotonic() - self.start,
        )


def sos_rank(target: IntegralElement, budget: SearchBudget | None = None, workers: int = 1) -> RankCertificate:
    """Least number of squares summing to ``target``, proven by exhaustion.

    Returns an Exact certificate, or a LowerBound one when no representation
    uses at most ``budget.max_depth`` squares.  Raises BudgetExceeded (with the
    bound proven so far) when a node or time limit stops the search.
    """
    budget = budget or SearchBudget()
    s = _Searcher(target, budget, workers)
    for k in range(0, budget.max_depth + 1):
        try:
            idx = s.representable(k)
        except _Budget as exc:
            cert = s.certificate(CertificateKind.INCONCLUSIVE, k, None)
            raise BudgetExceeded(f"{exc} while testing {k} squares; rank >= {k}", k, cert) from None
        if idx is not None:
            return s.certificate(CertificateKind.EXACT, len(idx), idx)
    return s.certificate(CertificateKind.LOWER_BOUND, budget.max_depth + 1, None)


def certify_min_rank(target: IntegralElement, m: int, budget: SearchBudget | None = None, workers: int = 1) -> RankCertificate:
    """Prove that ``target`` is not a sum of fewer than ``m`` squares."""
    budget = budget or SearchBudget()
    s = _Searcher(target, budget, workers)
    try:
        idx = s.representable(m - 1)
    except _Budget as exc:
        cert = s.certificate(CertificateKind.INCONCLUSIVE, 0, None)
        raise BudgetExceeded(f"{exc} while refuting {m - 1} squares", 0, cert) from None
    if idx is not None:
        # tighten to the exact rank so the refutation carries a minimal witness
        kind = CertificateKind.EXACT
        try:
            for k in range(len(idx)):
                smaller = s.representable(k)
                if smaller is not None:
                    idx = smaller
                    break
        except _Budget:
            kind = CertificateKind.INCONCLUSIVE
        cert = s.certificate(kind, len(idx), idx)
        raise Refuted(f"{target.value} is a sum of {len(idx)} squares", cert)
    return s.certificate(CertificateKind.LOWER_BOUND, m, None)


# -- witness elements ---------------------------------------------------------


class WitnessKind(str, enum.Enum):
    B1a = "B1a"
    B1b = "B1b"
    B23 = "B23"
    B23_coprime = "B23_coprime"
    B4 = "B4"
    Main7 = "Main7"


_WITNESS_TYPES = {
    WitnessKind.B1a: {BasisType.T1},
    WitnessKind.B1b: {BasisType.T1},
    WitnessKind.B23: {BasisType.T2, BasisType.T3},
    WitnessKind.B23_coprime: {BasisType.T2, BasisType.T3},
    WitnessKind.B4: {BasisType.T4a, BasisType.T4b},
    WitnessKind.Main7: {BasisType.T3},
}


def witness_squares(kind: WitnessKind | str, f: FieldSpec) -> list[FieldElement]:
    """The explicit squared terms of the witness (the remaining 7 is 4+1+1+1)."""
    kind = WitnessKind(kind)
    if f.basis_type not in _WITNESS_TYPES[kind]:
        raise WrongBasisType(f"{kind.value} needs basis type in "
                             f"{sorted(t.value for t in _WITNESS_TYPES[kind])}, field is {f.basis_type.value}")
    P, Q, R = f.roles
    sP, sQ, sR = f.sqrt(P), f.sqrt(Q), f.sqrt(R)
    one = f.one()
    if kind is WitnessKind.B1a:
        return [one + sP, one + sQ]
    if kind in (WitnessKind.B1b, WitnessKind.B23_coprime):
        return [one + (sP + sR) / 2, (sP - sR) / 2]
    if kind is WitnessKind.B23:
        return [one + (sP + sR) / 2, (one - sQ) / 2]
    if kind is WitnessKind.B4:
        return [(one + sP) / 2, integral_basis(f).elements[3]]
    return [(one - sQ) / 2, one + (sP + sR) / 2, 2 * one + (sR - sP) / 2]


def witness_element(kind: WitnessKind | str, f: FieldSpec) -> IntegralElement:
    terms = witness_squares(kind, f)
    total = f.element(7)
    for t in terms:
        total = total + t * t
    assert total.is_totally_positive()
    return to_integral_coords(total)


def applicable_witnesses(f: FieldSpec) -> list[WitnessKind]:
    return [k for k, types in _WITNESS_TYPES.items() if f.basis_type in types]


def pythagoras_scan(
    f: FieldSpec,
    samples: int = 50,
    budget: SearchBudget | None = None,
    seed: int = 0,
    extra: Sequence[IntegralElement] = (),
    include_witnesses: bool = True,
    coord_range: int = 2,
    max_terms: int = 4,
) -> tuple[int, list[RankCertificate]]:
    """Largest Exact rank over random sums of squares plus known witnesses.

    This is only an empirical lower bound for the Pythagoras number.
    """
    budget = budget or SearchBudget()
    rng = random.Random(seed)
    targets: list[IntegralElement] = [IntegralElement(f, (2, 0, 0, 0)), IntegralElement(f, (7, 0, 0, 0))]
    if include_witnesses:
        targets += [witness_element(k, f) for k in applicable_witnesses(f)]
    targets += list(extra)
    for _ in range(samples):
        total = f.zero()
        for _ in range(rng.randint(1, max_terms)):
            b = from_integral_coords(f, [rng.randint(-coord_range, coord_range) for _ in range(4)])
            total = total + b * b
        if total.is_zero():
            continue
        targets.append(to_integral_coords(total))
    best = 0
    certs = []
    seen = set()
    for t in targets:
        if t.coords in seen:
            continue
        seen.add(t.coords)
        try:
            cert = sos_rank(t, budget)
        except BudgetExceeded:
            continue
        certs.append(cert)
        if cert.kind is CertificateKind.EXACT:
            best = max(best, cert.rank_or_bound)
    return best, certs
