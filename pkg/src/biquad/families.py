"""Three families of biquadratic fields with known indecomposable integers.

F1: p = (2n-1)(2n+1), q = (2n-1)(2n+3), r = (2n+1)(2n+3), n >= 6
F2: p = (2n-1)(2n+1), q = (4n-3)(4n+1), r = pq,             n >= 9
F3: p = (2n-1)(2n+1), q = (4n-1)(4n+3), r = pq,             n >= 2

All three have an integral basis of type T3 with roles (P, Q, R) = (p, q, r).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Callable

import numpy as np

from .errors import BudgetExceeded, FormulaMismatch, IdentityFailed, InadmissibleParameter
from .field import EMBEDDING_SIGNS, FieldElement, FieldSpec, is_squarefree, make_field
from .lattice import PolytopeEnumerator, lll_reduce
from .sos import _Arith
from .ring import (
    IntegralElement,
    codifferent_basis,
    codifferent_coords,
    codifferent_element,
    integral_basis,
    to_integral_coords,
    trace_pairing,
)


class Family(str, enum.Enum):
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"


MIN_N = {Family.F1: 6, Family.F2: 9, Family.F3: 2}


def family_radicands(family: Family | str, n: int) -> tuple[int, int, int]:
    family = Family(family)
    p = (2 * n - 1) * (2 * n + 1)
    if family is Family.F1:
        return p, (2 * n - 1) * (2 * n + 3), (2 * n + 1) * (2 * n + 3)
    if family is Family.F2:
        q = (4 * n - 3) * (4 * n + 1)
    else:
        q = (4 * n - 1) * (4 * n + 3)
    return p, q, p * q


def admissibility(family: Family | str, n: int) -> str | None:
    """None when admissible, else the reason it is not."""
    family = Family(family)
    if n < MIN_N[family]:
        return f"n={n} below the family minimum {MIN_N[family]}"
    p, q, r = family_radicands(family, n)
    if family is not Family.F1 and math.gcd(p, q) != 1:
        return f"p={p} and q={q} are not coprime"
    for name, m in (("p", p), ("q", q), ("r", r)):
        if not is_squarefree(m):
            return f"{name}={m} is not square-free"
    return None


@dataclass(frozen=True)
class FamilyParam:
    family: Family
    n: int
    p: int
    q: int
    r: int

    @cached_property
    def field(self) -> FieldSpec:
        return make_field(self.p, self.q)


def make_family(family: Family | str, n: int) -> FamilyParam:
    family = Family(family)
    reason = admissibility(family, n)
    if reason is not None:
        raise InadmissibleParameter(f"{family.value} n={n}: {reason}")
    p, q, r = family_radicands(family, n)
    fp = FamilyParam(family, n, p, q, r)
    assert fp.field.r == r and fp.field.role_permutation == (0, 1, 2)
    return fp


def family_scan(family: Family | str, n_from: int, n_to: int) -> list[dict]:
    rows = []
    for n in range(n_from, n_to + 1):
        p, q, r = family_radicands(family, n)
        reason = admissibility(family, n)
        rows.append({"n": n, "p": p, "q": q, "r": r, "admissible": reason is None, "reason": reason})
    return rows


# -- units and elements -------------------------------------------------------


@dataclass(frozen=True)
class FamilyUnits:
    eps_p: FieldElement
    eps_q: FieldElement
    eps_r: FieldElement


def family_units(fp: FamilyParam) -> FamilyUnits:
    f, n = fp.field, fp.n
    half = Fraction(1, 2)
    if fp.family is Family.F1:
        return FamilyUnits(f.element(2 * n, 1), f.element(Fraction(2 * n + 1, 2), 0, half), f.element(2 * n + 2, 0, 0, 1))
    if fp.family is Family.F2:
        return FamilyUnits(f.element(2 * n, 1), f.element(Fraction(4 * n - 1, 2), 0, half),
                           f.element(8 * n * n - 2 * n - 2, 0, 0, 1))
    return FamilyUnits(f.element(2 * n, 1), f.element(Fraction(4 * n + 1, 2), 0, half),
                       f.element(8 * n * n + 2 * n - 2, 0, 0, 1))


class LabelName(str, enum.Enum):
    One = "one"
    HalfMix = "half_mix"
    Mu = "mu"
    Alpha = "alpha"
    Beta = "beta"
    Gamma = "gamma"
    Delta = "delta"
    Omega = "omega"


@dataclass(frozen=True, order=True)
class FamilyElementLabel:
    name: LabelName
    t: int | None = None

    def __str__(self) -> str:
        return self.name.value if self.t is None else f"{self.name.value}_{self.t}"


def t_range(fp: FamilyParam, name: LabelName) -> range | None:
    n = fp.n
    if fp.family is Family.F1:
        return {
            LabelName.Alpha: range(3, 2 * n - 1),
            LabelName.Beta: range(3, 2 * n - 1),
            LabelName.Gamma: range(4, 2 * n),
            LabelName.Delta: range(4, 2 * n),
            LabelName.Omega: range(2, 2 * n),
        }.get(name)
    return {LabelName.Alpha: range(0, 2 * n - 1), LabelName.Beta: range(1, 2 * n)}.get(name)


def _names(fp: FamilyParam) -> list[LabelName]:
    if fp.family is Family.F1:
        return list(LabelName)
    if fp.family is Family.F2:
        return [LabelName.One, LabelName.Alpha, LabelName.Beta]
    return [LabelName.One, LabelName.HalfMix, LabelName.Alpha, LabelName.Beta]


def mu_element(fp: FamilyParam) -> FieldElement:
    h = Fraction(1, 2)
    return fp.field.element(Fraction(2 * fp.n + 3, 2), h, h, h)


def family_element(fp: FamilyParam, label: FamilyElementLabel) -> FieldElement:
    f = fp.field
    u = family_units(fp)
    ep, eq, er = u.eps_p, u.eps_q, u.eps_r
    one = f.one()
    name, t = label.name, label.t
    rng = t_range(fp, name)
    if (rng is None) != (t is None) or (rng is not None and t not in rng):
        raise ValueError(f"{label} is not a listed element of {fp.family.value} at n={fp.n}")
    if name is LabelName.One:
        return one
    if fp.family is Family.F1:
        mu = mu_element(fp)
        if name is LabelName.HalfMix:
            return (ep.inverse() + er) / 2
        if name is LabelName.Mu:
            return mu
        if name is LabelName.Alpha:
            return one + ep + (mu - 1) * t
        if name is LabelName.Beta:
            return (one + ep * er) / 2 + ep + (mu - 1) * t
        if name is LabelName.Gamma:
            return one + eq.inverse() + (mu - 1) * t
        if name is LabelName.Delta:
            return (one + ep * er) / 2 + eq.inverse() + (mu - 1) * t
        if name is LabelName.Omega:
            return (er.inverse() + ep) / 2 + (mu - 2) * t
    elif fp.family is Family.F2:
        if name is LabelName.Alpha:
            return (ep.inverse() + er) / 2 + (eq - ep.inverse()) * t
        if name is LabelName.Beta:
            return ep.inverse() - eq + (ep * eq - 1) * t
    else:
        if name is LabelName.HalfMix:
            return (ep.inverse() + er) / 2
        if name is LabelName.Alpha:
            return (ep + er) / 2 + (ep - eq.inverse()) * t
        if name is LabelName.Beta:
            return eq.inverse() - ep + (ep * eq - 1) * t
    raise ValueError(f"{label} is not defined for {fp.family.value}")


def family_labels(fp: FamilyParam, reduced: bool = False) -> list[FamilyElementLabel]:
    """Listed labels; ``reduced`` keeps one representative per association class."""
    n = fp.n
    out = []
    for name in _names(fp):
        rng = t_range(fp, name)
        if reduced:
            if fp.family is Family.F1:
                if name in (LabelName.Gamma, LabelName.Delta):
                    continue
                if name is LabelName.Beta:
                    rng = range(3, n + 1)
                elif name is LabelName.Omega:
                    rng = range(2, n + 1)
            else:
                if name is LabelName.Beta:
                    rng = range(1, 2)
                if fp.family is Family.F3 and name is LabelName.HalfMix:
                    continue
        if rng is None:
            out.append(FamilyElementLabel(name))
        else:
            out.extend(FamilyElementLabel(name, t) for t in rng)
    return out


def family_elements(fp: FamilyParam, reduced: bool = False) -> list[tuple[FamilyElementLabel, IntegralElement]]:
    out = []
    for label in family_labels(fp, reduced):
        v = family_element(fp, label)
        if not v.is_totally_positive():
            raise AssertionError(f"{label} is not totally positive")
        out.append((label, to_integral_coords(v)))
    return out


# -- norms --------------------------------------------------------------------

# printed N(beta_t) terms for F1, in printed order; exponents are fitted
def _f1_beta_printed_terms(n: int) -> list[int]:
    return [1, -(4 * n + 2), -(4 * n * n + 12 * n + 3), 16 * n**3 + 40 * n * n + 24 * n + 4,
            16 * n**3 + 48 * n * n + 44 * n + 13]


F1_BETA_PRINTED_EXPONENTS = (3, 2, 2, 1, 0)


def _f1_beta_exponents() -> tuple[int, ...]:
    return fit_beta_norm_exponents()["fitted_exponents"]


def _f1_beta_norm(n: int, t: int, exponents: tuple[int, ...]) -> int:
    return sum(c * t**e for c, e in zip(_f1_beta_printed_terms(n), exponents))


def fit_beta_norm_exponents(ns: tuple[int, ...] = (6, 7, 10)) -> dict:
    """Find exponents for the printed F1 N(beta_t) terms that match direct norms.

    Direct norms are computed at the given admissible n for every t in range.
    """
    direct = {}
    for n in ns:
        fp = make_family(Family.F1, n)
        for t in t_range(fp, LabelName.Beta):
            direct[(n, t)] = family_element(fp, FamilyElementLabel(LabelName.Beta, t)).norm()
    matches = []
    for exps in sorted(set(permutations(range(5)))):
        if all(_f1_beta_norm(n, t, exps) == v for (n, t), v in direct.items()):
            matches.append(exps)
    printed_ok = all(_f1_beta_norm(n, t, F1_BETA_PRINTED_EXPONENTS) == v for (n, t), v in direct.items())
    return {
        "printed_exponents": F1_BETA_PRINTED_EXPONENTS,
        "printed_matches": printed_ok,
        "fitted_exponents": matches[0] if len(matches) == 1 else None,
        "all_matches": matches,
        "checked_points": len(direct),
    }


_BETA_EXPONENTS_CACHE: list[tuple[int, ...]] = []


def family_norm(label: FamilyElementLabel, fp: FamilyParam) -> int:
    """Closed-form norm of a listed element."""
    n, t, name = fp.n, label.t, label.name
    if name is LabelName.One:
        return 1
    if fp.family is Family.F1:
        if name is LabelName.HalfMix:
            return (2 * n + 1) ** 2
        if name is LabelName.Mu:
            return 4
        g1 = lambda s: ((4 * n + 2) * (s + 1) - s * s) ** 2  # noqa: E731
        if name is LabelName.Alpha:
            return g1(t)
        if name is LabelName.Delta:
            # delta_{2n+2-s} = sigma_3(alpha_s) eps_r
            return g1(2 * n + 2 - t)
        if name in (LabelName.Beta, LabelName.Gamma):
            if not _BETA_EXPONENTS_CACHE:
                _BETA_EXPONENTS_CACHE.append(_f1_beta_exponents())
            s = t if name is LabelName.Beta else t - 1  # gamma_{s+1} = sigma_4(beta_s) eps_p
            return _f1_beta_norm(n, s, _BETA_EXPONENTS_CACHE[0])
        if name is LabelName.Omega:
            return (2 * n + 1 + (4 * n + 2) * t - 2 * t * t) ** 2
    elif fp.family is Family.F2:
        h = lambda s: (s * s - 4 * n * n + 1) ** 2  # noqa: E731
        if name is LabelName.Alpha:
            return h(t)
        if name is LabelName.Beta:
            return 16 * n * n - 16 * n + 4 if t == 1 else h(2 * n - t)
    else:
        h = lambda s: (s * s + s - 4 * n * n - 2 * n + 1) ** 2  # noqa: E731
        if name is LabelName.HalfMix:
            return h(0)
        if name is LabelName.Alpha:
            return h(t)
        if name is LabelName.Beta:
            return 16 * n * n - 8 * n + 1 if t == 1 else h(2 * n - t)
    raise ValueError(f"no closed form for {label}")


def verify_norm_formulas(fp: FamilyParam, strict: bool = True) -> list[dict]:
    rows = []
    for label, elt in family_elements(fp):
        direct = elt.value.norm()
        formula = family_norm(label, fp)
        ok = direct == formula
        if strict and not ok:
            raise FormulaMismatch(str(label), formula, direct)
        rows.append({"label": str(label), "formula_norm": formula, "norm": int(direct), "ok": ok})
    return rows


def norm_bound(fp: FamilyParam) -> int:
    n = fp.n
    if fp.family is Family.F1:
        return 16 * n**4 + 64 * n**3 + 16 * n**2 - 96 * n + 36
    if fp.family is Family.F2:
        return 16 * n**4 - 8 * n**2 + 1
    return 16 * n**4 + 16 * n**3 - 4 * n**2 - 4 * n + 1


def norm_maximizer(fp: FamilyParam) -> FamilyElementLabel:
    if fp.family is Family.F1:
        return FamilyElementLabel(LabelName.Alpha, 2 * fp.n - 2)
    return FamilyElementLabel(LabelName.Alpha, 0)


def norm_maximizer_class(fp: FamilyParam) -> list[FamilyElementLabel]:
    """The maximizer together with its listed associates (same norm by the identities)."""
    top = norm_maximizer(fp)
    if fp.family is Family.F1:
        # delta_4 = sigma_3(alpha_{2n-2}) eps_r
        return [top, FamilyElementLabel(LabelName.Delta, 4)]
    if fp.family is Family.F3:
        # alpha_0 = sigma_3(half_mix) eps_p eps_r
        return [FamilyElementLabel(LabelName.HalfMix), top]
    return [top]


# -- enumeration helpers ------------------------------------------------------


def _signs_matrix() -> np.ndarray:
    return np.array([[1.0, a, b, c] for a, b, c in EMBEDDING_SIGNS])


def is_decomposable(a: IntegralElement, node_limit: int = 10_000_000) -> IntegralElement | None:
    """A totally positive integer beta with a - beta totally positive, or None.

    Candidates are visited in increasing order of trace (then the remaining
    scaled coordinates), so the summand 1 is returned whenever it works.
    """
    f = a.field
    av = a.value
    if not av.is_totally_positive():
        raise ValueError(f"{av} is not totally positive")
    den = integral_basis(f).denominator
    sp, sq, sr = f.float_roots
    E = _signs_matrix() * np.array([1.0, sp, sq, sr]) / den
    A = np.vstack([-np.eye(4), np.eye(4)])
    emb = av.approx_embeddings()
    b = np.array([0.0] * 4 + list(emb))
    enum_ = PolytopeEnumerator(E, A)
    ar = _Arith(f)
    target = ar.scaled(av)
    visited = 0
    for u in enum_.points(b):
        visited += 1
        if visited > node_limit:
            raise BudgetExceeded("decomposability enumeration exceeded its node limit")
        if not any(u) or u == target:
            continue
        ic = ar.integral_coords(u)
        if ic is None:
            continue
        rest = tuple(x - y for x, y in zip(target, u))
        if not any(rest):
            continue
        if ar.nonnegative(u) and ar.nonnegative(rest):
            return IntegralElement(f, ic)
    return None


@dataclass
class MinTrace:
    value: int | None  # None means larger than t_max
    witness: FieldElement | None
    witness_coords: tuple[int, int, int, int] | None
    t_max: int
    candidates_checked: int = 0

    def to_dict(self) -> dict:
        return {
            "minTr": self.value if self.value is not None else f">{self.t_max}",
            "witness": None if self.witness is None else str(self.witness),
            "witness_codifferent_coords": None if self.witness_coords is None else list(self.witness_coords),
        }


def min_codiff_trace(a: IntegralElement, t_max: int = 2) -> MinTrace:
    """min Tr(a*delta) over totally positive delta in the codifferent, if <= t_max.

    With s_i = sigma_i(a) sigma_i(delta) the region is the simplex s >= 0,
    sum(s) <= t, so codifferent coordinates are enumerated over an LLL-reduced
    basis of that image lattice.  Ties are broken by the smallest coordinate
    vector.
    """
    f = a.field
    av = a.value
    if not av.is_totally_positive():
        raise ValueError(f"{av} is not totally positive")
    emb = np.array(av.approx_embeddings())
    phis = codifferent_basis(f).elements
    E = np.array([phi.approx_embeddings() for phi in phis]).T * emb[:, None]
    E_red, U = lll_reduce(E)
    A = np.vstack([-np.eye(4), np.ones((1, 4))])
    enum_ = PolytopeEnumerator(E_red, A)
    checked = 0
    for t in range(1, t_max + 1):
        found = []
        for v in enum_.points([0.0, 0.0, 0.0, 0.0, t]):
            if not any(v):
                continue
            b = tuple(int(sum(U[i][j] * v[j] for j in range(4))) for i in range(4))
            tr = trace_pairing(a, b)
            if tr < 1 or tr > t:
                continue
            checked += 1
            # s_i = sigma_i(a) sigma_i(delta); exact test only near the boundary
            sv = E_red @ np.asarray(v, dtype=float)
            margin = 1e-9 * (1.0 + float(np.abs(E_red).sum(axis=1).max()) * max(abs(x) for x in v))
            if sv.min() < -margin:
                continue
            if sv.min() > margin or codifferent_element(f, b).is_totally_positive():
                found.append((tr, b))
        if found:
            tr, b = min(found)
            return MinTrace(tr, codifferent_element(f, b), b, t_max, checked)
    return MinTrace(None, None, None, t_max, checked)


# -- documented codifferent witnesses -----------------------------------------


def documented_deltas(fp: FamilyParam) -> dict[str, tuple[int, int, int, int]]:
    """Codifferent coordinates of the totally positive witnesses used for each family."""
    n = fp.n
    if fp.family is Family.F1:
        return {
            "delta_mu": (1, -(2 * n - 1), n, -2 * n),
            # printed with phi_3 twice; the trailing term must be phi_4 for trace 1
            "delta_half_mix": (1, 2 * n - 1, -(n - 1), -1),
            "delta_omega": (1, -(2 * n - 1), -(n - 1), 0),
        }
    if fp.family is Family.F2:
        return {"delta": (1, 2 * n - 1, -(2 * n - 2), -(4 * n * n - 2 * n - 1))}
    return {"delta": (1, -(2 * n - 1), 2 * n, -(4 * n * n + 2 * n - 2))}


def documented_witness_for(fp: FamilyParam, label: FamilyElementLabel) -> tuple[str, tuple[int, int, int, int]]:
    d = documented_deltas(fp)
    if fp.family is not Family.F1:
        return "delta", d["delta"]
    if label.name is LabelName.HalfMix:
        return "delta_half_mix", d["delta_half_mix"]
    if label.name is LabelName.Omega:
        return "delta_omega", d["delta_omega"]
    return "delta_mu", d["delta_mu"]


def half_mix_delta_readings(n: int) -> dict[str, tuple[int, int, int, int]]:
    """Both readings of the half-mix witness printed with phi_3 repeated."""
    return {
        "phi_4 as last term": (1, 2 * n - 1, -(n - 1), -1),
        "phi_3 repeated": (1, 2 * n - 1, -n, 0),
    }


# -- association identities ---------------------------------------------------


def _identities(fp: FamilyParam) -> list[tuple[str, range, Callable[[int], FieldElement], Callable[[int], FieldElement]]]:
    n = fp.n
    u = family_units(fp)
    L = FamilyElementLabel
    el = lambda name, t=None: family_element(fp, L(name, t))  # noqa: E731
    if fp.family is Family.F1:
        return [
            ("delta_{2n+2-t} = sigma3(alpha_t) eps_r", range(3, 2 * n - 1),
             lambda t: el(LabelName.Delta, 2 * n + 2 - t), lambda t: el(LabelName.Alpha, t).conjugate(3) * u.eps_r),
            ("beta_{2n+1-t} = sigma3(beta_t) eps_r", range(3, 2 * n - 1),
             lambda t: el(LabelName.Beta, 2 * n + 1 - t), lambda t: el(LabelName.Beta, t).conjugate(3) * u.eps_r),
            ("gamma_{t+1} = sigma4(beta_t) eps_p", range(3, 2 * n - 1),
             lambda t: el(LabelName.Gamma, t + 1), lambda t: el(LabelName.Beta, t).conjugate(4) * u.eps_p),
            ("omega_{2n+1-t} = sigma2(omega_t) eps_p", range(2, 2 * n),
             lambda t: el(LabelName.Omega, 2 * n + 1 - t), lambda t: el(LabelName.Omega, t).conjugate(2) * u.eps_p),
        ]
    if fp.family is Family.F2:
        return [
            ("beta_{2n-t} = sigma2(alpha_t) eps_r", range(1, 2 * n - 1),
             lambda t: el(LabelName.Beta, 2 * n - t), lambda t: el(LabelName.Alpha, t).conjugate(2) * u.eps_r),
        ]
    return [
        ("alpha_0 = sigma3(half_mix) eps_p eps_r", range(0, 1),
         lambda t: el(LabelName.Alpha, 0), lambda t: el(LabelName.HalfMix).conjugate(3) * u.eps_p * u.eps_r),
        ("beta_{2n-t} = sigma3(alpha_t) eps_r", range(1, 2 * n - 1),
         lambda t: el(LabelName.Beta, 2 * n - t), lambda t: el(LabelName.Alpha, t).conjugate(3) * u.eps_r),
    ]


def association_identities(fp: FamilyParam, strict: bool = True) -> list[dict]:
    rows = []
    for name, rng, lhs, rhs in _identities(fp):
        for t in rng:
            left, right = lhs(t), rhs(t)
            ok = left == right
            if strict and not ok:
                raise IdentityFailed(name, t, left, right)
            rows.append({"identity": name, "t": t, "holds": ok})
    return rows


# -- universal quadratic forms ------------------------------------------------


def trace_companions(fp: FamilyParam) -> list[tuple[str, FieldElement]]:
    """Further totally positive integers used alongside the listed F2/F3 elements."""
    if fp.family is Family.F1:
        return []
    u = family_units(fp)
    ep, eq, er = u.eps_p, u.eps_q, u.eps_r
    out = []
    for t in t_range(fp, LabelName.Beta):
        out.append((f"sigma4(beta_{t})", family_element(fp, FamilyElementLabel(LabelName.Beta, t)).conjugate(4)))
    if fp.family is Family.F2:
        out += [("eps_p^-1", ep.inverse()), ("eps_q", eq), ("eps_r", er)]
    else:
        out += [("eps_p", ep), ("eps_q^-1", eq.inverse()), ("eps_r", er)]
    out += [
        ("sigma4(eps_p eps_q)", (ep * eq).conjugate(4)),
        ("sigma4(eps_p eps_r)", (ep * er).conjugate(4)),
        ("sigma4(eps_q eps_r)", (eq * er).conjugate(4)),
    ]
    return out


def universal_form_bounds(fp: FamilyParam) -> dict:
    """Variable-count lower bounds for universal forms from trace-1/trace-2 counts.

    With one totally positive codifferent delta: n elements of trace 1 give
    n/4 variables for classical forms; adding m elements of trace 2 gives
    max(n/4, m/12) for diagonal forms.
    """
    f = fp.field
    name, coords = ("delta_mu", documented_deltas(fp)["delta_mu"]) if fp.family is Family.F1 else ("delta", documented_deltas(fp)["delta"])
    delta = codifferent_element(f, coords)
    if not delta.is_totally_positive():
        raise AssertionError(f"{name} is not totally positive")
    pool: dict[tuple, str] = {}
    for label, elt in family_elements(fp):
        pool.setdefault(elt.coords, str(label))
    for cname, v in trace_companions(fp):
        if not v.is_totally_positive():
            raise AssertionError(f"{cname} is not totally positive")
        pool.setdefault(to_integral_coords(v).coords, cname)
    ones, twos = [], []
    dc = coords_of(delta)
    for ic, label in pool.items():
        tr = trace_pairing(IntegralElement(f, ic), dc)
        if tr == 1:
            ones.append(label)
        elif tr == 2:
            twos.append(label)
    n_count, m_count = len(ones), len(twos)
    classical = Fraction(n_count, 4)
    diagonal = max(Fraction(n_count, 4), Fraction(m_count, 12))
    return {
        "delta": name,
        "delta_coords": list(coords),
        "trace1_count": n_count,
        "trace2_count": m_count,
        "trace1_elements": ones,
        "trace2_elements": twos,
        "classical": classical,
        "diagonal": diagonal,
        "classical_ceil": math.ceil(classical),
        "diagonal_ceil": math.ceil(diagonal),
    }


def coords_of(delta: FieldElement) -> tuple[int, int, int, int]:
    return codifferent_coords(delta)


# -- report -------------------------------------------------------------------


def family_report(fp: FamilyParam, t_max: int = 2, check_indecomposable: bool = False,
                  reduced: bool = False) -> list[dict]:
    rows = []
    for label, elt in family_elements(fp, reduced=reduced):
        v = elt.value
        mt = min_codiff_trace(elt, t_max)
        row = {
            "label": label.name.value,
            "t": label.t,
            "integral_coords": list(elt.coords),
            "element": str(v),
            "norm": int(v.norm()),
            "formula_norm": family_norm(label, fp),
            "minTr": mt.value if mt.value is not None else f">{t_max}",
            "minTr_witness": None if mt.witness_coords is None else list(mt.witness_coords),
            "indecomposable_verified": None,
        }
        if check_indecomposable:
            row["indecomposable_verified"] = is_decomposable(elt) is None
        rows.append(row)
    return rows
