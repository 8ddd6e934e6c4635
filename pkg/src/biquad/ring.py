"""Ring of integers, codifferent and discriminant of a biquadratic field."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg
from .errors import NotAnInteger, SelfCheckFailed
from .field import BasisType, FieldElement, FieldSpec, quadratic_discriminant


@dataclass(frozen=True)
class IntegralBasis:
    field: FieldSpec
    elements: tuple[FieldElement, FieldElement, FieldElement, FieldElement]

    @property
    def basis_matrix(self) -> list[list[Fraction]]:
        return [list(g.coords) for g in self.elements]

    @property
    def denominator(self) -> int:
        """Least d with d*O_K inside Z[1, sqrt p, sqrt q, sqrt r]."""
        d = 1
        for g in self.elements:
            for c in g.coords:
                d = max(d, c.denominator)
        return d


@dataclass(frozen=True)
class IntegralElement:
    field: FieldSpec
    coords: tuple[int, int, int, int]

    @property
    def value(self) -> FieldElement:
        return from_integral_coords(self.field, self.coords)

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class CodifferentBasis:
    field: FieldSpec
    elements: tuple[FieldElement, FieldElement, FieldElement, FieldElement]


def _generators(f: FieldSpec) -> tuple[FieldElement, ...]:
    P, Q, R = f.roles
    sP, sQ, sR = f.sqrt(P), f.sqrt(Q), f.sqrt(R)
    one = f.one()
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    t = f.basis_type
    if t is BasisType.T1:
        return (one, sP, sQ, (sP + sR) * half)
    if t in (BasisType.T2, BasisType.T3):
        return (one, sP, (one + sQ) * half, (sP + sR) * half)
    if t is BasisType.T4a:
        return (one, (one + sP) * half, (one + sQ) * half, (one + sP + sQ + sR) * quarter)
    return (one, (one + sP) * half, (one + sQ) * half, (one - sP + sQ + sR) * quarter)


@lru_cache(maxsize=256)
def integral_basis(f: FieldSpec) -> IntegralBasis:
    gens = _generators(f)
    basis = IntegralBasis(f, gens)
    m = basis.basis_matrix
    if linalg.bareiss_det(m) == 0:
        raise SelfCheckFailed(f"degenerate basis for {f}")
    for g in gens:
        if not g.char_poly().is_integral():
            raise SelfCheckFailed(f"{g} is not an algebraic integer in {f}")
    inv = linalg.inverse(m)
    for i in range(4):
        for j in range(i, 4):
            c = linalg.vecmat((gens[i] * gens[j]).coords, inv)
            if any(v.denominator != 1 for v in c):
                raise SelfCheckFailed(f"basis of {f} not closed under multiplication")
    return basis


@lru_cache(maxsize=256)
def _inverse_basis_matrix(f: FieldSpec) -> list[list[Fraction]]:
    return linalg.inverse(integral_basis(f).basis_matrix)


def from_integral_coords(f: FieldSpec, coords: Sequence[int]) -> FieldElement:
    gens = integral_basis(f).elements
    out = [Fraction(0)] * 4
    for c, g in zip(coords, gens):
        if c:
            for k in range(4):
                out[k] += c * g.coords[k]
    return FieldElement(f, tuple(out))


def rational_integral_coords(a: FieldElement) -> list[Fraction]:
    return linalg.vecmat(a.coords, _inverse_basis_matrix(a.field))


def to_integral_coords(a: FieldElement) -> IntegralElement:
    c = rational_integral_coords(a)
    if any(v.denominator != 1 for v in c):
        raise NotAnInteger(f"{a} is not an algebraic integer")
    return IntegralElement(a.field, tuple(int(v) for v in c))


def integral(f: FieldSpec, *coords: int) -> IntegralElement:
    return IntegralElement(f, tuple(coords))


def is_algebraic_integer(a: FieldElement) -> bool:
    return a.char_poly().is_integral()


def _trace_matrix(f: FieldSpec) -> list[list[Fraction]]:
    """Tr(gamma_i * e_k) for e = (1, sqrt p, sqrt q, sqrt r)."""
    gens = integral_basis(f).elements
    e = (f.one(), f.sqrt(f.p), f.sqrt(f.q), f.sqrt(f.r))
    return [[(g * ek).trace() for ek in e] for g in gens]


@lru_cache(maxsize=256)
def codifferent_basis(f: FieldSpec) -> CodifferentBasis:
    # phi_j = sum_k X[k][j] e_k with Tr(gamma_i phi_j) = delta_ij
    tm = _trace_matrix(f)
    ident = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    x = linalg.solve(tm, ident)
    phis = tuple(FieldElement(f, tuple(x[k][j] for k in range(4))) for j in range(4))
    return CodifferentBasis(f, phis)


def codifferent_closed_form(f: FieldSpec) -> CodifferentBasis:
    """Explicit dual basis for type-T3 fields (roles P, Q, R)."""
    if f.basis_type is not BasisType.T3:
        raise ValueError("closed-form codifferent is only available for type T3")
    P, Q, R = f.roles
    # gcd trio in role order
    import math
    pP, qQ, rR = math.gcd(Q, R), math.gcd(P, R), math.gcd(P, Q)
    sP, sQ, sR = f.sqrt(P), f.sqrt(Q), f.sqrt(R)
    one = f.one()
    F = Fraction
    hq = (one + sQ) / 2
    hpr = (sP + sR) / 2
    phi1 = one * (F(1, 4) + F(1, 4 * pP * rR)) - hq * F(1, 2 * pP * rR)
    phi2 = sP * (F(1, 4 * pP * qQ) + F(1, 4 * qQ * rR)) - hpr * F(1, 2 * pP * qQ)
    phi3 = one * F(-1, 2 * pP * rR) + hq * F(1, pP * rR)
    phi4 = sP * F(-1, 2 * pP * qQ) + hpr * F(1, pP * qQ)
    return CodifferentBasis(f, (phi1, phi2, phi3, phi4))


def codifferent_element(f: FieldSpec, b: Sequence[int]) -> FieldElement:
    phis = codifferent_basis(f).elements
    out = f.zero()
    for c, phi in zip(b, phis):
        if c:
            out = out + phi * c
    return out


def codifferent_coords(delta: FieldElement) -> tuple[int, int, int, int]:
    """Coordinates (Tr(gamma_i delta))_i; raises if delta is not in the codifferent."""
    gens = integral_basis(delta.field).elements
    out = []
    for g in gens:
        t = (g * delta).trace()
        if t.denominator != 1:
            raise NotAnInteger(f"{delta} is not in the codifferent")
        out.append(int(t))
    return tuple(out)


def trace_pairing(a: IntegralElement, b_coeffs: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a.coords, b_coeffs))


def gram_matrix(f: FieldSpec) -> list[list[Fraction]]:
    gens = integral_basis(f).elements
    return [[(gi * gj).trace() for gj in gens] for gi in gens]


@lru_cache(maxsize=256)
def discriminant(f: FieldSpec) -> int:
    d = linalg.bareiss_det(gram_matrix(f))
    assert d.denominator == 1
    return int(d)


def subfield_discriminant_product(f: FieldSpec) -> int:
    return quadratic_discriminant(f.p) * quadratic_discriminant(f.q) * quadratic_discriminant(f.r)
