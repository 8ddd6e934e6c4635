"""Exact arithmetic in real biquadratic fields Q(sqrt p, sqrt q).

Elements are stored as four rationals (x, y, z, w) standing for
x + y*sqrt(p) + z*sqrt(q) + w*sqrt(r), with r = pq / gcd(p, q)^2.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Iterable, Union

from .errors import Equal, FieldMismatch, NotSquareFree, OutOfRange, ParseError

Rational = Union[int, Fraction]

# sign of the sqrt(p), sqrt(q), sqrt(r) coordinates under sigma_1..sigma_4
EMBEDDING_SIGNS = (
    (1, 1, 1),
    (-1, 1, -1),
    (1, -1, -1),
    (-1, -1, 1),
)


def is_squarefree(n: int) -> bool:
    """Trial division; fine for the radicands this package handles."""
    if n < 1:
        return False
    if n % 4 == 0:
        return False
    if n % 2 == 0:
        n //= 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return False
        d += 2
    return True


def quadratic_discriminant(m: int) -> int:
    return m if m % 4 == 1 else 4 * m


class BasisType(str, enum.Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4a = "T4a"
    T4b = "T4b"


def _case_matches(case: BasisType, a: int, b: int) -> bool:
    g = math.gcd(a, b)
    if case is BasisType.T1:
        return a % 4 == 2 and b % 4 == 3
    if case is BasisType.T2:
        return a % 4 == 2 and b % 4 == 1
    if case is BasisType.T3:
        return a % 4 == 3 and b % 4 == 1
    if a % 4 != 1 or b % 4 != 1:
        return False
    if case is BasisType.T4a:
        return (a // g) % 4 == 1 and (b // g) % 4 == 1
    return (a // g) % 4 == 3 and (b // g) % 4 == 3


@dataclass(frozen=True)
class FieldSpec:
    p: int
    q: int
    r: int
    p0: int
    q0: int
    r0: int
    basis_type: BasisType
    # indices into (p, q, r) of the radicands playing the roles P, Q, R of the
    # integral-basis case; slot 0 is sqrt(p), 1 is sqrt(q), 2 is sqrt(r)
    role_permutation: tuple[int, int, int]

    @property
    def radicands(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    @property
    def roles(self) -> tuple[int, int, int]:
        """The radicands (P, Q, R) in role order."""
        rad = self.radicands
        return tuple(rad[i] for i in self.role_permutation)

    @cached_property
    def float_roots(self) -> tuple[float, float, float]:
        return (math.sqrt(self.p), math.sqrt(self.q), math.sqrt(self.r))

    def element(self, x: Rational = 0, y: Rational = 0, z: Rational = 0, w: Rational = 0) -> FieldElement:
        return FieldElement(self, (Fraction(x), Fraction(y), Fraction(z), Fraction(w)))

    def sqrt(self, m: int) -> FieldElement:
        """sqrt(m) for m one of p, q, r."""
        if m == self.p:
            return self.element(0, 1)
        if m == self.q:
            return self.element(0, 0, 1)
        if m == self.r:
            return self.element(0, 0, 0, 1)
        raise ValueError(f"sqrt({m}) is not a basis radical of Q(sqrt {self.p}, sqrt {self.q})")

    def zero(self) -> FieldElement:
        return self.element()

    def one(self) -> FieldElement:
        return self.element(1)

    def __str__(self) -> str:
        return f"Q(sqrt{self.p}, sqrt{self.q})"


def make_field(p: int, q: int) -> FieldSpec:
    if not (isinstance(p, int) and isinstance(q, int)) or p <= 1 or q <= 1:
        raise OutOfRange(f"p and q must be integers > 1, got {p}, {q}")
    if p == q:
        raise Equal(f"p and q must differ, got {p} twice")
    for m in (p, q):
        if not is_squarefree(m):
            raise NotSquareFree(f"{m} is not square-free")
    r0 = math.gcd(p, q)
    r = p * q // (r0 * r0)
    p0 = math.gcd(q, r)
    q0 = math.gcd(p, r)
    rad = (p, q, r)
    for case in BasisType:
        for perm in permutations(range(3)):
            if _case_matches(case, rad[perm[0]], rad[perm[1]]):
                return FieldSpec(p, q, r, p0, q0, r0, case, perm)
    raise AssertionError(f"no integral-basis case matches ({p}, {q}, {r})")


@dataclass(frozen=True)
class CharPoly:
    """Coefficients of x^4 - A x^3 + B x^2 - C x + D."""

    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction

    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.A, self.B, self.C, self.D)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients())

    def __call__(self, a: FieldElement) -> FieldElement:
        a2 = a * a
        a3 = a2 * a
        return a3 * a - a3 * self.A + a2 * self.B - a * self.C + self.D


@dataclass(frozen=True)
class EmbeddingInterval:
    lo: Fraction
    hi: Fraction
    index: int

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value: Rational) -> bool:
        return self.lo <= value <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0


def sqrt_bracket(n: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rationals lo <= sqrt(n) <= hi with hi - lo <= 2**-bits."""
    scale = 1 << bits
    s = math.isqrt(n * scale * scale)
    if s * s == n * scale * scale:
        return Fraction(s, scale), Fraction(s, scale)
    return Fraction(s, scale), Fraction(s + 1, scale)


@dataclass(frozen=True, eq=True)
class FieldElement:
    field: FieldSpec = dc_field(compare=True)
    coords: tuple[Fraction, Fraction, Fraction, Fraction] = (Fraction(0),) * 4

    def __post_init__(self):
        if len(self.coords) != 4:
            raise ValueError("a field element has exactly four coordinates")
        if not all(type(c) is Fraction for c in self.coords):
            object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return NotImplemented

    @property
    def x(self) -> Fraction:
        return self.coords[0]

    @property
    def y(self) -> Fraction:
        return self.coords[1]

    @property
    def z(self) -> Fraction:
        return self.coords[2]

    @property
    def w(self) -> Fraction:
        return self.coords[3]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.field
        x1, y1, z1, w1 = self.coords
        x2, y2, z2, w2 = other.coords
        return FieldElement(f, (
            x1 * x2 + f.p * y1 * y2 + f.q * z1 * z2 + f.r * w1 * w2,
            x1 * y2 + y1 * x2 + f.p0 * (z1 * w2 + w1 * z2),
            x1 * z2 + z1 * x2 + f.q0 * (y1 * w2 + w1 * y2),
            x1 * w2 + w1 * x2 + f.r0 * (y1 * z2 + z1 * y2),
        ))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> FieldElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        cofactor = self.conjugate(2) * self.conjugate(3) * self.conjugate(4)
        return cofactor / n

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return FieldElement(self.field, tuple(a / other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    # -- embeddings, trace, norm -----------------------------------------
    def conjugate(self, i: int) -> FieldElement:
        sy, sz, sw = EMBEDDING_SIGNS[i - 1]
        x, y, z, w = self.coords
        return FieldElement(self.field, (x, sy * y, sz * z, sw * w))

    def trace(self) -> Fraction:
        return 4 * self.x

    def relative_norm(self) -> tuple[Fraction, Fraction]:
        """N_{K/Q(sqrt p)} as (u, v) meaning u + v*sqrt(p)."""
        f = self.field
        x, y, z, w = self.coords
        u = x * x + f.p * y * y - f.q * z * z - f.r * w * w
        v = 2 * x * y - 2 * f.p0 * z * w
        return u, v

    def norm(self) -> Fraction:
        u, v = self.relative_norm()
        return u * u - self.field.p * v * v

    def char_poly(self) -> CharPoly:
        a2 = self * self
        a3 = a2 * self
        a4 = a2 * a2
        p1, p2, p3, p4 = self.trace(), a2.trace(), a3.trace(), a4.trace()
        e1 = p1
        e2 = (e1 * p1 - p2) / 2
        e3 = (e2 * p1 - e1 * p2 + p3) / 3
        e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4
        return CharPoly(e1, e2, e3, e4)

    def approx_embeddings(self) -> tuple[float, float, float, float]:
        sp, sq, sr = self.field.float_roots
        x, y, z, w = (float(c) for c in self.coords)
        return tuple(x + sy * y * sp + sz * z * sq + sw * w * sr for sy, sz, sw in EMBEDDING_SIGNS)

    def is_totally_positive(self) -> bool:
        decided = _float_positivity(self)
        if decided is not None:
            return decided
        return _charpoly_positive(self)

    def is_totally_positive_exact(self) -> bool:
        return _charpoly_positive(self)

    def dominates(self, other) -> bool:
        diff = self - other
        return diff.is_zero() or diff.is_totally_positive()

    def refine_embedding(self, i: int, width: Rational) -> EmbeddingInterval:
        return refine_embedding(self, i, width)

    # -- display ----------------------------------------------------------
    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"FieldElement({self.field.p},{self.field.q}: {format_element(self)})"


def _charpoly_positive(a: FieldElement) -> bool:
    cp = a.char_poly()
    return cp.A > 0 and cp.B > 0 and cp.C > 0 and cp.D > 0


def _float_positivity(a: FieldElement) -> bool | None:
    """Sign decision from float embeddings, or None when too close to call."""
    sp, sq, sr = a.field.float_roots
    x, y, z, w = (float(c) for c in a.coords)
    ty, tz, tw = y * sp, z * sq, w * sr
    margin = 1e-9 * (abs(x) + abs(ty) + abs(tz) + abs(tw)) + 1e-300
    positive = True
    for sy, sz, sw in EMBEDDING_SIGNS:
        v = x + sy * ty + sz * tz + sw * tw
        if v < -margin:
            return False
        if v <= margin:
            positive = None
    return positive


def refine_embedding(a: FieldElement, i: int, width: Rational) -> EmbeddingInterval:
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    signs = EMBEDDING_SIGNS[i - 1]
    f = a.field
    x = a.x
    rad_coefs = [(s * c, m) for s, c, m in zip(signs, a.coords[1:], f.radicands) if c]
    if not rad_coefs:
        return EmbeddingInterval(x, x, i)
    bits = 8
    while True:
        lo = hi = x
        for c, m in rad_coefs:
            s_lo, s_hi = sqrt_bracket(m, bits)
            if c > 0:
                lo += c * s_lo
                hi += c * s_hi
            else:
                lo += c * s_hi
                hi += c * s_lo
        if hi - lo <= width:
            return EmbeddingInterval(lo, hi, i)
        bits += 8


def embedding_intervals(a: FieldElement, width: Rational) -> list[EmbeddingInterval]:
    return [refine_embedding(a, i, width) for i in (1, 2, 3, 4)]


def interval_positive(a: FieldElement, max_bits: int = 4096) -> bool:
    """Total positivity decided purely by refining embedding intervals."""
    if a.is_zero():
        return False
    width = Fraction(1, 4)
    while True:
        ivs = embedding_intervals(a, width)
        if all(iv.lo > 0 for iv in ivs):
            return True
        if any(iv.hi < 0 for iv in ivs):
            return False
        width /= 1 << 16
        if width.denominator.bit_length() > max_bits:
            raise RuntimeError("interval refinement did not separate an embedding from zero")


# -- literal syntax -------------------------------------------------------

_TERM = re.compile(
    r"\s*([+-])?\s*"
    r"(?:(\d+(?:/\d+)?)\s*(?:\*\s*s(\d+))?|s(\d+))\s*"
)


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_element(a: FieldElement) -> str:
    f = a.field
    parts = [_fmt_rational(a.x)]
    for c, m in zip(a.coords[1:], f.radicands):
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign} {_fmt_rational(abs(c))}*s{m}")
    return " ".join(parts)


def format_coords(coords: Iterable[Rational]) -> str:
    return "[" + ",".join(_fmt_rational(Fraction(c)) for c in coords) + "]"


def parse_element(text: str, f: FieldSpec) -> FieldElement:
    """Parse ``x + y*s{p} + z*s{q} + w*s{r}`` or ``[x,y,z,w]``."""
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError(f"unterminated quadruple: {text!r}")
        items = [t.strip() for t in s[1:-1].split(",")]
        if len(items) != 4:
            raise ParseError(f"expected four coordinates, got {len(items)}")
        try:
            return FieldElement(f, tuple(Fraction(t) for t in items))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coordinate in {text!r}: {exc}") from None
    if not s:
        raise ParseError("empty element literal")
    coords = [Fraction(0)] * 4
    slot = {f.p: 1, f.q: 2, f.r: 3}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text!r} at offset {pos}")
        sign, num, rad1, rad2 = m.groups()
        if sign is None and not first:
            raise ParseError(f"missing operator in {text!r} at offset {pos}")
        try:
            coef = Fraction(num) if num is not None else Fraction(1)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {text!r}") from None
        if sign == "-":
            coef = -coef
        rad = rad1 or rad2
        if rad is None:
            coords[0] += coef
        else:
            m_rad = int(rad)
            if m_rad not in slot:
                raise ParseError(f"s{m_rad} is not one of s{f.p}, s{f.q}, s{f.r}")
            coords[slot[m_rad]] += coef
        pos = m.end()
        first = False
    return FieldElement(f, tuple(coords))
