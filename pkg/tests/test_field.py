from __future__ import annotations

from fractions import Fraction

import pytest

from biquad.errors import Equal, FieldMismatch, NotSquareFree, OutOfRange, ParseError
from biquad.field import (
    BasisType,
    format_element,
    interval_positive,
    is_squarefree,
    make_field,
    parse_element,
    quadratic_discriminant,
    refine_embedding,
    sqrt_bracket,
)

from oracles import gcd_trio, mp_embeddings, naive_squarefree, sympy_char_poly


def test_squarefree_matches_naive():
    assert [n for n in range(1, 400) if is_squarefree(n)] == [n for n in range(1, 400) if naive_squarefree(n)]


@pytest.mark.parametrize("p,q", [(30, 35), (143, 165), (10, 35), (5, 13), (21, 33), (2, 3), (6, 10)])
def test_gcd_trio(p, q):
    f = make_field(p, q)
    o = gcd_trio(p, q)
    assert (f.r, f.p0, f.q0, f.r0) == (o["r"], o["p0"], o["q0"], o["r0"])
    assert f.p == f.q0 * f.r0 and f.q == f.p0 * f.r0 and f.r == f.p0 * f.q0


def test_known_fields():
    f = make_field(30, 35)
    assert (f.r, f.p0, f.q0, f.r0, f.basis_type) == (42, 7, 6, 5, BasisType.T1)
    g = make_field(143, 165)
    assert (g.r, g.p0, g.q0, g.r0, g.basis_type) == (195, 15, 13, 11, BasisType.T3)


@pytest.mark.parametrize("p,q,err", [(4, 7, NotSquareFree), (7, 12, NotSquareFree), (5, 5, Equal),
                                     (1, 5, OutOfRange), (-3, 5, OutOfRange)])
def test_make_field_errors(p, q, err):
    with pytest.raises(err):
        make_field(p, q)


def test_basis_types_cover_all_cases():
    seen = {make_field(p, q).basis_type for p, q in [(2, 3), (2, 5), (3, 5), (5, 13), (21, 33)]}
    assert seen == set(BasisType)


def test_mul_table():
    f = make_field(30, 35)
    s30, s35, s42 = f.sqrt(30), f.sqrt(35), f.sqrt(42)
    assert s30 * s35 == 5 * s42
    assert s30 * s42 == 6 * s35
    assert s35 * s42 == 7 * s30
    assert s42 * s42 == f.element(42)


def test_add_sub_identities():
    f = make_field(30, 35)
    a, b = f.element(1, 1), f.element(1, 0, 1)
    assert a + b == f.element(2, 1, 1)
    assert a + f.zero() == a
    assert a + f.element(-1, -1) == f.zero()
    assert a - a == f.zero()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        make_field(30, 35).one() + make_field(10, 35).one()
    with pytest.raises(FieldMismatch):
        make_field(30, 35).one().dominates(make_field(10, 35).one())


def test_unit_eps_p():
    n = 6
    f = make_field(4 * n * n - 1, (2 * n - 1) * (2 * n + 3))
    assert f.element(2 * n, 1) * f.element(2 * n, -1) == f.one()
    assert f.element(2 * n, 1).is_totally_positive()


def test_conjugates():
    f = make_field(143, 165)
    assert f.sqrt(143).conjugate(2) == -f.sqrt(143)
    a = f.element(Fraction(1, 3), 2, -5, 7)
    assert a.conjugate(1) == a
    for i in (1, 2, 3, 4):
        assert a.conjugate(i).conjugate(i) == a


def test_trace_values():
    f = make_field(143, 165)
    mu = f.element(Fraction(15, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    assert mu.trace() == 30
    assert f.one().trace() == 4
    assert f.sqrt(143).trace() == 0


def test_mu_char_poly_against_sympy():
    f = make_field(143, 165)
    coords = (Fraction(15, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    cp = f.element(*coords).char_poly()
    assert (cp.A, cp.B, cp.C, cp.D) == tuple(int(v) for v in sympy_char_poly(143, 165, coords))
    assert (cp.A, cp.D) == (30, 4)


def test_rational_char_poly():
    f = make_field(2, 3)
    c = Fraction(5, 3)
    cp = f.element(c).char_poly()
    assert (cp.A, cp.B, cp.C, cp.D) == (4 * c, 6 * c**2, 4 * c**3, c**4)


def test_norm_of_half_mix():
    n = 6
    f = make_field(143, 165)
    ep, er = f.element(2 * n, 1), f.element(2 * n + 2, 0, 0, 1)
    assert ((ep.inverse() + er) / 2).norm() == (2 * n + 1) ** 2


def test_total_positivity_basics():
    f = make_field(30, 35)
    assert not f.sqrt(30).is_totally_positive()
    assert not f.zero().is_totally_positive()
    assert f.element(74, 2, 2).dominates(f.element(31, 2))
    assert f.one().dominates(f.one())
    assert not f.one().dominates(f.element(2))


def test_refine_embedding():
    f = make_field(30, 35)
    iv = refine_embedding(f.sqrt(30), 1, Fraction(1, 100))
    assert iv.width <= Fraction(1, 100) and iv.contains(Fraction(5477, 1000))
    five = refine_embedding(f.element(5), 3, Fraction(1, 10))
    assert five.lo == five.hi == 5
    small = f.element(-5, 0, 0, 1)  # sqrt(42) - 5 - not zero but smallish
    assert refine_embedding(small, 1, Fraction(1, 1000)).excludes_zero()


def test_sqrt_bracket():
    for n in (2, 30, 195, 10**6 + 3):
        lo, hi = sqrt_bracket(n, 40)
        assert lo * lo <= n <= hi * hi and hi - lo <= Fraction(1, 2**39)


def test_interval_positive_near_boundary():
    f = make_field(2, 3)
    # 5 - 2 sqrt 6 = (sqrt 3 - sqrt 2)^2 is tiny but totally positive
    a = f.element(5, 0, 0, -2)
    assert a.is_totally_positive() and interval_positive(a)


def test_embedding_values_match_mpmath():
    f = make_field(143, 165)
    coords = (Fraction(7, 2), -1, Fraction(3, 2), 2)
    ours = f.element(*coords).approx_embeddings()
    ref = mp_embeddings(143, 165, coords)
    assert all(abs(a - float(b)) < 1e-9 for a, b in zip(ours, ref))


def test_quadratic_discriminant():
    assert [quadratic_discriminant(m) for m in (5, 3, 2, 13)] == [5, 12, 8, 13]


@pytest.mark.parametrize("text,coords", [
    ("44 + 1*s30 + 0*s35 + 1*s42", (44, 1, 0, 1)),
    ("44+s30+s42", (44, 1, 0, 1)),
    ("[1/2, -3, 0, 7/5]", (Fraction(1, 2), -3, 0, Fraction(7, 5))),
    ("-s35", (0, 0, -1, 0)),
    ("1/2*s30 - 2/3", (Fraction(-2, 3), Fraction(1, 2), 0, 0)),
])
def test_parse(text, coords):
    f = make_field(30, 35)
    assert parse_element(text, f) == f.element(*coords)


@pytest.mark.parametrize("text", ["", "1 + s7", "[1,2,3]", "1 2", "1/0", "foo"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_element(text, make_field(30, 35))


def test_format_round_trip():
    f = make_field(143, 165)
    a = f.element(Fraction(-7, 2), 0, Fraction(1, 2), -3)
    assert parse_element(format_element(a), f) == a
