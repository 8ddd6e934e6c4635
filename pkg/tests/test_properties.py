from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, given, seed, settings
from hypothesis import strategies as st

from biquad.field import FieldElement, format_element, interval_positive, make_field, parse_element
from biquad.ring import from_integral_coords, integral_basis, to_integral_coords

from oracles import mp_embeddings

FIELDS = [make_field(p, q) for p, q in [(30, 35), (143, 165), (10, 35), (5, 13), (21, 33), (2, 5), (15, 77)]]

MANY = settings(max_examples=1000, deadline=None, derandomize=True,
                suppress_health_check=[HealthCheck.too_slow])

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
small_ints = st.integers(min_value=-40, max_value=40)


@st.composite
def elements(draw, field=None):
    f = field or draw(st.sampled_from(FIELDS))
    return FieldElement(f, tuple(draw(rationals) for _ in range(4)))


@st.composite
def element_pairs(draw):
    f = draw(st.sampled_from(FIELDS))
    return draw(elements(f)), draw(elements(f))


@st.composite
def integral_elements(draw):
    f = draw(st.sampled_from(FIELDS))
    return from_integral_coords(f, [draw(small_ints) for _ in range(4)])


@MANY
@seed(1)
@given(element_pairs())
def test_norm_is_multiplicative(pair):
    a, b = pair
    assert (a * b).norm() == a.norm() * b.norm()


@MANY
@seed(2)
@given(elements())
def test_char_poly_annihilates(a):
    assert a.char_poly()(a).is_zero()
    cp = a.char_poly()
    assert cp.A == a.trace() and cp.D == a.norm()


@MANY
@seed(3)
@given(elements())
def test_total_positivity_matches_intervals(a):
    if a.is_zero():
        assert not a.is_totally_positive()
    else:
        assert a.is_totally_positive() == interval_positive(a)


@MANY
@seed(4)
@given(integral_elements())
def test_integral_round_trip(a):
    ie = to_integral_coords(a)
    assert from_integral_coords(a.field, ie.coords) == a
    assert a.char_poly().is_integral()


@MANY
@seed(5)
@given(element_pairs(), st.integers(min_value=1, max_value=4))
def test_conjugation_is_a_ring_homomorphism(pair, i):
    a, b = pair
    assert (a * b).conjugate(i) == a.conjugate(i) * b.conjugate(i)
    assert (a + b).conjugate(i) == a.conjugate(i) + b.conjugate(i)


@MANY
@seed(6)
@given(elements())
def test_literal_round_trip(a):
    assert parse_element(format_element(a), a.field) == a


@settings(max_examples=300, deadline=None, derandomize=True)
@seed(7)
@given(element_pairs(), rationals)
def test_mul_commutative_associative(pair, k):
    a, b = pair
    c = a.field.element(k, 1, -k, 2)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=300, deadline=None, derandomize=True)
@seed(8)
@given(elements())
def test_trace_inside_embedding_intervals(a):
    from biquad.field import embedding_intervals
    for width in (Fraction(1), Fraction(1, 1000)):
        ivs = embedding_intervals(a, width)
        assert sum(iv.lo for iv in ivs) <= a.trace() <= sum(iv.hi for iv in ivs)


@settings(max_examples=300, deadline=None, derandomize=True)
@seed(9)
@given(elements())
def test_embeddings_agree_with_mpmath(a):
    ours = a.approx_embeddings()
    ref = mp_embeddings(a.field.p, a.field.q, a.coords)
    scale = 1 + sum(abs(float(c)) for c in a.coords) * 1000
    assert all(abs(x - float(y)) <= 1e-12 * scale for x, y in zip(ours, ref))


@settings(max_examples=300, deadline=None, derandomize=True)
@seed(10)
@given(element_pairs())
def test_inverse(pair):
    a, _ = pair
    if not a.is_zero():
        assert a * a.inverse() == a.field.one()


def test_basis_elements_integral_for_all_fields():
    for f in FIELDS:
        for g in integral_basis(f).elements:
            assert g.char_poly().is_integral()
