from __future__ import annotations

import random

import pytest

from biquad.errors import BudgetExceeded, NotTotallyNonnegative, Refuted, WrongBasisType
from biquad.field import make_field, parse_element
from biquad.ring import from_integral_coords, integral, integral_basis, to_integral_coords
from biquad.sos import (
    CertificateKind,
    SearchBudget,
    WitnessKind,
    applicable_witnesses,
    certify_min_rank,
    enumerate_dominated_squares,
    pythagoras_scan,
    sos_rank,
    witness_element,
    witness_squares,
)

from oracles import classical_sos_rank, naive_dominated_squares


def _ie(f, text):
    return to_integral_coords(parse_element(text, f))


@pytest.mark.parametrize("p,q,text", [
    (30, 35, "7"),
    (30, 35, "44+s30+s42"),
    (10, 35, "20+s10+s14"),
    (143, 165, "15/2+1/2*s143+1/2*s165+1/2*s195"),
    (5, 13, "9+s5+s13"),
    (21, 33, "12+s21"),
    (2, 5, "10+2*s2+s10"),
])
def test_candidates_match_naive_scan(p, q, text):
    f = make_field(p, q)
    t = _ie(f, text)
    ours = {c.beta.coords for c in enumerate_dominated_squares(t)}
    assert ours == naive_dominated_squares(f, integral_basis(f).elements, t.value.coords)


def test_seven_needs_four_squares():
    cert = sos_rank(_ie(make_field(10, 35), "7"))
    assert (cert.kind, cert.rank_or_bound) == (CertificateKind.EXACT, 4)
    assert cert.verify_witness()


def test_zero_has_rank_zero():
    cert = sos_rank(integral(make_field(10, 35), 0, 0, 0, 0))
    assert (cert.kind, cert.rank_or_bound, cert.witness) == (CertificateKind.EXACT, 0, [])


def test_rational_integers_follow_classical_rank_when_only_rational_squares_fit():
    f = make_field(10, 35)
    for m in range(1, 31):
        t = integral(f, m, 0, 0, 0)
        cert = sos_rank(t)
        assert cert.verify_witness()
        only_rational = all(c.beta.value.is_rational() for c in enumerate_dominated_squares(t))
        if only_rational:
            assert cert.rank_or_bound == classical_sos_rank(m), m
        else:
            assert cert.rank_or_bound <= classical_sos_rank(m), m


def test_ten_is_a_square_of_an_irrational_integer():
    # sqrt(10)^2 = 10, so the classical rank 2 is not the rank in this field
    f = make_field(10, 35)
    cert = sos_rank(integral(f, 10, 0, 0, 0))
    assert cert.rank_or_bound == 1
    assert cert.witness[0].value in (f.sqrt(10), -f.sqrt(10))


def test_classical_rank_in_a_field_with_large_radicands():
    f = make_field(143, 165)
    for m in range(1, 31):
        assert sos_rank(integral(f, m, 0, 0, 0)).rank_or_bound == classical_sos_rank(m), m


@pytest.mark.parametrize("p,q,text", [(30, 35, "44+s30+s42"), (10, 35, "20+s10+s14")])
def test_six_square_lower_bounds(p, q, text):
    t = _ie(make_field(p, q), text)
    cert = certify_min_rank(t, 6)
    assert (cert.kind, cert.rank_or_bound) == (CertificateKind.LOWER_BOUND, 6)
    exact = sos_rank(t)
    assert exact.rank_or_bound == 6 and exact.verify_witness()


def test_refuted_carries_minimal_witness():
    f = make_field(30, 35)
    with pytest.raises(Refuted) as exc:
        certify_min_rank(witness_element(WitnessKind.B1a, f), 6)
    cert = exc.value.certificate
    assert cert.kind is CertificateKind.EXACT and cert.rank_or_bound == 3 and cert.verify_witness()


def test_budget_exhaustion_is_inconclusive():
    t = _ie(make_field(30, 35), "44+s30+s42")
    with pytest.raises(BudgetExceeded) as exc:
        sos_rank(t, SearchBudget(node_limit=3))
    assert exc.value.certificate.kind is CertificateKind.INCONCLUSIVE


def test_depth_limit_gives_lower_bound():
    cert = sos_rank(_ie(make_field(10, 35), "7"), SearchBudget(max_depth=2))
    assert (cert.kind, cert.rank_or_bound) == (CertificateKind.LOWER_BOUND, 3)


def test_not_totally_positive_rejected():
    f = make_field(30, 35)
    with pytest.raises(NotTotallyNonnegative):
        sos_rank(_ie(f, "s30"))


def test_rank_subadditive_under_one_square():
    f = make_field(10, 35)
    rng = random.Random(11)
    for _ in range(12):
        a = sum((from_integral_coords(f, [rng.randint(-1, 1) for _ in range(4)]) ** 2 for _ in range(2)), f.zero())
        b = from_integral_coords(f, [rng.randint(-1, 1) for _ in range(4)])
        if a.is_zero():
            continue
        ra = sos_rank(to_integral_coords(a)).rank_or_bound
        rab = sos_rank(to_integral_coords(a + b * b)).rank_or_bound
        assert rab <= ra + 1


def test_determinism_across_workers():
    f = make_field(143, 165)
    t = witness_element(WitnessKind.Main7, f)
    c1 = certify_min_rank(t, 7, workers=1)
    c2 = certify_min_rank(t, 7, workers=2)
    assert (c1.kind, c1.rank_or_bound, c1.nodes_explored, c1.candidates) == \
        (c2.kind, c2.rank_or_bound, c2.nodes_explored, c2.candidates)
    e1, e2 = sos_rank(t, workers=1), sos_rank(t, workers=2)
    assert e1.to_dict()["witness"] == e2.to_dict()["witness"]


def test_witness_elements():
    f = make_field(143, 165)
    main7 = witness_element(WitnessKind.Main7, f)
    assert main7.coords == (223, -4, -1, 6)
    total = f.element(7)
    for s in witness_squares(WitnessKind.Main7, f):
        total = total + s * s
    assert total == main7.value
    with pytest.raises(WrongBasisType):
        witness_element(WitnessKind.B4, f)
    assert set(applicable_witnesses(make_field(5, 13))) == {WitnessKind.B4}


def test_pythagoras_scan_small():
    f = make_field(30, 35)
    best, certs = pythagoras_scan(f, samples=6, seed=1)
    assert best >= 4 and all(c.kind is CertificateKind.EXACT for c in certs)
    assert all(c.verify_witness() for c in certs)
