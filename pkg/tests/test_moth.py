import random

import pytest

from equibridge.laurent import (
    InvariantViolation,
    lp_parse,
    rf_make,
    zp_parse,
    ZPoly,
)
from equibridge.moth import (
    INFINITE_ORDER,
    INCONCLUSIVE,
    OrderCertificate,
    certificate_from_invariants,
    moth_polynomial,
    order_certificate,
)
from equibridge.presentations import I1Presentation, butterfly_fraction, parse_i1
from equibridge.butterfly import butterfly_polynomial


def rand_pres(rng, n_max=3, a_max=6, c_max=3):
    n = rng.randint(1, n_max)
    alphas = tuple(rng.choice([a for a in range(-a_max, a_max + 1)
                               if a and a % 2 == 0]) for _ in range(n))
    cs = tuple(rng.choice([c for c in range(-c_max, c_max + 1) if c])
               for _ in range(n))
    return I1Presentation(alphas, cs)


def test_moth_of_trefoil_presentation():
    m = moth_polynomial(parse_i1("2;1"))
    expected = rf_make(lp_parse("2 - t - t^-1"), lp_parse("3 - t - t^-1"))
    neg = rf_make(lp_parse("-2 + t + t^-1"), lp_parse("3 - t - t^-1"))
    assert m in (expected, neg)


def test_moth_symmetry_and_vanishing_at_one():
    rng = random.Random(51)
    for _ in range(40):
        m = moth_polynomial(rand_pres(rng))
        assert m.subs_inv_equal()
        assert m.eval_at(1) == 0


def test_order_certificate_examples():
    cert = order_certificate(parse_i1("2;1"))
    assert cert.verdict == INFINITE_ORDER
    assert cert.determinant_lhat == 8
    assert cert.conway_lhat in (zp_parse("z^3"), zp_parse("-z^3"))


def test_vanishing_family_still_infinite_order():
    pres = parse_i1("2,-2,2,-2;1,1,-1,1")
    assert butterfly_polynomial(pres).is_zero()
    cert = order_certificate(pres)
    assert cert.verdict == INFINITE_ORDER
    assert not cert.conway_lhat.is_zero()


def test_every_small_presentation_infinite_order():
    rng = random.Random(52)
    for _ in range(40):
        pres = rand_pres(rng)
        cert = order_certificate(pres)
        assert cert.verdict == INFINITE_ORDER
        assert cert.determinant_lhat == abs(butterfly_fraction(pres).p)


def test_inconclusive_branch_via_stub():
    moth = rf_make(lp_parse("0"), lp_parse("1"))
    cert = certificate_from_invariants(ZPoly.zero(), 0, moth)
    assert cert.verdict == INCONCLUSIVE


def test_certificate_invariant_guard():
    moth = rf_make(lp_parse("0"), lp_parse("1"))
    with pytest.raises(InvariantViolation):
        OrderCertificate(INFINITE_ORDER, ZPoly.zero(), 0, moth)


def test_certificate_json_fields():
    j = order_certificate(parse_i1("2;-1")).to_json()
    assert set(j) == {"verdict", "conway_lhat", "det_lhat", "moth_num", "moth_den"}
    assert j["det_lhat"] == 8


def test_moth_parts_are_palindromic():
    """Symmetry under t -> 1/t makes both stored polynomials palindromic."""
    rng = random.Random(53)
    for _ in range(30):
        m = moth_polynomial(rand_pres(rng))
        for poly in (m.num, m.den):
            if poly.is_zero():
                continue
            lo, hi = poly.valuation(), poly.degree()
            assert all(poly.coeff(lo + k) == poly.coeff(hi - k)
                       for k in range(hi - lo + 1))
