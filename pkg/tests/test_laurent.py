import pytest
from hypothesis import given
from hypothesis import strategies as st

from knotscheme.laurent import DELTA, LaurentPoly, add, mul, parse_poly, substitute_mirror

A = LaurentPoly.monomial(1, 1)
polys = st.dictionaries(st.integers(-12, 12), st.integers(-50, 50), max_size=6).map(LaurentPoly)


def P(text):
    return parse_poly(text)


def test_add_examples():
    assert add(P("A^2 + 1"), P("-A^2 + A")) == P("A + 1")
    p = P("3*A^-2 - A^5")
    assert add(p, LaurentPoly()) == p
    assert add(P("A^-3"), P("A^-3")) == P("2*A^-3")


def test_mul_examples():
    assert mul(A + A**-1, A - A**-1) == P("A^2 - A^-2")
    p = P("-A^7 + 4")
    assert mul(p, LaurentPoly.constant(1)) == p
    assert mul(P("-A^3"), P("-A^-3")) == 1


def test_mirror_examples():
    assert substitute_mirror(P("A^3 - A^-1")) == P("A^-3 - A")
    assert substitute_mirror(LaurentPoly.constant(1)) == 1


def test_zero_terms_are_stripped():
    p = LaurentPoly({3: 0, 1: 2})
    assert p.coeffs == {1: 2}
    assert LaurentPoly({2: 1}) - LaurentPoly({2: 1}) == LaurentPoly()
    assert not LaurentPoly({5: 0})


def test_big_coefficients_stay_exact():
    p = (DELTA ** 80).shift(7)
    assert p.coeffs[7 + 160] == 1
    assert max(abs(c) for c in p.coeffs.values()) > 2**63


def test_inverse_power_of_unit_monomial():
    assert P("-A^3") ** -1 == P("-A^-3")
    with pytest.raises(ValueError):
        (A + 1) ** -1


def test_text_round_trip():
    p = P("-A^-16 + A^-12 + A^-4")
    assert p.to_text() == "-A^-16 + A^-12 + A^-4"
    assert parse_poly(p.to_text()) == p
    assert p.to_t_text() == "-t^4 + t^3 + t"
    assert P("-A^-4 - A^4").to_t_text() == "-t - t^-1"


def test_t_text_fractional_powers():
    assert P("A^2").to_t_text() == "t^(-1/2)"


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_poly("A^")
    with pytest.raises(ValueError):
        parse_poly("x^2", var="A")


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@given(polys, polys)
def test_mirror_is_ring_homomorphism_and_involution(p, q):
    assert substitute_mirror(p + q) == substitute_mirror(p) + substitute_mirror(q)
    assert substitute_mirror(p * q) == substitute_mirror(p) * substitute_mirror(q)
    assert substitute_mirror(substitute_mirror(p)) == p


@given(polys)
def test_render_parse_round_trip(p):
    assert parse_poly(p.to_text()) == p
