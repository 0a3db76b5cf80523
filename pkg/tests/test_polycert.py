"""Polynomial algebra, Taylor shifts, and the sign-chain certificates."""

import random
from fractions import Fraction

import pytest

from gammaseq.errors import DomainError
from gammaseq.numerics import gamma_reference
from gammaseq.polycert import (
    F_NUMERATOR_SHIFTED_COEFFS,
    G_NUMERATOR_SHIFTED_COEFFS,
    Polynomial,
    PositivityCertificate,
    PositivityRefusal,
    RationalFunction,
    check_derivative_identity,
    derivative_denominator,
    derivative_numerator,
    derivative_of_f,
    positivity_certificate,
    step_function,
    tail_sign_verdict,
    taylor_shift,
)
from gammaseq.sequences import SOptimal, evaluate_interval

F = Fraction
X = Polynomial.x()


def random_poly(rng, degree):
    return Polynomial(
        [F(rng.randrange(-20, 21), rng.randrange(1, 8)) for _ in range(degree + 1)]
    )


# ---------------------------------------------------------------------------
# polynomial arithmetic


def test_poly_basics():
    assert (X**2).derivative() == 2 * X
    assert (X - 1) * (X + 1) == X**2 - 1
    assert Polynomial((1, 2, 1)).evaluate(F(1, 2)) == F(9, 4)
    assert Polynomial().degree == float("-inf")
    assert (X**3).degree == 3


def test_poly_divmod():
    p = (X - 1) * (X + 2) * (X + 5) + 7
    q, r = divmod(p, X + 2)
    assert q * (X + 2) + r == p
    assert r.degree < 1


def test_poly_derivative_matches_central_difference():
    rng = random.Random(47)
    h = F(1, 2**12)
    for _ in range(10):
        p = random_poly(rng, 6)
        x = F(rng.randrange(-8, 9), rng.randrange(1, 5))
        diff = (p.evaluate(x + h) - p.evaluate(x - h)) / (2 * h)
        exact = p.derivative().evaluate(x)
        # central difference error is h^2/6 * |p'''| near x
        p3 = p.derivative().derivative().derivative()
        bound = h * h * sum(abs(c) for c in p3.coeffs) * max(1, abs(x) + 1) ** 6
        assert abs(diff - exact) <= bound


def test_taylor_shift_hand_value():
    assert taylor_shift(X**2, 1).coeffs == (1, 2, 1)


def test_taylor_shift_round_trips():
    rng = random.Random(53)
    for _ in range(50):
        p = random_poly(rng, rng.randrange(0, 7))
        c = F(rng.randrange(-10, 11), rng.randrange(1, 6))
        assert taylor_shift(taylor_shift(p, c), -c) == p


def test_taylor_shift_preserves_evaluation():
    rng = random.Random(59)
    p = random_poly(rng, 5)
    c = F(3, 7)
    shifted = taylor_shift(p, c)
    for _ in range(20):
        x = F(rng.randrange(-40, 40), rng.randrange(1, 12))
        assert p.evaluate(x) == sum(
            d * (x - c) ** k for k, d in enumerate(shifted.coeffs)
        )


# ---------------------------------------------------------------------------
# rational functions


def test_rational_function_canonical_form():
    r = RationalFunction(X**2 - 1, X - 1)
    assert r == RationalFunction(X + 1, Polynomial((1,)))
    assert r.den == Polynomial((1,))


def test_rational_function_derivative_quotient_rule():
    r = RationalFunction(X**2 + 1, X - 2)
    d = r.derivative()
    manual = RationalFunction((2 * X) * (X - 2) - (X**2 + 1), (X - 2) ** 2)
    assert d == manual


# ---------------------------------------------------------------------------
# positivity certificates


def test_certificates_recover_closed_form_coefficients():
    cert_p = positivity_certificate(derivative_numerator("f"), 1)
    assert isinstance(cert_p, PositivityCertificate)
    assert cert_p.shifted_coeffs == F_NUMERATOR_SHIFTED_COEFFS
    cert_q = positivity_certificate(derivative_numerator("g"), 9)
    assert isinstance(cert_q, PositivityCertificate)
    assert cert_q.shifted_coeffs == G_NUMERATOR_SHIFTED_COEFFS


def test_numerator_polynomials_match_independent_construction():
    # build P from its (x-1)-power form with generic polynomial arithmetic
    p = Polynomial()
    for k, c in enumerate(F_NUMERATOR_SHIFTED_COEFFS):
        p = p + c * (X - 1) ** k
    assert p == derivative_numerator("f")
    q = Polynomial()
    for k, c in enumerate(G_NUMERATOR_SHIFTED_COEFFS):
        q = q + c * (X - 9) ** k
    assert q == derivative_numerator("g")


def test_certificate_refusal_is_not_a_disproof():
    refusal = positivity_certificate(X**2 - 1, 0)
    assert isinstance(refusal, PositivityRefusal)
    assert refusal.first_negative_index == 0
    # yet x^2 - 1 > 0 on (1, inf); a shifted center certifies it
    assert isinstance(positivity_certificate(X**2 - 1, 1), PositivityCertificate)


def test_certificate_soundness_random_points():
    rng = random.Random(61)
    for poly, c in ((derivative_numerator("f"), F(1)), (derivative_denominator(), F(1))):
        cert = positivity_certificate(poly, c)
        assert isinstance(cert, PositivityCertificate)
        for _ in range(100):
            x = c + F(rng.randrange(1, 10**6), rng.randrange(1, 10**4))
            assert poly.evaluate(x) > 0


def test_zero_polynomial_refused():
    assert isinstance(positivity_certificate(Polynomial(), 0), PositivityRefusal)


# ---------------------------------------------------------------------------
# the step functions and their sign chains


def test_derivative_identity_exact():
    assert check_derivative_identity("f")
    assert check_derivative_identity("g")
    den = derivative_denominator()
    fd = derivative_of_f("f")
    assert fd.num * den == derivative_numerator("f") * fd.den
    gd = derivative_of_f("g")
    assert gd.num * den == -derivative_numerator("g") * gd.den


def test_step_derivative_matches_finite_difference():
    fn = step_function("f")
    fd = derivative_of_f("f")
    h = F(1, 2**16)
    x = F(2)
    up = fn.value_interval(x + h, 200)
    down = fn.value_interval(x - h, 200)
    diff = ((up[0] + up[1]) - (down[0] + down[1])) / (4 * h)
    assert abs(diff - fd.evaluate(x)) <= F(1, 10**8)


def test_step_functions_vanish_at_infinity_structurally():
    assert step_function("f").vanishes_at_infinity()
    assert step_function("g").vanishes_at_infinity()


def test_tail_sign_verdicts():
    vf = tail_sign_verdict("f")
    assert vf.derivative_sign == 1 and vf.function_sign == -1
    assert vf.threshold == 1
    assert "decreasing for n >= 2" in vf.conclusion
    vg = tail_sign_verdict("g")
    assert vg.derivative_sign == -1 and vg.function_sign == 1
    assert vg.threshold == 9
    assert "increasing for n >= 9" in vg.conclusion


def test_verdicts_corroborated_numerically():
    # the certified monotonicity shows up in the actual gap sequences
    enc = gamma_reference(128)
    g_lo, g_hi = enc.bounds()

    def gaps(n, coeff):
        lo, hi = evaluate_interval(SOptimal(), n, 170)
        bracket = F(1, 12 * n**3) + coeff * F(1, n**4)
        return lo - g_hi - bracket, hi - g_lo - bracket

    z10 = gaps(10, F(11, 120))
    z11 = gaps(11, F(11, 120))
    assert z10[0] > z11[1]  # z strictly decreasing
    t10 = gaps(10, F(13, 120))
    t11 = gaps(11, F(13, 120))
    assert t10[1] < t11[0]  # t strictly increasing


def test_unknown_variant_rejected():
    with pytest.raises(DomainError):
        step_function("h")
    with pytest.raises(DomainError):
        derivative_numerator("h")
