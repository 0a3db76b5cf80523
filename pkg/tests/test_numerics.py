"""Core numerics: rounding, harmonic numbers, certified logs, the enclosure."""

import random
from fractions import Fraction

import mpmath as mp
import pytest

from conftest import mpf_to_fraction
from gammaseq import numerics
from gammaseq.errors import DomainError
from gammaseq.numerics import (
    BigReal,
    Enclosure,
    gamma_bootstrap,
    gamma_reference,
    harmonic_exact,
    harmonic_float,
    harmonic_interval,
    ln_interval,
    ln_real,
    sqrt_interval,
)

GAMMA_DIGITS = Fraction("0.57721566490153286")


def random_fraction(rng, max_num=10**6):
    return Fraction(rng.randrange(1, max_num), rng.randrange(1, max_num))


# ---------------------------------------------------------------------------
# BigReal


def test_bigreal_rounding_directions():
    x = Fraction(1, 3)
    lo = BigReal.from_fraction(x, 64, "floor")
    hi = BigReal.from_fraction(x, 64, "ceiling")
    near = BigReal.from_fraction(x, 64)
    assert lo.to_fraction() < x < hi.to_fraction()
    assert hi.to_fraction() - lo.to_fraction() == Fraction(1, 2**65)  # one ulp
    assert abs(near.to_fraction() - x) <= Fraction(1, 2**66)


def test_bigreal_rounding_respects_sign():
    x = Fraction(-1, 3)
    lo = BigReal.from_fraction(x, 32, "floor")
    hi = BigReal.from_fraction(x, 32, "ceiling")
    assert lo.to_fraction() < x < hi.to_fraction()


def test_bigreal_exact_values_round_trip():
    for v in (0, 1, -5, Fraction(3, 4), Fraction(1, 2**40)):
        assert BigReal.from_fraction(v, 64).to_fraction() == Fraction(v)


def test_bigreal_arithmetic_relative_error():
    rng = random.Random(3)
    p = 96
    bound = Fraction(2) ** (1 - p)
    for _ in range(40):
        a = random_fraction(rng)
        b = random_fraction(rng)
        xa = BigReal.from_fraction(a, p)
        xb = BigReal.from_fraction(b, p)
        for got, exact in (
            (xa + xb, a + b),
            (xa - xb, a - b),
            (xa * xb, a * b),
            (xa / xb, a / b),
        ):
            err = abs(got.to_fraction() - exact)
            # operands were already rounded once, hence the factor 3
            assert err <= 3 * abs(exact) * bound + bound


def test_bigreal_comparisons_and_float():
    a = BigReal.from_fraction(Fraction(1, 2), 64)
    b = BigReal.from_fraction(Fraction(3, 4), 64)
    assert a < b and b > a and a <= a and a == Fraction(1, 2)
    assert float(a) == 0.5


def test_bigreal_decimal_str():
    x = BigReal.from_fraction(Fraction(1, 4), 64)
    assert x.decimal_str(3) == "0.250"
    y = BigReal.from_fraction(Fraction(-1, 3), 80)
    assert y.decimal_str(4) == "-0.3333"
    assert y.decimal_str(4, "floor") == "-0.3334"
    assert y.decimal_str(4, "ceiling") == "-0.3333"


def test_bigreal_rejects_tiny_precision():
    with pytest.raises(DomainError):
        BigReal.from_fraction(Fraction(1, 3), 16)


# ---------------------------------------------------------------------------
# harmonic numbers


def brute_harmonic(n):
    num, den = 0, 1
    for k in range(1, n + 1):
        num = num * k + den
        den *= k
    return Fraction(num, den)


def test_harmonic_exact_small_values():
    assert harmonic_exact(1) == 1
    assert harmonic_exact(3) == Fraction(11, 6)
    assert harmonic_exact(10) == brute_harmonic(10)


def test_harmonic_exact_difference_property():
    # also crosses the internal anchor boundary at multiples of 256
    for n in [1, 2, 50, 254, 255, 256, 257, 511, 512, 1000]:
        assert harmonic_exact(n + 1) - harmonic_exact(n) == Fraction(1, n + 1)


def test_harmonic_exact_random_access_matches_oracle():
    rng = random.Random(11)
    ns = [rng.randrange(1, 400) for _ in range(12)]
    for n in ns:  # cache-order independence
        assert harmonic_exact(n) == brute_harmonic(n)


def test_harmonic_exact_rejects_nonpositive():
    with pytest.raises(DomainError):
        harmonic_exact(0)


def test_harmonic_float_trivial_values():
    assert harmonic_float(1, 64).to_fraction() == 1
    err = abs(harmonic_float(3, 128).to_fraction() - Fraction(11, 6))
    assert err <= Fraction(1, 2**120)


@pytest.mark.parametrize("p", [64, 128, 256])
def test_harmonic_float_agrees_with_exact(p):
    bound = Fraction(2) ** (1 - p)
    exact = Fraction(0)
    check_at = set(range(1, 101)) | {500, 1000, 2718, 5000, 9999, 10000}
    for n in range(1, 10001):
        exact += Fraction(1, n)
        if n in check_at:
            assert abs(harmonic_float(n, p).to_fraction() - exact) <= exact * bound


def test_harmonic_float_large_n_against_split_sum():
    # independent oracle: exact H at 10^4 plus a directed-rounded range sum
    n_small, n_large, q = 10**4, 10**6, 288
    lo = hi = 0
    one = 1 << q
    for k in range(n_small + 1, n_large + 1):
        d, r = divmod(one, k)
        lo += d
        hi += d + (1 if r else 0)
    base = harmonic_exact(n_small)
    oracle_lo = base + Fraction(lo, one)
    oracle_hi = base + Fraction(hi, one)
    got = harmonic_float(n_large, 256).to_fraction()
    slack = oracle_hi * Fraction(2) ** (1 - 256)
    assert oracle_lo - slack <= got <= oracle_hi + slack


def test_harmonic_interval_brackets_exact():
    lo, hi = harmonic_interval(100, 128)
    h = harmonic_exact(100)
    assert lo <= h <= hi


# ---------------------------------------------------------------------------
# logarithms and square roots


def test_ln_one_is_exactly_zero():
    assert ln_real(1, 64).to_fraction() == 0


@pytest.mark.parametrize("x", [2, Fraction(3, 2), 10, Fraction(1, 7)])
def test_ln_real_matches_oracle(x):
    p = 128
    mp.mp.prec = p + 80
    oracle = mpf_to_fraction(mp.ln(mp.mpf(x.numerator if isinstance(x, Fraction) else x)
                                   / (x.denominator if isinstance(x, Fraction) else 1)))
    got = ln_real(x, p).to_fraction()
    assert abs(got - oracle) <= abs(oracle) * Fraction(2) ** (4 - p)


def test_ln_interval_contains_oracle_random():
    rng = random.Random(5)
    mp.mp.prec = 300
    for _ in range(30):
        x = random_fraction(rng)
        lo, hi = ln_interval(x, 160)
        oracle = mpf_to_fraction(mp.ln(mp.mpf(x.numerator) / x.denominator))
        # mpmath is correct to ~2^-295 here, far below our width
        assert lo - Fraction(1, 2**250) <= oracle <= hi + Fraction(1, 2**250)


def test_ln_interval_near_one_keeps_relative_accuracy():
    x = 1 + Fraction(1, 10**9)
    lo, hi = ln_interval(x, 96)
    mp.mp.prec = 400
    oracle = mpf_to_fraction(mp.ln(mp.mpf(1) + mp.mpf(10) ** -9))
    assert lo <= oracle <= hi
    assert hi - lo <= abs(oracle) * Fraction(2) ** -90


def test_ln_product_property():
    # |ln(xy) - ln x - ln y| <= 3 * 2^(1-p) * |ln(xy)|
    rng = random.Random(17)
    p = 96
    for _ in range(25):
        x = random_fraction(rng)
        y = random_fraction(rng)
        if x * y == 1:
            continue
        lxy = ln_real(x * y, p).to_fraction()
        resid = abs(lxy - ln_real(x, p).to_fraction() - ln_real(y, p).to_fraction())
        assert resid <= 3 * abs(lxy) * Fraction(2) ** (1 - p)


def test_ln_rejects_nonpositive():
    with pytest.raises(DomainError):
        ln_real(0, 64)
    with pytest.raises(DomainError):
        ln_interval(Fraction(-2), 64)


def test_sqrt_interval_brackets_oracle():
    mp.mp.prec = 300
    for x in (2, 6, Fraction(24, 7)):
        lo, hi = sqrt_interval(x, 128)
        oracle = mpf_to_fraction(mp.sqrt(mp.mpf(Fraction(x).numerator) / Fraction(x).denominator))
        assert lo <= oracle <= hi
        assert hi - lo == Fraction(1, 2**128)


# ---------------------------------------------------------------------------
# the reference enclosure


def euler_fraction():
    mp.mp.prec = 700
    return mpf_to_fraction(mp.euler)


@pytest.mark.parametrize("p", [32, 64, 74, 75, 128, 192, 256])
def test_gamma_reference_contract(p):
    enc = gamma_reference(p)
    assert enc.width <= Fraction(2) ** (2 - p)
    assert enc.lo < enc.hi
    assert enc.contains(euler_fraction())


def test_gamma_reference_is_deterministic():
    a = gamma_reference.__wrapped__(128)
    b = gamma_reference.__wrapped__(128)
    assert a.bounds() == b.bounds()


def test_gamma_reference_nested_midpoints():
    pairs = [(32, 48), (48, 64), (64, 96), (64, 128), (96, 192), (128, 256)]
    for p1, p2 in pairs:
        outer = gamma_reference(p1)
        mid = gamma_reference(p2).midpoint().to_fraction()
        assert outer.lo.to_fraction() <= mid <= outer.hi.to_fraction()


def test_gamma_reference_leading_digits_at_64():
    enc = gamma_reference(64)
    lo, hi = enc.bounds()
    assert GAMMA_DIGITS <= lo and hi < GAMMA_DIGITS + Fraction(1, 10**17)


def test_gamma_bootstrap_small_n():
    enc = gamma_bootstrap(10, 128)
    assert enc.contains(GAMMA_DIGITS)
    assert enc.contains(euler_fraction())
    # width 1/(60 n^4) plus slack
    assert enc.width <= Fraction(1, 60 * 10**4) + Fraction(1, 2**100)


def test_gamma_bootstrap_rejects_small_n():
    with pytest.raises(DomainError):
        gamma_bootstrap(8, 64)


def test_gamma_reference_rejects_small_precision():
    with pytest.raises(DomainError):
        gamma_reference(16)


def test_enclosure_invariants():
    lo = BigReal.from_fraction(Fraction(1, 3), 64, "floor")
    hi = BigReal.from_fraction(Fraction(1, 3), 64, "ceiling")
    enc = Enclosure(lo, hi)
    assert enc.contains(Fraction(1, 3))
    with pytest.raises(ValueError):
        Enclosure(hi + 1, lo)


def test_bootstrap_rule_matches_reference_for_small_p():
    # at p = 64 the rule picks N = 2^15 and the bootstrap route is used
    assert numerics._bootstrap_n_for(64) == 2**15
    direct = gamma_bootstrap(2**15, 64 + numerics.GUARD_BITS)
    ref = gamma_reference(64)
    assert direct.contains(euler_fraction()) and ref.contains(euler_fraction())
