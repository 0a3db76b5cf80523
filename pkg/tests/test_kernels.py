"""Kernel contracts: every (lo, hi) pair brackets the true value, and the
two backends produce bit-identical output."""

import random
from fractions import Fraction

import mpmath as mp
import pytest

import gammaseq._kernels_py as kernels_py
from conftest import mpf_to_fraction

try:
    import gammaseq._kernels as kernels_compiled
except ImportError:
    kernels_compiled = None


def brute_harmonic(n):
    num, den = 0, 1
    for k in range(1, n + 1):
        num = num * k + den
        den *= k
    return Fraction(num, den)


@pytest.mark.parametrize("n", [1, 2, 3, 10, 97, 1000])
@pytest.mark.parametrize("q", [64, 160])
def test_harmonic_fixed_brackets_exact_value(kernel_backend, n, q):
    lo, hi = kernel_backend.harmonic_fixed(n, q)
    target = brute_harmonic(n) * 2**q
    assert lo <= target <= hi
    assert hi - lo <= n


def test_atanh_fixed_brackets_oracle(kernel_backend):
    mp.mp.prec = 400
    rng = random.Random(7)
    for _ in range(25):
        w = rng.randrange(3, 10**6)
        u = rng.randrange(0, w // 2 + 1)
        q = rng.choice([64, 128, 256])
        lo, hi = kernel_backend.atanh_fixed(u, w, q)
        oracle = mpf_to_fraction(mp.atanh(mp.mpf(u) / w)) * 2**q
        assert lo <= oracle <= hi
        assert hi - lo <= 4 * q + 16  # a few ulps per term


def test_atanh_fixed_rejects_large_ratio(kernel_backend):
    with pytest.raises(ValueError):
        kernel_backend.atanh_fixed(2, 3, 64)


def test_ln2_fixed_brackets_oracle(kernel_backend):
    mp.mp.prec = 500
    oracle = mpf_to_fraction(mp.ln(2))
    for q in (64, 128, 333):
        lo, hi = kernel_backend.ln2_fixed(q)
        assert lo <= oracle * 2**q <= hi


def test_gamma_series_fixed_brackets_oracle(kernel_backend):
    # the alternating sum equals euler + ln x + E1(x)
    mp.mp.prec = 700
    for x in (1, 5, 40, 92):
        q = 400 + 2 * x  # headroom for the exp(x)-sized terms
        lo, hi = kernel_backend.gamma_series_fixed(x, q)
        oracle = mpf_to_fraction(mp.euler + mp.ln(x) + mp.e1(x)) * 2**q
        assert lo <= oracle <= hi


def test_gamma_series_fixed_rejects_nonpositive(kernel_backend):
    with pytest.raises(ValueError):
        kernel_backend.gamma_series_fixed(0, 64)


@pytest.mark.skipif(kernels_compiled is None, reason="extension not built")
def test_backends_bit_identical():
    rng = random.Random(13)
    for n in (1, 7, 100, 4096):
        for q in (32, 100, 257):
            assert kernels_py.harmonic_fixed(n, q) == kernels_compiled.harmonic_fixed(n, q)
    for _ in range(50):
        w = rng.randrange(2, 10**9)
        u = rng.randrange(0, w // 2 + 1)
        q = rng.randrange(32, 400)
        assert kernels_py.atanh_fixed(u, w, q) == kernels_compiled.atanh_fixed(u, w, q)
    for q in (50, 128, 301):
        assert kernels_py.ln2_fixed(q) == kernels_compiled.ln2_fixed(q)
    for x in (1, 3, 41, 137):
        q = 300 + 2 * x
        assert kernels_py.gamma_series_fixed(x, q) == kernels_compiled.gamma_series_fixed(x, q)
