"""Exact and certified numerics.

Three layers live here.  ``Fraction`` values are exact and used
wherever a quantity is rational (harmonic numbers, series
coefficients, inequality bounds).  Interval helpers (`ln_interval`,
`sqrt_interval`, `harmonic_interval`) return pairs of dyadic Fractions
that are guaranteed to bracket the true real value; they are the
building blocks of every certified verdict in the package.  `BigReal`
and `Enclosure` are the user-facing rounded types: a `BigReal` is a
dyadic float with an explicit precision in bits, an `Enclosure` is a
pair of them with outward rounding.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache

from ._backend import kernels
from .errors import DomainError

__all__ = [
    "BigReal",
    "Enclosure",
    "harmonic_exact",
    "harmonic_interval",
    "harmonic_float",
    "ln_interval",
    "ln_real",
    "sqrt_interval",
    "gamma_reference",
    "gamma_bootstrap",
]

MIN_PRECISION = 32

# Guard bits added on top of a requested output precision before any
# composite evaluation; one rounding at the end then cannot disturb the
# promised bound.
GUARD_BITS = 32


def _as_fraction(x) -> Fraction:
    if isinstance(x, BigReal):
        return x.to_fraction()
    return Fraction(x)


def _check_precision(p: int) -> None:
    if not isinstance(p, int) or p < MIN_PRECISION:
        raise DomainError(f"precision must be an integer >= {MIN_PRECISION}, got {p!r}")


# ---------------------------------------------------------------------------
# BigReal / Enclosure


class BigReal:
    """Arbitrary-precision dyadic real: mant * 2**exp with |mant| < 2**prec.

    Construction from a Fraction rounds once, in the requested
    direction; all arithmetic goes through exact Fractions and rounds
    the final value, so every operation has relative error <= 2**(1-p).
    Instances are immutable and safe to share between threads.
    """

    __slots__ = ("mant", "exp", "prec")

    def __init__(self, mant: int, exp: int, prec: int):
        _check_precision(prec)
        if mant == 0:
            exp = 0
        elif abs(mant).bit_length() > prec:
            raise ValueError("mantissa wider than the stated precision")
        object.__setattr__(self, "mant", mant)
        object.__setattr__(self, "exp", exp)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("BigReal is immutable")

    @classmethod
    def zero(cls, prec: int = 64) -> "BigReal":
        return cls(0, 0, prec)

    @classmethod
    def from_fraction(cls, value, prec: int, rounding: str = "nearest") -> "BigReal":
        """Round an exact value to `prec` bits.

        rounding is one of "nearest" (ties to even), "floor" (toward
        -inf) or "ceiling" (toward +inf).
        """
        _check_precision(prec)
        value = Fraction(value)
        if value == 0:
            return cls(0, 0, prec)
        num = abs(value.numerator)
        den = value.denominator
        negative = value < 0
        e = num.bit_length() - den.bit_length()
        if e >= 0:
            if num < (den << e):
                e -= 1
        else:
            if (num << -e) < den:
                e -= 1
        # now 2**e <= |value| < 2**(e+1); target exponent:
        exp = e - prec + 1
        if exp >= 0:
            q, r = divmod(num, den << exp)
        else:
            q, r = divmod(num << -exp, den)
        # q has exactly prec bits; decide the rounding increment
        if rounding == "nearest":
            d = den << exp if exp >= 0 else den
            if 2 * r > d or (2 * r == d and q & 1):
                q += 1
        elif rounding == "floor":
            if negative and r:
                q += 1
        elif rounding == "ceiling":
            if not negative and r:
                q += 1
        else:
            raise ValueError(f"unknown rounding mode {rounding!r}")
        if q.bit_length() > prec:  # rounded up to a power of two
            q >>= 1
            exp += 1
        return cls(-q if negative else q, exp, prec)

    def to_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.mant << self.exp)
        return Fraction(self.mant, 1 << -self.exp)

    # arithmetic: exact, then one rounding at the wider precision

    def _binop(self, other, op):
        prec = max(self.prec, other.prec) if isinstance(other, BigReal) else self.prec
        return BigReal.from_fraction(op(self.to_fraction(), _as_fraction(other)), prec)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: b / a)

    def __neg__(self):
        return BigReal(-self.mant, self.exp, self.prec)

    def __abs__(self):
        return BigReal(abs(self.mant), self.exp, self.prec)

    def _cmp_key(self, other):
        return self.to_fraction(), _as_fraction(other)

    def __eq__(self, other):
        if not isinstance(other, (BigReal, int, Fraction)):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a == b

    def __lt__(self, other):
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_key(other)
        return a >= b

    def __hash__(self):
        return hash(self.to_fraction())

    def __bool__(self):
        return self.mant != 0

    def __float__(self):
        m = self.mant
        e = self.exp
        bl = abs(m).bit_length()
        if bl > 53:
            e += bl - 53
            m = m >> (bl - 53) if m > 0 else -((-m) >> (bl - 53))
        return math.ldexp(m, e)

    def decimal_str(self, places: int, rounding: str = "nearest") -> str:
        """Fixed-point decimal string with `places` digits after the point."""
        scaled = self.to_fraction() * 10**places
        num, den = scaled.numerator, scaled.denominator
        q, r = divmod(abs(num), den)
        neg = num < 0
        if rounding == "nearest":
            if 2 * r > den or (2 * r == den and q & 1):
                q += 1
        elif rounding == "floor":
            if neg and r:
                q += 1
        elif rounding == "ceiling":
            if not neg and r:
                q += 1
        else:
            raise ValueError(f"unknown rounding mode {rounding!r}")
        digits = str(q).rjust(places + 1, "0")
        sign = "-" if neg and q else ""
        return f"{sign}{digits[:-places]}.{digits[-places:]}" if places else f"{sign}{digits}"

    def __repr__(self):
        return f"BigReal({self.decimal_str(max(1, self.prec * 3 // 10))}, prec={self.prec})"


class Enclosure:
    """Certified interval [lo, hi]: the target is guaranteed inside.

    Endpoints are BigReal values produced with outward rounding at
    construction time only; everything in between is exact.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: BigReal, hi: BigReal):
        if lo.to_fraction() > hi.to_fraction():
            raise ValueError("enclosure endpoints out of order")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Enclosure is immutable")

    @classmethod
    def from_fractions(cls, lo, hi, prec: int) -> "Enclosure":
        return cls(
            BigReal.from_fraction(lo, prec, "floor"),
            BigReal.from_fraction(hi, prec, "ceiling"),
        )

    def bounds(self) -> tuple[Fraction, Fraction]:
        return self.lo.to_fraction(), self.hi.to_fraction()

    @property
    def width(self) -> Fraction:
        return self.hi.to_fraction() - self.lo.to_fraction()

    def midpoint(self, prec: int | None = None) -> BigReal:
        prec = prec if prec is not None else max(self.lo.prec, self.hi.prec)
        return BigReal.from_fraction(
            (self.lo.to_fraction() + self.hi.to_fraction()) / 2, prec
        )

    def contains(self, value) -> bool:
        v = _as_fraction(value)
        return self.lo.to_fraction() <= v <= self.hi.to_fraction()

    def __contains__(self, value) -> bool:
        return self.contains(value)

    def __repr__(self):
        places = max(1, self.lo.prec * 3 // 10)
        return (f"Enclosure[{self.lo.decimal_str(places, 'floor')}, "
                f"{self.hi.decimal_str(places, 'ceiling')}]")


# ---------------------------------------------------------------------------
# harmonic numbers


def _check_n(n) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")


def _hsum(a: int, b: int) -> tuple[int, int]:
    # unreduced numerator/denominator of 1/a + ... + 1/b, combined pairwise
    # so only one gcd is paid at the very end
    if b - a < 8:
        num, den = 0, 1
        for k in range(a, b + 1):
            num = num * k + den
            den *= k
        return num, den
    mid = (a + b) // 2
    n1, d1 = _hsum(a, mid)
    n2, d2 = _hsum(mid + 1, b)
    return n1 * d2 + n2 * d1, d1 * d2


# Ascending sweeps dominate usage, so harmonic_exact keeps the largest
# value computed so far plus sparse anchors to restart from; the cache
# is guarded by a lock and never observable in results.
_H_LOCK = threading.Lock()
_H_ANCHOR_STEP = 256
_H_ANCHORS: dict[int, Fraction] = {0: Fraction(0)}
_H_LAST: list = [0, Fraction(0)]


def harmonic_exact(n: int) -> Fraction:
    """Exact harmonic number 1 + 1/2 + ... + 1/n."""
    _check_n(n)
    with _H_LOCK:
        last_n, last_v = _H_LAST
        if n == last_n:
            return last_v
        if n > last_n and n - last_n <= 4 * _H_ANCHOR_STEP:
            start, value = last_n, last_v
        else:
            start = max(k for k in _H_ANCHORS if k <= n)
            value = _H_ANCHORS[start]
        if n - start >= 64:
            num, den = _hsum(start + 1, n)
            value = value + Fraction(num, den)
        else:
            for k in range(start + 1, n + 1):
                value += Fraction(1, k)
        _H_LAST[0] = n
        _H_LAST[1] = value
        anchor = n - n % _H_ANCHOR_STEP
        if anchor > 0 and anchor not in _H_ANCHORS:
            # backfill the nearest grid anchor so later restarts are cheap
            back = value
            for k in range(anchor + 1, n + 1):
                back -= Fraction(1, k)
            _H_ANCHORS[anchor] = back
        return value


def harmonic_interval(n: int, q: int) -> tuple[Fraction, Fraction]:
    """Dyadic enclosure of H_n at scale 2**-q (width <= n ulps)."""
    _check_n(n)
    lo, hi = kernels.harmonic_fixed(n, q)
    scale = 1 << q
    return Fraction(lo, scale), Fraction(hi, scale)


def harmonic_float(n: int, p: int) -> BigReal:
    """H_n rounded to p bits; |result - H_n| <= H_n * 2**(1-p).

    Runs at p + GUARD_BITS + log2(n) working bits so the n summation
    ulps cannot reach the rounded result.
    """
    _check_n(n)
    _check_precision(p)
    q = p + GUARD_BITS + n.bit_length()
    lo, hi = kernels.harmonic_fixed(n, q)
    return BigReal.from_fraction(Fraction(lo + hi, 2 << q), p)


# ---------------------------------------------------------------------------
# logarithms


_LN2_LOCK = threading.Lock()
_LN2_CACHE: list = [0, 0, 0]  # scale, lo, hi


def _ln2_bounds(q: int) -> tuple[int, int]:
    with _LN2_LOCK:
        cq, clo, chi = _LN2_CACHE
        if cq < q:
            cq = q + 64
            clo, chi = kernels.ln2_fixed(cq)
            _LN2_CACHE[:] = [cq, clo, chi]
    d = cq - q
    return clo >> d, -((-chi) >> d)


def ln_interval(x, q: int) -> tuple[Fraction, Fraction]:
    """Dyadic enclosure of ln(x) for exact rational x > 0.

    The working scale is raised automatically when x is close to 1, so
    the result is accurate relative to |ln x|, not just absolutely.
    """
    x = _as_fraction(x)
    if x <= 0:
        raise DomainError(f"ln requires a positive argument, got {x}")
    if x == 1:
        return Fraction(0), Fraction(0)
    if x < 1:
        lo, hi = ln_interval(1 / x, q)
        return -hi, -lo
    num, den = x.numerator, x.denominator
    e = num.bit_length() - den.bit_length()
    if (den << e) > num:
        e -= 1
    # m = x / 2**e in [1, 2); ln x = e ln 2 + 2 atanh((m-1)/(m+1))
    shifted = den << e
    u = num - shifted
    w = num + shifted
    q_eff = q
    if e == 0 and u:
        # keep relative accuracy when ln x ~ 2u/w is tiny
        q_eff += max(0, w.bit_length() - u.bit_length())
    at_lo, at_hi = kernels.atanh_fixed(u, w, q_eff)
    lo = 2 * at_lo
    hi = 2 * at_hi
    if e:
        l2lo, l2hi = _ln2_bounds(q_eff)
        lo += e * l2lo
        hi += e * l2hi
    scale = 1 << q_eff
    return Fraction(lo, scale), Fraction(hi, scale)


def ln_real(x, p: int) -> BigReal:
    """ln(x) rounded to p bits with relative error <= 2**(1-p)."""
    _check_precision(p)
    fx = _as_fraction(x)
    if fx <= 0:
        raise DomainError(f"ln requires a positive argument, got {fx}")
    lo, hi = ln_interval(fx, p + GUARD_BITS)
    return BigReal.from_fraction((lo + hi) / 2, p)


def sqrt_interval(x, q: int) -> tuple[Fraction, Fraction]:
    """Dyadic enclosure of sqrt(x) for exact rational x >= 0, one ulp wide."""
    x = _as_fraction(x)
    if x < 0:
        raise DomainError(f"sqrt requires a nonnegative argument, got {x}")
    if x == 0:
        return Fraction(0), Fraction(0)
    s = math.isqrt((x.numerator << (2 * q)) // x.denominator)
    scale = 1 << q
    return Fraction(s, scale), Fraction(s + 1, scale)


# ---------------------------------------------------------------------------
# the reference enclosure for the Euler-Mascheroni constant

# s_n = H_{n-2} + 13/(12(n-1)) + 5/(12n) - ln n satisfies, for n >= 9,
#   1/(12n^3) + 11/(120n^4) < s_n - gamma < 1/(12n^3) + 13/(120n^4),
# so s_n minus those brackets encloses gamma with width 1/(60 n^4).
# That route costs O(n) work, which is fine up to the cap below (about
# 75 output bits).  Beyond it, gamma_reference switches to the
# exponential-integral identity
#   gamma = sum_{k>=1} (-1)^(k+1) x^k/(k k!) - ln x - E1(x),
# whose remainder satisfies 0 < E1(x) < exp(-x)/x, giving any precision
# in O(p) cheap terms.
_BOOTSTRAP_MAX_N = 1 << 17

# 14426/10000 < log2(e), so exp(-x) <= 2**-(x*14426//10000)
_LOG2_E_FLOOR = (14426, 10000)


def _s_value_interval(n: int, q: int) -> tuple[Fraction, Fraction]:
    h_lo, h_hi = harmonic_interval(n - 2, q)
    corr = Fraction(13, 12 * (n - 1)) + Fraction(5, 12 * n)
    ln_lo, ln_hi = ln_interval(n, q)
    return h_lo + corr - ln_hi, h_hi + corr - ln_lo


def _bootstrap_bounds(n: int, q: int) -> tuple[Fraction, Fraction]:
    s_lo, s_hi = _s_value_interval(n, q)
    cube = Fraction(1, 12 * n**3)
    lo = s_lo - cube - Fraction(13, 120 * n**4)
    hi = s_hi - cube - Fraction(11, 120 * n**4)
    return lo, hi


def gamma_bootstrap(n: int, p: int) -> Enclosure:
    """Enclosure of the Euler-Mascheroni constant from s_n directly.

    Width is 1/(60 n^4) plus evaluation slack; requires n >= 9 (the
    upper bracket on s_n - gamma only holds from there).
    """
    if not isinstance(n, int) or n < 9:
        raise DomainError(f"bootstrap enclosure requires n >= 9, got {n!r}")
    _check_precision(p)
    q = p + GUARD_BITS + n.bit_length()
    lo, hi = _bootstrap_bounds(n, q)
    return Enclosure.from_fractions(lo, hi, q)


def _bootstrap_n_for(p: int) -> int:
    # smallest power of two with 1/(60 N^4) <= 2**(1-p)
    j = 0
    while 60 << (4 * j) < (1 << (p - 1)):
        j += 1
    return 1 << j


@lru_cache(maxsize=64)
def gamma_reference(p: int) -> Enclosure:
    """Certified enclosure of the Euler-Mascheroni constant, width <= 2**(2-p).

    Deterministic for a given p.  Small p uses the s_N bracket with N
    the smallest power of two satisfying 1/(60 N^4) <= 2**(1-p); large
    p uses the exponential-integral route, since the bracket's O(N)
    summation grows like 2**(p/4).
    """
    _check_precision(p)
    n = _bootstrap_n_for(p)
    if n <= _BOOTSTRAP_MAX_N:
        q = p + GUARD_BITS + n.bit_length()
        lo, hi = _bootstrap_bounds(max(n, 16), q)
        return Enclosure.from_fractions(lo, hi, q)
    c_num, c_den = _LOG2_E_FLOOR
    x = (p + 3) * c_den // c_num + 2
    shift = x * c_num // c_den  # exp(-x) <= 2**-shift, shift >= p+3
    q = p + GUARD_BITS + 16
    # the series terms peak near exp(x), amplifying rounding ulps by the
    # same factor; run the kernel with that much extra headroom
    q_series = q + x * 14428 // 10000 + 32
    s_lo, s_hi = kernels.gamma_series_fixed(x, q_series)
    ln_lo, ln_hi = ln_interval(x, q)
    scale = 1 << q_series
    tail = Fraction(1, x << shift)  # upper bound on E1(x)
    lo = Fraction(s_lo, scale) - ln_hi - tail
    hi = Fraction(s_hi, scale) - ln_lo
    return Enclosure.from_fractions(lo, hi, q)
