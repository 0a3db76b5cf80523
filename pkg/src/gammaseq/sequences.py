"""Evaluators for the named sequences converging to the Euler constant.

Every sequence here has the shape (exact rational part) - ln(argument),
and `split_eval` returns exactly those two pieces so downstream
inequality checks need a single certified logarithm per value.  The two
variants with irrational parameters (UPlus / UMinus, built on sqrt(6))
cannot be split exactly and go through interval evaluation instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import numerics
from .errors import DomainError
from .numerics import BigReal, harmonic_exact, ln_interval, sqrt_interval

__all__ = [
    "SequenceKind",
    "GammaN",
    "DeTempleR",
    "VernescuV",
    "MuFamily",
    "VFamily",
    "SOptimal",
    "UPlus",
    "UMinus",
    "SplitValue",
    "split_eval",
    "evaluate_interval",
    "evaluate",
    "error_fraction",
    "verify_error_identity",
]


class SequenceKind:
    """Base tag for sequence identifiers; concrete kinds are dataclasses."""

    n_min = 1

    def describe(self) -> str:
        return type(self).__name__


@dataclass(frozen=True)
class GammaN(SequenceKind):
    """H_n - ln n."""


@dataclass(frozen=True)
class DeTempleR(SequenceKind):
    """H_n - ln(n + 1/2) (DeTemple 1993)."""


@dataclass(frozen=True)
class VernescuV(SequenceKind):
    """H_{n-1} + 1/(2n) - ln n (Vernescu 1999)."""


@dataclass(frozen=True)
class MuFamily(SequenceKind):
    """H_{n-1} + 1/(a n) - ln(n + b) (Mortici 2010), rational a != 0."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0:
            raise DomainError("MuFamily requires a != 0")


@dataclass(frozen=True)
class VFamily(SequenceKind):
    """H_{n-2} + (a n + b)/(n(n-1)) - ln n, defined from n = 3.

    Values at n = 0, 1, 2 are left as conventions (the correction term
    degenerates there), so requesting them is a domain error.
    """

    a: Fraction
    b: Fraction
    n_min = 3

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))


@dataclass(frozen=True)
class SOptimal(SequenceKind):
    """H_{n-2} + 13/(12(n-1)) + 5/(12n) - ln n, the fastest member of VFamily."""

    n_min = 3


@dataclass(frozen=True)
class UPlus(SequenceKind):
    """MuFamily at a = 6 + 2 sqrt(6), b = -1/sqrt(6); named by the sign in a."""


@dataclass(frozen=True)
class UMinus(SequenceKind):
    """MuFamily at a = 6 - 2 sqrt(6), b = 1/sqrt(6)."""


@dataclass(frozen=True)
class SplitValue:
    """Exact decomposition value = rational_part - ln(log_argument)."""

    rational_part: Fraction
    log_argument: Fraction
    n: int

    def value_interval(self, q: int) -> tuple[Fraction, Fraction]:
        lo, hi = ln_interval(self.log_argument, q)
        return self.rational_part - hi, self.rational_part - lo


def _check_domain(kind: SequenceKind, n: int) -> None:
    if not isinstance(n, int):
        raise DomainError(f"n must be an integer, got {n!r}")
    if n < kind.n_min:
        raise DomainError(
            f"{kind.describe()} is defined for n >= {kind.n_min} "
            f"(smaller indices are left as conventions), got n = {n}"
        )


def split_eval(kind: SequenceKind, n: int) -> SplitValue:
    """Exact rational part and log argument of the sequence at n."""
    _check_domain(kind, n)
    if isinstance(kind, GammaN):
        return SplitValue(harmonic_exact(n), Fraction(n), n)
    if isinstance(kind, DeTempleR):
        return SplitValue(harmonic_exact(n), n + Fraction(1, 2), n)
    if isinstance(kind, VernescuV):
        prefix = harmonic_exact(n - 1) if n > 1 else Fraction(0)
        return SplitValue(prefix + Fraction(1, 2 * n), Fraction(n), n)
    if isinstance(kind, MuFamily):
        arg = n + kind.b
        if arg <= 0:
            raise DomainError(f"log argument n + b = {arg} must be positive")
        prefix = harmonic_exact(n - 1) if n > 1 else Fraction(0)
        return SplitValue(prefix + 1 / (kind.a * n), arg, n)
    if isinstance(kind, VFamily):
        prefix = harmonic_exact(n - 2) if n > 2 else Fraction(0)
        correction = (kind.a * n + kind.b) / Fraction(n * (n - 1))
        return SplitValue(prefix + correction, Fraction(n), n)
    if isinstance(kind, SOptimal):
        prefix = harmonic_exact(n - 2) if n > 2 else Fraction(0)
        correction = Fraction(13, 12 * (n - 1)) + Fraction(5, 12 * n)
        return SplitValue(prefix + correction, Fraction(n), n)
    if isinstance(kind, (UPlus, UMinus)):
        raise DomainError(
            f"{kind.describe()} has irrational parameters and no exact split; "
            "use evaluate() or evaluate_interval()"
        )
    raise DomainError(f"unknown sequence kind {kind!r}")


def _u_variant_interval(kind, n: int, q: int) -> tuple[Fraction, Fraction]:
    s_lo, s_hi = sqrt_interval(6, q + 8)
    if isinstance(kind, UPlus):
        a_lo, a_hi = 6 + 2 * s_lo, 6 + 2 * s_hi
        b_lo, b_hi = -1 / s_lo, -1 / s_hi
    else:
        a_lo, a_hi = 6 - 2 * s_hi, 6 - 2 * s_lo
        b_lo, b_hi = 1 / s_hi, 1 / s_lo
    inv_lo = Fraction(1) / (a_hi * n)
    inv_hi = Fraction(1) / (a_lo * n)
    arg_lo, arg_hi = n + b_lo, n + b_hi
    ln_lo = ln_interval(arg_lo, q)[0]
    ln_hi = ln_interval(arg_hi, q)[1]
    prefix = harmonic_exact(n - 1) if n > 1 else Fraction(0)
    return prefix + inv_lo - ln_hi, prefix + inv_hi - ln_lo


def evaluate_interval(kind: SequenceKind, n: int, q: int) -> tuple[Fraction, Fraction]:
    """Certified rational bounds on the sequence value at n, scale ~2**-q."""
    _check_domain(kind, n)
    if isinstance(kind, (UPlus, UMinus)):
        return _u_variant_interval(kind, n, q)
    return split_eval(kind, n).value_interval(q)


def evaluate(kind: SequenceKind, n: int, p: int) -> BigReal:
    """Sequence value rounded to p bits, relative error <= 2**(1-p)."""
    numerics._check_precision(p)
    q = p + numerics.GUARD_BITS
    while True:
        lo, hi = evaluate_interval(kind, n, q)
        mid = (lo + hi) / 2
        if mid == 0 or (hi - lo) <= abs(mid) * Fraction(1, 1 << p):
            return BigReal.from_fraction(mid, p)
        q *= 2  # value is unusually close to zero; retry tighter


def error_fraction(a, b, n: int) -> Fraction:
    """The rational deviation core of VFamily:

        ((a - 3/2) n^2 + (b + 5/12) n + 1/12) / (n^2 (n - 1)).

    Subtracting it (plus the 1/(120 n^4) digamma tail) from the value
    leaves exactly gamma; see verify_error_identity.
    """
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"error_fraction requires integer n >= 2, got {n!r}")
    a = Fraction(a)
    b = Fraction(b)
    num = (a - Fraction(3, 2)) * n * n + (b + Fraction(5, 12)) * n + Fraction(1, 12)
    return num / Fraction(n * n * (n - 1))


def verify_error_identity(a, b, n: int) -> bool:
    """Exact check of the partial-fraction identity behind error_fraction:

        (an+b)/(n(n-1)) - 1/(n-1) - 1/n + 1/(2n) - 1/(12 n^2)
            == error_fraction(a, b, n).

    The identity is polynomial in a and b, so it holds for every
    rational choice; this evaluates both sides exactly and compares.
    """
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"identity check requires integer n >= 2, got {n!r}")
    a = Fraction(a)
    b = Fraction(b)
    lhs = (
        (a * n + b) / Fraction(n * (n - 1))
        - Fraction(1, n - 1)
        - Fraction(1, n)
        + Fraction(1, 2 * n)
        - Fraction(1, 12 * n * n)
    )
    return lhs == error_fraction(a, b, n)
