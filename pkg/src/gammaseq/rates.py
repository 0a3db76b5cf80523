"""Convergence-rate analysis and the family parameter optimizer.

The exact route reads the rate off a difference expansion: when
x_n - x_{n+1} ~ l * n^(-k) with k > 1, the sequence itself satisfies
n^(k-1) (x_n - x) -> l/(k-1) (a Cesaro-Stolz style limit), so the
first nonzero coefficient of the difference series gives both the
rate and the limit exactly.  The empirical route fits the same
exponent from certified numeric differences as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NoOptimumError, PrecisionError, RateInconclusiveError
from .sequences import SequenceKind, evaluate_interval
from .series import AsymptoticSeries, ParamPoly, v_family_difference

__all__ = [
    "RateReport",
    "rate_from_series",
    "EmpiricalRate",
    "empirical_rate",
    "OptimizeResult",
    "optimize_parameters",
]

# a residual above this marks a slope fit as unreliable
RESIDUAL_LIMIT = 0.1

SIGNIFICANT_BITS_REQUIRED = 16


@dataclass(frozen=True)
class RateReport:
    """Exact rate data read off a difference expansion.

    k is the difference order (first nonzero index), l its
    coefficient; the sequence converges like n^(-(k-1)) with
    n^(k-1) (x_n - x) -> l/(k-1).
    """

    k: int
    l: Fraction
    sequence_rate: int
    sequence_limit: Fraction


def rate_from_series(series: AsymptoticSeries) -> RateReport:
    """Rate and limit from the first nonzero coefficient of a difference series."""
    if series.ring == "parametric":
        raise DomainError(
            "substitute numeric parameters before extracting a rate"
        )
    k = series.k_min
    if k is None:
        raise RateInconclusiveError(
            f"series vanishes through order {series.order}; "
            "the rate lies beyond the truncation"
        )
    if k <= 1:
        raise DomainError(
            "difference order must exceed 1 for the limit transfer to apply"
        )
    l = series.coeff(k)
    if isinstance(l, ParamPoly):
        l = l.as_fraction()
    return RateReport(k=k, l=l, sequence_rate=k - 1, sequence_limit=l / (k - 1))


@dataclass(frozen=True)
class EmpiricalRate:
    """Least-squares slope of log|x_n - x_{n+1}| against log n, negated."""

    difference_order: float
    sequence_rate: float
    residual: float
    grid: tuple
    precision: int

    @property
    def reliable(self) -> bool:
        return self.residual <= RESIDUAL_LIMIT


def _log2_fraction(x: Fraction) -> float:
    num, den = abs(x.numerator), x.denominator
    shift = num.bit_length() - den.bit_length()
    if shift >= 0:
        scaled = (num << 64) // (den << shift)
    else:
        scaled = (num << (64 - shift)) // den
    return shift + math.log2(scaled) - 64


def empirical_rate(kind: SequenceKind, n_grid, p: int) -> EmpiricalRate:
    """Fit the difference order of a sequence on a grid of indices.

    Differences are evaluated as certified intervals; if any of them
    has fewer than 16 significant bits at precision p the fit would be
    numerical noise, so a PrecisionError asks the caller to raise p.
    """
    grid = list(n_grid)
    if len(grid) < 4 or any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("grid must be strictly increasing with at least 4 points")
    q = p + 32
    xs = []
    ys = []
    for n in grid:
        lo1, hi1 = evaluate_interval(kind, n, q)
        lo2, hi2 = evaluate_interval(kind, n + 1, q)
        d_lo, d_hi = lo1 - hi2, hi1 - lo2
        width = d_hi - d_lo
        mid = (d_lo + d_hi) / 2
        if mid == 0 or abs(mid) < width * (1 << SIGNIFICANT_BITS_REQUIRED):
            raise PrecisionError(
                f"difference at n = {n} has fewer than "
                f"{SIGNIFICANT_BITS_REQUIRED} significant bits; raise the precision"
            )
        xs.append(math.log(n))
        ys.append(_log2_fraction(abs(mid)) * math.log(2))
    n_pts = len(xs)
    x_mean = sum(xs) / n_pts
    y_mean = sum(ys) / n_pts
    sxx = sum((x - x_mean) ** 2 for x in xs)
    sxy = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    residual = math.sqrt(
        sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys)) / n_pts
    )
    order = -slope
    return EmpiricalRate(
        difference_order=order,
        sequence_rate=order - 1,
        residual=residual,
        grid=tuple(grid),
        precision=p,
    )


@dataclass(frozen=True)
class OptimizeResult:
    """Optimal family parameters plus the first surviving coefficient."""

    a: Fraction
    b: Fraction
    surviving_index: int
    surviving_coeff: Fraction
    rate: RateReport


def _solve_linear(poly: ParamPoly, known_a=None):
    """Solve poly = 0 for one variable, given the other (or None)."""
    ca, cb, const = poly.linear_parts()
    if known_a is not None:
        const += ca * known_a
        ca = Fraction(0)
    if ca:
        if cb:
            return None  # underdetermined on its own
        return ("a", -const / ca)
    if cb:
        return ("b", -const / cb)
    return None


def optimize_parameters(order: int = 5) -> OptimizeResult:
    """Zero the two leading difference coefficients of VFamily.

    Works greedily in ascending power order, mirroring the case split
    that classifies the family's rates: the n^-2 coefficient fixes a,
    substituting it makes the n^-3 coefficient linear in b.  Returns
    the exact optimum together with the first surviving coefficient
    and the transferred sequence limit.
    """
    if order < 4:
        raise DomainError("order must be >= 4 to expose the surviving coefficient")
    series = v_family_difference(order)
    c2 = series.coeff(2)
    c3 = series.coeff(3)
    first = _solve_linear(c2)
    if first is None or first[0] != "a":
        raise NoOptimumError("leading coefficient does not determine a")
    a_star = first[1]
    second = _solve_linear(c3, known_a=a_star)
    if second is None or second[0] != "b":
        raise NoOptimumError("second coefficient does not determine b")
    b_star = second[1]
    optimal = series.substitute(a=a_star, b=b_star)
    # both zeroed coefficients must vanish after substitution
    if optimal.coeff(2) != 0 or optimal.coeff(3) != 0:
        raise NoOptimumError("substituted coefficients failed to vanish")
    k = optimal.k_min
    if k is None:
        raise RateInconclusiveError("difference series vanished entirely")
    return OptimizeResult(
        a=a_star,
        b=b_star,
        surviving_index=k,
        surviving_coeff=Fraction(optimal.coeff(k)),
        rate=rate_from_series(optimal),
    )
