"""Exact polynomial algebra and positivity certificates.

The certification route for the two-sided bracket on the optimal
sequence works entirely in rational arithmetic: the step functions
whose signs control the bracket are differentiated symbolically (their
only non-rational piece, ln(1 + 1/x), has the rational derivative
-1/(x(x+1))), the resulting rational function is compared
coefficient-wise against a closed-form numerator, and positivity of
that numerator on (c, inf) is certified by expanding it in powers of
(x - c) and checking all coefficients are nonnegative.  A failed check
is only a refusal, never a disproof: the criterion is sufficient, not
necessary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CertificateError, DomainError
from .numerics import ln_interval

__all__ = [
    "Polynomial",
    "RationalFunction",
    "taylor_shift",
    "positivity_certificate",
    "PositivityCertificate",
    "PositivityRefusal",
    "StepFunction",
    "step_function",
    "derivative_of_f",
    "derivative_numerator",
    "derivative_denominator",
    "tail_sign_verdict",
    "TailSignVerdict",
]

NEG_INF = float("-inf")


class Polynomial:
    """Dense univariate polynomial over Fraction, ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @property
    def degree(self):
        """Degree, or -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = len(other.coeffs)
        lead = other.leading
        while len(rem) >= d:
            c = rem[-1] / lead
            pos = len(rem) - d
            q[pos] = c
            for i, b in enumerate(other.coeffs):
                rem[pos + i] -= c * b
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial(q), Polynomial(rem)

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        lead = self.leading
        return Polynomial(c / lead for c in self.coeffs)

    def __eq__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{k}" if c != 1 else f"x^{k}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self})"


def _as_poly(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial((value,))
    return None


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    while not q.is_zero:
        p, q = q, divmod(p, q)[1]
    return p.monic() if not p.is_zero else p


def taylor_shift(p: Polynomial, c) -> Polynomial:
    """Coefficients d_k with p(x) = sum d_k (x - c)^k (synthetic division)."""
    c = Fraction(c)
    out = list(p.coeffs)
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] += c * out[j + 1]
    return Polynomial(out)


class RationalFunction:
    """Quotient of polynomials in canonical form (coprime, monic denominator)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        num = _as_poly(num)
        den = _as_poly(den)
        if num is None or den is None:
            raise TypeError("numerator and denominator must be polynomials")
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if not g.is_zero and g.degree > 0:
            num = divmod(num, g)[0]
            den = divmod(den, g)[0]
        lead = den.leading
        num = Polynomial(c / lead for c in num.coeffs)
        den = Polynomial(c / lead for c in den.coeffs)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.den, self.den * other.num)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def evaluate(self, x) -> Fraction:
        d = self.den.evaluate(x)
        if d == 0:
            raise DomainError(f"pole at x = {x}")
        return self.num.evaluate(x) / d

    def __eq__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction(({self.num}) / ({self.den}))"


def _as_ratfunc(value):
    if isinstance(value, RationalFunction):
        return value
    p = _as_poly(value)
    return RationalFunction(p, Polynomial((1,))) if p is not None else None


# ---------------------------------------------------------------------------
# positivity certificates


@dataclass(frozen=True)
class PositivityCertificate:
    """Proof object: all (x - center)-coefficients nonnegative, one positive,
    hence the polynomial is strictly positive on (center, inf)."""

    polynomial: Polynomial
    center: Fraction
    shifted_coeffs: tuple

    def holds_for(self, x) -> bool:
        return Fraction(x) > self.center


@dataclass(frozen=True)
class PositivityRefusal:
    """Inconclusive outcome (NOT a disproof): some shifted coefficient is
    negative, or the polynomial is zero."""

    polynomial: Polynomial
    center: Fraction
    shifted_coeffs: tuple
    first_negative_index: int | None


def positivity_certificate(p: Polynomial, c):
    """Certify p(x) > 0 for all x > c by nonnegative shifted coefficients."""
    c = Fraction(c)
    shifted = taylor_shift(p, c).coeffs
    for k, d in enumerate(shifted):
        if d < 0:
            return PositivityRefusal(p, c, shifted, k)
    if not any(shifted):
        return PositivityRefusal(p, c, shifted, None)
    return PositivityCertificate(p, c, shifted)


# ---------------------------------------------------------------------------
# the two step functions controlling the bracket on s_n - gamma

# s_{n+1} - s_n = 2/(3n) - 1/(12(n-1)) + 5/(12(n+1)) - ln(1 + 1/n), and the
# step of each bracketed gap adds the telescoping difference of the bracket
# itself.  Each step function is a sum of shifted reciprocals plus
# -ln(1 + 1/x), so its derivative is exactly rational.


@dataclass(frozen=True)
class ReciprocalTerm:
    """coeff / (x - center)**power."""

    coeff: Fraction
    center: Fraction
    power: int


@dataclass(frozen=True)
class StepFunction:
    """Sum of shifted reciprocal terms plus log_coeff * ln(1 + 1/x)."""

    name: str
    terms: tuple
    log_coeff: Fraction

    def derivative(self) -> RationalFunction:
        total = RationalFunction(Polynomial(), Polynomial((1,)))
        x = Polynomial.x()
        for t in self.terms:
            num = Polynomial.constant(-t.power * t.coeff)
            den = (x - t.center) ** (t.power + 1)
            total = total + RationalFunction(num, den)
        # d/dx ln(1 + 1/x) = -1/(x(x+1))
        total = total + RationalFunction(
            Polynomial.constant(-self.log_coeff), x * (x + 1)
        )
        return total

    def vanishes_at_infinity(self) -> bool:
        """Structural check: every additive piece tends to zero.

        Reciprocal terms vanish because their power is >= 1; the log
        term vanishes because ln(1 + 1/x) -> ln 1 = 0.
        """
        return all(t.power >= 1 for t in self.terms)

    def value_interval(self, x, q: int) -> tuple[Fraction, Fraction]:
        x = Fraction(x)
        rational = Fraction(0)
        for t in self.terms:
            rational += t.coeff / (x - t.center) ** t.power
        ln_lo, ln_hi = ln_interval(1 + 1 / x, q)
        if self.log_coeff >= 0:
            return rational + self.log_coeff * ln_lo, rational + self.log_coeff * ln_hi
        return rational + self.log_coeff * ln_hi, rational + self.log_coeff * ln_lo


def _bracket_terms(quartic_coeff: Fraction) -> tuple:
    f = Fraction
    return (
        ReciprocalTerm(f(2, 3), f(0), 1),
        ReciprocalTerm(f(-1, 12), f(1), 1),
        ReciprocalTerm(f(5, 12), f(-1), 1),
        ReciprocalTerm(f(-1, 12), f(-1), 3),
        ReciprocalTerm(-quartic_coeff, f(-1), 4),
        ReciprocalTerm(f(1, 12), f(0), 3),
        ReciprocalTerm(quartic_coeff, f(0), 4),
    )


def step_function(variant: str) -> StepFunction:
    """The step function for a bracket side: "f" (lower, 11/120) or "g"
    (upper, 13/120)."""
    if variant == "f":
        return StepFunction("f", _bracket_terms(Fraction(11, 120)), Fraction(-1))
    if variant == "g":
        return StepFunction("g", _bracket_terms(Fraction(13, 120)), Fraction(-1))
    raise DomainError(f"variant must be 'f' or 'g', got {variant!r}")


def derivative_of_f(variant: str) -> RationalFunction:
    """Exact derivative of the requested step function."""
    return step_function(variant).derivative()


# Closed forms the derivatives are checked against: f' equals
# P(x) / (60 x^5 (x-1)^2 (x+1)^5) with P expanded around x = 1, and
# g' equals -Q(x) over the same denominator with Q expanded around x = 9.
F_NUMERATOR_SHIFT_CENTER = Fraction(1)
F_NUMERATOR_SHIFTED_COEFFS = (160, 1200, 2348, 2055, 875, 150)
G_NUMERATOR_SHIFT_CENTER = Fraction(9)
G_NUMERATOR_SHIFTED_COEFFS = (772064, 1725456, 802376, 164805, 17405, 930, 20)


def derivative_denominator() -> Polynomial:
    """60 x^5 (x - 1)^2 (x + 1)^5, the common denominator of both derivatives."""
    x = Polynomial.x()
    return 60 * x**5 * (x - 1) ** 2 * (x + 1) ** 5


def derivative_numerator(variant: str) -> Polynomial:
    """The closed-form numerator (P for "f", Q for "g") in standard powers."""
    if variant == "f":
        center, coeffs = F_NUMERATOR_SHIFT_CENTER, F_NUMERATOR_SHIFTED_COEFFS
    elif variant == "g":
        center, coeffs = G_NUMERATOR_SHIFT_CENTER, G_NUMERATOR_SHIFTED_COEFFS
    else:
        raise DomainError(f"variant must be 'f' or 'g', got {variant!r}")
    return taylor_shift(Polynomial(coeffs), -center)


def check_derivative_identity(variant: str) -> bool:
    """Coefficient-wise identity between the symbolic derivative and the
    closed form (+P/D for "f", -Q/D for "g")."""
    numer = derivative_numerator(variant)
    if variant == "g":
        numer = -numer
    return derivative_of_f(variant) == RationalFunction(numer, derivative_denominator())


@dataclass(frozen=True)
class TailSignVerdict:
    """Composed conclusion about one side of the bracket on s_n - gamma."""

    variant: str
    numerator_certificate: PositivityCertificate
    denominator_certificate: PositivityCertificate
    identity_checked: bool
    derivative_sign: int  # on (threshold, inf)
    threshold: int
    vanishes_at_infinity: bool
    function_sign: int  # sign of the step function on (threshold, inf)
    conclusion: str


def tail_sign_verdict(variant: str) -> TailSignVerdict:
    """Certify the sign chain for one bracket side.

    For "f": numerator positive on (1, inf) and the denominator too, so
    the derivative is positive, the step function increases to its
    limit 0 and is therefore negative; the gap above the lower bracket
    strictly decreases from n = 2 on.  For "g" the signs flip (the
    derivative is -Q/D) and the gap below the upper bracket strictly
    increases from n = 9 on.
    """
    fn = step_function(variant)
    if not check_derivative_identity(variant):
        raise CertificateError(f"derivative of {variant} does not match its closed form")
    threshold = 1 if variant == "f" else 9
    numer_cert = positivity_certificate(derivative_numerator(variant), threshold)
    den_cert = positivity_certificate(derivative_denominator(), threshold)
    if not isinstance(numer_cert, PositivityCertificate) or not isinstance(
        den_cert, PositivityCertificate
    ):
        raise CertificateError(f"positivity certificate unavailable for {variant!r}")
    if not fn.vanishes_at_infinity():
        raise CertificateError(f"{variant} does not vanish at infinity structurally")
    if variant == "f":
        conclusion = (
            "gap above the lower bracket is strictly decreasing for n >= 2 "
            "with limit 0, hence positive: the lower bound holds for n >= 3"
        )
        derivative_sign, function_sign = 1, -1
    else:
        conclusion = (
            "gap below the upper bracket is strictly increasing for n >= 9 "
            "with limit 0, hence negative: the upper bound holds for n >= 9"
        )
        derivative_sign, function_sign = -1, 1
    return TailSignVerdict(
        variant=variant,
        numerator_certificate=numer_cert,
        denominator_certificate=den_cert,
        identity_checked=True,
        derivative_sign=derivative_sign,
        threshold=threshold,
        vanishes_at_infinity=True,
        function_sign=function_sign,
        conclusion=conclusion,
    )
