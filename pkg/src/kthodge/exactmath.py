"""Exact arithmetic substrate: Gaussian rationals, a sparse Laurent ring in pi,
prime factorization, and the sum-of-two-squares counting function r2.

pi is treated as formally transcendental: a :class:`PiElement` is a finite sum
``sum_j c_j * pi**j`` with Gaussian-rational coefficients, equality is exact
coefficient-wise equality, and no floating-point evaluation ever enters a
membership decision.  All values are immutable and all operations are pure, so
everything here is safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Tuple, Union

#: Exact rational scalar used throughout the package.
Rational = Fraction

RationalLike = Union[int, Fraction]
CoefficientLike = Union[int, Fraction, "GaussianRational"]


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an integer or Fraction, got {type(value).__name__}")


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", _as_fraction(self.re))
        object.__setattr__(self, "im", _as_fraction(self.im))

    @staticmethod
    def of(value: CoefficientLike) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(_as_fraction(value))

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm_sq()
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __add__(self, other: CoefficientLike) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: CoefficientLike) -> "GaussianRational":
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other: CoefficientLike) -> "GaussianRational":
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other: CoefficientLike) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: CoefficientLike) -> "GaussianRational":
        return self * GaussianRational.of(other).inverse()

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}i)"


# ---------------------------------------------------------------------------
# The Laurent ring Q(i)[pi, 1/pi]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PiElement:
    """Finite Laurent combination ``sum_j c_j * pi**j``, c_j Gaussian rational.

    Terms are kept canonical: sorted by exponent with no zero coefficients
    stored, so ``==`` is exact ring equality.  The carrier is hashable and
    immutable.
    """

    terms: Tuple[Tuple[int, GaussianRational], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[int, GaussianRational] = {}
        for exponent, coeff in self.terms:
            coeff = GaussianRational.of(coeff)
            if exponent in merged:
                coeff = merged[exponent] + coeff
            merged[exponent] = coeff
        canonical = tuple(
            (e, c) for e, c in sorted(merged.items()) if not c.is_zero()
        )
        object.__setattr__(self, "terms", canonical)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "PiElement":
        return PiElement()

    @staticmethod
    def rational(value: RationalLike) -> "PiElement":
        return PiElement(((0, GaussianRational.of(value)),))

    @staticmethod
    def gaussian(value: CoefficientLike) -> "PiElement":
        return PiElement(((0, GaussianRational.of(value)),))

    @staticmethod
    def pi_power(exponent: int, coeff: CoefficientLike = 1) -> "PiElement":
        return PiElement(((exponent, GaussianRational.of(coeff)),))

    @staticmethod
    def from_terms(mapping: Mapping[int, CoefficientLike]) -> "PiElement":
        return PiElement(tuple((e, GaussianRational.of(c)) for e, c in mapping.items()))

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponent: int) -> GaussianRational:
        for e, c in self.terms:
            if e == exponent:
                return c
        return GaussianRational()

    def as_dict(self) -> dict[int, GaussianRational]:
        return dict(self.terms)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "PiElement") -> "PiElement":
        return PiElement(self.terms + other.terms)

    def __neg__(self) -> "PiElement":
        return PiElement(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "PiElement") -> "PiElement":
        return self + (-other)

    def __mul__(self, other: Union["PiElement", CoefficientLike]) -> "PiElement":
        if not isinstance(other, PiElement):
            other = PiElement.gaussian(other)
        acc: dict[int, GaussianRational] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                c = c1 * c2
                if e in acc:
                    c = acc[e] + c
                acc[e] = c
        return PiElement(tuple(acc.items()))

    def __rmul__(self, other: CoefficientLike) -> "PiElement":
        return self * other

    def shift(self, exponent: int) -> "PiElement":
        """Multiply by ``pi**exponent``."""
        return PiElement(tuple((e + exponent, c) for e, c in self.terms))

    # -- numeric rendering (display and float-mode matrices only) ----------

    def evaluate(self) -> complex:
        total = 0j
        for e, c in self.terms:
            total += complex(c) * math.pi**e
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"{c}*pi")
            else:
                parts.append(f"{c}*pi^{e}")
        return " + ".join(parts)


def pi_ring(a: PiElement, b: PiElement, op: str) -> PiElement:
    """Exact ring operation on pi-Laurent elements; ``op`` is "add" or "mul"."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown ring operation {op!r}")


def membership_in_pi_negative_integers(
    x: PiElement, scale: RationalLike
) -> Optional[int]:
    """Decide whether ``x`` lies in ``scale * pi * (Z^- U {0})``.

    Returns the integer ``z <= 0`` with ``x == scale * z * pi`` when it exists
    (the zero element yields 0), else ``None``.  The decision is purely
    symbolic: a candidate must consist of exactly one term, at pi-exponent 1,
    with a real coefficient that is ``scale`` times a non-positive integer.
    """
    scale = _as_fraction(scale)
    if scale <= 0:
        raise ValueError("scale must be a positive rational")
    if x.is_zero():
        return 0
    if len(x.terms) != 1:
        return None
    exponent, coeff = x.terms[0]
    if exponent != 1 or coeff.im:
        return None
    z = coeff.re / scale
    if z.denominator != 1 or z > 0:
        return None
    return int(z)


def nonpositive_integer_value(x: PiElement) -> Optional[int]:
    """Return ``z`` when ``x`` is the constant non-positive integer ``z``, else None.

    Same decision as :func:`membership_in_pi_negative_integers` applied to
    ``x * pi`` with scale 1; used wherever a ratio must land in Z^- U {0}.
    """
    return membership_in_pi_negative_integers(x.shift(1), 1)


# ---------------------------------------------------------------------------
# Integer factorization and r2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ``(prime, exponent)`` pairs, primes ascending."""

    factors: Tuple[Tuple[int, int], ...]

    def value(self) -> int:
        n = 1
        for p, e in self.factors:
            n *= p**e
        return n

    def exponent(self, prime: int) -> int:
        for p, e in self.factors:
            if p == prime:
                return e
        return 0

    def __iter__(self) -> Iterable[Tuple[int, int]]:
        return iter(self.factors)


def factorize(n: int) -> Factorization:
    """Factor ``n >= 1`` by deterministic trial division (1 gives the empty product)."""
    if n < 1:
        raise ValueError("factorize requires a positive integer")
    factors = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            factors.append((p, e))
    # remaining factors are coprime to 6; step through 6k +- 1
    p = 5
    while p * p <= n:
        for q in (p, p + 2):
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            if e:
                factors.append((q, e))
        p += 6
    if n > 1:
        factors.append((n, 1))
    return Factorization(tuple(sorted(factors)))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    p = 5
    while p * p <= n:
        if n % p == 0 or n % (p + 2) == 0:
            return False
        p += 6
    return True


def r2(n: int) -> int:
    """Number of ordered integer pairs ``(x, y)`` with ``x**2 + y**2 == n``.

    Multiplicative count: 0 whenever some prime ``p = 3 (mod 4)`` divides n to
    an odd power, otherwise ``4 * prod(e_j + 1)`` over primes ``q_j = 1 (mod 4)``
    with exponents ``e_j``; ``r2(0) == 1`` for the origin alone.
    """
    if n < 0:
        raise ValueError("r2 requires a non-negative integer")
    if n == 0:
        return 1
    count = 4
    for p, e in factorize(n):
        if p % 4 == 3:
            if e % 2:
                return 0
        elif p % 4 == 1:
            count *= e + 1
    return count


def rational_sqrt(r: RationalLike) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None when irrational.

    A reduced fraction has a rational square root iff numerator and
    denominator are both perfect squares.
    """
    r = _as_fraction(r)
    if r < 0:
        raise ValueError("rational_sqrt requires a non-negative rational")
    num = math.isqrt(r.numerator)
    den = math.isqrt(r.denominator)
    if num * num != r.numerator or den * den != r.denominator:
        return None
    return Fraction(num, den)
