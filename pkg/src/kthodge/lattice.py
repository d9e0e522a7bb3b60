"""Integer points on the circle ``(l - d)**2 + m**2 == d**2`` and its
anisotropically scaled variant ``(m/sqrt(rho))**2 + (l - d)**2 == d**2``.

Counting is done two independent ways: brute-force enumeration in exact
integer arithmetic (authoritative for every rational d), and the closed form
from the factorization of the numerator of d (valid for denominators up to 5).
``find_d_for_count`` inverts the closed form, realizing every target count not
divisible by 8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Tuple

from .exactmath import Rational, RationalLike, _as_fraction, factorize


class ZeroParameter(ValueError):
    """The circle construction needs d != 0."""


class NonPositiveRho(ValueError):
    """The metric scale rho must be a positive rational."""


class UnsupportedDenominator(ValueError):
    """The closed-form count is only established for denominators q <= 5."""


class UnreachableTarget(ValueError):
    """Counts divisible by 8 are never attained."""


@dataclass(frozen=True)
class LatticeCount:
    """A count with its witnesses, sorted lexicographically; (0, 0) is always one."""

    count: int
    points: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.count != len(self.points):
            raise ValueError("count must equal the number of witnesses")


def _scan_points(d: Fraction, rho: Fraction) -> List[Tuple[int, int]]:
    # Clear denominators: with d = p/q and rho = u/v, a witness needs
    # m**2 == rho*l*(2d - l) == u*l*(2p - l*q) / (v*q), so the integer
    # numerator must be divisible by v*q with a perfect-square quotient.
    p, q = d.numerator, d.denominator
    u, v = rho.numerator, rho.denominator
    lo = min(0, math.ceil(2 * d))
    hi = max(0, math.floor(2 * d))
    den = v * q
    points: List[Tuple[int, int]] = []
    for l in range(lo, hi + 1):
        num = u * l * (2 * p - l * q)
        if num % den:
            continue
        mm = num // den
        m = math.isqrt(mm)
        if m * m != mm:
            continue
        if m == 0:
            points.append((l, 0))
        else:
            points.append((l, -m))
            points.append((l, m))
    points.sort()
    return points


def circle_count_brute(d: RationalLike) -> LatticeCount:
    """Enumerate all integer ``(l, m)`` with ``(l - d)**2 + m**2 == d**2``.

    Works entirely in cleared-denominator integer arithmetic; l runs over the
    closed interval between 0 and 2d (either sign of d).
    """
    d = _as_fraction(d)
    if not d:
        raise ZeroParameter("circle parameter d must be nonzero")
    points = _scan_points(d, Fraction(1))
    return LatticeCount(len(points), tuple(points))


def scaled_circle_count(d: RationalLike, rho: RationalLike) -> LatticeCount:
    """Count integer ``(l, m)`` with ``m**2 == rho * l * (2d - l)``.

    Equivalently: points of the lattice Z x (1/sqrt(rho))Z on the circle of
    radius d centred at (d, 0), written back in integer coordinates.
    """
    d = _as_fraction(d)
    rho = _as_fraction(rho)
    if not d:
        raise ZeroParameter("circle parameter d must be nonzero")
    if rho <= 0:
        raise NonPositiveRho("metric scale rho must be positive")
    points = _scan_points(d, rho)
    return LatticeCount(len(points), tuple(points))


def circle_count_closed(d: RationalLike) -> int:
    """Closed-form count for ``d = p/q`` in lowest terms with ``q <= 5``.

    Let ``beta_j`` be the exponents of the primes ``= 1 (mod 4)`` in ``p**2``
    (twice their exponents in ``p``).  The count is ``4*prod(beta_j + 1)`` for
    q = 1, ``2*prod(beta_j + 1)`` for q = 2, and ``prod(beta_j + 1)`` for
    q in {3, 4, 5}.
    """
    d = _as_fraction(d)
    if not d:
        raise ZeroParameter("circle parameter d must be nonzero")
    q = d.denominator
    if q > 5:
        raise UnsupportedDenominator(
            f"closed-form count requires denominator <= 5, got {q}"
        )
    product = 1
    for prime, exponent in factorize(abs(d.numerator)):
        if prime % 4 == 1:
            product *= 2 * exponent + 1
    if q == 1:
        return 4 * product
    if q == 2:
        return 2 * product
    return product


def _primes_1_mod_4() -> Iterator[int]:
    from .exactmath import is_prime

    candidate = 5
    while True:
        if candidate % 4 == 1 and is_prime(candidate):
            yield candidate
        candidate += 2


def find_d_for_count(n: int) -> Rational:
    """Construct ``d = p/q`` with ``q <= 5`` whose closed-form count equals n.

    Requires ``n >= 1`` and ``8 does not divide n``.  Writes n as 4u, 2u or u
    with u odd (choosing q = 1, 2 or 3 respectively), splits u into its prime
    factors, and assigns larger factors to smaller primes ``= 1 (mod 4)``:
    a factor f contributes exponent ``(f - 1) / 2`` on its prime.  The result
    is deterministic and keeps p as small as the factor split allows.
    """
    if n < 1:
        raise ValueError("target count must be a positive integer")
    if n % 8 == 0:
        raise UnreachableTarget("target divisible by 8 unreachable")
    if n % 4 == 0:
        q, u = 1, n // 4
    elif n % 2 == 0:
        q, u = 2, n // 2
    else:
        q, u = 3, n
    odd_factors: List[int] = []
    for prime, exponent in factorize(u):
        odd_factors.extend([prime] * exponent)
    odd_factors.sort(reverse=True)
    p = 1
    for factor, prime in zip(odd_factors, _primes_1_mod_4()):
        p *= prime ** ((factor - 1) // 2)
    return Fraction(p, q)
