"""Sector decomposition of function space on the Kodaira-Thurston manifold
and the per-sector solvability conditions for harmonic (0,1)-forms.

The manifold is a 3-torus bundle over a circle; its function space splits into
finite-orbit sectors (ordinary Fourier modes, indexed by integers k, l, m) and
infinite-orbit sectors (indexed by k, m, n with n != 0 and 0 <= m < |n|) which
transform to ODE problems on the real line.  The structure parameters are an
exact rational ``a`` and the nonzero rational ``d``; the remaining structure
constant is ``b = 8*pi*d`` and is only ever used symbolically, so every
conclusion below is reached in exact arithmetic.

Finite sectors contribute one dimension exactly when ``k == 0`` and
``m**2 == rho * l * (2d - l)``, which ties the count of harmonic (0,1)-forms
to the lattice points of the scaled circle.  Infinite sectors lead to systems
``v' = (A x + B) v`` whose solvability ratio always carries both a ``pi`` and
a ``1/pi`` term with nonzero coefficients, so it is never a non-positive
integer: no infinite sector contributes for any rational d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .exactmath import (
    GaussianRational,
    PiElement,
    Rational,
    RationalLike,
    _as_fraction,
    nonpositive_integer_value,
    rational_sqrt,
)
from .lattice import NonPositiveRho, ZeroParameter, scaled_circle_count
from .stokes import StokesProblem


class IrrationalScale(ValueError):
    """Exact mode needs sqrt(rho) rational; the eigenbasis involves sqrt(rho)."""


# ---------------------------------------------------------------------------
# Parameters, metrics, sector labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AcsParams:
    """Structure parameters: rational ``a`` and nonzero rational ``d = b/(8*pi)``."""

    a: Rational
    d: Rational

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "d", _as_fraction(self.d))
        if not self.d:
            raise ZeroParameter("structure parameter d must be nonzero")


@dataclass(frozen=True)
class MetricSpec:
    """Choice of compatible metric: the standard orthonormal one, or the
    one-parameter deformation scaling the second coframe direction by rho."""

    variant: str
    rho: Rational

    def __post_init__(self) -> None:
        object.__setattr__(self, "rho", _as_fraction(self.rho))
        if self.variant not in ("standard", "almost-kahler-rho"):
            raise ValueError(f"unknown metric variant {self.variant!r}")
        if self.rho <= 0:
            raise NonPositiveRho("metric scale rho must be positive")
        if self.variant == "standard" and self.rho != 1:
            raise ValueError("the standard orthonormal metric has rho == 1")

    @staticmethod
    def standard() -> "MetricSpec":
        return MetricSpec("standard", Fraction(1))

    @staticmethod
    def almost_kahler(rho: RationalLike) -> "MetricSpec":
        return MetricSpec("almost-kahler-rho", _as_fraction(rho))


@dataclass(frozen=True)
class FiniteOrbit:
    k: int
    l: int
    m: int


@dataclass(frozen=True)
class InfiniteOrbit:
    k: int
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.n == 0:
            raise ValueError("infinite-orbit sectors need n != 0")
        if not 0 <= self.m < abs(self.n):
            raise ValueError("infinite-orbit sectors need 0 <= m < |n|")


SectorId = Union[FiniteOrbit, InfiniteOrbit]


# -- certificates ------------------------------------------------------------

@dataclass(frozen=True)
class LatticeWitness:
    l: int
    m: int


@dataclass(frozen=True)
class ConstantSolution:
    pass


@dataclass(frozen=True)
class StokesRatio:
    value: PiElement


@dataclass(frozen=True)
class Empty:
    reason: str


Certificate = Union[LatticeWitness, ConstantSolution, StokesRatio, Empty]


@dataclass(frozen=True)
class SectorReport:
    sector: SectorId
    dimension: int
    certificate: Certificate

    def __post_init__(self) -> None:
        positive = isinstance(self.certificate, (LatticeWitness, ConstantSolution))
        if (self.dimension > 0) != positive:
            raise ValueError("dimension > 0 iff the certificate exhibits a solution")


# ---------------------------------------------------------------------------
# Sector enumeration
# ---------------------------------------------------------------------------

def enumerate_sectors(
    k_max: int, l_max: int, m_max: int, n_max: int
) -> List[SectorId]:
    """All finite orbits with |k| <= k_max, |l| <= l_max, |m| <= m_max and all
    infinite orbits with |k| <= k_max, 0 < |n| <= n_max, 0 <= m < |n|, in a
    deterministic order."""
    if min(k_max, l_max, m_max, n_max) < 0:
        raise ValueError("sector bounds must be non-negative")
    sectors: List[SectorId] = []
    for k in range(-k_max, k_max + 1):
        for l in range(-l_max, l_max + 1):
            for m in range(-m_max, m_max + 1):
                sectors.append(FiniteOrbit(k, l, m))
    for k in range(-k_max, k_max + 1):
        for n in [i for i in range(-n_max, n_max + 1) if i]:
            for m in range(abs(n)):
                sectors.append(InfiniteOrbit(k, m, n))
    return sectors


# ---------------------------------------------------------------------------
# Infinite-orbit sectors: the ODE systems and their exact solvability ratio
# ---------------------------------------------------------------------------

def _exact_b_matrix(params: AcsParams, k: int, m: int, n: int, rho: Fraction):
    # B = 2*pi * [[k,            (m - n(a-i)/b)/rho],
    #             [m - n(a+i)/b, (b/(4*pi)) i - k  ]]   with b = 8*pi*d,
    # so the off-diagonal constants are -(n/(4d))(a -+ i).
    a, d = params.a, params.d
    coupling = Fraction(n, 4) / d
    b11 = PiElement.pi_power(1, 2 * k)
    b12 = PiElement.from_terms(
        {1: GaussianRational(Fraction(2 * m)), 0: GaussianRational(-coupling * a, coupling)}
    ) * PiElement.rational(Fraction(1) / rho)
    b21 = PiElement.from_terms(
        {1: GaussianRational(Fraction(2 * m)), 0: GaussianRational(-coupling * a, -coupling)}
    )
    b22 = PiElement.pi_power(1, GaussianRational(Fraction(-2 * k), 4 * d))
    return ((b11, b12), (b21, b22))


def _ratio_terms(params: AcsParams, k: int, n: int) -> Tuple[GaussianRational, Fraction]:
    # b2*b3/(lam1 - lam2) = pi * (k^2 - d^2 - 2ikd)/|n| + (1/pi) * |n|/(64 d^2),
    # before the extra sqrt(rho) factor of the deformed metric.
    d = params.d
    head = GaussianRational(Fraction(k * k) - d * d, Fraction(-2 * k) * d) / abs(n)
    tail = Fraction(abs(n), 64) / (d * d)
    return head, tail


def build_sector_ode_standard(
    params: AcsParams, k: int, m: int, n: int
) -> StokesProblem:
    """The system ``v' = (A x + B) v`` governing the infinite-orbit sector
    (k, m, n) under the standard orthonormal metric, with exact pi-Laurent
    entries, their float rendering, and the exact conjugated ratio."""
    return build_sector_ode_rho(params, Fraction(1), k, m, n)


def build_sector_ode_rho(
    params: AcsParams,
    rho: RationalLike,
    k: int,
    m: int,
    n: int,
    exact: bool = True,
) -> StokesProblem:
    """Sector system for the rho-deformed metric: ``A = 2 pi n [[0, 1/rho], [1, 0]]``.

    The eigenvalue gap is ``4 pi |n| / sqrt(rho)``, so exact mode (the default)
    requires sqrt(rho) rational and raises :class:`IrrationalScale` otherwise;
    ``exact=False`` builds the float matrices only.
    """
    if n == 0:
        raise ValueError("infinite-orbit sectors need n != 0")
    rho = _as_fraction(rho)
    if rho <= 0:
        raise NonPositiveRho("metric scale rho must be positive")
    root = rational_sqrt(rho)
    if exact and root is None:
        raise IrrationalScale(
            f"sqrt({rho}) is irrational; request exact=False for a float-only system"
        )
    zero = PiElement.zero()
    exact_a = (
        (zero, PiElement.pi_power(1, Fraction(2 * n) / rho)),
        (PiElement.pi_power(1, 2 * n), zero),
    )
    exact_b = _exact_b_matrix(params, k, m, n, rho)
    a_float = [[entry.evaluate().real for entry in row] for row in exact_a]
    b_float = [[entry.evaluate() for entry in row] for row in exact_b]
    if not exact:
        return StokesProblem(a_float, b_float)
    head, tail = _ratio_terms(params, k, n)
    ratio = PiElement.from_terms({1: head * root, -1: GaussianRational(tail / root)})
    return StokesProblem(
        a_float, b_float, exact_a=exact_a, exact_b=exact_b, exact_ratio=ratio
    )


def sector_criterion(
    params: AcsParams, metric: MetricSpec, k: int, m: int, n: int
) -> SectorReport:
    """Exact solvability decision for an infinite-orbit sector.

    The conjugated ratio has pi-exponents {1, -1} with the ``1/pi``
    coefficient ``|n| / (64 d^2 sqrt(rho))`` always positive, so it is never a
    non-positive integer and the sector is always empty for rational
    parameters.  When sqrt(rho) is irrational the same holds: the ratio is
    sqrt(rho) times a nonzero element of the rational pi-Laurent ring with
    exponents {1, -1}, and transcendence of pi rules out any constant value.
    """
    sector = InfiniteOrbit(k, m, n)
    head, tail = _ratio_terms(params, k, n)
    root = rational_sqrt(metric.rho)
    if root is None:
        reduced = PiElement.from_terms({1: head, -1: GaussianRational(tail / metric.rho)})
        if reduced.is_zero():
            raise ArithmeticError("reduced ratio vanished for rational parameters")
        return SectorReport(
            sector,
            0,
            Empty(
                "ratio is sqrt(%s) times the nonzero pi-Laurent element %s"
                % (metric.rho, reduced)
            ),
        )
    ratio = PiElement.from_terms({1: head * root, -1: GaussianRational(tail / root)})
    z = nonpositive_integer_value(ratio)
    if z is not None:
        raise ArithmeticError(
            "solvable infinite-orbit sector is impossible for rational parameters"
        )
    return SectorReport(sector, 0, StokesRatio(ratio))


def sector_criterion_standard(
    params: AcsParams, k: int, m: int, n: int
) -> SectorReport:
    """Solvability decision for the standard orthonormal metric."""
    return sector_criterion(params, MetricSpec.standard(), k, m, n)


# ---------------------------------------------------------------------------
# Finite-orbit sectors
# ---------------------------------------------------------------------------

def finite_sector_dimension(
    params: AcsParams, metric: MetricSpec, k: int, l: int, m: int
) -> SectorReport:
    """Dimension contributed by the Fourier mode (k, l, m).

    The mode solves the harmonic system iff ``k == 0`` and
    ``m**2 == rho * l * (2d - l)`` (the vanishing of the 2x2 determinant of
    the per-mode linear system); the solution space is then one-dimensional.
    """
    sector = FiniteOrbit(k, l, m)
    if k != 0:
        return SectorReport(sector, 0, Empty("k != 0 forces the trivial solution"))
    d, rho = params.d, metric.rho
    if Fraction(m * m) != rho * l * (2 * d - l):
        return SectorReport(sector, 0, Empty("m^2 != rho * l * (2d - l)"))
    if l == 0 and m == 0:
        return SectorReport(sector, 1, ConstantSolution())
    return SectorReport(sector, 1, LatticeWitness(l, m))


# ---------------------------------------------------------------------------
# The counts themselves
# ---------------------------------------------------------------------------

def h01(
    params: AcsParams,
    metric: MetricSpec,
    k_max: int = 3,
    n_max: int = 3,
) -> int:
    """Dimension of the space of harmonic (0,1)-forms.

    Equals the number of integer points on the scaled circle
    ``m**2 == rho * l * (2d - l)``: finite sectors account for everything.  As
    a regression tripwire, the infinite-orbit criterion is re-evaluated over
    the window |k| <= k_max, 0 < |n| <= n_max and must report empty everywhere
    (the exact argument covers all windows).
    """
    for k in range(-k_max, k_max + 1):
        for n in [i for i in range(-n_max, n_max + 1) if i]:
            for m in range(abs(n)):
                report = sector_criterion(params, metric, k, m, n)
                if report.dimension != 0:
                    raise ArithmeticError(
                        f"infinite-orbit sector {report.sector} unexpectedly contributes"
                    )
    return scaled_circle_count(params.d, metric.rho).count


def h20(params: AcsParams) -> int:
    """Dimension of the space of harmonic (2,0)-forms: 1 iff 2d is an integer."""
    return 1 if (2 * params.d).denominator == 1 else 0


def fourier_h20_scan(params: AcsParams, window: int) -> List[Tuple[int, int]]:
    """Independent derivation of :func:`h20` by scanning Fourier modes.

    A (2,0)-form mode (k, l) is harmonic iff its symbol
    ``pi * ((2d - l) + k i)`` vanishes, i.e. k == 0 and l == 2d; the scan
    returns every such mode with |k|, |l| <= window.
    """
    if window < 1:
        raise ValueError("window must be a positive integer")
    modes = []
    for k in range(-window, window + 1):
        for l in range(-window, window + 1):
            symbol = PiElement.pi_power(1, GaussianRational(2 * params.d - l, Fraction(k)))
            if symbol.is_zero():
                modes.append((k, l))
    return sorted(modes)


def h10(params: AcsParams) -> int:
    """Dimension of the space of harmonic (1,0)-forms.

    Constant (= 1) across the whole family; cited rather than rederived.
    """
    return 1
