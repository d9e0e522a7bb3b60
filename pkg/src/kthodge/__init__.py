"""Hodge numbers of a family of almost complex structures on the
Kodaira-Thurston manifold, computed exactly.

The family is parametrized by two rationals (a, d); harmonic-form counts
reduce to lattice points on a circle (finite Fourier sectors) plus an ODE
solvability criterion that exact pi-Laurent arithmetic shows is never met for
rational parameters (infinite sectors).
"""

from .exactmath import (
    Factorization,
    GaussianRational,
    PiElement,
    Rational,
    factorize,
    membership_in_pi_negative_integers,
    pi_ring,
    r2,
    rational_sqrt,
)
from .hodge import (
    HodgeDiamond,
    KT4_B_MINUS,
    h11_almost_kahler,
    hodge_diamond,
    serre_check,
)
from .lattice import (
    LatticeCount,
    NonPositiveRho,
    UnreachableTarget,
    UnsupportedDenominator,
    ZeroParameter,
    circle_count_brute,
    circle_count_closed,
    find_d_for_count,
    scaled_circle_count,
)
from .sectors import (
    AcsParams,
    ConstantSolution,
    Empty,
    FiniteOrbit,
    InfiniteOrbit,
    IrrationalScale,
    LatticeWitness,
    MetricSpec,
    SectorId,
    SectorReport,
    StokesRatio,
    build_sector_ode_rho,
    build_sector_ode_standard,
    enumerate_sectors,
    finite_sector_dimension,
    fourier_h20_scan,
    h01,
    h10,
    h20,
    sector_criterion,
    sector_criterion_standard,
)
from .stokes import (
    DegenerateSpectrum,
    NonFinite,
    SchwartzClassification,
    SingularStep,
    StokesProblem,
    StokesVerdict,
    discrete_schwartz_classify,
    eigensplit,
    numeric_l2_test,
    stokes_criterion,
)

__version__ = "0.1.0"

__all__ = [
    "AcsParams",
    "ConstantSolution",
    "DegenerateSpectrum",
    "Empty",
    "Factorization",
    "FiniteOrbit",
    "GaussianRational",
    "HodgeDiamond",
    "InfiniteOrbit",
    "IrrationalScale",
    "KT4_B_MINUS",
    "LatticeCount",
    "LatticeWitness",
    "MetricSpec",
    "NonFinite",
    "NonPositiveRho",
    "PiElement",
    "Rational",
    "SchwartzClassification",
    "SectorId",
    "SectorReport",
    "SingularStep",
    "StokesProblem",
    "StokesRatio",
    "StokesVerdict",
    "UnreachableTarget",
    "UnsupportedDenominator",
    "ZeroParameter",
    "build_sector_ode_rho",
    "build_sector_ode_standard",
    "circle_count_brute",
    "circle_count_closed",
    "discrete_schwartz_classify",
    "eigensplit",
    "enumerate_sectors",
    "factorize",
    "find_d_for_count",
    "finite_sector_dimension",
    "fourier_h20_scan",
    "h01",
    "h10",
    "h11_almost_kahler",
    "h20",
    "hodge_diamond",
    "membership_in_pi_negative_integers",
    "numeric_l2_test",
    "pi_ring",
    "r2",
    "rational_sqrt",
    "scaled_circle_count",
    "sector_criterion",
    "sector_criterion_standard",
    "serre_check",
    "stokes_criterion",
]
