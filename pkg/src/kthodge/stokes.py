"""L^2-solvability of 2x2 systems ``v' = (A x + B) v`` where A has real
eigenvalues of opposite sign.

Solutions behave like ``exp(lam * x**2 / 2)`` along the eigendirections of A
at both infinities, so at most one line of solutions decays at each end.  The
algebraic criterion: after conjugating to ``T A T^{-1} = diag(lam1, lam2)``
with ``lam1 > 0 > lam2`` and writing ``T B T^{-1} = [[b1, b2], [b3, b4]]``,
an integrable pair exists iff ``b2*b3 / (lam1 - lam2)`` is a non-positive
integer.  ``numeric_l2_test`` verifies the criterion independently by shooting
from both ends with per-step renormalization and comparing the two decaying
lines at x = 0.

The zero ratio deserves care: ``b2 == 0`` decouples the first component and
``(0, exp(lam2 x**2/2 + b4 x))`` solves the system, but ``b3 == 0`` with
``b2 != 0`` admits no decaying pair (the forced component picks up a
non-vanishing Gaussian integral at one end).  Zero-ratio verification
problems must therefore be built with ``b2 == 0``.

``discrete_schwartz_classify`` runs the analogous bounded-decay test for
matrix recurrences ``(a_k, b_k) = (A k**2 + B k + C)/(d k + e) (a_{k-1}, b_{k-1})``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .exactmath import PiElement, nonpositive_integer_value


class DegenerateSpectrum(ValueError):
    """A must have two distinct real eigenvalues straddling zero."""


class NonFinite(ArithmeticError):
    """Integration produced non-finite values despite renormalization."""


class SingularStep(ArithmeticError):
    """A recurrence step hit ``d*k + e == 0`` or a singular matrix."""

    def __init__(self, k: int, message: str):
        super().__init__(f"{message} at k = {k}")
        self.k = k


_EIG_TOL = 1e-12


def eigensplit(a_matrix) -> Tuple[np.ndarray, float, float]:
    """Diagonalize a real 2x2 matrix with eigenvalues ``lam1 > 0 > lam2``.

    Returns ``(T, lam1, lam2)`` with ``T A T^{-1} = diag(lam1, lam2)``; the
    eigenvector columns of ``T^{-1}`` are normalized so their largest-magnitude
    entry is 1.
    """
    a = np.asarray(a_matrix, dtype=complex)
    if a.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    if np.max(np.abs(a.imag)) > _EIG_TOL * max(1.0, np.max(np.abs(a.real))):
        raise DegenerateSpectrum("matrix must be real")
    a = a.real.astype(float)
    tr = a[0, 0] + a[1, 1]
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    disc = tr * tr - 4.0 * det
    scale = max(1.0, float(np.max(np.abs(a))))
    if disc <= _EIG_TOL * scale * scale:
        raise DegenerateSpectrum("eigenvalues coincide or are complex")
    root = math.sqrt(disc)
    lam1 = (tr + root) / 2.0
    lam2 = (tr - root) / 2.0
    if not (lam1 > 0.0 > lam2):
        raise DegenerateSpectrum("eigenvalues must straddle zero")
    columns = []
    for lam in (lam1, lam2):
        v_top = np.array([a[0, 1], lam - a[0, 0]])
        v_bot = np.array([lam - a[1, 1], a[1, 0]])
        v = v_top if np.linalg.norm(v_top) >= np.linalg.norm(v_bot) else v_bot
        v = v / v[int(np.argmax(np.abs(v)))]
        columns.append(v)
    t_inverse = np.column_stack(columns)
    return np.linalg.inv(t_inverse), lam1, lam2


class StokesProblem:
    """A system ``v' = (A x + B) v`` with optional exact payloads.

    ``a_matrix`` is real 2x2 with eigenvalues of oppositeite sign (validated
    at construction); ``b_matrix`` is complex 2x2.  Sector constructions
    attach the exact matrices as pi-Laurent elements together with the exact
    conjugated ratio ``b2*b3 / (lam1 - lam2)``, which switches
    :func:`stokes_criterion` into exact mode.
    """

    def __init__(
        self,
        a_matrix,
        b_matrix,
        exact_a: Optional[Sequence[Sequence[PiElement]]] = None,
        exact_b: Optional[Sequence[Sequence[PiElement]]] = None,
        exact_ratio: Optional[PiElement] = None,
    ):
        self.a_matrix = np.array(a_matrix, dtype=float)
        self.b_matrix = np.array(b_matrix, dtype=complex)
        if self.a_matrix.shape != (2, 2) or self.b_matrix.shape != (2, 2):
            raise ValueError("A and B must be 2x2 matrices")
        eigensplit(self.a_matrix)  # validates the spectrum
        self.exact_a = tuple(map(tuple, exact_a)) if exact_a is not None else None
        self.exact_b = tuple(map(tuple, exact_b)) if exact_b is not None else None
        self.exact_ratio = exact_ratio
        self.a_matrix.setflags(write=False)
        self.b_matrix.setflags(write=False)

    def __repr__(self) -> str:
        mode = "exact" if self.exact_ratio is not None else "float"
        return f"StokesProblem(A={self.a_matrix.tolist()}, B={self.b_matrix.tolist()}, mode={mode})"


@dataclass(frozen=True)
class StokesVerdict:
    """Outcome of a solvability decision.

    ``ratio`` is the exact PiElement in exact mode and a complex float
    otherwise.  ``integer_value`` is the non-positive integer the ratio equals
    when solvable (0 is reported distinctly so callers may apply the strict
    negative-integers-only reading).  ``borderline`` marks float-mode
    decisions, which are made only up to tolerance.  ``angle`` is the
    projective distance between the two decaying lines when the verdict came
    from shooting.
    """

    solvable: bool
    ratio: Union[complex, PiElement]
    integer_value: Optional[int] = None
    borderline: bool = False
    angle: Optional[float] = None
    decay_bounded: Optional[bool] = None


def conjugated_ratio(problem: StokesProblem) -> complex:
    """Float value of ``b2*b3 / (lam1 - lam2)`` after diagonalizing A."""
    t, lam1, lam2 = eigensplit(problem.a_matrix)
    bt = t @ problem.b_matrix @ np.linalg.inv(t)
    return complex(bt[0, 1] * bt[1, 0] / (lam1 - lam2))


def stokes_criterion(problem: StokesProblem, tol: float = 1e-9) -> StokesVerdict:
    """Decide solvability by membership of the ratio in ``Z^- U {0}``.

    Exact mode (sector-built problems) tests the pi-Laurent ratio
    symbolically.  Float mode accepts a ratio within ``tol`` of a non-positive
    integer and flags the verdict borderline since equality cannot be
    certified in floating point.
    """
    if problem.exact_ratio is not None:
        z = nonpositive_integer_value(problem.exact_ratio)
        return StokesVerdict(
            solvable=z is not None,
            ratio=problem.exact_ratio,
            integer_value=z,
        )
    ratio = conjugated_ratio(problem)
    nearest = min(0, round(ratio.real))
    on_integer = abs(ratio.imag) < tol and abs(ratio.real - nearest) < tol
    return StokesVerdict(
        solvable=on_integer,
        ratio=ratio,
        integer_value=nearest if on_integer else None,
        borderline=on_integer,
    )


def _shoot(
    a: np.ndarray,
    b: np.ndarray,
    x0: float,
    x1: float,
    steps: int,
    start: Tuple[complex, complex],
    lam2: float,
) -> Tuple[complex, complex, float]:
    """Classical RK4 from x0 to x1 with per-step renormalization.

    Returns the final unit direction plus the maximum of
    ``log||v(x)|| - lam2 * x**2 / 4`` relative to its final value, which is a
    growth certificate for the decaying branch (the profile peaks at the inner
    endpoint when the solution really decays like ``exp(lam2 x**2 / 2)``).
    """
    a11, a12, a21, a22 = (float(a[0, 0]), float(a[0, 1]), float(a[1, 0]), float(a[1, 1]))
    b11, b12, b21, b22 = (
        complex(b[0, 0]),
        complex(b[0, 1]),
        complex(b[1, 0]),
        complex(b[1, 1]),
    )
    v1, v2 = start
    norm = math.sqrt(abs(v1) ** 2 + abs(v2) ** 2)
    v1 /= norm
    v2 /= norm
    h = (x1 - x0) / steps
    x = x0
    logscale = 0.0
    profile_max = -math.inf
    for step in range(steps):
        xm = x + 0.5 * h
        xe = x0 + (step + 1) * h
        m11a = a11 * x + b11
        m12a = a12 * x + b12
        m21a = a21 * x + b21
        m22a = a22 * x + b22
        m11b = a11 * xm + b11
        m12b = a12 * xm + b12
        m21b = a21 * xm + b21
        m22b = a22 * xm + b22
        m11c = a11 * xe + b11
        m12c = a12 * xe + b12
        m21c = a21 * xe + b21
        m22c = a22 * xe + b22
        k1a = m11a * v1 + m12a * v2
        k1b = m21a * v1 + m22a * v2
        w1 = v1 + 0.5 * h * k1a
        w2 = v2 + 0.5 * h * k1b
        k2a = m11b * w1 + m12b * w2
        k2b = m21b * w1 + m22b * w2
        w1 = v1 + 0.5 * h * k2a
        w2 = v2 + 0.5 * h * k2b
        k3a = m11b * w1 + m12b * w2
        k3b = m21b * w1 + m22b * w2
        w1 = v1 + h * k3a
        w2 = v2 + h * k3b
        k4a = m11c * w1 + m12c * w2
        k4b = m21c * w1 + m22c * w2
        v1 = v1 + (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        v2 = v2 + (h / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        norm = math.sqrt(abs(v1) ** 2 + abs(v2) ** 2)
        if norm == 0.0 or not math.isfinite(norm):
            raise NonFinite("shooting integration left the finite range")
        v1 /= norm
        v2 /= norm
        logscale += math.log(norm)
        x = xe
        profile = logscale - lam2 * x * x / 4.0
        if profile > profile_max:
            profile_max = profile
    return v1, v2, profile_max - (logscale - lam2 * x * x / 4.0)


def numeric_l2_test(
    problem: StokesProblem,
    x_span: Optional[float] = None,
    steps: int = 200_000,
    tol: float = 1e-6,
) -> StokesVerdict:
    """Shooting verification of solvability, independent of the criterion.

    Integrates backward from ``+X`` to 0 and forward from ``-X`` to 0 starting
    along the eigendirection of ``lam2``; each run converges in direction to
    the line of solutions decaying at that end, because the decaying mode is
    amplified by ``exp((lam1 - lam2) X**2 / 2) >= e**60`` relative to the
    other.  Solvable iff the two lines at x = 0 coincide, measured by the
    normalized determinant ``|det[v+ v-]| / (||v+|| ||v-||) < tol``.
    """
    t, lam1, lam2 = eigensplit(problem.a_matrix)
    gap = lam1 - lam2
    if x_span is None:
        x_span = math.sqrt(120.0 / gap)
    if gap * x_span * x_span / 2.0 < 60.0 - 1e-9:
        raise ValueError("x_span too small: need (lam1 - lam2) * X**2 / 2 >= 60")
    if steps < 10_000:
        raise ValueError("need at least 10**4 integration steps")
    t_inverse = np.linalg.inv(t)
    decay_direction = (complex(t_inverse[0, 1]), complex(t_inverse[1, 1]))
    a, b = problem.a_matrix, problem.b_matrix
    p1, p2, excess_plus = _shoot(a, b, x_span, 0.0, steps, decay_direction, lam2)
    q1, q2, excess_minus = _shoot(a, b, -x_span, 0.0, steps, decay_direction, lam2)
    angle = abs(p1 * q2 - p2 * q1)  # both vectors are unit length
    # On the decaying branch the profile log||v|| - lam2 x^2/4 peaks at x = 0;
    # allow the bounded corrections exp(O(||B|| X)) on top.
    slack = float(np.linalg.norm(problem.b_matrix)) * x_span + 10.0
    decay_ok = max(excess_plus, excess_minus) <= slack
    return StokesVerdict(
        solvable=angle < tol,
        ratio=conjugated_ratio(problem),
        angle=angle,
        decay_bounded=decay_ok,
    )


# ---------------------------------------------------------------------------
# Discrete analogue: polynomial-decay classification of matrix recurrences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchwartzClassification:
    """Whether a bi-infinite recurrence orbit decays faster than any polynomial."""

    schwartz: bool
    direction: Optional[str] = None  # "forward" or "backward" when not Schwartz


_OVERFLOW_LIMIT = 1e250
_DECAY_POWER = 4


def _tail_decays(magnitudes: Sequence[Tuple[int, float]]) -> bool:
    # Weight by |k|**4; boundedness of every lower power follows.  The tail
    # (outer half of the window) must be monotonically non-increasing.
    weighted = [max(1, abs(k)) ** _DECAY_POWER * w for k, w in magnitudes]
    tail_start = len(weighted) // 2
    tail = weighted[tail_start:]
    for previous, current in zip(tail, tail[1:]):
        if current > previous * (1.0 + 1e-9) + 1e-300:
            return False
    return True


def discrete_schwartz_classify(
    a_matrix,
    b_matrix,
    c_matrix,
    d: complex,
    e: complex,
    k_range: int,
    seed: Tuple[complex, complex] = (1.0 + 0j, 1.0 + 0j),
) -> SchwartzClassification:
    """Classify the orbit of ``(a_k, b_k) = (A k^2 + B k + C)/(d k + e) (a_{k-1}, b_{k-1})``.

    The seed sits at k = 0; the orbit is extended to ``k = k_range`` forward
    and ``k = -k_range`` backward (inverting each step).  A direction passes
    when ``|k|**p |a_k|`` and ``|k|**p |b_k|`` stay bounded for p <= 4, judged
    by monotone decay of the ``|k|**4``-weighted magnitudes over the outer
    half of the window.  The forward direction is classified first; the
    backward sweep only runs when forward decay holds.
    """
    if k_range < 8:
        raise ValueError("k_range must be at least 8 for a meaningful tail test")
    a = np.asarray(a_matrix, dtype=complex)
    b = np.asarray(b_matrix, dtype=complex)
    c = np.asarray(c_matrix, dtype=complex)
    for k in range(-k_range, k_range + 1):
        if d * k + e == 0:
            raise SingularStep(k, "recurrence denominator d*k + e vanishes")

    def step_matrix(k: int) -> np.ndarray:
        return a * (k * k) + b * k + c

    v = np.array(seed, dtype=complex)
    forward = [(0, float(np.max(np.abs(v))))]
    for k in range(1, k_range + 1):
        v = (step_matrix(k) @ v) / (d * k + e)
        magnitude = float(np.max(np.abs(v)))
        if not math.isfinite(magnitude) or magnitude > _OVERFLOW_LIMIT:
            return SchwartzClassification(False, "forward")
        forward.append((k, magnitude))
    if not _tail_decays(forward):
        return SchwartzClassification(False, "forward")

    v = np.array(seed, dtype=complex)
    backward = [(0, float(np.max(np.abs(v))))]
    for k in range(0, -k_range, -1):
        m = step_matrix(k)
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if det == 0:
            raise SingularStep(k, "singular recurrence matrix")
        v = np.linalg.solve(m, v) * (d * k + e)
        magnitude = float(np.max(np.abs(v)))
        if not math.isfinite(magnitude) or magnitude > _OVERFLOW_LIMIT:
            return SchwartzClassification(False, "backward")
        backward.append((k - 1, magnitude))
    if not _tail_decays(backward):
        return SchwartzClassification(False, "backward")
    return SchwartzClassification(True)
