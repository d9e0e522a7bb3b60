"""Command-line surface: diamond assembly, lattice counts, sweeps, target
search, Stokes verification, and per-sector reports.

Exit codes: 0 success, 1 usage error, 2 domain error (d = 0, target divisible
by 8, denominator beyond the closed form, ...), 3 verification mismatch.
Every failure writes one machine-parsable line ``error: <reason>`` to stderr.
Rationals are accepted only as integer or p/q literals; decimal input is
rejected so the parameters stay exactly rational.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .hodge import HodgeDiamond, hodge_diamond, serre_check
from .lattice import (
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
    IrrationalScale,
    LatticeWitness,
    MetricSpec,
    StokesRatio,
    enumerate_sectors,
    finite_sector_dimension,
    fourier_h20_scan,
    sector_criterion,
)
from .stokes import (
    DegenerateSpectrum,
    NonFinite,
    StokesProblem,
    numeric_l2_test,
    stokes_criterion,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_MISMATCH = 3

_DOMAIN_ERRORS = (
    ZeroParameter,
    NonPositiveRho,
    UnsupportedDenominator,
    UnreachableTarget,
    IrrationalScale,
    DegenerateSpectrum,
    NonFinite,
)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse an integer or p/q literal; decimals are rejected on purpose."""
    if not _RATIONAL_RE.match(text.strip()):
        raise argparse.ArgumentTypeError(
            f"expected an integer or p/q rational literal, got {text!r}"
        )
    return Fraction(text.strip())


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message: str) -> None:  # noqa: D401 - argparse hook
        print(f"error: usage: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class RunConfig:
    command: str
    d: Optional[Fraction] = None
    a: Fraction = Fraction(0)
    rho: Optional[Fraction] = None
    k_max: int = 3
    m_max: int = 3
    n_max: int = 3
    l_max: Optional[int] = None
    window: int = 5
    p_max: int = 50
    q_max: int = 5
    target: Optional[int] = None
    count: int = 100
    steps: int = 20_000
    seed: int = 0
    tol: float = 1e-6
    format: str = "table"
    output: Optional[str] = None
    oracle: bool = False
    threads: int = field(default_factory=lambda: _threads_from_env())


def _threads_from_env() -> int:
    raw = os.environ.get("KT_HODGE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def to_canonical_json(payload) -> str:
    """Canonical serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _rational_str(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else str(value)


def _emit(config: RunConfig, text: str) -> None:
    if config.output:
        with open(config.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _metric_from_config(config: RunConfig) -> MetricSpec:
    if config.rho is None:
        return MetricSpec.standard()
    return MetricSpec.almost_kahler(config.rho)


# ---------------------------------------------------------------------------
# diamond
# ---------------------------------------------------------------------------

_DIAMOND_KEYS = [(p, q) for p in range(3) for q in range(3)]


def _diamond_payload(
    config: RunConfig, params: AcsParams, metric: MetricSpec, diamond: HodgeDiamond
) -> dict:
    witnesses = scaled_circle_count(params.d, metric.rho).points
    return {
        "params": {
            "a": str(params.a),
            "d": str(params.d),
            "rho": _rational_str(config.rho),
        },
        "metric": metric.variant,
        "diamond": {f"h{p}{q}": diamond.h[p][q] for p, q in _DIAMOND_KEYS},
        "witnesses": [[l, m] for l, m in witnesses],
        "provenance": {f"h{p}{q}": diamond.provenance[p][q] for p, q in _DIAMOND_KEYS},
    }


def _diamond_table(payload: dict) -> str:
    h = payload["diamond"]
    rows = [
        [h["h22"]],
        [h["h21"], h["h12"]],
        [h["h20"], h["h11"], h["h02"]],
        [h["h10"], h["h01"]],
        [h["h00"]],
    ]
    width = max(len(str(v)) for row in rows for v in row) + 2
    lines = [
        f"Hodge diamond for a = {payload['params']['a']}, d = {payload['params']['d']}"
        f" (metric: {payload['metric']}"
        + (f", rho = {payload['params']['rho']}" if payload["params"]["rho"] else "")
        + ")"
    ]
    for row in rows:
        body = "".join(str(v).center(width) for v in row)
        lines.append(body.center(5 * width).rstrip())
    lines.append("")
    lines.append("witnesses (l, m): " + ", ".join(f"({l}, {m})" for l, m in payload["witnesses"]))
    legend = sorted(set(payload["provenance"].values()))
    lines.append("provenance: " + ", ".join(legend))
    return "\n".join(lines) + "\n"


def _run_diamond(config: RunConfig) -> int:
    params = AcsParams(config.a, config.d)
    metric = _metric_from_config(config)
    diamond = hodge_diamond(params, metric, k_max=config.k_max, n_max=config.n_max)
    if not serre_check(diamond):
        print("error: assembled diamond failed its duality check", file=sys.stderr)
        return EXIT_MISMATCH
    # independent Fourier-mode derivation of the (2,0) entry; the window is
    # widened so the l = 2d mode is always inside the scan
    window = max(config.window, abs(math.ceil(2 * params.d)) + 1)
    if len(fourier_h20_scan(params, window)) != diamond.h[2][0]:
        print("error: Fourier scan disagrees with the (2,0) entry", file=sys.stderr)
        return EXIT_MISMATCH
    payload = _diamond_payload(config, params, metric, diamond)
    if config.format == "json":
        _emit(config, to_canonical_json(payload))
    elif config.format == "csv":
        header = [f"h{p}{q}" for p, q in _DIAMOND_KEYS]
        _emit(config, _csv_text(header, [[payload["diamond"][k] for k in header]]))
    else:
        _emit(config, _diamond_table(payload))
    return EXIT_OK


# ---------------------------------------------------------------------------
# h01
# ---------------------------------------------------------------------------

def _run_h01(config: RunConfig) -> int:
    params = AcsParams(config.a, config.d)
    metric = _metric_from_config(config)
    result = scaled_circle_count(params.d, metric.rho)
    oracle_rows: List[Tuple[str, int]] = []
    if config.oracle:
        oracle_rows.append(("brute_force", result.count))
        if metric.rho == 1 and params.d.denominator <= 5:
            closed = circle_count_closed(params.d)
            oracle_rows.append(("closed_form", closed))
            if closed != result.count:
                print(
                    f"error: closed-form count {closed} disagrees with brute force {result.count}",
                    file=sys.stderr,
                )
                return EXIT_MISMATCH
    payload = {
        "params": {
            "a": str(params.a),
            "d": str(params.d),
            "rho": _rational_str(config.rho),
        },
        "count": result.count,
        "witnesses": [[l, m] for l, m in result.points],
        "oracle": {name: value for name, value in oracle_rows},
    }
    if config.format == "json":
        _emit(config, to_canonical_json(payload))
    elif config.format == "csv":
        rows = [[l, m] for l, m in result.points]
        _emit(config, _csv_text(["l", "m"], rows))
    else:
        lines = [f"h01(d = {params.d}" + (f", rho = {config.rho}" if config.rho else "") + f") = {result.count}"]
        lines.append("witnesses: " + ", ".join(f"({l}, {m})" for l, m in result.points))
        for name, value in oracle_rows:
            lines.append(f"{name}: {value}")
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _sweep_cell(p: int, q: int) -> Tuple[int, int, str, int, int, bool, int]:
    d = Fraction(p, q)
    closed = circle_count_closed(d)
    brute = circle_count_brute(d)
    m0 = sum(1 for _, m in brute.points if m == 0)
    return (p, q, str(d), closed, brute.count, closed == brute.count, m0)


def _run_sweep(config: RunConfig) -> int:
    if config.q_max > 5:
        print("error: closed-form sweep requires q <= 5", file=sys.stderr)
        return EXIT_DOMAIN
    grid = [
        (p, q)
        for p in range(1, config.p_max + 1)
        for q in range(1, config.q_max + 1)
        if math.gcd(p, q) == 1
    ]
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            rows = list(pool.map(lambda pq: _sweep_cell(*pq), grid))
    else:
        rows = [_sweep_cell(p, q) for p, q in grid]
    rows.sort(key=lambda row: (row[0], row[1]))
    header = ["p", "q", "d", "closed_form", "brute_force", "match", "witness_count_m0"]
    mismatches = [row for row in rows if not row[5]]
    if config.format == "json":
        payload = {
            "rows": [dict(zip(header, row)) for row in rows],
            "mismatches": len(mismatches),
        }
        _emit(config, to_canonical_json(payload))
    elif config.format == "csv":
        _emit(config, _csv_text(header, rows))
    else:
        widths = [max(len(h), 12) for h in header]
        lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
        for row in rows:
            lines.append("  ".join(str(v).ljust(w) for v, w in zip(row, widths)))
        lines.append(f"{len(rows)} cells, {len(mismatches)} mismatches")
        _emit(config, "\n".join(lines) + "\n")
    if mismatches:
        print(
            f"error: {len(mismatches)} closed-form/brute-force disagreements",
            file=sys.stderr,
        )
        return EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

def _run_search(config: RunConfig) -> int:
    d = find_d_for_count(config.target)
    closed = circle_count_closed(d)
    payload = {
        "target": config.target,
        "d": str(d),
        "p": d.numerator,
        "q": d.denominator,
        "closed_form": closed,
    }
    if closed != config.target:
        print(
            f"error: constructed d = {d} realizes {closed}, not {config.target}",
            file=sys.stderr,
        )
        return EXIT_MISMATCH
    if config.format == "json":
        _emit(config, to_canonical_json(payload))
    elif config.format == "csv":
        header = ["target", "d", "p", "q", "closed_form"]
        _emit(config, _csv_text(header, [[payload[k] for k in header]]))
    else:
        _emit(config, f"count {config.target} is realized by d = {d}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify-stokes
# ---------------------------------------------------------------------------

_SOLVABLE_RATIOS = [Fraction(0), Fraction(-1), Fraction(-2), Fraction(-3), Fraction(-4), Fraction(-5)]
_UNSOLVABLE_RATIOS = [Fraction(1, 2), Fraction(1, 3), Fraction(1), Fraction(5, 2)]
_UNSOLVABLE_ANGLE = 1e-2


def _random_unit_complex(rng: random.Random, low: float = 0.3, high: float = 1.5) -> complex:
    magnitude = rng.uniform(low, high)
    phase = rng.uniform(0.0, 2.0 * math.pi)
    return magnitude * complex(math.cos(phase), math.sin(phase))


def make_verification_problem(
    rng: random.Random, ratio: Fraction
) -> StokesProblem:
    """Random system whose conjugated ratio equals ``ratio`` exactly.

    Built diagonal-first, then conjugated by a well-conditioned real
    similarity, which changes neither the ratio nor solvability.  The zero
    ratio is produced with b2 = 0 (first component decoupled), the only zero
    configuration that admits a decaying pair.
    """
    lam1 = rng.uniform(0.6, 2.5)
    lam2 = -rng.uniform(0.6, 2.5)
    b1 = complex(rng.gauss(0, 0.4), rng.gauss(0, 0.4))
    b4 = complex(rng.gauss(0, 0.4), rng.gauss(0, 0.4))
    if ratio == 0:
        b2 = 0.0 + 0j
        b3 = _random_unit_complex(rng)
    else:
        b2 = _random_unit_complex(rng)
        b3 = complex(ratio * (lam1 - lam2)) / b2
    a0 = np.diag([lam1, lam2])
    b0 = np.array([[b1, b2], [b3, b4]])
    while True:
        s = np.eye(2) + 0.4 * np.array(
            [[rng.gauss(0, 1), rng.gauss(0, 1)], [rng.gauss(0, 1), rng.gauss(0, 1)]]
        )
        if abs(np.linalg.det(s)) > 0.3:
            break
    s_inv = np.linalg.inv(s)
    return StokesProblem(s @ a0 @ s_inv, s @ b0 @ s_inv)


def _run_verify_stokes(config: RunConfig) -> int:
    rng = random.Random(config.seed)
    ratios = _SOLVABLE_RATIOS + _UNSOLVABLE_RATIOS
    rows = []
    mismatches = 0
    for index in range(config.count):
        ratio = ratios[index % len(ratios)]
        problem = make_verification_problem(rng, ratio)
        algebraic = stokes_criterion(problem)
        numeric = numeric_l2_test(problem, steps=config.steps, tol=config.tol)
        expected = ratio in _SOLVABLE_RATIOS
        agree = (
            algebraic.solvable == expected
            and numeric.solvable == expected
            and (expected or numeric.angle > _UNSOLVABLE_ANGLE)
        )
        mismatches += 0 if agree else 1
        rows.append(
            (
                index,
                str(ratio),
                expected,
                algebraic.solvable,
                numeric.solvable,
                f"{numeric.angle:.3e}",
                agree,
            )
        )
    header = ["index", "ratio", "expected", "criterion", "numeric", "angle", "agree"]
    if config.format == "json":
        payload = {
            "seed": config.seed,
            "steps": config.steps,
            "rows": [dict(zip(header, row)) for row in rows],
            "mismatches": mismatches,
        }
        _emit(config, to_canonical_json(payload))
    elif config.format == "csv":
        _emit(config, _csv_text(header, rows))
    else:
        lines = ["  ".join(h.ljust(10) for h in header)]
        for row in rows:
            lines.append("  ".join(str(v).ljust(10) for v in row))
        lines.append(f"{len(rows)} problems, {mismatches} mismatches")
        _emit(config, "\n".join(lines) + "\n")
    if mismatches:
        print(f"error: {mismatches} criterion/numeric disagreements", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------------------
# sectors
# ---------------------------------------------------------------------------

def _certificate_text(certificate) -> str:
    if isinstance(certificate, ConstantSolution):
        return "constant-solution"
    if isinstance(certificate, LatticeWitness):
        return f"lattice-witness({certificate.l}, {certificate.m})"
    if isinstance(certificate, StokesRatio):
        return f"stokes-ratio[{certificate.value}]"
    if isinstance(certificate, Empty):
        return f"empty[{certificate.reason}]"
    return repr(certificate)


def _run_sectors(config: RunConfig) -> int:
    params = AcsParams(config.a, config.d)
    metric = _metric_from_config(config)
    l_max = config.l_max
    if l_max is None:
        l_max = max(1, abs(math.ceil(2 * params.d)), abs(math.floor(2 * params.d)))
    reports = []
    for sector in enumerate_sectors(config.k_max, l_max, config.m_max, config.n_max):
        if isinstance(sector, FiniteOrbit):
            reports.append(
                finite_sector_dimension(params, metric, sector.k, sector.l, sector.m)
            )
        else:
            reports.append(
                sector_criterion(params, metric, sector.k, sector.m, sector.n)
            )
    total = sum(report.dimension for report in reports)
    rows = []
    for report in reports:
        sector = report.sector
        if isinstance(sector, FiniteOrbit):
            label = f"finite(k={sector.k}, l={sector.l}, m={sector.m})"
        else:
            label = f"infinite(k={sector.k}, m={sector.m}, n={sector.n})"
        rows.append((label, report.dimension, _certificate_text(report.certificate)))
    if config.format == "json":
        payload = {
            "params": {
                "a": str(params.a),
                "d": str(params.d),
                "rho": _rational_str(config.rho),
            },
            "sectors": [
                {"sector": label, "dimension": dim, "certificate": cert}
                for label, dim, cert in rows
            ],
            "total_dimension": total,
        }
        _emit(config, to_canonical_json(payload))
    elif config.format == "csv":
        _emit(config, _csv_text(["sector", "dimension", "certificate"], rows))
    else:
        lines = [f"{label}: dim {dim}  {cert}" for label, dim, cert in rows]
        lines.append(f"total dimension in window: {total}")
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kthodge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, needs_d: bool = False) -> None:
        if needs_d:
            p.add_argument("--d", type=parse_rational, required=True, help="nonzero rational d")
            p.add_argument("--a", type=parse_rational, default=Fraction(0))
            p.add_argument("--rho", type=parse_rational, default=None)
        p.add_argument("--format", choices=["table", "json", "csv"], default="table")
        p.add_argument("--output", default=None, help="write the report to a file")

    p_diamond = sub.add_parser("diamond", help="assemble the full Hodge diamond")
    add_common(p_diamond, needs_d=True)
    p_diamond.add_argument("--k-max", type=int, default=3)
    p_diamond.add_argument("--n-max", type=int, default=3)
    p_diamond.add_argument(
        "--window", type=int, default=5,
        help="Fourier cross-check window (auto-widened to cover l = 2d)",
    )

    p_h01 = sub.add_parser("h01", help="count harmonic (0,1)-forms with witnesses")
    add_common(p_h01, needs_d=True)
    p_h01.add_argument("--oracle", action="store_true", help="cross-check the closed form")

    p_sweep = sub.add_parser("sweep", help="closed form vs brute force over a p/q grid")
    add_common(p_sweep)
    p_sweep.add_argument("--p-max", type=int, default=50)
    p_sweep.add_argument("--q-max", type=int, default=5)

    p_search = sub.add_parser("search", help="find d realizing a target count")
    add_common(p_search)
    p_search.add_argument("--target", type=int, required=True)

    p_verify = sub.add_parser("verify-stokes", help="criterion vs shooting on random systems")
    add_common(p_verify)
    p_verify.add_argument("--count", type=int, default=100)
    p_verify.add_argument("--steps", type=int, default=20_000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--tol", type=float, default=1e-6)

    p_sectors = sub.add_parser("sectors", help="per-sector dimensions and certificates")
    add_common(p_sectors, needs_d=True)
    p_sectors.add_argument("--k-max", type=int, default=1)
    p_sectors.add_argument("--l-max", type=int, default=None)
    p_sectors.add_argument("--m-max", type=int, default=3)
    p_sectors.add_argument("--n-max", type=int, default=1)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=args.command)
    for name in (
        "d",
        "a",
        "rho",
        "k_max",
        "m_max",
        "n_max",
        "l_max",
        "window",
        "p_max",
        "q_max",
        "target",
        "count",
        "steps",
        "seed",
        "tol",
        "format",
        "output",
        "oracle",
    ):
        if hasattr(args, name):
            setattr(config, name, getattr(args, name))
    return config


_COMMANDS = {
    "diamond": _run_diamond,
    "h01": _run_h01,
    "sweep": _run_sweep,
    "search": _run_search,
    "verify-stokes": _run_verify_stokes,
    "sectors": _run_sectors,
}


def run(config: RunConfig) -> int:
    """Dispatch a validated configuration; returns the process exit code."""
    handler = _COMMANDS.get(config.command)
    if handler is None:
        print(f"error: usage: unknown command {config.command!r}", file=sys.stderr)
        return EXIT_USAGE
    if config.tol <= 0:
        print("error: tolerance must be positive", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        return handler(config)
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: usage: cannot write report: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
