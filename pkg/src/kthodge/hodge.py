"""Assembly of the full Hodge diamond for the structure family, with
per-entry provenance.

Only four entries are independent on a 4-manifold: h^{1,0}, h^{2,0}, h^{0,1}
and h^{1,1}; the rest follow from Serre duality h^{p,q} = h^{2-p,2-q}.  For
this family h^{1,0} = 1 and (with any compatible almost Kahler metric)
h^{1,1} = b^- + 1 = 3 are cited constants, h^{2,0} and h^{0,1} are computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .sectors import AcsParams, MetricSpec, h01, h10, h20

COMPUTED = "computed"
SERRE_DUAL = "serre-dual"
CITED_CONSTANT = "cited-constant"

#: Anti-self-dual second Betti number of the underlying 4-manifold.
KT4_B_MINUS = 2


@dataclass(frozen=True)
class HodgeDiamond:
    """3x3 grid of Hodge numbers ``h[p][q]`` with provenance labels."""

    h: Tuple[Tuple[int, int, int], ...]
    provenance: Tuple[Tuple[str, str, str], ...]

    def entry(self, p: int, q: int) -> int:
        return self.h[p][q]


def h11_almost_kahler(b_minus: int) -> int:
    """h^{1,1} for any compatible almost Kahler metric on a closed 4-manifold:
    one more than the anti-self-dual second Betti number."""
    if b_minus < 0:
        raise ValueError("b^- must be non-negative")
    return b_minus + 1


def hodge_diamond(
    params: AcsParams,
    metric: MetricSpec,
    k_max: int = 3,
    n_max: int = 3,
) -> HodgeDiamond:
    """Full Hodge diamond for the given structure parameters and metric."""
    h = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
    labels = [["", "", ""], ["", "", ""], ["", "", ""]]

    def put(p: int, q: int, value: int, label: str) -> None:
        h[p][q] = value
        labels[p][q] = label

    put(0, 0, 1, CITED_CONSTANT)  # compact connected
    put(1, 0, h10(params), CITED_CONSTANT)
    put(2, 0, h20(params), COMPUTED)
    put(0, 1, h01(params, metric, k_max=k_max, n_max=n_max), COMPUTED)
    put(1, 1, h11_almost_kahler(KT4_B_MINUS), CITED_CONSTANT)
    for p, q in ((2, 2), (1, 2), (0, 2), (2, 1)):
        put(p, q, h[2 - p][2 - q], SERRE_DUAL)
    return HodgeDiamond(
        tuple(tuple(row) for row in h),
        tuple(tuple(row) for row in labels),
    )


def serre_check(diamond: HodgeDiamond) -> bool:
    """True iff ``h[p][q] == h[2-p][2-q]`` for every entry."""
    return all(
        diamond.h[p][q] == diamond.h[2 - p][2 - q]
        for p in range(3)
        for q in range(3)
    )
