"""Diamond assembly, duality, and metric dependence."""

from fractions import Fraction

import pytest

from kthodge.hodge import (
    CITED_CONSTANT,
    COMPUTED,
    HodgeDiamond,
    KT4_B_MINUS,
    SERRE_DUAL,
    h11_almost_kahler,
    hodge_diamond,
    serre_check,
)
from kthodge.lattice import find_d_for_count
from kthodge.sectors import AcsParams, MetricSpec

STANDARD = MetricSpec.standard()


def test_h11_formula():
    assert h11_almost_kahler(2) == 3
    assert h11_almost_kahler(0) == 1
    assert h11_almost_kahler(5) == 6
    with pytest.raises(ValueError):
        h11_almost_kahler(-1)
    assert h11_almost_kahler(KT4_B_MINUS) == 3


def test_diamond_at_d_one_standard():
    diamond = hodge_diamond(AcsParams(0, 1), STANDARD)
    assert diamond.entry(0, 0) == 1
    assert diamond.entry(1, 0) == 1
    assert diamond.entry(2, 0) == 1  # 2d = 2 is an integer
    assert diamond.entry(0, 1) == 4
    assert diamond.entry(1, 1) == 3
    assert diamond.entry(2, 1) == 4
    assert diamond.entry(0, 2) == 1
    assert diamond.entry(1, 2) == 1
    assert diamond.entry(2, 2) == 1


def test_diamond_at_d_third_standard():
    diamond = hodge_diamond(AcsParams(0, Fraction(1, 3)), STANDARD)
    assert diamond.entry(0, 1) == 1
    assert diamond.entry(2, 0) == 0
    assert diamond.entry(1, 1) == 3


def test_metric_dependence_witness():
    base = hodge_diamond(AcsParams(0, 1), MetricSpec.almost_kahler(4))
    deformed = hodge_diamond(AcsParams(0, 1), MetricSpec.almost_kahler(Fraction(9, 4)))
    assert base.entry(0, 1) == 4
    assert deformed.entry(0, 1) == 2
    differing = {
        (p, q)
        for p in range(3)
        for q in range(3)
        if base.entry(p, q) != deformed.entry(p, q)
    }
    assert differing == {(0, 1), (2, 1)}


def test_provenance_labels():
    diamond = hodge_diamond(AcsParams(0, 1), STANDARD)
    assert diamond.provenance[0][0] == CITED_CONSTANT
    assert diamond.provenance[1][1] == CITED_CONSTANT
    assert diamond.provenance[0][1] == COMPUTED
    assert diamond.provenance[2][0] == COMPUTED
    assert diamond.provenance[2][1] == SERRE_DUAL
    assert diamond.provenance[2][2] == SERRE_DUAL


@pytest.mark.parametrize(
    "d,rho",
    [
        (Fraction(1), None),
        (Fraction(1, 2), None),
        (Fraction(5, 4), None),
        (Fraction(-3, 2), None),
        (Fraction(1), Fraction(9, 4)),
        (Fraction(5, 3), Fraction(16)),
    ],
)
def test_every_diamond_passes_serre_and_corners(d, rho):
    metric = STANDARD if rho is None else MetricSpec.almost_kahler(rho)
    diamond = hodge_diamond(AcsParams(0, d), metric)
    assert serre_check(diamond)
    assert diamond.entry(0, 0) == 1
    assert diamond.entry(2, 2) == 1
    assert diamond.entry(1, 1) == 3


def test_serre_check_rejects_broken_grid():
    broken = HodgeDiamond(
        ((1, 2, 0), (1, 3, 1), (0, 3, 1)),
        tuple(tuple("computed" for _ in range(3)) for _ in range(3)),
    )
    assert not serre_check(broken)
    ones = HodgeDiamond(
        ((1, 1, 1), (1, 1, 1), (1, 1, 1)),
        tuple(tuple("computed" for _ in range(3)) for _ in range(3)),
    )
    assert serre_check(ones)


def test_target_counts_realized_in_diamonds():
    # Assemble the full diamond wherever the constructed numerator is small
    # enough for the lattice scan; the closed form covers every target.
    for n in range(1, 31):
        if n % 8 == 0:
            continue
        d = find_d_for_count(n)
        if d.numerator <= 10**6:
            diamond = hodge_diamond(AcsParams(0, d), STANDARD)
            assert diamond.entry(0, 1) == n
            assert diamond.entry(2, 1) == n
