import math

import numpy as np
import pytest

from lorentz_casimir.constants import HBAR_C
from lorentz_casimir.ideal import (
    IdealConfigTag,
    ideal_cavity_total,
    ideal_cc_closed_form,
    ideal_f1,
    ideal_f2,
    ideal_total,
)

D = 1e-6
UNIT = HBAR_C / D**4


def test_tags():
    assert len(IdealConfigTag) == 4
    assert IdealConfigTag("cp").mirror_type == "conductive"
    assert IdealConfigTag("cp").slab_type == "permeable"


def test_f1_examples():
    assert ideal_f1(D, "cc") == pytest.approx(math.pi**2 / 240 * UNIT, rel=1e-15)
    assert ideal_f1(D, "cp") == pytest.approx(-7 / 8 * math.pi**2 / 240 * UNIT, rel=1e-15)
    assert ideal_f1(D, "cc", 2.0, 1.0) == pytest.approx(
        math.pi**2 / 480 * UNIT / math.sqrt(2) * 1.5, rel=1e-15)


def test_f2_examples():
    for tag in IdealConfigTag:
        assert ideal_f2(D, tag) == 0.0
    n0_sq = 50.0
    ratio = ideal_f2(D, "cc", n0_sq) / ideal_f1(D, "cc", n0_sq)
    assert ratio == pytest.approx((1 / 3) * (1 - 1 / n0_sq) / (1 + 1 / n0_sq))
    # conductive mirror, permeable slab: positive with the 7/8 factor
    assert ideal_f2(D, "cp", 2.0) == pytest.approx(7 / 8 * ideal_f2(D, "cc", 2.0))
    assert ideal_f2(D, "pc", 2.0) == pytest.approx(-7 / 8 * ideal_f2(D, "cc", 2.0))
    assert ideal_f2(D, "pp", 2.0) == pytest.approx(-ideal_f2(D, "cc", 2.0))


@pytest.mark.parametrize("seed", range(5))
def test_total_relations(seed):
    rng = np.random.default_rng(seed)
    eps0, mu0 = rng.uniform(1, 100, size=2)
    n0_sq = eps0 * mu0
    cc = ideal_total(D, "cc", eps0, mu0)
    assert cc == pytest.approx(ideal_cc_closed_form(D, eps0, mu0), rel=1e-14)
    g = (n0_sq + 2) / (2 * n0_sq + 1)
    assert ideal_total(D, "pp", eps0, mu0) == pytest.approx(g * cc, rel=1e-14)
    assert ideal_total(D, "cp", eps0, mu0) == pytest.approx(-7 / 8 * g * cc, rel=1e-14)
    assert ideal_total(D, "pc", eps0, mu0) == pytest.approx(-7 / 8 * cc, rel=1e-14)


def test_dense_limits():
    assert ideal_total(D, "pp", 1e6) / ideal_total(D, "cc", 1e6) == pytest.approx(0.5, rel=1e-5)
    assert ideal_cc_closed_form(D, 1e8) == pytest.approx(HBAR_C * math.pi**2 / (360 * D**4) / 1e4, rel=1e-7)


def test_cavity_combination():
    assert ideal_cavity_total(D, D, "cc", "cc") == 0.0
    assert ideal_cavity_total(math.inf, D, "cc", "pc", 3.0) == ideal_total(D, "pc", 3.0)
    assert ideal_cavity_total(D, D / 2, "cc", "cc") == pytest.approx(15 * ideal_total(D, "cc"))


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        ideal_f1(-1.0, "cc")
    with pytest.raises(ValueError):
        ideal_f1(D, "xx")
