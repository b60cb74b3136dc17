import pytest

from skorokhod2d.classify import Regime, classify_regime
from skorokhod2d.counterexample import (
    build_counterexample,
    build_u,
    check_identities,
    solution_gap,
)
from skorokhod2d.dyadic import Dyadic
from skorokhod2d.errors import ConstructionError, ExactnessError
from skorokhod2d.paths import EXACT, FLOAT, matrix_apply, path_min, stieltjes
from skorokhod2d.verifier import verify


def test_spiral_breakpoints_a1_minus_two():
    u = build_u(Dyadic(-2), 8)
    got = {float(t): (float(v[0]), float(v[1])) for t, v in zip(u.times, u.values)}
    expect = {
        1.0: (-1.0, 1.0),
        0.5: (-1.0, -0.5),
        0.25: (0.5, -0.5),
        0.125: (0.5, 0.25),
        0.0625: (-0.25, 0.25),
        0.03125: (-0.25, -0.125),
        0.015625: (0.125, -0.125),
        0.0078125: (0.125, 0.0625),
        0.00390625: (-0.0625, 0.0625),
    }
    assert got == expect
    assert u.mode == EXACT


def test_spiral_self_similarity():
    # u(t/16) = u(t)/4 holds exactly at breakpoints
    u = build_u(Dyadic(-2), 16)
    for n in range(0, 13):
        t = Dyadic(1, -n)
        a = u.eval(t * Dyadic(1, -4))
        b = u.eval(t)
        assert a[0] * 4 == b[0] and a[1] * 4 == b[1]


def test_depth_and_slope_validation():
    with pytest.raises(ConstructionError):
        build_u(Dyadic(-2), 6)
    with pytest.raises(ConstructionError):
        build_u(Dyadic(-2), 0)
    with pytest.raises(ConstructionError):
        build_u(Dyadic(-1), 8)  # needs strict expansion
    with pytest.raises(ConstructionError):
        build_u(Dyadic(2), 8)


def test_mode_resolution():
    assert build_u(Dyadic(-2), 8).mode == EXACT
    assert build_u(-1.5, 8, mode="auto").mode == FLOAT  # 1/1.5 not dyadic
    assert build_u(-1.5, 8, mode="float").mode == FLOAT
    with pytest.raises(ExactnessError):
        build_u(-1.5, 8, mode="exact")


def test_bundle_regime_and_gap():
    b = build_counterexample(Dyadic(-2), depth=8)
    assert classify_regime(b.R) == Regime.Case4_NonUniqueOpposite
    assert solution_gap(b) == (Dyadic(3), Dyadic(0))
    assert check_identities(b)


def test_m_minus_mbar_is_u():
    b = build_counterexample(Dyadic(-2), depth=12)
    for i, t in enumerate(b.u.times):
        mv = b.decomp.m.values[i]
        mbv = b.decomp.mbar.values[i]
        assert mv[0] - mbv[0] == b.u.values[i][0]
        assert mv[1] - mbv[1] == b.u.values[i][1]


def test_driving_function_is_negated_min():
    b = build_counterexample(Dyadic(-2), depth=8)
    rm = matrix_apply(b.R.a1, b.R.a2, b.decomp.m)
    rmb = matrix_apply(b.R.a1, b.R.a2, b.decomp.mbar)
    low = path_min(rm, rmb)
    f2, low2 = b.f, low
    for t in low.times:
        fv = f2.eval(t)
        lv = low2.eval(t)
        assert fv[0] == -lv[0] and fv[1] == -lv[1]


def test_both_triples_verify_exactly():
    b = build_counterexample(Dyadic(-2), depth=8)
    assert verify(b.triple(), tol=0).passed
    assert verify(b.triple_bar(), tol=0).passed


def test_complementarity_integrals_vanish():
    b = build_counterexample(Dyadic(-2), depth=8)
    for tr in (b.triple(), b.triple_bar()):
        g2, m2 = tr.g, tr.m
        for j in (0, 1):
            assert stieltjes(g2, m2, j) == 0


def test_tail_bound_shrinks_with_depth():
    b8 = build_counterexample(Dyadic(-2), depth=8)
    b16 = build_counterexample(Dyadic(-2), depth=16)
    assert b16.tail_bound < b8.tail_bound
    assert b16.tail_bound == Dyadic(1, -6)  # 4 * (1/2)^8


def test_other_slopes_exact_when_power_of_two():
    b = build_counterexample(Dyadic(-4), depth=8)
    assert b.u.mode == EXACT
    assert solution_gap(b) == (Dyadic(5), Dyadic(0))
    assert verify(b.triple(), tol=0).passed
    assert verify(b.triple_bar(), tol=0).passed


def test_float_mode_verifies_loosely():
    b = build_counterexample(-1.5, depth=8, mode="float")
    assert b.u.mode == FLOAT
    assert verify(b.triple(), tol=1e-12).passed
    gap = solution_gap(b)
    assert gap[0] == pytest.approx(2.5, abs=1e-12)
    assert gap[1] == pytest.approx(0.0, abs=1e-12)
