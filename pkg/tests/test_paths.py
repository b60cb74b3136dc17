import json

import pytest
from hypothesis import given, strategies as st

from skorokhod2d import serialize
from skorokhod2d.counterexample import build_u
from skorokhod2d.dyadic import Dyadic
from skorokhod2d.errors import DomainError, UsageError
from skorokhod2d.paths import (
    EXACT,
    FLOAT,
    PLPath2,
    jordan_decompose,
    matrix_apply,
    minus_part,
    path_min,
    path_sub,
    plus_part,
    refine,
    stieltjes,
    sup_distance,
)


def exact_path(times, values):
    return PLPath2(tuple(times), tuple(values), EXACT)


def test_eval_counterexample_breakpoints():
    u = build_u(Dyadic(-2), 8)
    assert u.eval(1) == (Dyadic(-1), Dyadic(1))
    # midpoint of [1/2, 1] between (-1, -1/2) and (-1, 1)
    assert u.eval(Dyadic(3, -2)) == (Dyadic(-1), Dyadic(1, -2))


def test_eval_breakpoint_identity_and_domain():
    p = exact_path([0, 1, 2], [(0, 0), (1, -1), (3, 5)])
    for t, v in zip(p.times, p.values):
        assert p.eval(t) == v
    with pytest.raises(DomainError):
        p.eval(3)
    with pytest.raises(DomainError):
        p.eval(-1)


def test_refine_union_grid():
    p = exact_path([0, 1], [(0, 0), (2, 2)])
    q = exact_path([0, Dyadic(1, -1), 1], [(0, 0), (1, 0), (0, 0)])
    p2, q2 = refine(p, q)
    assert p2.times == q2.times == (Dyadic(0), Dyadic(1, -1), Dyadic(1))
    assert p2.eval(Dyadic(1, -1)) == (Dyadic(1, -1) * 2, Dyadic(1))


def test_refine_idempotent_and_mode_checks():
    p = exact_path([0, 1], [(0, 0), (1, 1)])
    p2, p3 = refine(p, p)
    assert p2.times == p.times and p2.values == p.values
    q = PLPath2((0.0, 1.0), ((0.0, 0.0), (1.0, 1.0)), FLOAT)
    with pytest.raises(UsageError):
        refine(p, q)
    r = exact_path([0, 2], [(0, 0), (1, 1)])
    with pytest.raises(UsageError):
        refine(p, r)


def test_refine_preserves_counterexample_pair():
    u = build_u(Dyadic(-2), 8)
    ru = matrix_apply(Dyadic(-2), Dyadic(1), u)
    u2, ru2 = refine(u, ru)
    for k in range(10):
        t = Dyadic(1 + 2 * k, -5)  # random-ish dyadic times in (0, 1)
        if t < u.start_time:
            continue
        assert u2.eval(t) == u.eval(t)
        assert ru2.eval(t) == ru.eval(t)


def test_jordan_single_segment():
    p = exact_path([0, 1], [(0, 0), (2, -3)])
    d = jordan_decompose(p)
    assert d.m.values[-1] == (Dyadic(2), Dyadic(0))
    assert d.mbar.values[-1] == (Dyadic(0), Dyadic(3))
    assert d.m.eval(Dyadic(1, -1)) == (Dyadic(1), Dyadic(0))


def test_jordan_constant_path():
    p = exact_path([0, 1], [(5, 5), (5, 5)])
    d = jordan_decompose(p)
    assert all(v == (Dyadic(0), Dyadic(0)) for v in d.m.values)
    assert all(v == (Dyadic(0), Dyadic(0)) for v in d.mbar.values)


def test_jordan_counterexample_quarter_turn():
    # across [t2, t1] = [1/4, 1/2], u1 moves from 1/2 to -1: mass 3/2 on the
    # decreasing part
    u = build_u(Dyadic(-2), 8)
    d = jordan_decompose(u)
    quarter, half = Dyadic(1, -2), Dyadic(1, -1)
    inc = d.mbar.eval(half)[0] - d.mbar.eval(quarter)[0]
    assert inc == Dyadic(3, -1)
    assert d.m.eval(half)[0] - d.m.eval(quarter)[0] == 0


def test_jordan_reconstructs_path():
    u = build_u(Dyadic(-2), 12)
    d = jordan_decompose(u)
    u0 = u.values[0]
    for i in range(len(u.times)):
        for j in (0, 1):
            assert u0[j] + d.m.values[i][j] - d.mbar.values[i][j] == u.values[i][j]


def test_jordan_minimality_on_counterexample():
    u = build_u(Dyadic(-2), 12)
    d = jordan_decompose(u)
    for i in range(len(u.times) - 1):
        for j in (0, 1):
            dm = d.m.values[i + 1][j] - d.m.values[i][j]
            dmb = d.mbar.values[i + 1][j] - d.mbar.values[i][j]
            assert dm == 0 or dmb == 0


def test_min_inserts_crossing():
    p = exact_path([0, 1], [(0, 0), (1, 0)])
    q = exact_path([0, 1], [(1, 0), (0, 0)])
    m = path_min(p, q)
    assert Dyadic(1, -1) in m.times
    assert m.eval(Dyadic(1, -1))[0] == Dyadic(1, -1)
    assert m.values[0][0] == 0 and m.values[-1][0] == 0


def test_plus_part_of_negative_constant():
    p = exact_path([0, 1], [(-1, -1), (-1, -1)])
    pp = plus_part(p)
    assert all(v == (Dyadic(0), Dyadic(0)) for v in pp.values)


def test_matrix_image_and_parts_at_counterexample_end():
    u = build_u(Dyadic(-2), 8)
    ru = matrix_apply(Dyadic(-2), Dyadic(1), u)
    assert ru.eval(1) == (Dyadic(-3), Dyadic(0))
    assert plus_part(ru).eval(1) == (Dyadic(0), Dyadic(0))
    assert minus_part(ru).eval(1) == (Dyadic(3), Dyadic(0))


def test_lattice_identities_at_breakpoints():
    # p - q crosses zero at segment midpoints, so crossings stay dyadic
    p = exact_path([0, Dyadic(1, -1), 1], [(3, -2), (-1, 5), (0, 0)])
    q = exact_path([0, Dyadic(1, -1), 1], [(1, 1), (1, 2), (4, 0)])
    low = path_min(p, q)
    diff = path_sub(p, q)
    lhs1 = path_sub(p, low)
    lhs2 = path_sub(q, low)
    pp, mm = plus_part(diff), minus_part(diff)
    assert sup_distance(lhs1, pp) == 0
    assert sup_distance(lhs2, mm) == 0


def test_stieltjes_examples():
    g = exact_path([0, 1], [(0, 0), (1, 0)])
    m = exact_path([0, 1], [(0, 0), (1, 0)])
    assert stieltjes(g, m, 0) == Dyadic(1, -1)
    zero = exact_path([0, 1], [(0, 0), (0, 0)])
    assert stieltjes(zero, m, 0) == 0
    decreasing = exact_path([0, 1], [(1, 0), (0, 0)])
    with pytest.raises(UsageError):
        stieltjes(g, decreasing, 0)


def test_stieltjes_refinement_invariant():
    g = exact_path([0, 1], [(2, 0), (0, 0)])
    m = exact_path([0, 1], [(0, 0), (4, 0)])
    base = stieltjes(g, m, 0)
    fine = exact_path([0, Dyadic(1, -2), Dyadic(1, -1), 1],
                      [(0, 0), (1, 0), (2, 0), (4, 0)])
    assert stieltjes(g, fine, 0) == base == Dyadic(4)


def test_stieltjes_nonnegative_for_nonneg_integrand():
    g = exact_path([0, 1, 2], [(1, 0), (0, 0), (3, 0)])
    m = exact_path([0, 1, 2], [(0, 0), (2, 0), (2, 0)])
    assert stieltjes(g, m, 0) >= 0


def test_json_round_trip_exact_bit_identical():
    u = build_u(Dyadic(-2), 8)
    doc = serialize.path_to_json(u)
    again = serialize.path_from_json(json.loads(json.dumps(doc)))
    assert again.times == u.times and again.values == u.values
    assert serialize.path_to_json(again) == doc


def test_csv_export():
    u = build_u(Dyadic(-2), 4)
    csv = serialize.path_to_csv(u)
    lines = csv.strip().splitlines()
    assert lines[0] == "t,x1,x2"
    assert len(lines) == len(u.times) + 1
    assert lines[-1] == "1,-1,1"


small_dyadics = st.builds(
    Dyadic, st.integers(min_value=-64, max_value=64), st.integers(min_value=-6, max_value=2)
)


@st.composite
def exact_paths(draw):
    n = draw(st.integers(min_value=2, max_value=6))
    times = [Dyadic(i) for i in range(n)]
    values = [(draw(small_dyadics), draw(small_dyadics)) for _ in range(n)]
    return PLPath2(tuple(times), tuple(values), EXACT)


@given(exact_paths())
def test_jordan_round_trip_property(u):
    d = jordan_decompose(u)
    u0 = u.values[0]
    for i in range(len(u.times)):
        for j in (0, 1):
            assert u0[j] + d.m.values[i][j] - d.mbar.values[i][j] == u.values[i][j]
            assert d.m.values[i][j] >= 0 and d.mbar.values[i][j] >= 0


@st.composite
def dyadic_crossing_pairs(draw):
    # build q = p - diff where diff only changes sign by exact negation, so
    # every zero crossing of p - q lands at a segment midpoint
    p = draw(exact_paths())
    n = len(p.times)
    mags = (draw(small_dyadics).__abs__() + Dyadic(1),
            draw(small_dyadics).__abs__() + Dyadic(1))
    signs = [(draw(st.sampled_from([-1, 0, 1])), draw(st.sampled_from([-1, 0, 1])))
             for _ in range(n)]
    qv = tuple(
        (p.values[i][0] - mags[0] * s1, p.values[i][1] - mags[1] * s2)
        for i, (s1, s2) in enumerate(signs)
    )
    return p, PLPath2(p.times, qv, EXACT)


@given(dyadic_crossing_pairs())
def test_lattice_identity_property(pq):
    p, q = pq
    low = path_min(p, q)
    diff = path_sub(p, q)
    assert sup_distance(path_sub(p, low), plus_part(diff)) == 0
    assert sup_distance(path_sub(q, low), minus_part(diff)) == 0
