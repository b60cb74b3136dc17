"""Exact construction of the non-uniqueness example on the quadrant.

For a reflection matrix with a2 = 1 and a1 < -1 the spiral path u alternates
between the lines u1 + u2 = 0 and u1 + a1*u2 = 0, expanding by |a1| per
quarter turn as t grows through the dyadic times t_n = 2^-n. Its minimal
monotone decomposition (m, mbar) yields one driving function f with two
distinct solutions (f, g, m) and (f, gbar, mbar).

The accumulation point at t = 0 cannot be represented with finitely many
breakpoints, so a construction of depth d covers [2^-d, 1] exactly and
carries an analytic tail bound for the omitted initial interval. The
decomposition is offset by the split of u(2^-d) into positive and negative
parts so that m - mbar equals u itself, which keeps the solution gap at t = 1
exactly (|a1| + 1, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from .classify import ReflectionMatrix2
from .dyadic import Dyadic, to_dyadic
from .errors import ConstructionError, ExactnessError, UsageError
from .paths import (
    EXACT,
    FLOAT,
    MonotoneDecomp,
    PLPath2,
    Scalar,
    jordan_decompose,
    matrix_apply,
    minus_part,
    negate,
    path_min,
    path_sub,
    plus_part,
    refine,
    sup_distance,
)
from .verifier import SolutionTriple


@dataclass(frozen=True)
class CounterexampleBundle:
    R: ReflectionMatrix2
    u: PLPath2
    decomp: MonotoneDecomp  # offset so that m - mbar = u on the whole range
    f: PLPath2
    g: PLPath2
    gbar: PLPath2
    depth: int
    tail_bound: Scalar
    rho: Scalar  # contraction ratio 1/|a1| of the spiral

    def triple(self) -> SolutionTriple:
        return SolutionTriple(self.R, self.f, self.g, self.decomp.m, self.tail_bound)

    def triple_bar(self) -> SolutionTriple:
        return SolutionTriple(self.R, self.f, self.gbar, self.decomp.mbar, self.tail_bound)


def _resolve_mode(a1, mode: str):
    """Pick exact or float arithmetic; exact needs 1/|a1| to be dyadic."""
    if mode not in ("auto", EXACT, FLOAT):
        raise UsageError(f"unknown mode {mode!r}")
    if mode == FLOAT:
        return FLOAT, float(a1), 1.0 / abs(float(a1))
    try:
        a1d = to_dyadic(a1)
        rho = Dyadic(1) / abs(a1d)
        return EXACT, a1d, rho
    except (ExactnessError, TypeError):
        if mode == EXACT:
            raise ExactnessError(f"a1={a1!r} does not admit exact construction")
        return FLOAT, float(a1), 1.0 / abs(float(a1))


def build_u(a1, depth: int, mode: str = "auto") -> PLPath2:
    """The expanding spiral: breakpoints at t_n = 2^-n, n = depth..0.

    Every breakpoint lies on one of the two reference lines, and exactly one
    coordinate changes per segment, so the monotone decomposition reads off
    segment by segment.
    """
    if not a1 < -1:
        raise ConstructionError("spiral requires a1 < -1 (it must expand)")
    if depth < 4 or depth % 4:
        raise ConstructionError("depth must be a positive multiple of 4")
    use_mode, a1c, rho = _resolve_mode(a1, mode)

    pow_rho = [rho**0]
    for _ in range(depth + 2):
        pow_rho.append(pow_rho[-1] * rho)

    times, values = [], []
    for n in range(depth, -1, -1):
        k, r = divmod(n, 4)
        if r == 0:
            v = (-pow_rho[2 * k], pow_rho[2 * k])
        elif r == 1:
            v = (-pow_rho[2 * k], -pow_rho[2 * k + 1])
        elif r == 2:
            v = (pow_rho[2 * k + 1], -pow_rho[2 * k + 1])
        else:
            v = (pow_rho[2 * k + 1], pow_rho[2 * k + 2])
        times.append(Dyadic(1, -n) if use_mode == EXACT else 2.0**-n)
        values.append(v)
    u = PLPath2(tuple(times), tuple(values), use_mode)
    _guard_geometry(u, a1c)
    return u


def _guard_geometry(u: PLPath2, a1) -> None:
    """Line membership and one-coordinate-per-segment checks.

    These hold by construction for the generalized breakpoint formulas; the
    guard protects against regressions when a1 != -2.
    """
    slack = 0 if u.mode == EXACT else 2.0**-40
    for v in u.values:
        on_sum = abs(v[0] + v[1]) <= slack
        on_slope = abs(v[0] + a1 * v[1]) <= slack
        if not (on_sum or on_slope):
            raise ConstructionError(f"breakpoint {v} lies on neither reference line")
    for i in range(len(u.times) - 1):
        d1 = u.values[i + 1][0] - u.values[i][0]
        d2 = u.values[i + 1][1] - u.values[i][1]
        if (abs(d1) > slack) == (abs(d2) > slack):
            raise ConstructionError(f"segment {i} must change exactly one coordinate")


def build_counterexample(a1, depth: int = 40, mode: str = "auto") -> CounterexampleBundle:
    """Full bundle: spiral, decomposition, driving function and both solutions."""
    u = build_u(a1, depth, mode)
    use_mode = u.mode
    a1c = to_dyadic(a1) if use_mode == EXACT else float(a1)
    one = Dyadic(1) if use_mode == EXACT else 1.0
    zero = Dyadic(0) if use_mode == EXACT else 0.0
    R = ReflectionMatrix2(a1c, one)

    base = jordan_decompose(u)
    # Offset by the split of u(t_depth) so that m - mbar = u exactly; the
    # offset mass is part of the tail the finite range cannot represent.
    u0 = u.values[0]
    m_off = (max(u0[0], zero), max(u0[1], zero))
    mb_off = (max(-u0[0], zero), max(-u0[1], zero))
    m = base.m.map_values(lambda v: (v[0] + m_off[0], v[1] + m_off[1]))
    mbar = base.mbar.map_values(lambda v: (v[0] + mb_off[0], v[1] + mb_off[1]))

    rm = matrix_apply(R.a1, R.a2, m)
    rmbar = matrix_apply(R.a1, R.a2, mbar)
    f = negate(path_min(rm, rmbar))
    diff = path_sub(rm, rmbar)
    g = plus_part(diff)
    gbar = minus_part(diff)

    rho = Dyadic(1) / abs(a1c) if use_mode == EXACT else 1.0 / abs(a1c)
    tail_bound = 4 * rho ** (depth // 2)

    return CounterexampleBundle(
        R=R,
        u=u,
        decomp=MonotoneDecomp(m, mbar),
        f=f,
        g=g,
        gbar=gbar,
        depth=depth,
        tail_bound=tail_bound,
        rho=rho,
    )


def check_identities(bundle: CounterexampleBundle) -> bool:
    """g = Rm - (Rm ^ Rmbar) and gbar = Rmbar - (Rm ^ Rmbar) at breakpoints."""
    rm = matrix_apply(bundle.R.a1, bundle.R.a2, bundle.decomp.m)
    rmbar = matrix_apply(bundle.R.a1, bundle.R.a2, bundle.decomp.mbar)
    low = path_min(rm, rmbar)
    tol = 0 if bundle.u.mode == EXACT else 2.0**-40
    return (
        sup_distance(bundle.g, path_sub(rm, low)) <= tol
        and sup_distance(bundle.gbar, path_sub(rmbar, low)) <= tol
    )


def solution_gap(bundle: CounterexampleBundle):
    """|g - gbar| at the final time; (|a1| + 1, 0) for the canonical spiral."""
    end = bundle.g.end_time
    gv = bundle.g.eval(end)
    gbv = bundle.gbar.eval(end)
    return (abs(gv[0] - gbv[0]), abs(gv[1] - gbv[1]))
