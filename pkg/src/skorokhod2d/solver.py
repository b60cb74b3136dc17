"""Numerical solvers: reflection-map Picard iteration and LCP time stepping.

Both solvers work in float mode. The fixed-point solver iterates the
one-dimensional regulator map coordinate-wise (Gauss-Seidel sweeps, optional
damping) and then inserts the complementarity kink times into the grid so the
converged output is piecewise linear through the true solution's breakpoints.
The grid solver marches in time: within each step the active set is constant,
rates solve a small complementarity problem by support enumeration, and the
step is subdivided at the exact times where a slack coordinate hits zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .classify import ReflectionMatrix2, is_completely_s
from .errors import StepInfeasibleError, UsageError
from .paths import FLOAT, PLPath2

#: admissibility slack for support enumeration
STEP_EPS = 2.0**-40


@dataclass
class SolveConfig:
    tol: float = 1e-9
    max_iter: int = 10000
    grid: Optional[Sequence[float]] = None
    damping: float = 1.0

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("tol must be positive")
        if self.max_iter < 1:
            raise UsageError("max_iter must be >= 1")
        if not 0 < self.damping <= 1:
            raise UsageError("damping must be in (0, 1]")
        if self.grid is not None:
            g = np.asarray(self.grid, dtype=float)
            if g.ndim != 1 or len(g) < 2 or np.any(np.diff(g) <= 0):
                raise UsageError("grid must be strictly increasing with >= 2 points")
            self.grid = g


@dataclass
class SolveResult:
    g: PLPath2
    m: PLPath2
    iterations: int
    converged: bool
    residual: float


def skorokhod_1d(h: np.ndarray) -> np.ndarray:
    """One-dimensional regulator on a grid: m(t) = max_{s<=t} (-h(s))^+."""
    h = np.asarray(h, dtype=float)
    return np.maximum.accumulate(np.maximum(-h, 0.0))


def _grid_for(f: PLPath2, cfg: SolveConfig) -> np.ndarray:
    times = np.asarray(f.times, dtype=float)
    if cfg.grid is not None:
        # keep f's breakpoints so the sampled f is the exact path
        return _merge_grid(np.asarray(cfg.grid, dtype=float), list(times))
    return times


def _sample(f: PLPath2, grid: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    t = np.asarray(f.times, dtype=float)
    f1 = np.interp(grid, t, np.asarray(f.component(0), dtype=float))
    f2 = np.interp(grid, t, np.asarray(f.component(1), dtype=float))
    return f1, f2


def _check_driving(f: PLPath2) -> None:
    if f.mode != FLOAT:
        raise UsageError("solvers run in float mode only")
    v0 = f.values[0]
    if v0[0] < 0 or v0[1] < 0:
        raise UsageError("driving function must have f(start) >= 0")


def solve_fixed_point(
    R: ReflectionMatrix2,
    f: PLPath2,
    cfg: SolveConfig,
    init: Optional[tuple[np.ndarray, np.ndarray]] = None,
) -> SolveResult:
    """Picard iteration of the coupled 1D regulators.

    Geometric convergence when sqrt(|a1*a2|) < 1; damping < 1 extends the
    practical reach near the critical case without any convergence claim.
    After convergence the grid is enriched with the kink times where each
    regulator starts moving, so complementarity holds to machine precision.
    """
    _check_driving(f)
    a1, a2 = float(R.a1), float(R.a2)
    lam = cfg.damping
    grid = _grid_for(f, cfg)
    f1, f2 = _sample(f, grid)

    if init is not None:
        m1 = np.asarray(init[0], dtype=float).copy()
        m2 = np.asarray(init[1], dtype=float).copy()
        if len(m1) != len(grid) or len(m2) != len(grid):
            raise UsageError("init arrays must match the grid length")
    else:
        m1 = np.zeros_like(grid)
        m2 = np.zeros_like(grid)

    total_iters = 0
    converged = False
    diff = np.inf
    scale = max(1.0, np.max(np.abs(f1)), np.max(np.abs(f2)))

    for _round in range(250):
        converged = False
        for _ in range(cfg.max_iter):
            total_iters += 1
            m1_new = (1 - lam) * m1 + lam * skorokhod_1d(f1 + a1 * m2)
            m2_new = (1 - lam) * m2 + lam * skorokhod_1d(f2 + a2 * m1_new)
            diff = max(
                float(np.max(np.abs(m1_new - m1))), float(np.max(np.abs(m2_new - m2)))
            )
            m1, m2 = m1_new, m2_new
            if diff < cfg.tol:
                converged = True
                break
        if not converged:
            break
        new_times = _kink_times(grid, (f1, f2), (m1, m2), (a1, a2), scale)
        if not new_times:
            break
        enriched = _merge_grid(grid, new_times)
        if len(enriched) == len(grid):
            break
        f1, f2 = _sample(f, enriched)
        m1 = np.interp(enriched, grid, m1)
        m2 = np.interp(enriched, grid, m2)
        grid = enriched

    g1 = f1 + m1 + a1 * m2
    g2 = f2 + a2 * m1 + m2
    g_path = PLPath2(tuple(grid), tuple(zip(g1, g2)), FLOAT)
    m_path = PLPath2(tuple(grid), tuple(zip(m1, m2)), FLOAT)
    return SolveResult(g_path, m_path, total_iters, converged, float(diff))


def _merge_grid(grid: np.ndarray, extra: list[float]) -> np.ndarray:
    """Union of grid and extra times, dropping near-duplicates."""
    merged = np.unique(np.concatenate([grid, np.asarray(extra, dtype=float)]))
    span = max(1.0, abs(float(merged[-1])), abs(float(merged[0])))
    keep = np.concatenate([[True], np.diff(merged) > 1e-13 * span])
    merged = merged[keep]
    # never lose the final endpoint to dedup
    merged[-1] = grid[-1]
    return merged


def _kink_times(grid, fs, ms, coeffs, scale) -> list[float]:
    """Times where a regulator starts increasing strictly inside a segment."""
    f1, f2 = fs
    m1, m2 = ms
    a1, a2 = coeffs
    g1 = f1 + m1 + a1 * m2
    g2 = f2 + a2 * m1 + m2
    out: list[float] = []
    for m, g in ((m1, g1), (m2, g2)):
        dm = np.diff(m)
        # segments whose trapezoid contribution to int g dm is non-negligible
        contrib = 0.5 * (g[:-1] + g[1:]) * dm
        for i in np.nonzero(contrib > 1e-15 * scale)[0]:
            phi0 = g[i]
            phi1 = g[i + 1] - dm[i]
            if phi0 > 0 > phi1:
                theta = phi0 / (phi0 - phi1)
            else:
                theta = 0.5
            if 1e-9 < theta < 1 - 1e-9:
                out.append(grid[i] + theta * (grid[i + 1] - grid[i]))
    return out


# --- discrete complementarity stepping ---------------------------------------


def _support_candidates(a1: float, a2: float, q1: float, q2: float):
    """(support size, dm, g) for each of the four support sets, in order."""
    out = [(0, (0.0, 0.0), (q1, q2))]
    out.append((1, (-q1, 0.0), (0.0, q2 + a2 * -q1)))
    out.append((1, (0.0, -q2), (q1 + a1 * -q2, 0.0)))
    det = 1.0 - a1 * a2
    if abs(det) > 1e-12:
        dm1 = (-q1 + a1 * q2) / det
        dm2 = (-q2 + a2 * q1) / det
        out.append((2, (dm1, dm2), (0.0, 0.0)))
    return out


def lcp_step(
    R: ReflectionMatrix2, g_prev, delta_f, eps: float = STEP_EPS
) -> tuple[tuple[float, float], tuple[float, float]]:
    """One complementarity step: find dm >= 0 with g_next = g_prev + df + R dm >= 0
    and dm complementary to g_next, by enumerating the four support sets.

    Ties (possible for completely-S but non-P matrices) break to the smallest
    support, then the lexicographically smallest dm.
    """
    a1, a2 = float(R.a1), float(R.a2)
    q1 = float(g_prev[0]) + float(delta_f[0])
    q2 = float(g_prev[1]) + float(delta_f[1])
    slack = eps * max(1.0, abs(q1), abs(q2))

    best = None
    for size, dm, g in _support_candidates(a1, a2, q1, q2):
        if min(dm) < -slack or min(g) < -slack:
            continue
        key = (size, dm)
        if best is None or key < best[0]:
            best = (key, dm, g)
    if best is None:
        raise StepInfeasibleError("no admissible support set")
    _, dm, g = best
    dm = (max(dm[0], 0.0), max(dm[1], 0.0))
    g = (max(g[0], 0.0), max(g[1], 0.0))
    return g, dm


def _rate_lcp(a1: float, a2: float, active: tuple[bool, bool], s1: float, s2: float):
    """Complementarity on rates, restricted to the active coordinates.

    Inactive coordinates keep dm-rate 0 and an unconstrained g-rate; active
    ones need g-rate >= 0 complementary to dm-rate >= 0.
    """
    eps = STEP_EPS * max(1.0, abs(s1), abs(s2))
    candidates = []  # (size, dm_rate)
    candidates.append((0, (0.0, 0.0)))
    if active[0]:
        candidates.append((1, (-s1, 0.0)))
    if active[1]:
        candidates.append((2, (0.0, -s2)))
    det = 1.0 - a1 * a2
    if active[0] and active[1] and abs(det) > 1e-12:
        candidates.append(
            (3, ((-s1 + a1 * s2) / det, (-s2 + a2 * s1) / det))
        )
    best = None
    for _, dm in candidates:
        if min(dm) < -eps:
            continue
        g1r = s1 + dm[0] + a1 * dm[1]
        g2r = s2 + a2 * dm[0] + dm[1]
        if active[0] and dm[0] <= eps and g1r < -eps:
            continue
        if active[1] and dm[1] <= eps and g2r < -eps:
            continue
        size = (dm[0] > eps) + (dm[1] > eps)
        key = (size, dm)
        if best is None or key < best[0]:
            best = (key, dm, (g1r, g2r))
    if best is None:
        return None
    _, dm, gr = best
    return (max(dm[0], 0.0), max(dm[1], 0.0)), gr


def solve_grid(R: ReflectionMatrix2, f: PLPath2, cfg: SolveConfig) -> SolveResult:
    """Time-marching solver for any completely-S matrix.

    Each grid step applies the rate complementarity problem for the current
    active set and subdivides at the exact instants where a positive
    coordinate of g reaches zero, so the output is the PL solution with its
    true breakpoints (up to float rounding).
    """
    _check_driving(f)
    if not is_completely_s(ReflectionMatrix2(float(R.a1), float(R.a2))):
        raise UsageError("grid solver requires a completely-S matrix")
    a1, a2 = float(R.a1), float(R.a2)
    grid = _grid_for(f, cfg)
    f1, f2 = _sample(f, grid)
    scale = max(1.0, float(np.max(np.abs(f1))), float(np.max(np.abs(f2))))
    act_eps = 1e-12 * scale

    times = [float(grid[0])]
    g_vals = [(max(f1[0], 0.0), max(f2[0], 0.0))]
    m_vals = [(0.0, 0.0)]
    steps = 0

    for k in range(len(grid) - 1):
        ta, tb = float(grid[k]), float(grid[k + 1])
        s1 = (f1[k + 1] - f1[k]) / (tb - ta)
        s2 = (f2[k + 1] - f2[k]) / (tb - ta)
        t = ta
        g1, g2 = g_vals[-1]
        mm1, mm2 = m_vals[-1]
        events = 0
        while t < tb - 1e-15 * max(1.0, tb):
            events += 1
            if events > 1000:
                raise StepInfeasibleError("event cascade did not terminate", k)
            active = (g1 <= act_eps, g2 <= act_eps)
            rates = _rate_lcp(a1, a2, active, s1, s2)
            if rates is None:
                raise StepInfeasibleError("no admissible rate support", k)
            (dm1, dm2), (gr1, gr2) = rates
            tau = tb - t
            if not active[0] and gr1 < -act_eps:
                tau = min(tau, g1 / -gr1)
            if not active[1] and gr2 < -act_eps:
                tau = min(tau, g2 / -gr2)
            t = min(t + tau, tb)
            g1 = max(g1 + tau * gr1, 0.0) if gr1 < 0 else g1 + tau * gr1
            g2 = max(g2 + tau * gr2, 0.0) if gr2 < 0 else g2 + tau * gr2
            mm1 += tau * dm1
            mm2 += tau * dm2
            steps += 1
            times.append(t)
            g_vals.append((g1, g2))
            m_vals.append((mm1, mm2))

    g_path = PLPath2(tuple(times), tuple(g_vals), FLOAT)
    m_path = PLPath2(tuple(times), tuple(m_vals), FLOAT)
    return SolveResult(g_path, m_path, steps, True, 0.0)
