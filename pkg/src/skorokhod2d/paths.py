"""Piecewise-linear planar paths and exact path arithmetic.

Paths are immutable: a strictly increasing time grid plus one plane point per
grid time, linearly interpolated in between. Every path is either in exact
mode (all scalars Dyadic, no operation ever rounds) or float mode (IEEE
doubles). The two modes never mix inside one path or one binary operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .dyadic import Dyadic, to_dyadic
from .errors import DomainError, UsageError

Scalar = Union[Dyadic, float]
Vec2 = tuple[Scalar, Scalar]

EXACT = "exact"
FLOAT = "float"

#: relative spacing below which float-mode breakpoints are considered equal
FLOAT_DEDUP = 2.0**-40


def _check_mode(mode: str) -> None:
    if mode not in (EXACT, FLOAT):
        raise UsageError(f"unknown mode {mode!r}")


def _coerce_scalar(x, mode: str) -> Scalar:
    if mode == EXACT:
        return to_dyadic(x)
    return float(x)


@dataclass(frozen=True)
class PLPath2:
    """Continuous piecewise-linear path t -> (x1, x2) on [times[0], times[-1]]."""

    times: tuple
    values: tuple
    mode: str = FLOAT

    def __post_init__(self):
        _check_mode(self.mode)
        times = tuple(_coerce_scalar(t, self.mode) for t in self.times)
        values = tuple(
            (_coerce_scalar(v[0], self.mode), _coerce_scalar(v[1], self.mode))
            for v in self.values
        )
        if len(times) != len(values) or not times:
            raise UsageError("times and values must be equal-length and nonempty")
        for a, b in zip(times, times[1:]):
            if not a < b:
                raise UsageError("times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    # --- basic queries ----------------------------------------------------

    @property
    def start_time(self) -> Scalar:
        return self.times[0]

    @property
    def end_time(self) -> Scalar:
        return self.times[-1]

    def __len__(self) -> int:
        return len(self.times)

    def component(self, j: int) -> tuple:
        return tuple(v[j] for v in self.values)

    def eval(self, t) -> Vec2:
        """Value at time t; exact linear interpolation between breakpoints."""
        t = _coerce_scalar(t, self.mode)
        times = self.times
        if t < times[0] or t > times[-1]:
            raise DomainError(f"t={t} outside [{times[0]}, {times[-1]}]")
        lo, hi = 0, len(times) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if times[mid] <= t:
                lo = mid
            else:
                hi = mid - 1
        if times[lo] == t:
            return self.values[lo]
        return _interp(times[lo], times[lo + 1], self.values[lo], self.values[lo + 1], t, self.mode)

    def segments(self) -> Iterable[tuple]:
        """Yield (t0, t1, v0, v1) per linear piece."""
        for i in range(len(self.times) - 1):
            yield self.times[i], self.times[i + 1], self.values[i], self.values[i + 1]

    def map_values(self, fn) -> "PLPath2":
        """New path with the same grid and values fn((x1, x2)) -> (y1, y2)."""
        return PLPath2(self.times, tuple(fn(v) for v in self.values), self.mode)


@dataclass(frozen=True)
class MonotoneDecomp:
    """Jordan decomposition pieces: both componentwise nondecreasing."""

    m: PLPath2
    mbar: PLPath2


def _interp(t0, t1, v0, v1, t, mode: str) -> Vec2:
    if mode == FLOAT:
        th = (t - t0) / (t1 - t0)
        return (v0[0] + th * (v1[0] - v0[0]), v0[1] + th * (v1[1] - v0[1]))
    th = (t.as_fraction() - t0.as_fraction()) / (t1.as_fraction() - t0.as_fraction())
    out = []
    for a, b in zip(v0, v1):
        val = a.as_fraction() + th * (b.as_fraction() - a.as_fraction())
        out.append(Dyadic.from_fraction(val))
    return (out[0], out[1])


# --- grid refinement -------------------------------------------------------


def _merge_times(a: Sequence, b: Sequence, mode: str) -> list:
    merged: list = []
    i = j = 0
    while i < len(a) or j < len(b):
        if j >= len(b):
            t = a[i]
            i += 1
        elif i >= len(a):
            t = b[j]
            j += 1
        elif a[i] < b[j]:
            t = a[i]
            i += 1
        elif b[j] < a[i]:
            t = b[j]
            j += 1
        else:
            t = a[i]
            i += 1
            j += 1
        if merged and _times_equal(merged[-1], t, mode):
            continue
        merged.append(t)
    return merged


def _times_equal(s, t, mode: str) -> bool:
    if mode == EXACT:
        return s == t
    return abs(t - s) <= FLOAT_DEDUP * max(1.0, abs(s), abs(t))


def with_times(path: PLPath2, new_times: Sequence) -> PLPath2:
    """Re-grid a path onto a superset of breakpoint times; values unchanged."""
    values = []
    orig = dict()
    if path.mode == EXACT:
        orig = {t: v for t, v in zip(path.times, path.values)}
    lo, hi = path.start_time, path.end_time
    for t in new_times:
        if path.mode == EXACT and t in orig:
            values.append(orig[t])
        else:
            if path.mode == FLOAT:
                t = min(max(t, lo), hi)  # dedup slack can push just past the ends
            values.append(path.eval(t))
    return PLPath2(tuple(new_times), tuple(values), path.mode)


def refine(p: PLPath2, q: PLPath2) -> tuple[PLPath2, PLPath2]:
    """Put two paths on the union of their breakpoint grids."""
    _require_compatible(p, q)
    merged = _merge_times(p.times, q.times, p.mode)
    return with_times(p, merged), with_times(q, merged)


def _require_compatible(p: PLPath2, q: PLPath2) -> None:
    if p.mode != q.mode:
        raise UsageError(f"mode mismatch: {p.mode} vs {q.mode}")
    if not _times_equal(p.start_time, q.start_time, p.mode) or not _times_equal(
        p.end_time, q.end_time, p.mode
    ):
        raise UsageError("paths must share start and end times")


# --- Jordan decomposition ---------------------------------------------------


def jordan_decompose(u: PLPath2) -> MonotoneDecomp:
    """Minimal split of increments: u(t) = u(t0) + m(t) - mbar(t).

    On each segment every coordinate's increment goes wholly to m if positive,
    wholly to mbar if negative, so m and mbar never increase together.
    """
    zero = _coerce_scalar(0, u.mode)
    m_vals = [(zero, zero)]
    mb_vals = [(zero, zero)]
    for i in range(1, len(u.times)):
        m_new, mb_new = [], []
        for j in (0, 1):
            d = u.values[i][j] - u.values[i - 1][j]
            if d > zero:
                m_new.append(m_vals[-1][j] + d)
                mb_new.append(mb_vals[-1][j])
            else:
                m_new.append(m_vals[-1][j])
                mb_new.append(mb_vals[-1][j] - d)
        m_vals.append((m_new[0], m_new[1]))
        mb_vals.append((mb_new[0], mb_new[1]))
    return MonotoneDecomp(
        PLPath2(u.times, tuple(m_vals), u.mode),
        PLPath2(u.times, tuple(mb_vals), u.mode),
    )


# --- lattice / linear operations ---------------------------------------------


def _crossing_time(t0, t1, d0, d1, mode: str):
    """Root of the linear function through (t0, d0), (t1, d1); strict sign change assumed."""
    if mode == FLOAT:
        return t0 + (t1 - t0) * (d0 / (d0 - d1))
    th = d0.as_fraction() / (d0.as_fraction() - d1.as_fraction())
    val = t0.as_fraction() + th * (t1.as_fraction() - t0.as_fraction())
    return Dyadic.from_fraction(val)


def _insert_crossings(p: PLPath2, diffs: Sequence[Vec2]) -> list:
    """Times where any diff coordinate strictly changes sign inside a segment."""
    zero = _coerce_scalar(0, p.mode)
    crossings = []
    for i in range(len(p.times) - 1):
        for j in (0, 1):
            d0, d1 = diffs[i][j], diffs[i + 1][j]
            if (d0 > zero and d1 < zero) or (d0 < zero and d1 > zero):
                crossings.append(
                    _crossing_time(p.times[i], p.times[i + 1], d0, d1, p.mode)
                )
    if not crossings:
        return list(p.times)
    crossings.sort(key=lambda t: t.as_fraction() if p.mode == EXACT else t)
    return _merge_times(p.times, crossings, p.mode)


def path_min(p: PLPath2, q: PLPath2) -> PLPath2:
    """Componentwise min; inserts exact crossing breakpoints so result is PL."""
    p, q = refine(p, q)
    diffs = [(a[0] - b[0], a[1] - b[1]) for a, b in zip(p.values, q.values)]
    grid = _insert_crossings(p, diffs)
    p, q = with_times(p, grid), with_times(q, grid)
    vals = tuple((min(a[0], b[0]), min(a[1], b[1])) for a, b in zip(p.values, q.values))
    return PLPath2(p.times, vals, p.mode)


def path_add(p: PLPath2, q: PLPath2) -> PLPath2:
    p, q = refine(p, q)
    vals = tuple((a[0] + b[0], a[1] + b[1]) for a, b in zip(p.values, q.values))
    return PLPath2(p.times, vals, p.mode)


def path_sub(p: PLPath2, q: PLPath2) -> PLPath2:
    p, q = refine(p, q)
    vals = tuple((a[0] - b[0], a[1] - b[1]) for a, b in zip(p.values, q.values))
    return PLPath2(p.times, vals, p.mode)


def negate(p: PLPath2) -> PLPath2:
    return p.map_values(lambda v: (-v[0], -v[1]))


def _part(p: PLPath2, sign: int) -> PLPath2:
    zero = _coerce_scalar(0, p.mode)
    grid = _insert_crossings(p, p.values)
    p = with_times(p, grid)

    def clip(x):
        if sign > 0:
            return x if x > zero else zero
        return -x if x < zero else zero

    return p.map_values(lambda v: (clip(v[0]), clip(v[1])))


def plus_part(p: PLPath2) -> PLPath2:
    """Componentwise positive part, with zero-crossing breakpoints inserted."""
    return _part(p, +1)


def minus_part(p: PLPath2) -> PLPath2:
    """Componentwise negative part (nonnegative result)."""
    return _part(p, -1)


def matrix_apply(a1, a2, p: PLPath2) -> PLPath2:
    """Image under R = [[1, a1], [a2, 1]], applied breakpoint-wise."""
    a1 = _coerce_scalar(a1, p.mode)
    a2 = _coerce_scalar(a2, p.mode)
    return p.map_values(lambda v: (v[0] + a1 * v[1], a2 * v[0] + v[1]))


def scale_components(p: PLPath2, c1, c2) -> PLPath2:
    c1 = _coerce_scalar(c1, p.mode)
    c2 = _coerce_scalar(c2, p.mode)
    return p.map_values(lambda v: (c1 * v[0], c2 * v[1]))


# --- Stieltjes integration ---------------------------------------------------


def stieltjes(g: PLPath2, m: PLPath2, j: int) -> Scalar:
    """∫ g_j dm_j via the trapezoid rule, exact for PL integrand and integrator."""
    g, m = refine(g, m)
    zero = _coerce_scalar(0, g.mode)
    slack = zero if g.mode == EXACT else FLOAT_DEDUP * max(
        1.0, *(abs(v[j]) for v in m.values)
    )
    total = zero
    for i in range(len(g.times) - 1):
        dm = m.values[i + 1][j] - m.values[i][j]
        if dm < -slack:
            raise UsageError(f"integrator decreases on segment {i}")
        total = total + (g.values[i][j] + g.values[i + 1][j]) * dm / 2
    return total


def total_variation(p: PLPath2, j: int) -> Scalar:
    zero = _coerce_scalar(0, p.mode)
    tv = zero
    for i in range(len(p.times) - 1):
        tv = tv + abs(p.values[i + 1][j] - p.values[i][j])
    return tv


def sup_distance(p: PLPath2, q: PLPath2) -> Scalar:
    """Sup-norm distance; exact for PL paths (attained at union breakpoints)."""
    p, q = refine(p, q)
    return max(
        max(abs(a[0] - b[0]), abs(a[1] - b[1])) for a, b in zip(p.values, q.values)
    )
