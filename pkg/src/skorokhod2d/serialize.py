"""JSON and CSV encodings for paths, triples and solver output.

Exact scalars serialize as {"m": "<decimal-integer-string>", "e": <int>}
meaning m * 2^e; float scalars are plain JSON numbers. The round trip is
bit-identical in exact mode.
"""

from __future__ import annotations

import io
from typing import Any

from .classify import ReflectionMatrix2
from .counterexample import CounterexampleBundle
from .dyadic import Dyadic, to_dyadic
from .errors import UsageError
from .paths import EXACT, FLOAT, MonotoneDecomp, PLPath2
from .verifier import SolutionTriple


def scalar_to_json(x, mode: str) -> Any:
    if mode == EXACT:
        d = to_dyadic(x)
        return {"m": str(d.mantissa), "e": d.exp2}
    return float(x)


def scalar_from_json(obj: Any, mode: str):
    if mode == EXACT:
        if not isinstance(obj, dict) or set(obj) != {"m", "e"}:
            raise UsageError(f"malformed exact scalar: {obj!r}")
        return Dyadic(int(obj["m"]), int(obj["e"]))
    if isinstance(obj, dict):
        raise UsageError("exact scalar found in a float-mode document")
    return float(obj)


def path_to_json(p: PLPath2) -> dict:
    return {
        "mode": p.mode,
        "times": [scalar_to_json(t, p.mode) for t in p.times],
        "values": [
            [scalar_to_json(v[0], p.mode), scalar_to_json(v[1], p.mode)]
            for v in p.values
        ],
    }


def path_from_json(obj: dict) -> PLPath2:
    mode = obj.get("mode")
    if mode not in (EXACT, FLOAT):
        raise UsageError(f"unknown path mode: {mode!r}")
    times = tuple(scalar_from_json(t, mode) for t in obj["times"])
    values = tuple(
        (scalar_from_json(v[0], mode), scalar_from_json(v[1], mode))
        for v in obj["values"]
    )
    return PLPath2(times, values, mode)


def path_to_csv(p: PLPath2) -> str:
    """One row per breakpoint: t,x1,x2 (exact decimal strings in exact mode)."""
    buf = io.StringIO()
    buf.write("t,x1,x2\n")
    for t, v in zip(p.times, p.values):
        if p.mode == EXACT:
            row = (t.to_decimal_string(), v[0].to_decimal_string(), v[1].to_decimal_string())
        else:
            row = (repr(t), repr(v[0]), repr(v[1]))
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def matrix_to_json(R: ReflectionMatrix2, mode: str) -> dict:
    return {"a1": scalar_to_json(R.a1, mode), "a2": scalar_to_json(R.a2, mode)}


def matrix_from_json(obj: dict, mode: str) -> ReflectionMatrix2:
    return ReflectionMatrix2(
        scalar_from_json(obj["a1"], mode), scalar_from_json(obj["a2"], mode)
    )


def triple_to_json(t: SolutionTriple) -> dict:
    mode = t.f.mode
    out = {
        "matrix": matrix_to_json(t.R, mode),
        "f": path_to_json(t.f),
        "g": path_to_json(t.g),
        "m": path_to_json(t.m),
    }
    if t.tail_bound is not None:
        out["tail_bound"] = scalar_to_json(t.tail_bound, mode)
    return out


def triple_from_json(obj: dict) -> SolutionTriple:
    f = path_from_json(obj["f"])
    tail = obj.get("tail_bound")
    return SolutionTriple(
        R=matrix_from_json(obj["matrix"], f.mode),
        f=f,
        g=path_from_json(obj["g"]),
        m=path_from_json(obj["m"]),
        tail_bound=None if tail is None else scalar_from_json(tail, f.mode),
    )


def solution_to_json(g: PLPath2, m: PLPath2, iterations: int, converged: bool, residual: float) -> dict:
    return {
        "g": path_to_json(g),
        "m": path_to_json(m),
        "iterations": iterations,
        "converged": converged,
        "residual": residual,
    }


def bundle_to_json(b: CounterexampleBundle) -> dict:
    mode = b.u.mode
    return {
        "matrix": matrix_to_json(b.R, mode),
        "depth": b.depth,
        "u": path_to_json(b.u),
        "m": path_to_json(b.decomp.m),
        "mbar": path_to_json(b.decomp.mbar),
        "f": path_to_json(b.f),
        "g": path_to_json(b.g),
        "gbar": path_to_json(b.gbar),
        "tail_bound": scalar_to_json(b.tail_bound, mode),
        "rho": scalar_to_json(b.rho, mode),
    }


def bundle_from_json(obj: dict) -> CounterexampleBundle:
    u = path_from_json(obj["u"])
    mode = u.mode
    return CounterexampleBundle(
        R=matrix_from_json(obj["matrix"], mode),
        u=u,
        decomp=MonotoneDecomp(path_from_json(obj["m"]), path_from_json(obj["mbar"])),
        f=path_from_json(obj["f"]),
        g=path_from_json(obj["g"]),
        gbar=path_from_json(obj["gbar"]),
        depth=int(obj["depth"]),
        tail_bound=scalar_from_json(obj["tail_bound"], mode),
        rho=scalar_from_json(obj["rho"], mode),
    )
