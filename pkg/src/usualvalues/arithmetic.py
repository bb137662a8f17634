"""Extension-principle arithmetic on fuzzy subsets of numeric grids.

``G(v) = max { min(E(y), F(z)) : y ⊥ z = v }`` where each ``y ⊥ z`` is snapped
to the nearest point of the caller-supplied output grid (ties go to the lower
point). Values landing outside that grid are dropped and reported.
"""

from __future__ import annotations

import math
import operator
import warnings
from dataclasses import dataclass

import numpy as np

from .fuzzy import FuzzySet
from .universe import POINT_TOL, Universe

ARITH_OPS = ("add", "sub", "mul", "div", "pow")
OP_SYMBOLS = {"+": "add", "-": "sub", "*": "mul", "/": "div", "^": "pow"}


class ClippedMassWarning(UserWarning):
    """Some operand pairs produced values outside the output grid."""


def _pow(y: float, z: float) -> float | None:
    if y < 0 and not float(z).is_integer():
        return None
    try:
        v = math.pow(y, z)
    except (ZeroDivisionError, OverflowError, ValueError):
        return None
    return v if math.isfinite(v) else None


def _div(y: float, z: float) -> float | None:
    return None if z == 0 else y / z


_SCALAR = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": _div,
    "pow": _pow,
}


def apply_op(op: str, y: float, z: float) -> float | None:
    """Scalar ``y ⊥ z``; ``None`` when the pair is undefined (skipped)."""
    try:
        return _SCALAR[op](y, z)
    except KeyError:
        raise ValueError(f"unknown arithmetic op {op!r}; expected one of {ARITH_OPS}") from None


def snap_index(out: Universe, v: float) -> int | None:
    """Nearest grid index for ``v``, ties toward the lower point; ``None`` if outside."""
    lo, hi, step = out.grid
    if v < lo - POINT_TOL or v > hi + POINT_TOL:
        return None
    i = math.ceil((v - lo) / step - 0.5 - POINT_TOL)
    return min(max(i, 0), len(out) - 1)


@dataclass(frozen=True)
class Extension:
    result: FuzzySet
    clipped: float  # largest grade carried by a pair that fell outside ``out``
    clipped_pairs: int
    skipped_pairs: int  # undefined pairs: division by zero, bad powers


def extend_binop_report(e: FuzzySet, f: FuzzySet, op: str, out: Universe) -> Extension:
    for u in (e.universe, f.universe, out):
        if not u.is_numeric:
            raise ValueError(f"arithmetic needs numeric grids, {u.id!r} is labeled")
    if op not in _SCALAR:
        raise ValueError(f"unknown arithmetic op {op!r}; expected one of {ARITH_OPS}")

    if e.is_whole() or f.is_whole():
        # R ⊥ B = R, taken as exact rather than approximated on the grid
        return Extension(FuzzySet.whole(out), 0.0, 0, 0)

    g = np.zeros(len(out))
    clipped, n_clipped, n_skipped = 0.0, 0, 0
    ys, zs = e.universe.points, f.universe.points
    for i in np.flatnonzero(e.grades > 0):
        for j in np.flatnonzero(f.grades > 0):
            w = min(e.grades[i], f.grades[j])
            v = apply_op(op, ys[i], zs[j])
            if v is None:
                n_skipped += 1
                continue
            k = snap_index(out, v)
            if k is None:
                n_clipped += 1
                clipped = max(clipped, w)
                continue
            if w > g[k]:
                g[k] = w
    return Extension(FuzzySet(out, g), float(clipped), n_clipped, n_skipped)


def extend_binop(e: FuzzySet, f: FuzzySet, op: str, out: Universe) -> FuzzySet:
    """Fuzzy ``e ⊥ f`` on grid ``out``.

    Warns with :class:`ClippedMassWarning` when mass falls off the grid. If every
    pair is undefined (e.g. division by ``singleton(0)``) the result is the
    all-zero set.
    """
    ext = extend_binop_report(e, f, op, out)
    if ext.clipped_pairs:
        warnings.warn(
            f"{ext.clipped_pairs} pairs fell outside grid {out.id!r} "
            f"(max grade {ext.clipped:g}); widen the output grid",
            ClippedMassWarning,
            stacklevel=2,
        )
    return ext.result
