"""Combining granules under set-theoretic and arithmetic operations.

For granules ``m1`` (focals ``A_k``) and ``m2`` (focals ``B_j``) and any
operation ``⊥`` on their focal elements, the combination puts mass
``m1(A_k) * m2(B_j)`` on ``A_k ⊥ B_j``; pairs that produce the same set are
merged. With ``⊥ = meet`` on one variable this is unnormalised Dempster
combination.
"""

from __future__ import annotations

import math
import warnings

from .arithmetic import ARITH_OPS, ClippedMassWarning, extend_binop_report
from .config import CONFLICT_POLICIES
from .fuzzy import RELATION_KINDS, build_relation, cyl_ext, join, meet, project, whole_of
from .granules import Granule
from .universe import ProductUniverse, Universe

SAME_VAR_OPS = ("meet", "join")
SET_OPS = RELATION_KINDS + SAME_VAR_OPS + ARITH_OPS


class TotalConflictError(ValueError):
    """Every combined focal was null and the policy cannot renormalise."""


def resolve_conflict(variable, universe, pairs, policy: str = "keep") -> Granule:
    """Build a granule from raw ``(focal, weight)`` pairs that may include nulls.

    ``keep`` retains the null focal so ``granule.conflict`` reports its mass;
    ``dempster`` drops it and rescales the rest; ``to_universe`` moves it onto
    the whole-universe focal.
    """
    if policy not in CONFLICT_POLICIES:
        raise ValueError(f"unknown conflict policy {policy!r}")
    live = [(f, w) for f, w in pairs if not f.is_null()]
    k = math.fsum(w for f, w in pairs if f.is_null())
    if k == 0.0 or policy == "keep":
        return Granule(variable, pairs, allow_null=True)
    if policy == "dempster":
        if not live:
            raise TotalConflictError("total conflict: no non-null focal left to normalise")
        scale = math.fsum(w for _, w in live)
        return Granule(variable, [(f, w / scale) for f, w in live])
    return Granule(variable, live + [(whole_of(universe), k)])


def combine_joint(g1: Granule, g2: Granule, op: str) -> Granule:
    """Joint granule on ``X × Y`` from granules on ``X`` and ``Y`` (distinct variables)."""
    if op not in RELATION_KINDS:
        raise ValueError(f"combine_joint needs one of {RELATION_KINDS}, got {op!r}")
    if g1.is_joint or g2.is_joint:
        raise ValueError("combine_joint takes single-variable granules")
    if g1.variable == g2.variable:
        raise ValueError(f"both granules describe {g1.variable!r}; use combine_same_var")
    pairs = [
        (build_relation(op, a, b), wa * wb)
        for a, wa in g1.focals
        for b, wb in g2.focals
    ]
    return Granule((g1.variable, g2.variable), pairs)


def combine_same_var(g1: Granule, g2: Granule, op: str = "meet", conflict_policy: str = "keep") -> Granule:
    """Pairwise pointwise ``meet`` or ``join`` of focals on a shared universe."""
    if op not in SAME_VAR_OPS:
        raise ValueError(f"combine_same_var needs one of {SAME_VAR_OPS}, got {op!r}")
    if g1.universe != g2.universe:
        raise ValueError(f"universe mismatch: {g1.universe.id!r} vs {g2.universe.id!r}")
    if g1.variable != g2.variable:
        raise ValueError(f"variable mismatch: {g1.variable!r} vs {g2.variable!r}")
    fn = meet if op == "meet" else join
    pairs = [(fn(a, b), wa * wb) for a, wa in g1.focals for b, wb in g2.focals]
    return resolve_conflict(g1.variable, g1.universe, pairs, conflict_policy)


def combine_arith(g1: Granule, g2: Granule, op: str, out: Universe, variable=None) -> Granule:
    """Granule for ``V1 ⊥ V2`` on grid ``out`` via the extension principle."""
    if op not in ARITH_OPS:
        raise ValueError(f"combine_arith needs one of {ARITH_OPS}, got {op!r}")
    if g1.is_joint or g2.is_joint:
        raise ValueError("arithmetic combines single-variable granules")
    if variable is None:
        variable = f"({g1.variable} {op} {g2.variable})"
    pairs = []
    for a, wa in g1.focals:
        for b, wb in g2.focals:
            ext = extend_binop_report(a, b, op, out)
            if ext.result.is_null():
                raise ValueError(
                    f"{op} of focal pair is empty on {out.id!r} "
                    f"({ext.skipped_pairs} undefined, {ext.clipped_pairs} off-grid pairs)"
                )
            if ext.clipped_pairs:
                warnings.warn(
                    f"{ext.clipped_pairs} pairs fell outside grid {out.id!r} "
                    f"(max grade {ext.clipped:g}); widen the output grid",
                    ClippedMassWarning,
                    stacklevel=2,
                )
            pairs.append((ext.result, wa * wb))
    return Granule(variable, pairs)


def extend_granule(g: Granule, target: ProductUniverse, axis: str = "left", partner: str | None = None) -> Granule:
    """Cylindrical extension of every focal of ``g`` onto ``target``.

    ``partner`` names the variable of the other axis (defaults to its universe id).
    """
    if g.is_joint:
        raise ValueError("extend_granule takes a single-variable granule")
    other = partner or target.axis("right" if axis == "left" else "left").id
    variable = (g.variable, other) if axis == "left" else (other, g.variable)
    return Granule(variable, [(cyl_ext(f, target, axis), w) for f, w in g.focals], allow_null=True)


def project_granule(g: Granule, axis: str = "right") -> Granule:
    """Marginal granule on one axis: each focal projected by max, weights carried."""
    if not g.is_joint:
        raise ValueError("only joint granules can be projected")
    if axis not in ("left", "right"):
        raise ValueError(f"axis must be 'left' or 'right', got {axis!r}")
    return Granule(g.variable[0 if axis == "left" else 1], [(project(f, axis), w) for f, w in g.focals], allow_null=True)
