"""Possibility-probability granules.

A granule is a basic probability assignment whose focal elements are fuzzy
sets (or fuzzy relations, for joint granules over two variables). With
probability ``w_k`` the value of the variable is restricted by focal ``A_k``.

Plausibility and belief generalise Shafer's measures to fuzzy focals::

    Pl(B)  = sum_k w_k * poss(B, A_k)
    Bel(B) = sum_k w_k * cert(B, A_k)
"""

from __future__ import annotations

import math
from typing import Iterable, Union

from .fuzzy import _Graded, cert, graded_from_list, poss, whole_of
from .universe import GRADE_TOL, ProductUniverse, universe_from_dict

WEIGHT_TOL = 1e-9

Variable = Union[str, tuple]


def _merge(pairs: Iterable[tuple[_Graded, float]]) -> list[list]:
    merged: list[list] = []
    for focal, w in pairs:
        for slot in merged:
            if slot[0] == focal:
                slot[1] += w
                break
        else:
            merged.append([focal, w])
    return merged


class Granule:
    """``variable is m`` with ``m`` a weighted list of fuzzy focal elements.

    Pointwise-equal focals are merged by summing their weights and the focals
    are stored in canonical order (descending weight, then grades), so two
    granules built from the same pairs in any order compare and serialise
    identically.

    Null (all-zero) focals are rejected unless ``allow_null`` is set; that is
    how the ``keep`` conflict policy records conflicting mass.
    """

    __slots__ = ("variable", "universe", "focals")

    def __init__(self, variable: Variable, focals: Iterable[tuple[_Graded, float]], *, allow_null: bool = False):
        pairs = [(f, float(w)) for f, w in focals]
        if not pairs:
            raise ValueError("a granule needs at least one focal element")
        universe = pairs[0][0].universe
        for f, w in pairs:
            if f.universe != universe:
                raise ValueError("all focal elements must share one universe")
            if not w > 0:
                raise ValueError(f"focal weights must be positive, got {w}")
            if f.is_null() and not allow_null:
                raise ValueError("null focal element (all grades zero)")
        total = math.fsum(w for _, w in pairs)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ValueError(f"focal weights sum to {total}, not 1")
        if isinstance(universe, ProductUniverse):
            if not (isinstance(variable, tuple) and len(variable) == 2):
                raise ValueError("a joint granule needs a (left, right) variable pair")
            variable = tuple(variable)
        merged = _merge(pairs)
        merged.sort(key=lambda s: (-round(s[1], 12), s[0].sort_key()))
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "focals", tuple((f, w) for f, w in merged))

    def __setattr__(self, name, value):
        raise AttributeError("Granule is immutable")

    def __repr__(self):
        body = ", ".join(f"{f!r}@{w:.6g}" for f, w in self.focals)
        return f"Granule({self.variable!r}: {body})"

    def __len__(self) -> int:
        return len(self.focals)

    @property
    def is_joint(self) -> bool:
        return isinstance(self.universe, ProductUniverse)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(w for _, w in self.focals)

    @property
    def conflict(self) -> float:
        """Mass sitting on null focals (non-zero only under the ``keep`` policy)."""
        return math.fsum(w for f, w in self.focals if f.is_null())

    @property
    def is_vacuous(self) -> bool:
        return len(self.focals) == 1 and self.focals[0][0].is_whole()

    def weight_of(self, focal: _Graded) -> float:
        """Total mass on focals pointwise-equal to ``focal`` (0 if absent)."""
        return math.fsum(w for f, w in self.focals if f == focal)

    def equals(self, other: "Granule", tol: float = GRADE_TOL) -> bool:
        """Same universe and the same focal/weight table, up to ``tol`` on weights."""
        if self.universe != other.universe or len(self) != len(other):
            return False
        unmatched = list(other.focals)
        for f, w in self.focals:
            for k, (g, v) in enumerate(unmatched):
                if f == g and abs(w - v) <= tol:
                    del unmatched[k]
                    break
            else:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "variable": list(self.variable) if self.is_joint else self.variable,
            "universe": self.universe.to_dict(),
            "focals": [{"grades": f.to_list(), "weight": w} for f, w in self.focals],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Granule":
        u = universe_from_dict(d["universe"])
        var = tuple(d["variable"]) if isinstance(d["variable"], list) else d["variable"]
        focals = [(graded_from_list(u, f["grades"]), f["weight"]) for f in d["focals"]]
        return cls(var, focals, allow_null=True)


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"usuality level must lie in (0, 1], got {alpha}")
    return alpha


def from_canonical(v: Variable, a: _Graded) -> Granule:
    """``v is a`` as a granule: all mass on ``a``."""
    return Granule(v, [(a, 1.0)])


def vacuous(v: Variable, universe) -> Granule:
    return Granule(v, [(whole_of(universe), 1.0)])


def usually(v: Variable, a: _Graded, alpha: float) -> Granule:
    """``usually v is a``: mass ``alpha`` on ``a`` and ``1 - alpha`` on the frame."""
    alpha = _check_alpha(alpha)
    if a.is_null():
        raise ValueError("null focal element (all grades zero)")
    if alpha == 1.0:
        return from_canonical(v, a)
    return Granule(v, [(a, alpha), (whole_of(a.universe), 1.0 - alpha)])


def _measure(g: Granule, b: _Graded, fn) -> float:
    if b.universe != g.universe:
        raise ValueError(f"query set lives on {b.universe.id!r}, granule on {g.universe.id!r}")
    # null focals carry conflict, not evidence; they add to neither measure
    return math.fsum(w * fn(b, f) for f, w in g.focals if not f.is_null())


def plausibility(g: Granule, b: _Graded) -> float:
    return _measure(g, b, poss)


def belief(g: Granule, b: _Graded) -> float:
    return _measure(g, b, cert)


def prob_interval(g: Granule, b: _Graded) -> tuple[float, float]:
    """``(Bel(b), Pl(b))``, the bounds on the probability that ``v`` lies in ``b``."""
    return belief(g, b), plausibility(g, b)

