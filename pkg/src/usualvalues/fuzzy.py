"""Tabulated fuzzy sets and binary fuzzy relations.

Connectives are fixed: ``∧`` is min and ``∨`` is max. Operations are pure and
return new objects; grade arrays are stored read-only.
"""

from __future__ import annotations

import numpy as np

from .universe import GRADE_TOL, ProductUniverse, Universe

RELATION_KINDS = ("and", "or", "imp_luka", "imp_kd")


def _frozen(values, shape) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(shape)
    if arr.size and (np.isnan(arr).any() or arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError("membership grades must lie in [0, 1]")
    arr.flags.writeable = False
    return arr


class _Graded:
    """Shared behaviour of fuzzy sets and fuzzy relations."""

    __slots__ = ("universe", "grades")
    __hash__ = None

    def __eq__(self, other):
        if not isinstance(other, _Graded):
            return NotImplemented
        if type(other) is not type(self) or other.universe != self.universe:
            return False
        return bool(np.max(np.abs(self.grades - other.grades)) <= GRADE_TOL)

    def _like(self, grades):
        return type(self)(self.universe, grades)

    @property
    def height(self) -> float:
        return float(self.grades.max())

    def is_null(self) -> bool:
        return self.height <= 0.0

    def is_normal(self) -> bool:
        return self.height >= 1.0 - GRADE_TOL

    def is_crisp(self) -> bool:
        g = self.grades
        return bool(np.all((g <= GRADE_TOL) | (g >= 1.0 - GRADE_TOL)))

    def is_whole(self) -> bool:
        return bool(self.grades.min() >= 1.0 - GRADE_TOL)

    def sort_key(self) -> tuple:
        return tuple(self.grades.ravel().tolist())

    def to_list(self) -> list:
        return self.grades.tolist()


class FuzzySet(_Graded):
    """Membership grades, one per point of ``universe``."""

    __slots__ = ()

    def __init__(self, universe: Universe, grades):
        if not isinstance(universe, Universe):
            raise TypeError("FuzzySet needs a Universe; use FuzzyRelation for products")
        g = np.asarray(grades, dtype=float)
        if g.shape != (len(universe),):
            raise ValueError(
                f"expected {len(universe)} grades for {universe.id!r}, got shape {g.shape}"
            )
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "grades", _frozen(g, (len(universe),)))

    def __setattr__(self, name, value):
        raise AttributeError("FuzzySet is immutable")

    def __repr__(self):
        return f"FuzzySet({self.universe.id}, {np.round(self.grades, 6).tolist()})"

    def __call__(self, point) -> float:
        return float(self.grades[self.universe.index(point)])

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.grades > 0.0)

    @classmethod
    def whole(cls, universe: Universe) -> "FuzzySet":
        return cls(universe, np.ones(len(universe)))

    @classmethod
    def empty(cls, universe: Universe) -> "FuzzySet":
        return cls(universe, np.zeros(len(universe)))


class FuzzyRelation(_Graded):
    """Membership grades over ``X × Y`` held as an ``|X| × |Y|`` array."""

    __slots__ = ()

    def __init__(self, universe: ProductUniverse, grades):
        if not isinstance(universe, ProductUniverse):
            raise TypeError("FuzzyRelation needs a ProductUniverse")
        g = np.asarray(grades, dtype=float)
        if g.size != len(universe):
            raise ValueError(f"expected {universe.shape} grades, got shape {g.shape}")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "grades", _frozen(g, universe.shape))

    def __setattr__(self, name, value):
        raise AttributeError("FuzzyRelation is immutable")

    def __repr__(self):
        return f"FuzzyRelation({self.universe.id}, {np.round(self.grades, 6).tolist()})"

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.grades.ravel() > 0.0)

    @classmethod
    def whole(cls, universe: ProductUniverse) -> "FuzzyRelation":
        return cls(universe, np.ones(universe.shape))

    @classmethod
    def empty(cls, universe: ProductUniverse) -> "FuzzyRelation":
        return cls(universe, np.zeros(universe.shape))


def whole_of(universe) -> _Graded:
    """The all-one set on any universe (``X`` or ``X × Y``)."""
    if isinstance(universe, ProductUniverse):
        return FuzzyRelation.whole(universe)
    return FuzzySet.whole(universe)


def graded_from_list(universe, grades) -> _Graded:
    if isinstance(universe, ProductUniverse):
        return FuzzyRelation(universe, grades)
    return FuzzySet(universe, grades)


def _check_same(a: _Graded, b: _Graded) -> None:
    if type(a) is not type(b) or a.universe != b.universe:
        raise ValueError(f"universe mismatch: {a.universe.id!r} vs {b.universe.id!r}")


def complement(a):
    return a._like(1.0 - a.grades)


def meet(a, b):
    _check_same(a, b)
    return a._like(np.minimum(a.grades, b.grades))


def join(a, b):
    _check_same(a, b)
    return a._like(np.maximum(a.grades, b.grades))


def meet_rel(r: FuzzyRelation, s: FuzzyRelation) -> FuzzyRelation:
    if not isinstance(r, FuzzyRelation):
        raise TypeError("meet_rel expects fuzzy relations")
    return meet(r, s)


def join_rel(r: FuzzyRelation, s: FuzzyRelation) -> FuzzyRelation:
    if not isinstance(r, FuzzyRelation):
        raise TypeError("join_rel expects fuzzy relations")
    return join(r, s)


def poss(b, a) -> float:
    """Degree to which ``b`` is possible given ``a``: max of the pointwise min."""
    _check_same(a, b)
    return float(np.max(np.minimum(b.grades, a.grades)))


def cert(b, a) -> float:
    """Degree to which ``b`` is certain given ``a``: ``1 - poss(not b, a)``."""
    _check_same(a, b)
    return 1.0 - float(np.max(np.minimum(1.0 - b.grades, a.grades)))


def build_relation(kind: str, a: FuzzySet, b: FuzzySet) -> FuzzyRelation:
    """Combine ``a`` on X and ``b`` on Y into a relation on ``X × Y``.

    ``and``: min(A, B); ``or``: max(A, B); ``imp_luka``: min(1, 1 - A + B);
    ``imp_kd``: max(1 - A, B).
    """
    A = a.grades[:, None]
    B = b.grades[None, :]
    if kind == "and":
        g = np.minimum(A, B)
    elif kind == "or":
        g = np.maximum(A, B)
    elif kind == "imp_luka":
        g = np.minimum(1.0, 1.0 - A + B)
    elif kind == "imp_kd":
        g = np.maximum(1.0 - A, B)
    else:
        raise ValueError(f"unknown relation kind {kind!r}; expected one of {RELATION_KINDS}")
    return FuzzyRelation(ProductUniverse(a.universe, b.universe), np.clip(g, 0.0, 1.0))


def cyl_ext(a: FuzzySet, target: ProductUniverse, axis: str = "left") -> FuzzyRelation:
    """Cylindrical extension of ``a`` along the other coordinate of ``target``."""
    if target.axis(axis) != a.universe:
        raise ValueError(f"{a.universe.id!r} is not the {axis} axis of {target.id!r}")
    nx, ny = target.shape
    if axis == "left":
        g = np.broadcast_to(a.grades[:, None], (nx, ny))
    else:
        g = np.broadcast_to(a.grades[None, :], (nx, ny))
    return FuzzyRelation(target, g)


def project(r: FuzzyRelation, axis: str = "right") -> FuzzySet:
    """Max over the coordinate that is *not* ``axis``; result lives on ``axis``."""
    u = r.universe.axis(axis)
    g = r.grades.max(axis=1) if axis == "left" else r.grades.max(axis=0)
    return FuzzySet(u, g)


# -- linguistic shapes on numeric grids --------------------------------------


def _grid_points(u: Universe) -> np.ndarray:
    if not u.is_numeric:
        raise ValueError(f"shape functions need a numeric grid, {u.id!r} is labeled")
    return np.array(u.points, dtype=float)


def _ordered(*params):
    if any(p > q for p, q in zip(params, params[1:])):
        raise ValueError(f"shape parameters must be non-decreasing, got {params}")


def _trapezoid(x: np.ndarray, a, b, c, d) -> np.ndarray:
    g = np.zeros_like(x)
    tol = GRADE_TOL
    g[(x >= b - tol) & (x <= c + tol)] = 1.0
    if b > a:
        rise = (x > a) & (x < b - tol)
        g[rise] = (x[rise] - a) / (b - a)
    if d > c:
        fall = (x > c + tol) & (x < d)
        g[fall] = (d - x[fall]) / (d - c)
    return np.clip(g, 0.0, 1.0)


def triangular(u: Universe, a: float, b: float, c: float) -> FuzzySet:
    _ordered(a, b, c)
    return FuzzySet(u, _trapezoid(_grid_points(u), a, b, b, c))


def trapezoid(u: Universe, a: float, b: float, c: float, d: float) -> FuzzySet:
    _ordered(a, b, c, d)
    return FuzzySet(u, _trapezoid(_grid_points(u), a, b, c, d))


def crisp_interval(u: Universe, lo: float, hi: float) -> FuzzySet:
    _ordered(lo, hi)
    x = _grid_points(u)
    return FuzzySet(u, ((x >= lo - GRADE_TOL) & (x <= hi + GRADE_TOL)).astype(float))


def singleton(u: Universe, v: float) -> FuzzySet:
    x = _grid_points(u)
    g = np.zeros_like(x)
    g[u.index(v)] = 1.0
    return FuzzySet(u, g)


def make_shape(kind: str, u: Universe, *params: float) -> FuzzySet:
    makers = {
        "triangular": (triangular, 3),
        "trapezoid": (trapezoid, 4),
        "crisp_interval": (crisp_interval, 2),
        "interval": (crisp_interval, 2),
        "singleton": (singleton, 1),
    }
    if kind not in makers:
        raise ValueError(f"unknown shape {kind!r}")
    fn, arity = makers[kind]
    if len(params) != arity:
        raise ValueError(f"{kind} takes {arity} parameters, got {len(params)}")
    return fn(u, *params)
