"""Linguistic statements and their translation into granules.

Supported forms (``P`` and ``Q`` are canonical ``V is A`` propositions)::

    P                         usually P
    usually (if P then Q)     usually (P and Q)      usually (P or Q)
    if [usually] P then [usually] Q
    [usually] P and [usually] Q
    [usually] P or [usually] Q

A ``usually`` around a compound is applied after the compound has been turned
into a single fuzzy relation. A ``usually`` on a part is carried by that
part's granule, and the parts are then joined with :func:`combine_joint`.
Anything else (``usually usually P``, nested conditionals) is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from .combination import combine_joint, combine_same_var
from .config import implication_kind
from .fuzzy import FuzzySet, build_relation, join, meet
from .granules import Granule, _check_alpha, from_canonical, usually
from .universe import Universe


class TranslationError(ValueError):
    def __init__(self, message: str, pos=None):
        super().__init__(message if pos is None else f"{pos[0]}:{pos[1]}: {message}")
        self.pos = pos


@dataclass(frozen=True)
class Canonical:
    variable: str
    set_name: str
    pos: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Usually:
    inner: "Statement"
    alpha: float
    pos: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        try:
            _check_alpha(self.alpha)
        except ValueError as exc:
            raise TranslationError(str(exc), self.pos) from None


@dataclass(frozen=True)
class If:
    antecedent: "Statement"
    consequent: "Statement"
    pos: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class And:
    left: "Statement"
    right: "Statement"
    pos: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Or:
    left: "Statement"
    right: "Statement"
    pos: tuple | None = field(default=None, compare=False, repr=False)


Statement = Union[Canonical, Usually, If, And, Or]


def _parts(s):
    if isinstance(s, If):
        return s.antecedent, s.consequent
    return s.left, s.right


def _lookup(c: Canonical, sets: Mapping[str, FuzzySet], variables: Mapping[str, Universe] | None) -> FuzzySet:
    try:
        a = sets[c.set_name]
    except KeyError:
        raise TranslationError(f"unknown set {c.set_name!r}", c.pos) from None
    if variables is not None:
        if c.variable not in variables:
            raise TranslationError(f"unknown variable {c.variable!r}", c.pos)
        if variables[c.variable] != a.universe:
            raise TranslationError(
                f"set {c.set_name!r} is on {a.universe.id!r} but {c.variable!r} "
                f"ranges over {variables[c.variable].id!r}",
                c.pos,
            )
    return a


def _leaf(s, sets, variables) -> Granule:
    """Granule for ``P`` or ``usually P`` with ``P`` canonical."""
    if isinstance(s, Canonical):
        return from_canonical(s.variable, _lookup(s, sets, variables))
    if isinstance(s, Usually) and isinstance(s.inner, Canonical):
        return usually(s.inner.variable, _lookup(s.inner, sets, variables), s.alpha)
    raise TranslationError(
        "compound parts must be 'V is A' or 'usually V is A'", getattr(s, "pos", None)
    )


def _compound_kind(s, imp: str) -> str:
    if isinstance(s, If):
        return imp
    return "and" if isinstance(s, And) else "or"


def _relation(s, sets, variables, imp):
    """A compound of two canonical parts as a single fuzzy set or relation."""
    p, q = _parts(s)
    if not (isinstance(p, Canonical) and isinstance(q, Canonical)):
        raise TranslationError(
            "'usually' over a compound needs unqualified 'V is A' parts", s.pos
        )
    a, b = _lookup(p, sets, variables), _lookup(q, sets, variables)
    if p.variable == q.variable:
        if isinstance(s, If):
            raise TranslationError("a conditional needs two distinct variables", s.pos)
        return p.variable, (meet if isinstance(s, And) else join)(a, b)
    return (p.variable, q.variable), build_relation(_compound_kind(s, imp), a, b)


def translate(
    s: Statement,
    sets: Mapping[str, FuzzySet],
    imp: str = "imp_luka",
    variables: Mapping[str, Universe] | None = None,
    conflict_policy: str = "keep",
) -> Granule:
    """Translate a statement into the granule it asserts.

    ``sets`` maps set names to fuzzy sets; ``variables``, when given, maps
    variable names to their universes and is used to check each ``V is A``.
    ``imp`` selects the implication used for conditionals (``imp_luka`` or
    ``imp_kd``).
    """
    imp = implication_kind(imp)
    if isinstance(s, Canonical):
        return _leaf(s, sets, variables)
    if isinstance(s, Usually):
        inner = s.inner
        if isinstance(inner, Canonical):
            return _leaf(s, sets, variables)
        if isinstance(inner, (If, And, Or)):
            var, rel = _relation(inner, sets, variables, imp)
            if rel.is_null():
                raise TranslationError("statement translates to an empty set", s.pos)
            return usually(var, rel, s.alpha)
        raise TranslationError("'usually' cannot qualify a 'usually' statement", s.pos)
    if isinstance(s, (If, And, Or)):
        p, q = _parts(s)
        g1, g2 = _leaf(p, sets, variables), _leaf(q, sets, variables)
        if g1.variable == g2.variable:
            if isinstance(s, If):
                raise TranslationError("a conditional needs two distinct variables", s.pos)
            op = "meet" if isinstance(s, And) else "join"
            return combine_same_var(g1, g2, op, conflict_policy)
        return combine_joint(g1, g2, _compound_kind(s, imp))
    raise TranslationError(f"not a statement: {s!r}")


def variables_of(s: Statement) -> tuple[str, ...]:
    """Variables mentioned by ``s`` in order of first appearance."""
    if isinstance(s, Canonical):
        return (s.variable,)
    if isinstance(s, Usually):
        return variables_of(s.inner)
    p, q = _parts(s)
    seen = variables_of(p)
    return seen + tuple(v for v in variables_of(q) if v not in seen)
