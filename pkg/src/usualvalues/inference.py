"""Forward reasoning over granules.

A rule is a joint granule on ``(V1, V2)``. Given what is known about ``V1``
the rule is conditioned by taking the conjunction (pointwise min of every
rule focal with every cylindrically extended fact focal, product weights)
and then projecting onto ``V2``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .combination import combine_same_var, extend_granule, project_granule
from .config import Config
from .fuzzy import FuzzySet
from .granules import Granule, belief, plausibility, vacuous
from .universe import ProductUniverse, Universe

log = logging.getLogger(__name__)


def modus_ponens(rule: Granule, fact: Granule, conflict_policy: str = "keep") -> Granule:
    """Granule on ``rule``'s right variable inferred from ``fact`` on its left one."""
    if not rule.is_joint:
        raise ValueError("rule must be a joint granule")
    if fact.is_joint or fact.variable != rule.variable[0]:
        raise ValueError(f"fact on {fact.variable!r} does not match rule antecedent {rule.variable[0]!r}")
    lifted = extend_granule(fact, rule.universe, "left", partner=rule.variable[1])
    joint = combine_same_var(rule, lifted, "meet", conflict_policy)
    return project_granule(joint, "right")


def special_case_F(a: FuzzySet, b: FuzzySet) -> FuzzySet:
    """Closed form of the inferred focal when the fact equals the rule antecedent.

    ``F(y) = max_x [ (min(1 - a(x), a(x))) ∨ (min(b(y), a(x))) ]``
    """
    A = a.grades[:, None]
    B = b.grades[None, :]
    g = np.maximum(np.minimum(1.0 - A, A), np.minimum(B, A)).max(axis=0)
    return FuzzySet(b.universe, g)


@dataclass(frozen=True)
class TightnessReport:
    pl: float
    pl_squared: float
    bel: float
    bel_squared: float

    @property
    def holds(self) -> bool:
        eps = 1e-12
        return self.pl_squared >= self.pl - eps and self.bel >= self.bel_squared - eps


def _two_focal_shape(g: Granule):
    focal, w = None, 0.0
    for f, v in g.focals:
        if not f.is_whole():
            if focal is not None:
                raise ValueError("expected a granule of the form {F @ w, whole @ 1-w}")
            focal, w = f, v
    return focal, w


def tightness_compare(g_single: Granule, g_squared: Granule, b) -> TightnessReport:
    """Measures of ``b`` under ``{F@α, Y@1-α}`` and ``{F@α², Y@1-α²}``."""
    f1, w1 = _two_focal_shape(g_single)
    f2, w2 = _two_focal_shape(g_squared)
    if g_single.universe != g_squared.universe:
        raise ValueError("granules live on different universes")
    if f1 is not None and f2 is not None and not f1 == f2:
        raise ValueError("granules qualify different focal sets")
    if w1 < w2 - 1e-12:
        raise ValueError(f"single-qualified weight {w1} is below squared weight {w2}")
    report = TightnessReport(
        pl=plausibility(g_single, b),
        pl_squared=plausibility(g_squared, b),
        bel=belief(g_single, b),
        bel_squared=belief(g_squared, b),
    )
    assert report.holds, report
    return report


# -- knowledge bases ----------------------------------------------------------


@dataclass
class KnowledgeBase:
    """Universes, named sets, typed variables and asserted granules.

    ``rules`` hold directed joint granules (from conditionals) and are only
    chained forward; ``joints`` hold undirected ones (from ``and``/``or``)
    and are read in either direction.
    """

    universes: dict[str, Universe] = field(default_factory=dict)
    sets: dict[str, FuzzySet] = field(default_factory=dict)
    variables: dict[str, Universe] = field(default_factory=dict)
    facts: list[Granule] = field(default_factory=list)
    rules: list[Granule] = field(default_factory=list)
    joints: list[Granule] = field(default_factory=list)

    def add_universe(self, name: str, u: Universe) -> None:
        if name in self.universes:
            raise ValueError(f"universe {name!r} already declared")
        self.universes[name] = u

    def add_set(self, name: str, a: FuzzySet) -> None:
        if name in self.sets:
            raise ValueError(f"set {name!r} already declared")
        self.sets[name] = a

    def add_variable(self, name: str, u: Universe) -> None:
        if name in self.variables:
            raise ValueError(f"variable {name!r} already declared")
        self.variables[name] = u

    def add(self, g: Granule, directed: bool = False) -> None:
        vars_ = g.variable if g.is_joint else (g.variable,)
        for v in vars_:
            if v not in self.variables:
                raise ValueError(f"undeclared variable {v!r}")
        if g.is_joint:
            if (self.variables[vars_[0]], self.variables[vars_[1]]) != (g.universe.left, g.universe.right):
                raise ValueError("joint granule universe does not match its variables")
            (self.rules if directed else self.joints).append(g)
        else:
            if self.variables[g.variable] != g.universe:
                raise ValueError(f"granule universe does not match variable {g.variable!r}")
            self.facts.append(g)

    def _sources(self, target: str, config: Config, depth: int, active: frozenset) -> list[Granule]:
        found = [g for g in self.facts if g.variable == target]
        if depth >= config.max_depth:
            log.warning("depth limit %d reached at %r", config.max_depth, target)
            return found
        links = [(r, "right") for r in self.rules if r.variable[1] == target]
        links += [(j, "right") for j in self.joints if j.variable[1] == target]
        links += [(j, "left") for j in self.joints if j.variable[0] == target]
        for g, side in links:
            other = g.variable[0] if side == "right" else g.variable[1]
            if other in active:
                continue
            known = self._infer(other, config, depth + 1, active | {target})
            if side == "left":
                g = _swap(g)
            found.append(modus_ponens(g, known, config.conflict_policy))
        return found

    def _infer(self, target: str, config: Config, depth: int, active: frozenset) -> Granule:
        found = self._sources(target, config, depth, active)
        if not found:
            return vacuous(target, self.variables[target])
        out = found[0]
        for g in found[1:]:
            out = combine_same_var(out, g, "meet", config.conflict_policy)
        return out

    def informs(self, target: str) -> bool:
        """Whether any fact, rule or joint statement mentions ``target``."""
        if any(g.variable == target for g in self.facts):
            return True
        return any(target in g.variable for g in self.rules + self.joints)


def _swap(g: Granule) -> Granule:
    u = ProductUniverse(g.universe.right, g.universe.left)
    focals = [(type(f)(u, f.grades.T), w) for f, w in g.focals]
    return Granule((g.variable[1], g.variable[0]), focals, allow_null=True)


def infer(kb: KnowledgeBase, target: str, config: Config | None = None) -> Granule:
    """Everything ``kb`` implies about ``target`` as one granule.

    Facts on ``target`` and conclusions of every rule reaching it are
    conjoined with a same-variable meet. With nothing known the result is the
    vacuous granule and a warning is logged.
    """
    config = config or Config()
    if target not in kb.variables:
        raise KeyError(f"unknown variable {target!r}")
    if not kb.informs(target):
        log.warning("no information about %r; returning the vacuous granule", target)
    return kb._infer(target, config, 0, frozenset())
