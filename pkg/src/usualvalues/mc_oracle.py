"""Monte-Carlo check that belief and plausibility bound the probability.

A granule describes a two-stage experiment: draw focal ``A_k`` with
probability ``w_k``, then the value of the variable is *some* point of
``A_k``. Belief and plausibility must bound the probability of an event for
every way of choosing that point, so the within-focal selection rule is a
parameter:

``uniform``
    uniformly over the focal's support (crisp focals only)
``membership_weighted``
    proportional to membership grade (any focals; exploratory)
``point``
    always the ``point``-th support element (index taken modulo the support size)
``min_query`` / ``max_query``
    the support point with the lowest / highest grade in the query set, which
    attains belief / plausibility exactly

The probability of a fuzzy event is taken to be its expected membership.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .granules import Granule, prob_interval

SELECTIONS = ("uniform", "membership_weighted", "point", "min_query", "max_query")


@dataclass(frozen=True)
class SimConfig:
    samples: int = 100_000
    seed: int = 0
    selection: str = "uniform"
    point: int = 0

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.selection not in SELECTIONS:
            raise ValueError(f"selection must be one of {SELECTIONS}, got {self.selection!r}")

    @property
    def epsilon(self) -> float:
        return 4.0 * math.sqrt(0.25 / self.samples)


def _pick(focal: np.ndarray, count: int, cfg: SimConfig, rng, query):
    support = np.flatnonzero(focal > 0)
    if cfg.selection == "uniform":
        return rng.choice(support, size=count)
    if cfg.selection == "membership_weighted":
        p = focal[support] / focal[support].sum()
        return rng.choice(support, size=count, p=p)
    if cfg.selection == "point":
        return np.full(count, support[cfg.point % len(support)])
    if query is None:
        raise ValueError(f"selection {cfg.selection!r} needs a query set")
    q = query[support]
    best = support[np.argmin(q) if cfg.selection == "min_query" else np.argmax(q)]
    return np.full(count, best)


def sample_granule(g: Granule, cfg: SimConfig, query=None) -> np.ndarray:
    """Draw ``cfg.samples`` flat point indices of ``g.universe``.

    Joint universes are flattened row-major. ``query`` (a fuzzy set on the
    same universe) is only consulted by the ``min_query``/``max_query`` rules.
    """
    for f, _ in g.focals:
        if f.is_null():
            raise ValueError("cannot sample from a null focal element")
        if cfg.selection != "membership_weighted" and not f.is_crisp():
            raise ValueError(f"selection {cfg.selection!r} needs crisp focal elements")
    rng = np.random.default_rng(cfg.seed)
    w = np.array(g.weights)
    chosen = rng.choice(len(w), size=cfg.samples, p=w / w.sum())
    q = None if query is None else query.grades.ravel()
    out = np.empty(cfg.samples, dtype=np.int64)
    for k, (f, _) in enumerate(g.focals):
        mask = chosen == k
        n = int(mask.sum())
        if n:
            out[mask] = _pick(f.grades.ravel(), n, cfg, rng, q)
    return out


def estimate_prob(samples: np.ndarray, b) -> float:
    """Mean membership of the sampled points in ``b``; hit frequency for crisp ``b``."""
    samples = np.asarray(samples)
    if samples.size == 0:
        raise ValueError("no samples")
    return float(b.grades.ravel()[samples].mean())


@dataclass(frozen=True)
class BoundReport:
    bel: float
    pl: float
    estimate: float
    samples: int
    seed: int
    selection: str
    epsilon: float
    asserted: bool  # False when fuzzy focals put the run outside the crisp regime

    @property
    def passed(self) -> bool:
        return self.bel - self.epsilon <= self.estimate <= self.pl + self.epsilon

    def to_dict(self) -> dict:
        return {
            "bel": self.bel,
            "pl": self.pl,
            "estimate": self.estimate,
            "samples": self.samples,
            "seed": self.seed,
            "selection": self.selection,
            "epsilon": self.epsilon,
            "asserted": self.asserted,
            "pass": self.passed,
        }


def check_bounds(g: Granule, b, cfg: SimConfig) -> BoundReport:
    """Simulate ``g`` and compare the estimated probability of ``b`` with ``[Bel, Pl]``.

    Tolerance is ``4 * sqrt(0.25 / samples)``, four standard errors of the
    worst-case Bernoulli estimate.
    """
    bel, pl = prob_interval(g, b)
    est = estimate_prob(sample_granule(g, cfg, query=b), b)
    crisp = all(f.is_crisp() for f, _ in g.focals)
    return BoundReport(bel, pl, est, cfg.samples, cfg.seed, cfg.selection, cfg.epsilon, crisp)
