"""Reasoning with usual values via possibility-probability granules."""

from .combination import (
    TotalConflictError,
    combine_arith,
    combine_joint,
    combine_same_var,
    extend_granule,
    project_granule,
    resolve_conflict,
)
from .config import Config
from .fuzzy import (
    FuzzyRelation,
    FuzzySet,
    build_relation,
    cert,
    complement,
    crisp_interval,
    cyl_ext,
    join,
    join_rel,
    make_shape,
    meet,
    meet_rel,
    poss,
    project,
    singleton,
    trapezoid,
    triangular,
)
from .arithmetic import extend_binop, extend_binop_report
from .granules import Granule, belief, from_canonical, plausibility, prob_interval, usually, vacuous
from .inference import KnowledgeBase, infer, modus_ponens, special_case_F, tightness_compare
from .mc_oracle import SimConfig, check_bounds, estimate_prob, sample_granule
from .translation import And, Canonical, If, Or, Usually, translate
from .universe import ProductUniverse, Universe, make_grid_universe, make_label_universe, product

__all__ = [
    "TotalConflictError",
    "combine_arith",
    "combine_joint",
    "combine_same_var",
    "extend_granule",
    "project_granule",
    "resolve_conflict",
    "Config",
    "FuzzyRelation",
    "FuzzySet",
    "build_relation",
    "cert",
    "complement",
    "crisp_interval",
    "cyl_ext",
    "join",
    "join_rel",
    "make_shape",
    "meet",
    "meet_rel",
    "poss",
    "project",
    "singleton",
    "trapezoid",
    "triangular",
    "extend_binop",
    "extend_binop_report",
    "Granule",
    "belief",
    "from_canonical",
    "plausibility",
    "prob_interval",
    "usually",
    "vacuous",
    "KnowledgeBase",
    "infer",
    "modus_ponens",
    "special_case_F",
    "tightness_compare",
    "SimConfig",
    "check_bounds",
    "estimate_prob",
    "sample_granule",
    "And",
    "Canonical",
    "If",
    "Or",
    "Usually",
    "translate",
    "ProductUniverse",
    "Universe",
    "make_grid_universe",
    "make_label_universe",
    "product",
]

__version__ = "0.1.0"
