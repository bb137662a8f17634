"""How much the [Bel, Pl] interval widens when one usual premise becomes two.

For the reasoning example (trapezoid antecedent, triangular consequent and
fact on 0..10) sweep alpha and report the interval for the consequent under
a certain fact versus a usual fact, i.e. alpha versus alpha^2 qualification.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from usualvalues import (
    Canonical,
    If,
    Usually,
    from_canonical,
    make_grid_universe,
    make_shape,
    modus_ponens,
    prob_interval,
    translate,
    usually,
)


@dataclass(frozen=True)
class SweepConfig:
    alphas: tuple = (0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99)
    implication: str = "imp_kd"


def sweep(cfg: SweepConfig):
    X = make_grid_universe(0, 10, 1, id="X")
    Y = make_grid_universe(0, 10, 1, id="Y")
    A = make_shape("trapezoid", X, 2, 4, 6, 8)
    B = make_shape("triangular", Y, 3, 5, 7)
    C = make_shape("triangular", X, 2, 5, 8)
    rows = []
    for alpha in cfg.alphas:
        rule = translate(
            Usually(If(Canonical("v1", "A"), Canonical("v2", "B")), alpha), {"A": A, "B": B}, imp=cfg.implication
        )
        single = modus_ponens(rule, from_canonical("v1", C))
        double = modus_ponens(rule, usually("v1", C, alpha))
        rows.append((alpha, *prob_interval(single, B), *prob_interval(double, B)))
    return np.array(rows)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description="alpha vs alpha^2 interval sweep")
    ap.add_argument("--implication", choices=("imp_kd", "imp_luka"), default="imp_kd")
    args = ap.parse_args()
    table = sweep(SweepConfig(implication=args.implication))
    print(f"{'alpha':>6} {'bel':>8} {'pl':>8} {'bel*':>8} {'pl*':>8} {'widening':>9}")
    for alpha, bel, pl, bel2, pl2 in table:
        print(f"{alpha:6.2f} {bel:8.4f} {pl:8.4f} {bel2:8.4f} {pl2:8.4f} {(pl2 - bel2) - (pl - bel):9.4f}")
