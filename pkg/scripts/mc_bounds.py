"""Monte-Carlo sanity sweep: estimated probabilities against [Bel, Pl].

Draws random crisp granules and query sets and, for each selection rule,
records how close the estimate sits to either bound (in units of epsilon).
"""

import argparse
import time
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from usualvalues import FuzzySet, Granule, make_label_universe
from usualvalues.mc_oracle import SELECTIONS, SimConfig, check_bounds


@dataclass(frozen=True)
class SweepConfig:
    granules: int = 100
    samples: int = 100_000
    max_size: int = 6
    max_focals: int = 4
    seed: int = 0


def random_granule(rng, u, max_focals):
    k = int(rng.integers(1, max_focals + 1))
    focals = []
    for _ in range(k):
        bits = rng.random(len(u)) < 0.5
        if not bits.any():
            bits[rng.integers(len(u))] = True
        focals.append(FuzzySet(u, bits.astype(float)))
    w = rng.dirichlet(np.ones(k))
    w[-1] = 1.0 - w[:-1].sum()
    return Granule("v", list(zip(focals, w)))


def sweep(cfg: SweepConfig):
    rng = np.random.default_rng(cfg.seed)
    slack = defaultdict(list)
    failures = 0
    for i in range(cfg.granules):
        u = make_label_universe([f"u{j}" for j in range(int(rng.integers(1, cfg.max_size + 1)))])
        g = random_granule(rng, u, cfg.max_focals)
        b = FuzzySet(u, (rng.random(len(u)) < 0.5).astype(float))
        for sel in SELECTIONS:
            r = check_bounds(g, b, SimConfig(cfg.samples, seed=i, selection=sel, point=i))
            failures += not r.passed
            slack[sel].append(min(r.estimate - r.bel, r.pl - r.estimate) / r.epsilon)
    return slack, failures


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--granules", type=int, default=100)
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    t0 = time.perf_counter()
    slack, failures = sweep(SweepConfig(args.granules, args.samples, seed=args.seed))
    print(f"{'selection':>20} {'min slack/eps':>14} {'median':>8}")
    for sel, xs in slack.items():
        print(f"{sel:>20} {min(xs):14.3f} {np.median(xs):8.3f}")
    print(f"failures: {failures}  ({time.perf_counter() - t0:.1f}s)")
