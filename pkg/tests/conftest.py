import numpy as np
import pytest
from hypothesis import strategies as st

from usualvalues import FuzzySet, Granule, make_grid_universe, make_label_universe


@pytest.fixture
def X3():
    return make_label_universe(["x1", "x2", "x3"], id="X")


@pytest.fixture
def Y2():
    return make_label_universe(["y1", "y2"], id="Y")


def labels(n, id="U"):
    return make_label_universe([f"{id.lower()}{i}" for i in range(n)], id=id)


grade = st.sampled_from([0.0, 0.1, 0.25, 0.3, 0.5, 0.7, 0.75, 0.9, 1.0])


@st.composite
def fuzzy_sets(draw, universe, normal=False, nonnull=False):
    g = draw(st.lists(grade, min_size=len(universe), max_size=len(universe)))
    if normal:
        g[draw(st.integers(0, len(universe) - 1))] = 1.0
    elif nonnull and max(g) == 0:
        g[0] = 0.5
    return FuzzySet(universe, g)


@st.composite
def crisp_sets(draw, universe, nonempty=False):
    bits = draw(st.lists(st.booleans(), min_size=len(universe), max_size=len(universe)))
    if nonempty and not any(bits):
        bits[draw(st.integers(0, len(universe) - 1))] = True
    return FuzzySet(universe, [float(b) for b in bits])


@st.composite
def weights(draw, k):
    raw = draw(st.lists(st.integers(1, 20), min_size=k, max_size=k))
    total = sum(raw)
    w = [r / total for r in raw]
    w[-1] = 1.0 - sum(w[:-1])
    return w


@st.composite
def crisp_granules(draw, universe, variable="v", max_focals=4):
    k = draw(st.integers(1, max_focals))
    focals = [draw(crisp_sets(universe, nonempty=True)) for _ in range(k)]
    return Granule(variable, list(zip(focals, draw(weights(k)))))


@st.composite
def fuzzy_granules(draw, universe, variable="v", max_focals=4, normal=True):
    k = draw(st.integers(1, max_focals))
    focals = [draw(fuzzy_sets(universe, normal=normal, nonnull=True)) for _ in range(k)]
    return Granule(variable, list(zip(focals, draw(weights(k)))))


def random_crisp_granule(rng, universe, variable="v", max_focals=4):
    """numpy-driven counterpart of ``crisp_granules`` for bulk acceptance runs."""
    n = len(universe)
    k = int(rng.integers(1, max_focals + 1))
    focals = []
    for _ in range(k):
        bits = rng.random(n) < 0.5
        if not bits.any():
            bits[rng.integers(n)] = True
        focals.append(FuzzySet(universe, bits.astype(float)))
    w = rng.random(k) + 0.05
    w = w / w.sum()
    w[-1] = 1.0 - w[:-1].sum()
    return Granule(variable, list(zip(focals, w)))


def random_crisp_set(rng, universe):
    return FuzzySet(universe, (rng.random(len(universe)) < 0.5).astype(float))


def grid(lo, hi, step, id="R"):
    return make_grid_universe(lo, hi, step, id=id)


def as_array(fs):
    return np.asarray(fs.grades)
