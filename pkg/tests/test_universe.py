import math

import pytest
from hypothesis import given, strategies as st

from usualvalues import make_grid_universe, make_label_universe, product
from usualvalues.universe import ProductUniverse, Universe, universe_from_dict


@pytest.mark.parametrize(
    "args, points",
    [
        ((0, 2, 1), [0, 1, 2]),
        ((5, 5, 1), [5]),
        ((0, 1, 0.25), [0, 0.25, 0.5, 0.75, 1]),
    ],
)
def test_grid_points(args, points):
    u = make_grid_universe(*args)
    assert u.kind == "grid"
    assert list(u.points) == pytest.approx(points, abs=1e-12)


@pytest.mark.parametrize("args", [(0, 2, 0), (0, 2, -1), (3, 2, 1)])
def test_grid_rejects_bad_parameters(args):
    with pytest.raises(ValueError):
        make_grid_universe(*args)


def test_grid_max_must_be_on_grid():
    with pytest.raises(ValueError, match="not reached"):
        make_grid_universe(0, 1, 0.3)


def test_grid_of_tenths_lands_exactly_on_max():
    u = make_grid_universe(0, 1, 0.1)
    assert len(u) == 11
    assert u.points[-1] == 1.0
    assert u.index(0.3) == 3  # 0.1 * 3 != 0.3 in binary


@given(
    st.integers(-50, 50),
    st.integers(0, 40),
    st.sampled_from([0.5, 1.0, 2.0, 0.25, 0.1]),
)
def test_grid_point_count(lo, n, step):
    hi = lo + n * step
    u = make_grid_universe(lo, hi, step)
    assert len(u) == math.floor((hi - lo) / step + 1e-9) + 1
    assert abs(u.points[-1] - hi) <= 1e-9


def test_label_universes():
    assert len(make_label_universe(["flies", "walks"])) == 2
    assert len(make_label_universe(["a"])) == 1
    with pytest.raises(ValueError, match="duplicate"):
        make_label_universe(["a", "a"])
    with pytest.raises(ValueError):
        make_label_universe([])


def test_product_cardinality_and_order():
    X = make_label_universe(["a", "b", "c"], id="X")
    Y = make_label_universe(["p", "q", "r", "s"], id="Y")
    XY = product(X, Y)
    assert len(XY) == 12
    pts = XY.points
    for i, x in enumerate(X.points):
        for j, y in enumerate(Y.points):
            assert pts[i * len(Y) + j] == (x, y)


def test_product_singletons_and_square():
    assert product(make_label_universe(["a"]), make_label_universe(["b"])).points == (("a", "b"),)
    X = make_label_universe(["u", "v"])
    XX = product(X, X)
    assert len(XX) == 4
    assert ("u", "v") in XX.points and ("v", "u") in XX.points
    assert XX.points.index(("u", "v")) != XX.points.index(("v", "u"))


def test_universes_are_immutable_and_serialise():
    u = make_grid_universe(0, 4, 0.5, id="G")
    with pytest.raises(Exception):
        u.points = (1,)
    assert Universe.from_dict(u.to_dict()) == u
    L = make_label_universe(["x", "y"], id="L")
    pu = product(u, L)
    assert universe_from_dict(pu.to_dict()) == pu
    assert isinstance(universe_from_dict(pu.to_dict()), ProductUniverse)


def test_numeric_point_lookup_uses_tolerance():
    u = make_grid_universe(0, 1, 0.25)
    assert u.index(0.75 + 1e-12) == 3
    with pytest.raises(KeyError):
        u.index(0.8)
