"""Independent reference computations used by the tests.

None of these call into the library's measure, combination or arithmetic
code; they work on plain Python sets, lists and loops.
"""

from __future__ import annotations

from collections import defaultdict


def shafer_pl(focals, b):
    """Classical plausibility: mass of focals that intersect ``b``.

    ``focals`` is a list of ``(frozenset_of_indices, weight)``; ``b`` a set.
    """
    return sum(w for a, w in focals if a & b)


def shafer_bel(focals, b):
    """Classical belief: mass of non-empty focals contained in ``b``."""
    return sum(w for a, w in focals if a and a <= b)


def dempster_unnormalised(m1, m2):
    """Conjunctive combination of two crisp mass functions, empty set kept."""
    out = defaultdict(float)
    for a, wa in m1:
        for b, wb in m2:
            out[frozenset(a & b)] += wa * wb
    return dict(out)


def crisp_to_set(grades):
    return frozenset(i for i, g in enumerate(grades) if g > 0.5)


def max_min_poss(b, a):
    best = 0.0
    for x in range(len(a)):
        best = max(best, min(b[x], a[x]))
    return best


def nearest_index(points, v, tol=1e-9):
    """Lowest index among points at minimal distance from ``v`` (ties within ``tol``)."""
    if v < points[0] - tol or v > points[-1] + tol:
        return None
    dists = [abs(p - v) for p in points]
    best = min(dists)
    for i, d in enumerate(dists):
        if d <= best + tol:
            return i


def brute_extension(e_points, e_grades, f_points, f_grades, op, out_points):
    """Sup-min extension principle by a double loop over every operand pair."""
    import math

    g = [0.0] * len(out_points)
    for y, ey in zip(e_points, e_grades):
        for z, fz in zip(f_points, f_grades):
            w = min(ey, fz)
            if w <= 0:
                continue
            if op == "add":
                v = y + z
            elif op == "sub":
                v = y - z
            elif op == "mul":
                v = y * z
            elif op == "div":
                if z == 0:
                    continue
                v = y / z
            elif op == "pow":
                if y < 0 and not float(z).is_integer():
                    continue
                if y == 0 and z < 0:
                    continue
                v = y ** z
                if isinstance(v, complex) or not math.isfinite(v):
                    continue
            k = nearest_index(out_points, v)
            if k is not None:
                g[k] = max(g[k], w)
    return g


def compositional_rule(c, h):
    """Max-min composition ``F(y) = max_x min(C(x), H(x, y))`` on nested lists."""
    ny = len(h[0])
    return [max(min(c[x], h[x][y]) for x in range(len(c))) for y in range(ny)]
