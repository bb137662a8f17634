"""Acceptance gate: eight end-to-end criteria, one PASS/FAIL line each.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import subprocess
import sys
import time
import warnings
from pathlib import Path

import numpy as np
import pytest

from conftest import labels, random_crisp_granule, random_crisp_set
from oracles import brute_extension, compositional_rule, crisp_to_set, shafer_bel, shafer_pl
from usualvalues import (
    And,
    Canonical,
    FuzzySet,
    If,
    Or,
    Usually,
    belief,
    combine_arith,
    combine_joint,
    from_canonical,
    make_grid_universe,
    modus_ponens,
    plausibility,
    translate,
    usually,
)
from usualvalues.inference import tightness_compare
from usualvalues.mc_oracle import SELECTIONS, SimConfig, check_bounds

ROOT = Path(__file__).parent.parent
CORPUS = sorted((ROOT / "corpus").glob("*.ukb"))
_capsys = None


def report(n, title, ok, detail=""):
    line = f"[acceptance {n}] {'PASS' if ok else 'FAIL'}  {title}"
    if detail:
        line += f"  ({detail})"
    with _capsys.disabled():
        print("\n" + line)
    assert ok, line


@pytest.fixture(autouse=True)
def _grab_capsys(capsys):
    global _capsys
    _capsys = capsys


def test_1_crisp_collapse():
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    worst = 0.0
    checks = 0
    for _ in range(200):
        u = labels(int(rng.integers(1, 6)), "U")
        g = random_crisp_granule(rng, u)
        plain = [(crisp_to_set(f.grades), w) for f, w in g.focals]
        for _ in range(5):
            b = random_crisp_set(rng, u)
            bs = crisp_to_set(b.grades)
            worst = max(worst, abs(plausibility(g, b) - shafer_pl(plain, bs)))
            worst = max(worst, abs(belief(g, b) - shafer_bel(plain, bs)))
            checks += 1
    elapsed = time.perf_counter() - t0
    report(1, "crisp collapse matches Shafer sums", worst <= 1e-9 and elapsed < 5,
           f"{checks} queries, max err {worst:.1e}, {elapsed:.2f}s")


def _tables(a, b, alpha, imp):
    """Expected focal/weight lists for the nine cases, built directly from the grade formulas."""
    A = a.grades[:, None]
    B = b.grades[None, :]
    shape = (len(a.grades), len(b.grades))
    one = np.ones(shape)
    if imp == "imp_luka":
        D = np.minimum(1, 1 - A + B)
    else:
        D = np.maximum(1 - A, B)
    H = np.broadcast_to(B, shape)  # antecedent replaced by the whole frame
    conj = np.minimum(A, B)
    disj = np.maximum(A, B)
    a_cyl = np.broadcast_to(A, shape)
    q = 1 - alpha
    return {
        "usually(canonical)": [(a.grades, alpha), (np.ones(len(a.grades)), q)],
        "usually(if)": [(D, alpha), (one, q)],
        "usually(or)": [(disj, alpha), (one, q)],
        "usually(and)": [(conj, alpha), (one, q)],
        "if(canonical, usually)": [(D, alpha), (one, q)],
        "if(usually, canonical)": [(D, alpha), (H, q)],
        "if(usually, usually)": [(D, alpha**2), (H, q * alpha), (one, q)],
        "and(usually, usually)": [(conj, alpha**2), (a_cyl, alpha * q), (H, q * alpha), (one, q**2)],
        "or(usually, usually)": [(disj, alpha**2), (one, 1 - alpha**2)],
    }


def _statements(alpha):
    P, Q = Canonical("v1", "A"), Canonical("v2", "B")
    return {
        "usually(canonical)": Usually(P, alpha),
        "usually(if)": Usually(If(P, Q), alpha),
        "usually(or)": Usually(Or(P, Q), alpha),
        "usually(and)": Usually(And(P, Q), alpha),
        "if(canonical, usually)": If(P, Usually(Q, alpha)),
        "if(usually, canonical)": If(Usually(P, alpha), Q),
        "if(usually, usually)": If(Usually(P, alpha), Usually(Q, alpha)),
        "and(usually, usually)": And(Usually(P, alpha), Usually(Q, alpha)),
        "or(usually, usually)": Or(Usually(P, alpha), Usually(Q, alpha)),
    }


def _matches(g, expected, tol):
    if len(g) != len(expected):
        return False
    used = set()
    for grades, w in expected:
        hit = [k for k, (f, fw) in enumerate(g.focals)
               if k not in used and f.grades.shape == np.shape(grades)
               and np.max(np.abs(f.grades - grades)) <= 1e-12 and abs(fw - w) <= tol]
        if not hit:
            return False
        used.add(hit[0])
    return True


def test_2_translation_tables():
    X, Y = labels(4, "X"), labels(3, "Y")
    a = FuzzySet(X, [0.2, 1.0, 0.6, 0.0])
    b = FuzzySet(Y, [1.0, 0.3, 0.0])
    sets = {"A": a, "B": b}
    bad = []
    total = 0
    for imp in ("imp_luka", "imp_kd"):
        for alpha in (0.5, 0.8, 0.9, 0.99):
            expected = _tables(a, b, alpha, imp)
            for name, s in _statements(alpha).items():
                total += 1
                g = translate(s, sets, imp=imp)
                if not _matches(g, expected[name], 1e-12):
                    bad.append(f"{name} a={alpha} {imp}")
    report(2, "nine translation cases reproduce their focal tables", not bad,
           f"{total - len(bad)}/{total} tables" + (f"; bad: {bad[:3]}" if bad else ""))


def test_3_reasoning_reproduction():
    X = make_grid_universe(0, 10, 1, id="X")
    Y = make_grid_universe(0, 10, 1, id="Y")
    A = FuzzySet(X, [1.0 if 3 <= x <= 7 else 0.0 for x in X.points])
    B = FuzzySet(Y, [max(0.0, 1 - abs(y - 5) / 2) for y in Y.points])
    P, Q = Canonical("v1", "A"), Canonical("v2", "B")
    rule = translate(Usually(If(P, Q), 0.9), {"A": A, "B": B}, imp="imp_kd")

    crisp = modus_ponens(rule, from_canonical("v1", A))
    f_crisp = crisp.focals[0][0]
    exact = f_crisp.grades.tolist() == B.grades.tolist() and crisp.focals[0][1] == pytest.approx(0.9, abs=1e-12)

    C = FuzzySet(X, [max(0.0, 1 - abs(x - 5) / 3) for x in X.points])
    double = modus_ponens(rule, usually("v1", C, 0.9))
    H = np.maximum(1 - A.grades[:, None], B.grades[None, :])
    F = compositional_rule(C.grades.tolist(), H.tolist())
    w = dict((("F" if not f.is_whole() else "Y"), wt) for f, wt in double.focals)
    two = (len(double) == 2 and double.focals[0][0].grades.tolist() == pytest.approx(F, abs=1e-12)
           and abs(w["F"] - 0.81) <= 1e-12 and abs(w["Y"] - 0.19) <= 1e-12)
    report(3, "reasoning example: F = B for crisp A = C; double usual gives 0.81 / 0.19",
           exact and two, f"F==B {exact}, weights {w['F']:.12f}/{w['Y']:.12f}")


def test_4_tightness():
    rng = np.random.default_rng(404)
    Y = labels(6, "Y")
    failures = 0
    for _ in range(100):
        f = rng.random(len(Y)).round(2)
        f[rng.integers(len(Y))] = 1.0
        f[rng.integers(len(Y))] = min(f.min(), 0.9)  # keep F short of the whole frame
        F = FuzzySet(Y, f)
        b = FuzzySet(Y, rng.random(len(Y)).round(2))
        alpha = float(rng.uniform(0.5, 0.99))
        try:
            r = tightness_compare(usually("v", F, alpha), usually("v", F, alpha * alpha), b)
        except AssertionError:
            failures += 1
            continue
        if not (r.pl_squared >= r.pl - 1e-12 and r.bel >= r.bel_squared - 1e-12):
            failures += 1
    report(4, "alpha bounds are at least as tight as alpha^2 bounds", failures == 0,
           f"{100 - failures}/100")


def _arith_case(rng, op):
    step = float(rng.choice([1.0, 0.5]))
    n = 5
    src = make_grid_universe(0, step * (n - 1), step, id="S")
    top = 2 * step * (n - 1) if op == "add" else (step * (n - 1)) ** 2
    out_step = step if op == "add" else step * step
    out = make_grid_universe(0, top, out_step, id="R")
    assert len(out) <= 25
    ga = rng.random(n).round(2)
    gb = rng.random(n).round(2)
    ga[rng.integers(n)] = 1.0
    gb[rng.integers(n)] = 1.0
    ga[0 if op == "add" else n - 1] = 0.0  # leaves an unreachable corner so A op B is not the whole grid
    A, B = FuzzySet(src, ga), FuzzySet(src, gb)
    return src, out, A, B


def test_5_arithmetic_granules():
    rng = np.random.default_rng(505)
    bad = []
    for op in ("add", "mul"):
        for trial in range(25):
            src, out, A, B = _arith_case(rng, op)
            alpha = float(rng.choice([0.5, 0.8, 0.9, 0.99]))
            with warnings.catch_warnings():
                warnings.simplefilter("error")
                g = combine_arith(usually("a", A, alpha), usually("b", B, alpha), op, out)
            brute = brute_extension(list(src.points), A.grades.tolist(), list(src.points), B.grades.tolist(),
                                    op, list(out.points))
            focal = [f for f, _ in g.focals if not f.is_whole()]
            ok = (len(g) == 2 and len(focal) == 1
                  and focal[0].grades.tolist() == brute
                  and abs(g.weight_of(focal[0]) - alpha**2) <= 1e-12
                  and abs(g.weight_of(FuzzySet.whole(out)) - (1 - alpha**2)) <= 1e-12)
            if not ok:
                bad.append((op, trial))
    report(5, "usual arithmetic gives {A op B @ a^2, R @ 1-a^2} matching brute force",
           not bad, f"{50 - len(bad)}/50 cases")


def test_6_monte_carlo_bounds():
    rng = np.random.default_rng(606)
    t0 = time.perf_counter()
    misses = []
    runs = 0
    for i in range(100):
        u = labels(int(rng.integers(1, 7)), "U")
        g = random_crisp_granule(rng, u)
        b = random_crisp_set(rng, u)
        for sel in SELECTIONS:
            r = check_bounds(g, b, SimConfig(100_000, seed=i, selection=sel, point=i))
            runs += 1
            if not r.passed:
                misses.append((i, sel, r.bel, r.estimate, r.pl))
    elapsed = time.perf_counter() - t0
    eps = SimConfig(100_000).epsilon
    report(6, "Monte-Carlo estimates fall inside [Bel - eps, Pl + eps]",
           not misses and elapsed < 60,
           f"{runs - len(misses)}/{runs} runs, eps={eps:.4f}, {elapsed:.1f}s")


def test_7_compositional_identity():
    rng = np.random.default_rng(707)
    bad = 0
    for _ in range(20):
        X, Y = labels(int(rng.integers(2, 6)), "X"), labels(int(rng.integers(2, 6)), "Y")
        a = rng.random(len(X)).round(2)
        b = rng.random(len(Y)).round(2)
        a[rng.integers(len(X))] = 1.0
        b[rng.integers(len(Y))] = 1.0
        A, B = FuzzySet(X, a), FuzzySet(Y, b)
        alpha, beta = rng.choice([0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99], size=2, replace=False)
        s = If(Usually(Canonical("v1", "A"), float(alpha)), Usually(Canonical("v2", "B"), float(beta)))
        g = translate(s, {"A": A, "B": B})
        direct = combine_joint(usually("v1", A, float(alpha)), usually("v2", B, float(beta)), "imp_luka")
        if not g.equals(direct, tol=1e-12):
            bad += 1
    report(7, "If(Usually, Usually) equals the generalized implication combination", bad == 0,
           f"{20 - bad}/20")


def test_8_cli_corpus():
    names = {p.name for p in CORPUS}
    cmd = [sys.executable, "-m", "usualvalues", "run", "--format", "json"]
    outputs = []
    codes = []
    for _ in range(2):
        proc = subprocess.run(cmd + [str(p) for p in CORPUS], capture_output=True, cwd=ROOT)
        codes.append(proc.returncode)
        outputs.append(proc.stdout)
    ok = (len(CORPUS) >= 6 and {"reasoning_single.ukb", "reasoning_double.ukb"} <= names
          and codes == [0, 0] and outputs[0] == outputs[1] and len(outputs[0]) > 0)
    report(8, "corpus runs end to end with byte-stable JSON", ok,
           f"{len(CORPUS)} files, exit codes {codes}, {len(outputs[0])} bytes")

