"""Acceptance criteria, one test each.

Every test prints a single ``criterion N ... PASS/FAIL`` line (shown even
under output capture) and then asserts the criterion.
"""

import math
import time

import numpy as np
import pytest

from riccati_foliations.aut_classify import PAPER_TYPE, classify
from riccati_foliations.holonomy import (
    Arc,
    LocalModel,
    LoopPath,
    Segment,
    analytic_holonomy,
    gluing_map,
    holonomy_generators,
    lift,
    local_model_field,
    numeric_holonomy,
    product_relation,
    verify_synthesis,
)
from riccati_foliations.matrix_core import projective_distance
from riccati_foliations.normal_form import check_riccati_cn, check_riccati_cp2, transversality_at
from riccati_foliations.poly_vf import MultiPoly, PolyVectorField, base_chart, cp2_field

from conftest import (
    const,
    jordan_matrix,
    okamoto,
    random_conjugator,
    random_eigenvalues,
    random_riccati_field,
    x_poly,
    xyz,
)


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail, elapsed, budget):
        ok = ok and elapsed < budget
        line = (f"criterion {number} {title}: {'PASS' if ok else 'FAIL'} "
                f"({detail}; {elapsed:.2f} s of {budget:g} s)")
        with capsys.disabled():
            print("\n" + line)
        return ok
    return emit


def _same_points(got, expected, tol):
    return len(got) == len(expected) and all(
        min(projective_distance(g, e) for g in got) <= tol for e in expected)


# -- 1 ----------------------------------------------------------------------

E1, E2, E3 = np.eye(3, dtype=complex)
GOLDEN = {
    "I": ([E1, E2, E3], []),
    "II1": ([E3], [E3]),
    "II2": ([E1, E3], []),
    "III1": (None, None),
    "III2": ([], [E2]),
    "III3": ([E1], []),
}


def test_criterion_1_classification_golden(report):
    t0 = time.perf_counter()
    bad = []
    for case, (pts, lines) in GOLDEN.items():
        c = classify(jordan_matrix(case, [2.0, 3.0, 5.0]))
        fl = c.fixed_locus
        ok = c.jordan_case == case and c.paper_type == PAPER_TYPE[case]
        if pts is None:
            ok = ok and fl.is_all
        else:
            ok = (ok and not fl.is_all
                  and sorted(map(tuple, fl.points)) == sorted(map(tuple, pts))
                  and sorted(map(tuple, fl.lines)) == sorted(map(tuple, lines)))
        if not ok:
            bad.append(case)
    elapsed = time.perf_counter() - t0
    assert report(1, "classification golden suite", not bad,
                  f"6 normal forms, mismatches {bad or 'none'}", elapsed, 1.0)


# -- 2 ----------------------------------------------------------------------

def test_criterion_2_conjugation_robustness(report):
    rng = np.random.default_rng(2)
    t0 = time.perf_counter()
    wrong, worst = 0, 0.0
    for case in GOLDEN:
        for _ in range(1000):
            J = jordan_matrix(case, random_eigenvalues(rng))
            P = random_conjugator(rng)
            s = 10 ** rng.uniform(-3, 3) * np.exp(1j * rng.uniform(-np.pi, np.pi))
            c = classify(s * np.linalg.solve(P, J @ P))
            ref = classify(J).fixed_locus
            if c.paper_type != PAPER_TYPE[case] or c.fixed_locus.is_all != ref.is_all:
                wrong += 1
                continue
            pairs = [(c.fixed_locus.points, [np.linalg.solve(P, p) for p in ref.points]),
                     (c.fixed_locus.lines, [P.T @ ell for ell in ref.lines])]
            for got, want in pairs:
                if len(got) != len(want):
                    wrong += 1
                    break
                for w in want:
                    worst = max(worst, min(projective_distance(g, w) for g in got))
    elapsed = time.perf_counter() - t0
    ok = wrong == 0 and worst <= 1e-7
    assert report(2, "conjugation/scaling robustness", ok,
                  f"6000 matrices, {wrong} misclassified, worst locus angle {worst:.1e}",
                  elapsed, 30.0)


# -- 3 ----------------------------------------------------------------------

def test_criterion_3_okamoto(report):
    t0 = time.perf_counter()
    X = okamoto(1.0, 1.0)
    res = check_riccati_cp2(X)
    want = {"p": 1, "A": 0, "B": 0, "C": 1, "D": 0, "E": -1, "a": -1, "b": -1, "c": 0}
    got = ({k: v.terms for k, v in res.form.coefficients().items()} if res.accepted else {})
    exact = res.accepted and all(
        got[k] == ({(0,): complex(v)} if v else {}) for k, v in want.items())
    rng = np.random.default_rng(3)
    xs = 3 * (rng.normal(size=32) + 1j * rng.normal(size=32))
    transverse = sum(transversality_at(X, x0).transverse for x0 in xs)
    W = base_chart(X).field.components[0]
    w_invariant = all(e[0] >= 1 for e, _ in W.items()) and not W.is_zero()
    elapsed = time.perf_counter() - t0
    ok = exact and transverse == 32 and w_invariant
    assert report(3, "Okamoto regression", ok,
                  f"coefficients exact={exact}, transverse {transverse}/32, w=0 invariant={w_invariant}",
                  elapsed, 1.0)


# -- 4 ----------------------------------------------------------------------

def _violating_fields(rng):
    """(field, expected constraint) pairs, ten of each violation family."""
    x, y, z = xyz()
    one = const(1)

    def c():
        return complex(rng.normal(), rng.normal())

    def xp():
        return x_poly([c(), c()])

    out = []
    for _ in range(10):
        E, D = xp(), xp()
        base = c() * x + c()
        # Possibility 4: R of fiber degree 0 cannot share the quadratic terms of Q
        out.append((cp2_field(base, E * y * y + xp() * y + xp(), xp()), "d≠E"))
        # F z^2 in Q
        out.append((cp2_field(base, E * y * y + D * y * z + c() * z * z, E * y * z + D * z * z), "F≠0"))
        # beta > alpha
        out.append((cp2_field(base, xp() * y + xp() * z + xp(), c() * z * z + xp() * y), "β>α"))
        # Possibility 5: linear R with quadratic Q
        out.append((cp2_field(base, E * y * y + D * y * z + xp(), xp() * y + xp() * z), "d≠E"))
        out.append((cp2_field(base, D * y * z + xp() * y, xp() * z + xp()), "f≠D"))
        # Possibility 6: mismatched sharing of D and E
        out.append((cp2_field(base, E * y * y + D * y * z, (E + one) * y * z + D * z * z), "d≠E"))
        out.append((cp2_field(base, E * y * y + D * y * z, E * y * z + (D + one) * z * z), "f≠D"))
        out.append((cp2_field(base, E * y * y + D * y * z, E * y * z + D * z * z + c() * y * y), "e≠0"))
    return out


def test_criterion_4_possibility_rejections(report):
    rng = np.random.default_rng(4)
    t0 = time.perf_counter()
    fields = _violating_fields(rng)
    labels_ok = witness_ok = 0
    for X, label in fields:
        rej = check_riccati_cp2(X).rejection
        labels_ok += rej is not None and rej.constraint == label
        base = X.components[0]
        x0 = complex(rng.normal(), rng.normal())
        while abs(base(x0, 0, 0)) < 1e-3:
            x0 += 0.5
        v = transversality_at(X, x0)
        witness_ok += (v.kind == "Tangent" and v.chart == "cp2:uv"
                       and v.witness[0] == x0 and v.witness[1] == 0)
    elapsed = time.perf_counter() - t0
    n = len(fields)
    ok = labels_ok == n and witness_ok == n
    assert report(4, "Possibility-4/5/6 rejection suite", ok,
                  f"labels {labels_ok}/{n}, tangency witnesses (x0, u=0, v0) {witness_ok}/{n}",
                  elapsed, 5.0)


# -- 5 ----------------------------------------------------------------------

def _random_model(rng, case):
    def c(scale=1.0):
        return scale * complex(rng.normal(), rng.normal())
    center = c()
    if case == "a":
        return LocalModel.case_a(c(), center)
    if case == "b":
        return LocalModel.case_b(np.exp(c(0.5)), c(), center)
    if case == "c":
        return LocalModel.case_c(c(0.4), c(0.4), center)
    if case == "d":
        return LocalModel.case_d(c(0.4), center)
    return LocalModel.case_e(c(), center)


def test_criterion_5_local_model_oracle(report):
    rng = np.random.default_rng(5)
    t0 = time.perf_counter()
    worst_sup = worst_res = 0.0
    for case in "abcde":
        for _ in range(50):
            m = _random_model(rng, case)
            res = numeric_holonomy(local_model_field(m), LoopPath.circle(m.center, 1.0),
                                   n_samples=8, tol=1e-10)
            worst_sup = max(worst_sup, res.sup_distance(analytic_holonomy(m).embed()))
            worst_res = max(worst_res, res.residual)
    elapsed = time.perf_counter() - t0
    ok = worst_sup <= 1e-6 and worst_res <= 1e-7
    assert report(5, "local-model holonomy oracle", ok,
                  f"250 models, worst sup-distance {worst_sup:.1e}, worst fit residual {worst_res:.1e}",
                  elapsed, 120.0)


# -- 6 ----------------------------------------------------------------------

def test_criterion_6_product_relation(report):
    rng = np.random.default_rng(6)
    t0 = time.perf_counter()
    worst, with_inf = 0.0, 0
    for i in range(20):
        X, _ = random_riccati_field(rng, 1 + i % 3, scale=0.2)
        gens = holonomy_generators(X, -3j, tol=1e-10)
        with_inf += gens[-1].fiber == math.inf
        worst = max(worst, product_relation(gens)[1])
    elapsed = time.perf_counter() - t0
    assert report(6, "monodromy product relation", worst <= 1e-6,
                  f"20 fields (deg p 1-3, {with_inf} with infinity), worst distance to I {worst:.1e}",
                  elapsed, 300.0)


# -- 7 ----------------------------------------------------------------------

TYPES = ["I", "II1", "II2", "III2", "III3"]


def test_criterion_7_synthesis(report):
    rng = np.random.default_rng(7)
    t0 = time.perf_counter()
    runs = failed = 0
    worst = {"analytic": 0.0, "numeric": 0.0, "product": 0.0}
    for k in (1, 2, 3):
        for r in range(10):
            cases = [TYPES[(r + j) % 5] for j in range(k)]
            gens = []
            for case in cases:
                J = jordan_matrix(case, random_eigenvalues(rng, min_gap=0.5))
                P = random_conjugator(rng, max_cond=20)
                gens.append(np.linalg.solve(P, J @ P))
            rep = verify_synthesis(gens, int_tol=1e-10)
            runs += 1
            failed += not rep.passed
            worst["analytic"] = max(worst["analytic"], max(g.analytic_error for g in rep.generators))
            worst["numeric"] = max(worst["numeric"], max(g.numeric_error for g in rep.generators))
            worst["product"] = max(worst["product"], rep.product_error)
    elapsed = time.perf_counter() - t0
    ok = (failed == 0 and worst["analytic"] <= 1e-10 and worst["numeric"] <= 1e-6
          and worst["product"] <= 1e-8)
    detail = (f"{runs} lists, {failed} failed, worst analytic {worst['analytic']:.1e}, "
              f"numeric {worst['numeric']:.1e}, product {worst['product']:.1e}")
    assert report(7, "synthesis end-to-end", ok, detail, elapsed, 180.0)


# -- 8 ----------------------------------------------------------------------

def test_criterion_8_gluing_constancy(report):
    rng = np.random.default_rng(8)
    t0 = time.perf_counter()
    worst = 0.0
    models = [LocalModel.case_c(0.3 + 0.2j, -0.25 + 0.1j), LocalModel.case_e(1.5 - 0.7j)]
    for m in models:
        # radial moves and arcs inside the annulus 0.5 < |x| < 1.5, away from the cut
        up, down = Arc(m.center, 1.0, 0.0, 2.8), Arc(m.center, 1.0, 0.0, -2.8)
        loop = LoopPath((Segment(0.5, 1.4), Segment(1.4, 1.0), up, up.reversed(),
                         down, down.reversed(), Segment(1.0, 0.5)), 0.5)
        pts = rng.normal(size=(10, 3)) + 1j * rng.normal(size=(10, 3))
        pts[:, 2] = 1.0
        _, _, traj = lift(local_model_field(m), loop, pts, tol=1e-11, record=True)
        for k in range(10):
            uv = []
            for x, W in zip(traj.x, traj.W):
                w = W[k]
                uv.append(gluing_map(m, x).inverse()(w[0] / w[2], w[1] / w[2]))
            uv = np.array(uv)
            worst = max(worst, float(np.max(np.abs(uv - uv[0]))))
    elapsed = time.perf_counter() - t0
    assert report(8, "gluing-leaf constancy", worst <= 1e-7,
                  f"cases C and E, 10 leaves each, worst drift {worst:.1e}", elapsed, 60.0)


# -- 9 ----------------------------------------------------------------------

def test_criterion_9_cn_checker(report):
    rng = np.random.default_rng(9)
    t0 = time.perf_counter()
    accepted = rejected = 0
    total = 0
    for n in (1, 2, 3):
        names = ("x",) + tuple(f"y{j}" for j in range(1, n + 1))
        ys = MultiPoly.variables(names)

        def xp():
            d = int(rng.integers(0, 4))
            return MultiPoly.univariate(rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1), names, 0)

        for _ in range(100):
            comps = [xp()] + [xp() * ys[j] ** 2 + xp() * ys[j] + xp() for j in range(1, n + 1)]
            X = PolyVectorField("cn", tuple(comps))
            res = check_riccati_cn(X)
            accepted += res.accepted and res.form.reassemble() == X
        for r in range(100):
            comps = [xp()] + [xp() * ys[j] ** 2 + xp() * ys[j] + xp() for j in range(1, n + 1)]
            j = int(rng.integers(1, n + 1))
            if n == 1 or r % 2 == 0:
                comps[j] = comps[j] + complex(rng.normal(), 1) * ys[j] ** 3
                label = f"deg_y{j}(Q{j}) <= 2"
            else:
                i = int(rng.choice([k for k in range(1, n + 1) if k != j]))
                comps[j] = comps[j] + complex(rng.normal(), 1) * ys[i]
                label = f"deg_y{i}(Q{j}) = 0"
            res = check_riccati_cn(PolyVectorField("cn", tuple(comps)))
            rejected += res.rejection is not None and res.rejection.constraint == label
        total += 100
    elapsed = time.perf_counter() - t0
    ok = accepted == total and rejected == total
    assert report(9, "product-of-lines checker", ok,
                  f"accepted+reassembled {accepted}/{total}, correctly rejected {rejected}/{total}",
                  elapsed, 10.0)
