"""Acceptance gate: one test per release criterion, each printing a single
pass/fail line.  Tolerances are pinned here and nowhere loosened."""

import math
import time

import numpy as np
import pytest

from quadnum import (
    CausalType,
    FormClass,
    System,
    cayley,
    derive_constants,
    multiplication_table,
    parse_form,
    rodrigues,
    sandwich_rotation,
    skew_matrix,
)
from quadnum.algebra import (
    PolarCase,
    character,
    classify_number,
    classify_vector,
    from_polar,
    multiply,
    polar_decompose,
    vector_product,
)
from quadnum.oracles import (
    exact_lightlike_system,
    random_conditioned_form,
    random_form,
    random_lightlike_number,
    random_number,
    random_unit_axis,
    random_unit_number,
    series_exponential,
)
from quadnum.structure import identity_residuals

EXAMPLE_METRIC = [[6.0, 3.0, 2.0], [3.0, 2.0, 2.0], [2.0, 2.0, 3.0]]


def _report(capsys, num, name, ok, detail):
    with capsys.disabled():
        print(f"criterion {num} [{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"criterion {num} ({name}): {detail}"


def test_criterion_1_example_constants(capsys):
    form = parse_form(metric=EXAMPLE_METRIC)
    best = math.inf
    for _ in range(5):
        t0 = time.perf_counter()
        sc = derive_constants(form)
        best = min(best, time.perf_counter() - t0)
    expected = (2.0, -6.0, 3.0, 5.0, -14.0, 2.0)
    err = max(abs(g - w) for g, w in zip(sc.independent, expected))
    ok = err <= 1e-12 and best < 1e-3
    _report(capsys, 1, "worked-example structure constants",
            ok, f"max error {err:.1e}, runtime {best * 1e3:.3f} ms")


def test_criterion_2_example_cross_product(capsys):
    system = System.from_metric(EXAMPLE_METRIC)
    ca = np.array([0.0, 1.0 / math.sqrt(2.0), -math.sqrt(2.0) / 3.0])
    cb = np.array([1.0 / math.sqrt(2.0), 0.0, -math.sqrt(2.0) / 3.0])
    out = vector_product(system, ca, cb)
    err = float(np.max(np.abs(out - np.array([0.0, 0.0, -1.0 / 6.0]))))
    ok = err <= 1e-12
    _report(capsys, 2, "worked-example cross product CAxCB", ok, f"max error {err:.1e}")


def _expected_quaternion_table():
    t = np.zeros((4, 4, 4))
    for n in range(4):
        t[0, n, n] = t[n, 0, n] = 1.0
    for n in (1, 2, 3):
        t[n, n, 0] = -1.0
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        t[a, b, c] = 1.0
        t[b, a, c] = -1.0
    return t


def _expected_split_table():
    t = np.zeros((4, 4, 4))
    for n in range(4):
        t[0, n, n] = t[n, 0, n] = 1.0
    t[1, 1, 0] = -1.0
    t[2, 2, 0] = 1.0
    t[3, 3, 0] = 1.0
    t[1, 2, 3], t[2, 1, 3] = 1.0, -1.0   # ij = k
    t[1, 3, 2], t[3, 1, 2] = -1.0, 1.0   # ik = -j
    t[2, 3, 1], t[3, 2, 1] = -1.0, 1.0   # jk = -i
    return t


def test_criterion_3_specializations(capsys):
    sphere = parse_form(metric=np.eye(3))
    got_h = multiplication_table(derive_constants(sphere), sphere)
    err_h = float(np.max(np.abs(got_h - _expected_quaternion_table())))
    split = parse_form(metric=np.diag([-1.0, 1.0, 1.0]))
    got_s = multiplication_table(derive_constants(split), split)
    err_s = float(np.max(np.abs(got_s - _expected_split_table())))
    ok = err_h == 0.0 and err_s == 0.0
    _report(capsys, 3, "quaternion/split-quaternion recovery",
            ok, f"Hamilton error {err_h:.1e}, split error {err_s:.1e}")


def test_criterion_4_structure_identities(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(20260826)
    worst = 0.0
    for cls in FormClass:
        for _ in range(1000):
            form = random_form(rng, form_class=cls)
            res = identity_residuals(derive_constants(form), form)
            scale = max(1.0, float(np.max(np.abs(form.coeffs))))
            worst = max(worst, float(np.max(res)) / scale)
    assoc = 0.0
    system = System.from_metric(EXAMPLE_METRIC)
    for _ in range(500):
        a, b, c = (random_number(rng, system) for _ in range(3))
        lhs = multiply(multiply(a, b), c).components
        rhs = multiply(a, multiply(b, c)).components
        assoc = max(assoc, float(np.max(np.abs(lhs - rhs)))
                    / max(1.0, float(np.max(np.abs(lhs)))))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and assoc <= 1e-8 and elapsed < 5.0
    _report(capsys, 4, "structure identities + associativity", ok,
            f"identity residual {worst:.1e}, associativity {assoc:.1e}, "
            f"{elapsed:.2f} s")


def test_criterion_5_sandwich_congruence(capsys):
    rng = np.random.default_rng(5)
    worst_cong = worst_det = worst_axis = 0.0
    for n in range(1000):
        cls = FormClass.ELLIPSOID if n % 2 == 0 else FormClass.HYPERBOLOID21
        system = System.from_form(random_conditioned_form(rng, cls))
        causal = None if cls is FormClass.ELLIPSOID else CausalType.TIMELIKE
        q = random_unit_number(rng, system, causal)
        _, rot = sandwich_rotation(q)
        metric = system.form.metric
        worst_cong = max(worst_cong, float(np.max(np.abs(
            rot.matrix.T @ metric @ rot.matrix - metric))))
        worst_det = max(worst_det, abs(rot.det - 1.0))
        worst_axis = max(worst_axis, rot.axis_residual)
    ok = worst_cong <= 1e-9 and worst_det <= 1e-9 and worst_axis <= 1e-9
    _report(capsys, 5, "sandwich rotation congruence", ok,
            f"congruence {worst_cong:.1e}, det {worst_det:.1e}, "
            f"axis {worst_axis:.1e}")


def test_criterion_6_rodrigues_vs_series(capsys):
    rng = np.random.default_rng(6)
    worst = {"circular": 0.0, "hyperbolic": 0.0, "lightlike": 0.0}
    for branch in worst:
        for _ in range(300):
            cls = (FormClass.ELLIPSOID if branch == "circular"
                   and rng.integers(2) else FormClass.HYPERBOLOID21)
            system = System.from_form(random_conditioned_form(rng, cls))
            v = random_unit_axis(rng, system, branch)
            theta = rng.uniform(-math.pi, math.pi)
            rod = rodrigues(system, v, theta)
            sign = -1.0 if branch == "lightlike" else 1.0
            oracle = series_exponential(skew_matrix(system, v),
                                        sign * theta, 30)
            worst[branch] = max(worst[branch],
                                float(np.max(np.abs(rod.matrix - oracle))))
    cube = 0.0
    for _ in range(50):
        system, axis = exact_lightlike_system(rng)
        s = skew_matrix(system, axis)
        cube = max(cube, float(np.max(np.abs(s @ s @ s))))
    ok = max(worst.values()) <= 1e-8 and cube <= 1e-12
    _report(capsys, 6, "Rodrigues vs series oracle", ok,
            f"circular {worst['circular']:.1e}, "
            f"hyperbolic {worst['hyperbolic']:.1e}, "
            f"lightlike {worst['lightlike']:.1e}, exact S^3 {cube:.1e}")


def test_criterion_7_cayley(capsys):
    rng = np.random.default_rng(7)
    worst = angle_err = 0.0
    count = 0
    while count < 300:
        cls = list(FormClass)[int(rng.integers(3))]
        system = System.from_form(random_conditioned_form(rng, cls))
        v = rng.uniform(-1.5, 1.5, size=3)
        val = system.form_value(v)
        if abs(val - 1.0) < 1e-2:
            continue
        count += 1
        rot = cayley(system, v)
        metric = system.form.metric
        worst = max(worst,
                    float(np.max(np.abs(
                        rot.matrix.T @ metric @ rot.matrix - metric))),
                    abs(rot.det - 1.0),
                    float(np.max(np.abs(rot.matrix @ v - v))))
        # angle formulas, where defined: trace pins cos/cosh of the angle
        if rot.angle is not None and abs(val) > 1e-9:
            tr_half = (np.trace(rot.matrix) - 1.0) / 2.0
            want = math.cos(rot.angle) if val < 0 else math.cosh(rot.angle)
            angle_err = max(angle_err, abs(tr_half - want))
    ok = worst <= 1e-9 and angle_err <= 1e-8
    _report(capsys, 7, "Cayley transform suite", ok,
            f"matrix residual {worst:.1e}, angle residual {angle_err:.1e}")


def test_criterion_8_character_and_causal_tables(capsys):
    rng = np.random.default_rng(8)
    systems = [System.from_metric(EXAMPLE_METRIC),
               System.from_metric(np.diag([-1.0, 1.0, 1.0])),
               System.from_metric(np.diag([-2.0, -0.5, 1.5]))]
    worst = 0.0
    for n in range(1000):
        system = systems[n % len(systems)]
        p, q = random_number(rng, system), random_number(rng, system)
        lhs = character(multiply(p, q))
        rhs = character(p) * character(q)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    closure = {
        (CausalType.TIMELIKE, CausalType.TIMELIKE): CausalType.TIMELIKE,
        (CausalType.TIMELIKE, CausalType.SPACELIKE): CausalType.SPACELIKE,
        (CausalType.SPACELIKE, CausalType.TIMELIKE): CausalType.SPACELIKE,
        (CausalType.SPACELIKE, CausalType.SPACELIKE): CausalType.TIMELIKE,
    }
    bad = 0
    for n in range(600):
        system = systems[1 + n % 2]
        p = random_number(rng, system)
        q = (random_lightlike_number(rng, system, zero_scalar=n % 6 == 2)
             if n % 3 == 0 else random_number(rng, system))
        tp, tq = classify_number(p), classify_number(q)
        tpq = classify_number(multiply(p, q))
        if CausalType.LIGHTLIKE in (tp, tq):
            bad += tpq is not CausalType.LIGHTLIKE
        else:
            bad += tpq is not closure[(tp, tq)]
        # vector-type table on the lightlike factor
        if tq is CausalType.LIGHTLIKE:
            want = (CausalType.SPACELIKE if q.scalar != 0.0
                    else CausalType.LIGHTLIKE)
            bad += classify_vector(system, q.vector) is not want
    ok = worst <= 1e-10 and bad == 0
    _report(capsys, 8, "character multiplicativity + causal tables", ok,
            f"relative error {worst:.1e}, table violations {bad}")


def test_criterion_9_polar_roundtrip(capsys):
    rng = np.random.default_rng(9)
    sphere = System.from_metric(np.eye(3))
    lorentz = System.from_metric(np.diag([-1.0, 1.0, 1.0]))
    seen = set()
    worst = 0.0

    def roundtrip(system, q, expect):
        nonlocal worst
        pf = polar_decompose(q)
        assert pf.case is expect, (pf.case, expect)
        seen.add(pf.case)
        back = from_polar(system, pf).components
        scale = max(1.0, float(np.max(np.abs(q.components))))
        worst = max(worst, float(np.max(np.abs(back - q.components))) / scale)

    for _ in range(100):
        roundtrip(sphere, random_number(rng, sphere), PolarCase.ELLIPSOID)
        roundtrip(lorentz,
                  random_unit_number(rng, lorentz, CausalType.SPACELIKE)
                  * rng.uniform(0.5, 2.0),
                  PolarCase.SPACELIKE)
        sp = random_unit_axis(rng, lorentz, "hyperbolic")
        t = rng.uniform(-1.5, 1.5)
        roundtrip(lorentz, lorentz.from_components(
            np.concatenate([[math.cosh(t)], math.sinh(t) * sp])),
            PolarCase.TIMELIKE_SPACELIKE_AXIS)
        tl = random_unit_axis(rng, lorentz, "circular")
        roundtrip(lorentz, lorentz.from_components(
            np.concatenate([[math.cos(0.4)], math.sin(0.4) * tl]))
            * rng.uniform(0.5, 2.0),
            PolarCase.TIMELIKE_TIMELIKE_AXIS)
    # degenerate cases on exactly lightlike data
    for _ in range(100):
        system, axis = exact_lightlike_system(rng)
        q0 = float(rng.choice([-2.0, -1.0, 0.5, 1.0, 2.0]))
        roundtrip(system, system.from_components(
            np.concatenate([[q0], q0 * axis])),
            PolarCase.TIMELIKE_LIGHTLIKE_AXIS)
        roundtrip(system, system.from_components(
            np.concatenate([[0.0], rng.uniform(0.5, 2.0) * axis])),
            PolarCase.LIGHTLIKE_LIGHTLIKE_AXIS)
    # lightlike number with spacelike axis: q0 (1 + j) in a system where
    # the j direction has unit metric coefficient, exactly lightlike
    exact = System.from_metric(np.diag([-2.0, 1.0, 1.5]))
    for q0 in (-2.0, 0.5, 1.0, 3.0):
        roundtrip(exact, exact.number(q0, 0.0, q0, 0.0),
                  PolarCase.LIGHTLIKE_SPACELIKE_AXIS)
    ok = worst <= 1e-9 and seen == set(PolarCase)
    _report(capsys, 9, "polar round trip, all seven cases", ok,
            f"max residual {worst:.1e}, cases hit {len(seen)}/7")
