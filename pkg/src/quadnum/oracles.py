"""Independent brute-force oracles and the randomized property harness.

The series exponential here deliberately shares no code with the closed
Rodrigues branches; it is only a check.  Every property owns an RNG stream
derived from (seed, property index), so reports are deterministic and
order-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra, rotations, structure
from .algebra import CausalType, PolarCase, System
from .forms import FormClass, parse_form


def series_exponential(s, t, n_terms=30):
    """Partial sum of exp(t*s) by repeated multiplication; oracle only."""
    if n_terms < 20:
        raise ValueError("need at least 20 terms")
    s = np.asarray(s, dtype=float)
    acc = np.eye(3)
    term = np.eye(3)
    for n in range(1, n_terms + 1):
        term = term @ (t * s) / n
        acc = acc + term
    return acc


# ---------------------------------------------------------------------------
# random generators

def random_form(rng, form_class=None, min_det=1e-3):
    """Random symmetric non-degenerate form, entries uniform in [-5, 5].

    Rejection-sampled until |det| exceeds min_det and the signature is
    admissible (and matches form_class when given).
    """
    wanted = {FormClass.ELLIPSOID: 3, FormClass.HYPERBOLOID21: 2,
              FormClass.HYPERBOLOID12: 1}.get(form_class)
    while True:
        m = rng.uniform(-5.0, 5.0, size=(3, 3))
        m = (m + m.T) / 2.0
        if abs(np.linalg.det(m)) <= min_det:
            continue
        if wanted is not None:
            # cheap signature pre-filter before the full parse
            if int(np.sum(np.linalg.eigvalsh(m) > 0.0)) != wanted:
                continue
        try:
            form = parse_form(metric=m)
        except Exception:
            continue
        if form.negated_input:
            continue
        if form_class is None or form.form_class is form_class:
            return form


def random_conditioned_form(rng, form_class):
    """Well-conditioned random form: eigenvalues in [0.5, 3], random frame."""
    a = rng.normal(size=(3, 3))
    q, _ = np.linalg.qr(a)
    eig = rng.uniform(0.5, 3.0, size=3)
    if form_class is FormClass.HYPERBOLOID21:
        eig[0] = -eig[0]
    elif form_class is FormClass.HYPERBOLOID12:
        eig[:2] = -eig[:2]
    return parse_form(metric=q @ np.diag(eig) @ q.T)


def random_number(rng, system):
    return system.from_components(rng.uniform(-2.0, 2.0, size=4))


def random_unit_number(rng, system, causal=None):
    """Random number normalized to |character| = 1 (character > 0 if timelike
    or ellipsoid is wanted)."""
    while True:
        q = random_number(rng, system)
        ch = algebra.character(q)
        if abs(ch) < 1e-3:
            continue
        if causal is CausalType.TIMELIKE and ch <= 0:
            continue
        if causal is CausalType.SPACELIKE and ch >= 0:
            continue
        return q * (1.0 / math.sqrt(abs(ch)))


def random_unit_axis(rng, system, branch):
    """Random axis with form value -1 ('circular'), +1 ('hyperbolic') or
    numerically 0 ('lightlike')."""
    if branch == "lightlike":
        eigval, eigvec = np.linalg.eigh(system.form.m_q)
        neg = eigvec[:, eigval < 0]
        pos = eigvec[:, eigval > 0]
        u = neg @ rng.normal(size=neg.shape[1])
        w = pos @ rng.normal(size=pos.shape[1])
        u = u / math.sqrt(-system.form_value(u))
        w = w / math.sqrt(system.form_value(w))
        return u + w
    want = -1.0 if branch == "circular" else 1.0
    while True:
        v = rng.normal(size=3)
        val = system.form_value(v)
        if val * want <= 1e-6:
            continue
        return v / math.sqrt(abs(val))


def random_lightlike_number(rng, system, zero_scalar=False):
    """Number with vanishing character, built to cancel exactly in floats.

    Nonzero scalar part pairs with a spacelike vector of matching length;
    zero scalar part pairs with a lightlike vector.
    """
    if zero_scalar:
        v = random_unit_axis(rng, system, "lightlike")
        return system.from_components(
            np.concatenate([[0.0], rng.uniform(0.5, 2.0) * v]))
    v = random_unit_axis(rng, system, "hyperbolic")
    q0 = rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])
    return system.from_components(np.concatenate([[q0], abs(q0) * v]))


def exact_lightlike_system(rng):
    """Diagonal indefinite system plus an exactly lightlike axis.

    Entries are small dyadic rationals, so the axis form value is exactly
    zero in floating point and S^3 vanishes identically.
    """
    dyadic = np.array([0.5, 1.0, 1.5, 2.0])
    m2, m3 = rng.choice(dyadic, size=2)
    y, z = rng.choice(dyadic, size=2)
    m1 = -(m2 * y * y + m3 * z * z)
    form = parse_form(metric=np.diag([m1, m2, m3]))
    system = System.from_form(form)
    return system, np.array([1.0, y, z])


# ---------------------------------------------------------------------------
# property harness

@dataclass(frozen=True)
class PropertyReport:
    name: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool
    seed: int

    def to_json(self):
        return {
            "name": self.name, "samples": self.samples,
            "max_residual": self.max_residual, "tolerance": self.tolerance,
            "passed": self.passed, "seed": self.seed,
        }


def _coeff_scale(form):
    return max(1.0, float(np.max(np.abs(form.coeffs))))


def _prop_structure_roundtrip(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        form = random_form(rng)
        sc = structure.derive_constants(form)
        res = structure.identity_residuals(sc, form) / _coeff_scale(form)
        worst = max(worst, float(np.max(res)))
    return worst, 1e-8


def _prop_scale_covariance(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        form = random_form(rng)
        s = rng.uniform(0.5, 2.0)
        sc = np.array(structure.derive_constants(form).independent)
        scaled = np.array(structure.derive_constants(
            parse_form(metric=s * s * form.metric)).independent)
        worst = max(worst, float(np.max(np.abs(scaled - s * sc)))
                    / max(1.0, float(np.max(np.abs(sc)))))
    return worst, 1e-8


def _prop_associativity(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        a, b, c = (random_number(rng, system) for _ in range(3))
        lhs = algebra.multiply(algebra.multiply(a, b), c).components
        rhs = algebra.multiply(a, algebra.multiply(b, c)).components
        scale = max(1.0, float(np.max(np.abs(lhs))))
        worst = max(worst, float(np.max(np.abs(lhs - rhs))) / scale)
    return worst, 1e-8


def _prop_table_vs_matrix(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        a, b = random_number(rng, system), random_number(rng, system)
        via_mat = algebra.multiply(a, b).components
        via_tab = algebra.multiply_via_table(a, b).components
        worst = max(worst, float(np.max(np.abs(via_mat - via_tab)))
                    / max(1.0, float(np.max(np.abs(via_mat)))))
    return worst, 1e-12


def _prop_character_multiplicative(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        p, q = random_number(rng, system), random_number(rng, system)
        lhs = algebra.character(algebra.multiply(p, q))
        rhs = algebra.character(p) * algebra.character(q)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return worst, 1e-10


def _prop_conjugation_antiautomorphism(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        p, q = random_number(rng, system), random_number(rng, system)
        lhs = algebra.conjugate(algebra.multiply(q, p)).components
        rhs = algebra.multiply(algebra.conjugate(p),
                               algebra.conjugate(q)).components
        worst = max(worst, float(np.max(np.abs(lhs - rhs)))
                    / max(1.0, float(np.max(np.abs(rhs)))))
    return worst, 1e-10


def _prop_scalar_product_agreement(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        p, q = random_number(rng, system), random_number(rng, system)
        closed = algebra.scalar_product_numbers(q, p)
        sym = (algebra.multiply(q, algebra.conjugate(p)).components
               + algebra.multiply(p, algebra.conjugate(q)).components) / 2.0
        res = max(float(np.max(np.abs(sym[1:]))), abs(sym[0] - closed))
        worst = max(worst, res / max(1.0, abs(closed)))
    return worst, 1e-12


def _prop_product_decomposition(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        p, q = random_number(rng, system), random_number(rng, system)
        scale = max(1.0, float(np.max(np.abs(
            algebra.multiply(q, p).components))))
        worst = max(worst, algebra.product_decomposition_check(q, p) / scale)
    return worst, 1e-10


def _prop_triple_product(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        u, v, w = (rng.uniform(-2.0, 2.0, size=3) for _ in range(3))
        scale = max(1.0, float(np.max(np.abs(
            algebra.vector_product(system, u, v)))) * float(np.max(np.abs(w))))
        worst = max(worst, algebra.triple_product_check(system, u, v, w) / scale)
    return worst, 1e-9


def _prop_polar_roundtrip(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        q = random_number(rng, system)
        if not np.any(q.components != 0.0):
            continue
        if system.form.indefinite and \
                algebra.classify_number(q) is CausalType.LIGHTLIKE:
            continue
        pf = algebra.polar_decompose(q)
        back = algebra.from_polar(system, pf).components
        scale = max(1.0, float(np.max(np.abs(q.components))))
        worst = max(worst, float(np.max(np.abs(back - q.components))) / scale)
    return worst, 1e-9


def _prop_left_right_agree(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        q, p = random_number(rng, system), random_number(rng, system)
        lres = np.abs(rotations.left_matrix(q) @ p.components
                      - algebra.multiply(q, p).components)
        rres = np.abs(rotations.right_matrix(q) @ p.components
                      - algebra.multiply(p, q).components)
        scale = max(1.0, float(np.max(np.abs(
            algebra.multiply(q, p).components))))
        worst = max(worst, float(max(np.max(lres), np.max(rres))) / scale)
    return worst, 1e-12


def _prop_skew_is_cross(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        v = rng.uniform(-2.0, 2.0, size=3)
        w = rng.uniform(-2.0, 2.0, size=3)
        s = rotations.skew_matrix(system, v)
        res = np.abs(s @ w - algebra.vector_product(system, v, w))
        worst = max(worst, float(np.max(res))
                    / max(1.0, float(np.max(np.abs(s @ w)))))
    return worst, 1e-12


def _prop_skew_metric_adjoint(system, rng, samples):
    metric = system.form.metric
    worst = 0.0
    for _ in range(samples):
        v = rng.uniform(-2.0, 2.0, size=3)
        s = rotations.skew_matrix(system, v)
        res = np.max(np.abs(s.T @ metric + metric @ s))
        worst = max(worst, float(res) / max(1.0, float(np.max(np.abs(metric)))))
    return worst, 1e-12


def _prop_skew_cayley_hamilton(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        v = rng.uniform(-2.0, 2.0, size=3)
        s = rotations.skew_matrix(system, v)
        res = np.max(np.abs(s @ s @ s - system.form_value(v) * s))
        worst = max(worst, float(res)
                    / max(1.0, float(np.max(np.abs(s)) ** 3)))
    return worst, 1e-10


def _unit_causal(system):
    return None if not system.form.indefinite else CausalType.TIMELIKE


def _prop_sandwich_congruence(system, rng, samples):
    metric = system.form.metric
    worst = 0.0
    for _ in range(samples):
        q = random_unit_number(rng, system, _unit_causal(system))
        _, rot = rotations.sandwich_rotation(q)
        res = max(float(np.max(np.abs(
            rot.matrix.T @ metric @ rot.matrix - metric))),
            abs(rot.det - 1.0))
        worst = max(worst, res)
    return worst, 1e-9


def _prop_sandwich_vs_rodrigues(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        v = random_unit_axis(rng, system, "circular")
        theta = rng.uniform(-math.pi / 2, math.pi / 2)
        q = system.from_components(
            np.concatenate([[math.cos(theta)], math.sin(theta) * v]))
        _, rot = rotations.sandwich_rotation(q)
        rod = rotations.rodrigues(system, v, 2.0 * theta)
        worst = max(worst, float(np.max(np.abs(rot.matrix - rod.matrix))))
    return worst, 1e-8


def _prop_rodrigues_vs_series(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        branch = ("circular", "hyperbolic", "lightlike")[
            int(rng.integers(3)) if system.form.indefinite else 0]
        v = random_unit_axis(rng, system, branch)
        theta = rng.uniform(-math.pi, math.pi)
        rod = rotations.rodrigues(system, v, theta)
        sign = -1.0 if branch == "lightlike" else 1.0
        ora = series_exponential(rotations.skew_matrix(system, v),
                                 sign * theta, 30)
        worst = max(worst, float(np.max(np.abs(rod.matrix - ora))))
    return worst, 1e-8


def _prop_rotation_composition(system, rng, samples):
    worst = 0.0
    for _ in range(samples):
        branch = "circular" if not system.form.indefinite else \
            ("circular", "hyperbolic")[int(rng.integers(2))]
        v = random_unit_axis(rng, system, branch)
        t1, t2 = rng.uniform(-1.0, 1.0, size=2)
        r1 = rotations.rodrigues(system, v, t1).matrix
        r2 = rotations.rodrigues(system, v, t2).matrix
        r12 = rotations.rodrigues(system, v, t1 + t2).matrix
        worst = max(worst, float(np.max(np.abs(r1 @ r2 - r12))))
    return worst, 1e-8


def _prop_cayley(system, rng, samples):
    metric = system.form.metric
    worst = 0.0
    for _ in range(samples):
        v = rng.uniform(-1.5, 1.5, size=3)
        if abs(system.form_value(v) - 1.0) < 1e-2:
            continue
        rot = rotations.cayley(system, v)
        res = max(float(np.max(np.abs(
            rot.matrix.T @ metric @ rot.matrix - metric))),
            abs(rot.det - 1.0),
            float(np.max(np.abs(rot.matrix @ v - v))))
        worst = max(worst, res)
    return worst, 1e-9


def _prop_causal_closure(system, rng, samples):
    if not system.form.indefinite:
        return 0.0, 0.5
    bad = 0
    expected = {
        (CausalType.TIMELIKE, CausalType.TIMELIKE): CausalType.TIMELIKE,
        (CausalType.TIMELIKE, CausalType.SPACELIKE): CausalType.SPACELIKE,
        (CausalType.SPACELIKE, CausalType.TIMELIKE): CausalType.SPACELIKE,
        (CausalType.SPACELIKE, CausalType.SPACELIKE): CausalType.TIMELIKE,
    }
    for n in range(samples):
        p = random_number(rng, system)
        q = (random_lightlike_number(rng, system) if n % 3 == 0
             else random_number(rng, system))
        tp, tq = algebra.classify_number(p), algebra.classify_number(q)
        tpq = algebra.classify_number(algebra.multiply(p, q))
        if tp is CausalType.LIGHTLIKE or tq is CausalType.LIGHTLIKE:
            if tpq is not CausalType.LIGHTLIKE:
                bad += 1
        elif tpq is not expected[(tp, tq)]:
            bad += 1
    return float(bad), 0.5


def _prop_vector_type_table(system, rng, samples):
    if not system.form.indefinite:
        return 0.0, 0.5
    bad = 0
    for n in range(samples):
        if n % 3 == 0:
            q = random_lightlike_number(rng, system, zero_scalar=(n % 6 == 3))
        else:
            q = random_number(rng, system)
        nt = algebra.classify_number(q)
        vt = algebra.classify_vector(system, q.vector)
        if nt is CausalType.SPACELIKE and vt is not CausalType.SPACELIKE:
            bad += 1
        if nt is CausalType.LIGHTLIKE:
            want = (CausalType.SPACELIKE if q.scalar != 0.0
                    else CausalType.LIGHTLIKE)
            if vt is not want:
                bad += 1
    return float(bad), 0.5


PROPERTIES = [
    ("structure_identity_roundtrip", _prop_structure_roundtrip),
    ("structure_scale_covariance", _prop_scale_covariance),
    ("product_associativity", _prop_associativity),
    ("product_table_vs_matrix", _prop_table_vs_matrix),
    ("character_multiplicative", _prop_character_multiplicative),
    ("conjugation_antiautomorphism", _prop_conjugation_antiautomorphism),
    ("scalar_product_agreement", _prop_scalar_product_agreement),
    ("product_decomposition", _prop_product_decomposition),
    ("triple_product_identity", _prop_triple_product),
    ("polar_roundtrip", _prop_polar_roundtrip),
    ("left_right_matrices", _prop_left_right_agree),
    ("skew_is_cross_operator", _prop_skew_is_cross),
    ("skew_metric_adjoint", _prop_skew_metric_adjoint),
    ("skew_cayley_hamilton", _prop_skew_cayley_hamilton),
    ("sandwich_congruence", _prop_sandwich_congruence),
    ("sandwich_vs_rodrigues", _prop_sandwich_vs_rodrigues),
    ("rodrigues_vs_series", _prop_rodrigues_vs_series),
    ("rotation_composition", _prop_rotation_composition),
    ("cayley_congruence", _prop_cayley),
    ("causal_closure_table", _prop_causal_closure),
    ("vector_type_table", _prop_vector_type_table),
]


def run_property_suite(form, samples=200, seed=0):
    """Run every registered property against a form; deterministic in
    (form, samples, seed).  Failures come back as report entries."""
    system = System.from_form(form)
    reports = []
    for idx, (name, fn) in enumerate(PROPERTIES):
        rng = np.random.default_rng([seed, idx])
        worst, tol = fn(system, rng, samples)
        worst = float(worst)
        reports.append(PropertyReport(
            name=name, samples=samples, max_residual=worst,
            tolerance=tol, passed=bool(worst <= tol), seed=seed))
    return reports
