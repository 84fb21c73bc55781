import math

import numpy as np
import pytest

from quadnum import FormClass, run_property_suite
from quadnum.algebra import character
from quadnum.oracles import (
    exact_lightlike_system,
    random_conditioned_form,
    random_form,
    random_lightlike_number,
    random_unit_axis,
    random_unit_number,
    series_exponential,
)


def test_series_exponential_diagonal():
    s = np.diag([0.5, -1.0, 2.0])
    out = series_exponential(s, 1.3, 30)
    np.testing.assert_allclose(out, np.diag(np.exp(1.3 * np.diag(s))),
                               atol=1e-12)


def test_series_exponential_nilpotent():
    # exact polynomial for a strictly upper-triangular matrix
    s = np.array([[0, 1, 2], [0, 0, 3], [0, 0, 0]], dtype=float)
    t = 0.7
    exact = np.eye(3) + t * s + (t * t / 2) * (s @ s)
    np.testing.assert_allclose(series_exponential(s, t, 30), exact, atol=1e-15)


def test_series_exponential_term_floor():
    with pytest.raises(ValueError):
        series_exponential(np.eye(3), 1.0, 5)


def test_random_form_classes():
    rng = np.random.default_rng(1)
    for cls in FormClass:
        form = random_form(rng, form_class=cls)
        assert form.form_class is cls
        assert abs(np.linalg.det(form.metric)) > 1e-3


def test_random_conditioned_form_eigenvalue_window():
    rng = np.random.default_rng(2)
    for cls in FormClass:
        form = random_conditioned_form(rng, cls)
        assert form.form_class is cls
        assert np.all(np.abs(form.eigenvalues) >= 0.5 - 1e-9)
        assert np.all(np.abs(form.eigenvalues) <= 3.0 + 1e-9)


def test_random_unit_number(example_system, lorentz_system):
    rng = np.random.default_rng(3)
    for system in (example_system, lorentz_system):
        for _ in range(20):
            q = random_unit_number(rng, system)
            assert abs(character(q)) == pytest.approx(1.0, abs=1e-10)


def test_random_unit_axis_form_values(lorentz_system):
    rng = np.random.default_rng(4)
    for _ in range(20):
        c = random_unit_axis(rng, lorentz_system, "circular")
        h = random_unit_axis(rng, lorentz_system, "hyperbolic")
        n = random_unit_axis(rng, lorentz_system, "lightlike")
        assert lorentz_system.form_value(c) == pytest.approx(-1.0, abs=1e-12)
        assert lorentz_system.form_value(h) == pytest.approx(1.0, abs=1e-12)
        assert abs(lorentz_system.form_value(n)) <= 1e-12


def test_random_lightlike_number(lorentz_system):
    rng = np.random.default_rng(5)
    for k in range(20):
        q = random_lightlike_number(rng, lorentz_system, zero_scalar=k % 2 == 0)
        assert abs(character(q)) <= 1e-12


def test_exact_lightlike_system_is_exact():
    rng = np.random.default_rng(6)
    for _ in range(10):
        system, axis = exact_lightlike_system(rng)
        assert system.form.indefinite
        assert system.form_value(axis) == 0.0


def test_property_suite_deterministic(example_form):
    a = run_property_suite(example_form, samples=10, seed=7)
    b = run_property_suite(example_form, samples=10, seed=7)
    assert [r.max_residual for r in a] == [r.max_residual for r in b]
    assert all(r.passed for r in a)


def test_property_suite_all_classes():
    rng = np.random.default_rng(8)
    for cls in FormClass:
        form = random_conditioned_form(rng, cls)
        reports = run_property_suite(form, samples=15, seed=9)
        failed = [r.name for r in reports if not r.passed]
        assert not failed, f"{cls}: {failed}"
