"""Structure constants of the number system attached to a quadratic form.

The six independent constants come out of 2x2 minors of the metric (no
cofactor signs) divided by delta * sqrt(|det|); three more are dependent.
Together with A..F they fix the whole 4x4 basis multiplication table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .forms import DegenerateFormError, FormError

IDENTITY_RTOL = 1e-8


class InconsistentConstantsError(FormError):
    code = "inconsistent_constants"


@dataclass(frozen=True)
class StructureConstants:
    """Basis-product coefficients of a quadratic number system.

    The dependent values are stored redundantly: lambda2 = -beta1,
    lambda3 = alpha1, beta3 = -alpha2.  gamma = sqrt(|det(delta * M)|) > 0.
    """

    alpha1: float
    alpha2: float
    alpha3: float
    beta1: float
    beta2: float
    lambda1: float
    gamma: float

    @property
    def lambda2(self):
        return -self.beta1

    @property
    def lambda3(self):
        return self.alpha1

    @property
    def beta3(self):
        return -self.alpha2

    @property
    def independent(self):
        return (self.alpha1, self.alpha2, self.alpha3,
                self.beta1, self.beta2, self.lambda1)

    def to_json(self):
        return {
            "alpha1": self.alpha1, "alpha2": self.alpha2, "alpha3": self.alpha3,
            "beta1": self.beta1, "beta2": self.beta2, "lambda1": self.lambda1,
            "lambda2": self.lambda2, "lambda3": self.lambda3, "beta3": self.beta3,
            "gamma": self.gamma,
        }


def _minor(n, i, j):
    """Determinant of n with row i and column j deleted (no cofactor sign)."""
    rows = [r for r in range(3) if r != i]
    cols = [c for c in range(3) if c != j]
    sub = n[np.ix_(rows, cols)]
    return sub[0, 0] * sub[1, 1] - sub[0, 1] * sub[1, 0]


def derive_constants(form):
    """Structure constants from the 2x2 minors of the metric.

    With n = delta * m_q (= the metric) and gamma = sqrt(|det n|):
        alpha1 = -M13/(delta*gamma)   alpha2 =  M23/(delta*gamma)
        alpha3 = -M33/(delta*gamma)   beta1  = -M12/(delta*gamma)
        beta2  =  M22/(delta*gamma)   lambda1 = -M11/(delta*gamma)
    """
    n = form.delta * form.m_q
    det = float(n[0, 0] * _minor(n, 0, 0) - n[0, 1] * _minor(n, 0, 1)
                + n[0, 2] * _minor(n, 0, 2))
    gamma = math.sqrt(abs(det))
    if gamma <= 1e-300:
        raise DegenerateFormError("metric determinant vanishes")
    dg = form.delta * gamma
    sc = StructureConstants(
        alpha1=-_minor(n, 0, 2) / dg,
        alpha2=_minor(n, 1, 2) / dg,
        alpha3=-_minor(n, 2, 2) / dg,
        beta1=-_minor(n, 0, 1) / dg,
        beta2=_minor(n, 1, 1) / dg,
        lambda1=-_minor(n, 0, 0) / dg,
        gamma=gamma,
    )
    validate_constants(sc, form)
    return sc


def identity_residuals(sc, form):
    """|lhs - rhs| of the six defining identities against the form's A..F."""
    a, b, c, d, e, f = form.coeffs
    a1, a2, a3, b1, b2, l1 = sc.independent
    return np.abs(np.array([
        a - (a2 * a2 + a3 * b2),
        b - (a1 * a1 - l1 * a3),
        c - (b1 * b1 + l1 * b2),
        d - (-(a1 * a2 + a3 * b1)),
        e - (-(b2 * a1 - a2 * b1)),
        f - (a1 * b1 + l1 * a2),
    ]))


def validate_constants(sc, form):
    """Check the six identities; raise if any residual exceeds tolerance."""
    res = identity_residuals(sc, form)
    scale = max(1.0, float(np.max(np.abs(form.coeffs))))
    if np.max(res) > IDENTITY_RTOL * scale:
        raise InconsistentConstantsError(
            f"structure identities violated, residuals {res.tolist()}"
        )
    return res


def multiplication_table(sc, form):
    """All 16 basis products as quadruples, indexed [left][right].

    table[a][b] is the component vector of e_a * e_b on (1, i, j, k).
    """
    a, b, c, d, e, f = form.coeffs
    a1, a2, a3, b1, b2, l1 = sc.independent
    l2, l3, b3 = sc.lambda2, sc.lambda3, sc.beta3
    t = np.zeros((4, 4, 4))
    for n in range(4):
        t[0, n, n] = 1.0
        t[n, 0, n] = 1.0
    t[1, 1] = [a, 0, 0, 0]
    t[2, 2] = [b, 0, 0, 0]
    t[3, 3] = [c, 0, 0, 0]
    t[1, 2] = [d, a1, a2, a3]
    t[2, 1] = [d, -a1, -a2, -a3]
    t[1, 3] = [e, b1, b2, b3]
    t[3, 1] = [e, -b1, -b2, -b3]
    t[2, 3] = [f, l1, l2, l3]
    t[3, 2] = [f, -l1, -l2, -l3]
    t.setflags(write=False)
    return t
