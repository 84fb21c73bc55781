"""Ternary quadratic forms: parsing, classification and the metric they carry.

A form is described either by the six surface coefficients A..F or by the
full symmetric 3x3 matrix they assemble into.  The user always supplies the
metric they want preserved (positive definite for ellipsoids, Lorentz-type
for hyperboloids); the orientation sign delta and the number-system matrix
are derived from its signature.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

SYMMETRY_ATOL = 1e-12
ZERO_EIGENVALUE_RTOL = 1e-10

COEFF_NAMES = ("A", "B", "C", "D", "E", "F")


class FormError(ValueError):
    """Base class for rejected form inputs."""

    code = "form_error"

    def to_json(self):
        return {"error": self.code, "detail": str(self)}


class NotSymmetricError(FormError):
    code = "not_symmetric"


class DegenerateFormError(FormError):
    code = "degenerate_form"


class FormClass(enum.Enum):
    ELLIPSOID = "Ellipsoid"
    HYPERBOLOID21 = "Hyperboloid21"
    HYPERBOLOID12 = "Hyperboloid12"


def matrix_from_coeffs(a, b, c, d, e, f):
    """Assemble the symmetric matrix [[A,D,E],[D,B,F],[E,F,C]]."""
    return np.array([[a, d, e], [d, b, f], [e, f, c]], dtype=float)


def coeffs_from_matrix(m):
    """Read (A,B,C,D,E,F) back off a symmetric 3x3 matrix."""
    return (m[0, 0], m[1, 1], m[2, 2], m[0, 1], m[0, 2], m[1, 2])


def gershgorin_scale(m):
    """Largest absolute Gershgorin row bound; spectral scale for tolerances."""
    return float(np.max(np.sum(np.abs(m), axis=1)))


def symmetric_eigenvalues(m):
    """Eigenvalues of a symmetric 3x3 matrix, ascending.

    Closed-form trigonometric solution of the characteristic cubic; no
    iterative factorization involved.
    """
    m = np.asarray(m, dtype=float)
    p1 = m[0, 1] ** 2 + m[0, 2] ** 2 + m[1, 2] ** 2
    if p1 == 0.0:
        return np.sort(np.diagonal(m).astype(float))
    q = float(np.trace(m)) / 3.0
    p2 = (m[0, 0] - q) ** 2 + (m[1, 1] - q) ** 2 + (m[2, 2] - q) ** 2 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    b = (m - q * np.eye(3)) / p
    r = float(np.linalg.det(b)) / 2.0
    r = min(1.0, max(-1.0, r))
    phi = math.acos(r) / 3.0
    lo = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    hi = q + 2.0 * p * math.cos(phi)
    mid = 3.0 * q - lo - hi
    return np.array([lo, mid, hi])


def signature_of(m):
    """Signature (k, l, m): counts of positive, zero, negative eigenvalues."""
    eig = symmetric_eigenvalues(m)
    tol = ZERO_EIGENVALUE_RTOL * max(1.0, gershgorin_scale(m))
    k = int(np.sum(eig > tol))
    l = int(np.sum(np.abs(eig) <= tol))
    return (k, l, 3 - k - l)


@dataclass(frozen=True)
class QuadraticForm:
    """A non-degenerate ternary quadratic form and its derived data.

    `metric` is the user-facing symmetric matrix (the bilinear form to be
    preserved); `m_q` = delta * metric holds the number-system coefficients
    A..F.  Immutable after construction.
    """

    metric: np.ndarray
    m_q: np.ndarray
    delta: int
    signature: tuple
    form_class: FormClass
    eigenvalues: np.ndarray = field(repr=False)
    negated_input: bool = False

    def __post_init__(self):
        self.metric.setflags(write=False)
        self.m_q.setflags(write=False)
        self.eigenvalues.setflags(write=False)

    @property
    def coeffs(self):
        """(A, B, C, D, E, F) of the number system (entries of m_q)."""
        return coeffs_from_matrix(self.m_q)

    @property
    def indefinite(self):
        return self.form_class is not FormClass.ELLIPSOID

    def to_json(self):
        return {
            "metric": self.metric.tolist(),
            "coeffs": dict(zip(COEFF_NAMES, self.coeffs)),
            "delta": self.delta,
            "signature": list(self.signature),
            "class": self.form_class.value,
            "eigenvalues": self.eigenvalues.tolist(),
            "negated_input": self.negated_input,
        }


def parse_form(metric=None, coeffs=None):
    """Classify a metric given as a 3x3 matrix or as six coefficients.

    `coeffs` may be a mapping with keys A..F or a sequence (A,B,C,D,E,F);
    either way they describe the metric (surface convention).  Raises
    NotSymmetricError or DegenerateFormError on bad input.  A negative
    definite metric is negated (same quadric surface) and flagged.
    """
    if (metric is None) == (coeffs is None):
        raise FormError("supply exactly one of metric or coeffs")
    if coeffs is not None:
        if isinstance(coeffs, dict):
            try:
                vals = [float(coeffs[k]) for k in COEFF_NAMES]
            except KeyError as exc:
                raise FormError(f"missing coefficient {exc.args[0]}") from exc
        else:
            vals = [float(v) for v in coeffs]
            if len(vals) != 6:
                raise FormError("need six coefficients A..F")
        m = matrix_from_coeffs(*vals)
    else:
        m = np.asarray(metric, dtype=float)
        if m.shape != (3, 3):
            raise FormError(f"metric must be 3x3, got {m.shape}")
        if np.max(np.abs(m - m.T)) > SYMMETRY_ATOL:
            raise NotSymmetricError("metric matrix is not symmetric")
        m = (m + m.T) / 2.0

    eig = symmetric_eigenvalues(m)
    tol = ZERO_EIGENVALUE_RTOL * max(1.0, gershgorin_scale(m))
    k = int(np.sum(eig > tol))
    l = int(np.sum(np.abs(eig) <= tol))
    neg = 3 - k - l
    if l > 0:
        raise DegenerateFormError(
            f"zero eigenvalue within tolerance {tol:.3e}: {eig.tolist()}"
        )

    negated = False
    if (k, neg) == (0, 3):
        m = -m
        eig = -eig[::-1]
        k, neg = 3, 0
        negated = True

    # delta = -sign(det metric): the unique orientation for which the
    # structure identities admit real constants.  A (1,0,2) metric therefore
    # pairs with m_q = -metric, whose signature is (2,0,1).
    if (k, neg) == (3, 0):
        delta, cls = -1, FormClass.ELLIPSOID
    elif (k, neg) == (2, 1):
        delta, cls = 1, FormClass.HYPERBOLOID21
    else:  # (1, 2)
        delta, cls = -1, FormClass.HYPERBOLOID12

    return QuadraticForm(
        metric=m.copy(),
        m_q=delta * m,
        delta=delta,
        signature=(k, l, neg),
        form_class=cls,
        eigenvalues=eig.copy(),
        negated_input=negated,
    )


def form_from_json(source):
    """Build a form from a JSON string or already-decoded descriptor object."""
    obj = json.loads(source) if isinstance(source, str) else source
    if not isinstance(obj, dict):
        raise FormError("form descriptor must be a JSON object")
    if "metric" in obj:
        return parse_form(metric=obj["metric"])
    if "coeffs" in obj:
        return parse_form(coeffs=obj["coeffs"])
    raise FormError("form descriptor needs a 'metric' or 'coeffs' key")


def evaluate(form, v):
    """Number-system form value: v' m_q v (delta times the metric value)."""
    v = np.asarray(v, dtype=float)
    return float(v @ form.m_q @ v)


def bilinear(form, u, v):
    """Metric pairing u' metric v; symmetric and bilinear."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return float(u @ form.metric @ v)
