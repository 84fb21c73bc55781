"""Form-preserving rotations built three ways: sandwich product,
Rodrigues exponential, Cayley transform.

Every emitted 3x3 rotation carries diagnostics (metric congruence residual,
determinant, axis residual) and is verified before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import algebra
from .algebra import CausalType, QuadNumber, System
from .forms import FormError

UNIT_ATOL = 1e-9
CONGRUENCE_ATOL = 1e-9
DET_ATOL = 1e-9
AXIS_ATOL = 1e-9
BRANCH_ATOL = 1e-9
INVERSE_DET_GUARD = 1e-12


class NotUnitError(FormError):
    code = "not_unit"


class AxisNotUnitError(FormError):
    code = "axis_not_unit"


class UnitSpacelikeAxisError(FormError):
    code = "unit_spacelike_axis"


class RotationPostconditionError(FormError):
    code = "rotation_postcondition"


def left_matrix(q):
    """4x4 matrix of left multiplication: left_matrix(q) @ p == q*p."""
    a, b, c, d, e, f = q.system.coeffs
    a1, a2, a3, b1, b2, l1 = q.system.constants.independent
    s, x, y, z = q.components
    return np.array([
        [s, a * x + d * y + e * z, d * x + b * y + f * z, e * x + f * y + c * z],
        [x, s - y * a1 - z * b1, x * a1 - z * l1, x * b1 + y * l1],
        [y, -y * a2 - z * b2, s + x * a2 + z * b1, x * b2 - y * b1],
        [z, z * a2 - y * a3, x * a3 - z * a1, s - x * a2 + y * a1],
    ])


def right_matrix(q):
    """4x4 matrix of right multiplication: right_matrix(q) @ p == p*q."""
    a, b, c, d, e, f = q.system.coeffs
    a1, a2, a3, b1, b2, l1 = q.system.constants.independent
    s, x, y, z = q.components
    return np.array([
        [s, a * x + d * y + e * z, d * x + b * y + f * z, e * x + f * y + c * z],
        [x, s + y * a1 + z * b1, z * l1 - x * a1, -x * b1 - y * l1],
        [y, y * a2 + z * b2, s - x * a2 - z * b1, y * b1 - x * b2],
        [z, y * a3 - z * a2, z * a1 - x * a3, s + x * a2 - y * a1],
    ])


@dataclass(frozen=True)
class RotationMatrix3:
    """3x3 rotation with provenance and residual diagnostics."""

    matrix: np.ndarray
    method: str
    congruence_residual: float
    det: float
    axis: np.ndarray | None = None
    axis_residual: float = 0.0
    angle: float | None = None

    def __post_init__(self):
        self.matrix.setflags(write=False)

    def to_json(self):
        return {
            "matrix": self.matrix.tolist(),
            "method": self.method,
            "congruence_residual": self.congruence_residual,
            "det": self.det,
            "axis": None if self.axis is None else self.axis.tolist(),
            "axis_residual": self.axis_residual,
            "angle": self.angle,
        }


def _finalize(system, r, method, axis=None, angle=None, check_axis=True):
    """Attach diagnostics and enforce the hard postconditions."""
    metric = system.form.metric
    cong = float(np.max(np.abs(r.T @ metric @ r - metric)))
    det = float(np.linalg.det(r))
    axis_res = 0.0
    if axis is not None:
        axis = np.asarray(axis, dtype=float)
        axis_res = float(np.max(np.abs(r @ axis - axis)))
    scale = max(1.0, float(np.max(np.abs(metric))))
    if cong > CONGRUENCE_ATOL * scale or abs(det - 1.0) > DET_ATOL:
        raise RotationPostconditionError(
            f"{method}: congruence residual {cong:.3e}, det {det!r}"
        )
    if check_axis and axis is not None and axis_res > AXIS_ATOL * max(
            1.0, float(np.max(np.abs(axis)))):
        raise RotationPostconditionError(
            f"{method}: axis moved by {axis_res:.3e}"
        )
    return RotationMatrix3(matrix=r.copy(), method=method,
                           congruence_residual=cong, det=det,
                           axis=None if axis is None else axis.copy(),
                           axis_residual=axis_res, angle=angle)


def sandwich_rotation(q):
    """Block 4x4 operator of p -> q p qbar for a unit q.

    Returns (operator4, rotation3): the full left*right matrix and its
    verified lower-right 3x3 block.  Requires character(q) = 1.
    """
    ch = algebra.character(q)
    if abs(ch - 1.0) > UNIT_ATOL:
        raise NotUnitError(f"character is {ch!r}, need 1")
    op = left_matrix(q) @ right_matrix(algebra.conjugate(q))
    vq = q.vector
    axis = vq if np.any(vq != 0.0) else None
    check_axis = axis is not None and (
        not q.system.form.indefinite
        or algebra.classify_vector(q.system, axis) is not CausalType.LIGHTLIKE)
    rot = _finalize(q.system, op[1:, 1:], "sandwich", axis=axis,
                    check_axis=check_axis)
    return op, rot


def sandwich_apply(q, p):
    """q p qbar directly through the algebra (no matrices)."""
    return algebra.multiply(algebra.multiply(q, p), algebra.conjugate(q))


def skew_matrix(system, v):
    """Cross-product operator of the axis v: skew_matrix(v) @ w == v x w."""
    x, y, z = np.asarray(v, dtype=float)
    a1, a2, a3, b1, b2, l1 = system.constants.independent
    return np.array([
        [-a1 * y - b1 * z, a1 * x - l1 * z, b1 * x + l1 * y],
        [-b2 * z - a2 * y, a2 * x + b1 * z, b2 * x - b1 * y],
        [a2 * z - a3 * y, a3 * x - a1 * z, a1 * y - a2 * x],
    ])


def _branch_of(system, v):
    """Rodrigues branch from the form value of the axis: -1, +1 or 0."""
    val = system.form_value(v)
    if abs(val + 1.0) <= BRANCH_ATOL:
        return "circular"
    if abs(val - 1.0) <= BRANCH_ATOL:
        return "hyperbolic"
    if abs(val) <= BRANCH_ATOL:
        return "lightlike"
    raise AxisNotUnitError(
        f"axis form value {val!r} is not -1, +1 or 0 within {BRANCH_ATOL}"
    )


def rodrigues(system, v, theta, normalize=False):
    """Closed-form matrix exponential about axis v.

    Circular branch (axis form value -1): I + sin(t) S + (1-cos(t)) S^2.
    Hyperbolic branch (+1): I + sinh(t) S - (1-cosh(t)) S^2.
    Nilpotent branch (0):   I - t S + t^2 S^2 / 2, with S^3 = 0.
    Non-lightlike axes may be auto-normalized on request; near-lightlike
    axes are never snapped.
    """
    v = np.asarray(v, dtype=float)
    if normalize:
        val = system.form_value(v)
        if abs(val) > BRANCH_ATOL:
            v = v / math.sqrt(abs(val))
    branch = _branch_of(system, v)
    s = skew_matrix(system, v)
    s2 = s @ s
    eye = np.eye(3)
    if branch == "circular":
        r = eye + math.sin(theta) * s + (1.0 - math.cos(theta)) * s2
    elif branch == "hyperbolic":
        r = eye + math.sinh(theta) * s - (1.0 - math.cosh(theta)) * s2
    else:
        r = eye - theta * s + (theta * theta / 2.0) * s2
    return _finalize(system, r, f"rodrigues-{branch}", axis=v, angle=theta,
                     check_axis=branch != "lightlike")


def adjugate_inverse(m):
    """Inverse of a 3x3 matrix via the adjugate, with a determinant guard."""
    m = np.asarray(m, dtype=float)
    det = (m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
           - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
           + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))
    if abs(det) <= INVERSE_DET_GUARD:
        raise UnitSpacelikeAxisError(f"matrix is singular (det {det!r})")
    cof = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = (m[rows[0], cols[0]] * m[rows[1], cols[1]]
                     - m[rows[0], cols[1]] * m[rows[1], cols[0]])
            cof[i, j] = ((-1) ** (i + j)) * minor
    return cof.T / det


def cayley_angle(system, v):
    """Rotation angle of the Cayley transform about v, where defined.

    Circular axes: theta with tan(theta) = 2|v| / (1 - |v|^2).
    Spacelike axes with form value in [0, 1): theta with
    cosh(theta) = (1 + val) / (1 - val).  Lightlike axes: 1 by convention.
    Returns None when no branch applies.
    """
    val = system.form_value(v)
    if abs(val) <= BRANCH_ATOL * max(1.0, float(np.dot(v, v))):
        return 1.0
    if val < 0.0:
        t = math.sqrt(-val)
        return math.atan2(2.0 * t, 1.0 - t * t)
    if val < 1.0:
        return math.acosh((1.0 + val) / (1.0 - val))
    return None


def cayley(system, v):
    """Cayley transform (I - S)(I + S)^(-1) about the axis v.

    Undefined exactly when the axis is unit spacelike (form value 1), where
    I + S is singular.
    """
    v = np.asarray(v, dtype=float)
    val = system.form_value(v)
    if abs(val - 1.0) <= UNIT_ATOL:
        raise UnitSpacelikeAxisError(
            "unit spacelike axis: I + S is singular"
        )
    s = skew_matrix(system, v)
    r = (np.eye(3) - s) @ adjugate_inverse(np.eye(3) + s)
    return _finalize(system, r, "cayley", axis=v, angle=cayley_angle(system, v),
                     check_axis=abs(val) > BRANCH_ATOL * max(1.0, float(v @ v)))


def closed_form_cayley_check(system, v):
    """Max entry difference between the expanded closed form rho*M and
    the factored Cayley transform.  The factored form is canonical; this is
    a cross-check whose residual is reported, not asserted.
    """
    v = np.asarray(v, dtype=float)
    x, y, z = v
    a, b, c, d, e, f = system.coeffs
    a1, a2, a3, b1, b2, l1 = system.constants.independent
    val = system.form_value(v)  # = delta * <v,v>
    rho = 1.0 / (val - 1.0)
    m = np.array([
        [a * x * x - b * y * y - c * z * z - 2 * f * y * z
         - 2 * z * b1 - 2 * y * a1 - 1,
         2 * (f * x * z + b * x * y + d * x * x + x * a1 - z * l1),
         2 * (e * x * x + f * x * y + c * x * z + x * b1 + y * l1)],
        [2 * (a * x * y + d * y * y + e * y * z - z * b2 - y * a2),
         -a * x * x + b * y * y - c * z * z - 2 * e * x * z
         + 2 * z * b1 + 2 * x * a2 - 1,
         2 * (f * y * y + e * x * y + c * y * z + x * b2 - y * b1)],
        [2 * (a * x * z + e * z * z + d * y * z + z * a2 - y * a3),
         2 * (f * z * z + d * x * z + b * y * z + x * a3 - z * a1),
         -a * x * x - b * y * y + c * z * z - 2 * x * y * d
         + 2 * y * a1 - 2 * x * a2 - 1],
    ])
    factored = cayley(system, v).matrix
    return float(np.max(np.abs(rho * m - factored)))


def rotate_points(system, rotation, points):
    """Apply a verified rotation to a batch of points.

    Returns (rotated points, max drift of the form value over the batch).
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    out = pts @ rotation.matrix.T
    before = np.einsum("ni,ij,nj->n", pts, system.form.m_q, pts)
    after = np.einsum("ni,ij,nj->n", out, system.form.m_q, out)
    drift = float(np.max(np.abs(after - before))) if len(pts) else 0.0
    return out, drift
