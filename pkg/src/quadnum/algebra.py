"""Arithmetic of quadratic numbers: product, conjugate, character, norms,
causal classification and polar decompositions.

A `System` bundles a classified form with its derived structure constants;
numbers only combine within the same system.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend, forms, structure
from .forms import FormClass, FormError, QuadraticForm

LIGHTLIKE_RTOL = 1e-10
INVERT_RTOL = 1e-12
POLAR_RTOL = 1e-9


class SystemMismatchError(FormError):
    code = "system_mismatch"


class LightlikeNotInvertibleError(FormError):
    code = "lightlike_not_invertible"


class ZeroNumberError(FormError):
    code = "zero_number"


@dataclass(frozen=True)
class System:
    """A quadratic form together with its number-system structure constants."""

    form: QuadraticForm
    constants: structure.StructureConstants

    @classmethod
    def from_form(cls, form):
        return cls(form=form, constants=structure.derive_constants(form))

    @classmethod
    def from_metric(cls, metric):
        return cls.from_form(forms.parse_form(metric=metric))

    @property
    def coeffs(self):
        return self.form.coeffs

    @property
    def delta(self):
        return self.form.delta

    def number(self, q0=0.0, q1=0.0, q2=0.0, q3=0.0):
        return QuadNumber(self, np.array([q0, q1, q2, q3], dtype=float))

    def from_components(self, components):
        arr = np.asarray(components, dtype=float)
        if arr.shape != (4,):
            raise FormError(f"need 4 components, got shape {arr.shape}")
        return QuadNumber(self, arr)

    def form_value(self, v):
        """Number-system form of a 3-vector (the type functional)."""
        return forms.evaluate(self.form, v)

    def vector_norm(self, v):
        """sqrt(|form value|): the in-system length of a 3-vector."""
        return math.sqrt(abs(self.form_value(v)))


def _check_same(a, b):
    if a.system is not b.system:
        raise SystemMismatchError("operands live in different systems")


@dataclass(frozen=True)
class QuadNumber:
    """Quadruple (q0, q1, q2, q3) on basis (1, i, j, k) in a fixed system."""

    system: System
    components: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.components.setflags(write=False)

    @property
    def scalar(self):
        return float(self.components[0])

    @property
    def vector(self):
        return self.components[1:].copy()

    def __add__(self, other):
        _check_same(self, other)
        return QuadNumber(self.system, self.components + other.components)

    def __sub__(self, other):
        _check_same(self, other)
        return QuadNumber(self.system, self.components - other.components)

    def __neg__(self):
        return QuadNumber(self.system, -self.components)

    def __mul__(self, other):
        if isinstance(other, QuadNumber):
            return multiply(self, other)
        return QuadNumber(self.system, float(other) * self.components)

    def __rmul__(self, other):
        return QuadNumber(self.system, float(other) * self.components)

    def conjugate(self):
        return conjugate(self)

    def character(self):
        return character(self)

    def norm(self):
        return norm(self)

    def inverse(self):
        return invert(self)

    def isclose(self, other, atol=1e-12):
        return bool(np.max(np.abs(self.components - other.components)) <= atol)

    def to_json(self):
        q0, q1, q2, q3 = self.components
        return {"s": q0, "i": q1, "j": q2, "k": q3}


def number_from_json(system, obj):
    return system.number(obj.get("s", 0.0), obj.get("i", 0.0),
                         obj.get("j", 0.0), obj.get("k", 0.0))


def multiply(a, b):
    """Quadratic product via componentwise matrix-column expansion."""
    _check_same(a, b)
    out = _backend.multiply_one(a.components, b.components,
                                a.system.coeffs, a.system.constants.independent)
    return QuadNumber(a.system, out)


def multiply_via_table(a, b):
    """Bilinear expansion through the basis multiplication table (test route)."""
    _check_same(a, b)
    table = structure.multiplication_table(a.system.constants, a.system.form)
    out = np.einsum("a,b,abc->c", a.components, b.components, table)
    return QuadNumber(a.system, out)


def conjugate(q):
    out = q.components.copy()
    out[1:] = -out[1:]
    return QuadNumber(q.system, out)


def character(q):
    """q*qbar = q0^2 - (form value of the vector part)."""
    return float(_backend.character_batch(q.components[None, :], q.system.coeffs)[0])


def norm(q):
    return math.sqrt(abs(character(q)))


def _number_scale(q):
    q0 = q.scalar
    return max(1.0, q0 * q0 + abs(q.system.form_value(q.vector)))


def invert(q):
    ch = character(q)
    if abs(ch) <= INVERT_RTOL * _number_scale(q):
        raise LightlikeNotInvertibleError("character vanishes; no inverse")
    return QuadNumber(q.system, conjugate(q).components / ch)


def scalar_product_numbers(q, p):
    """(q*pbar + p*qbar)/2, in closed coefficient form."""
    _check_same(q, p)
    a, b, c, d, e, f = q.system.coeffs
    q0, q1, q2, q3 = q.components
    p0, p1, p2, p3 = p.components
    return float(p0 * q0 - (a * p1 * q1 + b * p2 * q2 + c * p3 * q3
                            + d * (p1 * q2 + p2 * q1)
                            + e * (p1 * q3 + p3 * q1)
                            + f * (p2 * q3 + p3 * q2)))


def scalar_product_vectors(system, u, v):
    """Metric pairing of two 3-vectors: delta times the form bilinear."""
    return forms.bilinear(system.form, u, v)


def vector_product(system, u, v):
    """Determinant-expansion cross product of 3-vectors.

    Basis row (lambda1*i - beta1*j + alpha1*k,
               -beta1*i - beta2*j + alpha2*k,
               alpha1*i + alpha2*j + alpha3*k), then rows u and v.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    a1, a2, a3, b1, b2, l1 = system.constants.independent
    m1 = u[1] * v[2] - u[2] * v[1]
    m2 = u[0] * v[2] - u[2] * v[0]
    m3 = u[0] * v[1] - u[1] * v[0]
    col1 = np.array([l1, -b1, a1])
    col2 = np.array([-b1, -b2, a2])
    col3 = np.array([a1, a2, a3])
    return m1 * col1 - m2 * col2 + m3 * col3


def commutator_product(q, p):
    """(q*pbar - p*qbar)/2; for pure arguments this is vector_product(v_p, v_q)."""
    _check_same(q, p)
    lhs = multiply(q, conjugate(p)).components
    rhs = multiply(p, conjugate(q)).components
    return QuadNumber(q.system, (lhs - rhs) / 2.0)


def product_decomposition_check(q, p):
    """Max residual of qp against the scalar/vector split identity.

    qp = SqSp + Sq v_p + Sp v_q + (form bilinear of v_q,v_p) + v_q x v_p,
    where the scalar term is delta * metric pairing = A..F bilinear.
    """
    _check_same(q, p)
    direct = multiply(q, p).components
    vq, vp = q.vector, p.vector
    scalar = (q.scalar * p.scalar
              + q.system.delta * scalar_product_vectors(q.system, vq, vp))
    vec = (q.scalar * vp + p.scalar * vq + vector_product(q.system, vq, vp))
    split = np.concatenate([[scalar], vec])
    return float(np.max(np.abs(direct - split)))


def triple_product_check(system, u, v, w):
    """Max residual of (u x v) x w = delta<v,w>u - delta<u,w>v."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    lhs = vector_product(system, vector_product(system, u, v), w)
    d = system.delta
    rhs = (d * scalar_product_vectors(system, v, w) * u
           - d * scalar_product_vectors(system, u, w) * v)
    return float(np.max(np.abs(lhs - rhs)))


class CausalType(enum.Enum):
    SPACELIKE = "Spacelike"
    TIMELIKE = "Timelike"
    LIGHTLIKE = "Lightlike"
    ELLIPSOID = "Ellipsoid"


def classify_number(q):
    """Causal type from the sign of the character.

    In ellipsoid systems every nonzero number has positive character and is
    labeled ELLIPSOID.
    """
    if not q.system.form.indefinite:
        return CausalType.ELLIPSOID
    ch = character(q)
    tol = LIGHTLIKE_RTOL * _number_scale(q)
    if abs(ch) <= tol:
        return CausalType.LIGHTLIKE
    return CausalType.TIMELIKE if ch > 0 else CausalType.SPACELIKE


def _vector_scale(system, v):
    v = np.asarray(v, dtype=float)
    return max(1.0, forms.gershgorin_scale(system.form.m_q) * float(v @ v))


def classify_vector(system, v):
    """Causal type of a 3-vector from the sign of the form value."""
    if not system.form.indefinite:
        return CausalType.ELLIPSOID
    val = system.form_value(v)
    tol = LIGHTLIKE_RTOL * _vector_scale(system, v)
    if abs(val) <= tol:
        return CausalType.LIGHTLIKE
    return CausalType.SPACELIKE if val > 0 else CausalType.TIMELIKE


def on_one_sheeted(system, v, atol=1e-9):
    """Membership in the unit one-sheeted hyperboloid (form value +1)."""
    return abs(system.form_value(v) - 1.0) <= atol


def on_two_sheeted(system, v, atol=1e-9):
    """Membership in the unit two-sheeted hyperboloid (form value -1)."""
    return abs(system.form_value(v) + 1.0) <= atol


def on_cone(system, v, atol=1e-9):
    """Membership in the light cone (form value 0, v nonzero)."""
    v = np.asarray(v, dtype=float)
    return bool(np.any(v != 0.0)) and abs(system.form_value(v)) <= atol


class PolarCase(enum.Enum):
    ELLIPSOID = "EllipsoidPolar"
    SPACELIKE = "SpacelikePolar"
    TIMELIKE_SPACELIKE_AXIS = "TimelikeSpacelikeAxis"
    TIMELIKE_TIMELIKE_AXIS = "TimelikeTimelikeAxis"
    TIMELIKE_LIGHTLIKE_AXIS = "TimelikeLightlikeAxis"
    LIGHTLIKE_SPACELIKE_AXIS = "LightlikeSpacelikeAxis"
    LIGHTLIKE_LIGHTLIKE_AXIS = "LightlikeLightlikeAxis"


@dataclass(frozen=True)
class PolarForm:
    """Case-tagged polar decomposition (magnitude, axis, angle, sign)."""

    case: PolarCase
    magnitude: float
    axis: np.ndarray | None
    angle: float
    epsilon: int
    axis_defined: bool = True

    def to_json(self):
        return {
            "case": self.case.value,
            "magnitude": self.magnitude,
            "axis": None if self.axis is None else self.axis.tolist(),
            "angle": self.angle,
            "epsilon": self.epsilon,
            "axis_defined": self.axis_defined,
        }


def _arctan_argument(q0, vnorm):
    """Circular argument with the pi-shifted branch for negative scalar part."""
    base = math.atan2(vnorm, abs(q0)) if q0 != 0.0 else math.pi / 2.0
    return math.pi - base if q0 < 0.0 else base


def polar_decompose(q):
    """Split q into (magnitude, unit axis, angle) per its causal case."""
    comp = q.components
    if not np.any(comp != 0.0):
        raise ZeroNumberError("zero number has no polar form")
    q0 = q.scalar
    vq = q.vector
    eps = -1 if q0 < 0 else 1

    if not q.system.form.indefinite:
        mag = norm(q)
        vnorm = q.system.vector_norm(vq)
        if vnorm == 0.0:
            theta = 0.0 if q0 > 0 else math.pi
            return PolarForm(PolarCase.ELLIPSOID, mag, None, theta, eps,
                             axis_defined=False)
        theta = _arctan_argument(q0, vnorm)
        return PolarForm(PolarCase.ELLIPSOID, mag, vq / vnorm, theta, eps)

    ntype = classify_number(q)
    vtype = classify_vector(q.system, vq) if np.any(vq != 0.0) else None
    vnorm = q.system.vector_norm(vq)

    if ntype is CausalType.SPACELIKE:
        # vector part is necessarily spacelike
        mag = norm(q)
        theta = math.copysign(math.log((abs(q0) + vnorm) / mag), q0) if q0 else 0.0
        return PolarForm(PolarCase.SPACELIKE, mag, vq / vnorm, theta, eps)

    if ntype is CausalType.TIMELIKE:
        mag = norm(q)
        if vtype is None:
            return PolarForm(PolarCase.TIMELIKE_SPACELIKE_AXIS, mag, None,
                             0.0, eps, axis_defined=False)
        if vtype is CausalType.SPACELIKE:
            theta = math.log((abs(q0) + vnorm) / mag)
            return PolarForm(PolarCase.TIMELIKE_SPACELIKE_AXIS, mag,
                             vq / vnorm, theta, eps)
        if vtype is CausalType.TIMELIKE:
            theta = _arctan_argument(q0, vnorm)
            return PolarForm(PolarCase.TIMELIKE_TIMELIKE_AXIS, mag,
                             vq / vnorm, theta, eps)
        # lightlike axis: q = |q0| (eps + v), v = v_q / |q0|
        return PolarForm(PolarCase.TIMELIKE_LIGHTLIKE_AXIS, abs(q0),
                         vq / abs(q0), 1.0, eps)

    # lightlike number
    if q0 != 0.0:
        return PolarForm(PolarCase.LIGHTLIKE_SPACELIKE_AXIS, abs(q0),
                         vq / abs(q0), 1.0, eps)
    return PolarForm(PolarCase.LIGHTLIKE_LIGHTLIKE_AXIS, 0.0, vq.copy(),
                     1.0, eps)


def from_polar(system, pf):
    """Rebuild the number a PolarForm came from."""
    axis = np.zeros(3) if pf.axis is None else np.asarray(pf.axis, dtype=float)
    if pf.case in (PolarCase.ELLIPSOID, PolarCase.TIMELIKE_TIMELIKE_AXIS):
        comp = np.concatenate([[math.cos(pf.angle)], math.sin(pf.angle) * axis])
        return system.from_components(pf.magnitude * comp)
    if pf.case is PolarCase.SPACELIKE:
        comp = np.concatenate([[math.sinh(pf.angle)], math.cosh(pf.angle) * axis])
        return system.from_components(pf.magnitude * comp)
    if pf.case is PolarCase.TIMELIKE_SPACELIKE_AXIS:
        comp = np.concatenate([[pf.epsilon * math.cosh(pf.angle)],
                               math.sinh(pf.angle) * axis])
        return system.from_components(pf.magnitude * comp)
    if pf.case in (PolarCase.TIMELIKE_LIGHTLIKE_AXIS,
                   PolarCase.LIGHTLIKE_SPACELIKE_AXIS):
        comp = np.concatenate([[float(pf.epsilon)], axis])
        return system.from_components(pf.magnitude * comp)
    # lightlike number with lightlike vector: the raw vector part
    return system.from_components(np.concatenate([[0.0], axis]))
