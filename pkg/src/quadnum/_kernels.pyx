# cython: language_level=3
"""Compiled hot kernels: batched quadratic products and characters.

Same API as quadnum._kernels_py; selected at import by quadnum._backend.
"""

import numpy as np

BACKEND = "compiled"


def multiply_one(q, p, coeffs, consts):
    q = np.ascontiguousarray(q, dtype=np.float64)
    p = np.ascontiguousarray(p, dtype=np.float64)
    return multiply_batch(q[None, :], p[None, :], coeffs, consts)[0]


def multiply_batch(Q, P, coeffs, consts):
    """Componentwise quadratic product of paired rows of Q and P."""
    Q = np.ascontiguousarray(Q, dtype=np.float64)
    P = np.ascontiguousarray(P, dtype=np.float64)
    out = np.empty_like(Q)
    cdef double a = coeffs[0], b = coeffs[1], c = coeffs[2]
    cdef double d = coeffs[3], e = coeffs[4], f = coeffs[5]
    cdef double a1 = consts[0], a2 = consts[1], a3 = consts[2]
    cdef double b1 = consts[3], b2 = consts[4], l1 = consts[5]
    cdef const double[:, ::1] qv = Q
    cdef const double[:, ::1] pv = P
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t n = qv.shape[0], i
    cdef double q0, q1, q2, q3, p0, p1, p2, p3, c12, c13, c23
    for i in range(n):
        q0 = qv[i, 0]; q1 = qv[i, 1]; q2 = qv[i, 2]; q3 = qv[i, 3]
        p0 = pv[i, 0]; p1 = pv[i, 1]; p2 = pv[i, 2]; p3 = pv[i, 3]
        c12 = q1 * p2 - q2 * p1
        c13 = q1 * p3 - q3 * p1
        c23 = q2 * p3 - q3 * p2
        ov[i, 0] = (q0 * p0 + a * q1 * p1 + b * q2 * p2 + c * q3 * p3
                    + d * (q1 * p2 + q2 * p1) + e * (q1 * p3 + q3 * p1)
                    + f * (q2 * p3 + q3 * p2))
        ov[i, 1] = q0 * p1 + q1 * p0 + a1 * c12 + b1 * c13 + l1 * c23
        ov[i, 2] = q0 * p2 + q2 * p0 + a2 * c12 + b2 * c13 - b1 * c23
        ov[i, 3] = q0 * p3 + q3 * p0 + a3 * c12 - a2 * c13 + a1 * c23
    return out


def character_batch(Q, coeffs):
    """q*qbar for each row: q0^2 minus the form value of the vector part."""
    Q = np.ascontiguousarray(Q, dtype=np.float64)
    out = np.empty(Q.shape[0], dtype=np.float64)
    cdef double a = coeffs[0], b = coeffs[1], c = coeffs[2]
    cdef double d = coeffs[3], e = coeffs[4], f = coeffs[5]
    cdef const double[:, ::1] qv = Q
    cdef double[::1] ov = out
    cdef Py_ssize_t n = qv.shape[0], i
    cdef double q0, q1, q2, q3
    for i in range(n):
        q0 = qv[i, 0]; q1 = qv[i, 1]; q2 = qv[i, 2]; q3 = qv[i, 3]
        ov[i] = (q0 * q0 - a * q1 * q1 - b * q2 * q2 - c * q3 * q3
                 - 2.0 * d * q1 * q2 - 2.0 * e * q1 * q3 - 2.0 * f * q2 * q3)
    return out
