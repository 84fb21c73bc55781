"""Pure-numpy fallback for the hot kernels.

Mirrors the API of the compiled module `quadnum._kernels`; the backend
selector picks whichever is importable.  coeffs is (A,B,C,D,E,F) of the
number system, consts is (alpha1, alpha2, alpha3, beta1, beta2, lambda1).
"""

import numpy as np

BACKEND = "python"


def multiply_one(q, p, coeffs, consts):
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    return multiply_batch(q[None, :], p[None, :], coeffs, consts)[0]


def multiply_batch(Q, P, coeffs, consts):
    """Componentwise quadratic product of paired rows of Q and P."""
    Q = np.asarray(Q, dtype=float)
    P = np.asarray(P, dtype=float)
    a, b, c, d, e, f = coeffs
    a1, a2, a3, b1, b2, l1 = consts
    q0, q1, q2, q3 = Q.T
    p0, p1, p2, p3 = P.T
    c12 = q1 * p2 - q2 * p1
    c13 = q1 * p3 - q3 * p1
    c23 = q2 * p3 - q3 * p2
    out = np.empty_like(Q)
    out[:, 0] = (q0 * p0 + a * q1 * p1 + b * q2 * p2 + c * q3 * p3
                 + d * (q1 * p2 + q2 * p1) + e * (q1 * p3 + q3 * p1)
                 + f * (q2 * p3 + q3 * p2))
    out[:, 1] = q0 * p1 + q1 * p0 + a1 * c12 + b1 * c13 + l1 * c23
    out[:, 2] = q0 * p2 + q2 * p0 + a2 * c12 + b2 * c13 - b1 * c23
    out[:, 3] = q0 * p3 + q3 * p0 + a3 * c12 - a2 * c13 + a1 * c23
    return out


def character_batch(Q, coeffs):
    """q*qbar for each row: q0^2 minus the form value of the vector part."""
    Q = np.asarray(Q, dtype=float)
    a, b, c, d, e, f = coeffs
    q0, q1, q2, q3 = Q.T
    return (q0 * q0 - a * q1 * q1 - b * q2 * q2 - c * q3 * q3
            - 2.0 * d * q1 * q2 - 2.0 * e * q1 * q3 - 2.0 * f * q2 * q3)
