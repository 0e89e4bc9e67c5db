"""Reference values computed without the package under test.

Everything here relies on closed forms or on numpy/scipy routines that
share no code with ``pmoc`` (``leggauss``, ``BarycentricInterpolator``,
``Polynomial``), so agreement is a genuine cross-check.
"""

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import BarycentricInterpolator
from scipy.special import gamma


def legendre_moment(m):
    """Integral of t^m over [-1, 1]."""
    return 0.0 if m % 2 else 2.0 / (m + 1)


def chebyshev_moment(m):
    """Integral of t^m / sqrt(1 - t^2) over [-1, 1]."""
    if m % 2:
        return 0.0
    return np.sqrt(np.pi) * gamma((m + 1) / 2) / gamma(m / 2 + 1)


def gl_integral(fun, n):
    """n-point Gauss-Legendre integral of ``fun`` over [-1, 1]."""
    x, w = leggauss(n)
    return float(np.sum(w * fun(x)))


def random_poly(rng, degree):
    return Polynomial(rng.standard_normal(degree + 1))


def lagrange_basis(nodes):
    """Callables ``l_j`` built independently with scipy's barycentric class."""
    funcs = []
    for j in range(nodes.size):
        e = np.zeros(nodes.size)
        e[j] = 1.0
        funcs.append(BarycentricInterpolator(nodes, e))
    return funcs


def weak_form_by_variations(nodes, Lq_plus_force, Lv, t_f):
    """Weak-form residual assembled one test function at a time.

    For each Lagrange polynomial ``l_j`` used as a virtual displacement:
    ``(t_f/2) int (L_q + Bu) l_j ds + int L_v l_j' ds - [L_v l_j]_{-1}^{1}``
    with ``L_q + Bu`` and ``L_v`` interpolated through the node values and
    the integrals done by an over-resolved Gauss-Legendre rule.
    """
    N = nodes.size
    s, w = leggauss(2 * N + 4)
    basis = lagrange_basis(nodes)
    ell = np.array([b(s) for b in basis])
    dell = np.array([b.derivative(s) for b in basis])
    ends = np.array([[b(-1.0), b(1.0)] for b in basis])
    F = np.atleast_2d(Lq_plus_force) @ ell
    P = np.atleast_2d(Lv) @ ell
    P_ends = np.atleast_2d(Lv) @ ends
    R = np.empty((F.shape[0], N))
    for j in range(N):
        R[:, j] = (0.5 * t_f * (F * ell[j]) @ w + (P * dell[j]) @ w
                   - (P_ends[:, 1] * ends[j, 1] - P_ends[:, 0] * ends[j, 0]))
    return R


def chain_mass_matrix(lengths, q=None):
    """Point masses (unit) at link ends, relative joint angles.

    In absolute angles ``phi`` the inertia is
    ``M_phi[i, j] = l_i l_j cos(phi_i - phi_j) * #{k >= max(i, j)}``;
    relative angles enter through ``phi = S theta`` with ``S`` the
    lower-triangular ones matrix.
    """
    l = np.asarray(lengths, dtype=float)
    d = l.size
    theta = np.zeros(d) if q is None else np.asarray(q, dtype=float)
    phi = np.cumsum(theta)
    M = np.empty((d, d))
    for i in range(d):
        for j in range(d):
            M[i, j] = l[i] * l[j] * np.cos(phi[i] - phi[j]) * (d - max(i, j))
    S = np.tril(np.ones((d, d)))
    return S.T @ M @ S


def central_diff(fun, x, h=1e-6):
    """Central-difference derivative of vector ``fun`` along each coordinate."""
    x = np.asarray(x, dtype=float)
    cols = []
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h * (1.0 + abs(x[i]))
        cols.append((np.asarray(fun(x + e)) - np.asarray(fun(x - e))) / (2.0 * e[i]))
    return np.stack(cols, axis=-1)


# minimum-effort rest-to-rest transfer of a double integrator over [0, 1]:
# Pontryagin gives a linear costate, hence u = 6 - 12 t and cost 12
def double_integrator_control(t, t_f=1.0):
    return (6.0 - 12.0 * t / t_f) / t_f**2


DOUBLE_INTEGRATOR_COST = 12.0
