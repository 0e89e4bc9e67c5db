"""Numerical certificates for the geometric properties of the weak-form scheme.

The endpoint flow map ``(q0, p0) -> (q_f, p_f)`` is obtained by solving the
weak-form rows with the boundary momenta entering only through the natural
boundary term: the initial momentum is prescribed and the final momentum is
an extra unknown.  At a solution of the full two-point problem the boundary
momenta coincide with the momentum polynomial at the endpoints.
"""

import csv
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.linalg

from .mechsys import reference_simulate
from .polybasis import make_basis
from .scheme import (
    DAE_EL,
    PMOC,
    SCHEMES,
    _rmul,
    _velocity,
    dae_el_dynamics,
    ode_el_dynamics,
    pmoc_dynamics,
)

__all__ = [
    "FlowError",
    "NonCyclicError",
    "FlowMapProbe",
    "SymplecticDefect",
    "ConvergenceFixture",
    "StudyRow",
    "canonical_form",
    "discrete_flow",
    "flow_residual",
    "symplectic_defect",
    "broken_probe",
    "momentum_drift",
    "restore_feasibility",
    "convergence_study",
    "write_study_csv",
]


class FlowError(RuntimeError):
    """The two-point solve behind a flow-map evaluation did not converge."""


class NonCyclicError(ValueError):
    """The requested coordinate is not cyclic or is actuated."""


def canonical_form(d):
    """``[[0, -I], [I, 0]]`` of size ``2d``."""
    eye = np.eye(d)
    zero = np.zeros((d, d))
    return np.block([[zero, -eye], [eye, zero]])


def flow_residual(model, basis, u, q, p_f, q0, p0, t_f, params=None, D_velocity=None):
    """Square flow-map system; ``q`` is ``(d, N[, B])`` and ``p_f`` is ``(d[, B])``.

    Weak-form rows with the boundary term built from ``p0`` and ``p_f``,
    stacked with the initial configuration rows.  ``D_velocity`` replaces
    the operator that turns ``q`` into velocities (negative controls only).
    """
    D = basis.D
    Dv = D if D_velocity is None else D_velocity
    batch = q.shape[2:]
    ext = (slice(None),) + (None,) * len(batch)
    v = _velocity(q, Dv, t_f)
    force = model.L_q(q, v, params) + model.generalized_force(_expand(u, batch))
    p = model.L_v(q, v, params)
    boundary = (np.einsum("c...,j->cj...", p_f, basis.Lf)
                - np.einsum("c...,j->cj...", np.asarray(p0)[ext] + 0.0 * p_f, basis.L0))
    R = 0.5 * t_f * _rmul(force, basis.G) + _rmul(p, basis.G @ D) - boundary
    init = np.einsum("cj...,j->c...", q, basis.L0) - np.asarray(q0)[ext]
    d, N = q.shape[:2]
    return np.concatenate([R.reshape((d * N,) + batch), init])


def _expand(u, batch):
    return u.reshape(u.shape + (1,) * len(batch)) if batch else u


def _initial_guess(model, basis, q0, p0, t_f, params):
    d = q0.size
    M = model.L_vv(q0[:, None], np.zeros((d, 1)), params)
    M = M.reshape(d, d) if M.ndim > 2 else M
    v0 = np.linalg.solve(M, p0)
    t = 0.5 * t_f * (basis.nodes + 1.0)
    return q0[:, None] + v0[:, None] * t[None, :], p0.copy()


def discrete_flow(model, basis, u, q0, p0, t_f, params=None, tol=1e-10, max_iter=60,
                  D_velocity=None, guess=None, return_grid=False):
    """Endpoint map of the weak-form scheme with the control grid ``u`` held fixed.

    Parameters
    ----------
    u : array, shape (dim_u, N)
        Control samples at the nodes.
    q0, p0 : array, shape (d,)
        Initial configuration and momentum.
    D_velocity : array, optional
        Replacement for the velocity operator (negative controls only).
    guess : tuple, optional
        ``(q_grid, p_f)`` warm start.

    Returns
    -------
    q_f, p_f : ndarray
        Final configuration (from the interpolant) and final momentum.
        With ``return_grid`` the converged ``q`` grid is returned as well.

    Raises
    ------
    FlowError
        When damped Newton fails to bring the residual below ``tol``.
    """
    q0 = np.atleast_1d(np.asarray(q0, dtype=float))
    p0 = np.atleast_1d(np.asarray(p0, dtype=float))
    d, N = q0.size, basis.N
    u = np.asarray(u, dtype=float).reshape(model.dim_u, N)
    if guess is None:
        q, pf = _initial_guess(model, basis, q0, p0, t_f, params)
    else:
        q, pf = (np.array(g, dtype=float) for g in guess)
    z = np.concatenate([q.ravel(), pf])

    def F(z):
        batch = z.shape[1:]
        return flow_residual(model, basis, u, z[: d * N].reshape((d, N) + batch), z[d * N:],
                             q0, p0, t_f, params, D_velocity)

    r = F(z)
    norm = np.max(np.abs(r))
    polish = 0
    for _ in range(max_iter):
        if not np.isfinite(norm):
            break
        if norm < tol:
            # a couple of extra steps push the residual to roundoff
            polish += 1
            if polish > 2:
                break
        h = 1e-6 * (1.0 + np.abs(z))
        Z = z[:, None] + np.diag(h)
        Jac = (F(Z) - F(z[:, None] - np.diag(h))) / (2.0 * h)
        try:
            step = np.linalg.solve(Jac, -r)
        except np.linalg.LinAlgError:
            step, *_ = np.linalg.lstsq(Jac, -r, rcond=None)
        alpha = 1.0
        while alpha > 1e-6:
            zt = z + alpha * step
            rt = F(zt)
            nt = np.max(np.abs(rt))
            if np.isfinite(nt) and (nt < (1.0 - 1e-4 * alpha) * norm or norm < tol):
                break
            alpha *= 0.5
        else:
            break
        if norm < tol and not nt < norm:
            break
        z, r, norm = zt, rt, nt
    if not norm < tol:
        raise FlowError(f"flow solve did not converge: residual {norm:.3e} (tol {tol:.1e})")
    q = z[: d * N].reshape(d, N)
    q_f = q @ basis.Lf
    p_f = z[d * N:]
    if return_grid:
        return q_f, p_f, q
    return q_f, p_f


@dataclass(frozen=True, eq=False)
class FlowMapProbe:
    """Base point and settings for probing the endpoint map."""

    model: object
    basis: object
    u: np.ndarray
    q0: np.ndarray
    p0: np.ndarray
    t_f: float
    tol: float = 1e-10
    eps: float = 1e-5
    params: object = None
    D_velocity: np.ndarray = None

    def flow(self, z, guess=None):
        d = np.size(self.q0)
        return discrete_flow(self.model, self.basis, self.u, z[:d], z[d:], self.t_f, self.params,
                             tol=self.tol, D_velocity=self.D_velocity, guess=guess,
                             return_grid=True)


@dataclass
class SymplecticDefect:
    J_num: np.ndarray
    defect: float
    eps: float
    omega: np.ndarray = field(repr=False, default=None)


def broken_probe(probe):
    """Negative control: velocities formed with ``D^T`` instead of ``D``.

    Swapping ``D`` for ``D^T`` everywhere would still give the stationarity
    conditions of a discrete action, hence a symplectic map; breaking only
    the velocity operator destroys that structure.
    """
    return replace(probe, D_velocity=probe.basis.D.T)


def symplectic_defect(probe, eps=None):
    """Central-difference flow Jacobian and ``max |J^T Omega J - Omega|``."""
    eps = probe.eps if eps is None else eps
    d = np.size(probe.q0)
    z0 = np.concatenate([np.atleast_1d(probe.q0), np.atleast_1d(probe.p0)]).astype(float)
    q_f, p_f, grid = probe.flow(z0)
    guess = (grid, p_f)
    J = np.empty((2 * d, 2 * d))
    for i in range(2 * d):
        h = eps * (1.0 + abs(z0[i]))
        e = np.zeros(2 * d)
        e[i] = h
        plus = np.concatenate(probe.flow(z0 + e, guess)[:2])
        minus = np.concatenate(probe.flow(z0 - e, guess)[:2])
        J[:, i] = (plus - minus) / (2.0 * h)
    omega = canonical_form(d)
    defect = float(np.max(np.abs(J.T @ omega @ J - omega)))
    return SymplecticDefect(J_num=J, defect=defect, eps=eps, omega=omega)


def momentum_drift(model, basis, q, cyclic_index, t_f=1.0, v=None, u=None, params=None,
                   D=None):
    """Spread (max - min) of one momentum component on a ``4N`` refinement.

    ``q`` (and optionally ``v``) are ``(d, N)`` node values.  The momentum
    polynomial interpolates ``L_v`` through the nodes.

    Raises
    ------
    NonCyclicError
        If ``L_q`` has a nonzero ``cyclic_index`` component along the
        trajectory, or the coordinate receives actuation.
    """
    q = np.asarray(q, dtype=float)
    D = basis.D if D is None else D
    v = _velocity(q, D, t_f) if v is None else np.asarray(v, dtype=float)
    k = int(cyclic_index)
    if not 0 <= k < q.shape[0]:
        raise NonCyclicError(f"index {k} out of range for dim {q.shape[0]}")
    # probe L_q on the trajectory and on scrambled states
    rng = np.random.default_rng(0)
    qs = np.concatenate([q, q + rng.standard_normal(q.shape)], axis=1)
    vs = np.concatenate([v, v + rng.standard_normal(v.shape)], axis=1)
    Lq = model.L_q(qs, vs, params)[k]
    scale = 1.0 + np.max(np.abs(model.L_v(qs, vs, params)))
    if np.max(np.abs(Lq)) > 1e-12 * scale:
        raise NonCyclicError(f"coordinate {k} is not cyclic (|L_q| up to {np.max(np.abs(Lq)):.2e})")
    B = np.atleast_2d(model.B)
    if u is None:
        if np.any(B[k] != 0):
            raise NonCyclicError(f"coordinate {k} is actuated")
    elif np.max(np.abs(np.atleast_1d(model.generalized_force(np.asarray(u, dtype=float))[k]))) > 0:
        raise NonCyclicError(f"coordinate {k} receives a nonzero generalized force")
    p = model.L_v(q, v, params)[k]
    fine = np.linspace(-1.0, 1.0, 4 * basis.N)
    values = p @ basis.interp(fine).T
    return float(np.max(values) - np.min(values))


def restore_feasibility(problem, x0, tol=1e-12, max_iter=30):
    """Minimum-norm Gauss-Newton onto ``problem.constraints(x) = 0``.

    Starting from a nearly feasible ``x0`` (e.g. an accurately simulated
    trajectory), this returns a point satisfying the scheme's rows and
    boundary rows to ``tol`` while moving ``x0`` as little as possible.
    Directions with singular values below ``1e-9`` of the largest are
    dropped, which removes rows made redundant by a conservation law.

    Raises
    ------
    FlowError
        When the residual does not fall below ``tol``.
    """
    x = np.array(x0, dtype=float)
    norm = np.inf
    for _ in range(max_iter):
        c = problem.constraints(x)
        norm = np.max(np.abs(c))
        if norm < tol:
            return x, float(norm)
        h = 1e-6 * (1.0 + np.abs(x))
        J = (problem.constraints(x[:, None] + np.diag(h))
             - problem.constraints(x[:, None] - np.diag(h))) / (2.0 * h)
        step, *_ = scipy.linalg.lstsq(J, -c, cond=1e-9)
        x = x + step
    raise FlowError(f"feasibility restoration stalled at residual {norm:.3e}")


@dataclass(frozen=True)
class ConvergenceFixture:
    """Initial-value problem with a smooth control, solved to tight tolerance."""

    t_f: float = 4.0
    q0: tuple = (0.3,)
    v0: tuple = (0.0,)
    amplitude: float = 0.5
    frequency: float = 1.0
    constant: bool = False

    def control(self, t):
        if self.constant:
            return np.atleast_1d(self.amplitude)
        return np.atleast_1d(self.amplitude * np.sin(self.frequency * t))


@dataclass
class StudyRow:
    N: int
    residual: float
    defect: float = np.nan
    drift: float = np.nan


def convergence_study(model, kind, N_list, fixture=None, basis_kind="chebyshev"):
    """Scheme residual at an accurately simulated trajectory, for each ``N``."""
    if kind not in SCHEMES:
        raise ValueError(f"unknown scheme {kind!r}")
    fixture = fixture or ConvergenceFixture()
    rows = []
    for N in N_list:
        basis = make_basis(int(N), basis_kind)
        t = 0.5 * fixture.t_f * (basis.nodes + 1.0)
        traj = reference_simulate(model, np.asarray(fixture.q0, float), np.asarray(fixture.v0, float),
                                  fixture.control, fixture.t_f, t_eval=t, rtol=1e-13, atol=1e-14)
        u = np.column_stack([fixture.control(s) for s in t])
        if kind == PMOC:
            res = pmoc_dynamics(model, basis, traj.q, u, fixture.t_f)
        elif kind == DAE_EL:
            res = dae_el_dynamics(model, basis, traj.q, u, fixture.t_f)
        else:
            res = np.concatenate(ode_el_dynamics(model, basis, traj.q, traj.v, u, fixture.t_f))
        rows.append(StudyRow(N=int(N), residual=float(np.max(np.abs(res)))))
    return rows


def write_study_csv(rows, path):
    """CSV with columns ``N, residual, defect, drift``."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["N", "residual", "defect", "drift"])
        for r in rows:
            w.writerow([r.N, repr(float(r.residual)), repr(float(r.defect)), repr(float(r.drift))])
