"""Lagrangian models of the mechanical systems used in the benchmarks.

All evaluators are vectorised over trailing axes: ``q`` and ``v`` have
shape ``(dim_q, ...)`` and the partials come back channel-first, e.g.
``L_vv`` has shape ``(dim_q, dim_q, ...)``.  ``L_qv[i, j]`` is the
derivative of the i-th momentum component with respect to ``q_j``.

Pendulum chains use point masses at the distal end of every link, angles
measured from the downward vertical, the first angle absolute and the
others relative to the previous link.  Units are such that the first
link has unit mass and length and ``g = 1``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

__all__ = [
    "ModelError",
    "SimulationError",
    "LagrangianModel",
    "PointMass",
    "ChainPendulum",
    "Trajectory",
    "make_point_mass",
    "make_pendulum",
    "make_acrobot",
    "make_3crobot",
    "make_model",
    "forward_dynamics",
    "reference_simulate",
]


class ModelError(ValueError):
    pass


class SimulationError(RuntimeError):
    pass


class LagrangianModel:
    """Base class: a Lagrangian ``L(q, v)`` with a constant actuation map.

    Subclasses provide ``lagrangian``, ``L_q``, ``L_v``, ``L_vv`` and
    ``L_qv``.  Optional design parameters are passed as ``params`` (an
    array ordered like ``param_names``, possibly with trailing batch
    axes); ``None`` means the defaults.
    """

    name = "model"
    dim_q = 0
    param_names = ()

    @property
    def dim_u(self):
        return self.B.shape[1]

    @property
    def param_defaults(self):
        return np.zeros(0)

    @property
    def param_bounds(self):
        return [(-np.inf, np.inf)] * len(self.param_names)

    def momentum(self, q, v, params=None):
        return self.L_v(q, v, params)

    def energy(self, q, v, params=None):
        p = self.L_v(q, v, params)
        return np.sum(p * np.asarray(v), axis=0) - self.lagrangian(q, v, params)

    def generalized_force(self, u):
        """Map controls of shape ``(dim_u, ...)`` to generalized forces."""
        return np.tensordot(self.B, np.asarray(u, dtype=float), axes=(1, 0))


@dataclass(frozen=True)
class PointMass(LagrangianModel):
    """Free unit-mass particle, ``L = |v|^2 / 2``, fully actuated."""

    dim: int = 1
    name: str = "pointmass"

    @property
    def dim_q(self):
        return self.dim

    @property
    def B(self):
        return np.eye(self.dim)

    def lagrangian(self, q, v, params=None):
        v = np.asarray(v, dtype=float)
        return 0.5 * np.sum(v**2, axis=0)

    def L_q(self, q, v, params=None):
        return np.zeros(np.shape(q))

    def L_v(self, q, v, params=None):
        return np.array(v, dtype=float)

    def L_vv(self, q, v, params=None):
        shape = np.shape(q)[1:]
        eye = np.eye(self.dim).reshape((self.dim, self.dim) + (1,) * len(shape))
        return np.broadcast_to(eye, (self.dim, self.dim) + shape).copy()

    def L_qv(self, q, v, params=None):
        return np.zeros((self.dim,) + np.shape(q))


def _tail_sum(x):
    """``(S^T x)_j = sum_{a >= j} x_a`` along axis 0."""
    return np.flip(np.cumsum(np.flip(x, axis=0), axis=0), axis=0)


def _congruence(X):
    """``S^T X S`` for the lower-triangular ones matrix ``S`` (relative angles)."""
    return _tail_sum(np.swapaxes(_tail_sum(np.swapaxes(X, 0, 1)), 0, 1))


@dataclass(frozen=True)
class ChainPendulum(LagrangianModel):
    """Planar serial chain of point masses hanging from a fixed pivot.

    Parameters
    ----------
    lengths, masses : tuple of float
        Link lengths and distal point masses.
    actuated : tuple of int
        Joints that carry a torque actuator.
    gravity : float
        Gravitational acceleration (0 switches gravity off).
    design : tuple of int
        Indices of links whose length is a free design parameter; their
        values are supplied through ``params``.
    """

    lengths: tuple
    masses: tuple
    actuated: tuple
    gravity: float = 1.0
    design: tuple = ()
    name: str = "chain"
    design_bounds: tuple = (0.01, 1.0)

    def __post_init__(self):
        if len(self.lengths) != len(self.masses) or not self.lengths:
            raise ModelError("lengths and masses must be non-empty and the same size")
        if any(l <= 0 for l in self.lengths):
            raise ModelError("link lengths must be positive")
        if any(m < 0 for m in self.masses) or self.masses[0] <= 0:
            raise ModelError("link masses must be non-negative (first positive)")

    @property
    def dim_q(self):
        return len(self.lengths)

    @property
    def B(self):
        B = np.zeros((self.dim_q, len(self.actuated)))
        for col, joint in enumerate(self.actuated):
            B[joint, col] = 1.0
        return B

    @property
    def param_names(self):
        return tuple(f"l{i + 1}" for i in self.design)

    @property
    def param_defaults(self):
        return np.array([self.lengths[i] for i in self.design], dtype=float)

    @property
    def param_bounds(self):
        return [self.design_bounds] * len(self.design)

    def _lengths(self, params, ndim):
        """Link lengths broadcastable against arrays with ``ndim`` dims."""
        lengths = np.array(self.lengths, dtype=float)
        if params is None or not len(self.design):
            return lengths.reshape((-1,) + (1,) * (ndim - 1))
        params = np.asarray(params, dtype=float)
        batch = params.shape[1:]
        lengths = np.broadcast_to(lengths.reshape((-1,) + (1,) * len(batch)), lengths.shape + batch).copy()
        lengths[list(self.design)] = params
        # params only carry the trailing batch axes
        return lengths.reshape((lengths.shape[0],) + (1,) * (ndim - 1 - len(batch)) + batch)

    def _terms(self, q, v, params):
        q = np.asarray(q, dtype=float)
        v = np.asarray(v, dtype=float)
        n = self.dim_q
        extra = (1,) * (q.ndim - 1)
        lengths = self._lengths(params, q.ndim)
        mu = _tail_sum(np.asarray(self.masses, dtype=float))
        mu_pair = mu[np.maximum.outer(np.arange(n), np.arange(n))].reshape((n, n) + extra)
        C = mu_pair * lengths[:, None] * lengths[None, :]
        phi = np.cumsum(q, axis=0)
        omega = np.cumsum(v, axis=0)
        rel = phi[:, None] - phi[None, :]
        weight = mu.reshape((-1,) + extra) * lengths
        return weight, phi, omega, C * np.cos(rel), C * np.sin(rel)

    def lagrangian(self, q, v, params=None):
        weight, phi, omega, Mc, _ = self._terms(q, v, params)
        T = 0.5 * np.einsum("ab...,a...,b...->...", Mc, omega, omega)
        V = -self.gravity * np.sum(weight * np.cos(phi), axis=0)
        return T - V

    def L_q(self, q, v, params=None):
        weight, phi, omega, _, Ms = self._terms(q, v, params)
        dphi = -np.einsum("ak...,a...,k...->a...", Ms, omega, omega)
        dphi = dphi - self.gravity * weight * np.sin(phi)
        return _tail_sum(dphi)

    def L_v(self, q, v, params=None):
        _, _, omega, Mc, _ = self._terms(q, v, params)
        return _tail_sum(np.einsum("ab...,b...->a...", Mc, omega))

    def L_vv(self, q, v, params=None):
        _, _, _, Mc, _ = self._terms(q, v, params)
        return _congruence(Mc)

    def L_qv(self, q, v, params=None):
        _, _, omega, _, Ms = self._terms(q, v, params)
        idx = np.arange(self.dim_q)
        K = Ms * omega[None, :]
        K[idx, idx] = -np.einsum("ak...,k...->a...", Ms, omega)
        return _congruence(K)

    def mass_matrix(self, q, params=None):
        return self.L_vv(q, np.zeros_like(np.asarray(q, dtype=float)), params)


def make_point_mass(dim=1):
    return PointMass(dim=dim)


def make_pendulum(gravity=1.0):
    """Single unit pendulum with a torque at the pivot."""
    return ChainPendulum((1.0,), (1.0,), actuated=(0,), gravity=gravity, name="pendulum")


def make_acrobot(gravity=1.0):
    """Two-link acrobot, torque on the elbow only."""
    return ChainPendulum((1.0, 1.0), (1.0, 1.0), actuated=(1,), gravity=gravity, name="acrobot")


def make_3crobot(l2=0.5, l3=0.5, gravity=1.0, optimize_lengths=False):
    """Three-link chain of lengths ``1, l2, l3`` with a torque on the last joint.

    With ``optimize_lengths`` the lengths ``l2, l3`` become design
    parameters (the coupling ``l2 + l3 = 1`` is added by the problem
    builder).
    """
    if l2 <= 0 or l3 <= 0:
        raise ModelError(f"link lengths must be positive, got l2={l2}, l3={l3}")
    return ChainPendulum(
        (1.0, float(l2), float(l3)),
        (1.0, 1.0, 1.0),
        actuated=(2,),
        gravity=gravity,
        design=(1, 2) if optimize_lengths else (),
        name="3crobot",
    )


def make_model(system, **kwargs):
    factories = {
        "pointmass": make_point_mass,
        "pendulum": make_pendulum,
        "acrobot": make_acrobot,
        "3crobot": make_3crobot,
    }
    try:
        factory = factories[system]
    except KeyError:
        raise ModelError(f"unknown system {system!r}") from None
    return factory(**kwargs)


def _batched_solve(M, rhs):
    """Solve ``M x = rhs`` with ``M`` of shape ``(d, d, ...)`` and rhs ``(d, ...)``."""
    d = M.shape[0]
    Mb = np.moveaxis(M.reshape(d, d, -1), -1, 0)
    rb = np.moveaxis(rhs.reshape(d, -1), -1, 0)[..., None]
    try:
        x = np.linalg.solve(Mb, rb)[..., 0]
    except np.linalg.LinAlgError as exc:
        raise ModelError("singular mass matrix") from exc
    return np.moveaxis(x, 0, -1).reshape(rhs.shape)


def forward_dynamics(model, q, v, u, params=None):
    """Accelerations ``L_vv^-1 (L_q + B u - L_qv v)``."""
    q = np.asarray(q, dtype=float)
    v = np.asarray(v, dtype=float)
    rhs = (
        model.L_q(q, v, params)
        + model.generalized_force(u)
        - np.einsum("ij...,j...->i...", model.L_qv(q, v, params), v)
    )
    return _batched_solve(model.L_vv(q, v, params), rhs)


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    q: np.ndarray
    v: np.ndarray
    sol: object

    def __call__(self, t):
        """Dense state ``(q, v)`` at time(s) ``t``."""
        y = self.sol(t)
        d = y.shape[0] // 2
        return y[:d], y[d:]


def reference_simulate(model, q0, v0, u, t_f, t_eval=None, params=None,
                       rtol=1e-10, atol=1e-12, force=None):
    """High-accuracy integration of the forced Euler-Lagrange equations.

    Only meant as an independent oracle and for building initial guesses.

    Parameters
    ----------
    u : callable or None
        Control signal ``u(t) -> (dim_u,)``.
    force : callable, optional
        Feedback generalized force ``force(t, q, v) -> (dim_q,)`` applied
        in place of ``B u`` (used for fully actuated guess generation).
    """
    d = model.dim_q
    zero = np.zeros(model.dim_u)

    def rhs(t, y):
        q, v = y[:d], y[d:]
        if force is not None:
            acc = forward_dynamics(model, q, v, zero, params)
            acc = acc + _batched_solve(model.L_vv(q, v, params), np.asarray(force(t, q, v), dtype=float))
        else:
            ctrl = zero if u is None else np.atleast_1d(u(t))
            acc = forward_dynamics(model, q, v, ctrl, params)
        return np.concatenate([v, acc])

    y0 = np.concatenate([np.atleast_1d(q0), np.atleast_1d(v0)]).astype(float)
    res = solve_ivp(rhs, (0.0, t_f), y0, method="DOP853", rtol=rtol, atol=atol,
                    t_eval=t_eval, dense_output=True)
    if res.status != 0:
        raise SimulationError(f"reference integration failed: {res.message}")
    return Trajectory(res.t, res.y[:d], res.y[d:], res.sol)
