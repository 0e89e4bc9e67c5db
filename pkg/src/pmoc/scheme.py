"""Pseudo-spectral discretizations of forced Lagrangian dynamics.

Three schemes share one decision layout and one set of boundary rows:

* ``pmoc``   -- weak variational form,
  ``(t_f/2) G (L_q + B u) + (D^T G - [Lf^T Lf - L0^T L0]) L_v = 0``;
* ``dae-el`` -- strong Euler-Lagrange collocation,
  ``(2/t_f) D L_v - L_q - B u = 0``;
* ``ode-el`` -- first-order form with a separate velocity grid,
  ``(2/t_f) D q - v = 0`` and ``(2/t_f) D v - a(q, v, u) = 0``.

Grid functions are stored channel-first, shape ``(d, N)``; applying the
differentiation matrix to a stack of rows is ``X @ D.T``.  Physical time
is ``t = (t_f / 2) (s + 1)`` for canonical ``s`` in [-1, 1].
"""

from dataclasses import dataclass, field

import numpy as np

from .mechsys import forward_dynamics
from .polybasis import GridFunction

__all__ = [
    "PMOC",
    "DAE_EL",
    "ODE_EL",
    "SCHEMES",
    "TimeScaling",
    "BoundaryConditions",
    "ControlEffort",
    "Layout",
    "DiscretizedProblem",
    "pmoc_dynamics",
    "dae_el_dynamics",
    "ode_el_dynamics",
    "build_problem",
    "build_pmoc",
    "build_dae_el",
    "build_ode_el",
    "momentum_polynomial",
    "objective_eval",
]

PMOC = "pmoc"
DAE_EL = "dae-el"
ODE_EL = "ode-el"
SCHEMES = (PMOC, DAE_EL, ODE_EL)


@dataclass(frozen=True)
class TimeScaling:
    """Horizon ``t_f``; when ``free`` it is a decision variable in ``bounds``."""

    t_f: float = 1.0
    free: bool = False
    bounds: tuple = (1.0, 10.0)

    def __post_init__(self):
        if self.t_f <= 0:
            raise ValueError("t_f must be positive")
        lo, hi = self.bounds
        if self.free and not (0 < lo <= hi):
            raise ValueError(f"invalid t_f bounds {self.bounds}")


def _component_vector(value, d):
    if value is None:
        return np.full(d, np.nan)
    out = np.broadcast_to(np.asarray(value, dtype=float), (d,)).copy()
    return out


@dataclass(frozen=True)
class BoundaryConditions:
    """Endpoint values; ``None`` or NaN components are left free.

    ``wrap_final`` lists configuration components whose final target is
    only meaningful modulo 2 pi; their residual is ``sin((q - target) / 2)``.
    """

    q_init: object = None
    v_init: object = None
    q_final: object = None
    v_final: object = None
    wrap_final: tuple = ()

    def resolved(self, d):
        return tuple(_component_vector(x, d) for x in (self.q_init, self.v_init, self.q_final, self.v_final))

    def count(self, d):
        return int(sum(np.sum(~np.isnan(x)) for x in self.resolved(d)))


class ControlEffort:
    """Running cost ``l = |u|^2``."""

    def __call__(self, q, qdot, u):
        return np.sum(u**2, axis=0)

    def grad_u(self, q, qdot, u):
        return 2.0 * u


@dataclass(frozen=True)
class Layout:
    """Slices of the flat decision vector."""

    d: int
    m: int
    N: int
    has_v: bool
    free_tf: bool
    n_params: int

    @property
    def q(self):
        return slice(0, self.d * self.N)

    @property
    def v(self):
        start = self.d * self.N
        return slice(start, start + (self.d * self.N if self.has_v else 0))

    @property
    def u(self):
        start = self.v.stop
        return slice(start, start + self.m * self.N)

    @property
    def tf(self):
        start = self.u.stop
        return slice(start, start + (1 if self.free_tf else 0))

    @property
    def params(self):
        start = self.tf.stop
        return slice(start, start + self.n_params)

    @property
    def size(self):
        return self.params.stop


def _rmul(X, M):
    """``X @ M`` acting on axis 1 of ``X`` (extra trailing batch axes allowed)."""
    return np.einsum("cj...,ji->ci...", X, M)


def _velocity(q, D, t_f):
    return (2.0 / t_f) * _rmul(q, D.T)


def pmoc_dynamics(model, basis, q, u, t_f, params=None, D=None):
    """Weak-form residual, one row of length N per configuration channel."""
    D = basis.D if D is None else D
    G = basis.G
    E = np.outer(basis.Lf, basis.Lf) - np.outer(basis.L0, basis.L0)
    v = _velocity(q, D, t_f)
    force = model.L_q(q, v, params) + model.generalized_force(u)
    p = model.L_v(q, v, params)
    # row form of G F + (D^T G - E) p
    return 0.5 * t_f * _rmul(force, G) + _rmul(p, G @ D - E)


def dae_el_dynamics(model, basis, q, u, t_f, params=None):
    v = _velocity(q, basis.D, t_f)
    p = model.L_v(q, v, params)
    return _velocity(p, basis.D, t_f) - model.L_q(q, v, params) - model.generalized_force(u)


def ode_el_dynamics(model, basis, q, v, u, t_f, params=None):
    """Kinematic and dynamic residual blocks of the first-order form."""
    kin = _velocity(q, basis.D, t_f) - v
    dyn = _velocity(v, basis.D, t_f) - forward_dynamics(model, q, v, u, params)
    return kin, dyn


@dataclass(frozen=True, eq=False)
class DiscretizedProblem:
    """One scheme applied to one model on one grid.

    Decision vector layout: ``[q (d*N), v (d*N, ode-el only), u (m*N),
    t_f (if free), design params]``, each grid block channel-major.
    """

    kind: str
    model: object
    basis: object
    bc: BoundaryConditions
    scaling: TimeScaling
    cost: object = field(default_factory=ControlEffort)
    coupling: object = None

    def __post_init__(self):
        if self.kind not in SCHEMES:
            raise ValueError(f"unknown scheme {self.kind!r}")

    @property
    def layout(self):
        return Layout(
            d=self.model.dim_q,
            m=self.model.dim_u,
            N=self.basis.N,
            has_v=self.kind == ODE_EL,
            free_tf=self.scaling.free,
            n_params=len(self.model.param_names),
        )

    @property
    def n(self):
        return self.layout.size

    @property
    def m(self):
        lay = self.layout
        rows = lay.d * lay.N * (2 if lay.has_v else 1)
        rows += self.bc.count(lay.d)
        if self.coupling is not None:
            rows += 1
        return rows

    def unpack(self, x):
        """Split ``x`` (shape ``(n,)`` or ``(n, B)``) into ``q, v, u, t_f, params``."""
        lay = self.layout
        x = np.asarray(x, dtype=float)
        batch = x.shape[1:]
        q = x[lay.q].reshape((lay.d, lay.N) + batch)
        u = x[lay.u].reshape((lay.m, lay.N) + batch)
        t_f = x[lay.tf][0] if lay.free_tf else self.scaling.t_f
        if lay.free_tf and not batch:
            t_f = float(t_f)
        params = x[lay.params] if lay.n_params else None
        if lay.has_v:
            v = x[lay.v].reshape((lay.d, lay.N) + batch)
        else:
            v = _velocity(q, self.basis.D, t_f)
        return q, v, u, t_f, params

    def pack(self, q, u, t_f=None, params=None, v=None):
        lay = self.layout
        x = np.zeros(lay.size)
        x[lay.q] = np.asarray(q, dtype=float).ravel()
        if lay.has_v:
            if v is None:
                tf = self.scaling.t_f if t_f is None else t_f
                v = _velocity(np.asarray(q, dtype=float).reshape(lay.d, lay.N), self.basis.D, tf)
            x[lay.v] = np.asarray(v, dtype=float).ravel()
        x[lay.u] = np.asarray(u, dtype=float).ravel()
        if lay.free_tf:
            x[lay.tf] = self.scaling.t_f if t_f is None else t_f
        if lay.n_params:
            x[lay.params] = self.model.param_defaults if params is None else params
        return x

    def bounds(self):
        lay = self.layout
        lo = np.full(lay.size, -np.inf)
        hi = np.full(lay.size, np.inf)
        if lay.free_tf:
            lo[lay.tf], hi[lay.tf] = self.scaling.bounds
        for k, (a, b) in enumerate(self.model.param_bounds):
            lo[lay.params.start + k] = a
            hi[lay.params.start + k] = b
        return lo, hi

    def dynamics_residual(self, x):
        q, v, u, t_f, params = self.unpack(x)
        if self.kind == PMOC:
            return pmoc_dynamics(self.model, self.basis, q, u, t_f, params)
        if self.kind == DAE_EL:
            return dae_el_dynamics(self.model, self.basis, q, u, t_f, params)
        return np.concatenate(ode_el_dynamics(self.model, self.basis, q, v, u, t_f, params))

    def boundary_residual(self, x):
        q, v, u, t_f, params = self.unpack(x)
        b = self.basis
        batch = q.shape[2:]
        q_init, v_init, q_final, v_final = self.bc.resolved(q.shape[0])
        rows = []
        for form, values, target, wrap in (
            (b.L0, q, q_init, ()),
            (b.L0, v, v_init, ()),
            (b.Lf, q, q_final, self.bc.wrap_final),
            (b.Lf, v, v_final, ()),
        ):
            keep = ~np.isnan(target)
            err = np.einsum("cj...,j->c...", values, form) - target.reshape((-1,) + (1,) * len(batch))
            for k in wrap:
                err[k] = np.sin(0.5 * err[k])
            rows.append(err[keep])
        return np.concatenate(rows)

    def constraints(self, x):
        """All equality residuals; batched over trailing axes of ``x``."""
        batch = np.shape(x)[1:]
        parts = [self.dynamics_residual(x).reshape((-1,) + batch), self.boundary_residual(x)]
        if self.coupling is not None:
            parts.append(np.reshape(self.coupling(self.unpack(x)[4]), (1,) + batch))
        return np.concatenate(parts)

    def objective(self, x):
        q, v, u, t_f, params = self.unpack(x)
        l = self.cost(q, v, u)
        return 0.5 * t_f * np.sum(self.basis.G @ l)

    def objective_grad(self, x):
        """Analytic gradient for the control-effort cost, else ``None``."""
        if not isinstance(self.cost, ControlEffort):
            return None
        lay = self.layout
        q, v, u, t_f, params = self.unpack(x)
        g = np.zeros(lay.size)
        weights = self.basis.G.sum(axis=0)
        g[lay.u] = (0.5 * t_f * self.cost.grad_u(q, v, u) * weights).ravel()
        if lay.free_tf:
            g[lay.tf] = 0.5 * np.sum(self.basis.G @ self.cost(q, v, u))
        return g

    def physical_nodes(self, t_f):
        return 0.5 * t_f * (self.basis.nodes + 1.0)

    def resample(self, x, times):
        """Interpolate ``q, v, u, p`` at physical ``times`` in ``[0, t_f]``."""
        q, v, u, t_f, params = self.unpack(x)
        s = 2.0 * np.asarray(times, dtype=float) / t_f - 1.0
        M = self.basis.interp(s).T
        p = self.model.L_v(q, v, params)
        return q @ M, v @ M, u @ M, p @ M


def build_problem(kind, model, basis, bc, scaling, cost=None, coupling=None):
    """Assemble a :class:`DiscretizedProblem`.

    ``coupling`` is an optional scalar equality on the design parameters,
    e.g. ``lambda p: p.sum() - 1.0``.
    """
    if len(model.param_names) and coupling is None:
        coupling = _unit_sum
    return DiscretizedProblem(
        kind=kind,
        model=model,
        basis=basis,
        bc=bc,
        scaling=scaling,
        cost=ControlEffort() if cost is None else cost,
        coupling=coupling,
    )


def _unit_sum(params):
    return np.sum(params, axis=0) - 1.0


def build_pmoc(model, basis, bc, scaling, cost=None, coupling=None):
    return build_problem(PMOC, model, basis, bc, scaling, cost, coupling)


def build_dae_el(model, basis, bc, scaling, cost=None, coupling=None):
    return build_problem(DAE_EL, model, basis, bc, scaling, cost, coupling)


def build_ode_el(model, basis, bc, scaling, cost=None, coupling=None):
    return build_problem(ODE_EL, model, basis, bc, scaling, cost, coupling)


def momentum_polynomial(problem, x):
    """Grid function of ``L_v`` at the nodes (the interpolated momentum)."""
    q, v, u, t_f, params = problem.unpack(x)
    return GridFunction(problem.basis, problem.model.L_v(q, v, params))


def objective_eval(problem, x):
    return problem.objective(x)

