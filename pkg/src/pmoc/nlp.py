"""Dense SQP for the equality-constrained programs built by :mod:`pmoc.scheme`.

The solver handles

    min f(x)  s.t.  c(x) = 0,  lb <= x <= ub

with a damped-BFGS approximation of the Lagrangian Hessian, a primal
active-set treatment of the simple bounds inside each QP, an l1 merit
line search and a second-order correction against the Maratos effect.
Constraint Jacobians are forward differences.
"""

import json
import logging
import time
import warnings
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.linalg

from .mechsys import ModelError, SimulationError, reference_simulate

__all__ = [
    "OPTIMAL",
    "FEASIBLE",
    "INFEASIBLE",
    "ITER_LIMIT",
    "NUMERICAL_FAILURE",
    "NlpError",
    "NlpInstance",
    "SolveOptions",
    "SolveReport",
    "InitialGuessSpec",
    "interpolated_guess",
    "assemble",
    "jacobian",
    "gradient",
    "kkt_certificate",
    "solve_sqp",
    "multistart",
    "dump_instance",
]

log = logging.getLogger(__name__)

OPTIMAL = "Optimal"
FEASIBLE = "Feasible"
INFEASIBLE = "Infeasible"
ITER_LIMIT = "IterLimit"
NUMERICAL_FAILURE = "NumericalFailure"


class NlpError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class NlpInstance:
    """Flat nonlinear program.

    ``grad`` may be ``None`` (finite differences).  When ``batched`` is set,
    ``c`` also accepts an ``(n, B)`` stack of points and returns ``(m, B)``,
    which lets Jacobian columns be evaluated in vectorized chunks.
    """

    n: int
    m: int
    f: object
    c: object
    lb: np.ndarray
    ub: np.ndarray
    x0: np.ndarray
    grad: object = None
    problem: object = None
    batched: bool = False

    def __post_init__(self):
        x0 = np.clip(np.asarray(self.x0, dtype=float), self.lb, self.ub)
        object.__setattr__(self, "x0", x0)
        if x0.shape != (self.n,):
            raise NlpError(f"x0 has shape {x0.shape}, expected ({self.n},)")
        c0 = np.asarray(self.c(x0))
        if c0.shape != (self.m,):
            raise NlpError(f"c(x0) has shape {c0.shape}, expected ({self.m},)")
        if not (np.isfinite(self.f(x0)) and np.all(np.isfinite(c0))):
            raise NlpError("objective or constraints not finite at x0")


@dataclass(frozen=True)
class SolveOptions:
    feas_tol: float = 1e-6
    opt_tol: float = 1e-5
    max_major: int = 2000
    stall_window: int = 50
    stall_rtol: float = 1e-8
    debug: bool = False


@dataclass
class SolveReport:
    status: str
    major_iterations: int
    final_cost: float
    feasibility: float
    optimality: float
    x_star: np.ndarray
    wall_time: float
    multipliers: np.ndarray = None
    message: str = ""
    merit_history: list = field(default_factory=list)
    starts: list = field(default_factory=list)

    @property
    def feasible(self):
        return self.status in (OPTIMAL, FEASIBLE)


def _safe_eval(fun, x):
    try:
        val = fun(x)
    except (ModelError, FloatingPointError, np.linalg.LinAlgError) as exc:
        raise NlpError(f"evaluation failed: {exc}") from exc
    val = np.asarray(val, dtype=float)
    if not np.all(np.isfinite(val)):
        raise NlpError("evaluation returned non-finite values")
    return val


_CHUNK = 64
_NOISE = 1e2 * np.finfo(float).eps


def jacobian(instance, x, c0=None):
    """Forward-difference Jacobian ``dc/dx`` with steps ``1e-7 (1 + |x_i|)``."""
    x = np.asarray(x, dtype=float)
    c0 = _safe_eval(instance.c, x) if c0 is None else c0
    h = 1e-7 * (1.0 + np.abs(x))
    # stay inside the bounds
    h = np.where(x + h > instance.ub, -h, h)
    J = np.empty((c0.size, x.size))
    if instance.batched:
        for lo in range(0, x.size, _CHUNK):
            cols = np.arange(lo, min(lo + _CHUNK, x.size))
            X = np.repeat(x[:, None], cols.size, axis=1)
            X[cols, np.arange(cols.size)] += h[cols]
            J[:, cols] = (_safe_eval(instance.c, X) - c0[:, None]) / h[cols]
        return J
    xp = x.copy()
    for i in range(x.size):
        xp[i] = x[i] + h[i]
        J[:, i] = (_safe_eval(instance.c, xp) - c0) / h[i]
        xp[i] = x[i]
    return J


def gradient(instance, x, f0=None):
    if instance.grad is not None:
        g = instance.grad(x)
        if g is not None:
            return np.asarray(g, dtype=float)
    x = np.asarray(x, dtype=float)
    f0 = float(_safe_eval(instance.f, x)) if f0 is None else f0
    g = np.empty(x.size)
    xp = x.copy()
    for i in range(x.size):
        h = 1e-7 * (1.0 + abs(x[i]))
        if x[i] + h > instance.ub[i]:
            h = -h
        xp[i] = x[i] + h
        g[i] = (float(_safe_eval(instance.f, xp)) - f0) / h
        xp[i] = x[i]
    return g


def _at_bounds(x, lb, ub, g_lag):
    """Variables at (or within roundoff of) a bound, pushed out of the box."""
    tol = 1e-8 * (1.0 + np.abs(x))
    lower = (x - lb <= tol) & (g_lag > 0)
    upper = (ub - x <= tol) & (g_lag < 0)
    return lower | upper


def _ls_multipliers(g, J, free):
    if J.shape[0] == 0:
        return np.zeros(0)
    lam, *_ = np.linalg.lstsq(J[:, free].T, -g[free], rcond=None)
    return lam


def _stationarity(x, g, J, lb, ub):
    """Least-squares multipliers and the bound-aware KKT stationarity norm.

    The norm is that of the projected Lagrangian gradient
    ``x - clip(x - r, lb, ub)``, so a component pushing against a bound
    only counts up to its distance from that bound.
    """
    free = np.ones(x.size, dtype=bool)
    lam = _ls_multipliers(g, J, free)
    r = g + J.T @ lam
    held = _at_bounds(x, lb, ub, r)
    if held.any():
        lam = _ls_multipliers(g, J, ~held)
        r = g + J.T @ lam
    proj = x - np.clip(x - r, lb, ub)
    return lam, float(np.max(np.abs(proj), initial=0.0))


def kkt_certificate(instance, x):
    """Independent ``(feasibility, stationarity)`` check at ``x``."""
    c = _safe_eval(instance.c, x)
    J = jacobian(instance, x, c)
    g = gradient(instance, x)
    _, opt = _stationarity(x, g, J, instance.lb, instance.ub)
    return float(np.max(np.abs(c), initial=0.0)), opt


def _solve_kkt(H, g, J, c):
    n, m = H.shape[0], J.shape[0]
    K = np.zeros((n + m, n + m))
    K[:n, :n] = H
    K[:n, n:] = J.T
    K[n:, :n] = J
    rhs = -np.concatenate([g, c])
    sol = None
    try:
        with warnings.catch_warnings():
            # singular pivots are detected below
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(K, check_finite=False)
        diag = np.abs(np.diag(lu))
        if diag.min() > 1e-13 * diag.max():
            sol = scipy.linalg.lu_solve((lu, piv), rhs, check_finite=False)
    except (ValueError, np.linalg.LinAlgError):
        sol = None
    if sol is None or not np.all(np.isfinite(sol)):
        try:
            sol, *_ = scipy.linalg.lstsq(K, rhs, cond=1e-12, lapack_driver="gelsy",
                                         check_finite=False)
        except (ValueError, np.linalg.LinAlgError) as exc:
            raise NlpError(f"QP subproblem failed: {exc}") from exc
    if not np.all(np.isfinite(sol)):
        raise NlpError("QP subproblem is singular")
    return sol[:n], sol[n:]


def _qp_step(H, g, J, c, x, lb, ub):
    """Equality QP with bounds on the step, by a small primal active set."""
    n = x.size
    fixed = np.zeros(n, dtype=bool)
    d_fix = np.zeros(n)
    bounded = np.isfinite(lb) | np.isfinite(ub)
    for _ in range(2 * int(bounded.sum()) + 2):
        free = ~fixed
        gF = g[free] + H[np.ix_(free, fixed)] @ d_fix[fixed]
        cF = c + J[:, fixed] @ d_fix[fixed]
        dF, lam = _solve_kkt(H[np.ix_(free, free)], gF, J[:, free], cF)
        d = d_fix.copy()
        d[free] = dF
        over = free & ((x + d > ub) | (x + d < lb))
        if over.any():
            fixed |= over
            d_fix[over] = np.clip(x + d, lb, ub)[over] - x[over]
            continue
        # release bounds whose multiplier has the wrong sign
        z = g + H @ d + J.T @ lam
        at_lb = fixed & (x + d_fix <= lb) & (z < 0)
        at_ub = fixed & (x + d_fix >= ub) & (z > 0)
        release = at_lb | at_ub
        if not release.any():
            return d, lam
        fixed &= ~release
        d_fix[release] = 0.0
    return d, lam


def _merit(f, c, mu):
    return f + np.sum(mu * np.abs(c))


def solve_sqp(instance, options=None, **kwargs):
    """Solve ``instance`` and return a :class:`SolveReport`.

    Keyword arguments override fields of :class:`SolveOptions`.
    """
    opts = replace(options or SolveOptions(), **kwargs)
    start = time.perf_counter()
    lb, ub = instance.lb, instance.ub
    x = instance.x0.copy()
    n = x.size
    merit_history = []

    def report(status, k, x, f, c, opt, lam, msg=""):
        return SolveReport(
            status=status,
            major_iterations=k,
            final_cost=float(f),
            feasibility=float(np.max(np.abs(c), initial=0.0)),
            optimality=float(opt),
            x_star=x.copy(),
            wall_time=time.perf_counter() - start,
            multipliers=lam,
            message=msg,
            merit_history=merit_history,
        )

    try:
        f = float(_safe_eval(instance.f, x))
        c = _safe_eval(instance.c, x)
        g = gradient(instance, x, f)
        J = jacobian(instance, x, c)
    except NlpError as exc:
        return report(NUMERICAL_FAILURE, 0, x, np.nan, np.full(instance.m, np.inf), np.inf, None, str(exc))

    H = np.eye(n)
    fresh_hessian = True
    mu = np.zeros(instance.m)
    feas_log = []
    f_log = []
    lam, opt = _stationarity(x, g, J, lb, ub)
    best = (np.inf, x.copy(), f, c.copy(), opt, lam)

    for k in range(opts.max_major):
        feas = float(np.max(np.abs(c), initial=0.0))
        lam, opt = _stationarity(x, g, J, lb, ub)
        if feas <= opts.feas_tol and (opt < best[4] or best[0] > opts.feas_tol):
            best = (feas, x.copy(), f, c.copy(), opt, lam)
        elif best[0] > opts.feas_tol and feas < best[0]:
            best = (feas, x.copy(), f, c.copy(), opt, lam)
        if feas <= opts.feas_tol and opt <= opts.opt_tol:
            return report(OPTIMAL, k, x, f, c, opt, lam)
        feas_log.append(feas)
        f_log.append(f)
        w = opts.stall_window
        if len(feas_log) > w and best[0] > opts.feas_tol:
            # best feasibility before the window vs. inside it; an iterate
            # still lowering the objective is not stalled
            past = min(feas_log[:-w])
            f_past = f_log[-w - 1]
            if (past - min(feas_log[-w:]) < opts.stall_rtol * past
                    and f_past - min(f_log[-w:]) < opts.stall_rtol * (1.0 + abs(f_past))):
                return report(INFEASIBLE, k, x, f, c, opt, lam, "feasibility stalled")

        try:
            d, lam_qp = _qp_step(H, g, J, c, x, lb, ub)
        except NlpError as exc:
            return report(NUMERICAL_FAILURE, k, x, f, c, opt, lam, str(exc))

        if not fresh_hessian and np.max(np.abs(d)) > 1e3 * (1.0 + np.max(np.abs(x))):
            # runaway step from a degenerate quasi-Newton matrix
            H = np.eye(n)
            fresh_hessian = True
            continue
        # Powell's per-constraint penalty weights
        mu = np.maximum(np.abs(lam_qp), 0.5 * (mu + np.abs(lam_qp))) + 1e-8
        phi0 = _merit(f, c, mu)
        # directional derivative of the l1 merit along d (c + J d = 0)
        lin_c = c + J @ d
        slope = g @ d + mu @ (np.abs(lin_c) - np.abs(c))
        # rounding level of the merit: each residual is a sum of terms of
        # size about |J_i| (1 + |x|)
        noise = _NOISE * (abs(f) + mu @ (np.abs(J) @ (1.0 + np.abs(x))))
        if slope >= 0 and not fresh_hessian and slope > noise:
            H = np.eye(n)
            fresh_hessian = True
            continue

        accepted = None
        alpha = 1.0
        while alpha > 1e-10:
            xt = np.clip(x + alpha * d, lb, ub)
            try:
                ft = float(_safe_eval(instance.f, xt))
                ct = _safe_eval(instance.c, xt)
            except NlpError:
                alpha *= 0.5
                continue
            phi = _merit(ft, ct, mu)
            if phi <= phi0 + 1e-4 * alpha * min(slope, 0.0) + noise:
                accepted = (xt, ft, ct)
                break
            if alpha == 1.0:
                # second-order correction
                corr, *_ = np.linalg.lstsq(J, -ct, rcond=1e-12)
                xs = np.clip(xt + corr, lb, ub)
                try:
                    fs = float(_safe_eval(instance.f, xs))
                    cs = _safe_eval(instance.c, xs)
                    if _merit(fs, cs, mu) <= phi0 + 1e-4 * min(slope, 0.0) + noise:
                        accepted = (xs, fs, cs)
                        break
                except NlpError:
                    pass
            # safeguarded quadratic interpolation
            curv = phi - phi0 - slope * alpha
            trial = -slope * alpha**2 / (2.0 * curv) if curv > 0 and slope < 0 else 0.5 * alpha
            alpha = min(max(trial, 0.1 * alpha), 0.5 * alpha)

        if accepted is None:
            if not fresh_hessian:
                H = np.eye(n)
                fresh_hessian = True
                continue
            bf, bx, bfv, bc, bopt, blam = best
            if bf <= opts.feas_tol:
                return report(FEASIBLE, k, bx, bfv, bc, bopt, blam, "line search failed")
            if np.max(np.abs(lin_c)) > 0.1 * feas:
                # the linearized constraints cannot be met either
                return report(INFEASIBLE, k, bx, bfv, bc, bopt, blam,
                              "linearized constraints are inconsistent")
            return report(NUMERICAL_FAILURE, k, bx, bfv, bc, bopt, blam, "line search failed")

        x_new, f_new, c_new = accepted
        poor_model = alpha < 1e-3
        log.debug("major %d: f=%.8g feas=%.3g opt=%.3g alpha=%.3g |d|=%.3g", k, f, feas, opt,
                  alpha, np.max(np.abs(d)))
        if opts.debug:
            assert _merit(f_new, c_new, mu) <= phi0 + noise, "merit increased"
        merit_history.append(_merit(f_new, c_new, mu))
        try:
            g_new = gradient(instance, x_new, f_new)
            J_new = jacobian(instance, x_new, c_new)
        except NlpError as exc:
            return report(NUMERICAL_FAILURE, k + 1, x_new, f_new, c_new, np.inf, lam, str(exc))

        # damped BFGS on the Lagrangian gradient, multipliers held fixed
        s = x_new - x
        y = (g_new + J_new.T @ lam_qp) - (g + J.T @ lam_qp)
        Hs = H @ s
        sHs = s @ Hs
        if sHs > 1e-16 * max(1.0, s @ s):
            if fresh_hessian:
                sy = s @ y
                if sy > 0:
                    H *= (y @ y) / sy
                    Hs = H @ s
                    sHs = s @ Hs
                fresh_hessian = False
            sy = s @ y
            if sy < 0.2 * sHs:
                theta = 0.8 * sHs / (sHs - sy)
                y = theta * y + (1.0 - theta) * Hs
                sy = s @ y
            H = H + np.outer(y, y) / sy - np.outer(Hs, Hs) / sHs
            H = 0.5 * (H + H.T)

        x, f, c, g, J = x_new, f_new, c_new, g_new, J_new
        if poor_model:
            # the quasi-Newton model badly mis-scaled the step
            H = np.eye(n)
            fresh_hessian = True

    lam, opt = _stationarity(x, g, J, lb, ub)
    feas = float(np.max(np.abs(c), initial=0.0))
    if feas <= opts.feas_tol:
        use_best = best[0] <= opts.feas_tol and best[4] < opt
    else:
        use_best = best[0] < feas
    if use_best:
        _, x, f, c, opt, lam = best
    return report(ITER_LIMIT, opts.max_major, x, f, c, opt, lam, "major iteration limit")


@dataclass(frozen=True)
class InitialGuessSpec:
    """How to build a starting trajectory.

    ``sinusoidal``: torque ``amplitude * sin(frequency * t + phase)`` on
    every actuated joint.  ``constant_pd``: constant ``torque`` on the first
    joint, the others held near zero by ``-kp q - kd v`` (a fully actuated,
    infeasible guess).  ``custom``: explicit ``q``/``u`` grids.
    """

    strategy: str = "sinusoidal"
    amplitude: float = 1.0
    frequency: float = 1.0
    phase: float = 0.0
    torque: float = 0.5
    kp: float = 5.0
    kd: float = 1.0
    t_f: float = None
    q: object = None
    u: object = None
    params: object = None

    def perturbed(self, seed):
        """Seeded variation of amplitude/phase (torque/gains for PD)."""
        if seed == 0:
            return self
        rng = np.random.default_rng(seed)
        if self.strategy == "constant_pd":
            return replace(self, torque=self.torque * rng.uniform(0.5, 1.5),
                           kp=self.kp * rng.uniform(0.5, 1.5))
        return replace(self, amplitude=self.amplitude * rng.uniform(0.5, 1.5),
                       frequency=self.frequency * rng.uniform(0.7, 1.3),
                       phase=rng.uniform(0.0, 2.0 * np.pi))


def _guess_grids(problem, guess, t_f):
    model = problem.model
    d = model.dim_q
    nodes = problem.physical_nodes(t_f)
    q_init, v_init, _, _ = problem.bc.resolved(d)
    q0 = np.nan_to_num(q_init)
    v0 = np.nan_to_num(v_init)
    params = model.param_defaults if len(model.param_names) else None
    if guess.strategy == "custom":
        return np.asarray(guess.q, dtype=float).reshape(d, -1), np.asarray(guess.u, dtype=float).reshape(model.dim_u, -1)
    if guess.strategy == "sinusoidal":
        def ctrl(t):
            return np.full(model.dim_u, guess.amplitude * np.sin(guess.frequency * t + guess.phase))

        traj = reference_simulate(model, q0, v0, ctrl, t_f, t_eval=nodes, params=params,
                                  rtol=1e-8, atol=1e-10)
        u = np.vstack([ctrl(t) for t in nodes]).T
    elif guess.strategy == "constant_pd":
        def force(t, q, v):
            tau = -guess.kp * q - guess.kd * v
            tau[0] = guess.torque
            return tau

        traj = reference_simulate(model, q0, v0, None, t_f, t_eval=nodes, params=params,
                                  rtol=1e-8, atol=1e-10, force=force)
        tau = np.array([force(t, traj.q[:, k], traj.v[:, k]) for k, t in enumerate(nodes)]).T
        u = model.B.T @ tau
    else:
        raise NlpError(f"unknown guess strategy {guess.strategy!r}")
    if traj.q.shape[1] != nodes.size:
        raise NlpError("guess simulation did not reach the horizon")
    return traj.q, u


def assemble(problem, guess=None):
    """Flatten ``problem`` into an :class:`NlpInstance` with a simulated guess."""
    guess = guess or InitialGuessSpec()
    t_f = guess.t_f or problem.scaling.t_f
    if problem.scaling.free:
        lo, hi = problem.scaling.bounds
        t_f = float(np.clip(t_f, lo, hi))
    try:
        q, u = _guess_grids(problem, guess, t_f)
    except SimulationError as exc:
        raise NlpError(f"initial guess simulation failed: {exc}") from exc
    # make the guess meet the initial conditions exactly: q + a + b (s + 1)
    b = problem.basis
    q_init, v_init, _, _ = problem.bc.resolved(problem.model.dim_q)
    shift = np.nan_to_num(q_init - q @ b.L0)
    q = q + shift[:, None]
    slope = np.nan_to_num(v_init - (2.0 / t_f) * (q @ b.D.T) @ b.L0) * 0.5 * t_f
    q = q + slope[:, None] * (b.nodes + 1.0)[None, :]
    x0 = problem.pack(q, u, t_f=t_f, params=guess.params)
    lb, ub = problem.bounds()
    return NlpInstance(
        n=problem.n,
        m=problem.m,
        f=problem.objective,
        c=problem.constraints,
        lb=lb,
        ub=ub,
        x0=x0,
        grad=problem.objective_grad,
        problem=problem,
        batched=True,
    )


def interpolated_guess(problem, x, basis):
    """Custom guess on ``basis`` from a solution ``x`` of ``problem`` on another grid.

    Used for continuation in ``N``: a coarse solve is cheap and its
    interpolant is usually close to feasible on a finer grid.
    """
    q, _, u, t_f, params = problem.unpack(x)
    M = problem.basis.interp(basis.nodes).T
    return InitialGuessSpec(strategy="custom", q=q @ M, u=u @ M, t_f=float(t_f),
                            params=None if params is None else np.array(params))


def multistart(make_instance, K, options=None, **kwargs):
    """Run ``K`` seeded starts; return the cheapest feasible report.

    ``make_instance(seed)`` builds the instance for one start.  The
    returned report lists every start's report in ``starts``.  With
    several starts and none feasible, the status is ``Infeasible`` and
    the message collects each start's outcome; a single start is
    returned as solved.  Optimal starts are preferred, then ``Feasible``
    ones, then ``IterLimit`` starts whose iterate meets ``feas_tol`` (the
    status stays ``IterLimit``).
    """
    if K < 1:
        raise NlpError("multistart needs K >= 1")
    reports = []
    for seed in range(K):
        try:
            inst = make_instance(seed)
        except NlpError as exc:
            reports.append(SolveReport(NUMERICAL_FAILURE, 0, np.nan, np.inf, np.inf,
                                       np.zeros(0), 0.0, message=str(exc)))
            continue
        rep = solve_sqp(inst, options, **kwargs)
        log.info("start %d: %s cost=%.6g feas=%.3g majors=%d", seed, rep.status,
                 rep.final_cost, rep.feasibility, rep.major_iterations)
        reports.append(rep)
    feas_tol = replace(options or SolveOptions(), **kwargs).feas_tol
    # an iteration-capped start whose best iterate meets feas_tol still yields a usable design
    ok = ([r for r in reports if r.status == OPTIMAL] or [r for r in reports if r.feasible]
          or [r for r in reports if r.status == ITER_LIMIT and r.feasibility <= feas_tol])
    if ok:
        best = min(ok, key=lambda r: r.final_cost)
    elif len(reports) == 1:
        best = reports[0]
    else:
        best = min(reports, key=lambda r: r.feasibility)
        best = replace(best, status=INFEASIBLE if best.status != NUMERICAL_FAILURE else best.status,
                       message="; ".join(f"start {i}: {r.status} {r.message}".strip()
                                         for i, r in enumerate(reports)))
    best = replace(best, starts=reports)
    return best


def dump_instance(instance, path, samples=4, seed=0):
    """Write ``(n, m, bounds, x0)`` and a table of sampled residuals as JSON.

    Samples are ``x0`` plus ``samples - 1`` seeded perturbations of it, so
    external solvers can be checked against the same evaluations offline.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for k in range(samples):
        x = instance.x0 if k == 0 else instance.x0 + 1e-2 * rng.standard_normal(instance.n)
        x = np.clip(x, instance.lb, instance.ub)
        rows.append({"x": x.tolist(), "f": float(instance.f(x)), "c": np.asarray(instance.c(x)).tolist()})

    def finite(a):
        return [None if not np.isfinite(v) else float(v) for v in a]

    doc = {
        "format": "pmoc-nlp-dump",
        "version": 1,
        "n": instance.n,
        "m": instance.m,
        "lb": finite(instance.lb),
        "ub": finite(instance.ub),
        "x0": instance.x0.tolist(),
        "samples": rows,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
    return doc
