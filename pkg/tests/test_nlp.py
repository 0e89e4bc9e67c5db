import json
from dataclasses import replace

import numpy as np
import pytest

from pmoc.mechsys import make_acrobot, make_pendulum, make_point_mass
from pmoc.nlp import (
    FEASIBLE,
    INFEASIBLE,
    ITER_LIMIT,
    OPTIMAL,
    InitialGuessSpec,
    NlpError,
    NlpInstance,
    SolveOptions,
    assemble,
    dump_instance,
    gradient,
    interpolated_guess,
    jacobian,
    kkt_certificate,
    multistart,
    solve_sqp,
)
from pmoc.polybasis import make_basis
from pmoc.scheme import BoundaryConditions, TimeScaling, build_pmoc

from oracles import DOUBLE_INTEGRATOR_COST, central_diff, double_integrator_control

REST_TO_ONE = BoundaryConditions(q_init=0.0, v_init=0.0, q_final=1.0, v_final=0.0)
SWING_UP = BoundaryConditions(q_init=0.0, v_init=0.0, q_final=np.pi, v_final=0.0, wrap_final=(0,))


def quadratic_instance(scale=1.0, x0=(2.0, -1.0)):
    return NlpInstance(
        n=2, m=1,
        f=lambda x: scale * float(x @ x),
        c=lambda x: np.array([x[0] + x[1] - 1.0]),
        lb=np.full(2, -np.inf), ub=np.full(2, np.inf), x0=np.array(x0),
    )


def double_integrator(N=8, t_f=1.0, free=False, bounds=(1.0, 10.0)):
    p = build_pmoc(make_point_mass(), make_basis(N), REST_TO_ONE, TimeScaling(t_f, free=free, bounds=bounds))
    return p, assemble(p, InitialGuessSpec(amplitude=0.5))


def pendulum_swing_up(N=16, seed=0):
    p = build_pmoc(make_pendulum(), make_basis(N), SWING_UP, TimeScaling(4.0, free=True, bounds=(2.0, 8.0)))
    return assemble(p, InitialGuessSpec(amplitude=0.8).perturbed(seed))


class TestSolveQuadratic:
    def test_analytic_kkt_point(self):
        r = solve_sqp(quadratic_instance())
        assert r.status == OPTIMAL
        assert r.major_iterations <= 5
        np.testing.assert_allclose(r.x_star, [0.5, 0.5], atol=1e-6)

    def test_bound_is_respected(self):
        inst = NlpInstance(
            n=2, m=1,
            f=lambda x: float((x[0] - 3.0) ** 2 + x[1] ** 2),
            c=lambda x: np.array([x[1] - 0.25]),
            lb=np.array([-np.inf, -np.inf]), ub=np.array([1.0, np.inf]), x0=np.zeros(2),
        )
        r = solve_sqp(inst)
        assert r.status == OPTIMAL
        np.testing.assert_allclose(r.x_star, [1.0, 0.25], atol=1e-8)

    def test_scaled_objective_keeps_feasible_set(self):
        r = solve_sqp(quadratic_instance(scale=10.0))
        assert abs(r.x_star.sum() - 1.0) <= 1e-6
        np.testing.assert_allclose(r.x_star, [0.5, 0.5], atol=1e-6)

    def test_incompatible_constraints_are_infeasible(self):
        inst = NlpInstance(
            n=2, m=2, f=lambda x: float(x @ x),
            c=lambda x: np.array([x[0] - 1.0, x[0] - 2.0]),
            lb=np.full(2, -np.inf), ub=np.full(2, np.inf), x0=np.zeros(2),
        )
        r = solve_sqp(inst, max_major=500)
        assert r.status == INFEASIBLE
        assert r.feasibility >= 0.5 - 1e-12

    def test_iteration_cap(self):
        p, inst = double_integrator()
        r = solve_sqp(inst, max_major=1)
        assert r.status == ITER_LIMIT
        assert r.major_iterations == 1
        assert not r.feasible or r.status == FEASIBLE

    def test_rejects_nonfinite_start(self):
        with pytest.raises(NlpError):
            NlpInstance(n=1, m=1, f=lambda x: 0.0, c=lambda x: np.array([np.nan]),
                        lb=np.full(1, -np.inf), ub=np.full(1, np.inf), x0=np.zeros(1))

    def test_rejects_shape_mismatch(self):
        with pytest.raises(NlpError):
            NlpInstance(n=2, m=3, f=lambda x: 0.0, c=lambda x: np.zeros(2),
                        lb=np.full(2, -np.inf), ub=np.full(2, np.inf), x0=np.zeros(2))


class TestDoubleIntegrator:
    def test_minimum_effort_transfer(self):
        p, inst = double_integrator()
        r = solve_sqp(inst, opt_tol=1e-9)
        assert r.status == OPTIMAL
        assert r.final_cost == pytest.approx(DOUBLE_INTEGRATOR_COST, abs=1e-6)
        u = p.unpack(r.x_star)[2][0]
        np.testing.assert_allclose(u, double_integrator_control(p.physical_nodes(1.0)), atol=1e-5)

    def test_free_horizon_hits_upper_bound(self):
        # effort 12 / t_f^3 decreases with the horizon
        p, inst = double_integrator(free=True, bounds=(1.0, 3.0))
        r = solve_sqp(inst, opt_tol=1e-9)
        assert r.status == OPTIMAL
        assert r.x_star[p.layout.tf][0] == 3.0
        assert r.final_cost == pytest.approx(12.0 / 27.0, rel=1e-6)

    def test_kkt_certificate(self):
        _, inst = double_integrator()
        r = solve_sqp(inst)
        feas, opt = kkt_certificate(inst, r.x_star)
        assert feas <= 1e-6
        assert opt <= 1e-5

    def test_multistart_on_convex_problem(self):
        def make(seed):
            p = build_pmoc(make_point_mass(), make_basis(8), REST_TO_ONE, TimeScaling(1.0))
            return assemble(p, InitialGuessSpec(amplitude=0.5).perturbed(seed))

        best = multistart(make, 4, opt_tol=1e-9)
        costs = [s.final_cost for s in best.starts]
        assert len(costs) == 4
        np.testing.assert_allclose(costs, costs[0], atol=1e-8)

    def test_multistart_single_start_is_plain_solve(self):
        _, inst = double_integrator()
        best = multistart(lambda seed: inst, 1)
        plain = solve_sqp(inst)
        assert best.final_cost == plain.final_cost
        assert best.major_iterations == plain.major_iterations
        np.testing.assert_array_equal(best.x_star, plain.x_star)

    def test_multistart_keeps_feasible_capped_start(self):
        def make(seed):
            p = build_pmoc(make_point_mass(), make_basis(8), REST_TO_ONE, TimeScaling(1.0))
            guess = InitialGuessSpec(amplitude=0.5).perturbed(seed)
            x0 = assemble(p, guess).x0 if seed else solve_sqp(assemble(p)).x_star
            return replace(assemble(p, guess), x0=x0)

        # start 0 begins at the optimum, so it is feasible when the cap hits
        best = multistart(make, 2, max_major=1, opt_tol=1e-15)
        assert [s.status for s in best.starts] == ["IterLimit", "IterLimit"]
        assert best.status == "IterLimit"
        assert best.feasibility <= 1e-6
        assert best.final_cost == best.starts[0].final_cost

    def test_multistart_needs_a_start(self):
        with pytest.raises(NlpError):
            multistart(lambda seed: None, 0)


class TestJacobian:
    def test_linear_rows(self):
        A = np.array([[1.0, -2.0, 0.5], [3.0, 0.0, -1.0]])
        inst = NlpInstance(n=3, m=2, f=lambda x: 0.0, c=lambda x: A @ x,
                           lb=np.full(3, -np.inf), ub=np.full(3, np.inf), x0=np.ones(3))
        np.testing.assert_allclose(jacobian(inst, np.array([0.2, 5.0, -3.0])), A, atol=1e-6)

    def test_point_mass_rows_are_linear(self):
        _, inst = double_integrator()
        rng = np.random.default_rng(0)
        J1 = jacobian(inst, rng.standard_normal(inst.n))
        J2 = jacobian(inst, rng.standard_normal(inst.n))
        assert np.abs(J1 - J2).max() < 1e-6

    def test_acrobot_against_central_differences(self):
        bc = BoundaryConditions(q_init=np.zeros(2), v_init=np.zeros(2), q_final=[np.pi, 0], v_final=np.zeros(2),
                                wrap_final=(0,))
        p = build_pmoc(make_acrobot(), make_basis(12), bc, TimeScaling(5.0, free=True))
        inst = assemble(p)
        x = inst.x0 + 0.1 * np.random.default_rng(1).standard_normal(inst.n)
        J = jacobian(inst, x)
        ref = central_diff(p.constraints, x)
        for k in range(inst.n):
            err = np.abs(J[:, k] - ref[:, k]).max()
            assert err <= 1e-3 * max(np.abs(ref[:, k]).max(), 1e-8)

    def test_batched_matches_columnwise(self):
        p, inst = double_integrator()
        plain = NlpInstance(n=inst.n, m=inst.m, f=inst.f, c=inst.c, lb=inst.lb, ub=inst.ub, x0=inst.x0)
        np.testing.assert_allclose(jacobian(inst, inst.x0), jacobian(plain, inst.x0), rtol=0, atol=1e-8)

    def test_step_stays_inside_bounds(self):
        seen = []

        def c(x):
            seen.append(x.copy())
            return np.array([x[0] ** 2])

        inst = NlpInstance(n=1, m=1, f=lambda x: 0.0, c=c, lb=np.zeros(1), ub=np.ones(1), x0=np.ones(1))
        jacobian(inst, np.ones(1))
        assert max(s[0] for s in seen) <= 1.0

    def test_gradient_fallback(self):
        inst = quadratic_instance()
        np.testing.assert_allclose(gradient(inst, np.array([1.0, 2.0])), [2.0, 4.0], rtol=1e-5)


class TestSolverProperties:
    def test_merit_never_increases(self):
        # the solver asserts the per-iteration merit decrease in debug mode
        r = solve_sqp(pendulum_swing_up(), debug=True, max_major=300)
        assert r.status == OPTIMAL

    def test_deterministic(self):
        a = solve_sqp(pendulum_swing_up(seed=2))
        b = solve_sqp(pendulum_swing_up(seed=2))
        assert a.major_iterations == b.major_iterations
        assert a.final_cost == b.final_cost
        np.testing.assert_array_equal(a.x_star, b.x_star)

    def test_optimal_reports_satisfy_tolerances(self):
        inst = pendulum_swing_up()
        opts = SolveOptions()
        r = solve_sqp(inst, opts)
        assert r.status == OPTIMAL
        feas, opt = kkt_certificate(inst, r.x_star)
        assert feas <= opts.feas_tol
        assert opt <= opts.opt_tol

    def test_scaled_objective_solution_is_feasible(self):
        inst = pendulum_swing_up()
        scaled = NlpInstance(n=inst.n, m=inst.m, f=lambda x: 10.0 * inst.f(x), c=inst.c, lb=inst.lb,
                             ub=inst.ub, x0=inst.x0, batched=True)
        r = solve_sqp(scaled)
        assert r.feasible
        assert np.abs(inst.c(r.x_star)).max() <= 1e-6

    def test_multistart_picks_cheapest(self):
        best = multistart(lambda seed: pendulum_swing_up(N=12, seed=seed), 3)
        feasible = [s.final_cost for s in best.starts if s.feasible]
        assert feasible
        assert best.final_cost <= min(feasible)


class TestAssemble:
    def test_sinusoidal_guess_starts_at_rest(self):
        bc = BoundaryConditions(q_init=np.zeros(2), v_init=np.zeros(2), q_final=[np.pi, 0], v_final=np.zeros(2))
        p = build_pmoc(make_acrobot(), make_basis(16), bc, TimeScaling(5.0, free=True))
        inst = assemble(p, InitialGuessSpec(amplitude=1.0))
        q, v, u, t_f, _ = p.unpack(inst.x0)
        np.testing.assert_allclose(q @ p.basis.L0, 0.0, atol=1e-14)
        np.testing.assert_allclose(v @ p.basis.L0, 0.0, atol=1e-12)
        np.testing.assert_allclose(u[0], np.sin(p.physical_nodes(t_f)), atol=1e-14)

    def test_constant_pd_guess(self):
        bc = BoundaryConditions(q_init=np.zeros(2), v_init=np.zeros(2))
        p = build_pmoc(make_acrobot(), make_basis(10), bc, TimeScaling(3.0))
        inst = assemble(p, InitialGuessSpec(strategy="constant_pd"))
        q = p.unpack(inst.x0)[0]
        assert np.abs(q[0]).max() > 0.05
        np.testing.assert_allclose(q @ p.basis.L0, 0.0, atol=1e-14)

    def test_custom_guess_and_interpolation(self):
        p, inst = double_integrator(N=8)
        r = solve_sqp(inst, opt_tol=1e-9)
        fine = build_pmoc(make_point_mass(), make_basis(12), REST_TO_ONE, TimeScaling(1.0))
        guess = interpolated_guess(p, r.x_star, fine.basis)
        x0 = assemble(fine, guess).x0
        assert np.abs(fine.constraints(x0)).max() < 1e-8

    def test_unknown_strategy(self):
        p, _ = double_integrator()
        with pytest.raises(NlpError):
            assemble(p, InitialGuessSpec(strategy="bang-bang"))

    def test_perturbation_is_seeded(self):
        g = InitialGuessSpec()
        assert g.perturbed(0) == g
        assert g.perturbed(3) == g.perturbed(3)
        assert g.perturbed(3) != g.perturbed(4)


class TestDump:
    def test_roundtrip(self, tmp_path):
        p, inst = double_integrator(free=True)
        doc = dump_instance(inst, tmp_path / "nlp.json", samples=3)
        back = json.loads((tmp_path / "nlp.json").read_text())
        assert back == doc
        assert (back["n"], back["m"]) == (17, 12)
        assert back["lb"][p.layout.tf.start] == 1.0
        assert back["lb"][0] is None
        assert len(back["samples"]) == 3
        x = np.array(back["samples"][1]["x"])
        np.testing.assert_allclose(back["samples"][1]["c"], inst.c(x))
