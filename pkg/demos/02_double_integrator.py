"""Minimum-effort rest-to-rest motion of a point mass.

The closed-form optimum is u(t) = 6 - 12 t with cost 12.  The weak
variational scheme recovers it to solver tolerance with only eight nodes,
and a free horizon pushes t_f to its upper bound because the cost falls
like 12 / t_f^3.
"""

import numpy as np

from pmoc.mechsys import make_point_mass
from pmoc.nlp import assemble, kkt_certificate, solve_sqp
from pmoc.polybasis import make_basis
from pmoc.scheme import BoundaryConditions, TimeScaling, build_pmoc

bc = BoundaryConditions(q_init=0.0, v_init=0.0, q_final=1.0, v_final=0.0)
problem = build_pmoc(make_point_mass(), make_basis(8), bc, TimeScaling(1.0))
instance = assemble(problem)
report = solve_sqp(instance, opt_tol=1e-9)
print(f"{report.status} after {report.major_iterations} major iterations, cost {report.final_cost:.10f}")

t = np.linspace(0.0, 1.0, 6)
q, v, u, p = problem.resample(report.x_star, t)
for ti, qi, ui in zip(t, q[0], u[0]):
    print(f"t={ti:.1f}  q={qi:.6f}  u={ui:+.6f}  (exact {6 - 12 * ti:+.1f})")

feas, stat = kkt_certificate(instance, report.x_star)
print(f"independent KKT check: feasibility {feas:.1e}, stationarity {stat:.1e}")

free = build_pmoc(make_point_mass(), make_basis(8), bc, TimeScaling(2.0, free=True, bounds=(1.0, 3.0)))
r = solve_sqp(assemble(free))
print(f"\nfree horizon in [1, 3]: t_f = {free.unpack(r.x_star)[3]:.6f}, cost {r.final_cost:.6f} (12/27 = {12 / 27:.6f})")
