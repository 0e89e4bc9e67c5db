"""Swing-up of the acrobot from rest, and a comparison of three schemes.

Runs the benchmark harness the same way as ``pmoc run``: 64 Chebyshev
nodes, a free horizon in [1, 10] and four seeded starts.  Expect a few
minutes on one core.  A smaller grid then compares the weak variational
scheme with strong Euler-Lagrange collocation in DAE and ODE form.
"""

import numpy as np

from pmoc.cli import compare, format_table, load_config, run

report = run(load_config(system="acrobot", N=64, seeds=4))
rec = report.records[0]
print(f"{rec.status}: cost {rec.cost:.4f}, t_f {rec.t_f:.3f}, feasibility {rec.feasibility:.1e}, "
      f"{rec.major_iterations} major iterations, {rec.wall_time:.0f} s")
print(f"published result for comparison: {rec.reference}")
if report.trajectories[0] is not None:
    traj = report.trajectories[0]
    q = np.array(traj["q"])
    print(f"final angles {q[:, -1].round(6)} (upright is pi, 0 modulo 2 pi)")

base = load_config(system="acrobot", N=32)
table = compare([load_config(**{**base.__dict__, "scheme": s}) for s in ("pmoc", "dae-el", "ode-el")])
print()
print(format_table(table))
