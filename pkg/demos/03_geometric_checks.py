"""Numerical certificates for the geometry of the scheme.

1. The endpoint map of the pendulum is symplectic up to the finite
   difference error of the probe, which shrinks like eps^2.  Forming
   velocities with D^T instead of D breaks the structure.
2. The gravity-free acrobot conserves the momentum conjugate to its
   shoulder angle.
3. The scheme residual at an accurate trajectory decays faster than any
   power of N.
"""

import numpy as np

from pmoc.geomcheck import (
    FlowMapProbe,
    broken_probe,
    convergence_study,
    discrete_flow,
    symplectic_defect,
)
from pmoc.mechsys import make_acrobot, make_pendulum
from pmoc.polybasis import make_basis

N = 16
probe = FlowMapProbe(make_pendulum(), make_basis(N), np.zeros((1, N)), np.array([1.5]), np.array([0.0]), 3.0)
for eps in (1e-2, 5e-3, 1e-5):
    print(f"eps={eps:.0e}  symplectic defect {symplectic_defect(probe, eps=eps).defect:.3e}")
print(f"broken velocity operator: defect {symplectic_defect(broken_probe(probe)).defect:.3f}")

model = make_acrobot(gravity=0.0)
q0, v0 = np.array([0.3, 0.5]), np.array([0.8, -0.9])
p0 = model.L_v(q0, v0)
for n in (8, 16, 24):
    _, p_f = discrete_flow(model, make_basis(n), np.zeros((1, n)), q0, p0, 3.0)
    print(f"N={n:2d}  shoulder momentum p0={p0[0]:.15f}  p_f={p_f[0]:.15f}")

print("\nresidual of the scheme at an accurate pendulum trajectory")
for row in convergence_study(make_pendulum(), "pmoc", [8, 12, 16, 20, 24]):
    print(f"N={row.N:2d}  {row.residual:.3e}")
