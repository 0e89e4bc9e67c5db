"""A tour of the spectral basis on Chebyshev-root nodes.

Builds the node grid, checks that the quadrature and pullback metric
integrate polynomials exactly, and shows the summation-by-parts identity
that turns the weak form into a symplectic scheme.
"""

import numpy as np
from numpy.polynomial import Legendre

from pmoc.polybasis import build_family, golub_welsch, make_basis

N = 12
basis = make_basis(N, "chebyshev")
print(f"{N} Chebyshev-root nodes:\n{np.round(basis.nodes, 4)}")

# Gauss-Legendre rule from the Jacobi matrix: exact up to degree 2N - 1
t, w = golub_welsch(build_family("legendre"), N)
for m in (0, 2, 10, 2 * N - 2):
    print(f"int t^{m:<2d} dt  quadrature {np.sum(w * t**m):.15f}  exact {2 / (m + 1):.15f}")

# the metric G reproduces the L2 inner product of degree < N polynomials
rng = np.random.default_rng(0)
p, q = Legendre(rng.standard_normal(N)), Legendre(rng.standard_normal(N))
exact = (p * q).integ()(1.0) - (p * q).integ()(-1.0)
print(f"\np^T G q = {p(basis.nodes) @ basis.G @ q(basis.nodes):.14f}")
print(f"int p q = {exact:.14f}")

# G D + D^T G = E: the discrete integration-by-parts rule
E = np.outer(basis.Lf, basis.Lf) - np.outer(basis.L0, basis.L0)
print(f"\nmax |G D + D^T G - E| = {np.abs(basis.G @ basis.D + basis.D.T @ basis.G - E).max():.2e}")

# derivative of a smooth function converges spectrally
for n in (6, 10, 14, 18):
    b = make_basis(n)
    err = np.abs(b.D @ np.exp(np.sin(b.nodes)) - np.cos(b.nodes) * np.exp(np.sin(b.nodes))).max()
    print(f"N={n:2d}  max derivative error {err:.2e}")
