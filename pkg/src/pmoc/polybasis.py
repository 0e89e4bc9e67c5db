"""Orthogonal polynomials, Gauss quadrature and collocation operators on [-1, 1].

Everything here lives on the canonical interval.  A collocation grid is
described by a :class:`SpectralBasis`, which bundles the nodes, the Gauss
weights of the host family, the Lagrange differentiation matrix, the
boundary evaluation forms and the metric tensor ``G`` of the (unweighted)
L2 inner product pulled back onto the grid.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

__all__ = [
    "CHEBYSHEV",
    "LEGENDRE",
    "BasisError",
    "IllConditionedBasisWarning",
    "PolynomialFamily",
    "SpectralBasis",
    "GridFunction",
    "build_family",
    "golub_welsch",
    "barycentric_weights",
    "interpolation_matrix",
    "diff_matrix",
    "boundary_forms",
    "legendre_metric",
    "conjugate_diff",
    "make_basis",
    "interpolate",
]

CHEBYSHEV = "chebyshev"
LEGENDRE = "legendre"

# condition-number policy for basis changes and metrics
COND_WARN = 1e8
COND_FAIL = 1e12


class BasisError(ValueError):
    """Raised when a grid or basis cannot be constructed."""


class IllConditionedBasisWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class PolynomialFamily:
    """Orthogonal polynomial family defined by its three-term recurrence.

    ``P_0 = 1`` and ``P_n(t) = (a_n t + b_n) P_{n-1}(t) - c_n P_{n-2}(t)``
    for ``n >= 1`` (with ``P_{-1} = 0``).
    """

    kind: str

    def __post_init__(self):
        if self.kind not in (CHEBYSHEV, LEGENDRE):
            raise BasisError(f"unknown polynomial family {self.kind!r}")

    @property
    def weight_integral(self):
        """Integral of the weight function over [-1, 1]."""
        return np.pi if self.kind == CHEBYSHEV else 2.0

    def weight(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == CHEBYSHEV:
            return 1.0 / np.sqrt(1.0 - t**2)
        return np.ones_like(t)

    def recurrence(self, n):
        """Return arrays ``(a, b, c)`` of length ``n + 1`` (index 0 unused)."""
        k = np.arange(n + 1, dtype=float)
        a = np.zeros(n + 1)
        b = np.zeros(n + 1)
        c = np.zeros(n + 1)
        if self.kind == CHEBYSHEV:
            a[1:] = 2.0
            c[1:] = 1.0
            if n >= 1:
                a[1] = 1.0
                c[1] = 0.0
        else:
            a[1:] = (2.0 * k[1:] - 1.0) / k[1:]
            c[1:] = (k[1:] - 1.0) / k[1:]
        return a, b, c

    def norms(self, n):
        """Norm-squares ``gamma_i = <P_i, P_i>_w`` for ``i < n``."""
        i = np.arange(n, dtype=float)
        if self.kind == CHEBYSHEV:
            g = np.full(n, np.pi / 2.0)
            g[:1] = np.pi
            return g
        return 2.0 / (2.0 * i + 1.0)

    def vandermonde(self, t, n):
        """Matrix ``V[i, j] = P_j(t_i)`` for ``j < n``, by the recurrence."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        a, b, c = self.recurrence(max(n, 1))
        V = np.empty((t.size, n))
        if n == 0:
            return V
        V[:, 0] = 1.0
        prev = np.zeros_like(t)
        for j in range(1, n):
            V[:, j] = (a[j] * t + b[j]) * V[:, j - 1] - c[j] * prev
            prev = V[:, j - 1]
        return V

    def __call__(self, n, t):
        """Evaluate ``P_n`` at ``t``."""
        return self.vandermonde(t, n + 1)[:, n].reshape(np.shape(t))


def build_family(kind):
    return PolynomialFamily(str(kind).lower())


def golub_welsch(family, N):
    """Gauss nodes and weights for ``family`` from the Jacobi matrix.

    The nodes are the roots of ``P_N`` in ascending order; the rule is
    exact for polynomials of degree < 2N against the family weight.
    """
    if N < 1:
        raise BasisError("Gauss rule needs N >= 1")
    a, b, c = family.recurrence(N + 1)
    # monic recurrence p_{n+1} = (t - alpha_n) p_n - beta_n p_{n-1}
    n = np.arange(N)
    alpha = -b[n + 1] / a[n + 1]
    beta = c[n[1:] + 1] / (a[n[1:]] * a[n[1:] + 1])
    try:
        nodes, vecs = eigh_tridiagonal(alpha, np.sqrt(beta))
    except (LinAlgError, ValueError) as exc:
        raise BasisError(f"Jacobi eigenproblem failed for N={N}: {exc}") from exc
    if not np.all(np.isfinite(nodes)):
        raise BasisError(f"Jacobi eigenproblem returned non-finite nodes for N={N}")
    order = np.argsort(nodes)
    nodes = nodes[order]
    weights = family.weight_integral * vecs[0, order] ** 2
    # both families are symmetric about 0
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    return nodes, weights


def _check_distinct(nodes):
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim != 1 or nodes.size == 0:
        raise BasisError("nodes must be a non-empty 1-d array")
    gaps = np.abs(nodes[:, None] - nodes[None, :]) + np.eye(nodes.size)
    if np.any(gaps == 0.0):
        raise BasisError("collocation nodes must be distinct")
    return nodes


def barycentric_weights(nodes):
    """Barycentric weights ``1 / prod_{j != k} (t_k - t_j)``, rescaled."""
    nodes = _check_distinct(nodes)
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    # scale by interval capacity (4 for [-1, 1]) to keep the product in range
    w = 1.0 / np.prod(diff * 0.5, axis=1)
    return w / np.max(np.abs(w))


def interpolation_matrix(nodes, t):
    """Matrix mapping grid samples to values of the interpolant at ``t``.

    Barycentric formula of the second kind; rows at nodes are exact
    Kronecker rows.
    """
    nodes = _check_distinct(nodes)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    w = barycentric_weights(nodes)
    diff = t[:, None] - nodes[None, :]
    exact = diff == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = w / diff
        M = terms / terms.sum(axis=1, keepdims=True)
    hit = exact.any(axis=1)
    M[hit] = exact[hit].astype(float)
    return M


def diff_matrix(nodes):
    """Lagrange differentiation matrix, ``D[i, j] = l_j'(t_i)``."""
    nodes = _check_distinct(nodes)
    w = barycentric_weights(nodes)
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    D = (w[None, :] / w[:, None]) / diff
    np.fill_diagonal(D, 0.0)
    # negative-sum trick: rows annihilate constants exactly
    np.fill_diagonal(D, -D.sum(axis=1))
    return D


def boundary_forms(nodes):
    """Covectors ``(L0, Lf)`` evaluating the interpolant at -1 and +1."""
    M = interpolation_matrix(nodes, [-1.0, 1.0])
    return M[0], M[1]


def _pullback_through_family(nodes, family):
    """Basis change host grid -> Gauss-Legendre grid via discrete orthogonality."""
    N = nodes.size
    host_nodes, host_w = golub_welsch(family, N)
    if not np.allclose(host_nodes, nodes, rtol=0.0, atol=1e-13):
        return None
    leg = build_family(LEGENDRE)
    leg_nodes, _ = golub_welsch(leg, N)
    B = family.vandermonde(nodes, N)
    Bl = family.vandermonde(leg_nodes, N)
    gamma = family.norms(N)
    return Bl @ ((B / gamma).T * host_w)


def legendre_metric(nodes, family=None, return_info=False):
    """Metric tensor of the L2 inner product on [-1, 1] in grid coordinates.

    For samples ``x, y`` of ``p, q`` in R[t]_N, ``x @ G @ y`` is the exact
    integral of ``p q``.  When ``nodes`` are the Gauss roots of ``family`` the
    basis change to the Legendre grid goes through the family's discrete
    orthogonality; otherwise it is barycentric interpolation.

    Parameters
    ----------
    nodes : array_like
        Distinct collocation nodes in [-1, 1].
    family : PolynomialFamily, optional
        Host orthogonal family of the grid.
    return_info : bool
        Also return a dict with the condition numbers of the basis change
        ``A`` and of ``G``.
    """
    nodes = _check_distinct(nodes)
    if np.any(np.abs(nodes) > 1.0):
        raise BasisError("nodes must lie in [-1, 1]")
    N = nodes.size
    leg_nodes, leg_w = golub_welsch(build_family(LEGENDRE), N)
    A = None
    if family is not None:
        A = _pullback_through_family(nodes, family)
    if A is None:
        A = interpolation_matrix(nodes, leg_nodes)
    if not np.all(np.isfinite(A)):
        raise BasisError("basis change to the Legendre grid is singular")
    G = A.T @ (leg_w[:, None] * A)
    G = 0.5 * (G + G.T)
    cond_A = np.linalg.cond(A)
    cond_G = np.linalg.cond(G)
    worst = max(cond_A, cond_G)
    if not np.isfinite(worst) or worst > COND_FAIL:
        raise BasisError(f"singular basis: cond(A)={cond_A:.3g}, cond(G)={cond_G:.3g}")
    if worst > COND_WARN:
        warnings.warn(
            f"ill-conditioned metric: cond(A)={cond_A:.3g}, cond(G)={cond_G:.3g}",
            IllConditionedBasisWarning,
            stacklevel=2,
        )
    if return_info:
        return G, {"cond_A": float(cond_A), "cond_G": float(cond_G)}
    return G


def conjugate_diff(D, G):
    """Adjoint of ``D`` under the metric ``G``: ``G^-1 D^T G``."""
    try:
        Dd = np.linalg.solve(G, D.T @ G)
    except np.linalg.LinAlgError as exc:
        raise BasisError("metric is singular") from exc
    if not np.all(np.isfinite(Dd)):
        raise BasisError("metric is singular")
    return Dd


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """Collocation grid with all the operators the schemes need."""

    family: PolynomialFamily
    nodes: np.ndarray
    quad_weights: np.ndarray
    norms: np.ndarray
    D: np.ndarray
    G: np.ndarray
    L0: np.ndarray
    Lf: np.ndarray
    conditioning: dict = field(default_factory=dict)

    @property
    def N(self):
        return self.nodes.size

    def interp(self, t):
        return interpolation_matrix(self.nodes, t)

    def grid_function(self, values):
        return GridFunction(self, values)


def make_basis(N, kind=CHEBYSHEV):
    """Gauss-root collocation grid of the given family, with Legendre metric."""
    family = build_family(kind)
    nodes, weights = golub_welsch(family, N)
    G, info = legendre_metric(nodes, family, return_info=True)
    L0, Lf = boundary_forms(nodes)
    basis = SpectralBasis(
        family=family,
        nodes=nodes,
        quad_weights=weights,
        norms=family.norms(N),
        D=diff_matrix(nodes),
        G=G,
        L0=L0,
        Lf=Lf,
        conditioning=info,
    )
    for arr in (basis.nodes, basis.quad_weights, basis.norms, basis.D, basis.G, basis.L0, basis.Lf):
        arr.setflags(write=False)
    return basis


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Vector-valued polynomial in R[t]_N stored by its samples on a grid.

    ``values`` has shape ``(d, N)``: one row per channel.
    """

    basis: SpectralBasis
    values: np.ndarray

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.values, dtype=float))
        if v.shape[1] != self.basis.N:
            raise BasisError(f"expected {self.basis.N} samples per channel, got {v.shape[1]}")
        object.__setattr__(self, "values", v)

    def __call__(self, t):
        """Interpolant at canonical time(s) ``t``; shape ``(d,)`` or ``(d, len(t))``."""
        scalar = np.ndim(t) == 0
        out = self.values @ self.basis.interp(t).T
        return out[:, 0] if scalar else out

    def derivative(self):
        return GridFunction(self.basis, self.values @ self.basis.D.T)


def interpolate(gf, t):
    return gf(t)
