"""Pseudo-spectral optimal control of forced mechanical systems.

Modules
-------
polybasis   orthogonal-polynomial grids, quadrature and differentiation
mechsys     Lagrangian models (point mass, pendulum, link chains)
scheme      weak-form and Euler-Lagrange discretizations
nlp         dense SQP solver and multistart driver
geomcheck   symplecticity, momentum and convergence checks
cli         benchmark harness (``pmoc run|compare|verify``)
"""

from . import cli, geomcheck, mechsys, nlp, polybasis, scheme
from .mechsys import make_model
from .nlp import assemble, multistart, solve_sqp
from .polybasis import make_basis
from .scheme import BoundaryConditions, TimeScaling, build_problem

__version__ = "0.1.0"

__all__ = [
    "cli",
    "geomcheck",
    "mechsys",
    "nlp",
    "polybasis",
    "scheme",
    "make_model",
    "make_basis",
    "build_problem",
    "BoundaryConditions",
    "TimeScaling",
    "assemble",
    "solve_sqp",
    "multistart",
]
