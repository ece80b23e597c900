"""
Harmonia Engine Module
Contains the algorithms: apolarity, the h_n contravariant, its Jacobian
invariant, the Gröbner engine and the fiber computations.
"""

from src.engine.apolarity import harmonic, invariant_a, jn_combinatorial, jn_operator, trilinear
from src.engine.fiber import build_fiber_system, d_fiber_check, fermat_fiber, verify_point_on_fiber
from src.engine.groebner import OrderedPoly, buchberger, verify_groebner
from src.engine.jacobian import kappa, rho
from src.engine.parser import parse_form, print_form

__all__ = [
    'harmonic', 'invariant_a', 'jn_combinatorial', 'jn_operator', 'trilinear',
    'build_fiber_system', 'd_fiber_check', 'fermat_fiber', 'verify_point_on_fiber',
    'OrderedPoly', 'buchberger', 'verify_groebner',
    'kappa', 'rho',
    'parse_form', 'print_form',
]
