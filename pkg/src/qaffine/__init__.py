"""Quantum affine spaces with torsion-free parameters: spectra, limits and twists."""

from .bichar import (Bicharacter, BicharacterError, eval_c, eval_sigma, from_sigma,
                     from_uniparameter, radical, validate)
from .lattice import Lattice, hermite_normal_form, integer_kernel, smith_normal_form
from .limit import (LimitFormulaError, explicit_family, monomial_family, poisson_bracket,
                    poisson_matrix, quadratic_family, solve_f_coefficients, specialize_commutation,
                    verify_limit)
from .spectrum import (IdealLabel, contains, full_spectrum, hasse_diagram, phi_transport,
                       poisson_core, symplectic_core)
from .toric import GradedElement, GradingData, diagram_commute_check, pullback, twisted_multiply

__version__ = "0.1.0"

__all__ = [
    "Bicharacter", "BicharacterError", "eval_c", "eval_sigma", "from_sigma", "from_uniparameter",
    "radical", "validate", "Lattice", "hermite_normal_form", "integer_kernel", "smith_normal_form",
    "LimitFormulaError", "explicit_family", "monomial_family", "poisson_bracket", "poisson_matrix",
    "quadratic_family", "solve_f_coefficients", "specialize_commutation", "verify_limit",
    "verify_limit_box", "IdealLabel", "contains", "full_spectrum", "hasse_diagram", "phi_transport",
    "poisson_core", "symplectic_core", "GradedElement", "GradingData", "diagram_commute_check",
    "pullback", "twisted_multiply",
]
