"""Exact operator-bracket calculus with numeric cross-checks.

Core layers: an exact scalar ring (scalars), normal-ordered polynomials over
canonical pairs (algebra), operator derivatives (derivatives), the bracket
operator and its laws (poisson), equations of motion (dynamics), a hybrid
classical/quantum two-particle model (hybrid), a truncated-oscillator matrix
backend (matrixrep), and phase-space grid checks (wigner).
"""

from .algebra import (CanonicalSystem, NCPoly, SystemMismatchError, commutator,
                      delta, delta_power)
from .derivatives import (formula2_rhs, formula3_check, formula3_residual,
                          gateaux, gateaux_limit_form, higher_partial,
                          lambda_integral_power, partial_derivative,
                          word_partial_derivative)
from .dynamics import (HamiltonianSpec, compact_form_rhs, delta_expansion_rhs,
                       derivative_expansion_rhs, heisenberg_rhs,
                       lindblad_residual_symbolic, qce_rhs)
from .poisson import (correspondence_residual, law_checks, poisson_bracket,
                      poisson_bracket_total)
from .scalars import CRat, ExactDivisionError, ScalarPoly, i_times

__version__ = "0.1.0"

__all__ = [
    "CRat", "CanonicalSystem", "ExactDivisionError", "HamiltonianSpec",
    "NCPoly", "ScalarPoly", "SystemMismatchError", "commutator",
    "compact_form_rhs", "correspondence_residual", "delta",
    "delta_expansion_rhs", "delta_power", "derivative_expansion_rhs",
    "formula2_rhs", "formula3_check", "formula3_residual", "gateaux",
    "gateaux_limit_form", "heisenberg_rhs", "higher_partial", "i_times",
    "lambda_integral_power", "law_checks", "lindblad_residual_symbolic",
    "partial_derivative", "poisson_bracket", "poisson_bracket_total",
    "qce_rhs", "word_partial_derivative",
]
