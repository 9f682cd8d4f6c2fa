"""Hypergeometric and rational solutions of difference equations over towers of nested sums and products."""

from .equivalence import (param_pseudo_orbit, pseudo_orbit_gamma, shift_equivalent, sigma_radical_test,
                          spread, dispersion)
from .errors import (DiffTowerError, FactorizationError, IterationLimitError, ParseError, RegularityBoundError,
                     SolverError)
from .hyper import (HyperCandidate, HyperSolution, constant_level_candidates, hypergeometric_candidates,
                    hypergeometric_solutions, verify_right_factor)
from .normal_form import PNFTriple, pnf_decompose, pnf_refined
from .ore import OreOp, clear_denominators, riccati_residual, right_divide
from .plde import (LaurentBounds, SolutionBasis, pi_laurent_bounds, sigma_degree_bound, solve_plde,
                   universal_denominator)
from .tower import Tower, validate_tower

__all__ = [
    "DiffTowerError", "FactorizationError", "HyperCandidate", "HyperSolution", "IterationLimitError",
    "LaurentBounds", "OreOp", "PNFTriple", "ParseError", "RegularityBoundError", "SolutionBasis", "SolverError",
    "Tower", "clear_denominators", "constant_level_candidates", "dispersion", "hypergeometric_candidates",
    "hypergeometric_solutions", "param_pseudo_orbit", "pi_laurent_bounds", "pnf_decompose", "pnf_refined",
    "pseudo_orbit_gamma", "riccati_residual", "right_divide", "shift_equivalent", "sigma_degree_bound",
    "sigma_radical_test", "solve_plde", "spread", "universal_denominator", "validate_tower",
    "verify_right_factor",
]
