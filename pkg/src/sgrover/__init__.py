"""Grover-type quantum walks, discriminants and Laplacians on simplicial complexes."""
from .complex import (OrientedSimplex, SimplicialComplex, generate_complex, is_bipartite,
                      orientation_search, parse_complex, random_complex, read_complex,
                      validate)
from .errors import ComplexError, NumericError, PreconditionError, RangeError, SGroverError
from .operators import (LinearMap, build_alpha, build_cochain_ops, build_discriminant,
                        build_edge_ops, build_g_walk, f_sigma, reduced_basis)
from .spectra import (check_lifting, eig, find_antisymmetric_switching, lift_spectrum,
                      orientability_spectral, spec_equal_mod_zero, spectral_symmetry)
from .walk import evolve, finding_probability, stationarity_report, stationary_state
from .bloch import band, finite_quotient_check, symbol_d1, symbol_d2
from .checks import run_suite

__version__ = "0.1.0"
