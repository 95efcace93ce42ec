"""Argument-shift integrability verification on regular adjoint orbits.

Builds the classical complex simple Lie algebras of types A, B, C in a
matrix realization adapted to a Borel subalgebra, forms the shifted
families of invariant polynomials, and verifies by exact and numerical
rank computations that their restrictions to regular adjoint orbits are
completely integrable, including on the nilpotent orbits reached through
principal sl2-triples and Slodowy slices.
"""

__version__ = "0.1.0"

from .errors import (ArgshiftError, ConfigurationError, ModeMismatchError,
                     NonRegularError, RealizationError, SamplingError,
                     SolverError)
from .exact import QC, qc
from .invariants import (InvariantSystem, eval_all, eval_invariant,
                         fundamental_invariants, gradient, gradient_all)
from .liealg import (DEFAULT_TOLERANCE, EXACT, FLOAT, AlgebraElement,
                     LieAlgebra, ad_matrix, bracket, build_algebra,
                     is_regular, killing, orbit_push, orbit_push_exact,
                     random_element, random_regular, tangent_basis)
from .rootdata import (ChevalleyBasis, RootSystem, borel_membership,
                       build_root_system, chevalley_basis,
                       export_structure_constants)
from .shift import (MFFamily, ambient_rank, eval_all_mf, eval_mf,
                    gradient_rows, mf_family, mf_gradient)
from .slodowy import (Sl2Triple, SlodowySlice, ad_h_eigen_check,
                      intersect_orbit, principal_sl2, slodowy_slice)
from .verifier import (AnnihilatorResult, RankReport, TrialRecord,
                       annihilator_check, probe_singular_inclusion,
                       probe_slice_regularity, regular_sample,
                       restricted_rank, verify_completeness)

__all__ = [
    "__version__",
    "ArgshiftError", "ConfigurationError", "ModeMismatchError",
    "NonRegularError", "RealizationError", "SamplingError", "SolverError",
    "QC", "qc",
    "InvariantSystem", "eval_all", "eval_invariant",
    "fundamental_invariants", "gradient", "gradient_all",
    "DEFAULT_TOLERANCE", "EXACT", "FLOAT", "AlgebraElement", "LieAlgebra",
    "ad_matrix", "bracket", "build_algebra", "is_regular", "killing",
    "orbit_push", "orbit_push_exact", "random_element", "random_regular",
    "tangent_basis",
    "ChevalleyBasis", "RootSystem", "borel_membership", "build_root_system",
    "chevalley_basis", "export_structure_constants",
    "MFFamily", "ambient_rank", "eval_all_mf", "eval_mf", "gradient_rows",
    "mf_family", "mf_gradient",
    "Sl2Triple", "SlodowySlice", "ad_h_eigen_check", "intersect_orbit",
    "principal_sl2", "slodowy_slice",
    "AnnihilatorResult", "RankReport", "TrialRecord", "annihilator_check",
    "probe_singular_inclusion", "probe_slice_regularity", "regular_sample",
    "restricted_rank", "verify_completeness",
]
