"""mtv: exact trace identities for eta-quotient and Eisenstein products.

The engine works with q-expansions over Q and over number fields, all
arithmetic exact.  Floating point appears only in two places, both
certified: oracle comparisons against lattice sums, and period recovery
for elliptic specializations.
"""

from .errors import (
    InputError,
    MtvError,
    NonconvergentError,
    PrecisionError,
    ReconstructionError,
    TruncationError,
    UnsupportedScopeError,
    VerificationError,
)
from .qexp import (
    EtaQuotientSpec,
    QSeries,
    dump_form,
    eisenstein_level1,
    eisenstein_prime_level,
    eta_quotient,
    fricke_eisenstein,
    hecke_T,
    load_form,
    op_U,
    op_V,
    rho_conjugate,
)
from .spaces import (
    GaloisOrbitSet,
    Newform,
    conductor_of_space,
    delta_series,
    dim_cusp_level1,
    dim_modular_level1,
    expand_in_triangular,
    hecke_matrix_level1,
    miller_basis,
    newform_basis_level1,
    validate_external_newform,
)
from .trace import (
    TheoremResult,
    coset_translates,
    expand_in_newforms,
    fricke_eta_series,
    main_constant,
    trace_to_level1,
    transformation_polynomial,
    verify_theorem,
)
from .elliptic import (
    CorollaryResult,
    CurveQ,
    CurvePair,
    condition_a,
    j_invariant_numeric,
    reconstruct_real,
    specialize_level1_exact,
    specialize_phi,
    tau_from_curve,
    verify_corollary,
)
from .numerics import BigComplex, eval_qseries, lattice_sum_eisenstein

__version__ = "0.1.0"

__all__ = [
    "BigComplex",
    "CorollaryResult",
    "CurvePair",
    "CurveQ",
    "EtaQuotientSpec",
    "GaloisOrbitSet",
    "InputError",
    "MtvError",
    "Newform",
    "NonconvergentError",
    "PrecisionError",
    "QSeries",
    "ReconstructionError",
    "TheoremResult",
    "TruncationError",
    "UnsupportedScopeError",
    "VerificationError",
    "condition_a",
    "conductor_of_space",
    "coset_translates",
    "delta_series",
    "dim_cusp_level1",
    "dim_modular_level1",
    "dump_form",
    "eisenstein_level1",
    "eisenstein_prime_level",
    "eta_quotient",
    "eval_qseries",
    "expand_in_newforms",
    "expand_in_triangular",
    "fricke_eisenstein",
    "fricke_eta_series",
    "hecke_T",
    "hecke_matrix_level1",
    "j_invariant_numeric",
    "lattice_sum_eisenstein",
    "load_form",
    "main_constant",
    "miller_basis",
    "newform_basis_level1",
    "op_U",
    "op_V",
    "reconstruct_real",
    "rho_conjugate",
    "specialize_level1_exact",
    "specialize_phi",
    "tau_from_curve",
    "trace_to_level1",
    "transformation_polynomial",
    "validate_external_newform",
    "verify_corollary",
    "verify_theorem",
]
