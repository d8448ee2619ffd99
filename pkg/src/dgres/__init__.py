"""Exact constructions over DG algebras: bar resolutions, the diagonal
tensor resolution (𝔹, 𝔻) with its splitting β, and naive-lifting decisions.
"""

from .algebra import (
    AlgElement,
    CheckRecord,
    DGAlgebra,
    Generator,
    Monomial,
    ValidationReport,
    alg_multiply,
    basis_enumerate,
    differential,
    monomial_multiply,
    validate_dg,
)
from .bar import (
    BeLinearMap,
    DerivationTable,
    bar_action,
    bar_differential,
    bar_homotopy,
    be_linear_space,
    check_reduced_exactness,
    derivation_from_generator_images,
    derivation_space,
    eta,
    eta_inverse,
    nJ_kernel_basis,
    nu,
    reduced_bar_differential,
)
from .errors import (
    DgresError,
    LengthMismatch,
    MismatchedAlgebra,
    NotInDomain,
    NotInJn,
    NotLinear,
    NotValidated,
    ObstructionNonzero,
    ParseError,
    ShapeMismatch,
    UsageError,
    WindowIncomplete,
)
from .homology import HomologyTable, assemble_slice, homology_dims, quasi_iso_check
from .linalg import SliceMatrix, solve_linear
from .modules import (
    LiftResult,
    ModTensorElement,
    NTElement,
    SemifreeModule,
    alpha_N,
    beta_N,
    dN,
    DN,
    lambda_n,
    lemma_sign_check,
    mod_element,
    naive_lift_solve,
    validate_module,
)
from .scalars import Field
from .semifree import (
    BBElement,
    TElement,
    DD,
    alpha,
    bb_word,
    check_semifree_triangular,
    dBB,
    dT,
    frakD,
    psi_sign,
    t_action,
    t_multiply,
    t_word,
)
from .tensor import (
    JnView,
    TensorElement,
    delta,
    jn_membership,
    kappa_n,
    kappa_n_inverse,
    pi_B,
    tensor_differential,
    tensor_multiply,
)

__version__ = "0.1.0"
