"""
Módulo de álgebra de laços
"""
from .laurent_loop import LaurentLoop, as_cmatrix, eval_loop
from .involutions import (
    InvolutionSpec,
    SignatureForm,
    apply_involution,
    apply_pointwise,
    conjugate_by,
    default_P,
    default_Q,
    fixed_residual,
    group_residual,
    hyperbolic_J,
    lie_algebra_residual,
    matrix_group_residual,
    mu,
    rho1,
    rho2,
    rho3,
    rho_hat3,
    sigma,
    tau1,
    tau2,
    tau3,
)
from .case_catalog import (
    CaseRow,
    all_case_rows,
    case_catalog,
    conjugation_pair_residual,
    mixed_signature,
    register_case_row,
    row_for_lambda,
    unregister_case_row,
)
from .loop_io import read_loop, write_loop, loop_from_dict, loop_to_dict

__all__ = [
    "LaurentLoop",
    "as_cmatrix",
    "eval_loop",
    "InvolutionSpec",
    "SignatureForm",
    "apply_involution",
    "apply_pointwise",
    "conjugate_by",
    "default_P",
    "default_Q",
    "fixed_residual",
    "group_residual",
    "hyperbolic_J",
    "lie_algebra_residual",
    "matrix_group_residual",
    "mu",
    "rho1",
    "rho2",
    "rho3",
    "rho_hat3",
    "sigma",
    "tau1",
    "tau2",
    "tau3",
    "CaseRow",
    "all_case_rows",
    "case_catalog",
    "conjugation_pair_residual",
    "mixed_signature",
    "register_case_row",
    "row_for_lambda",
    "unregister_case_row",
    "read_loop",
    "write_loop",
    "loop_from_dict",
    "loop_to_dict",
]
