"""Numerical verification of theta relations and critical-line zeros for
Dedekind zeta functions of abelian number fields."""

from .errors import ZetaThetaError
from .fields import (
    CoefficientTable,
    DirichletCharacter,
    FieldDescriptor,
    builtin_field,
    ideal_coeffs,
    laurent_constant,
    make_field_abelian,
    make_field_from_coeffs,
    moebius_coeffs,
    power_coeffs,
    residue_constant,
)
from .numerics import (
    LogPolynomial,
    QuadratureSpec,
    bessel_k,
    complex_gamma,
    dedekind_zeta,
    dirichlet_l,
    hurwitz_zeta,
    laurent_coefficients,
    line_integral,
    zeta_derivative,
)
from .steen import r0_gamma, steen_v, z_shifted, z_tail_bound, z_tilde
from .theta import (
    ThetaReport,
    check_theta,
    exact_eval_check,
    jacobi_w1_direct,
    koshliakov_w2_direct,
    r0_theta,
    s_series,
    w_theta,
)
from .inverse_theta import (
    InverseReport,
    ZeroList,
    check_inverse_theta,
    dgv_check,
    hlr_check,
    l_series,
    load_zeros,
    r0_inverse,
    r_rho,
    u_inverse,
    write_zeros,
    zero_sum,
)
from .critical_line import (
    ScanResult,
    big_xi,
    phi_identity_check,
    refine_zero,
    scan_zeros,
    xi_completed,
)

__version__ = "0.1.0"
