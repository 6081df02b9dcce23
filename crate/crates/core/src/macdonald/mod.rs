//! Transfer difference operators, Macdonald operators and polynomials, and
//! weighted trace functions of quantum sl₂.

mod diffop;
mod operators;
mod trace;
mod transfer;

pub use diffop::{diffop_report, shift_scalar, DiffOp};
pub use operators::{
    commutator_check, dominated_by, eigen_check, laurent_exponents, mac_t, macdonald_eigenvalue,
    macdonald_operator, macdonald_polynomial, monomial_symmetric, partitions, subsets_of_size,
    t_power, transfer_macdonald_check, transfer_macdonald_sides, x_coefficients, x_monomial,
};
pub use trace::{
    mr_residual, mr_residual_of, psi_series, q_factor, symmetry_check, symmetry_residual,
    trace_function_series, MrSide, TraceSeries, MAX_TRACE_DEPTH,
};
pub use transfer::{
    character_at_mu, gamma_m, invert_q_and_lambda, q_mu_pair, reflect_rho, transfer_diffop,
    weyl_denominator,
};
