//! Exact residual checks for the dynamical Yang-Baxter equations and the
//! structures around them.

mod classical;
mod quantum;
mod report;

pub use classical::{
    cdybe_residual, cdybe_tensor, gauge_classical, two_form_is_closed, unitarity_check,
    ClassicalGauge,
};
pub use quantum::{
    cocycle_residual, dynamical_hecke_rep, gauge_quantum, hecke_check,
    multiplicative_form_is_closed, qdybe_residual, HeckeRep, QuantumGauge,
};
pub use report::{ResidualReport, Witness};
