//! Closed-form solution families of the classical and quantum dynamical
//! Yang-Baxter equations.

mod classical;
mod quantum;
mod tensor;

pub use classical::{
    basic_rational_r, basic_trig_r, classical_r_trig_x, classical_r_zero_coupling, triple_r,
    BDTriple, ClassicalRMatrix,
};
pub use quantum::{gl_closed_forms, intervals, quantum_r_eps_x, quantum_r_x, ClosedForm};
pub use tensor::{Tensor2, Tensor3};
