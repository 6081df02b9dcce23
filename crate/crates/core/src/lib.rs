//! Exact symbolic workbench for classical and quantum dynamical Yang-Baxter
//! theory: fusion and exchange matrices by Verma-module intertwiners and by
//! the ABRR recursion, the classified solution families, and exact residual
//! checks of every equation they satisfy.

pub mod catalog;
pub mod fusion;
pub mod macdonald;
pub mod reps;
pub mod rootdata;
pub mod scalars;
pub mod verify;

mod error;

pub use error::{Error, Result};
