//! Weight modules, Verma slices and intertwiners.

mod intertwiner;
mod module;
mod powers;
mod rmatrix;
mod verma;

pub use intertwiner::{
    composite_expectation, reachable_drops, solve_intertwiner, solve_intertwiner_in, target_weight,
    word_beta, Intertwiner, IntertwinerTerm,
};
pub use module::{power_dimension, Factorization, Structure, WeightModule};
pub use powers::{ext_power, sym_power};
pub use rmatrix::{constant_r, constant_r21, place_two, reduced_r, tensor_power_r, vector_r};
pub use verma::{
    kostant_count, shapovalov_gram, verma_slice, word_text, HighestWeight, VermaSlice, VermaVector,
    WeightSpace, Word,
};
