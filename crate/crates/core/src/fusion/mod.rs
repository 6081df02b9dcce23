//! Fusion and exchange matrices by two independent methods.

mod abrr;
mod dynop;
mod exchange;
mod limit;
mod universal;

pub use abrr::{abrr_fusion, lowering_casimir};
pub use dynop::{slot_weights, DynOp};
pub use exchange::{exchange_matrix, flip_op, fusion_exchange_construction};
pub use limit::{classical_limit, ClassicalLimit};
pub use universal::{
    coefficient_at, evaluate_universal, shapovalov_vs_fusion, universal_sl2_fusion, ShapovalovRow,
    UniversalTerm,
};
