//! Exact scalars: multivariate rational functions over ℚ in the dynamical,
//! deformation and auxiliary variables, together with γ-series and matrices.

mod gcd;
mod matrix;
mod parse;
mod poly;
mod scalar;
mod series;
mod var;

pub use gcd::{content_in, gcd};
pub use matrix::Matrix;
pub use parse::parse_scalar;
pub use poly::{Mono, Poly};
pub use scalar::{sc, LaurentMono, Mode, MonoMap, Scalar};
pub use series::{gamma_expand, lambda_derivation, GammaSeries};
pub use var::{Var, VarKind, MAX_COORDS, NVARS};
