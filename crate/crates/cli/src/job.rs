//! Job specifications: the JSON form of every CLI invocation.

use std::path::PathBuf;

use dybe::rootdata::Flavor;
use serde::{Deserialize, Serialize};

pub const JOB_SCHEMA: &str = "dybe.job/1";

/// One batch job. `dybe run --job FILE` executes exactly what the equivalent
/// subcommand would.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobSpec {
    pub schema: String,
    pub task: Task,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl JobSpec {
    pub fn new(task: Task) -> JobSpec {
        JobSpec {
            schema: JOB_SCHEMA.into(),
            task,
            output: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Task {
    /// Residual checks of a catalog or file solution.
    Verify {
        equation: Equation,
        solution: Solution,
        /// Hecke parameter as scalar text; defaults per catalog family.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<String>,
        /// Number of tensor factors for the braid-group check.
        #[serde(default = "three")]
        p: usize,
    },
    /// Builds a catalog solution and dumps it.
    Catalog {
        solution: Solution,
    },
    /// Fusion matrices `J_{VW}` by one or both pipelines.
    Fusion {
        pair: ModulePair,
        method: Method,
    },
    /// Exchange matrices `R_{VW}` by one or both pipelines.
    Exchange {
        pair: ModulePair,
        method: Method,
    },
    /// γ-expansion of a quantum solution.
    Limit {
        solution: Solution,
        order: usize,
    },
    /// Inverse Shapovalov form against `J(0)` for sl₂.
    Shapovalov {
        depth: usize,
        quantum: bool,
    },
    Macdonald {
        job: MacdonaldTask,
    },
    /// Acceptance criteria by number; empty means all.
    Acceptance {
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        criteria: Vec<usize>,
    },
}

fn three() -> usize {
    3
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equation {
    Qdybe,
    Hecke,
    Braid,
    Cdybe,
    Unitarity,
    /// Every equation applicable to the solution.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Construction,
    Abrr,
    Both,
}

/// Two modules over one algebra. Module names: `V` (vector), `1` (trivial),
/// `S<k>` and `L<k>` (symmetric and exterior powers of `V`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulePair {
    pub algebra: String,
    pub quantum: bool,
    pub left: String,
    pub right: String,
}

/// A solution: a catalog family with its parameters, or an operator file
/// written by `catalog`. Indices are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Solution {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flavor: Option<Flavor>,
    #[serde(skip_serializing_if = "is_false")]
    pub quantum: bool,
    /// Subset `X` of simple roots (classical) or of `{1..n}` (quantum).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub x: Vec<usize>,
    /// Positive roots `(a, b)`, `a < b`, spanning the zero-coupling family.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub roots: Vec<(usize, usize)>,
    /// Coupling constant as scalar text; defaults to the symbol `e`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub gamma1: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub gamma2: Vec<usize>,
    /// Basis of `l` in ε-coordinates.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub l_basis: Vec<Vec<i64>>,
    /// Closed forms exactly as printed rather than the consistent ones.
    #[serde(skip_serializing_if = "is_false")]
    pub printed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauge: Option<Gauge>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub perturb: Vec<Perturbation>,
}

fn is_false(b: &bool) -> bool {
    !b
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Gauge {
    /// `λ ↦ λ + ν`, rationals as text.
    Shift { nu: Vec<String> },
    /// Shift of the exponential coordinates of a trigonometric solution.
    ExpShift { nu: Vec<String> },
    /// Weyl group element as a permutation of `1..n`.
    Weyl { sigma: Vec<usize> },
    /// Closed 2-form: entries `(a, b, c)`, `a < b`. Quantum forms are
    /// multiplicative with `φ_ba = 1/φ_ab` and unit diagonal.
    TwoForm {
        entries: Vec<(usize, usize, String)>,
    },
}

/// Adds `by` at `at`: a 0-based matrix entry `"i,j"` for quantum solutions,
/// an elementary tensor `"E12,E21"` for classical ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    pub at: String,
    pub by: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum MacdonaldTask {
    /// Dumps `M_r` on `n` variables.
    Operator {
        n: usize,
        r: usize,
        t: String,
    },
    Polynomial {
        mu: Vec<usize>,
        t: String,
    },
    /// Every eigen-equation `M_r P_μ = e_r(μ) P_μ`.
    Eigen {
        mu: Vec<usize>,
        t: String,
    },
    /// `[M_r, M_s] = 0` for all `r < s`, also on Laurent monomials.
    Commutativity {
        n: usize,
        degree: usize,
        t: String,
    },
    /// `D^U_V` for sl₂, and `D^U_{V⊗W} = D^U_V D^U_W = D^U_W D^U_V` when `w` is set.
    Transfer {
        quantum: bool,
        u: String,
        v: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        w: Option<String>,
    },
    Corollary91 {
        n: usize,
        r: usize,
        m: usize,
    },
    /// Truncated trace-function identities for quantum sl₂ on `S²C²`.
    TraceResidual {
        side: TraceSide,
        depth: usize,
        w: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceSide {
    Primal,
    Dual,
    Symmetry,
}
