//! Variable symbols of the coefficient field.
//!
//! Every scalar lives in one fixed polynomial ring with [`NVARS`] variables.
//! The index of a variable also fixes its rank in the monomial order: a
//! smaller index is lexicographically larger.

use std::fmt;

/// Number of variable slots in a monomial.
pub const NVARS: usize = 32;

/// Largest coordinate index supported by indexed families (`l1..l5`, ...).
pub const MAX_COORDS: usize = 5;

const L0: u8 = 0;
const S: u8 = 5;
const T0: u8 = 6;
const G: u8 = 11;
const E: u8 = 12;
const W0: u8 = 13;
const M0: u8 = 18;
const X0: u8 = 23;
const MT: u8 = 28;
const Z: u8 = 29;
const P0: u8 = 30;

/// A variable of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub(crate) u8);

/// The family a variable belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// `l_i`: classical dynamical coordinate λ_i.
    Lambda(usize),
    /// `s = q^{1/2}`.
    S,
    /// `t_i = q^{λ_i}`.
    T(usize),
    /// `g`: the deformation step γ.
    Gamma,
    /// `e`: the coupling ε.
    Eps,
    /// `w_i = e^{-ελ_i/2}`.
    W(usize),
    /// `m_i = q^{μ_i}`, the second dynamical variable of trace functions.
    M(usize),
    /// `x_i = q^{2λ_i}`, Macdonald variables.
    X(usize),
    /// `mt`: the Macdonald parameter t.
    MacT,
    /// `z`: formal series variable.
    Z,
    /// `p_i`: free parameters used by tests and perturbations.
    Param(usize),
}

fn indexed(base: u8, i: usize) -> Var {
    assert!(
        (1..=MAX_COORDS).contains(&i),
        "coordinate index {i} out of range"
    );
    Var(base + (i - 1) as u8)
}

impl Var {
    pub fn l(i: usize) -> Var {
        indexed(L0, i)
    }
    pub fn s() -> Var {
        Var(S)
    }
    pub fn t(i: usize) -> Var {
        indexed(T0, i)
    }
    pub fn g() -> Var {
        Var(G)
    }
    pub fn e() -> Var {
        Var(E)
    }
    pub fn w(i: usize) -> Var {
        indexed(W0, i)
    }
    pub fn m(i: usize) -> Var {
        indexed(M0, i)
    }
    pub fn x(i: usize) -> Var {
        indexed(X0, i)
    }
    pub fn mac_t() -> Var {
        Var(MT)
    }
    pub fn z() -> Var {
        Var(Z)
    }
    pub fn p(i: usize) -> Var {
        assert!(i == 1 || i == 2, "parameter index {i} out of range");
        Var(P0 + (i - 1) as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Var {
        assert!(i < NVARS);
        Var(i as u8)
    }

    pub fn kind(self) -> VarKind {
        let v = self.0;
        match v {
            _ if v < S => VarKind::Lambda((v - L0) as usize + 1),
            S => VarKind::S,
            _ if v < G => VarKind::T((v - T0) as usize + 1),
            G => VarKind::Gamma,
            E => VarKind::Eps,
            _ if v < M0 => VarKind::W((v - W0) as usize + 1),
            _ if v < X0 => VarKind::M((v - M0) as usize + 1),
            _ if v < MT => VarKind::X((v - X0) as usize + 1),
            MT => VarKind::MacT,
            Z => VarKind::Z,
            _ => VarKind::Param((v - P0) as usize + 1),
        }
    }

    pub fn name(self) -> String {
        match self.kind() {
            VarKind::Lambda(i) => format!("l{i}"),
            VarKind::S => "s".into(),
            VarKind::T(i) => format!("t{i}"),
            VarKind::Gamma => "g".into(),
            VarKind::Eps => "e".into(),
            VarKind::W(i) => format!("w{i}"),
            VarKind::M(i) => format!("m{i}"),
            VarKind::X(i) => format!("x{i}"),
            VarKind::MacT => "mt".into(),
            VarKind::Z => "z".into(),
            VarKind::Param(i) => format!("p{i}"),
        }
    }

    pub fn parse(name: &str) -> Option<Var> {
        match name {
            "s" => return Some(Var::s()),
            "g" => return Some(Var::g()),
            "e" => return Some(Var::e()),
            "mt" => return Some(Var::mac_t()),
            "z" => return Some(Var::z()),
            _ => {}
        }
        let (head, tail) = name.split_at(1);
        let i: usize = tail.parse().ok()?;
        if i == 0 || i > MAX_COORDS {
            return None;
        }
        match head {
            "l" => Some(Var::l(i)),
            "t" => Some(Var::t(i)),
            "w" => Some(Var::w(i)),
            "m" => Some(Var::m(i)),
            "x" => Some(Var::x(i)),
            "p" if i <= 2 => Some(Var::p(i)),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for i in 0..NVARS {
            let v = Var::from_index(i);
            assert_eq!(Var::parse(&v.name()), Some(v), "{}", v.name());
        }
    }
}
