//! Coordinate systems for the dynamical variable.
//!
//! A system is a list of pairs `(ω_c, H_c)` with `ω_c ∈ h*`, `H_c ∈ h`
//! (both diagonal, in ε-coordinates) and `ω_c(H_d) = δ_cd`. The symbolic
//! weight is `λ = Σ_c l_c ω_c`, so `l_c = λ(H_c)`.

use num::{BigInt, BigRational, One, Zero};

use super::{dot, rat};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coords {
    n: usize,
    omegas: Vec<Vec<BigRational>>,
    hs: Vec<Vec<BigRational>>,
}

fn unit(n: usize, a: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[a] = BigRational::one();
    v
}

impl Coords {
    /// `ω_a = ε_a`, `H_a = E_aa`.
    pub fn gl(n: usize) -> Coords {
        Coords {
            n,
            omegas: (0..n).map(|a| unit(n, a)).collect(),
            hs: (0..n).map(|a| unit(n, a)).collect(),
        }
    }

    /// The single coordinate `λ(h)` of sl_2.
    pub fn sl2() -> Coords {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        Coords {
            n: 2,
            omegas: vec![vec![half.clone(), -half]],
            hs: vec![vec![rat(1), rat(-1)]],
        }
    }

    /// Coordinates on the subspace spanned by `basis` (integer vectors in h).
    pub fn subspace(n: usize, basis: &[Vec<i64>]) -> Result<Coords> {
        let ys: Vec<Vec<BigRational>> = basis
            .iter()
            .map(|b| b.iter().map(|&x| rat(x)).collect())
            .collect();
        if ys.iter().any(|y| y.len() != n) {
            return Err(Error::Precondition(
                "subspace vector has the wrong length".into(),
            ));
        }
        let k = ys.len();
        if k == 0 || k > crate::scalars::MAX_COORDS {
            return Err(Error::Precondition(format!(
                "unsupported subspace dimension {k}"
            )));
        }
        let g: Vec<Vec<BigRational>> = ys
            .iter()
            .map(|a| ys.iter().map(|b| dot(a, b)).collect())
            .collect();
        let ginv = invert(g)
            .ok_or_else(|| Error::Precondition("subspace basis is linearly dependent".into()))?;
        let hs = (0..k)
            .map(|c| {
                (0..n)
                    .map(|i| (0..k).map(|d| &ginv[c][d] * &ys[d][i]).sum())
                    .collect()
            })
            .collect();
        Ok(Coords { n, omegas: ys, hs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn omegas(&self) -> &[Vec<BigRational>] {
        &self.omegas
    }

    pub fn hs(&self) -> &[Vec<BigRational>] {
        &self.hs
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = |v: &Vec<Vec<BigRational>>| -> Vec<Vec<String>> {
            v.iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect()
        };
        serde_json::json!({ "omega": f(&self.omegas), "h": f(&self.hs) })
    }
}

/// Inverse of a small rational matrix by Gauss-Jordan elimination.
pub(crate) fn invert(mut a: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let k = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..k).map(|i| unit(k, i)).collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..k {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..k {
                    let x = &f * &a[col][j];
                    a[r][j] -= x;
                    let y = &f * &inv[col][j];
                    inv[r][j] -= y;
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_dual(c: &Coords) {
        for (i, w) in c.omegas().iter().enumerate() {
            for (j, h) in c.hs().iter().enumerate() {
                let expect = if i == j { rat(1) } else { rat(0) };
                assert_eq!(dot(w, h), expect);
            }
        }
    }

    #[test]
    fn coordinate_systems_are_dual() {
        check_dual(&Coords::gl(3));
        check_dual(&Coords::sl2());
        check_dual(&Coords::subspace(3, &[vec![1, 1, 1], vec![1, 0, -1]]).unwrap());
    }

    #[test]
    fn dependent_subspace_is_rejected() {
        assert!(Coords::subspace(3, &[vec![1, 1, 1], vec![2, 2, 2]]).is_err());
    }
}
