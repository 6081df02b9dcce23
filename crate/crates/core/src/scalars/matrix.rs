//! Dense matrices over [`Scalar`].

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn scalar_identity(n: usize, c: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn diagonal(entries: &[Scalar]) -> Matrix {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar + Sync + Send) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.par_iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar> + Sync + Send) -> Result<Matrix> {
        let data = self.data.par_iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Maps the nonzero entries with their positions; zeros stay zero.
    pub fn try_map_indexed(
        &self,
        f: impl Fn(usize, usize, &Scalar) -> Result<Scalar> + Sync + Send,
    ) -> Result<Matrix> {
        let cols = self.cols;
        let data = self
            .data
            .par_iter()
            .enumerate()
            .map(|(k, x)| {
                if x.is_zero() {
                    Ok(Scalar::zero())
                } else {
                    f(k / cols, k % cols, x)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "shape mismatch in add"
        );
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "shape mismatch in sub"
        );
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        if c.is_one() {
            return self.clone();
        }
        self.map(|x| x * c)
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| -x)
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul");
        let (n, m) = (self.rows, o.cols);
        let row = |i: usize| -> Vec<Scalar> {
            let mut acc = vec![Scalar::zero(); m];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        *slot = &*slot + &(a * b);
                    }
                }
            }
            acc
        };
        let data: Vec<Scalar> = if n * m * self.cols > 512 {
            (0..n).into_par_iter().flat_map_iter(row).collect()
        } else {
            (0..n).flat_map(row).collect()
        };
        Matrix {
            rows: n,
            cols: m,
            data,
        }
    }

    /// Kronecker product `self ⊗ o` with row index `i·o.rows + k`.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut out = Matrix::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Flip `P: V⊗W → W⊗V` for `dim V = a`, `dim W = b`.
    pub fn flip(a: usize, b: usize) -> Matrix {
        let mut p = Matrix::zeros(a * b, a * b);
        for i in 0..a {
            for j in 0..b {
                p.set(j * a + i, i * b + j, Scalar::one());
            }
        }
        p
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// Inverse; triangular inputs use substitution, others Gauss-Jordan.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Precondition("inverse of a non-square matrix".into()));
        }
        if self.is_upper_triangular() {
            return self.triangular_inverse(true);
        }
        if self.is_lower_triangular() {
            return self.triangular_inverse(false);
        }
        self.solve(&Matrix::identity(self.rows))
    }

    fn triangular_inverse(&self, upper: bool) -> Result<Matrix> {
        let n = self.rows;
        let mut inv = Matrix::zeros(n, n);
        let diag_inv: Vec<Scalar> = (0..n)
            .map(|i| self.get(i, i).inv())
            .collect::<Result<Vec<_>>>()?;
        // Column j of the inverse solves A·x = e_j.
        for j in 0..n {
            let order: Vec<usize> = if upper {
                (0..n).rev().collect()
            } else {
                (0..n).collect()
            };
            for &i in &order {
                let mut acc = if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                let range: Vec<usize> = if upper {
                    (i + 1..n).collect()
                } else {
                    (0..i).collect()
                };
                for k in range {
                    let a = self.get(i, k);
                    let x = inv.get(k, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc - a * x;
                    }
                }
                if !acc.is_zero() {
                    inv.set(i, j, acc * &diag_inv[i]);
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self · X = rhs` by Gauss-Jordan elimination.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        if !self.is_square() || rhs.rows != self.rows {
            return Err(Error::Precondition("shape mismatch in solve".into()));
        }
        let n = self.rows;
        let w = n + rhs.cols;
        let mut a: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(rhs.row(i));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .filter(|&r| !a[r][col].is_zero())
                .min_by_key(|&r| complexity(&a[r][col]))
                .ok_or_else(|| Error::Precondition("singular matrix".into()))?;
            a.swap(col, piv);
            let pinv = a[col][col].inv()?;
            let prow: Vec<Scalar> = a[col].iter().map(|x| x * &pinv).collect();
            a[col] = prow.clone();
            a.par_iter_mut().enumerate().for_each(|(r, row)| {
                if r == col || row[col].is_zero() {
                    return;
                }
                let f = row[col].clone();
                for k in col..w {
                    if !prow[k].is_zero() {
                        row[k] = &row[k] - &(&f * &prow[k]);
                    }
                }
            });
        }
        let data = a.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Ok(Matrix {
            rows: n,
            cols: rhs.cols,
            data,
        })
    }

    /// Basis of the right kernel as columns of a matrix. Each basis vector
    /// has a 1 at its free coordinate and 0 at the other free coordinates;
    /// the free coordinates are returned alongside.
    pub fn nullspace(&self) -> (Matrix, Vec<usize>) {
        let (n, m) = (self.rows, self.cols);
        let mut a: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0;
        for col in 0..m {
            if r == n {
                break;
            }
            let Some(piv) = (r..n)
                .filter(|&i| !a[i][col].is_zero())
                .min_by_key(|&i| complexity(&a[i][col]))
            else {
                continue;
            };
            a.swap(r, piv);
            let pinv = a[r][col].inv().expect("pivot is nonzero");
            let prow: Vec<Scalar> = a[r].iter().map(|x| x * &pinv).collect();
            a[r] = prow.clone();
            a.par_iter_mut().enumerate().for_each(|(i, row)| {
                if i == r || row[col].is_zero() {
                    return;
                }
                let f = row[col].clone();
                for k in col..m {
                    if !prow[k].is_zero() {
                        row[k] = &row[k] - &(&f * &prow[k]);
                    }
                }
            });
            pivots.push(col);
            r += 1;
        }
        let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
        let mut ker = Matrix::zeros(m, free.len());
        for (k, &fc) in free.iter().enumerate() {
            ker.set(fc, k, Scalar::one());
            for (pi, &pc) in pivots.iter().enumerate() {
                let x = &a[pi][fc];
                if !x.is_zero() {
                    ker.set(pc, k, -x);
                }
            }
        }
        (ker, free)
    }

    /// Submatrix with the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Vertical concatenation.
    pub fn stack(blocks: &[Matrix]) -> Matrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "shape mismatch in stack");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Matrix { rows, cols, data }
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in apply");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Entrywise text, row-major.
    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::to_text).collect())
            .collect()
    }

    /// Nonzero entries as canonical text keyed by `"i,j"`.
    pub fn to_text_map(&self) -> serde_json::Map<String, serde_json::Value> {
        let mut out = serde_json::Map::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    out.insert(format!("{i},{j}"), x.to_text().into());
                }
            }
        }
        out
    }

    /// Inverse of [`Matrix::to_text_map`]; absent entries are zero.
    pub fn from_text_map(
        rows: usize,
        cols: usize,
        map: &serde_json::Map<String, serde_json::Value>,
    ) -> Result<Matrix> {
        let mut m = Matrix::zeros(rows, cols);
        for (key, value) in map {
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| {
                    Some((
                        a.trim().parse::<usize>().ok()?,
                        b.trim().parse::<usize>().ok()?,
                    ))
                })
                .ok_or_else(|| Error::Parse(format!("bad entry index {key:?}")))?;
            if i >= rows || j >= cols {
                return Err(Error::Parse(format!(
                    "entry {key:?} is outside a {rows}x{cols} matrix"
                )));
            }
            let text = value
                .as_str()
                .ok_or_else(|| Error::Parse(format!("entry {key:?} is not a string")))?;
            m.set(i, j, super::parse_scalar(text)?);
        }
        Ok(m)
    }
}

fn complexity(x: &Scalar) -> usize {
    x.numer().len() + x.denom().len()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(Scalar::to_text).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::sc;

    fn m(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| sc(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn inverse_of_generic_matrix() {
        let a = m(&[&["l1", "1"], &["1", "l2"]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
    }

    #[test]
    fn inverse_of_unipotent_matrix() {
        let a = m(&[&["1", "l1", "s"], &["0", "1", "t1"], &["0", "0", "1"]]);
        let inv = a.inverse().unwrap();
        assert!(inv.mul(&a).is_identity());
    }

    #[test]
    fn flip_swaps_factors() {
        let a = m(&[&["1", "2"], &["3", "4"]]);
        let b = m(&[&["l1", "0", "1"], &["0", "1", "0"], &["1", "1", "1"]]);
        let p = Matrix::flip(2, 3);
        let q = Matrix::flip(3, 2);
        assert_eq!(p.mul(&a.kron(&b)).mul(&q), b.kron(&a));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&["1", "-1", "0"], &["0", "l1", "-l1"]]);
        let (k, free) = a.nullspace();
        assert_eq!(free, vec![2]);
        assert!(a.mul(&k).is_zero());
        assert_eq!(k.get(0, 0), &Scalar::one());
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = m(&[&["l1", "l1"], &["1", "1"]]);
        assert!(a.inverse().is_err());
    }
}
