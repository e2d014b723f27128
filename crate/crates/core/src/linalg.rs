//! Dense linear algebra over a finite field: row reduction, kernels and
//! subspace intersection.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::Gf;

#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Arc<Gf>,
    cols: usize,
    rows: Vec<Vec<u16>>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FqMatrix {}x{} over F_{}", self.rows.len(), self.cols, self.field.order())?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

impl FqMatrix {
    pub fn new(field: &Arc<Gf>, cols: usize, rows: Vec<Vec<u16>>) -> Result<Self> {
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "row {bad} has length {} but the matrix has {cols} columns",
                rows[bad].len()
            )));
        }
        if rows.iter().flatten().any(|&v| !field.contains(v)) {
            return Err(Error::ElementOutOfRange {
                value: *rows.iter().flatten().find(|&&v| !field.contains(v)).unwrap() as u32,
                order: field.order(),
            });
        }
        Ok(FqMatrix {
            field: field.clone(),
            cols,
            rows,
        })
    }

    pub fn empty(field: &Arc<Gf>, cols: usize) -> Self {
        FqMatrix {
            field: field.clone(),
            cols,
            rows: Vec::new(),
        }
    }

    pub fn identity(field: &Arc<Gf>, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        FqMatrix {
            field: field.clone(),
            cols: n,
            rows,
        }
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u16>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<u16>> {
        self.rows
    }

    pub fn push_row(&mut self, row: Vec<u16>) {
        assert_eq!(row.len(), self.cols, "row length");
        self.rows.push(row);
    }

    fn check_shape(&self, other: &FqMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ShapeMismatch("matrices over different fields".into()));
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{} vs {} columns",
                self.cols, other.cols
            )));
        }
        Ok(())
    }

    /// Reduced row echelon form with pivots searched in the given column
    /// order. Returns the reduced matrix (same row count, zero rows last)
    /// and the pivot columns.
    pub fn rref_with_order(&self, order: &[usize]) -> (FqMatrix, Vec<usize>) {
        let f = &*self.field;
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for &c in order {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, p);
            let inv = f.inv(m[r][c]).unwrap();
            if inv != 1 {
                for v in m[r].iter_mut() {
                    *v = f.mul(*v, inv);
                }
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c] == 0 {
                    continue;
                }
                let factor = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    if pv != 0 {
                        *v = f.sub(*v, f.mul(factor, pv));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (
            FqMatrix {
                field: self.field.clone(),
                cols: self.cols,
                rows: m,
            },
            pivots,
        )
    }

    pub fn rref(&self) -> (FqMatrix, usize) {
        let order: Vec<usize> = (0..self.cols).collect();
        let (r, pivots) = self.rref_with_order(&order);
        (r, pivots.len())
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Nonzero rows of the RREF: the canonical basis of the row space.
    pub fn basis(&self) -> FqMatrix {
        let (mut r, rank) = self.rref();
        r.rows.truncate(rank);
        r
    }

    /// Basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> FqMatrix {
        let f = &*self.field;
        let (r, rank) = self.rref();
        let mut pivot_of_col = vec![None; self.cols];
        for (i, row) in r.rows.iter().take(rank).enumerate() {
            let c = row.iter().position(|&v| v != 0).unwrap();
            pivot_of_col[c] = Some(i);
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| pivot_of_col[c].is_none()) {
            let mut v = vec![0u16; self.cols];
            v[free] = 1;
            for (c, p) in pivot_of_col.iter().enumerate() {
                if let Some(i) = p {
                    v[c] = f.neg(r.rows[*i][free]);
                }
            }
            out.push(v);
        }
        FqMatrix {
            field: self.field.clone(),
            cols: self.cols,
            rows: out,
        }
    }

    pub fn rowspace_equal(&self, other: &FqMatrix) -> Result<bool> {
        self.check_shape(other)?;
        Ok(self.basis().rows == other.basis().rows)
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[u16]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        let mut stacked = self.basis();
        let rank = stacked.nrows();
        stacked.rows.push(v.to_vec());
        stacked.rank() == rank
    }

    /// Whether the row space of `other` is contained in that of `self`.
    pub fn contains_space(&self, other: &FqMatrix) -> Result<bool> {
        self.check_shape(other)?;
        let rank = self.rank();
        Ok(self.stack(other)?.rank() == rank)
    }

    pub fn stack(&self, other: &FqMatrix) -> Result<FqMatrix> {
        self.check_shape(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(FqMatrix {
            field: self.field.clone(),
            cols: self.cols,
            rows,
        })
    }

    /// Basis of `rowspace(self) ∩ rowspace(other)` (Zassenhaus).
    pub fn intersect(&self, other: &FqMatrix) -> Result<FqMatrix> {
        self.check_shape(other)?;
        let n = self.cols;
        let mut rows = Vec::with_capacity(self.rows.len() + other.rows.len());
        for r in &self.rows {
            let mut v = r.clone();
            v.extend_from_slice(r);
            rows.push(v);
        }
        for r in &other.rows {
            let mut v = r.clone();
            v.extend(std::iter::repeat_n(0, n));
            rows.push(v);
        }
        let big = FqMatrix {
            field: self.field.clone(),
            cols: 2 * n,
            rows,
        };
        let (r, rank) = big.rref();
        let inter = r.rows[..rank]
            .iter()
            .filter(|row| row[..n].iter().all(|&v| v == 0))
            .map(|row| row[n..].to_vec())
            .collect();
        Ok(FqMatrix {
            field: self.field.clone(),
            cols: n,
            rows: inter,
        })
    }

    pub fn transpose(&self) -> FqMatrix {
        let rows = (0..self.cols)
            .map(|c| self.rows.iter().map(|r| r[c]).collect())
            .collect();
        FqMatrix {
            field: self.field.clone(),
            cols: self.rows.len(),
            rows,
        }
    }

    pub fn mul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.rows.len() || self.field != other.field {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows.len(),
                self.cols,
                other.rows.len(),
                other.cols
            )));
        }
        let f = &*self.field;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.cols)
                    .map(|j| {
                        r.iter()
                            .zip(&other.rows)
                            .fold(0, |acc, (&a, b)| f.add(acc, f.mul(a, b[j])))
                    })
                    .collect()
            })
            .collect();
        Ok(FqMatrix {
            field: self.field.clone(),
            cols: other.cols,
            rows,
        })
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> FqMatrix {
        FqMatrix {
            field: self.field.clone(),
            cols: cols.len(),
            rows: self
                .rows
                .iter()
                .map(|r| cols.iter().map(|&c| r[c]).collect())
                .collect(),
        }
    }

    /// Applies a linear map to every row.
    pub fn map_rows(&self, cols: usize, f: impl Fn(&[u16]) -> Vec<u16>) -> FqMatrix {
        FqMatrix {
            field: self.field.clone(),
            cols,
            rows: self.rows.iter().map(|r| f(r)).collect(),
        }
    }
}

/// Standard dot product.
pub fn dot(f: &Gf, a: &[u16], b: &[u16]) -> u16 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// `a + c·b`.
pub fn axpy(f: &Gf, a: &mut [u16], c: u16, b: &[u16]) {
    if c == 0 {
        return;
    }
    for (x, &y) in a.iter_mut().zip(b) {
        *x = f.add(*x, f.mul(c, y));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldTower;
    use std::collections::BTreeSet;

    fn f3() -> Arc<Gf> {
        FieldTower::with_defaults(3).unwrap().base().clone()
    }

    fn span(m: &FqMatrix) -> BTreeSet<Vec<u16>> {
        let f = m.field().clone();
        let q = f.order();
        let k = m.nrows();
        let mut out = BTreeSet::new();
        for idx in 0..q.pow(k as u32) {
            let mut v = vec![0u16; m.cols()];
            let mut t = idx;
            for r in m.rows() {
                axpy(&f, &mut v, (t % q) as u16, r);
                t /= q;
            }
            out.insert(v);
        }
        out
    }

    #[test]
    fn rref_examples() {
        let f = f3();
        let id = FqMatrix::identity(&f, 4);
        assert_eq!(id.rref(), (id.clone(), 4));
        let m = FqMatrix::new(&f, 4, vec![vec![1, 1, 1, 0], vec![1, 2, 0, 1], vec![1, 2, 0, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        let z = FqMatrix::new(&f, 3, vec![vec![0; 3]; 2]).unwrap();
        assert_eq!(z.rank(), 0);
        assert!(FqMatrix::new(&f, 3, vec![vec![0; 2]]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let f = f3();
        assert_eq!(FqMatrix::identity(&f, 3).kernel().nrows(), 0);
        let z = FqMatrix::new(&f, 5, vec![vec![0; 5]]).unwrap();
        assert_eq!(z.kernel().nrows(), 5);
        let ones = FqMatrix::new(&f, 3, vec![vec![1, 1, 1]]).unwrap();
        let k = ones.kernel();
        assert_eq!(k.nrows(), 2);
        for r in k.rows() {
            assert_eq!(r.iter().map(|&x| x as u32).sum::<u32>() % 3, 0);
        }
        // brute force: 9 of the 27 vectors sum to zero
        let brute: BTreeSet<Vec<u16>> = (0..27u16)
            .map(|i| vec![i % 3, (i / 3) % 3, i / 9])
            .filter(|v| v.iter().sum::<u16>() % 3 == 0)
            .collect();
        assert_eq!(span(&k), brute);
    }

    #[test]
    fn rowspace_equal_examples() {
        let f = f3();
        let a = FqMatrix::new(&f, 3, vec![vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let b = FqMatrix::new(&f, 3, vec![vec![0, 1, 1], vec![1, 2, 0]]).unwrap();
        assert!(a.rowspace_equal(&b).unwrap());
        let c = FqMatrix::new(&f, 3, vec![vec![2, 1, 0], vec![0, 1, 1]]).unwrap();
        assert!(a.rowspace_equal(&c).unwrap());
        let e1 = FqMatrix::new(&f, 2, vec![vec![1, 0]]).unwrap();
        let e2 = FqMatrix::new(&f, 2, vec![vec![0, 1]]).unwrap();
        assert!(!e1.rowspace_equal(&e2).unwrap());
        assert!(a.rowspace_equal(&e1).is_err());
    }

    #[test]
    fn intersect_examples() {
        let f = f3();
        let a = FqMatrix::new(&f, 3, vec![vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        assert!(a.intersect(&a).unwrap().rowspace_equal(&a).unwrap());
        let e1 = FqMatrix::new(&f, 2, vec![vec![1, 0]]).unwrap();
        let e2 = FqMatrix::new(&f, 2, vec![vec![0, 1]]).unwrap();
        assert_eq!(e1.intersect(&e2).unwrap().rank(), 0);
    }
}
