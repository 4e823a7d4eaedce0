use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Sparse matrix over `ℤ`. Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// From dense rows; `cols` is needed when there are no rows.
    pub fn from_dense(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_rows<const C: usize>(rows: &[[i64; C]]) -> Self {
        let dense: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_dense(C, &dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        if x.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for ((i, j), x) in &self.entries {
            d[*i][*j] = x.clone();
        }
        d
    }

    pub fn transpose(&self) -> Self {
        IntegerMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|((i, j), x)| ((*j, *i), x.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &BigInt)>> = BTreeMap::new();
        for ((k, j), x) in &other.entries {
            by_row.entry(*k).or_default().push((*j, x));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for ((i, k), x) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, y) in row {
                    *acc.entry((*i, *j)).or_default() += x * *y;
                }
            }
        }
        acc.retain(|_, x| !x.is_zero());
        IntegerMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: acc,
        }
    }

    /// `A·v`
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        let mut out = vec![BigInt::zero(); self.rows];
        for ((i, j), x) in &self.entries {
            out[*i] += x * &v[*j];
        }
        out
    }

    /// `v·A`
    pub fn vec_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "shape mismatch");
        let mut out = vec![BigInt::zero(); self.cols];
        for ((i, j), x) in &self.entries {
            out[*j] += &v[*i] * x;
        }
        out
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.cols, "shape mismatch");
        let mut m = self.clone();
        m.rows += other.rows;
        for ((i, j), x) in &other.entries {
            m.entries.insert((i + self.rows, *j), x.clone());
        }
        m
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_are_not_stored() {
        let mut m = IntegerMatrix::zeros(2, 2);
        m.set(0, 1, BigInt::from(3));
        m.set(0, 1, BigInt::zero());
        assert!(m.is_zero());
    }

    #[test]
    fn products() {
        let a = IntegerMatrix::from_rows(&[[1, 2], [3, 4]]);
        let b = IntegerMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(a.mul(&b), IntegerMatrix::from_rows(&[[2, 1], [4, 3]]));
        assert_eq!(a.transpose(), IntegerMatrix::from_rows(&[[1, 3], [2, 4]]));
        let v = [BigInt::from(1), BigInt::from(-1)];
        assert_eq!(a.mul_vec(&v), vec![BigInt::from(-1), BigInt::from(-1)]);
        assert_eq!(a.vec_mul(&v), vec![BigInt::from(-2), BigInt::from(-2)]);
        assert_eq!(a.vstack(&b).rows(), 4);
    }
}
