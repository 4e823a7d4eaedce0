use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d₁ | d₂ | … | d_r`, `dᵢ > 0`. `v_inv` is `V⁻¹`, kept for lifting
/// cokernel coordinates back to generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SNFResult {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SNFResult {
    /// The non-zero invariant factors.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    vi: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect()
}

impl Work {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap(i, k);
        self.u.swap(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(j, k);
        }
        self.vi.swap(j, k);
    }

    /// row_i -= q·row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[k].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x -= q * y;
            }
        }
    }

    /// col_j -= q·col_k, and the inverse operation on `V⁻¹`.
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let y = row[k].clone();
            row[j] -= q * y;
        }
        let src = self.vi[j].clone();
        for (x, y) in self.vi[k].iter_mut().zip(&src) {
            *x += q * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
    }

    fn min_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in self.a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(input: &IntegerMatrix) -> SNFResult {
    let (m, n) = (input.rows(), input.cols());
    let mut w = Work {
        a: input.to_dense(),
        u: identity(m),
        v: identity(n),
        vi: identity(n),
    };
    for t in 0..m.min(n) {
        let Some((pi, pj)) = w.min_nonzero(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&p);
                    w.row_sub(i, t, &q);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&p);
                    w.col_sub(j, t, &q);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if !clean {
                // a remainder smaller than the pivot is left in row or column t
                let mut best = (t, t);
                for i in t + 1..m {
                    if !w.a[i][t].is_zero() && w.a[i][t].abs() < w.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !w.a[t][j].is_zero() && w.a[t][j].abs() < w.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    w.row_sub(t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    SNFResult {
        u: IntegerMatrix::from_dense(m, &w.u),
        d: IntegerMatrix::from_dense(n, &w.a),
        v: IntegerMatrix::from_dense(n, &w.v),
        v_inv: IntegerMatrix::from_dense(n, &w.vi),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntegerMatrix) -> SNFResult {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(a.cols()));
        s
    }

    #[test]
    fn examples() {
        let s = check(&IntegerMatrix::identity(3));
        assert_eq!(s.d, IntegerMatrix::identity(3));
        let s = check(&IntegerMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        let s = check(&IntegerMatrix::zeros(2, 3));
        assert_eq!(s.rank(), 0);
        assert!(s.d.is_zero());
    }

    #[test]
    fn divisibility_needs_mixing() {
        let s = check(&IntegerMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
        let s = check(&IntegerMatrix::from_rows(&[[-4, 6, 0], [10, -3, 7]]));
        assert_eq!(s.rank(), 2);
    }
}
