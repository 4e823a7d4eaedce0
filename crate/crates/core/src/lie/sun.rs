//! `SU(N)` fusion via Littlewood–Richardson tableaux, and Weyl dimensions.
//!
//! Labels are Dynkin tuples `(a1,…,a_{N−1})`. The associated partition
//! `λ_i = Σ_{j≥i} a_j` is derived on demand and never stored.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::fusion::{FusionBackend, Grade};
use crate::label::Label;
use crate::rep::Rep;

/// Partition with at most `N−1` rows (trailing zeros trimmed) of a Dynkin tuple.
pub fn dynkin_to_partition(dynkin: &[u32]) -> Vec<u32> {
    let mut part: Vec<u32> = (0..dynkin.len())
        .map(|i| dynkin[i..].iter().sum())
        .collect();
    while part.last() == Some(&0) {
        part.pop();
    }
    part
}

/// Dynkin tuple of length `n − 1` of a partition with at most `n` rows.
/// Columns of height `n` disappear automatically.
pub fn partition_to_dynkin(part: &[u32], n: usize) -> Vec<u32> {
    let row = |i: usize| part.get(i).copied().unwrap_or(0);
    (0..n - 1).map(|i| row(i) - row(i + 1)).collect()
}

/// Littlewood–Richardson coefficients `c^ν_{λμ}` for every `ν` with at most
/// `max_rows` rows.
///
/// Enumerates skew tableaux of shape `ν/λ` and content `μ` as sequences of
/// horizontal strips (strip `i` holds the entries equal to `i`), keeping the
/// ones whose reverse reading word is a lattice word.
pub fn lr_coefficients(lambda: &[u32], mu: &[u32], max_rows: usize) -> BTreeMap<Vec<u32>, u64> {
    let mut out = BTreeMap::new();
    let mu: Vec<u32> = mu.iter().copied().filter(|&m| m > 0).collect();
    let lambda: Vec<u32> = lambda.iter().copied().filter(|&m| m > 0).collect();
    if lambda.len() > max_rows || mu.len() > max_rows {
        return out;
    }
    let mut history = vec![lambda];
    place_strip(&mu, max_rows, &mut history, &mut out);
    out
}

fn place_strip(
    mu: &[u32],
    max_rows: usize,
    history: &mut Vec<Vec<u32>>,
    out: &mut BTreeMap<Vec<u32>, u64>,
) {
    let value = history.len(); // entries of this strip equal `value` (1-based)
    if value > mu.len() {
        *out.entry(history.last().unwrap().clone()).or_insert(0) += 1;
        return;
    }
    let old = history.last().unwrap().clone();
    let mut adds = vec![0u32; max_rows];
    // An entry `i` of an LR tableau sits in row `i` or below.
    extend_rows(
        mu,
        max_rows,
        history,
        out,
        &old,
        &mut adds,
        value - 1,
        mu[value - 1],
    );
}

#[allow(clippy::too_many_arguments)]
fn extend_rows(
    mu: &[u32],
    max_rows: usize,
    history: &mut Vec<Vec<u32>>,
    out: &mut BTreeMap<Vec<u32>, u64>,
    old: &[u32],
    adds: &mut [u32],
    row: usize,
    remaining: u32,
) {
    if remaining == 0 {
        let len = old
            .len()
            .max(adds.iter().rposition(|&a| a > 0).map_or(0, |p| p + 1));
        let shape: Vec<u32> = (0..len)
            .map(|r| old.get(r).copied().unwrap_or(0) + adds[r])
            .collect();
        history.push(shape);
        if lattice_ok(history) {
            place_strip(mu, max_rows, history, out);
        }
        history.pop();
        return;
    }
    if row >= max_rows || row > old.len() {
        return;
    }
    let cur = old.get(row).copied().unwrap_or(0);
    let cap = if row == 0 {
        remaining
    } else {
        (old[row - 1] - cur).min(remaining)
    };
    for a in (0..=cap).rev() {
        adds[row] = a;
        extend_rows(
            mu,
            max_rows,
            history,
            out,
            old,
            adds,
            row + 1,
            remaining - a,
        );
    }
    adds[row] = 0;
}

/// Lattice condition between the last two strips: reading rows top to
/// bottom, right to left, the `i`'s of a row are read before its `i−1`'s.
fn lattice_ok(history: &[Vec<u32>]) -> bool {
    let k = history.len() - 1;
    if k < 2 {
        return true;
    }
    let row = |s: &Vec<u32>, r: usize| s.get(r).copied().unwrap_or(0);
    let (a, b, c) = (&history[k - 2], &history[k - 1], &history[k]);
    let (mut prev_cnt, mut cur_cnt) = (0u32, 0u32);
    for r in 0..c.len() {
        cur_cnt += row(c, r) - row(b, r);
        if cur_cnt > prev_cnt {
            return false;
        }
        prev_cnt += row(b, r) - row(a, r);
    }
    true
}

/// Weyl dimension `Π_{i<j} (λ_i − λ_j + j − i)/(j − i)` of the `SU(n)`
/// irreducible with Dynkin label `dynkin`, in exact rational arithmetic.
pub fn weyl_dim(dynkin: &[u32], n: usize) -> BigUint {
    assert!(
        n >= 2 && dynkin.len() == n - 1,
        "SU({n}) needs {} Dynkin entries",
        n - 1
    );
    let mut part: Vec<i64> = dynkin_to_partition(dynkin)
        .into_iter()
        .map(i64::from)
        .collect();
    part.resize(n, 0);
    let mut prod = BigRational::one();
    for i in 0..n {
        for j in i + 1..n {
            let gap = (j - i) as i64;
            prod *= BigRational::new(BigInt::from(part[i] - part[j] + gap), BigInt::from(gap));
        }
    }
    assert!(
        prod.is_integer(),
        "non-integral Weyl dimension for {dynkin:?}"
    );
    prod.to_integer()
        .abs()
        .to_biguint()
        .expect("positive dimension")
}

/// `SU(N)` for `N ≥ 2` (and its `q`-deformations).
#[derive(Clone, Debug)]
pub struct SuN {
    n: usize,
    name: String,
}

impl SuN {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "SU(N) needs N >= 2");
        SuN {
            n,
            name: format!("su{n}"),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    fn dynkin<'a>(&self, label: &'a Label) -> Option<&'a [u32]> {
        label.as_weight().filter(|w| w.len() == self.n - 1)
    }

    fn unknown(&self, label: &Label) -> Error {
        Error::UnknownLabel(label.to_string(), self.name.clone())
    }
}

/// `a ⊗ b` for `SU(n)` labels.
pub fn sun_lr_decompose(a: &[u32], b: &[u32], n: usize) -> Rep {
    let lambda = dynkin_to_partition(a);
    let mu = dynkin_to_partition(b);
    lr_coefficients(&lambda, &mu, n)
        .into_iter()
        .map(|(nu, c)| (Label::weight(partition_to_dynkin(&nu, n)), BigUint::from(c)))
        .collect()
}

impl FusionBackend for SuN {
    fn name(&self) -> &str {
        &self.name
    }

    fn unit(&self) -> Label {
        Label::weight(vec![0; self.n - 1])
    }

    fn recognizes(&self, label: &Label) -> bool {
        self.dynkin(label).is_some()
    }

    fn decompose(&self, a: &Label, b: &Label) -> Result<Rep> {
        let x = self.dynkin(a).ok_or_else(|| self.unknown(a))?;
        let y = self.dynkin(b).ok_or_else(|| self.unknown(b))?;
        Ok(sun_lr_decompose(x, y, self.n))
    }

    fn dim(&self, a: &Label) -> Result<BigUint> {
        let x = self.dynkin(a).ok_or_else(|| self.unknown(a))?;
        Ok(weyl_dim(x, self.n))
    }

    fn dual(&self, a: &Label) -> Option<Label> {
        self.dynkin(a)
            .map(|x| Label::weight(x.iter().rev().copied().collect::<Vec<_>>()))
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        match Label::parse_weight(text) {
            Some(l) if self.recognizes(&l) => Ok(l),
            _ => Err(Error::parse(
                text,
                format!(
                    "expected an {} label with {} entries",
                    self.name,
                    self.n - 1
                ),
            )),
        }
    }

    fn sample_labels(&self, count: usize) -> Vec<Label> {
        let mut out = Vec::new();
        let mut size = 0u32;
        while out.len() < count {
            for p in partitions(size, self.n - 1) {
                if out.len() == count {
                    break;
                }
                out.push(Label::weight(partition_to_dynkin(&p, self.n)));
            }
            size += 1;
        }
        out
    }

    fn grading(&self, a: &Label) -> Option<Grade> {
        self.dynkin(a).map(|x| {
            let boxes: u64 = dynkin_to_partition(x).iter().map(|&v| u64::from(v)).sum();
            Grade::new(boxes as i64, self.n as u64)
        })
    }
}

/// Partitions of `size` with at most `rows` parts, in reverse lexicographic order.
pub fn partitions(size: u32, rows: usize) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, rows: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if rows == 0 {
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            go(rem - p, p, rows - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, rows, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(w: &[u32]) -> Label {
        Label::weight(w.to_vec())
    }

    #[test]
    fn conversions() {
        assert_eq!(dynkin_to_partition(&[1, 1]), vec![2, 1]);
        assert_eq!(dynkin_to_partition(&[0, 0]), Vec::<u32>::new());
        assert_eq!(partition_to_dynkin(&[3, 2, 2], 3), vec![1, 0]);
        assert_eq!(partition_to_dynkin(&[1, 1, 1], 3), vec![0, 0]);
    }

    #[test]
    fn lr_small_cases() {
        // (1) x (1) = (2) + (1,1)
        let c = lr_coefficients(&[1], &[1], 3);
        assert_eq!(c.len(), 2);
        assert_eq!(c[&vec![2]], 1);
        assert_eq!(c[&vec![1, 1]], 1);
        // (2,1) x (2,1) contains (3,2,1) twice
        let c = lr_coefficients(&[2, 1], &[2, 1], 6);
        assert_eq!(c[&vec![3, 2, 1]], 2);
        assert_eq!(c.values().sum::<u64>(), 8);
    }

    #[test]
    fn su3_examples() {
        assert_eq!(
            sun_lr_decompose(&[1, 0], &[1, 0], 3),
            Rep::from_terms([(l(&[2, 0]), 1u32), (l(&[0, 1]), 1u32)])
        );
        assert_eq!(
            sun_lr_decompose(&[1, 0], &[0, 0], 3),
            Rep::irreducible(l(&[1, 0]))
        );
        // 8 x 8 = 1 + 8 + 8 + 10 + 10bar + 27
        let p = sun_lr_decompose(&[1, 1], &[1, 1], 3);
        assert_eq!(p.mult(&l(&[1, 1])), BigUint::from(2u32));
        assert_eq!(p.mult(&l(&[0, 0])), BigUint::one());
        assert_eq!(p.mult(&l(&[3, 0])), BigUint::one());
        assert_eq!(p.mult(&l(&[0, 3])), BigUint::one());
        assert_eq!(p.mult(&l(&[2, 2])), BigUint::one());
        assert_eq!(p.len(), 5);
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_dim(&[1, 1], 3), BigUint::from(8u32));
        assert_eq!(weyl_dim(&[3, 0], 3), BigUint::from(10u32));
        assert_eq!(weyl_dim(&[0, 0], 3), BigUint::one());
        assert_eq!(weyl_dim(&[0, 0, 0, 0], 5), BigUint::one());
        assert_eq!(weyl_dim(&[5], 2), BigUint::from(6u32));
        // SU(4) adjoint
        assert_eq!(weyl_dim(&[1, 0, 1], 4), BigUint::from(15u32));
    }

    #[test]
    fn weyl_matches_su3_closed_form() {
        for p in 0..8u32 {
            for q in 0..8u32 {
                let closed = (p + 1) * (q + 1) * (p + q + 2) / 2;
                assert_eq!(weyl_dim(&[p, q], 3), BigUint::from(closed));
            }
        }
    }

    #[test]
    fn dual_reverses() {
        let b = SuN::new(4);
        assert_eq!(b.dual(&l(&[1, 2, 0])), Some(l(&[0, 2, 1])));
    }

    #[test]
    fn sampling_starts_at_unit() {
        let b = SuN::new(3);
        let s = b.sample_labels(4);
        assert_eq!(s, vec![l(&[0, 0]), l(&[1, 0]), l(&[2, 0]), l(&[0, 1])]);
        assert_eq!(partitions(4, 2), vec![vec![4], vec![3, 1], vec![2, 2]]);
    }
}
