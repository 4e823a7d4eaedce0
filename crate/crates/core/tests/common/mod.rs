#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use fusionk::bratteli::BratteliDiagram;
use fusionk::IntegerMatrix;

/// Fraction-free Gaussian elimination.
pub fn bareiss_det(m: &IntegerMatrix) -> BigInt {
    let n = m.rows();
    assert_eq!(n, m.cols());
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_dense();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn catalan(n: u64) -> BigUint {
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * (2 * (2 * k + 1)) / (k + 2);
    }
    c
}

/// Number of standard Young tableaux by the hook length formula.
pub fn syt_count(part: &[u32]) -> BigUint {
    let n: u32 = part.iter().sum();
    let mut num = BigUint::one();
    for k in 1..=n {
        num *= k;
    }
    let mut den = BigUint::one();
    for (i, &row) in part.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = part[i + 1..].iter().filter(|&&r| r > j).count() as u32;
            den *= arm + leg + 1;
        }
    }
    num / den
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// `d_t(ℓ+1) = Σ_s d_s(ℓ)·e_ℓ[s][t]` at every node.
pub fn flow_conserved(d: &BratteliDiagram) -> bool {
    (0..d.max_level()).all(|l| {
        d.levels[l + 1].iter().all(|(t, m)| {
            let inflow: BigUint = d.levels[l]
                .iter()
                .map(|(s, ds)| {
                    ds * d.edges[l]
                        .get(&(s.clone(), t.clone()))
                        .cloned()
                        .unwrap_or_default()
                })
                .sum();
            &inflow == m
        })
    })
}
