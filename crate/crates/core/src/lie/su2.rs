use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::fusion::{FusionBackend, Grade};
use crate::label::Label;
use crate::rep::Rep;

/// `SU(2)` (and every `SU_q(2)`): labels `(n)` for the `n+1`-dimensional
/// irreducible, products by the Clebsch–Gordan rule.
#[derive(Clone, Copy, Debug, Default)]
pub struct Su2;

fn spin(label: &Label) -> Option<u32> {
    match label.as_weight() {
        Some([n]) => Some(*n),
        _ => None,
    }
}

/// `(k) ⊗ (l) = (|k−l|) ⊕ (|k−l|+2) ⊕ … ⊕ (k+l)`
pub fn su2_decompose(k: u32, l: u32) -> Rep {
    let lo = k.abs_diff(l);
    Rep::from_terms((lo..=k + l).step_by(2).map(|n| (Label::weight([n]), 1u32)))
}

impl FusionBackend for Su2 {
    fn name(&self) -> &str {
        "su2"
    }

    fn unit(&self) -> Label {
        Label::weight([0])
    }

    fn recognizes(&self, label: &Label) -> bool {
        spin(label).is_some()
    }

    fn decompose(&self, a: &Label, b: &Label) -> Result<Rep> {
        match (spin(a), spin(b)) {
            (Some(k), Some(l)) => Ok(su2_decompose(k, l)),
            _ => Err(Error::UnknownLabel(format!("{a} ⊗ {b}"), "su2".into())),
        }
    }

    fn dim(&self, a: &Label) -> Result<BigUint> {
        spin(a)
            .map(|n| BigUint::from(n) + 1u32)
            .ok_or_else(|| Error::UnknownLabel(a.to_string(), "su2".into()))
    }

    fn dual(&self, a: &Label) -> Option<Label> {
        spin(a).map(|_| a.clone())
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        match Label::parse_weight(text) {
            Some(l) if spin(&l).is_some() => Ok(l),
            _ => Err(Error::parse(text, "expected an su2 label `(n)`")),
        }
    }

    fn sample_labels(&self, count: usize) -> Vec<Label> {
        (0..count as u32).map(|n| Label::weight([n])).collect()
    }

    fn grading(&self, a: &Label) -> Option<Grade> {
        spin(a).map(|n| Grade::new(n as i64, 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: u32) -> Label {
        Label::weight([n])
    }

    #[test]
    fn cg_examples() {
        assert_eq!(
            su2_decompose(2, 3),
            Rep::from_terms([(w(1), 1u32), (w(3), 1u32), (w(5), 1u32)])
        );
        assert_eq!(
            su2_decompose(1, 1),
            Rep::from_terms([(w(0), 1u32), (w(2), 1u32)])
        );
        for k in 0..8 {
            assert_eq!(su2_decompose(k, 0), Rep::irreducible(w(k)));
        }
    }

    #[test]
    fn cg_is_commutative() {
        for k in 0..10 {
            for l in 0..10 {
                assert_eq!(su2_decompose(k, l), su2_decompose(l, k));
            }
        }
    }

    #[test]
    fn parity_grading_is_additive() {
        let b = Su2;
        for k in 0..7 {
            for l in 0..7 {
                let g = (k + l) % 2;
                for (c, _) in su2_decompose(k, l).iter() {
                    assert_eq!(b.grading(c).unwrap().value, g as i64);
                }
            }
        }
    }

    #[test]
    fn rejects_foreign_labels() {
        assert!(Su2.parse_label("(1,0)").is_err());
        assert!(Su2.parse_label("3").is_err());
        assert!(!Su2.recognizes(&Label::Int(1)));
    }
}
