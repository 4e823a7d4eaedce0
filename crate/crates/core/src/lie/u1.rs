use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fusion::{FusionBackend, Grade};
use crate::label::Label;
use crate::rep::Rep;

/// `U(1)`: one-dimensional characters `z ↦ zⁿ`, fusing by addition.
#[derive(Clone, Copy, Debug, Default)]
pub struct U1;

impl U1 {
    fn charge(label: &Label) -> Result<i64> {
        label
            .as_int()
            .ok_or_else(|| Error::UnknownLabel(label.to_string(), "u1".into()))
    }
}

impl FusionBackend for U1 {
    fn name(&self) -> &str {
        "u1"
    }

    fn unit(&self) -> Label {
        Label::Int(0)
    }

    fn recognizes(&self, label: &Label) -> bool {
        label.as_int().is_some()
    }

    fn decompose(&self, a: &Label, b: &Label) -> Result<Rep> {
        let sum = Self::charge(a)?
            .checked_add(Self::charge(b)?)
            .ok_or_else(|| Error::InvalidArgument(format!("charge overflow in {a} ⊗ {b}")))?;
        Ok(Rep::irreducible(Label::Int(sum)))
    }

    fn dim(&self, a: &Label) -> Result<BigUint> {
        Self::charge(a).map(|_| BigUint::one())
    }

    fn dual(&self, a: &Label) -> Option<Label> {
        a.as_int().map(|n| Label::Int(-n))
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        let t = text.trim();
        t.strip_prefix('+')
            .unwrap_or(t)
            .parse::<i64>()
            .map(Label::Int)
            .map_err(|_| Error::parse(text, "expected an integer charge"))
    }

    /// `0, 1, −1, 2, −2, …`
    fn sample_labels(&self, count: usize) -> Vec<Label> {
        (0..count as i64)
            .map(|i| Label::Int(if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) }))
            .collect()
    }

    fn grading(&self, a: &Label) -> Option<Grade> {
        a.as_int().map(|n| Grade::new(n, 0))
    }
}
