use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fusion::{FusionBackend, Grade};
use crate::label::Label;
use crate::rep::Rep;

pub const EPSILON: &str = "ε";

/// The trivial group: a single label `ε`. Paired with `α = d·ε` this
/// describes the Cuntz algebra `𝒪_d` itself.
#[derive(Clone, Debug)]
pub struct Trivial {
    d: u32,
    name: String,
}

impl Trivial {
    pub fn new(d: u32) -> Self {
        Trivial {
            d,
            name: format!("trivial:{d}"),
        }
    }

    fn is_eps(label: &Label) -> bool {
        matches!(label, Label::Name(s) if s == EPSILON)
    }
}

impl FusionBackend for Trivial {
    fn name(&self) -> &str {
        &self.name
    }

    fn unit(&self) -> Label {
        Label::name(EPSILON)
    }

    fn recognizes(&self, label: &Label) -> bool {
        Self::is_eps(label)
    }

    fn decompose(&self, _a: &Label, _b: &Label) -> Result<Rep> {
        Ok(Rep::irreducible(self.unit()))
    }

    fn dim(&self, _a: &Label) -> Result<BigUint> {
        Ok(BigUint::one())
    }

    fn dual(&self, a: &Label) -> Option<Label> {
        Some(a.clone())
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        match text.trim() {
            EPSILON | "e" | "eps" => Ok(self.unit()),
            _ => Err(Error::parse(text, "the trivial backend only knows `ε`")),
        }
    }

    fn sample_labels(&self, count: usize) -> Vec<Label> {
        vec![self.unit()].into_iter().take(count).collect()
    }

    fn grading(&self, _a: &Label) -> Option<Grade> {
        Some(Grade::new(0, 1))
    }

    fn default_alpha(&self) -> Option<Rep> {
        Some(Rep::with_mult(self.unit(), self.d))
    }
}
