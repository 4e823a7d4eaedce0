//! Finitely supported multiplicity maps: `⊕ d_t (t)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::label::Label;

/// A representation written as a formal sum of irreducibles with
/// non-negative multiplicities. Zero multiplicities are never stored, and
/// iteration follows the canonical label order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rep {
    mult: BTreeMap<Label, BigUint>,
}

impl Rep {
    pub fn new() -> Self {
        Self::default()
    }

    /// `1·label`
    pub fn irreducible(label: Label) -> Self {
        Self::with_mult(label, BigUint::one())
    }

    pub fn with_mult(label: Label, mult: impl Into<BigUint>) -> Self {
        let mut r = Self::new();
        r.add_term(label, mult.into());
        r
    }

    pub fn from_terms<I, M>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Label, M)>,
        M: Into<BigUint>,
    {
        let mut r = Self::new();
        for (l, m) in terms {
            r.add_term(l, m.into());
        }
        r
    }

    pub fn add_term(&mut self, label: Label, mult: BigUint) {
        if mult.is_zero() {
            return;
        }
        *self.mult.entry(label).or_default() += mult;
    }

    /// Adds `factor · other` into `self`.
    pub fn add_scaled(&mut self, other: &Rep, factor: &BigUint) {
        if factor.is_zero() {
            return;
        }
        for (l, m) in &other.mult {
            *self.mult.entry(l.clone()).or_default() += m * factor;
        }
    }

    pub fn add(&mut self, other: &Rep) {
        self.add_scaled(other, &BigUint::one());
    }

    pub fn scaled(&self, factor: &BigUint) -> Rep {
        let mut r = Rep::new();
        r.add_scaled(self, factor);
        r
    }

    /// Multiplicity of `label`; zero when absent.
    pub fn mult(&self, label: &Label) -> BigUint {
        self.mult.get(label).cloned().unwrap_or_default()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.mult.contains_key(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &BigUint)> {
        self.mult.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Label> {
        self.mult.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Number of distinct irreducibles.
    pub fn len(&self) -> usize {
        self.mult.len()
    }

    /// Number of irreducible summands counted with multiplicity.
    pub fn total_multiplicity(&self) -> BigUint {
        self.mult.values().sum()
    }

    /// `self ≤ other` as representations: every multiplicity is dominated.
    pub fn is_contained_in(&self, other: &Rep) -> bool {
        self.mult
            .iter()
            .all(|(l, m)| other.mult.get(l).is_some_and(|n| m <= n))
    }
}

impl fmt::Display for Rep {
    /// Additive notation `(0) + 3.(2)`, accepted back by the CLI parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, m)) in self.mult.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "{m}.{l}")?;
            }
        }
        Ok(())
    }
}

impl FromIterator<(Label, BigUint)> for Rep {
    fn from_iter<T: IntoIterator<Item = (Label, BigUint)>>(iter: T) -> Self {
        Rep::from_terms(iter)
    }
}
