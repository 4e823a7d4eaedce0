//! The fusion-backend interface and the exact tensor calculus built on it.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::rep::Rep;

/// A `ℤ` or `ℤ/m` valued grading of labels that is additive under fusion.
/// `modulus == 0` means the grading takes values in `ℤ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grade {
    pub value: i64,
    pub modulus: u64,
}

impl Grade {
    pub fn new(value: i64, modulus: u64) -> Self {
        let value = if modulus == 0 {
            value
        } else {
            value.rem_euclid(modulus as i64)
        };
        Grade { value, modulus }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

/// Fusion rules of a compact quantum group: a unit, a rule decomposing the
/// product of two irreducibles, dimensions and (optionally) duals.
///
/// Label universes may be infinite; every consumer works on an explicitly
/// budgeted finite window. Commutativity of `decompose` is never assumed.
pub trait FusionBackend: Send + Sync {
    fn name(&self) -> &str;

    /// The trivial representation `ε`.
    fn unit(&self) -> Label;

    fn recognizes(&self, label: &Label) -> bool;

    /// `a ⊗ b` as a sum of irreducibles. Callers have checked both labels
    /// with [`FusionBackend::recognizes`].
    fn decompose(&self, a: &Label, b: &Label) -> Result<Rep>;

    fn dim(&self, a: &Label) -> Result<BigUint>;

    fn dual(&self, _a: &Label) -> Option<Label> {
        None
    }

    fn parse_label(&self, text: &str) -> Result<Label>;

    /// The first `count` labels in a backend-specific enumeration starting
    /// at the unit. Used by validation and isomorphism checks.
    fn sample_labels(&self, count: usize) -> Vec<Label>;

    /// A grading compatible with fusion, when the backend knows one.
    fn grading(&self, _a: &Label) -> Option<Grade> {
        None
    }

    /// Representation used when the caller does not supply one.
    fn default_alpha(&self) -> Option<Rep> {
        None
    }
}

/// A backend together with a memo of pair products.
///
/// The memo is invisible to results: `decompose` is pure, so concurrent
/// fills of the same key write identical values.
pub struct Fusion {
    backend: Arc<dyn FusionBackend>,
    cache: RwLock<HashMap<(Label, Label), Arc<Rep>>>,
}

impl fmt::Debug for Fusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fusion")
            .field("backend", &self.backend.name())
            .finish()
    }
}

impl Fusion {
    pub fn new(backend: impl FusionBackend + 'static) -> Self {
        Self::from_arc(Arc::new(backend))
    }

    pub fn from_arc(backend: Arc<dyn FusionBackend>) -> Self {
        Fusion {
            backend,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn backend(&self) -> &dyn FusionBackend {
        self.backend.as_ref()
    }

    pub fn name(&self) -> &str {
        self.backend.name()
    }

    pub fn unit(&self) -> Label {
        self.backend.unit()
    }

    fn check(&self, label: &Label) -> Result<()> {
        if self.backend.recognizes(label) {
            Ok(())
        } else {
            Err(Error::UnknownLabel(
                label.to_string(),
                self.name().to_string(),
            ))
        }
    }

    fn decompose_shared(&self, a: &Label, b: &Label) -> Result<Arc<Rep>> {
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.cache.read().expect("fusion cache poisoned").get(&key) {
            return Ok(Arc::clone(hit));
        }
        self.check(a)?;
        self.check(b)?;
        let rep = Arc::new(self.backend.decompose(a, b)?);
        self.cache
            .write()
            .expect("fusion cache poisoned")
            .insert(key, Arc::clone(&rep));
        Ok(rep)
    }

    /// Memoized `a ⊗ b`.
    pub fn decompose(&self, a: &Label, b: &Label) -> Result<Rep> {
        self.decompose_shared(a, b).map(|r| (*r).clone())
    }

    pub fn dim(&self, a: &Label) -> Result<BigUint> {
        self.check(a)?;
        self.backend.dim(a)
    }

    /// Bilinear extension of `decompose`.
    pub fn tensor(&self, r1: &Rep, r2: &Rep) -> Result<Rep> {
        let mut out = Rep::new();
        for (a, m) in r1.iter() {
            for (b, n) in r2.iter() {
                let prod = self.decompose_shared(a, b)?;
                out.add_scaled(&prod, &(m * n));
            }
        }
        Ok(out)
    }

    /// `r^n`, with `r^0 = 1·ε`.
    pub fn tensor_power(&self, r: &Rep, n: usize) -> Result<Rep> {
        Ok(self
            .tensor_powers(r, n)?
            .pop()
            .expect("at least the zeroth power"))
    }

    /// `[r^0, r^1, …, r^n]` computed by iterated right multiplication.
    pub fn tensor_powers(&self, r: &Rep, n: usize) -> Result<Vec<Rep>> {
        for l in r.support() {
            self.check(l)?;
        }
        let mut out = Vec::with_capacity(n + 1);
        out.push(Rep::irreducible(self.unit()));
        for i in 0..n {
            let next = self.tensor(&out[i], r)?;
            out.push(next);
        }
        Ok(out)
    }

    /// `Σ_t mult(t)·dim(t)`
    pub fn dim_rep(&self, r: &Rep) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for (l, m) in r.iter() {
            total += m * self.dim(l)?;
        }
        Ok(total)
    }

    /// Multiplicity of the trivial representation in `r`.
    pub fn invariant_multiplicity(&self, r: &Rep) -> BigUint {
        r.mult(&self.unit())
    }

    pub fn parse_label(&self, text: &str) -> Result<Label> {
        let label = self.backend.parse_label(text.trim())?;
        self.check(&label)?;
        Ok(label)
    }

    /// Parses additive notation: terms `k.(label)`, `k(label)` or `(label)`
    /// joined by `+`. Whitespace is ignored around terms.
    pub fn parse_rep(&self, text: &str) -> Result<Rep> {
        let mut rep = Rep::new();
        for (i, term) in split_terms(text).into_iter().enumerate() {
            let term = term.trim();
            if term.is_empty() {
                if i == 0 {
                    continue;
                }
                return Err(Error::parse(text, "empty term"));
            }
            let (coef, label) = split_coefficient(term);
            let coef = match coef {
                Some(c) => c
                    .parse::<BigUint>()
                    .map_err(|_| Error::parse(text, format!("bad multiplicity `{c}`")))?,
                None => BigUint::one(),
            };
            rep.add_term(self.parse_label(label)?, coef);
        }
        if rep.is_empty() {
            return Err(Error::EmptyRep);
        }
        Ok(rep)
    }
}

fn split_terms(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn split_coefficient(term: &str) -> (Option<&str>, &str) {
    let digits = term.bytes().take_while(u8::is_ascii_digit).count();
    if digits == 0 {
        return (None, term);
    }
    let rest = &term[digits..];
    if let Some(label) = rest.strip_prefix('.') {
        (Some(&term[..digits]), label.trim())
    } else if rest.trim_start().starts_with('(') {
        (Some(&term[..digits]), rest.trim())
    } else {
        (None, term)
    }
}

/// Outcome of [`validate_backend`]. Products the backend does not define
/// (finite tables) are skipped and counted, not reported as failures.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub unit_ok: bool,
    pub associativity_failures: Vec<(Label, Label, Label)>,
    pub dual_failures: Vec<Label>,
    pub dim_failures: Vec<(Label, Label)>,
    pub checked_labels: usize,
    pub skipped_products: usize,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.unit_ok
            && self.associativity_failures.is_empty()
            && self.dual_failures.is_empty()
            && self.dim_failures.is_empty()
    }

    /// One-line description of the first failure, if any.
    pub fn first_failure(&self) -> Option<String> {
        if !self.unit_ok {
            return Some("unit axiom violated".into());
        }
        if let Some((a, b, c)) = self.associativity_failures.first() {
            return Some(format!("non-associative triple ({a}, {b}, {c})"));
        }
        if let Some((a, b)) = self.dim_failures.first() {
            return Some(format!("dimension mismatch for {a} ⊗ {b}"));
        }
        if let Some(a) = self.dual_failures.first() {
            return Some(format!("dual condition fails for {a}"));
        }
        None
    }
}

fn defined<T>(r: Result<T>, skipped: &mut usize) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(Error::MissingProduct(..)) | Err(Error::UnknownLabel(..)) => {
            *skipped += 1;
            None
        }
        Err(_) => None,
    }
}

/// Checks the semiring axioms on the first `label_budget` labels of the
/// backend: unit law, associativity on all triples, multiplicativity of
/// `dim`, and the duality condition `mult_ε(a ⊗ b) = [b = dual(a)]`.
/// Never aborts: every failure is collected.
pub fn validate_backend(fusion: &Fusion, label_budget: usize) -> ValidationReport {
    let labels = fusion.backend().sample_labels(label_budget.max(1));
    let unit = fusion.unit();
    let mut report = ValidationReport {
        unit_ok: true,
        checked_labels: labels.len(),
        ..Default::default()
    };
    let mut skipped = 0usize;

    if !matches!(fusion.dim(&unit), Ok(d) if d.is_one()) {
        report.unit_ok = false;
    }
    for a in &labels {
        let single = Rep::irreducible(a.clone());
        let left = fusion.decompose(&unit, a);
        let right = fusion.decompose(a, &unit);
        if !matches!((left, right), (Ok(l), Ok(r)) if l == single && r == single) {
            report.unit_ok = false;
        }
    }

    for a in &labels {
        for b in &labels {
            let Some(prod) = defined(fusion.decompose(a, b), &mut skipped) else {
                continue;
            };
            let lhs = fusion.dim(a).and_then(|x| Ok(x * fusion.dim(b)?));
            let rhs = fusion.dim_rep(&prod);
            match (lhs, rhs) {
                (Ok(x), Ok(y)) if x == y => {}
                _ => report.dim_failures.push((a.clone(), b.clone())),
            }
        }
    }

    for a in &labels {
        for b in &labels {
            let Some(ab) = defined(fusion.decompose(a, b), &mut skipped) else {
                continue;
            };
            for c in &labels {
                let Some(left) = defined(
                    fusion.tensor(&ab, &Rep::irreducible(c.clone())),
                    &mut skipped,
                ) else {
                    continue;
                };
                let Some(bc) = defined(fusion.decompose(b, c), &mut skipped) else {
                    continue;
                };
                let Some(right) = defined(
                    fusion.tensor(&Rep::irreducible(a.clone()), &bc),
                    &mut skipped,
                ) else {
                    continue;
                };
                if left != right {
                    report
                        .associativity_failures
                        .push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }

    for a in &labels {
        let Some(d) = fusion.backend().dual(a) else {
            continue;
        };
        let mut ok = fusion.backend().recognizes(&d);
        if ok {
            if let Some(p) = defined(fusion.decompose(a, &d), &mut skipped) {
                ok = !fusion.invariant_multiplicity(&p).is_zero();
            }
        }
        for b in labels.iter().filter(|b| **b != d) {
            if let Some(p) = defined(fusion.decompose(a, b), &mut skipped) {
                ok &= fusion.invariant_multiplicity(&p).is_zero();
            }
        }
        if !ok {
            report.dual_failures.push(a.clone());
        }
    }

    report.skipped_products = skipped;
    report
}
