//! Budgeted checkers for conditions (C1)–(C3), the chain group, the rebase
//! exponent, exhaustiveness and intertwiner dimensions.
//!
//! Label universes are infinite in general, so every search carries a
//! budget. A negative answer is `Unknown` unless an obstruction is proven.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fusion::Fusion;
use crate::label::Label;
use crate::rep::Rep;

/// Outcome of a budgeted check. `Holds` always carries a witness that can
/// be re-checked independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriState<W> {
    Holds(W),
    Fails(String),
    Unknown { budget: usize },
}

impl<W> TriState<W> {
    pub fn holds(&self) -> bool {
        matches!(self, TriState::Holds(_))
    }

    pub fn fails(&self) -> bool {
        matches!(self, TriState::Fails(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, TriState::Unknown { .. })
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            TriState::Holds(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> TriState<V> {
        match self {
            TriState::Holds(w) => TriState::Holds(f(w)),
            TriState::Fails(r) => TriState::Fails(r),
            TriState::Unknown { budget } => TriState::Unknown { budget },
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            TriState::Holds(_) => "holds",
            TriState::Fails(_) => "fails",
            TriState::Unknown { .. } => "unknown",
        }
    }

    /// `{"status": …, "witness": …, "budget": …}`; failures add a `reason`.
    pub fn to_json(&self, budget: usize) -> Value
    where
        W: Serialize,
    {
        match self {
            TriState::Holds(w) => json!({"status": "holds", "witness": w, "budget": budget}),
            TriState::Fails(reason) => {
                json!({"status": "fails", "witness": null, "budget": budget, "reason": reason})
            }
            TriState::Unknown { budget } => {
                json!({"status": "unknown", "witness": null, "budget": budget})
            }
        }
    }
}

impl<W: fmt::Display> fmt::Display for TriState<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriState::Holds(w) => write!(f, "holds ({w})"),
            TriState::Fails(r) => write!(f, "fails: {r}"),
            TriState::Unknown { budget } => write!(f, "unknown at budget {budget}"),
        }
    }
}

/// Tensor powers `α^0 … α^L` and the irreducibles seen in them.
#[derive(Clone, Debug)]
pub struct LabelUniverse {
    levels: Vec<Rep>,
    /// Ordered by first-seen level, then canonical order.
    discovered: Vec<(Label, usize)>,
    first_seen: HashMap<Label, usize>,
}

impl LabelUniverse {
    pub fn build(fusion: &Fusion, alpha: &Rep, max_level: usize) -> Result<Self> {
        Ok(Self::from_levels(fusion.tensor_powers(alpha, max_level)?))
    }

    pub fn from_levels(levels: Vec<Rep>) -> Self {
        let mut discovered = Vec::new();
        let mut first_seen = HashMap::new();
        for (l, rep) in levels.iter().enumerate() {
            for label in rep.support() {
                if !first_seen.contains_key(label) {
                    first_seen.insert(label.clone(), l);
                    discovered.push((label.clone(), l));
                }
            }
        }
        LabelUniverse {
            levels,
            discovered,
            first_seen,
        }
    }

    pub fn levels(&self) -> &[Rep] {
        &self.levels
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.discovered.iter().map(|(l, _)| l)
    }

    pub fn discovered(&self) -> &[(Label, usize)] {
        &self.discovered
    }

    pub fn first_seen(&self, label: &Label) -> Option<usize> {
        self.first_seen.get(label).copied()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.first_seen.contains_key(label)
    }
}

/// (C2): `α` has at least two irreducible summands counted with multiplicity.
/// The witness is that count.
pub fn check_c2(alpha: &Rep) -> Result<TriState<BigUint>> {
    if alpha.is_empty() {
        return Err(Error::EmptyRep);
    }
    let total = alpha.total_multiplicity();
    if total >= BigUint::from(2u32) {
        Ok(TriState::Holds(total))
    } else {
        Ok(TriState::Fails(format!(
            "α = {alpha} is a single irreducible"
        )))
    }
}

/// (C3): least `N ≤ max_level` with `α^N ⊆ α^{N+1}`.
///
/// Fails only on a grading obstruction: every summand of `α` carries the
/// same nontrivial degree, so consecutive powers never share an irreducible.
/// The backend's own grading is used when it has one (a proof); otherwise
/// the chain classes discovered within the budget stand in for it.
pub fn check_c3(fusion: &Fusion, alpha: &Rep, max_level: usize) -> Result<TriState<usize>> {
    if alpha.is_empty() {
        return Err(Error::EmptyRep);
    }
    let levels = fusion.tensor_powers(alpha, max_level + 1)?;
    if let Some(n) = (0..=max_level).find(|&n| levels[n].is_contained_in(&levels[n + 1])) {
        return Ok(TriState::Holds(n));
    }

    let grades: Option<Vec<_>> = alpha
        .support()
        .map(|l| fusion.backend().grading(l))
        .collect();
    if let Some(grades) = grades {
        let g = grades[0];
        if grades.iter().all(|x| *x == g) && !g.is_zero() {
            let modulus = if g.modulus == 0 {
                "in Z".to_string()
            } else {
                format!("mod {}", g.modulus)
            };
            return Ok(TriState::Fails(format!(
                "grading obstruction: every summand of α has degree {} {modulus}",
                g.value
            )));
        }
        return Ok(TriState::Unknown { budget: max_level });
    }

    let seeds: Vec<Label> = alpha.support().cloned().collect();
    let cg = chain_group(fusion, &seeds, max_level)?;
    if let Some(c) = cg.common_class(alpha.support()) {
        if c != cg.unit_class() {
            return Ok(TriState::Fails(format!(
                "grading obstruction: every summand of α lies in chain class #{c} ≠ e (discovered window)"
            )));
        }
    }
    Ok(TriState::Unknown { budget: max_level })
}

fn invariant_witness(fusion: &Fusion, beta: &Label, other: &Label) -> Result<bool> {
    let p = fusion.decompose(beta, other)?;
    Ok(!fusion.invariant_multiplicity(&p).is_zero())
}

fn c1_for_universe(
    fusion: &Fusion,
    universe: &LabelUniverse,
    use_dual: bool,
) -> Result<BTreeMap<Label, TriState<Label>>> {
    let budget = universe.max_level();
    let mut out = BTreeMap::new();
    for beta in universe.labels() {
        let mut found = None;
        if use_dual {
            if let Some(d) = fusion.backend().dual(beta) {
                if universe.contains(&d) && invariant_witness(fusion, beta, &d)? {
                    found = Some(d);
                }
            }
        }
        if found.is_none() {
            for cand in universe.labels() {
                if invariant_witness(fusion, beta, cand)? {
                    found = Some(cand.clone());
                    break;
                }
            }
        }
        let state = match found {
            Some(w) => TriState::Holds(w),
            None => TriState::Unknown { budget },
        };
        out.insert(beta.clone(), state);
    }
    Ok(out)
}

/// (C1) for each irreducible of `α^0 … α^{max_level}`: a partner `β′` in the
/// same window with an invariant vector in `β ⊗ β′`. Tries `dual(β)` first.
pub fn check_c1(
    fusion: &Fusion,
    alpha: &Rep,
    max_level: usize,
) -> Result<BTreeMap<Label, TriState<Label>>> {
    let universe = LabelUniverse::build(fusion, alpha, max_level)?;
    c1_for_universe(fusion, &universe, true)
}

/// (C1) by plain search in canonical order, ignoring duals.
pub fn check_c1_search(
    fusion: &Fusion,
    alpha: &Rep,
    max_level: usize,
) -> Result<BTreeMap<Label, TriState<Label>>> {
    let universe = LabelUniverse::build(fusion, alpha, max_level)?;
    c1_for_universe(fusion, &universe, false)
}

/// First level at which each target occurs in a tensor power of `α`.
pub fn check_exhaustive(
    fusion: &Fusion,
    alpha: &Rep,
    targets: &[Label],
    max_level: usize,
) -> Result<BTreeMap<Label, TriState<usize>>> {
    let universe = LabelUniverse::build(fusion, alpha, max_level)?;
    Ok(targets
        .iter()
        .map(|t| {
            let state = match universe.first_seen(t) {
                Some(l) => TriState::Holds(l),
                None => TriState::Unknown { budget: max_level },
            };
            (t.clone(), state)
        })
        .collect())
}

/// `dim Hom(α^k, α^l) = Σ_t mult_t(α^l)·mult_t(α^k)`.
pub fn intertwiner_dim(fusion: &Fusion, alpha: &Rep, l: usize, k: usize) -> Result<BigUint> {
    let levels = fusion.tensor_powers(alpha, l.max(k))?;
    Ok(levels[l].iter().map(|(t, m)| m * levels[k].mult(t)).sum())
}

/// How the discovered chain-group table looks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoHint {
    Cyclic(usize),
    Integers,
    Unknown,
}

impl fmt::Display for IsoHint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoHint::Cyclic(n) => write!(f, "Z/{n}Z"),
            IsoHint::Integers => f.write_str("Z"),
            IsoHint::Unknown => f.write_str("unknown"),
        }
    }
}

/// Irreducibles modulo co-occurrence in a tensor product, on the window
/// discovered from the seeds. Class `0` always contains the unit.
#[derive(Clone, Debug)]
pub struct ChainGroupResult {
    pub classes: Vec<Vec<Label>>,
    class_of: BTreeMap<Label, usize>,
    /// Directional product table on classes; missing pairs fell outside the window.
    pub product: BTreeMap<(usize, usize), usize>,
    pub iso_hint: IsoHint,
    pub complete: bool,
    /// Every pair product computed during the run.
    pub performed: Vec<(Label, Label)>,
}

impl ChainGroupResult {
    pub fn unit_class(&self) -> usize {
        0
    }

    pub fn class_of(&self, label: &Label) -> Option<usize> {
        self.class_of.get(label).copied()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn multiply(&self, a: usize, b: usize) -> Option<usize> {
        self.product.get(&(a, b)).copied()
    }

    /// The single class shared by all `labels`, if they are all discovered
    /// and agree.
    pub fn common_class<'a>(&self, labels: impl IntoIterator<Item = &'a Label>) -> Option<usize> {
        let mut common = None;
        for l in labels {
            let c = self.class_of(l)?;
            match common {
                None => common = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
        common
    }

    /// Order of a class in the discovered table, when it closes up within it.
    pub fn order_of(&self, class: usize) -> Option<usize> {
        let mut x = class;
        for k in 1..=self.num_classes() {
            if x == self.unit_class() {
                return Some(k);
            }
            x = self.multiply(x, class)?;
        }
        None
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Vec<String>> = self
            .classes
            .iter()
            .map(|c| c.iter().map(Label::to_string).collect())
            .collect();
        let product: Vec<Value> = self
            .product
            .iter()
            .map(|((a, b), c)| json!([a, b, c]))
            .collect();
        json!({
            "classes": classes,
            "product": product,
            "iso_hint": self.iso_hint.to_string(),
            "complete": self.complete,
        })
    }
}

struct ChainState {
    index: HashMap<Label, usize>,
    labels: Vec<Label>,
    parent: Vec<usize>,
    done: HashSet<(Label, Label)>,
    performed: Vec<(Label, Label)>,
}

impl ChainState {
    fn intern(&mut self, label: &Label) -> (usize, bool) {
        if let Some(&i) = self.index.get(label) {
            return (i, false);
        }
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label.clone());
        self.parent.push(i);
        (i, true)
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn product(&mut self, fusion: &Fusion, a: &Label, b: &Label) -> Result<Option<Rep>> {
        if !self.done.insert((a.clone(), b.clone())) {
            return Ok(None);
        }
        self.performed.push((a.clone(), b.clone()));
        fusion.decompose(a, b).map(Some)
    }

    /// Multiplies every known label by every seed on both sides.
    /// Returns (labels added, classes merged).
    fn round(&mut self, fusion: &Fusion, seeds: &[Label]) -> Result<(bool, bool)> {
        let (mut added, mut merged) = (false, false);
        let snapshot = self.labels.clone();
        for a in &snapshot {
            for s in seeds {
                for (x, y) in [(a, s), (s, a)] {
                    let Some(prod) = self.product(fusion, x, y)? else {
                        continue;
                    };
                    let mut first = None;
                    for c in prod.support() {
                        let (i, new) = self.intern(c);
                        added |= new;
                        match first {
                            None => first = Some(i),
                            Some(f) => merged |= self.union(f, i),
                        }
                    }
                }
            }
        }
        Ok((added, merged))
    }

    fn classes(&mut self) -> (Vec<Vec<Label>>, BTreeMap<Label, usize>) {
        let mut groups: BTreeMap<usize, Vec<Label>> = BTreeMap::new();
        for i in 0..self.labels.len() {
            let r = self.find(i);
            groups.entry(r).or_default().push(self.labels[i].clone());
        }
        // the unit was interned first, so its root is index 0
        let mut classes: Vec<Vec<Label>> = groups.into_values().collect();
        for c in &mut classes {
            c.sort();
        }
        let unit_class = classes.remove(0);
        classes.sort_by(|a, b| a[0].cmp(&b[0]));
        classes.insert(0, unit_class);
        let class_of = classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |l| (l.clone(), i)))
            .collect();
        (classes, class_of)
    }
}

/// Chain group on the window generated by `seeds`.
///
/// Each round multiplies every discovered label by every seed (left and
/// right) and merges all constituents of each product into one class. After
/// `max_level` rounds, one probe round decides `complete`, then products of
/// class representatives fill the class table.
pub fn chain_group(fusion: &Fusion, seeds: &[Label], max_level: usize) -> Result<ChainGroupResult> {
    if seeds.is_empty() {
        return Err(Error::InvalidArgument(
            "chain group needs at least one seed".into(),
        ));
    }
    let mut st = ChainState {
        index: HashMap::new(),
        labels: Vec::new(),
        parent: Vec::new(),
        done: HashSet::new(),
        performed: Vec::new(),
    };
    st.intern(&fusion.unit());
    let seeds: Vec<Label> = seeds
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for s in &seeds {
        fusion.parse_label(&s.to_string()).or_else(|_| {
            if fusion.backend().recognizes(s) {
                Ok(s.clone())
            } else {
                Err(Error::UnknownLabel(s.to_string(), fusion.name().into()))
            }
        })?;
        st.intern(s);
    }
    for _ in 0..max_level {
        st.round(fusion, &seeds)?;
    }
    let (added, merged) = st.round(fusion, &seeds)?;
    let mut complete = !added && !merged;

    // Representative products; repeat while they merge classes.
    let (classes, class_of, product) = loop {
        let (classes, class_of) = st.classes();
        let mut product = BTreeMap::new();
        let mut merged = false;
        for i in 0..classes.len() {
            for j in 0..classes.len() {
                let (a, b) = (classes[i][0].clone(), classes[j][0].clone());
                st.done.remove(&(a.clone(), b.clone()));
                let prod = st.product(fusion, &a, &b)?.expect("forced product");
                let known: Vec<usize> = prod
                    .support()
                    .filter_map(|c| st.index.get(c).copied())
                    .collect();
                if let Some((&first, rest)) = known.split_first() {
                    for &k in rest {
                        merged |= st.union(first, k);
                    }
                    product.insert((i, j), class_of[&st.labels[first]]);
                }
            }
        }
        if !merged {
            break (classes, class_of, product);
        }
        complete = false;
    };

    let mut result = ChainGroupResult {
        classes,
        class_of,
        product,
        iso_hint: IsoHint::Unknown,
        complete,
        performed: st.performed,
    };
    result.iso_hint = iso_hint(&result, &seeds);
    Ok(result)
}

fn iso_hint(cg: &ChainGroupResult, seeds: &[Label]) -> IsoHint {
    let n = cg.num_classes();
    if cg.product.len() == n * n {
        for g in 0..n {
            if cg.order_of(g) == Some(n) {
                return IsoHint::Cyclic(n);
            }
        }
        return IsoHint::Unknown;
    }
    // Partial table: consistent with Z when powers of the first seed's class
    // stay distinct and never return to the identity inside the window.
    let Some(g) = cg.class_of(&seeds[0]) else {
        return IsoHint::Unknown;
    };
    if g == cg.unit_class() {
        return IsoHint::Unknown;
    }
    let mut seen = BTreeSet::from([cg.unit_class()]);
    let mut x = g;
    loop {
        if !seen.insert(x) {
            return IsoHint::Unknown;
        }
        match cg.multiply(x, g) {
            Some(next) => x = next,
            None => return IsoHint::Integers,
        }
    }
}

/// `M` such that `α^M` lies in the identity chain class: `M = 1` when the
/// summands already do, the order of their common class otherwise. `None`
/// when the summands are in different classes or the order is not reached
/// within the budget.
pub fn rebase_exponent(fusion: &Fusion, alpha: &Rep, max_level: usize) -> Result<Option<usize>> {
    if alpha.is_empty() {
        return Err(Error::EmptyRep);
    }
    let seeds: Vec<Label> = alpha.support().cloned().collect();
    let cg = chain_group(fusion, &seeds, max_level)?;
    let Some(c) = cg.common_class(alpha.support()) else {
        return Ok(None);
    };
    if c == cg.unit_class() {
        return Ok(Some(1));
    }
    Ok(cg.order_of(c))
}

/// Convenience: the multiplicity of the unit in `a ⊗ b` is at least one.
pub fn has_invariant_vector(fusion: &Fusion, a: &Label, b: &Label) -> Result<bool> {
    invariant_witness(fusion, a, b)
}

/// `Σ_t mult_t(r)` over labels whose multiplicity is one (for reports).
pub fn multiplicity_free(r: &Rep) -> bool {
    r.iter().all(|(_, m)| m.is_one())
}
