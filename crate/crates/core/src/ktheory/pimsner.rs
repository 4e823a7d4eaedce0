use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::abelian::{
    cokernel_presentation, group_hom, kernel_basis, AbelianGroupPresentation, GroupHom,
};
use super::matrix::IntegerMatrix;
use crate::bratteli::{build_bratteli, BratteliDiagram};
use crate::conditions::{check_c2, check_c3, rebase_exponent, TriState};
use crate::error::{Error, Result};
use crate::fusion::Fusion;
use crate::label::Label;
use crate::rep::Rep;

/// Presentation of `Q_L = ℤ^{Labels(L)} / ⟨(φ − ι) e_t : t ∈ Labels(L−1)⟩`
/// read off a diagram. Rows are indexed by level `L−1`, columns by level `L`.
pub fn relation_matrix_from_diagram(
    diagram: &BratteliDiagram,
    level: usize,
) -> Result<IntegerMatrix> {
    if level == 0 {
        return Err(Error::InvalidArgument(
            "relation matrices start at level 1".into(),
        ));
    }
    let rows = diagram.labels(level - 1)?;
    let cols = diagram.labels(level)?;
    let col_index: BTreeMap<&Label, usize> = cols.iter().enumerate().map(|(j, t)| (t, j)).collect();
    let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
    for ((s, t), w) in &diagram.edges[level - 1] {
        let i = rows
            .iter()
            .position(|r| r == s)
            .expect("edge source on level");
        m.set(i, col_index[t], BigInt::from(w.clone()));
    }
    for (i, s) in rows.iter().enumerate() {
        let Some(&j) = col_index.get(s) else {
            return Err(Error::C3Gate(TriState::Fails(format!(
                "{s} occurs at level {} but not at level {level}",
                level - 1
            ))));
        };
        let x = m.get(i, j) - 1;
        m.set(i, j, x);
    }
    Ok(m)
}

/// Relation matrix of `Q_L` for `α`. Requires (C3) with witness `N ≤ L−1`.
pub fn pimsner_relation_matrix(
    fusion: &Fusion,
    alpha: &Rep,
    level: usize,
) -> Result<IntegerMatrix> {
    if level == 0 {
        return Err(Error::InvalidArgument(
            "relation matrices start at level 1".into(),
        ));
    }
    match check_c3(fusion, alpha, level - 1)? {
        TriState::Holds(_) => {}
        other => return Err(Error::C3Gate(other)),
    }
    relation_matrix_from_diagram(&build_bratteli(fusion, alpha, level)?, level)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub level: usize,
    pub labels: Vec<Label>,
    pub presentation: AbelianGroupPresentation,
    /// Rank of `ker(φ − ι)` on `ℤ^{Labels(L−1)}`.
    pub kernel_rank: usize,
    /// Class of the unit: the image of `α^L` in reduced coordinates.
    pub unit_class: Vec<BigInt>,
}

/// Map `Q_L → Q_{L+1}` induced by label inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub from: usize,
    pub hom: GroupHom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// `K₀` when the sequence stabilized.
    pub k0: Option<String>,
    pub unit: Option<Vec<BigInt>>,
    pub k1: String,
    /// Known Kirchberg algebra with the same invariants.
    pub model: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTheoryReport {
    pub rebased_alpha: Rep,
    pub rebase_m: usize,
    pub c3_witness: usize,
    pub per_level: Vec<LevelReport>,
    pub induced: Vec<InducedMap>,
    pub stabilized: bool,
    pub stable_from: Option<usize>,
    pub verdict: Verdict,
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

impl KTheoryReport {
    /// Report JSON. Contains no label names, so R⁺-isomorphic presentations
    /// with renamed labels give identical documents.
    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = self
            .per_level
            .iter()
            .map(|l| {
                json!({
                    "L": l.level,
                    "free_rank": l.presentation.free_rank,
                    "torsion": strings(&l.presentation.torsion),
                    "kernel_rank": l.kernel_rank,
                    "unit": strings(&l.unit_class),
                })
            })
            .collect();
        json!({
            "rebase_M": self.rebase_m,
            "c3_N": self.c3_witness,
            "levels": levels,
            "stabilized": self.stabilized,
            "stable_from": self.stable_from,
            "k0": self.verdict.k0,
            "unit": self.verdict.unit.as_deref().map(strings),
            "k1": self.verdict.k1,
            "model": self.verdict.model,
        })
    }

    pub fn level(&self, l: usize) -> Option<&LevelReport> {
        self.per_level.iter().find(|r| r.level == l)
    }
}

fn level_report(diagram: &BratteliDiagram, level: usize) -> Result<LevelReport> {
    let rel = relation_matrix_from_diagram(diagram, level)?;
    let mut presentation = cokernel_presentation(&rel);
    let kernel_rank = kernel_basis(&rel.transpose()).len();
    let dims: Vec<BigInt> = diagram
        .multiplicities(level)?
        .into_iter()
        .map(BigInt::from)
        .collect();
    let mut unit_class = presentation.reduce(&dims);
    let negative: Vec<usize> = unit_class
        .iter()
        .take(presentation.free_rank)
        .enumerate()
        .filter(|(_, x)| x.sign() == Sign::Minus)
        .map(|(i, _)| i)
        .collect();
    for i in negative {
        presentation.flip_free(i);
    }
    if presentation.free_rank > 0 {
        unit_class = presentation.reduce(&dims);
    }
    Ok(LevelReport {
        level,
        labels: diagram.labels(level)?,
        presentation,
        kernel_rank,
        unit_class,
    })
}

fn induced_between(from: &LevelReport, to: &LevelReport) -> Result<InducedMap> {
    let index: BTreeMap<&Label, usize> =
        to.labels.iter().enumerate().map(|(j, t)| (t, j)).collect();
    let mut matrix = Vec::with_capacity(from.presentation.dim());
    for i in 0..from.presentation.dim() {
        let lift = from.presentation.lift(i);
        let mut included = vec![BigInt::zero(); to.labels.len()];
        for (t, x) in from.labels.iter().zip(lift) {
            if x.is_zero() {
                continue;
            }
            let j = *index.get(t).ok_or_else(|| {
                Error::C3Gate(TriState::Fails(format!(
                    "{t} occurs at level {} but not at level {}",
                    from.level, to.level
                )))
            })?;
            included[j] = x;
        }
        matrix.push(to.presentation.reduce(&included));
    }
    Ok(InducedMap {
        from: from.level,
        hom: group_hom(&from.presentation, &to.presentation, matrix),
    })
}

/// The map `Q_L → Q_{L+1}` and whether it is an isomorphism.
pub fn induced_colimit_map(
    fusion: &Fusion,
    alpha: &Rep,
    level: usize,
) -> Result<(Vec<Vec<BigInt>>, bool)> {
    match check_c3(fusion, alpha, level.saturating_sub(1))? {
        TriState::Holds(_) => {}
        other => return Err(Error::C3Gate(other)),
    }
    let diagram = build_bratteli(fusion, alpha, level + 1)?;
    let map = induced_between(
        &level_report(&diagram, level)?,
        &level_report(&diagram, level + 1)?,
    )?;
    let iso = map.hom.is_isomorphism();
    Ok((map.hom.matrix, iso))
}

/// `K₀` and `K₁` of the fixed-point algebra of `α` through the truncated
/// inductive limit of `Q_L`, for `L` up to `max_level`.
///
/// With `auto_rebase`, `α` is first replaced by `α^M` for the rebase
/// exponent `M`. (C3) gates the computation. The colimit is reported only
/// once two consecutive induced maps are isomorphisms.
pub fn k_theory_of_fixed_point(
    fusion: &Fusion,
    alpha: &Rep,
    max_level: usize,
    auto_rebase: bool,
) -> Result<KTheoryReport> {
    if max_level < 2 {
        return Err(Error::InvalidArgument(
            "max_level must be at least 2".into(),
        ));
    }
    let mut alpha = alpha.clone();
    let mut rebase_m = 1;
    if auto_rebase {
        if let Some(m) = rebase_exponent(fusion, &alpha, max_level)? {
            if m > 1 {
                alpha = fusion.tensor_power(&alpha, m)?;
                rebase_m = m;
            }
        }
    }
    let c3_witness = match check_c3(fusion, &alpha, max_level)? {
        TriState::Holds(n) => n,
        other => return Err(Error::C3Gate(other)),
    };

    let diagram = build_bratteli(fusion, &alpha, max_level)?;
    let per_level = (c3_witness + 1..=max_level)
        .map(|l| level_report(&diagram, l))
        .collect::<Result<Vec<_>>>()?;
    let induced = per_level
        .windows(2)
        .map(|w| induced_between(&w[0], &w[1]))
        .collect::<Result<Vec<_>>>()?;

    let stable_from = induced
        .windows(2)
        .find(|w| w[0].hom.is_isomorphism() && w[1].hom.is_isomorphism())
        .map(|w| w[0].from);
    let stabilized = stable_from.is_some();

    let k1_zero = per_level.iter().all(|l| l.kernel_rank == 0);
    let k1 = if k1_zero {
        "0 through budget".to_string()
    } else {
        let ranks: Vec<String> = per_level
            .iter()
            .map(|l| l.kernel_rank.to_string())
            .collect();
        format!("kernel ranks {}", ranks.join(","))
    };

    let stable = stable_from.and_then(|l| per_level.iter().find(|r| r.level == l));
    let k0 = stable.map(|r| r.presentation.to_string());
    let unit = stable.map(|r| r.unit_class.clone());
    let model = match stable {
        Some(r) if k1_zero && check_c2(&alpha)?.holds() => model_for(r),
        _ => None,
    };

    Ok(KTheoryReport {
        rebased_alpha: alpha,
        rebase_m,
        c3_witness,
        per_level,
        induced,
        stabilized,
        stable_from,
        verdict: Verdict {
            k0,
            unit,
            k1,
            model,
        },
    })
}

/// Cuntz algebras with `K₁ = 0` whose `(K₀, [1])` matches.
fn model_for(r: &LevelReport) -> Option<String> {
    let p = &r.presentation;
    let unit_is_one = r.unit_class.len() == 1 && r.unit_class[0] == BigInt::from(1);
    if p.is_trivial() {
        return Some("O_2".into());
    }
    match (p.free_rank, p.torsion.as_slice()) {
        (1, []) if unit_is_one => Some("O_inf".into()),
        (0, [n]) if unit_is_one && n.is_positive() => Some(format!("O_{}", n + 1)),
        _ => None,
    }
}
