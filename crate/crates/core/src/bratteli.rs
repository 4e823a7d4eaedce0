//! Bratteli diagrams of the AF core: level `ℓ` has one node per irreducible
//! of `α^ℓ` weighted by its multiplicity, and `s → t` carries the
//! multiplicity of `t` in `s ⊗ α`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fusion::Fusion;
use crate::label::Label;
use crate::rep::Rep;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliDiagram {
    /// `levels[ℓ]` lists `(t, d_t(ℓ))` in canonical label order.
    pub levels: Vec<Vec<(Label, BigUint)>>,
    /// `edges[ℓ][(s, t)]` is the multiplicity of `t` in `s ⊗ α`, for `ℓ < L`.
    pub edges: Vec<BTreeMap<(Label, Label), BigUint>>,
}

/// Matrix of `s ↦ s ⊗ α` between two consecutive levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub rows: Vec<Label>,
    pub cols: Vec<Label>,
    pub entries: BTreeMap<(usize, usize), BigUint>,
}

impl TransitionMatrix {
    pub fn get(&self, i: usize, j: usize) -> BigUint {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// `v ↦ v·E` for a row vector indexed by `rows`.
    pub fn apply(&self, v: &[BigUint]) -> Result<Vec<BigUint>> {
        if v.len() != self.rows.len() {
            return Err(Error::IndexMismatch {
                expected: self.rows.len(),
                got: v.len(),
            });
        }
        let mut out = vec![BigUint::zero(); self.cols.len()];
        for ((i, j), e) in &self.entries {
            out[*j] += &v[*i] * e;
        }
        Ok(out)
    }
}

/// Diagram for levels `0..=max_level`.
pub fn build_bratteli(fusion: &Fusion, alpha: &Rep, max_level: usize) -> Result<BratteliDiagram> {
    if alpha.is_empty() {
        return Err(Error::EmptyRep);
    }
    let powers = fusion.tensor_powers(alpha, max_level)?;
    let levels = powers
        .iter()
        .map(|r| r.iter().map(|(l, m)| (l.clone(), m.clone())).collect())
        .collect();
    let mut edges = Vec::with_capacity(max_level);
    for power in powers.iter().take(max_level) {
        let mut level_edges = BTreeMap::new();
        for s in power.support() {
            let image = fusion.tensor(&Rep::irreducible(s.clone()), alpha)?;
            for (t, m) in image.iter() {
                level_edges.insert((s.clone(), t.clone()), m.clone());
            }
        }
        edges.push(level_edges);
    }
    Ok(BratteliDiagram { levels, edges })
}

impl BratteliDiagram {
    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    fn check_level(&self, l: usize) -> Result<()> {
        if l > self.max_level() {
            return Err(Error::LevelOutOfRange {
                level: l,
                max: self.max_level(),
            });
        }
        Ok(())
    }

    pub fn labels(&self, l: usize) -> Result<Vec<Label>> {
        self.check_level(l)?;
        Ok(self.levels[l].iter().map(|(t, _)| t.clone()).collect())
    }

    pub fn multiplicities(&self, l: usize) -> Result<Vec<BigUint>> {
        self.check_level(l)?;
        Ok(self.levels[l].iter().map(|(_, m)| m.clone()).collect())
    }

    pub fn index_of(&self, l: usize, label: &Label) -> Option<usize> {
        self.levels.get(l)?.iter().position(|(t, _)| t == label)
    }

    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .map(|lvl| {
                lvl.iter()
                    .map(|(t, m)| json!({"label": t.to_string(), "mult": m.to_string()}))
                    .collect()
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                e.iter()
                    .map(|((s, t), w)| {
                        json!({"from": s.to_string(), "to": t.to_string(), "w": w.to_string()})
                    })
                    .collect()
            })
            .collect();
        json!({"levels": levels, "edges": edges})
    }
}

/// Block sizes of the multimatrix algebra at level `l`: `⊕_t M_{d_t}`.
pub fn af_fibers(diagram: &BratteliDiagram, l: usize) -> Result<Vec<(Label, BigUint)>> {
    diagram.check_level(l)?;
    Ok(diagram.levels[l].clone())
}

pub fn transition_matrix(diagram: &BratteliDiagram, l: usize) -> Result<TransitionMatrix> {
    if l >= diagram.max_level() {
        return Err(Error::LevelOutOfRange {
            level: l,
            max: diagram.max_level().saturating_sub(1),
        });
    }
    let rows = diagram.labels(l)?;
    let cols = diagram.labels(l + 1)?;
    let col_index: BTreeMap<&Label, usize> = cols.iter().enumerate().map(|(j, t)| (t, j)).collect();
    let row_index: BTreeMap<&Label, usize> = rows.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let entries = diagram.edges[l]
        .iter()
        .map(|((s, t), w)| ((row_index[s], col_index[t]), w.clone()))
        .collect();
    Ok(TransitionMatrix {
        rows,
        cols,
        entries,
    })
}

/// Renders `Σ n_t (t)` at level `l` as the fraction `(…)/α^l`.
pub fn format_af_k0_element(
    level: usize,
    v: &[BigInt],
    diagram: &BratteliDiagram,
) -> Result<String> {
    let labels = diagram.labels(level)?;
    if v.len() != labels.len() {
        return Err(Error::IndexMismatch {
            expected: labels.len(),
            got: v.len(),
        });
    }
    let mut body = String::new();
    for (n, t) in v.iter().zip(&labels) {
        if n.is_zero() {
            continue;
        }
        let neg = n.sign() == Sign::Minus;
        match (body.is_empty(), neg) {
            (true, true) => body.push('-'),
            (false, true) => body.push_str(" - "),
            (false, false) => body.push_str(" + "),
            (true, false) => {}
        }
        let abs = n.magnitude();
        if !abs.is_one() {
            write!(body, "{abs}").unwrap();
        }
        write!(body, "{t}").unwrap();
    }
    if body.is_empty() {
        return Ok(format!("0/α^{level}"));
    }
    Ok(format!("({body})/α^{level}"))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering, one rank per level.
pub fn export_dot(diagram: &BratteliDiagram) -> String {
    let id = |l: usize, t: &Label| format!("\"{l}:{}\"", dot_escape(&t.to_string()));
    let mut out = String::from("digraph bratteli {\n  rankdir=TB;\n  node [shape=plaintext];\n");
    for (l, lvl) in diagram.levels.iter().enumerate() {
        write!(out, "  {{ rank=same;").unwrap();
        for (t, m) in lvl {
            write!(
                out,
                " {} [label=\"{}^{m}\"];",
                id(l, t),
                dot_escape(&t.to_string())
            )
            .unwrap();
        }
        out.push_str(" }\n");
    }
    for (l, edges) in diagram.edges.iter().enumerate() {
        for ((s, t), w) in edges {
            writeln!(
                out,
                "  {} -> {} [weight={w}, label=\"{w}\"];",
                id(l, s),
                id(l + 1, t)
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
