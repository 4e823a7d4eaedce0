//! Fusion rules ingested from JSON tables, table dumps of builtin backends,
//! and isomorphism checks between backends.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::conditions::TriState;
use crate::error::{Error, Result};
use crate::fusion::{validate_backend, Fusion, FusionBackend};
use crate::label::Label;
use crate::rep::Rep;

/// On-disk fusion table. Multiplicities and dimensions are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionTable {
    pub name: String,
    pub unit: String,
    pub labels: Vec<LabelEntry>,
    pub products: Vec<ProductEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelEntry {
    pub id: String,
    pub dim: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub a: String,
    pub b: String,
    pub out: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub c: String,
    pub mult: String,
}

impl FusionTable {
    /// Same table with every label id passed through `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> FusionTable {
        FusionTable {
            name: self.name.clone(),
            unit: f(&self.unit),
            labels: self
                .labels
                .iter()
                .map(|l| LabelEntry {
                    id: f(&l.id),
                    dim: l.dim.clone(),
                    dual: l.dual.as_deref().map(&f),
                })
                .collect(),
            products: self
                .products
                .iter()
                .map(|p| ProductEntry {
                    a: f(&p.a),
                    b: f(&p.b),
                    out: p
                        .out
                        .iter()
                        .map(|t| Term {
                            c: f(&t.c),
                            mult: t.mult.clone(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Backend answering from a finite table. Products outside the table are
/// reported as [`Error::MissingProduct`].
#[derive(Clone, Debug)]
pub struct TableBackend {
    name: String,
    unit: Label,
    order: Vec<Label>,
    ids: HashMap<String, Label>,
    dims: HashMap<Label, BigUint>,
    duals: HashMap<Label, Label>,
    products: HashMap<(Label, Label), Rep>,
}

fn number(s: &str, what: &str) -> Result<BigUint> {
    s.trim()
        .parse::<BigUint>()
        .map_err(|_| Error::Schema(format!("{what} `{s}` is not a non-negative integer")))
}

impl TableBackend {
    pub fn from_table(table: &FusionTable) -> Result<Self> {
        let mut ids = HashMap::new();
        let mut order = Vec::new();
        let mut dims = HashMap::new();
        for entry in &table.labels {
            let label = Label::from_id(&entry.id);
            if ids.insert(entry.id.clone(), label.clone()).is_some() {
                return Err(Error::Schema(format!("duplicate label `{}`", entry.id)));
            }
            dims.insert(label.clone(), number(&entry.dim, "dimension")?);
            order.push(label);
        }
        let lookup = |id: &str| {
            ids.get(id)
                .cloned()
                .ok_or_else(|| Error::Schema(format!("undeclared label `{id}`")))
        };
        let unit = lookup(&table.unit)?;
        let mut duals = HashMap::new();
        for entry in &table.labels {
            if let Some(d) = &entry.dual {
                duals.insert(ids[&entry.id].clone(), lookup(d)?);
            }
        }
        let mut products = HashMap::new();
        for p in &table.products {
            let (a, b) = (lookup(&p.a)?, lookup(&p.b)?);
            let mut rep = Rep::new();
            for t in &p.out {
                rep.add_term(lookup(&t.c)?, number(&t.mult, "multiplicity")?);
            }
            if rep.is_empty() {
                return Err(Error::Schema(format!("product {} ⊗ {} is empty", p.a, p.b)));
            }
            if products.insert((a, b), rep).is_some() {
                return Err(Error::Schema(format!(
                    "duplicate product {} ⊗ {}",
                    p.a, p.b
                )));
            }
        }
        Ok(TableBackend {
            name: table.name.clone(),
            unit,
            order,
            ids,
            dims,
            duals,
            products,
        })
    }

    pub fn labels(&self) -> &[Label] {
        &self.order
    }
}

impl FusionBackend for TableBackend {
    fn name(&self) -> &str {
        &self.name
    }

    fn unit(&self) -> Label {
        self.unit.clone()
    }

    fn recognizes(&self, label: &Label) -> bool {
        self.dims.contains_key(label)
    }

    fn decompose(&self, a: &Label, b: &Label) -> Result<Rep> {
        self.products
            .get(&(a.clone(), b.clone()))
            .cloned()
            .ok_or_else(|| Error::MissingProduct(a.to_string(), b.to_string(), self.name.clone()))
    }

    fn dim(&self, a: &Label) -> Result<BigUint> {
        self.dims
            .get(a)
            .cloned()
            .ok_or_else(|| Error::UnknownLabel(a.to_string(), self.name.clone()))
    }

    fn dual(&self, a: &Label) -> Option<Label> {
        self.duals.get(a).cloned()
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        let text = text.trim();
        if let Some(l) = self.ids.get(text) {
            return Ok(l.clone());
        }
        match Label::parse_weight(text) {
            Some(w) if self.dims.contains_key(&w) => Ok(w),
            _ => Err(Error::UnknownLabel(text.to_string(), self.name.clone())),
        }
    }

    fn sample_labels(&self, count: usize) -> Vec<Label> {
        self.order.iter().take(count).cloned().collect()
    }
}

/// Reads a table, checks the unit rows and the semiring axioms on every
/// defined product, and returns a ready backend.
pub fn parse_fusion_table(document: &[u8]) -> Result<Fusion> {
    let table: FusionTable =
        serde_json::from_slice(document).map_err(|e| Error::Schema(e.to_string()))?;
    fusion_from_table(&table)
}

pub fn fusion_from_table(table: &FusionTable) -> Result<Fusion> {
    let backend = TableBackend::from_table(table)?;
    let unit = backend.unit();
    for x in backend.labels() {
        for (a, b) in [(&unit, x), (x, &unit)] {
            if backend.decompose(a, b).is_err() {
                return Err(Error::Validation(format!("missing unit row: {a} ⊗ {b}")));
            }
        }
    }
    let n = backend.labels().len();
    let fusion = Fusion::new(backend);
    let report = validate_backend(&fusion, n);
    if let Some(msg) = report.first_failure() {
        return Err(Error::Validation(msg));
    }
    Ok(fusion)
}

/// Table of `fusion` restricted to `labels`: every product whose
/// constituents all lie in `labels` is recorded.
pub fn dump_table(fusion: &Fusion, labels: &[Label]) -> Result<FusionTable> {
    let set: BTreeSet<&Label> = labels.iter().collect();
    let mut entries = Vec::new();
    for l in labels {
        entries.push(LabelEntry {
            id: l.to_string(),
            dim: fusion.dim(l)?.to_string(),
            dual: fusion
                .backend()
                .dual(l)
                .filter(|d| set.contains(d))
                .map(|d| d.to_string()),
        });
    }
    let mut products = Vec::new();
    for a in labels {
        for b in labels {
            let p = fusion.decompose(a, b)?;
            if p.support().all(|c| set.contains(c)) {
                products.push(ProductEntry {
                    a: a.to_string(),
                    b: b.to_string(),
                    out: p
                        .iter()
                        .map(|(c, m)| Term {
                            c: c.to_string(),
                            mult: m.to_string(),
                        })
                        .collect(),
                });
            }
        }
    }
    Ok(FusionTable {
        name: format!("{}-table", fusion.name()),
        unit: fusion.unit().to_string(),
        labels: entries,
        products,
    })
}

/// Checks that `mapping` is a semiring isomorphism on the first `budget`
/// labels of `b1`: the unit goes to the unit and fusion commutes with the
/// mapping on every pair defined in `b1` whose constituents are mapped.
/// The witness is the number of pairs compared.
pub fn verify_fusion_isomorphism(
    b1: &Fusion,
    b2: &Fusion,
    mapping: &BTreeMap<Label, Label>,
    budget: usize,
) -> Result<TriState<usize>> {
    let labels = b1.backend().sample_labels(budget);
    for l in &labels {
        if !mapping.contains_key(l) {
            return Err(Error::UnmappedLabel(l.to_string()));
        }
    }
    let unit1 = b1.unit();
    let image_unit = mapping
        .get(&unit1)
        .ok_or_else(|| Error::UnmappedLabel(unit1.to_string()))?;
    if *image_unit != b2.unit() {
        return Ok(TriState::Fails(format!(
            "unit {unit1} ↦ {image_unit}, expected {}",
            b2.unit()
        )));
    }
    let mut checked = 0;
    for a in &labels {
        for b in &labels {
            let p1 = match b1.decompose(a, b) {
                Ok(p) => p,
                Err(Error::MissingProduct(..)) => continue,
                Err(e) => return Err(e),
            };
            let Some(image) = p1
                .iter()
                .map(|(c, m)| mapping.get(c).map(|d| (d.clone(), m.clone())))
                .collect::<Option<Rep>>()
            else {
                continue;
            };
            let (ma, mb) = (&mapping[a], &mapping[b]);
            let p2 = match b2.decompose(ma, mb) {
                Ok(p) => p,
                Err(Error::MissingProduct(..)) => {
                    return Ok(TriState::Fails(format!(
                        "pair ({a}, {b}): {ma} ⊗ {mb} undefined in {}",
                        b2.name()
                    )))
                }
                Err(e) => return Err(e),
            };
            if p2 != image {
                return Ok(TriState::Fails(format!(
                    "pair ({a}, {b}): image of {a} ⊗ {b} is {image} but {ma} ⊗ {mb} = {p2}"
                )));
            }
            checked += 1;
        }
    }
    Ok(TriState::Holds(checked))
}

/// `l ↦ l` on the first `count` labels of `fusion`.
pub fn identity_mapping(fusion: &Fusion, count: usize) -> BTreeMap<Label, Label> {
    fusion
        .backend()
        .sample_labels(count)
        .into_iter()
        .map(|l| (l.clone(), l))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Su2;

    fn su2_labels(n: u32) -> Vec<Label> {
        (0..=n).map(|k| Label::weight([k])).collect()
    }

    fn su2_table(n: u32) -> FusionTable {
        dump_table(&Fusion::new(Su2), &su2_labels(n)).unwrap()
    }

    #[test]
    fn round_trip_agrees_with_builtin() {
        let json = serde_json::to_vec(&su2_table(12)).unwrap();
        let t = parse_fusion_table(&json).unwrap();
        let f = Fusion::new(Su2);
        for a in su2_labels(6) {
            for b in su2_labels(6) {
                assert_eq!(t.decompose(&a, &b).unwrap(), f.decompose(&a, &b).unwrap());
            }
        }
        assert!(matches!(
            t.decompose(&Label::weight([12]), &Label::weight([12])),
            Err(Error::MissingProduct(..))
        ));
    }

    #[test]
    fn missing_unit_row_rejected() {
        let mut table = su2_table(4);
        table.products.retain(|p| !(p.a == "(0)" && p.b == "(3)"));
        let err = fusion_from_table(&table).unwrap_err();
        assert!(
            matches!(err, Error::Validation(ref m) if m.contains("unit")),
            "{err}"
        );
    }

    #[test]
    fn non_associative_triple_named() {
        let mut table = su2_table(4);
        // (1) ⊗ (1) = (2) only: dimensions and associativity both break
        for p in &mut table.products {
            if p.a == "(1)" && p.b == "(1)" {
                p.out = vec![Term {
                    c: "(0)".into(),
                    mult: "4".into(),
                }];
            }
        }
        let err = fusion_from_table(&table).unwrap_err();
        let Error::Validation(msg) = err else {
            panic!("{err}")
        };
        assert!(msg.contains("non-associative triple (("), "{msg}");
    }

    #[test]
    fn dimension_mismatch_flagged() {
        let mut table = su2_table(4);
        table.labels[4].dim = "6".into();
        let err = fusion_from_table(&table).unwrap_err();
        assert!(
            matches!(err, Error::Validation(ref m) if m.contains("dimension")),
            "{err}"
        );
    }

    #[test]
    fn schema_violations() {
        assert!(matches!(
            parse_fusion_table(b"{\"name\":1}"),
            Err(Error::Schema(_))
        ));
        let mut v = serde_json::to_value(su2_table(2)).unwrap();
        v["extra"] = serde_json::json!(1);
        assert!(matches!(
            parse_fusion_table(v.to_string().as_bytes()),
            Err(Error::Schema(_))
        ));
        let mut table = su2_table(2);
        table.unit = "(9)".into();
        assert!(matches!(fusion_from_table(&table), Err(Error::Schema(_))));
    }

    #[test]
    fn isomorphism_checks() {
        let f = Fusion::new(Su2);
        let id = identity_mapping(&f, 8);
        assert!(verify_fusion_isomorphism(&f, &f, &id, 8).unwrap().holds());

        let mut swap = id.clone();
        swap.insert(Label::weight([1]), Label::weight([3]));
        swap.insert(Label::weight([3]), Label::weight([1]));
        let r = verify_fusion_isomorphism(&f, &f, &swap, 4).unwrap();
        let TriState::Fails(msg) = r else {
            panic!("{r:?}")
        };
        assert!(msg.starts_with("pair ((1), (1))"), "{msg}");

        let renamed = su2_table(10).renamed(|id| format!("V{}", &id[1..id.len() - 1]));
        let t = fusion_from_table(&renamed).unwrap();
        let map: BTreeMap<Label, Label> = su2_labels(10)
            .into_iter()
            .enumerate()
            .map(|(k, l)| (Label::name(format!("V{k}")), l))
            .collect();
        assert!(verify_fusion_isomorphism(&t, &f, &map, 11).unwrap().holds());
        let partial: BTreeMap<Label, Label> = map.into_iter().take(3).collect();
        assert!(matches!(
            verify_fusion_isomorphism(&t, &f, &partial, 11),
            Err(Error::UnmappedLabel(_))
        ));
    }
}
