//! Labels of irreducible representations.

use std::fmt;

/// Canonical name of an irreducible representation.
///
/// Two labels denoting the same irreducible are equal as values, and the
/// derived ordering gives every report a deterministic iteration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// A `U(1)` charge, displayed as a bare integer.
    Int(i64),
    /// A tuple of non-negative integers, displayed `(a1,...,ak)`.
    /// Used for `SU(2)` highest weights `(n)` and `SU(N)` Dynkin labels.
    Weight(Vec<u32>),
    /// Any other name, displayed verbatim.
    Name(String),
}

impl Label {
    pub fn weight(w: impl Into<Vec<u32>>) -> Self {
        Label::Weight(w.into())
    }

    pub fn name(s: impl Into<String>) -> Self {
        Label::Name(s.into())
    }

    /// Interprets an identifier from an ingested table.
    ///
    /// Identifiers that are the canonical display of an integer or weight
    /// become that label, so a dumped builtin table reads back to labels
    /// identical to the builtin ones; everything else is kept as a name.
    pub fn from_id(id: &str) -> Self {
        if let Some(label) =
            Self::parse_weight(id).or_else(|| id.parse::<i64>().ok().map(Label::Int))
        {
            if label.to_string() == id {
                return label;
            }
        }
        Label::Name(id.to_string())
    }

    /// Parses `(a1,...,ak)` with non-negative entries, whitespace allowed.
    pub fn parse_weight(s: &str) -> Option<Label> {
        let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
        let entries = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().ok())
            .collect::<Option<Vec<_>>>()?;
        Some(Label::Weight(entries))
    }

    pub fn as_weight(&self) -> Option<&[u32]> {
        match self {
            Label::Weight(w) => Some(w),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Label::Int(n) => Some(*n),
            _ => None,
        }
    }
}

/// Serialized as its display form.
impl serde::Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(n) => write!(f, "{n}"),
            Label::Weight(w) => {
                f.write_str("(")?;
                for (i, a) in w.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Label::Name(s) => f.write_str(s),
        }
    }
}
