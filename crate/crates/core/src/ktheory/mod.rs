//! Exact integer linear algebra and the K-theory of fixed-point algebras.
//!
//! `K₀` is the inductive limit of `Q_L = coker(φ − ι)` at level `L`, where
//! `φ` tensors by `α` and `ι` includes labels of level `L−1` into level
//! `L`. `K₁` is bounded by the kernels of the same maps.

mod abelian;
mod matrix;
mod pimsner;
mod snf;

pub use abelian::{
    abs_det, cokernel_presentation, group_hom, kernel_basis, AbelianGroupPresentation, GroupHom,
};
pub use matrix::IntegerMatrix;
pub use pimsner::{
    induced_colimit_map, k_theory_of_fixed_point, pimsner_relation_matrix,
    relation_matrix_from_diagram, InducedMap, KTheoryReport, LevelReport, Verdict,
};
pub use snf::{smith_normal_form, SNFResult};
