//! Exact computations on fusion rules of compact quantum groups: tensor
//! powers, Bratteli diagrams of the AF core, the conditions (C1)–(C3), chain
//! groups, and K-theory of fixed-point algebras of Cuntz algebras through
//! Smith normal forms.

pub mod bratteli;
pub mod conditions;
pub mod error;
pub mod fusion;
pub mod ktheory;
pub mod label;
pub mod lie;
pub mod rep;
pub mod table;

pub use bratteli::{build_bratteli, BratteliDiagram, TransitionMatrix};
pub use conditions::{
    chain_group, check_c1, check_c2, check_c3, rebase_exponent, ChainGroupResult, IsoHint, TriState,
};
pub use error::{Error, Result};
pub use fusion::{validate_backend, Fusion, FusionBackend, Grade, ValidationReport};
pub use ktheory::{
    k_theory_of_fixed_point, AbelianGroupPresentation, IntegerMatrix, KTheoryReport,
};
pub use label::Label;
pub use lie::backend_from_spec;
pub use rep::Rep;
pub use table::{parse_fusion_table, verify_fusion_isomorphism, FusionTable};
