//! Finite involutive commutative two-valued groups.
//!
//! Product tables and the axiom verifier live in [`group`]; the principal,
//! unipotent and special families in [`constructions`]; structural analysis
//! in [`structure`]; quasi-cocycles on Boolean groups in [`cocycle`]; the
//! classification and isomorphism decision in [`classify`]; the complex
//! two-valued addition law in [`formal`].

pub mod abelian;
pub mod classify;
pub mod cocycle;
pub mod constructions;
pub mod error;
pub mod formal;
pub mod gf2;
pub mod group;
pub mod structure;

pub use classify::{classify, ClassLabel};
pub use error::{Error, Result};
pub use group::{ElementId, Multiset, Pair, TwoValuedGroup, ValidationReport};
