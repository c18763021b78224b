//! Construction and certification of oriented semiregular representations.
//!
//! The crate builds finite groups as explicit multiplication tables,
//! assembles m-Cayley digraphs from connection-set families, computes full
//! digraph automorphism groups by individualization-refinement, and runs
//! exhaustive searches that certify existence or nonexistence of oriented
//! m-semiregular representations for the small-group families where the
//! question is decidable at desk scale.

pub mod aut;
pub mod catalog;
pub mod cert;
pub mod constructions;
pub mod digraph;
pub mod group;
pub mod mcayley;
pub mod perm;
pub mod search;

pub use aut::{automorphism_group, check_omsr, OmsrVerdict};
pub use digraph::Digraph;
pub use group::{Elem, ElemSet, FiniteGroup};
pub use mcayley::ConnectionSets;
pub use perm::{Perm, PermGroup};

/// Version string recorded in certificates.
pub const ENGINE_VERSION: &str = concat!("omsr-core/", env!("CARGO_PKG_VERSION"));
