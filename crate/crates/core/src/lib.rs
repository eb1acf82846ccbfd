//! Unique sink orientations of hypercubes.
//!
//! Orientations are stored as outmaps: vertex `V ⊆ [n]` is a bitmask (dimension `i`
//! is bit `i - 1`) and `φ(V)` is the set of dimensions along which edges leave `V`.

pub mod analysis;
pub mod constructions;
pub mod cube;
pub mod error;
pub mod iso;
pub mod lcp;
pub mod lgraph;
pub mod linalg;
pub mod random;

pub use analysis::{
    find_pseudo_cycle, global_sink, global_source, holt_klee, is_pseudo_uso, is_uso,
    longest_directed_path_length, HoltKleeReport, PseudoCycleWitness,
};
pub use cube::{Automorphism, DimSet, EdgeDirection, Face, OutMap, Permutation};
pub use error::{Result, UsoError};
pub use iso::{are_isomorphic, canonical_form, census, exists_property_l_copy, IsoClassRecord};
pub use lcp::{dcube_outmap, pcube_outmap};
pub use lgraph::{has_property_l, lgraph, LGraph, PropertyLReport, PropertyLWitness};
pub use linalg::{Rational, RationalMatrix};
