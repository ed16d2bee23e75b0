//! Exact solvers for matroid-constrained graph separation: independent vertex
//! (s,t)-cut, independent multiway cut, independent feedback vertex set and
//! independent odd cycle transversal, plus brute-force oracles.

pub mod cli;
pub mod cyclehit;
pub mod ffmatrix;
pub mod graph;
pub mod label;
pub mod matroid;
pub mod mwc;
pub mod oracle;
pub mod repfam;
pub mod stcut;

pub use label::{Label, LabelSet};
