//! A workbench for finite involutive idempotent integral near semirings.
//!
//! Algebras are stored as dense operation tables over `0..n`. Every engine in
//! this crate computes its answer by exhaustive evaluation over those tables,
//! so the results double as brute-force oracles for the structure theory of
//! Łukasiewicz near semirings: ideals versus congruence kernels, central
//! elements and direct decompositions, the MV-algebra translation, and the
//! Cantor–Bernstein construction on central intervals.

pub mod algebra;
pub mod axioms;
pub mod cb;
pub mod center;
pub mod cli;
pub mod config;
pub mod congruence;
pub mod corpus;
pub mod dot;
pub mod elemset;
pub mod error;
pub mod format;
pub mod ideal;
pub mod mv;
pub mod partition;
pub mod report;
pub mod search;
pub mod term;

pub use algebra::{find_isomorphism, leq, product, Element, FiniteAlgebra, Homomorphism};
pub use axioms::{check_axioms, AxiomReport, Class};
pub use config::Limits;
pub use elemset::ElementSet;
pub use error::{Error, Result};
pub use partition::Partition;
pub use term::Term;
