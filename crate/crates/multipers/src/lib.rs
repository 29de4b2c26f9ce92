//! Exact-arithmetic engine for multiparameter persistence.
//!
//! The crate turns finite multifiltered simplicial complexes into `n`-graded
//! persistence modules over `F_p` or `Q`, computes minimal free presentations
//! (the type pair `(xi0, xi1)`), checks the tensor-condition and the relation
//! and framed family conditions, computes barcodes and the rank invariant in
//! one parameter, and brute-forces orbit spaces of framed families over small
//! prime fields.
//!
//! Entry points, roughly bottom-up:
//!
//! - [`field`] / [`matrix`]: exact dense linear algebra over `F_p` and `Q`.
//! - [`grading`]: degrees, multisets, free graded modules, GL block patterns.
//! - [`complex`]: multifiltered complexes, parsing, simplicial homology.
//! - [`module`]: finite-grid persistence modules and their builders.
//! - [`presentation`]: minimal generators, free hulls, minimal presentations,
//!   the tensor-condition, and iterated resolutions.
//! - [`family`]: relation families, framed families, and their verification.
//! - [`invariants`]: barcodes, the rank invariant, and their equivalence.
//! - [`moduli`]: Grassmannian enumeration and orbit counting over `F_q`.
//! - [`io`]: the JSON and text formats shared with the command-line tool.
//!
//! The `examples/` directory contains one runnable program per capability;
//! `cargo run --example minimal_presentation` is a good starting point.

pub mod complex;
pub mod error;
pub mod family;
pub mod field;
pub mod grading;
pub mod invariants;
pub mod io;
pub mod matrix;
pub mod moduli;
pub mod module;
pub mod presentation;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use grading::{Degree, FreeModule, Multiset};
pub use module::PersistenceModule;
