//! Exact smoothness analysis for moduli spaces of quiver representations.
//!
//! The crate is organized bottom-up:
//!
//! - [`quiver`]: the quiver data model, dimension vectors and weights, text format.
//! - [`forms`]: the Ringel (Euler) bilinear form and the Tits form.
//! - [`classify`]: Dynkin / extended Dynkin / wild classification, decided twice
//!   (exact definiteness of the symmetrized form, and shape recognition).
//! - [`linalg`]: exact rational matrices (determinant, inverse, adjugate, kernel).
//! - [`doubling`]: vertex doubling `Q -> Q^v`, weight lifting, bipartification and
//!   the representation-level maps `iota`, `phi`, `psi`.
//! - [`stability`]: generic ext via Schofield's recursion, (semi)stability of
//!   dimension vectors, Schur roots and the doubling certificate.
//! - [`local`]: representation types, local quiver settings and smoothness verdicts.
//! - [`toric`]: thin moduli spaces through lattice flows.
//! - [`enumerate`]: exhaustive enumeration of small quivers up to isomorphism.
//!
//! Everything is exact; no floating point is used for any mathematical decision.

pub mod classify;
pub mod doubling;
pub mod enumerate;
mod error;
pub mod forms;
pub mod linalg;
pub mod local;
pub mod par;
pub mod quiver;
pub mod stability;
pub mod toric;

pub use classify::{classify, AffineType, DynkinType, GraphClass, GraphKind};
pub use doubling::{bipartify, double_vertex, sufficient_n, DoublingMap, Representation};
pub use error::{Error, Result};
pub use forms::{euler_form, tits_form};
pub use linalg::RatMatrix;
pub use local::{moduli_smooth, rep_types, singular_witness, LocalSetting, RepType, SmoothVerdict};
pub use par::Exec;
pub use quiver::{load_quiver, normalize_weight, DimVector, Quiver, Weight};
pub use stability::GenericExt;

/// Default cap on the number of lattice points `prod(alpha(i) + 1)` any single
/// enumeration may visit.
pub const DEFAULT_MAX_BOX: u64 = 1_000_000;
