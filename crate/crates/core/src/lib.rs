//! Exact computer algebra for Clifford algebras of degenerate quadratic forms.
//!
//! Everything is computed over the Gaussian rationals `Q(i)` with
//! arbitrary-precision arithmetic; there is no floating point anywhere.
//! The main pipeline is
//!
//! * [`qspace`] — diagonal quadratic spaces and their isotropic subspaces,
//! * [`clifford`] — Clifford algebras `Cl(q)`, even parts, graded left
//!   ideals `I^W`, graded tensor products and the explicit Morita
//!   reduction `Cl0(q ⊥ U) ≅ M2(Cl0(q))`,
//! * [`findim`] — radicals, Wedderburn blocks, primitive idempotents,
//!   indecomposable projectives and simples of a finite-dimensional algebra,
//! * [`modules`] / [`resolution`] — left modules, Hom spaces, Krull–Schmidt
//!   decomposition, periodic projective resolutions, Ext tables and Yoneda
//!   products,
//! * [`spinor`] / [`cohomology`] — matrix factorizations of the quadric,
//!   fiber ranks and decompositions of spinor sheaves, and sheaf cohomology
//!   tables computed from the defining exact sequences.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to share across threads.

pub mod algebra;
pub mod clifford;
pub mod cohomology;
pub mod error;
pub mod findim;
pub mod graded;
pub mod linalg;
pub mod modules;
pub mod qspace;
pub mod registry;
pub mod resolution;
pub mod scalar;
pub mod spinor;

pub use algebra::{Algebra, AlgebraElement, AlgebraMorphism};
pub use error::Error;
pub use linalg::ExactMatrix;
pub use qspace::{IsotropicSubspace, QuadraticSpace};
pub use scalar::GaussianRational;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
