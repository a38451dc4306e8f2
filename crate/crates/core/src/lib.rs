//! Exact computations for locally finite derivations on polynomial rings
//! over the rationals.
//!
//! A derivation `D` is locally finite at `p` when the iterates `D^n(p)` span
//! a finite-dimensional space. On such elements this crate computes the
//! generalized eigenspace decomposition `p = sum p_lambda`, heights,
//! nilpotence certificates, truncated exponential series, and checks the
//! Euler derivation on invariant rings of finite linear groups.

pub mod derivation;
pub mod eigenvalue;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod spectral;
pub mod verify;

pub use derivation::{exp_truncated, Derivation, DerivationKind, ScalarSeries, TruncatedSeries};
pub use eigenvalue::Eigenvalue;
pub use error::{Error, Result};
pub use linalg::{QMatrix, RootMultiset, UniPoly};
pub use poly::{Monomial, Poly, Ring};
pub use rational::Rational;
pub use spectral::{
    decompose_diagonal, decompose_element, is_algebraic_element, is_locally_nilpotent, is_nilpotent_element,
    krylov_space, mu_height, spectrum_and_monoid, Algebraicity, Cap, Caps, Decomposition, KrylovSpace, LocalNilpotence,
    MuHeight, NilpotenceVerdict, Part, SpectralWitness, Spectrum,
};
