//! Symmetric quandles built from signed permutation groups, with exact
//! symmetric quandle homology, cocycle invariants and knot colorings.

pub mod error;
pub mod group;
pub mod homology;
pub mod knot;
pub mod linalg;
pub mod quandle;
pub mod signed_perm;

pub use error::{Error, Result};
pub use group::{build_g, GeneratedGroup, NormalForm, Prefix, RightCoset, SignedDihedralGroup};
pub use quandle::{build_tilde_r, FiniteQuandle, GoodInvolution, QuandleHom, TildeDihedral};
pub use signed_perm::SignedPermutation;
