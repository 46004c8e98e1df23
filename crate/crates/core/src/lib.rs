//! Verification kernel for the continuous field of quantum-SU(2) C*-algebras
//! with emphasis on the boundary point q = -1.
//!
//! The crate is organised around three layers:
//!
//! * **Exact symbolic layer** ([`scalar`], [`algebra`], [`hopf`], [`haar`]):
//!   elements of the universal *-algebra generated by `alpha`, `gamma` under
//!   the defining relations, stored in the normal-form monomial basis
//!   `eta(k,l,m) = alpha^k gamma^l gamma*^m` (with `alpha*^{-k}` for `k < 0`)
//!   over Gaussian-rational coefficients.  Multiplication, involution,
//!   coproduct and the Haar state are computed exactly — no floating point.
//! * **Geometric layer** ([`linalg`], [`geom`]): the matrix-function model of
//!   the q = -1 algebra inside `M_2(C(SU(2)))`, the Klein four-group action
//!   whose fixed points realise it, irreducible representations, orbits,
//!   intertwiners, separating elements and Haar quadrature on the 3-sphere.
//! * **Topological layer** ([`ktheory`], [`bundle`]): explicit projection and
//!   unitary witnesses for the K-groups (paths, loops, sphere unitaries, the
//!   degree-3 integral) and continuity evidence for the bundle of algebras as
//!   q runs through [-1, 0).
//!
//! [`report`] and [`verify`] package individual checks into deterministic
//! machine-readable verification records; the companion CLI exposes them.

pub mod algebra;
pub mod bundle;
pub mod error;
pub mod geom;
pub mod haar;
pub mod hopf;
pub mod ktheory;
pub mod linalg;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod verify;

pub use error::{CoreError, Result};
pub use scalar::{GaussianRational, QParam, Rat};
