//! Computational geometry of Lagrangian submanifolds in the homogeneous
//! nearly Kähler six-sphere.
//!
//! The crate is organised bottom-up:
//!
//! - [`cayley`]: the cross product on R⁷, the almost complex structure `J`
//!   and the tensor `G = ∇̄J` on S⁶.
//! - [`jet`]: truncated multivariate Taylor arithmetic used for exact
//!   immersion derivatives.
//! - [`geometry`]: immersion jets, adapted Lagrangian frames, the second
//!   fundamental form, its covariant derivative, Gauss-equation curvature and
//!   a chart Laplace–Beltrami operator.
//! - [`models`]: the Dillen–Verstraelen–Vrancken Berger sphere, the totally
//!   geodesic three-sphere, polynomial immersions loaded from text and the
//!   pointwise reference data of the J-parallel classification.
//! - [`canonical`]: the Ejiri canonical basis, the cubic-form maximum `Θ` and
//!   the commutator invariants of the shape operators.
//! - [`simons`]: the tensors `F` and `𝕋`, the Laplacian identity for `‖h‖²`
//!   and quadrature of the Simons-type integrand over S³.

// Tensor code indexes several arrays per loop, and `!(r <= tol)` is how NaN fails a check.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod canonical;
pub mod cayley;
pub mod error;
pub mod geometry;
pub mod jet;
pub mod models;
pub mod simons;
pub mod tolerances;

mod par;

pub use error::{Error, Result};
pub use tolerances::Tolerances;
