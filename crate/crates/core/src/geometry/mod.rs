//! Immersions of a three-dimensional chart into S⁶ and their extrinsic
//! geometry.
//!
//! Everything is computed pointwise from an [`ImmersionJet`], the partial
//! derivatives of the immersion up to third order at one chart point:
//!
//! - first derivatives give the induced metric and the tangent frame,
//! - second derivatives give Christoffel symbols and the second fundamental
//!   form,
//! - third derivatives give the covariant derivative of the second
//!   fundamental form.

mod chart;
mod curvature;
mod frame;
mod laplacian;
mod sff;

pub use chart::{default_fd_step, fd_jet, jet, ChartDomain, ChartPoint, Degeneracy, FdJets, Immersion, ImmersionJet};
pub use curvature::{curvature, CurvaturePacket};
pub use frame::{frame, frame_from_jet, frame_with_basis, FramePacket, FrameSource};
pub use laplacian::{default_laplacian_step, laplace_beltrami, laplace_beltrami_with_metric};
pub use sff::{
    evaluate, evaluate_jet, nabla_h, second_fundamental_form, shape_operator, EvalOptions, NablaH, PointGeometry, Sff,
    Tensor3, Tensor4,
};
