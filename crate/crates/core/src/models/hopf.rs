use nalgebra::{Matrix3, Matrix4, Vector4};

use crate::geometry::ChartPoint;
use crate::jet::Jet3;
use crate::{Error, Result};

/// A point of the unit three-sphere in R⁴.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct S3Point(Vector4<f64>);

impl S3Point {
    pub const DEFAULT_TOL: f64 = 1e-12;

    pub fn new(y: Vector4<f64>) -> Result<Self> {
        let deviation = (y.norm() - 1.0).abs();
        if deviation > Self::DEFAULT_TOL {
            return Err(Error::NotOnSphere { deviation });
        }
        Ok(Self(y))
    }

    pub fn normalized(y: Vector4<f64>) -> Self {
        Self(y.normalize())
    }

    /// `(cos η cos ξ₁, cos η sin ξ₁, sin η cos ξ₂, sin η sin ξ₂)`.
    pub fn from_hopf(q: &ChartPoint) -> Self {
        Self(hopf(q))
    }

    /// Hopf coordinates with `η ∈ [0, π/2]` and `ξ₁, ξ₂ ∈ [0, 2π)`.
    pub fn to_hopf(&self) -> ChartPoint {
        let y = &self.0;
        let tau = std::f64::consts::TAU;
        let eta = y[2].hypot(y[3]).atan2(y[0].hypot(y[1]));
        let wrap = |a: f64| {
            let w = a.rem_euclid(tau);
            if w >= tau {
                0.0
            } else {
                w
            }
        };
        ChartPoint::new(eta, wrap(y[1].atan2(y[0])), wrap(y[3].atan2(y[2])))
    }

    pub fn coords(&self) -> &Vector4<f64> {
        &self.0
    }
}

pub fn hopf(q: &ChartPoint) -> Vector4<f64> {
    let [eta, a, b] = q.0;
    let (se, ce) = eta.sin_cos();
    Vector4::new(ce * a.cos(), ce * a.sin(), se * b.cos(), se * b.sin())
}

/// The Hopf map as jets of the coordinate functions at `q`.
pub fn hopf_jet(q: &ChartPoint) -> [Jet3; 4] {
    let [eta, a, b] = q.0;
    let eta = Jet3::variable(eta, 0);
    let a = Jet3::variable(a, 1);
    let b = Jet3::variable(b, 2);
    let (ce, se) = (eta.cos(), eta.sin());
    [ce * a.cos(), ce * a.sin(), se * b.cos(), se * b.sin()]
}

/// Matrices `A_i` with `X_i(y) = A_i y` for the frame fields
/// `X₁ = (y₂, −y₁, y₄, −y₃)`, `X₂ = (y₃, −y₄, −y₁, y₂)`, `X₃ = (y₄, y₃, −y₂, −y₁)`.
pub fn frame_field_matrices() -> [Matrix4<f64>; 3] {
    #[rustfmt::skip]
    let x1 = Matrix4::new(
        0.0, 1.0, 0.0, 0.0,
        -1.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        0.0, 0.0, -1.0, 0.0,
    );
    #[rustfmt::skip]
    let x2 = Matrix4::new(
        0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, 0.0, -1.0,
        -1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
    );
    #[rustfmt::skip]
    let x3 = Matrix4::new(
        0.0, 0.0, 0.0, 1.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, -1.0, 0.0, 0.0,
        -1.0, 0.0, 0.0, 0.0,
    );
    [x1, x2, x3]
}

pub fn frame_fields_at(y: &Vector4<f64>) -> [Vector4<f64>; 3] {
    let m = frame_field_matrices();
    [m[0] * y, m[1] * y, m[2] * y]
}

/// Coordinate vectors `∂_η y`, `∂_ξ₁ y`, `∂_ξ₂ y`; they are mutually orthogonal
/// with lengths `1`, `cos η`, `sin η`.
pub fn coordinate_vectors(q: &ChartPoint) -> [Vector4<f64>; 3] {
    let [eta, a, b] = q.0;
    let (se, ce) = eta.sin_cos();
    let (sa, ca) = a.sin_cos();
    let (sb, cb) = b.sin_cos();
    [
        Vector4::new(-se * ca, -se * sa, ce * cb, ce * sb),
        Vector4::new(-ce * sa, ce * ca, 0.0, 0.0),
        Vector4::new(0.0, 0.0, -se * sb, se * cb),
    ]
}

/// Chart coefficients of a tangent vector `v` of S³ at `hopf(q)`; undefined on
/// the poles `η ∈ {0, π/2}`.
pub fn chart_coefficients(q: &ChartPoint, v: &Vector4<f64>) -> [f64; 3] {
    let d = coordinate_vectors(q);
    std::array::from_fn(|a| v.dot(&d[a]) / d[a].norm_squared())
}

/// Rows are the chart coefficients of `s_i X_i` at `q`.
pub fn scaled_frame_coefficients(q: &ChartPoint, scales: &[f64; 3]) -> Matrix3<f64> {
    let x = frame_fields_at(&hopf(q));
    let mut m = Matrix3::zeros();
    for i in 0..3 {
        let c = chart_coefficients(q, &(x[i] * scales[i]));
        for a in 0..3 {
            m[(i, a)] = c[a];
        }
    }
    m
}
