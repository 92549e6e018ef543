use nalgebra::{Matrix3, Vector3};

use super::chart::{jet, ChartPoint, Immersion, ImmersionJet};
use super::sff::Tensor3;
use crate::cayley::{apply_g, apply_j, MulTable, SpherePoint, Vec7};
use crate::{Error, Result, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum FrameSource {
    /// Global orthonormal frame fields supplied by the model.
    GlobalFields,
    /// Gram–Schmidt on a starting basis of chart vectors.
    GramSchmidt,
}

/// Adapted frame `{e₁, e₂, e₃, Je₁, Je₂, Je₃}` of a Lagrangian immersion at one
/// chart point, with the chart metric data needed downstream.
#[derive(Debug, Clone)]
pub struct FramePacket {
    pub point: ChartPoint,
    pub base: SpherePoint,
    pub e: [Vec7; 3],
    pub e_star: [Vec7; 3],
    /// Induced metric in the chart basis.
    pub metric: Matrix3<f64>,
    /// `christoffel[d][(a, b)] = Γ^d_ab` in the chart basis.
    pub christoffel: [Matrix3<f64>; 3],
    /// Row `i` holds the chart-basis coefficients of `e_i`.
    pub coefficients: Matrix3<f64>,
    /// `g_normal[i][j][l] = ⟨G(e_i, e_j), J e_l⟩`.
    pub g_normal: Tensor3,
    pub source: FrameSource,
    /// `max |⟨e_i, e_j⟩ − δ_ij|`
    pub orthonormality_residual: f64,
    /// `max |⟨J e_i, e_j⟩|`
    pub lagrangian_residual: f64,
    /// `max |⟨G(e_i, e_j), e_k⟩|`
    pub g_tangent_residual: f64,
}

impl FramePacket {
    /// `ω(e₁, e₂, e₃) = g(G(e₁, e₂), J e₃)`, which is ±1 on a Lagrangian frame.
    pub fn volume_form(&self) -> f64 {
        self.g_normal[0][1][2]
    }

    /// Ambient vector of frame coordinates `u`.
    pub fn tangent(&self, u: &Vector3<f64>) -> Vec7 {
        self.e[0] * u[0] + self.e[1] * u[1] + self.e[2] * u[2]
    }

    pub fn normal(&self, u: &Vector3<f64>) -> Vec7 {
        self.e_star[0] * u[0] + self.e_star[1] * u[1] + self.e_star[2] * u[2]
    }

    /// Frame coordinates of the tangent part of an ambient vector.
    pub fn tangent_coords(&self, v: &Vec7) -> Vector3<f64> {
        Vector3::from_fn(|i, _| self.e[i].dot(v))
    }

    pub fn sqrt_det_metric(&self) -> f64 {
        self.metric.determinant().max(0.0).sqrt()
    }
}

/// Frame at `q`, from global frame fields when the model has them.
pub fn frame<I: Immersion + ?Sized>(table: &MulTable, imm: &I, q: &ChartPoint) -> Result<FramePacket> {
    let j = jet(imm, q, 2)?;
    frame_from_jet(table, imm, q, &j, None, &Tolerances::default())
}

/// Frame at `q` by Gram–Schmidt on the rows of `basis` (chart coordinates),
/// ignoring any global frame fields.
pub fn frame_with_basis<I: Immersion + ?Sized>(
    table: &MulTable,
    imm: &I,
    q: &ChartPoint,
    basis: &Matrix3<f64>,
) -> Result<FramePacket> {
    let j = jet(imm, q, 2)?;
    frame_from_jet(table, imm, q, &j, Some(basis), &Tolerances::default())
}

// Relative size of the smallest metric eigenvalue below which the chart is
// treated as degenerate.
const DEGENERACY_RATIO: f64 = 1e-14;

pub fn frame_from_jet<I: Immersion + ?Sized>(
    table: &MulTable,
    imm: &I,
    q: &ChartPoint,
    jet: &ImmersionJet,
    basis: Option<&Matrix3<f64>>,
    tol: &Tolerances,
) -> Result<FramePacket> {
    let x = *jet.value();
    let norm_dev = (x.norm() - 1.0).abs();
    if norm_dev > tol.frame {
        return Err(Error::NotSpherical(norm_dev));
    }
    let base = SpherePoint::normalized(x);

    let metric = jet.metric();
    let eig = metric.symmetric_eigenvalues();
    let (lo, hi) = (eig.min(), eig.max());
    if !(lo > DEGENERACY_RATIO * hi) {
        return Err(Error::ChartDegenerate { point: q.0, distance: imm.domain().degeneracy_distance(q) });
    }
    let inv = metric
        .try_inverse()
        .ok_or(Error::ChartDegenerate { point: q.0, distance: imm.domain().degeneracy_distance(q) })?;

    let mut christoffel = [Matrix3::zeros(); 3];
    if jet.order >= 2 {
        // Γ^d_ab = g^{de} ⟨∂_a∂_b x, ∂_e x⟩
        let lowered = |a: usize, b: usize, e: usize| jet.d2(a, b).dot(jet.d1(e));
        for (d, gamma) in christoffel.iter_mut().enumerate() {
            *gamma = Matrix3::from_fn(|a, b| (0..3).map(|e| inv[(d, e)] * lowered(a, b, e)).sum());
        }
    }

    let (coefficients, source) = match (basis, imm.frame_fields(&q.0)) {
        (None, Some(c)) => (c, FrameSource::GlobalFields),
        (Some(b), _) => (gram_schmidt(&metric, b, q, imm)?, FrameSource::GramSchmidt),
        (None, None) => (gram_schmidt(&metric, &Matrix3::identity(), q, imm)?, FrameSource::GramSchmidt),
    };

    let e: [Vec7; 3] =
        std::array::from_fn(|i| (0..3).fold(Vec7::zeros(), |acc, a| acc + jet.d1(a) * coefficients[(i, a)]));
    let e_star: [Vec7; 3] = std::array::from_fn(|i| apply_j(table, &x, &e[i]));

    let mut orthonormality_residual: f64 = 0.0;
    let mut lagrangian_residual: f64 = 0.0;
    let mut g_tangent_residual: f64 = 0.0;
    let mut g_normal = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        orthonormality_residual = orthonormality_residual.max(e[i].dot(&x).abs());
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            orthonormality_residual = orthonormality_residual.max((e[i].dot(&e[j]) - delta).abs());
            lagrangian_residual = lagrangian_residual.max(e_star[i].dot(&e[j]).abs());
            let g = apply_g(table, &x, &e[i], &e[j]);
            for l in 0..3 {
                g_normal[i][j][l] = g.dot(&e_star[l]);
                g_tangent_residual = g_tangent_residual.max(g.dot(&e[l]).abs());
            }
        }
    }
    if lagrangian_residual > tol.lagrangian_reject {
        return Err(Error::NotLagrangian(lagrangian_residual));
    }

    Ok(FramePacket {
        point: *q,
        base,
        e,
        e_star,
        metric,
        christoffel,
        coefficients,
        g_normal,
        source,
        orthonormality_residual,
        lagrangian_residual,
        g_tangent_residual,
    })
}

/// Orthonormalises the rows of `start` with respect to `metric`.
fn gram_schmidt<I: Immersion + ?Sized>(
    metric: &Matrix3<f64>,
    start: &Matrix3<f64>,
    q: &ChartPoint,
    imm: &I,
) -> Result<Matrix3<f64>> {
    let inner = |u: &Vector3<f64>, v: &Vector3<f64>| (u.transpose() * metric * v)[0];
    let mut out = Matrix3::zeros();
    for i in 0..3 {
        let mut v: Vector3<f64> = start.row(i).transpose();
        // two passes keep the result orthonormal to roundoff
        for _ in 0..2 {
            for j in 0..i {
                let u: Vector3<f64> = out.row(j).transpose();
                v -= u * inner(&u, &v);
            }
        }
        let n = inner(&v, &v);
        if !(n > DEGENERACY_RATIO * metric.norm()) {
            return Err(Error::ChartDegenerate { point: q.0, distance: imm.domain().degeneracy_distance(q) });
        }
        out.set_row(i, &(v / n.sqrt()).transpose());
    }
    Ok(out)
}
