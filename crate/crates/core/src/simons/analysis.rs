use nalgebra::Matrix3;

use super::tensors::{f_tensor, j_parallel_defect, levi_civita, t_tensor_unchecked, TTensorPacket};
use crate::canonical::{canonical_basis, commutator_invariant_direct, CanonicalData, HMatrices};
use crate::cayley::MulTable;
use crate::geometry::{curvature, evaluate, ChartPoint, CurvaturePacket, EvalOptions, Immersion, NablaH, Sff, Tensor3};
use crate::{Result, Tolerances};

/// `‖h‖² − 5/4 − (3/2)Θ²`.
pub fn bracket(hsq: f64, theta: f64) -> f64 {
    hsq - 1.25 - 1.5 * theta * theta
}

/// `‖h‖²(‖h‖² − 5/4 − (3/2)Θ²)`, the pointwise integrand.
pub fn integrand(hsq: f64, theta: f64) -> f64 {
    hsq * bracket(hsq, theta)
}

/// Invariants of a second fundamental form that need no derivatives.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FormAnalysis {
    pub hsq: f64,
    pub theta: f64,
    /// `None` when the normal form could not be reconstructed.
    pub canonical: Option<CanonicalData>,
    pub curvature: CurvaturePacket,
    /// `Σ N([H_i, H_j]) + Σ S_ij²`
    pub q: f64,
    pub f_sq: f64,
    pub integrand: f64,
    pub symmetry_residual: f64,
    pub trace_residual: f64,
}

pub fn analyze_form(sff: &Sff, g_normal: &Tensor3, tol: &Tolerances) -> FormAnalysis {
    let canonical = canonical_basis(sff, tol).ok();
    let theta = match &canonical {
        Some(c) => c.theta,
        None => crate::canonical::maximize_theta(sff).theta,
    };
    let hsq = sff.norm_sq();
    let f = f_tensor(sff, g_normal);
    FormAnalysis {
        hsq,
        theta,
        canonical,
        curvature: curvature(sff),
        q: commutator_invariant_direct(&HMatrices::from_sff(sff)).q,
        f_sq: f.iter().flatten().flatten().flatten().map(|v| v * v).sum(),
        integrand: integrand(hsq, theta),
        symmetry_residual: sff.symmetry_residual(),
        trace_residual: sff.trace_residual(),
    }
}

/// Form invariants for pointwise data given in a positively oriented
/// Lagrangian frame.
pub fn analyze_pointwise(sff: &Sff, tol: &Tolerances) -> FormAnalysis {
    analyze_form(sff, &levi_civita(), tol)
}

/// Everything computable at one chart point of an immersion.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PointAnalysis {
    pub point: ChartPoint,
    pub form: FormAnalysis,
    pub sff: Sff,
    pub nabla: NablaH,
    pub tensors: TTensorPacket,
    pub j_defect: f64,
    /// Symmetry of `h_{ij,k}` in `(i, j)` and in `(j, k)`.
    pub codazzi_residual: f64,
    /// `g((∇h)(W,X,Z), JY) − g((∇h)(W,X,Y), JZ) − g(h(W,X), G(Y,Z))`
    pub structure_residual: f64,
    pub orthonormality_residual: f64,
    pub lagrangian_residual: f64,
    pub g_tangent_residual: f64,
    /// `g(G(e₁, e₂), Je₃)`
    pub volume_form: f64,
    pub sqrt_det_metric: f64,
    /// Chart-basis coefficients of the frame.
    pub frame_coefficients: Matrix3<f64>,
}

impl PointAnalysis {
    /// `‖∇h‖² + 3‖h‖² − Q`, the right-hand side of the Laplacian formula
    /// for `½Δ‖h‖²`.
    pub fn laplacian_rhs(&self) -> f64 {
        self.tensors.nabla_sq + 3.0 * self.form.hsq - self.form.q
    }
}

pub fn analyze_point<I: Immersion + ?Sized>(
    table: &MulTable,
    imm: &I,
    q: &ChartPoint,
    basis: Option<Matrix3<f64>>,
    tol: &Tolerances,
) -> Result<PointAnalysis> {
    let opts = EvalOptions { with_nabla: true, basis, tol: *tol };
    let pg = evaluate(table, imm, q, &opts)?;
    let nabla = pg.nabla.unwrap_or_default();
    let form = analyze_form(&pg.sff, &pg.frame.g_normal, tol);
    let f = f_tensor(&pg.sff, &pg.frame.g_normal);
    let tensors = t_tensor_unchecked(&nabla, &f, &pg.sff);
    Ok(PointAnalysis {
        point: *q,
        form,
        sff: pg.sff,
        tensors,
        j_defect: j_parallel_defect(&nabla),
        codazzi_residual: nabla.codazzi_residual(),
        structure_residual: nabla.structure_residual(&pg.sff, &pg.frame.g_normal),
        nabla,
        orthonormality_residual: pg.frame.orthonormality_residual,
        lagrangian_residual: pg.frame.lagrangian_residual,
        g_tangent_residual: pg.frame.g_tangent_residual,
        volume_form: pg.frame.volume_form(),
        sqrt_det_metric: pg.frame.sqrt_det_metric(),
        frame_coefficients: pg.frame.coefficients,
    })
}
