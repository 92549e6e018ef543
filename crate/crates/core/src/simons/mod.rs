//! Simons-type integral inequality: the `F` and `𝕋` tensors, the Laplacian
//! formula for `‖h‖²`, and quadrature of
//! `∫ ‖h‖²(‖h‖² − 5/4 − (3/2)Θ²) dM` over built-in compact models.

mod analysis;
mod quadrature;
mod tensors;

pub use analysis::{analyze_form, analyze_point, analyze_pointwise, bracket, integrand, FormAnalysis, PointAnalysis};
pub use quadrature::{gauss_legendre, Node, QuadratureRule};
pub use tensors::{
    f_tensor, j_parallel_defect, levi_civita, nabla_h_ordered, t_tensor, t_tensor_unchecked, TTensorPacket, DEFECT_GRID,
};

use crate::canonical::{closed_forms, maximize_theta, remainder, CanonicalTuple};
use crate::cayley::MulTable;
use crate::geometry::{evaluate, laplace_beltrami, ChartPoint, EvalOptions, Immersion};
use crate::par::{map, pairwise_sum};
use crate::{Error, Result, Tolerances};

/// `‖𝕋‖² + 15/4‖h‖² − 3‖h‖⁴ + 9/2 Θ²‖h‖² + R`, the regrouped right-hand
/// side of the Laplacian formula in terms of the normal form.
pub fn regrouped_rhs(t: &CanonicalTuple, t_sq: f64) -> f64 {
    let hsq = closed_forms(t).hsq;
    let th = t.theta();
    t_sq + 3.75 * hsq - 3.0 * hsq * hsq + 4.5 * th * th * hsq + remainder(t)
}

/// `‖∇h‖² + 3‖h‖² − Q` with `‖h‖²` and `Q` from the closed forms.
pub fn laplacian_rhs_closed(t: &CanonicalTuple, nabla_sq: f64) -> f64 {
    let cf = closed_forms(t);
    nabla_sq + 3.0 * cf.hsq - cf.q
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct LaplacianCheck {
    pub point: ChartPoint,
    /// `Δ‖h‖²` by finite differences of the pipeline.
    pub laplacian: f64,
    /// `‖∇h‖² + 3‖h‖² − Q` with `Q` from the shape-operator matrices.
    pub rhs_direct: f64,
    /// Same with `‖h‖²` and `Q` from the closed forms of the normal form.
    pub rhs_closed: f64,
    /// Regrouped form in terms of `‖𝕋‖²`, `Θ` and the remainder `R`.
    pub rhs_regrouped: f64,
    pub nabla_sq: f64,
    pub q: f64,
    pub remainder: Option<f64>,
    /// `|½Δ‖h‖² − rhs_direct|`
    pub residual1: f64,
    /// `|rhs_direct − rhs_regrouped|`
    pub residual2: f64,
}

/// Compares `½Δ‖h‖²` with `‖∇h‖² + 3‖h‖² − Q` at `q`, and the latter with
/// its regrouping through the normal form.
pub fn laplacian_identity_check<I: Immersion + ?Sized>(
    table: &MulTable,
    imm: &I,
    q: &ChartPoint,
    step: Option<f64>,
    tol: &Tolerances,
) -> Result<LaplacianCheck> {
    let pa = analyze_point(table, imm, q, None, tol)?;
    let opts = EvalOptions { with_nabla: false, basis: None, tol: *tol };
    let field = |p: &ChartPoint| -> Result<f64> { Ok(evaluate(table, imm, p, &opts)?.sff.norm_sq()) };
    let laplacian = laplace_beltrami(imm, field, q, step)?;
    let rhs_direct = pa.laplacian_rhs();
    let (rhs_closed, rhs_regrouped, rem) = match &pa.form.canonical {
        Some(c) => (
            laplacian_rhs_closed(&c.tuple, pa.tensors.nabla_sq),
            regrouped_rhs(&c.tuple, pa.tensors.t_sq),
            Some(remainder(&c.tuple)),
        ),
        None => (f64::NAN, f64::NAN, None),
    };
    Ok(LaplacianCheck {
        point: *q,
        laplacian,
        rhs_direct,
        rhs_closed,
        rhs_regrouped,
        nabla_sq: pa.tensors.nabla_sq,
        q: pa.form.q,
        remainder: rem,
        residual1: (0.5 * laplacian - rhs_direct).abs(),
        residual2: (rhs_direct - rhs_regrouped).abs(),
    })
}

/// One quadrature node of the inequality integrand.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Sample {
    pub eta: f64,
    pub xi1: f64,
    pub xi2: f64,
    pub hsq: f64,
    pub theta: f64,
    pub integrand: f64,
    pub sqrt_det: f64,
}

impl Sample {
    pub const CSV_HEADER: [&'static str; 7] = ["eta", "xi1", "xi2", "hsq", "theta", "integrand", "sqrt_det_g"];

    pub fn csv_row(&self) -> [f64; 7] {
        [self.eta, self.xi1, self.xi2, self.hsq, self.theta, self.integrand, self.sqrt_det]
    }
}

/// Integrand value and measure density at one chart point.
pub fn sample_at<I: Immersion + ?Sized>(table: &MulTable, imm: &I, q: &ChartPoint, tol: &Tolerances) -> Result<Sample> {
    let opts = EvalOptions { with_nabla: false, basis: None, tol: *tol };
    let pg = evaluate(table, imm, q, &opts)?;
    let hsq = pg.sff.norm_sq();
    let theta = maximize_theta(&pg.sff).theta;
    Ok(Sample {
        eta: q.0[0],
        xi1: q.0[1],
        xi2: q.0[2],
        hsq,
        theta,
        integrand: integrand(hsq, theta),
        sqrt_det: pg.frame.sqrt_det_metric(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// `‖h‖² ≡ 0`.
    Geodesic,
    /// Integrand vanishes identically with `h ≠ 0`.
    #[serde(rename = "DVV-type")]
    DvvType,
    /// Integrand sup-norm between the equality and indeterminate tolerances.
    Indeterminate,
    /// Integral positive.
    Strict,
    /// Integral negative beyond tolerance.
    Violation,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Geodesic => "geodesic",
            Self::DvvType => "DVV-type",
            Self::Indeterminate => "indeterminate",
            Self::Strict => "strict",
            Self::Violation => "violation",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Refinement {
    pub rule: QuadratureRule,
    pub integral: f64,
    pub volume: f64,
    pub integral_delta: f64,
    /// Relative to the finer volume.
    pub volume_delta: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct InequalityReport {
    pub rule: QuadratureRule,
    pub integral: f64,
    pub abs_integral: f64,
    pub volume: f64,
    pub min: f64,
    pub max: f64,
    pub sup_norm: f64,
    pub sup_hsq: f64,
    pub classification: Classification,
    pub refinement: Refinement,
    #[serde(skip)]
    pub samples: Vec<Sample>,
}

struct Sums {
    integral: f64,
    abs_integral: f64,
    volume: f64,
}

fn integrate_samples(nodes: &[Node], samples: &[Sample]) -> Sums {
    let f: Vec<f64> = nodes.iter().zip(samples).map(|(n, s)| n.weight * s.sqrt_det * s.integrand).collect();
    let a: Vec<f64> = f.iter().map(|v| v.abs()).collect();
    let v: Vec<f64> = nodes.iter().zip(samples).map(|(n, s)| n.weight * s.sqrt_det).collect();
    Sums { integral: pairwise_sum(&f), abs_integral: pairwise_sum(&a), volume: pairwise_sum(&v) }
}

fn sample_rule<I: Immersion + Sync + ?Sized>(
    table: &MulTable,
    imm: &I,
    rule: &QuadratureRule,
    tol: &Tolerances,
) -> Result<(Vec<Node>, Vec<Sample>)> {
    let nodes = rule.nodes();
    let samples = map(&nodes, |n| sample_at(table, imm, &n.point, tol)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok((nodes, samples))
}

/// Classification from pointwise data and the integral.
pub fn classify(sup_hsq: f64, sup_norm: f64, integral: f64, tol: &Tolerances) -> Classification {
    if sup_hsq < tol.equality {
        Classification::Geodesic
    } else if sup_norm < tol.equality {
        Classification::DvvType
    } else if sup_norm < tol.indeterminate {
        Classification::Indeterminate
    } else if integral >= -tol.equality {
        Classification::Strict
    } else {
        Classification::Violation
    }
}

/// `∫ ‖h‖²(‖h‖² − 5/4 − (3/2)Θ²) √det g dη dξ₁ dξ₂` and the volume, checked
/// against the companion rule.
pub fn integrate_inequality<I: Immersion + Sync + ?Sized>(
    table: &MulTable,
    imm: &I,
    rule: &QuadratureRule,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let (nodes, samples) = sample_rule(table, imm, rule, tol)?;
    let fine = integrate_samples(&nodes, &samples);
    let coarse_rule = rule.companion();
    let (cn, cs) = sample_rule(table, imm, &coarse_rule, tol)?;
    let coarse = integrate_samples(&cn, &cs);

    let integral_delta = (fine.integral - coarse.integral).abs();
    let volume_delta = (fine.volume - coarse.volume).abs() / fine.volume.abs().max(f64::MIN_POSITIVE);
    if volume_delta > tol.refinement {
        return Err(Error::Resolution { quantity: "volume", delta: volume_delta, tolerance: tol.refinement });
    }
    let scale = fine.abs_integral.max(1.0);
    if integral_delta > tol.refinement * scale {
        return Err(Error::Resolution {
            quantity: "integral",
            delta: integral_delta,
            tolerance: tol.refinement * scale,
        });
    }

    let min = samples.iter().map(|s| s.integrand).fold(f64::INFINITY, f64::min);
    let max = samples.iter().map(|s| s.integrand).fold(f64::NEG_INFINITY, f64::max);
    let sup_norm = min.abs().max(max.abs());
    let sup_hsq = samples.iter().map(|s| s.hsq).fold(0.0, f64::max);
    Ok(InequalityReport {
        rule: *rule,
        integral: fine.integral,
        abs_integral: fine.abs_integral,
        volume: fine.volume,
        min,
        max,
        sup_norm,
        sup_hsq,
        classification: classify(sup_hsq, sup_norm, fine.integral, tol),
        refinement: Refinement {
            rule: coarse_rule,
            integral: coarse.integral,
            volume: coarse.volume,
            integral_delta,
            volume_delta,
        },
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::sff_from_tuple;
    use crate::models::{dvv_immersion, select_table, totally_geodesic_immersion};
    use std::f64::consts::PI;

    #[test]
    fn regrouping_matches_direct_rhs() {
        for t in [
            CanonicalTuple::new(0.3, 0.2, 0.1, -0.1),
            CanonicalTuple::new(1.0, -0.2, 0.5, 0.4),
            CanonicalTuple::new(0.0, 0.0, 0.0, 0.0),
        ] {
            let hsq = closed_forms(&t).hsq;
            // ‖𝕋‖² = 0 means ‖∇h‖² = ¾‖h‖²
            let a = laplacian_rhs_closed(&t, 0.75 * hsq);
            let b = regrouped_rhs(&t, 0.0);
            assert!((a - b).abs() < 1e-12 * a.abs().max(1.0), "{t:?}: {a} vs {b}");
        }
    }

    #[test]
    fn classification_thresholds() {
        let tol = Tolerances::default();
        assert_eq!(classify(0.0, 0.0, 0.0, &tol), Classification::Geodesic);
        assert_eq!(classify(3.0, 1e-12, 0.0, &tol), Classification::DvvType);
        assert_eq!(classify(3.0, 1e-6, 0.0, &tol), Classification::Indeterminate);
        assert_eq!(classify(3.0, 1.0, 2.0, &tol), Classification::Strict);
        assert_eq!(classify(3.0, 1.0, -2.0, &tol), Classification::Violation);
        assert_eq!(Classification::DvvType.to_string(), "DVV-type");
    }

    #[test]
    fn pointwise_dvv_bracket_vanishes() {
        let s = 5f64.sqrt() / 4.0;
        let fa = analyze_pointwise(&sff_from_tuple(&CanonicalTuple::new(s, s, 0.0, 0.0)), &Tolerances::default());
        assert!((fa.hsq - 25.0 / 8.0).abs() < 1e-14);
        assert!(bracket(fa.hsq, fa.theta).abs() < 1e-12);
        assert!((fa.q - 750.0 / 64.0).abs() < 1e-12);
    }

    #[test]
    fn dvv_integral_coarse_rule() {
        let table = select_table(&crate::cayley::MulTable::candidates()).unwrap();
        let imm = dvv_immersion();
        let tol = Tolerances::default();
        let r = integrate_inequality(&table, &imm, &QuadratureRule::new([8, 8, 8]).unwrap(), &tol).unwrap();
        assert_eq!(r.classification, Classification::DvvType);
        assert!(r.integral.abs() < 1e-8);
        assert!((r.volume - 32.0 * PI * PI / 9.0).abs() < 1e-6 * r.volume);
    }

    #[test]
    fn geodesic_integral() {
        let table = select_table(&crate::cayley::MulTable::candidates()).unwrap();
        let imm = totally_geodesic_immersion(&table).unwrap();
        let r = integrate_inequality(&table, &imm, &QuadratureRule::new([12, 4, 4]).unwrap(), &Tolerances::default())
            .unwrap();
        assert_eq!(r.classification, Classification::Geodesic);
        assert!((r.volume - 2.0 * PI * PI).abs() < 1e-10);
    }

    #[test]
    fn dvv_laplacian_identity() {
        let table = select_table(&crate::cayley::MulTable::candidates()).unwrap();
        let imm = dvv_immersion();
        let c = laplacian_identity_check(&table, &imm, &ChartPoint::new(0.7, 1.1, 2.3), None, &Tolerances::default())
            .unwrap();
        assert!(c.residual1 < 1e-4, "{c:?}");
        assert!(c.residual2 < 1e-6, "{c:?}");
        assert!(c.laplacian.abs() < 1e-4);
    }
}
