use nalgebra::Matrix3;

use super::chart::{jet, ChartDomain, ChartPoint, Immersion};
use crate::{Error, Result};

/// `ε^(1/4)`, the balanced step for second-order central differences.
pub fn default_laplacian_step() -> f64 {
    f64::EPSILON.powf(0.25)
}

/// Laplace–Beltrami operator of a scalar field on the chart of `imm`, with
/// the metric induced by the immersion.
pub fn laplace_beltrami<I, F>(imm: &I, field: F, q: &ChartPoint, step: Option<f64>) -> Result<f64>
where
    I: Immersion + ?Sized,
    F: Fn(&ChartPoint) -> Result<f64>,
{
    let metric = |p: &ChartPoint| -> Result<Matrix3<f64>> {
        let j = jet(imm, &clamp_periodic(&imm.domain(), p), 1)?;
        Ok(j.metric())
    };
    laplace_beltrami_with_metric(&imm.domain(), metric, field, q, step)
}

/// `Δf = (1/√det g) ∂_i(√det g g^{ij} ∂_j f)` by nested central differences.
///
/// Fails when the stencil would cross a non-periodic boundary of `domain` or
/// when the metric is singular somewhere on the stencil.
pub fn laplace_beltrami_with_metric<M, F>(
    domain: &ChartDomain,
    metric: M,
    field: F,
    q: &ChartPoint,
    step: Option<f64>,
) -> Result<f64>
where
    M: Fn(&ChartPoint) -> Result<Matrix3<f64>>,
    F: Fn(&ChartPoint) -> Result<f64>,
{
    let h = step.unwrap_or_else(default_laplacian_step);
    domain.check(q)?;
    if domain.boundary_distance(q) <= 2.0 * h {
        return Err(Error::StepUnderflow { point: q.0, step: h });
    }
    let at = |p: ChartPoint| clamp_periodic(domain, &p);

    // flux V^i = √det g g^{ij} ∂_j f at p
    let flux = |p: &ChartPoint, i: usize| -> Result<f64> {
        let g = metric(p)?;
        let det = g.determinant();
        let inv = g
            .try_inverse()
            .filter(|_| det > 0.0)
            .ok_or(Error::ChartDegenerate { point: p.0, distance: domain.degeneracy_distance(p) })?;
        let mut v = 0.0;
        for j in 0..3 {
            if inv[(i, j)] == 0.0 {
                continue;
            }
            let df = (field(&at(p.offset(j, h)))? - field(&at(p.offset(j, -h)))?) / (2.0 * h);
            v += inv[(i, j)] * df;
        }
        Ok(det.sqrt() * v)
    };

    let g0 = metric(q)?;
    let det0 = g0.determinant();
    if !(det0 > 0.0) {
        return Err(Error::ChartDegenerate { point: q.0, distance: domain.degeneracy_distance(q) });
    }
    let mut div = 0.0;
    for i in 0..3 {
        div += (flux(&at(q.offset(i, h)), i)? - flux(&at(q.offset(i, -h)), i)?) / (2.0 * h);
    }
    Ok(div / det0.sqrt())
}

// Wraps periodic coordinates back into [lower, upper).
fn clamp_periodic(domain: &ChartDomain, p: &ChartPoint) -> ChartPoint {
    let mut t = p.0;
    for a in 0..3 {
        if domain.periodic[a] {
            let period = domain.upper[a] - domain.lower[a];
            t[a] = domain.lower[a] + (t[a] - domain.lower[a]).rem_euclid(period);
            if t[a] >= domain.upper[a] {
                t[a] = domain.lower[a];
            }
        }
    }
    ChartPoint(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_s3_metric(p: &ChartPoint) -> Result<Matrix3<f64>> {
        let eta = p.0[0];
        Ok(Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, eta.cos().powi(2), eta.sin().powi(2))))
    }

    fn hopf(p: &ChartPoint) -> [f64; 4] {
        let [eta, a, b] = p.0;
        [eta.cos() * a.cos(), eta.cos() * a.sin(), eta.sin() * b.cos(), eta.sin() * b.sin()]
    }

    #[test]
    fn coordinate_functions_are_eigenfunctions_on_round_s3() {
        let dom = ChartDomain::HOPF;
        for q in [ChartPoint::new(0.4, 0.3, 5.9), ChartPoint::new(1.1, 6.2, 0.01), ChartPoint::new(0.785, 2.0, 3.0)] {
            for a in 0..4 {
                let lap = laplace_beltrami_with_metric(&dom, round_s3_metric, |p| Ok(hopf(p)[a]), &q, None).unwrap();
                assert!((lap + 3.0 * hopf(&q)[a]).abs() < 1e-5, "{lap} vs {}", -3.0 * hopf(&q)[a]);
            }
        }
    }

    #[test]
    fn constant_field_has_zero_laplacian() {
        let q = ChartPoint::new(0.7, 1.0, 2.0);
        let lap = laplace_beltrami_with_metric(&ChartDomain::HOPF, round_s3_metric, |_| Ok(3.125), &q, None).unwrap();
        assert!(lap.abs() < 1e-8);
    }

    #[test]
    fn stencil_near_pole_underflows() {
        let q = ChartPoint::new(1e-5, 1.0, 2.0);
        let err = laplace_beltrami_with_metric(&ChartDomain::HOPF, round_s3_metric, |_| Ok(1.0), &q, None);
        assert!(matches!(err, Err(Error::StepUnderflow { .. })));
    }

    #[test]
    fn periodic_wrap() {
        let p = clamp_periodic(&ChartDomain::HOPF, &ChartPoint::new(0.3, -1e-4, 2.0 * std::f64::consts::PI + 0.1));
        assert!(ChartDomain::HOPF.contains(&p));
        assert!((p.0[2] - 0.1).abs() < 1e-12);
    }
}
