use nalgebra::{Matrix3, Vector3};

use super::sff::{Sff, Tensor4};

/// Intrinsic curvature of a Lagrangian submanifold of S⁶(1) from the Gauss
/// equation
/// `R_ijkl = δ_ik δ_jl − δ_il δ_jk + Σ_p (h^{p*}_ik h^{p*}_jl − h^{p*}_il h^{p*}_jk)`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CurvaturePacket {
    pub riemann: Tensor4,
    /// `R_ij = Σ_k R_ikjk = 2δ_ij − Σ_{k,p} h^{p*}_ik h^{p*}_kj` for minimal M³.
    pub ricci: Matrix3<f64>,
    /// Ascending.
    pub ricci_eigenvalues: [f64; 3],
    /// The Ricci tensor under the alternative normalisation
    /// `3δ_ij − Σ h h`; its trace is `9 − ‖h‖²`, which does not match the
    /// scalar curvature. Reported for comparison only.
    pub ricci_alt: Matrix3<f64>,
    /// `τ = Σ_i R_ii`.
    pub scalar: f64,
    /// `6 − ‖h‖²`.
    pub scalar_from_norm: f64,
    /// `Σ_{i<j} K(e_i, e_j) = τ / 2`.
    pub scalar_half: f64,
    pub sectional_min: f64,
    pub sectional_max: f64,
}

impl CurvaturePacket {
    /// `R(X, Y, Z, W) = Σ R_ijkl X_i Y_j Z_k W_l`.
    pub fn riemann_form(&self, x: &Vector3<f64>, y: &Vector3<f64>, z: &Vector3<f64>, w: &Vector3<f64>) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        s += self.riemann[i][j][k][l] * x[i] * y[j] * z[k] * w[l];
                    }
                }
            }
        }
        s
    }

    /// Sectional curvature of the plane spanned by `u` and `v`.
    pub fn sectional(&self, u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
        let area = u.norm_squared() * v.norm_squared() - u.dot(v).powi(2);
        self.riemann_form(u, v, u, v) / area
    }

    /// `|τ − (6 − ‖h‖²)|`.
    pub fn scalar_consistency(&self) -> f64 {
        (self.scalar - self.scalar_from_norm).abs()
    }

    pub fn ricci_min(&self) -> f64 {
        self.ricci_eigenvalues[0]
    }
}

pub fn curvature(sff: &Sff) -> CurvaturePacket {
    let h = &sff.h;
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let mut riemann = [[[[0.0; 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let quad: f64 = (0..3).map(|p| h[p][i][k] * h[p][j][l] - h[p][i][l] * h[p][j][k]).sum();
                    riemann[i][j][k][l] = d(i, k) * d(j, l) - d(i, l) * d(j, k) + quad;
                }
            }
        }
    }
    let ricci = Matrix3::from_fn(|i, j| (0..3).map(|k| riemann[i][k][j][k]).sum());
    let hh = Matrix3::from_fn(|i, j| {
        (0..3).flat_map(|k| (0..3).map(move |p| (k, p))).map(|(k, p)| h[p][i][k] * h[p][k][j]).sum::<f64>()
    });
    let ricci_alt = Matrix3::identity() * 3.0 - hh;
    let scalar = ricci.trace();

    let mut ev: Vec<f64> = ricci.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    let ricci_eigenvalues = [ev[0], ev[1], ev[2]];
    // In dimension three the plane with unit normal n has K = τ/2 − Ric(n, n).
    let sectional_min = scalar / 2.0 - ricci_eigenvalues[2];
    let sectional_max = scalar / 2.0 - ricci_eigenvalues[0];

    CurvaturePacket {
        riemann,
        ricci,
        ricci_eigenvalues,
        ricci_alt,
        scalar,
        scalar_from_norm: 6.0 - sff.norm_sq(),
        scalar_half: scalar / 2.0,
        sectional_min,
        sectional_max,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn totally_geodesic_has_unit_curvature() {
        let c = curvature(&Sff::zero());
        assert_eq!(c.scalar, 6.0);
        assert_eq!(c.ricci, Matrix3::identity() * 2.0);
        assert_eq!(c.sectional_min, 1.0);
        assert_eq!(c.sectional_max, 1.0);
        assert_eq!(c.sectional(&Vector3::x(), &Vector3::new(1.0, 1.0, 0.0)), 1.0);
    }

    #[test]
    fn sectional_range_matches_random_planes() {
        let mut h = [[[0.0; 3]; 3]; 3];
        let vals = [(0, 0, 0, 0.8), (0, 1, 1, -0.5), (0, 2, 2, -0.3), (1, 1, 1, 0.4), (1, 2, 2, -0.4), (0, 1, 2, 0.25)];
        for (i, j, k, v) in vals {
            for (a, b, c) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                h[c][a][b] = v;
            }
        }
        // make h(e2,e2) trace-free in the third slot
        let sff = Sff::from_components(h);
        assert!(sff.trace_residual() < 1e-15);
        let c = curvature(&sff);
        assert!(c.scalar_consistency() < 1e-14);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for _ in 0..20000 {
            let u = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
            let v = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
            let k = c.sectional(&u, &v);
            lo = lo.min(k);
            hi = hi.max(k);
        }
        assert!(lo >= c.sectional_min - 1e-12 && hi <= c.sectional_max + 1e-12);
        assert!(lo - c.sectional_min < 1e-2 && c.sectional_max - hi < 1e-2);
        assert!((c.ricci_alt.trace() - (9.0 - sff.norm_sq())).abs() < 1e-14);
    }
}
