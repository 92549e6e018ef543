use nalgebra::{Matrix3, Vector3, Vector4};

use super::hopf::{frame_field_matrices, frame_fields_at};
use crate::geometry::Tensor4;
use crate::{Error, Result};

/// Left-invariant metric on S³ making `X₁, X₂, X₃` orthogonal with
/// `⟨X_i, X_i⟩ = weights[i]`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BergerSpec {
    pub weights: [f64; 3],
}

impl Default for BergerSpec {
    /// `⟨X₁, X₁⟩ = 4/9`, `⟨X₂, X₂⟩ = ⟨X₃, X₃⟩ = 8/3`.
    fn default() -> Self {
        Self { weights: [4.0 / 9.0, 8.0 / 3.0, 8.0 / 3.0] }
    }
}

/// Lie brackets of the frame fields: `[X_i, X_j] = Σ_k c[i][j][k] X_k`.
/// For `X = A y`, `Y = B y` the bracket is `(BA − AB) y`.
pub fn frame_brackets() -> [[[f64; 3]; 3]; 3] {
    let m = frame_field_matrices();
    // the fields are orthonormal at every point, so read components at one
    let y = Vector4::new(1.0, 0.0, 0.0, 0.0);
    let x = frame_fields_at(&y);
    let mut c = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let br = (m[j] * m[i] - m[i] * m[j]) * y;
            for k in 0..3 {
                c[i][j][k] = br.dot(&x[k]);
            }
        }
    }
    c
}

impl BergerSpec {
    pub fn new(weights: [f64; 3]) -> Result<Self> {
        if weights.iter().all(|w| w.is_finite() && *w > 0.0) {
            Ok(Self { weights })
        } else {
            Err(Error::InvalidConfig(format!("Berger weights must be positive, got {weights:?}")))
        }
    }

    /// `⟨[F_i, F_j], F_k⟩` for the orthonormal frame `F_i = X_i / √w_i`.
    fn structure_constants(&self) -> [[[f64; 3]; 3]; 3] {
        let c = frame_brackets();
        let s = self.weights.map(f64::sqrt);
        let mut out = [[[0.0; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out[i][j][k] = c[i][j][k] * s[k] / (s[i] * s[j]);
                }
            }
        }
        out
    }

    /// `Γ[i][j][k] = ⟨∇_{F_i} F_j, F_k⟩` from the Koszul formula.
    pub fn connection(&self) -> [[[f64; 3]; 3]; 3] {
        let c = self.structure_constants();
        let mut g = [[[0.0; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    g[i][j][k] = 0.5 * (c[i][j][k] - c[j][k][i] + c[k][i][j]);
                }
            }
        }
        g
    }

    /// `R[i][j][k][l] = ⟨R(F_i, F_j) F_l, F_k⟩`, so that
    /// `R[i][j][i][j]` is the sectional curvature of `(F_i, F_j)`.
    pub fn riemann(&self) -> Tensor4 {
        let c = self.structure_constants();
        let g = self.connection();
        let mut r = [[[[0.0; 3]; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    for k in 0..3 {
                        // ∇_i ∇_j F_l − ∇_j ∇_i F_l − ∇_[F_i, F_j] F_l, paired with F_k
                        let mut s = 0.0;
                        for m in 0..3 {
                            s += g[j][l][m] * g[i][m][k] - g[i][l][m] * g[j][m][k] - c[i][j][m] * g[m][l][k];
                        }
                        r[i][j][k][l] = s;
                    }
                }
            }
        }
        r
    }

    /// Orthonormal-frame coordinates of a tangent vector of S³ at `y`.
    pub fn frame_coords(&self, y: &Vector4<f64>, v: &Vector4<f64>) -> Vector3<f64> {
        let x = frame_fields_at(y);
        Vector3::from_fn(|i, _| v.dot(&x[i]) * self.weights[i].sqrt())
    }

    pub fn inner(&self, y: &Vector4<f64>, u: &Vector4<f64>, v: &Vector4<f64>) -> f64 {
        self.frame_coords(y, u).dot(&self.frame_coords(y, v))
    }

    /// `⟨R(X, Y) W, Z⟩` for tangent vectors at `y`.
    pub fn curvature(
        &self,
        y: &Vector4<f64>,
        x: &Vector4<f64>,
        yv: &Vector4<f64>,
        z: &Vector4<f64>,
        w: &Vector4<f64>,
    ) -> f64 {
        let r = self.riemann();
        let [a, b, c, d] = [x, yv, z, w].map(|v| self.frame_coords(y, v));
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        s += r[i][j][k][l] * a[i] * b[j] * c[k] * d[l];
                    }
                }
            }
        }
        s
    }

    pub fn sectional(&self, y: &Vector4<f64>, u: &Vector4<f64>, v: &Vector4<f64>) -> f64 {
        let area = self.inner(y, u, u) * self.inner(y, v, v) - self.inner(y, u, v).powi(2);
        self.curvature(y, u, v, u, v) / area
    }

    /// Ricci tensor in the orthonormal frame `F_i`.
    pub fn ricci(&self) -> Matrix3<f64> {
        let r = self.riemann();
        Matrix3::from_fn(|i, j| (0..3).map(|k| r[i][k][j][k]).sum())
    }

    /// `τ = Σ_i Ric(F_i, F_i)`.
    pub fn scalar(&self) -> f64 {
        self.ricci().trace()
    }
}

/// Closed form of the curvature of the default Berger sphere:
/// `⟨R(X,Y)W,Z⟩ = (1/16)(⟨X,Z⟩⟨Y,W⟩ − ⟨X,W⟩⟨Y,Z⟩)
///   + (20/16)(⟨X⊥,Z⊥⟩⟨Y⊥,W⊥⟩ − ⟨X⊥,W⊥⟩⟨Y⊥,Z⊥⟩)`,
/// where `V⊥` is the part of `V` orthogonal to `E₁`. Arguments are
/// orthonormal-frame coordinates with `E₁` first.
pub fn berger_closed_form(x: &Vector3<f64>, y: &Vector3<f64>, z: &Vector3<f64>, w: &Vector3<f64>) -> f64 {
    let perp = |v: &Vector3<f64>| Vector3::new(0.0, v[1], v[2]);
    let (xp, yp, zp, wp) = (perp(x), perp(y), perp(z), perp(w));
    (x.dot(z) * y.dot(w) - x.dot(w) * y.dot(z)) / 16.0
        + 20.0 / 16.0 * (xp.dot(&zp) * yp.dot(&wp) - xp.dot(&wp) * yp.dot(&zp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ChartPoint;
    use crate::models::hopf::hopf;
    use nalgebra::Matrix4;
    use rand::{Rng, SeedableRng};

    fn flow(a: &Matrix4<f64>, t: f64, y: &Vector4<f64>) -> Vector4<f64> {
        (a * t).exp() * y
    }

    #[test]
    fn brackets_from_flows() {
        // φ^Y_{-t} φ^X_{-t} φ^Y_t φ^X_t (y) = y + t² [X, Y](y) + O(t³)
        let m = frame_field_matrices();
        let y = hopf(&ChartPoint::new(0.5, 1.0, 2.0));
        let x = frame_fields_at(&y);
        let t = 1e-4;
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let p = flow(&m[j], -t, &flow(&m[i], -t, &flow(&m[j], t, &flow(&m[i], t, &y))));
            let br = (p - y) / (t * t);
            assert!((br - x[k] * 2.0).norm() < 1e-3, "[X{}, X{}]", i + 1, j + 1);
        }
        let c = frame_brackets();
        assert_eq!(c[0][1][2], 2.0);
        assert_eq!(c[1][2][0], 2.0);
        assert_eq!(c[2][0][1], 2.0);
    }

    #[test]
    fn round_metric_has_unit_curvature() {
        let s = BergerSpec::new([1.0, 1.0, 1.0]).unwrap();
        let r = s.riemann();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!((r[i][j][i][j] - 1.0).abs() < 1e-14);
                }
            }
        }
        assert!((s.scalar() - 6.0).abs() < 1e-14);
    }

    #[test]
    fn default_weights_match_closed_form() {
        let s = BergerSpec::default();
        let r = s.riemann();
        let e = [Vector3::x(), Vector3::y(), Vector3::z()];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let cf = berger_closed_form(&e[i], &e[j], &e[k], &e[l]);
                        assert!((r[i][j][k][l] - cf).abs() < 1e-14, "{i}{j}{k}{l}: {} vs {cf}", r[i][j][k][l]);
                    }
                }
            }
        }
        assert!((s.scalar() - 23.0 / 8.0).abs() < 1e-14);
    }

    #[test]
    fn plane_angle_formula() {
        let s = BergerSpec::default();
        let y = hopf(&ChartPoint::new(0.8, 3.0, 1.0));
        let x = frame_fields_at(&y);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let u: Vector4<f64> = x.iter().fold(Vector4::zeros(), |acc, xi| acc + xi * rng.random_range(-1.0..1.0));
            let v: Vector4<f64> = x.iter().fold(Vector4::zeros(), |acc, xi| acc + xi * rng.random_range(-1.0..1.0));
            // cos φ of the angle between the plane and E₁ = |⟨n, E₁⟩| for the unit normal n
            let n = s.frame_coords(&y, &u).cross(&s.frame_coords(&y, &v)).normalize();
            let expected = 1.0 / 16.0 + 20.0 / 16.0 * n[0] * n[0];
            assert!((s.sectional(&y, &u, &v) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn weights_must_be_positive() {
        assert!(BergerSpec::new([1.0, 0.0, 1.0]).is_err());
    }
}
