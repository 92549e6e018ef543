use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::geometry::{NablaH, Sff, Tensor3, Tensor4};
use crate::{Error, Result};

/// `ε_ijl`, the values of `⟨G(e_i, e_j), J e_l⟩` on a positively oriented
/// Lagrangian frame.
pub fn levi_civita() -> Tensor3 {
    let mut e = [[[0.0; 3]; 3]; 3];
    for (i, j, l) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        e[i][j][l] = 1.0;
        e[j][i][l] = -1.0;
    }
    e
}

fn norm_sq4(t: &Tensor4) -> f64 {
    t.iter().flatten().flatten().flatten().map(|v| v * v).sum()
}

/// `F^{l*}_{ijk} = ⟨F(e_i, e_j, e_k), J e_l⟩` with
/// `F(X,Y,Z) = ¼[G(X, A_{JZ}Y) + G(Y, A_{JX}Z) + G(Z, A_{JY}X)]`, using
/// `A_{Je_i} e_j = Σ_k h^{k*}_{ij} e_k`. `g_normal[i][j][l] = ⟨G(e_i,e_j), Je_l⟩`.
pub fn f_tensor(sff: &Sff, g_normal: &Tensor3) -> Tensor4 {
    let h = &sff.h;
    let mut f = [[[[0.0; 3]; 3]; 3]; 3];
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut s = 0.0;
                    for p in 0..3 {
                        s += h[p][j][k] * g_normal[i][p][l]
                            + h[p][i][k] * g_normal[j][p][l]
                            + h[p][i][j] * g_normal[k][p][l];
                    }
                    f[l][i][j][k] = 0.25 * s;
                }
            }
        }
    }
    f
}

/// `(∇h)(e_i, e_j, e_k) = (∇_{e_i} h)(e_j, e_k)` as `[l][i][j][k]`.
pub fn nabla_h_ordered(nh: &NablaH) -> Tensor4 {
    let mut out = [[[[0.0; 3]; 3]; 3]; 3];
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out[l][i][j][k] = nh.c[l][j][k][i];
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TTensorPacket {
    pub f: Tensor4,
    /// `𝕋 = ∇h − F`
    pub t: Tensor4,
    pub f_sq: f64,
    pub t_sq: f64,
    pub nabla_sq: f64,
    /// `Σ g((∇h)(e_i,e_j,e_k), F(e_i,e_j,e_k))`
    pub cross: f64,
    pub hsq: f64,
}

impl TTensorPacket {
    /// `|‖∇h‖² − ‖𝕋‖² − ¾‖h‖²|`
    pub fn norm_identity_residual(&self) -> f64 {
        (self.nabla_sq - self.t_sq - 0.75 * self.hsq).abs()
    }

    /// `|Σ g(∇h, F) − ¾‖h‖²|`
    pub fn cross_residual(&self) -> f64 {
        (self.cross - 0.75 * self.hsq).abs()
    }

    /// `|‖F‖² − ¾‖h‖²|`
    pub fn f_residual(&self) -> f64 {
        (self.f_sq - 0.75 * self.hsq).abs()
    }

    /// `|‖𝕋‖² − (‖∇h‖² + ‖F‖² − 2 Σ g(∇h, F))|`
    pub fn expansion_residual(&self) -> f64 {
        (self.t_sq - (self.nabla_sq + self.f_sq - 2.0 * self.cross)).abs()
    }

    /// `‖∇h‖² − ¾‖h‖²`, nonnegative for every Lagrangian submanifold.
    pub fn slack(&self) -> f64 {
        self.nabla_sq - 0.75 * self.hsq
    }
}

/// Builds `𝕋` and its norms without asserting anything.
pub fn t_tensor_unchecked(nh: &NablaH, f: &Tensor4, sff: &Sff) -> TTensorPacket {
    let nab = nabla_h_ordered(nh);
    let mut t = [[[[0.0; 3]; 3]; 3]; 3];
    let mut cross = 0.0;
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    t[l][i][j][k] = nab[l][i][j][k] - f[l][i][j][k];
                    cross += nab[l][i][j][k] * f[l][i][j][k];
                }
            }
        }
    }
    TTensorPacket { f: *f, t, f_sq: norm_sq4(f), t_sq: norm_sq4(&t), nabla_sq: nh.norm_sq(), cross, hsq: sff.norm_sq() }
}

/// Builds `𝕋` and checks `‖∇h‖² = ‖𝕋‖² + ¾‖h‖²` and `Σ g(∇h, F) = ¾‖h‖²`
/// within `tol`.
pub fn t_tensor(nh: &NablaH, f: &Tensor4, sff: &Sff, tol: f64) -> Result<TTensorPacket> {
    let p = t_tensor_unchecked(nh, f, sff);
    let r = p.norm_identity_residual();
    if r > tol {
        return Err(Error::IdentityViolation { identity: "|nabla h|^2 = |T|^2 + 3/4 |h|^2", residual: r });
    }
    let r = p.cross_residual();
    if r > tol {
        return Err(Error::IdentityViolation { identity: "sum g(nabla h, F) = 3/4 |h|^2", residual: r });
    }
    Ok(p)
}

/// Resolution of the unit-vector grid used by [`j_parallel_defect`].
pub const DEFECT_GRID: (usize, usize) = (24, 48);

/// `max |g((∇h)(v, v, v), J v)|` over a fixed grid of unit vectors.
pub fn j_parallel_defect(nh: &NablaH) -> f64 {
    let (np, na) = DEFECT_GRID;
    let mut m: f64 = 0.0;
    for i in 0..np {
        let th = (i as f64 + 0.5) * PI / np as f64;
        for j in 0..na {
            let ph = 2.0 * PI * j as f64 / na as f64;
            let v = Vector3::new(th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos());
            m = m.max(nh.quartic(&v).abs());
        }
    }
    m
}
