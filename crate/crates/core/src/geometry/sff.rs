use nalgebra::{Matrix3, Vector3};

use super::chart::{jet, ChartPoint, Immersion, ImmersionJet};
use super::frame::{frame_from_jet, FramePacket};
use crate::cayley::MulTable;
use crate::{Error, Result, Tolerances};

pub type Tensor3 = [[[f64; 3]; 3]; 3];
pub type Tensor4 = [[[[f64; 3]; 3]; 3]; 3];

/// Second fundamental form of a Lagrangian immersion in an orthonormal frame:
/// `h[k][i][j] = h^{k*}_{ij} = ⟨h(e_i, e_j), J e_k⟩`.
///
/// For Lagrangian submanifolds the coefficients are fully symmetric in
/// `(i, j, k)` and trace-free in every pair.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize)]
pub struct Sff {
    pub h: Tensor3,
}

impl Sff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_components(h: Tensor3) -> Self {
        Self { h }
    }

    /// Builds the form from shape-operator matrices `H_k = (h^{k*}_{ij})`.
    pub fn from_matrices(hm: &[Matrix3<f64>; 3]) -> Self {
        let mut h = [[[0.0; 3]; 3]; 3];
        for (k, m) in hm.iter().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    h[k][i][j] = m[(i, j)];
                }
            }
        }
        Self { h }
    }

    pub fn norm_sq(&self) -> f64 {
        self.h.iter().flatten().flatten().map(|v| v * v).sum()
    }

    /// `C(u, v, w) = ⟨h(u, v), J w⟩`.
    pub fn cubic(&self, u: &Vector3<f64>, v: &Vector3<f64>, w: &Vector3<f64>) -> f64 {
        let mut s = 0.0;
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    s += self.h[k][i][j] * u[i] * v[j] * w[k];
                }
            }
        }
        s
    }

    /// `f(u) = ⟨h(u, u), J u⟩`.
    pub fn cubic_form(&self, u: &Vector3<f64>) -> f64 {
        self.cubic(u, u, u)
    }

    /// Normal components of `h(u, v)` in the basis `J e_k`.
    pub fn vector(&self, u: &Vector3<f64>, v: &Vector3<f64>) -> Vector3<f64> {
        Vector3::from_fn(|k, _| {
            (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| self.h[k][i][j] * u[i] * v[j]).sum()
        })
    }

    /// Largest violation of `h^{k*}_{ij} = h^{k*}_{ji} = h^{j*}_{ik}`.
    pub fn symmetry_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    r = r.max((self.h[k][i][j] - self.h[k][j][i]).abs());
                    r = r.max((self.h[k][i][j] - self.h[j][i][k]).abs());
                }
            }
        }
        r
    }

    /// `max_k |Σ_i h^{k*}_{ii}|`.
    pub fn trace_residual(&self) -> f64 {
        (0..3).map(|k| (0..3).map(|i| self.h[k][i][i]).sum::<f64>().abs()).fold(0.0, f64::max)
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let s = self.symmetry_residual();
        if s > tol {
            return Err(Error::IdentityViolation { identity: "h^{k*}_{ij} = h^{j*}_{ik}", residual: s });
        }
        let t = self.trace_residual();
        if t > tol {
            return Err(Error::IdentityViolation { identity: "Σ_i h(e_i, e_i) = 0", residual: t });
        }
        Ok(())
    }

    /// Components in the frame `f_i = Σ_a r[(i, a)] e_a` (rows of an
    /// orthogonal matrix).
    pub fn rotated(&self, r: &Matrix3<f64>) -> Self {
        let mut out = [[[0.0; 3]; 3]; 3];
        for (k, ok) in out.iter_mut().enumerate() {
            for (i, oki) in ok.iter_mut().enumerate() {
                for (j, v) in oki.iter_mut().enumerate() {
                    let mut s = 0.0;
                    for c in 0..3 {
                        for a in 0..3 {
                            for b in 0..3 {
                                s += r[(i, a)] * r[(j, b)] * r[(k, c)] * self.h[c][a][b];
                            }
                        }
                    }
                    *v = s;
                }
            }
        }
        Self { h: out }
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut out = *self;
        out.h.iter_mut().flatten().flatten().for_each(|v| *v *= c);
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.h
            .iter()
            .flatten()
            .flatten()
            .zip(other.h.iter().flatten().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Shape operator matrix `H_k = (h^{k*}_{ij})`, so that
/// `⟨h(e_i, e_j), J e_k⟩ = (H_k)_{ij}` and `A_{J e_k} e_i = Σ_j (H_k)_{ij} e_j`.
pub fn shape_operator(sff: &Sff, k: usize) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| sff.h[k][i][j])
}

/// Covariant derivative of the second fundamental form:
/// `c[l][i][j][k] = h^{l*}_{ij,k} = ⟨(∇_{e_k} h)(e_i, e_j), J e_l⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize)]
pub struct NablaH {
    pub c: Tensor4,
}

impl NablaH {
    pub fn norm_sq(&self) -> f64 {
        self.c.iter().flatten().flatten().flatten().map(|v| v * v).sum()
    }

    /// Largest violation of symmetry in `(i, j)` and of the Codazzi symmetry
    /// `h^{l*}_{ij,k} = h^{l*}_{ik,j}`.
    pub fn codazzi_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for l in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        r = r.max((self.c[l][i][j][k] - self.c[l][i][k][j]).abs());
                        r = r.max((self.c[l][i][j][k] - self.c[l][j][i][k]).abs());
                    }
                }
            }
        }
        r
    }

    /// Largest residual of
    /// `g((∇h)(W,X,Z), JY) − g((∇h)(W,X,Y), JZ) = g(h(W,X), G(Y,Z))`
    /// over frame vectors, where `(∇h)(W, X, Z) = (∇_W h)(X, Z)`.
    pub fn structure_residual(&self, sff: &Sff, g_normal: &Tensor3) -> f64 {
        let mut r: f64 = 0.0;
        for w in 0..3 {
            for x in 0..3 {
                for y in 0..3 {
                    for z in 0..3 {
                        let lhs = self.c[y][x][z][w] - self.c[z][x][y][w];
                        let rhs: f64 = (0..3).map(|p| sff.h[p][w][x] * g_normal[y][z][p]).sum();
                        r = r.max((lhs - rhs).abs());
                    }
                }
            }
        }
        r
    }

    /// `g((∇h)(v, v, v), J v)`.
    pub fn quartic(&self, v: &Vector3<f64>) -> f64 {
        let mut s = 0.0;
        for l in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        s += self.c[l][i][j][k] * v[i] * v[j] * v[k] * v[l];
                    }
                }
            }
        }
        s
    }

    pub fn rotated(&self, r: &Matrix3<f64>) -> Self {
        let mut out = [[[[0.0; 3]; 3]; 3]; 3];
        // contract one index at a time
        let mut t = self.c;
        for slot in 0..4 {
            for l in 0..3 {
                for i in 0..3 {
                    for j in 0..3 {
                        for k in 0..3 {
                            let idx = [l, i, j, k];
                            let mut s = 0.0;
                            for a in 0..3 {
                                let mut src = idx;
                                src[slot] = a;
                                s += r[(idx[slot], a)] * t[src[0]][src[1]][src[2]][src[3]];
                            }
                            out[l][i][j][k] = s;
                        }
                    }
                }
            }
            t = out;
        }
        Self { c: t }
    }
}

/// Frame, second fundamental form and (optionally) its covariant derivative
/// at one chart point, all from a single jet evaluation.
#[derive(Debug, Clone)]
pub struct PointGeometry {
    pub frame: FramePacket,
    pub sff: Sff,
    pub nabla: Option<NablaH>,
}

#[derive(Debug, Clone, Default)]
pub struct EvalOptions {
    pub with_nabla: bool,
    /// Starting chart basis for Gram–Schmidt; `None` prefers global frame fields.
    pub basis: Option<Matrix3<f64>>,
    pub tol: Tolerances,
}

pub fn evaluate<I: Immersion + ?Sized>(
    table: &MulTable,
    imm: &I,
    q: &ChartPoint,
    opts: &EvalOptions,
) -> Result<PointGeometry> {
    let order = if opts.with_nabla { 3 } else { 2 };
    let j = jet(imm, q, order)?;
    evaluate_jet(table, imm, q, &j, opts)
}

pub fn evaluate_jet<I: Immersion + ?Sized>(
    table: &MulTable,
    imm: &I,
    q: &ChartPoint,
    j: &ImmersionJet,
    opts: &EvalOptions,
) -> Result<PointGeometry> {
    let frame = frame_from_jet(table, imm, q, j, opts.basis.as_ref(), &opts.tol)?;
    let c = &frame.coefficients;
    let e_star = &frame.e_star;

    // normal components of the chart Hessian
    let mut hc = [[[0.0; 3]; 3]; 3];
    for (l, hl) in hc.iter_mut().enumerate() {
        for a in 0..3 {
            for b in 0..3 {
                hl[a][b] = j.d2(a, b).dot(&e_star[l]);
            }
        }
    }
    let mut h = [[[0.0; 3]; 3]; 3];
    for l in 0..3 {
        for i in 0..3 {
            for jj in 0..3 {
                let mut s = 0.0;
                for a in 0..3 {
                    for b in 0..3 {
                        s += c[(i, a)] * c[(jj, b)] * hc[l][a][b];
                    }
                }
                h[l][i][jj] = s;
            }
        }
    }
    let sff = Sff { h };

    let nabla = if opts.with_nabla && j.order >= 3 {
        let gam = &frame.christoffel;
        // (∇_c h)_ab = N(∂_a∂_b∂_c x) − Γ^d_ab h_dc − Γ^d_ca h_db − Γ^d_cb h_ad
        let mut nc = [[[[0.0; 3]; 3]; 3]; 3];
        for l in 0..3 {
            for a in 0..3 {
                for b in 0..3 {
                    for cc in 0..3 {
                        let mut v = j.d3(a, b, cc).dot(&e_star[l]);
                        for d in 0..3 {
                            v -= gam[d][(a, b)] * hc[l][d][cc]
                                + gam[d][(cc, a)] * hc[l][d][b]
                                + gam[d][(cc, b)] * hc[l][a][d];
                        }
                        nc[l][a][b][cc] = v;
                    }
                }
            }
        }
        let mut out = [[[[0.0; 3]; 3]; 3]; 3];
        for l in 0..3 {
            for i in 0..3 {
                for jj in 0..3 {
                    for k in 0..3 {
                        let mut s = 0.0;
                        for a in 0..3 {
                            for b in 0..3 {
                                for cc in 0..3 {
                                    s += c[(i, a)] * c[(jj, b)] * c[(k, cc)] * nc[l][a][b][cc];
                                }
                            }
                        }
                        out[l][i][jj][k] = s;
                    }
                }
            }
        }
        Some(NablaH { c: out })
    } else {
        None
    };

    Ok(PointGeometry { frame, sff, nabla })
}

/// Second fundamental form at `q` in the preferred frame.
pub fn second_fundamental_form<I: Immersion + ?Sized>(table: &MulTable, imm: &I, q: &ChartPoint) -> Result<Sff> {
    Ok(evaluate(table, imm, q, &EvalOptions::default())?.sff)
}

/// Covariant derivative of `h` at `q` in the preferred frame.
pub fn nabla_h<I: Immersion + ?Sized>(table: &MulTable, imm: &I, q: &ChartPoint) -> Result<NablaH> {
    let opts = EvalOptions { with_nabla: true, ..Default::default() };
    Ok(evaluate(table, imm, q, &opts)?.nabla.expect("order-3 jet requested"))
}
