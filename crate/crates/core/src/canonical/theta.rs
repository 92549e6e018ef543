use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::{Matrix2, Vector2, Vector3};

use crate::geometry::Sff;

/// Polar and azimuthal resolution of the coarse search grid.
pub const GRID: (usize, usize) = (64, 128);

const MAX_NEWTON: usize = 80;
const MAX_CANDIDATES: usize = 24;

/// A maximiser of the cubic form `f(u) = ⟨h(u, u), J u⟩` on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ThetaMax {
    pub u: Vector3<f64>,
    pub theta: f64,
    /// Norm of the spherical gradient of `f` at `u`.
    pub gradient: f64,
}

// Coefficients of f in the cubic monomials
// u₁³, u₂³, u₃³, u₁²u₂, u₁²u₃, u₂²u₁, u₂²u₃, u₃²u₁, u₃²u₂, u₁u₂u₃.
fn cubic_coefficients(sff: &Sff) -> [f64; 10] {
    let c = |i: usize, j: usize, k: usize| sff.h[k][i][j];
    [
        c(0, 0, 0),
        c(1, 1, 1),
        c(2, 2, 2),
        3.0 * c(0, 0, 1),
        3.0 * c(0, 0, 2),
        3.0 * c(1, 1, 0),
        3.0 * c(1, 1, 2),
        3.0 * c(2, 2, 0),
        3.0 * c(2, 2, 1),
        6.0 * c(0, 1, 2),
    ]
}

fn monomials(u: &Vector3<f64>) -> [f64; 10] {
    let (x, y, z) = (u[0], u[1], u[2]);
    [x * x * x, y * y * y, z * z * z, x * x * y, x * x * z, y * y * x, y * y * z, z * z * x, z * z * y, x * y * z]
}

struct Grid {
    points: Vec<Vector3<f64>>,
    monomials: Vec<[f64; 10]>,
}

fn grid() -> &'static Grid {
    static GRID_CELL: OnceLock<Grid> = OnceLock::new();
    GRID_CELL.get_or_init(|| {
        let (np, na) = GRID;
        let mut points = Vec::with_capacity(np * na);
        for i in 0..np {
            let th = (i as f64 + 0.5) * PI / np as f64;
            for j in 0..na {
                let ph = 2.0 * PI * j as f64 / na as f64;
                points.push(Vector3::new(th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()));
            }
        }
        let monomials = points.iter().map(monomials).collect();
        Grid { points, monomials }
    })
}

// Orthonormal basis of the plane orthogonal to the unit vector u.
pub(crate) fn tangent_basis(u: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let axis = (0..3).min_by(|&a, &b| u[a].abs().total_cmp(&u[b].abs())).unwrap_or(0);
    let mut e = Vector3::zeros();
    e[axis] = 1.0;
    let t1 = (e - u * u.dot(&e)).normalize();
    let t2 = u.cross(&t1);
    (t1, t2)
}

fn refine(sff: &Sff, mut u: Vector3<f64>, gtol: f64) -> ThetaMax {
    let mut step = 0.1;
    for _ in 0..MAX_NEWTON {
        let (t1, t2) = tangent_basis(&u);
        let f = sff.cubic_form(&u);
        let g = Vector2::new(3.0 * sff.cubic(&u, &u, &t1), 3.0 * sff.cubic(&u, &u, &t2));
        if g.norm() < gtol {
            break;
        }
        let hess = Matrix2::new(
            6.0 * sff.cubic(&u, &t1, &t1) - 3.0 * f,
            6.0 * sff.cubic(&u, &t1, &t2),
            6.0 * sff.cubic(&u, &t2, &t1),
            6.0 * sff.cubic(&u, &t2, &t2) - 3.0 * f,
        );
        let negative_definite = hess[(0, 0)] < 0.0 && hess.determinant() > 0.0;
        let s = match (negative_definite, hess.try_inverse()) {
            (true, Some(inv)) => -(inv * g),
            _ => g * step,
        };
        let cand = (u + t1 * s[0] + t2 * s[1]).normalize();
        if sff.cubic_form(&cand) >= f - 1e-15 * f.abs().max(1.0) {
            u = cand;
        } else {
            step *= 0.5;
            if !negative_definite {
                continue;
            }
            // fall back to a damped gradient step
            u = (u + (t1 * g[0] + t2 * g[1]) * step).normalize();
        }
    }
    let (t1, t2) = tangent_basis(&u);
    let gradient = 3.0 * sff.cubic(&u, &u, &t1).hypot(sff.cubic(&u, &u, &t2));
    ThetaMax { u, theta: sff.cubic_form(&u), gradient }
}

fn lex_greater(a: &Vector3<f64>, b: &Vector3<f64>) -> bool {
    for i in 0..3 {
        if a[i] != b[i] {
            return a[i] > b[i];
        }
    }
    false
}

/// Global maximum of the cubic form on the unit sphere: a fixed spherical
/// grid locates every basin, and Newton iterations on the sphere refine the
/// best grid maxima. Among maximisers whose values agree to roundoff the
/// lexicographically greatest is returned.
pub fn maximize_theta(sff: &Sff) -> ThetaMax {
    let coeffs = cubic_coefficients(sff);
    let scale = sff.norm_sq().sqrt();
    if scale == 0.0 {
        return ThetaMax { u: Vector3::x(), theta: 0.0, gradient: 0.0 };
    }
    let g = grid();
    let values: Vec<f64> = g.monomials.iter().map(|m| m.iter().zip(&coeffs).map(|(a, b)| a * b).sum()).collect();

    // grid points not exceeded by any neighbour
    let (np, na) = GRID;
    let at = |i: usize, j: usize| values[i * na + (j % na)];
    let mut cands: Vec<(f64, usize)> = Vec::new();
    for i in 0..np {
        for j in 0..na {
            let v = at(i, j);
            let mut is_max = true;
            'nb: for di in [-1i64, 0, 1] {
                let ii = i as i64 + di;
                if ii < 0 || ii >= np as i64 {
                    continue;
                }
                for dj in [na - 1, 0, 1] {
                    if (di, dj) != (0, 0) && at(ii as usize, j + dj) > v {
                        is_max = false;
                        break 'nb;
                    }
                }
            }
            if is_max && v > 0.0 {
                cands.push((v, i * na + j));
            }
        }
    }
    cands.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    cands.truncate(MAX_CANDIDATES);
    if cands.is_empty() {
        let k = (0..values.len()).max_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
        cands.push((values[k], k));
    }

    let gtol = 1e-13 * scale.max(1.0);
    let refined: Vec<ThetaMax> = cands.iter().map(|&(_, k)| refine(sff, g.points[k], gtol)).collect();
    let best = refined.iter().map(|r| r.theta).fold(f64::NEG_INFINITY, f64::max);
    let tie = 1e-12 * scale.max(1.0);
    let mut out = refined[0];
    let mut first = true;
    for r in refined.iter().filter(|r| r.theta >= best - tie) {
        if first || lex_greater(&r.u, &out.u) {
            out = *r;
            first = false;
        }
    }
    out
}

/// Exhaustive maximum of the cubic form over `n` points of a Fibonacci
/// lattice on the sphere; a check for [`maximize_theta`].
pub fn brute_force_theta(sff: &Sff, n: usize) -> ThetaMax {
    let coeffs = cubic_coefficients(sff);
    let golden = PI * (3.0 - 5f64.sqrt());
    let mut best = ThetaMax { u: Vector3::x(), theta: f64::NEG_INFINITY, gradient: f64::NAN };
    for k in 0..n {
        let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
        let r = (1.0 - z * z).sqrt();
        let ph = golden * k as f64;
        let u = Vector3::new(r * ph.cos(), r * ph.sin(), z);
        let v: f64 = monomials(&u).iter().zip(&coeffs).map(|(a, b)| a * b).sum();
        if v > best.theta {
            best.u = u;
            best.theta = v;
        }
    }
    best
}
