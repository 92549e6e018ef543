//! The seven-dimensional cross product and the nearly Kähler structure of S⁶.
//!
//! R⁷ is identified with the imaginary octonions. Writing `×` for the induced
//! vector product, the almost complex structure on the unit sphere is
//! `J_x U = x × U` and its covariant derivative is
//! `G(X, Y) = (∇̄_X J) Y = X × Y − ⟨X × Y, x⟩ x`, the tangential part of the
//! cross product.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::SVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Error, Result};

pub type Vec7 = SVector<f64, 7>;

/// Structure constants `f_ijk` of a cross product, `e_i × e_j = Σ_k f_ijk e_k`.
///
/// Only tables that are totally antisymmetric and satisfy
/// `|u × v|² = |u|²|v|² − ⟨u, v⟩²` can be constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct MulTable {
    name: String,
    coeffs: [[[i8; 7]; 7]; 7],
    // (i, j, k, f_ijk) for every nonzero entry
    nonzero: Vec<(usize, usize, usize, f64)>,
}

/// Oriented triples (1-based) of the table obtained by Cayley–Dickson doubling
/// of the quaternions with `(a, b)(c, d) = (ac − d̄b, da + bc̄)`.
const CAYLEY_DICKSON_TRIPLES: [(usize, usize, usize); 7] =
    [(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)];

impl MulTable {
    /// The default table.
    pub fn cayley_dickson() -> Self {
        Self::from_triples("cayley-dickson", &CAYLEY_DICKSON_TRIPLES).expect("built-in table is valid")
    }

    /// The default table with the opposite orientation (`f → −f`).
    pub fn cayley_dickson_reversed() -> Self {
        let reversed: Vec<_> = CAYLEY_DICKSON_TRIPLES.iter().map(|&(i, j, k)| (j, i, k)).collect();
        Self::from_triples("cayley-dickson-reversed", &reversed).expect("built-in table is valid")
    }

    /// The cyclic Fano-plane table with triples `(i, i+1, i+3) mod 7`.
    pub fn fano_cyclic() -> Self {
        let triples: Vec<_> = (0..7).map(|i| (i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1)).collect();
        Self::from_triples("fano-cyclic", &triples).expect("built-in table is valid")
    }

    /// Built-in tables in selection order.
    pub fn candidates() -> Vec<Self> {
        vec![Self::cayley_dickson(), Self::cayley_dickson_reversed(), Self::fano_cyclic()]
    }

    /// Builds a table from oriented triples `(i, j, k)` meaning `e_i × e_j = e_k`.
    pub fn from_triples(name: &str, triples: &[(usize, usize, usize)]) -> Result<Self> {
        let entries: Vec<_> = triples.iter().map(|&(i, j, k)| (i, j, k, 1)).collect();
        Self::from_entries(name, &entries)
    }

    /// Builds a table from signed entries `(i, j, k, s)` (1-based) meaning
    /// `f_ijk = s`. Each entry is completed by total antisymmetry.
    pub fn from_entries(name: &str, entries: &[(usize, usize, usize, i8)]) -> Result<Self> {
        let mut coeffs = [[[0i8; 7]; 7]; 7];
        for &(i, j, k, s) in entries {
            if !(1..=7).contains(&i) || !(1..=7).contains(&j) || !(1..=7).contains(&k) {
                return Err(Error::InvalidTable(format!("index out of range in ({i}, {j}, {k})")));
            }
            if i == j || j == k || i == k {
                return Err(Error::InvalidTable(format!("repeated index in ({i}, {j}, {k})")));
            }
            if s != 1 && s != -1 {
                return Err(Error::InvalidTable(format!("sign {s} is not ±1")));
            }
            let (i, j, k) = (i - 1, j - 1, k - 1);
            for (a, b, c, sign) in
                [(i, j, k, s), (j, k, i, s), (k, i, j, s), (j, i, k, -s), (i, k, j, -s), (k, j, i, -s)]
            {
                let slot = &mut coeffs[a][b][c];
                if *slot != 0 && *slot != sign {
                    return Err(Error::InvalidTable(format!(
                        "conflicting signs for f({}, {}, {})",
                        a + 1,
                        b + 1,
                        c + 1
                    )));
                }
                *slot = sign;
            }
        }
        Self::from_coefficients(name, coeffs)
    }

    /// Builds a table from a dense coefficient array (0-based), validating it.
    pub fn from_coefficients(name: &str, coeffs: [[[i8; 7]; 7]; 7]) -> Result<Self> {
        for i in 0..7 {
            for j in 0..7 {
                for k in 0..7 {
                    let c = coeffs[i][j][k];
                    if !(-1..=1).contains(&c) {
                        return Err(Error::InvalidTable(format!("entry {c} not in {{-1, 0, 1}}")));
                    }
                    if c != -coeffs[j][i][k] || c != coeffs[j][k][i] {
                        return Err(Error::InvalidTable(format!(
                            "not totally antisymmetric at ({}, {}, {})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        let dot = |a: usize, b: usize, c: usize, d: usize| -> i32 {
            (0..7).map(|k| coeffs[a][b][k] as i32 * coeffs[c][d][k] as i32).sum()
        };
        let delta = |a: usize, b: usize| -> i32 { (a == b) as i32 };
        // Polarised form of |u × v|² − |u|²|v|² + ⟨u, v⟩²; it vanishes for all
        // u, v iff it vanishes on every basis quadruple.
        for a in 0..7 {
            for b in 0..7 {
                for c in 0..7 {
                    for d in 0..7 {
                        let form = dot(a, b, c, d) + dot(a, d, c, b) - 2 * delta(a, c) * delta(b, d)
                            + delta(a, b) * delta(c, d)
                            + delta(a, d) * delta(c, b);
                        if form != 0 {
                            return Err(Error::InvalidTable(format!(
                                "cross-product axiom fails on basis vectors ({}, {}, {}, {})",
                                a + 1,
                                b + 1,
                                c + 1,
                                d + 1
                            )));
                        }
                    }
                }
            }
        }
        let mut nonzero = Vec::with_capacity(42);
        for (i, plane) in coeffs.iter().enumerate() {
            for (j, row) in plane.iter().enumerate() {
                for (k, &c) in row.iter().enumerate() {
                    if c != 0 {
                        nonzero.push((i, j, k, c as f64));
                    }
                }
            }
        }
        Ok(Self { name: name.to_string(), coeffs, nonzero })
    }

    /// Parses the plain-text format: one entry `i j k s` per line, 1-based
    /// indices, `s ∈ {+1, −1}`. Blank lines and `#` comments are ignored.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::TableParse {
                    line: n + 1,
                    msg: format!("expected 4 fields, found {}", fields.len()),
                });
            }
            let mut nums = [0i64; 4];
            for (slot, f) in nums.iter_mut().zip(&fields) {
                *slot = f
                    .trim_start_matches('+')
                    .parse()
                    .map_err(|_| Error::TableParse { line: n + 1, msg: format!("`{f}` is not an integer") })?;
            }
            let [i, j, k, s] = nums;
            if i >= j {
                return Err(Error::TableParse { line: n + 1, msg: format!("expected i < j, found {i} {j}") });
            }
            if ![i, j, k].iter().all(|v| (1..=7).contains(v)) {
                return Err(Error::TableParse { line: n + 1, msg: "indices must lie in 1..=7".into() });
            }
            if s != 1 && s != -1 {
                return Err(Error::TableParse { line: n + 1, msg: format!("sign {s} is not ±1") });
            }
            entries.push((i as usize, j as usize, k as usize, s as i8));
        }
        if entries.is_empty() {
            return Err(Error::InvalidTable("no entries".into()));
        }
        Self::from_entries(name, &entries)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&path.display().to_string(), &text)
    }

    /// Serialises every `f_ijk` with `i < j` in the text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("# cross-product table `{}`: i j k f_ijk\n", self.name);
        for i in 0..7 {
            for j in i + 1..7 {
                for k in 0..7 {
                    let c = self.coeffs[i][j][k];
                    if c != 0 {
                        let _ = writeln!(out, "{} {} {} {:+}", i + 1, j + 1, k + 1, c);
                    }
                }
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `f_ijk` with 0-based indices.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> i8 {
        self.coeffs[i][j][k]
    }

    pub fn cross(&self, u: &Vec7, v: &Vec7) -> Vec7 {
        let mut out = Vec7::zeros();
        for &(i, j, k, s) in &self.nonzero {
            out[k] += s * u[i] * v[j];
        }
        out
    }

    /// The basis vector `e_i × e_j` (0-based) as `(k, sign)`.
    pub fn basis_product(&self, i: usize, j: usize) -> Option<(usize, i8)> {
        (0..7).find(|&k| self.coeffs[i][j][k] != 0).map(|k| (k, self.coeffs[i][j][k]))
    }
}

impl Default for MulTable {
    fn default() -> Self {
        Self::cayley_dickson()
    }
}

/// A point of the unit sphere S⁶ ⊂ R⁷.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint(Vec7);

impl SpherePoint {
    pub const DEFAULT_TOL: f64 = 1e-12;

    pub fn new(x: Vec7) -> Result<Self> {
        Self::with_tolerance(x, Self::DEFAULT_TOL)
    }

    pub fn with_tolerance(x: Vec7, tol: f64) -> Result<Self> {
        let deviation = (x.norm() - 1.0).abs();
        if deviation > tol || !deviation.is_finite() {
            return Err(Error::NotOnSphere { deviation });
        }
        Ok(Self(x))
    }

    /// Normalises a nonzero vector onto the sphere.
    pub fn normalized(x: Vec7) -> Self {
        Self(x.normalize())
    }

    pub fn coords(&self) -> &Vec7 {
        &self.0
    }

    /// Orthogonal projection of `v` onto `T_x S⁶`.
    pub fn project(&self, v: &Vec7) -> Vec7 {
        v - self.0 * self.0.dot(v)
    }

    pub fn tangent(&self, v: Vec7) -> Result<Tangent7> {
        Tangent7::new(*self, v)
    }

    pub fn tangent_with_tolerance(&self, v: Vec7, tol: f64) -> Result<Tangent7> {
        Tangent7::with_tolerance(*self, v, tol)
    }
}

/// A tangent vector to S⁶ at a base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tangent7 {
    pub base: SpherePoint,
    pub v: Vec7,
}

impl Tangent7 {
    pub fn new(base: SpherePoint, v: Vec7) -> Result<Self> {
        Self::with_tolerance(base, v, SpherePoint::DEFAULT_TOL)
    }

    /// Accepts `v` when `|⟨x, v⟩| ≤ tol · max(1, |v|)`.
    pub fn with_tolerance(base: SpherePoint, v: Vec7, tol: f64) -> Result<Self> {
        let residual = base.0.dot(&v);
        if residual.abs() > tol * v.norm().max(1.0) || !residual.is_finite() {
            return Err(Error::NotTangent { residual });
        }
        Ok(Self { base, v })
    }

    /// Projects `v` onto the tangent space at `base`.
    pub fn projected(base: SpherePoint, v: Vec7) -> Self {
        let v = base.project(&v);
        Self { base, v }
    }
}

/// `J_x U = x × U`.
pub fn almost_complex(table: &MulTable, x: &SpherePoint, u: &Tangent7) -> Result<Tangent7> {
    if x != &u.base {
        return Err(Error::BasePointMismatch);
    }
    Ok(Tangent7 { base: *x, v: apply_j(table, x.coords(), &u.v) })
}

/// `G(X, Y) = X × Y − ⟨X × Y, x⟩ x`.
pub fn g_tensor(table: &MulTable, x: &SpherePoint, a: &Tangent7, b: &Tangent7) -> Result<Tangent7> {
    if x != &a.base || x != &b.base {
        return Err(Error::BasePointMismatch);
    }
    Ok(Tangent7 { base: *x, v: apply_g(table, x.coords(), &a.v, &b.v) })
}

/// Unchecked `J_x U` on raw vectors.
#[inline]
pub fn apply_j(table: &MulTable, x: &Vec7, u: &Vec7) -> Vec7 {
    table.cross(x, u)
}

/// Unchecked `G(X, Y)` at `x` on raw vectors.
#[inline]
pub fn apply_g(table: &MulTable, x: &Vec7, a: &Vec7, b: &Vec7) -> Vec7 {
    let c = table.cross(a, b);
    c - x * x.dot(&c)
}

/// Unit-speed great circle through `x` with initial velocity `dir`, together
/// with the parallel transport of tangent vectors along it.
#[derive(Debug, Clone, Copy)]
pub struct Geodesic {
    x: Vec7,
    unit_dir: Vec7,
    speed: f64,
}

impl Geodesic {
    pub fn new(x: &Vec7, velocity: &Vec7) -> Self {
        let speed = velocity.norm();
        let unit_dir = if speed > 0.0 { velocity / speed } else { Vec7::zeros() };
        Self { x: *x, unit_dir, speed }
    }

    pub fn point(&self, t: f64) -> Vec7 {
        let s = self.speed * t;
        self.x * s.cos() + self.unit_dir * s.sin()
    }

    /// Parallel transport of `v ∈ T_x S⁶` to time `t`.
    pub fn transport(&self, v: &Vec7, t: f64) -> Vec7 {
        let s = self.speed * t;
        let a = self.unit_dir.dot(v);
        v - self.unit_dir * a + (self.unit_dir * s.cos() - self.x * s.sin()) * a
    }
}

/// Central-difference covariant derivative `∇̄_X` at `x` of the vector field
/// `t ↦ field(γ(t), P_t Y₁, P_t Y₂)` built from parallel-transported arguments.
pub fn covariant_derivative_fd<F>(x: &Vec7, velocity: &Vec7, args: [&Vec7; 2], step: f64, field: F) -> Vec7
where
    F: Fn(&Vec7, &Vec7, &Vec7) -> Vec7,
{
    let geo = Geodesic::new(x, velocity);
    let eval = |t: f64| field(&geo.point(t), &geo.transport(args[0], t), &geo.transport(args[1], t));
    let d = (eval(step) - eval(-step)) / (2.0 * step);
    d - x * x.dot(&d)
}

/// Maximum residual of each nearly Kähler identity over random samples.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct IdentityReport {
    pub samples: usize,
    /// `G(X, Y) + G(Y, X) = 0`
    pub antisymmetry: f64,
    /// `G(X, JY) + J G(X, Y) = 0`
    pub j_anticommute: f64,
    /// `g(G(X, Y), Z) + g(G(X, Z), Y) = 0`
    pub skew: f64,
    /// `(∇̄_X G)(Y, Z) = g(Y, JZ) X + g(X, Z) JY − g(X, Y) JZ`, by finite differences
    pub derivative: f64,
    /// `g(G(X,Y), G(Z,W)) = g(X,Z)g(Y,W) − g(X,W)g(Z,Y) + g(JX,Z)g(Y,JW) − g(JX,W)g(Y,JZ)`
    pub inner_product: f64,
    /// `G(X, Y) = (∇̄_X J) Y`, closed form against finite differences
    pub closed_form: f64,
    /// `J² = −id` and `|JX| = |X|`
    pub almost_complex: f64,
}

impl IdentityReport {
    pub fn max_algebraic(&self) -> f64 {
        self.antisymmetry.max(self.j_anticommute).max(self.skew).max(self.inner_product).max(self.almost_complex)
    }

    pub fn max_finite_difference(&self) -> f64 {
        self.derivative.max(self.closed_form)
    }
}

/// Step used for the finite-difference identities.
pub const FD_STEP: f64 = 1e-5;

pub fn random_sphere_point<R: Rng>(rng: &mut R) -> SpherePoint {
    loop {
        let v = Vec7::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return SpherePoint(v / n);
        }
    }
}

pub fn random_tangent<R: Rng>(rng: &mut R, x: &SpherePoint) -> Vec7 {
    x.project(&Vec7::from_fn(|_, _| rng.random_range(-1.0..1.0)))
}

/// Checks the nearly Kähler identities at `n_samples` random configurations
/// `(x, X, Y, Z, W)`.
pub fn verify_nk_identities(table: &MulTable, n_samples: usize, seed: u64) -> IdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = IdentityReport { samples: n_samples, ..Default::default() };
    let upd = |slot: &mut f64, v: f64| *slot = slot.max(v);
    for _ in 0..n_samples {
        let xp = random_sphere_point(&mut rng);
        let x = *xp.coords();
        let [a, b, c, d] = std::array::from_fn(|_| random_tangent(&mut rng, &xp));
        let j = |v: &Vec7| apply_j(table, &x, v);
        let g = |u: &Vec7, v: &Vec7| apply_g(table, &x, u, v);

        upd(&mut rep.antisymmetry, (g(&a, &b) + g(&b, &a)).norm());
        upd(&mut rep.j_anticommute, (g(&a, &j(&b)) + j(&g(&a, &b))).norm());
        upd(&mut rep.skew, (g(&a, &b).dot(&c) + g(&a, &c).dot(&b)).abs());
        let lhs = g(&a, &b).dot(&g(&c, &d));
        let rhs = a.dot(&c) * b.dot(&d) - a.dot(&d) * c.dot(&b) + j(&a).dot(&c) * b.dot(&j(&d))
            - j(&a).dot(&d) * b.dot(&j(&c));
        upd(&mut rep.inner_product, (lhs - rhs).abs());
        upd(&mut rep.almost_complex, (j(&j(&a)) + a).norm().max((j(&a).norm() - a.norm()).abs()));

        let dg = covariant_derivative_fd(&x, &a, [&b, &c], FD_STEP, |p, u, v| apply_g(table, p, u, v));
        let expected = a * b.dot(&j(&c)) + j(&b) * a.dot(&c) - j(&c) * a.dot(&b);
        upd(&mut rep.derivative, (dg - expected).norm());

        // With Y parallel, (∇̄_X J) Y = ∇̄_X (J Y).
        let dj = covariant_derivative_fd(&x, &a, [&b, &b], FD_STEP, |p, u, _| apply_j(table, p, u));
        upd(&mut rep.closed_form, (dj - g(&a, &b)).norm());
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn e(i: usize) -> Vec7 {
        Vec7::ith(i, 1.0)
    }

    fn quat_mul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
        [
            a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
        ]
    }

    fn quat_conj(a: [f64; 4]) -> [f64; 4] {
        [a[0], -a[1], -a[2], -a[3]]
    }

    // Octonion product by doubling: (a, b)(c, d) = (ac − d̄b, da + bc̄).
    fn octonion_mul(p: [f64; 8], q: [f64; 8]) -> [f64; 8] {
        let (a, b) = ([p[0], p[1], p[2], p[3]], [p[4], p[5], p[6], p[7]]);
        let (c, d) = ([q[0], q[1], q[2], q[3]], [q[4], q[5], q[6], q[7]]);
        let l = quat_mul(a, c);
        let l2 = quat_mul(quat_conj(d), b);
        let r = quat_mul(d, a);
        let r2 = quat_mul(b, quat_conj(c));
        [l[0] - l2[0], l[1] - l2[1], l[2] - l2[2], l[3] - l2[3], r[0] + r2[0], r[1] + r2[1], r[2] + r2[2], r[3] + r2[3]]
    }

    #[test]
    fn default_table_is_imaginary_octonion_product() {
        let t = MulTable::cayley_dickson();
        for i in 0..7 {
            for j in 0..7 {
                if i == j {
                    continue;
                }
                let mut p = [0.0; 8];
                let mut q = [0.0; 8];
                p[i + 1] = 1.0;
                q[j + 1] = 1.0;
                let prod = octonion_mul(p, q);
                assert_eq!(prod[0], 0.0);
                let cross = t.cross(&e(i), &e(j));
                for k in 0..7 {
                    assert_eq!(cross[k], prod[k + 1], "e{} x e{}", i + 1, j + 1);
                }
            }
        }
    }

    #[test]
    fn basis_products() {
        let t = MulTable::cayley_dickson();
        assert_eq!(t.cross(&e(0), &e(0)), Vec7::zeros());
        assert_eq!(t.cross(&e(0), &e(1)), e(2));
        assert_eq!(t.cross(&e(1), &e(0)), -e(2));
        assert_eq!(t.basis_product(0, 6), Some((5, 1)));
        assert_eq!(t.basis_product(3, 3), None);
    }

    #[test]
    fn built_in_candidates_are_valid_and_distinct() {
        let c = MulTable::candidates();
        assert_eq!(c.len(), 3);
        assert_ne!(c[0], c[1]);
        assert_ne!(c[0], c[2]);
        for t in &c {
            assert_eq!(t.nonzero.len(), 42);
        }
    }

    #[test]
    fn text_round_trip() {
        for t in MulTable::candidates() {
            let text = t.to_text();
            assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 21);
            let back = MulTable::parse(t.name(), &text).unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn seven_line_file_is_completed_by_antisymmetry() {
        let text = "1 2 3 1\n1 4 5 1\n1 7 6 1\n2 4 6 1\n2 5 7 1\n3 4 7 1\n3 6 5 +1\n";
        assert_eq!(MulTable::parse("short", text).unwrap().coeffs, MulTable::cayley_dickson().coeffs);
    }

    #[test]
    fn rejects_bad_tables() {
        // a single triple is antisymmetric but fails the axiom
        assert!(matches!(MulTable::parse("bad", "1 2 3 1\n"), Err(Error::InvalidTable(_))));
        // sign flip of one triple breaks the cross-product axiom
        let text = "1 2 3 1\n1 4 5 1\n1 7 6 1\n2 4 6 1\n2 5 7 1\n3 4 7 1\n3 6 5 -1\n";
        assert!(matches!(MulTable::parse("bad", text), Err(Error::InvalidTable(_))));
        assert!(matches!(MulTable::parse("bad", "1 2 3 1\n2 3 1 -1\n"), Err(Error::InvalidTable(_))));
        assert!(matches!(MulTable::parse("bad", "2 1 3 1\n"), Err(Error::TableParse { line: 1, .. })));
        assert!(matches!(MulTable::parse("bad", "1 2 8 1\n"), Err(Error::TableParse { .. })));
        assert!(matches!(MulTable::parse("bad", "1 2 3 2\n"), Err(Error::TableParse { .. })));
        assert!(matches!(MulTable::parse("bad", "1 2 x 1\n"), Err(Error::TableParse { .. })));
        assert!(matches!(MulTable::parse("bad", "# nothing\n"), Err(Error::InvalidTable(_))));
        assert!(MulTable::from_entries("bad", &[(1, 1, 2, 1)]).is_err());
    }

    #[test]
    fn j_at_e1_on_e2_reads_table_row() {
        let t = MulTable::cayley_dickson();
        let x = SpherePoint::new(e(0)).unwrap();
        let u = x.tangent(e(1)).unwrap();
        assert_eq!(almost_complex(&t, &x, &u).unwrap().v, e(2));
    }

    #[test]
    fn base_point_mismatch() {
        let t = MulTable::cayley_dickson();
        let x = SpherePoint::new(e(0)).unwrap();
        let y = SpherePoint::new(e(1)).unwrap();
        let u = y.tangent(e(2)).unwrap();
        assert!(matches!(almost_complex(&t, &x, &u), Err(Error::BasePointMismatch)));
        let v = x.tangent(e(2)).unwrap();
        assert!(matches!(g_tensor(&t, &x, &v, &u), Err(Error::BasePointMismatch)));
    }

    #[test]
    fn sphere_and_tangent_validation() {
        assert!(matches!(SpherePoint::new(e(0) * 1.1), Err(Error::NotOnSphere { .. })));
        let x = SpherePoint::new(e(0)).unwrap();
        assert!(matches!(x.tangent(e(0) + e(1)), Err(Error::NotTangent { .. })));
        assert!(Tangent7::projected(x, e(0) + e(1)).v.dot(x.coords()).abs() < 1e-15);
    }

    #[test]
    fn cross_product_axiom_random() {
        let t = MulTable::cayley_dickson();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let u = Vec7::from_fn(|_, _| rng.random_range(-1.0..1.0));
            let v = Vec7::from_fn(|_, _| rng.random_range(-1.0..1.0));
            let lhs = t.cross(&u, &v).norm_squared();
            let rhs = u.norm_squared() * v.norm_squared() - u.dot(&v).powi(2);
            assert!((lhs - rhs).abs() < 1e-13, "{lhs} {rhs}");
        }
    }

    #[test]
    fn identity_suite_passes_on_every_candidate() {
        for t in MulTable::candidates() {
            let rep = verify_nk_identities(&t, 1000, 11);
            assert!(rep.max_algebraic() < 1e-12, "{}: {rep:?}", t.name());
            assert!(rep.max_finite_difference() < 1e-6, "{}: {rep:?}", t.name());
        }
    }

    #[test]
    fn g_inner_products_on_lagrangian_frame() {
        // x = e1 and the Lagrangian frame (e4, e6, e7 × ...) built from the
        // coassociative plane span{e4..e7}: pick e_i in it, tangent at x = e4.
        let t = MulTable::cayley_dickson();
        let x = e(3);
        let frame = [e(4), e(5), e(6)];
        for i in 0..3 {
            for j in 0..3 {
                assert!(apply_j(&t, &x, &frame[i]).dot(&frame[j]).abs() < 1e-15);
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let lhs = apply_g(&t, &x, &frame[i], &frame[j]).dot(&apply_g(&t, &x, &frame[k], &frame[l]));
                        let rhs = ((i == k && j == l) as i32 - (i == l && j == k) as i32) as f64;
                        assert!((lhs - rhs).abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn geodesic_transport_is_parallel_and_isometric() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = random_sphere_point(&mut rng);
        let a = random_tangent(&mut rng, &x);
        let b = random_tangent(&mut rng, &x);
        let geo = Geodesic::new(x.coords(), &a);
        for t in [-0.7, 0.1, 1.3] {
            let p = geo.point(t);
            let tb = geo.transport(&b, t);
            assert!((p.norm() - 1.0).abs() < 1e-14);
            assert!(p.dot(&tb).abs() < 1e-14);
            assert!((tb.norm() - b.norm()).abs() < 1e-14);
        }
    }

    fn vec7() -> impl Strategy<Value = Vec7> {
        prop::array::uniform7(-2.0f64..2.0).prop_map(Vec7::from)
    }

    proptest! {
        #[test]
        fn cross_is_antisymmetric_and_orthogonal(u in vec7(), v in vec7()) {
            let t = MulTable::cayley_dickson();
            let c = t.cross(&u, &v);
            prop_assert!((c + t.cross(&v, &u)).norm() < 1e-14);
            prop_assert!(c.dot(&u).abs() < 1e-12);
            prop_assert!(c.dot(&v).abs() < 1e-12);
        }

        #[test]
        fn g_identities_hold(x in vec7(), a in vec7(), b in vec7(), c in vec7()) {
            prop_assume!(x.norm() > 0.1);
            let t = MulTable::cayley_dickson();
            let xp = SpherePoint::normalized(x);
            let x = *xp.coords();
            let (a, b, c) = (xp.project(&a), xp.project(&b), xp.project(&c));
            let g = |u: &Vec7, v: &Vec7| apply_g(&t, &x, u, v);
            let j = |u: &Vec7| apply_j(&t, &x, u);
            prop_assert!((g(&a, &b) + g(&b, &a)).norm() < 1e-14);
            prop_assert!((g(&a, &j(&b)) + j(&g(&a, &b))).norm() < 1e-12);
            prop_assert!((g(&a, &b).dot(&c) + g(&a, &c).dot(&b)).abs() < 1e-12);
            prop_assert!(g(&a, &b).dot(&x).abs() < 1e-13);
            prop_assert!((j(&j(&a)) + a).norm() < 1e-13);
            prop_assert!((j(&a).norm() - a.norm()).abs() < 1e-13);
            prop_assert!(j(&a).dot(&a).abs() < 1e-13);
        }
    }
}
