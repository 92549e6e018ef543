//! The canonical basis of a Lagrangian second fundamental form and the
//! commutator algebra of its shape operators.
//!
//! `e₁` maximises the cubic form `f(u) = ⟨h(u, u), J u⟩` on the unit sphere;
//! `e₂, e₃` diagonalise `C(e₁, ·, ·)` on `e₁⊥`. In that basis `h` takes the
//! normal form described by [`CanonicalTuple`].

mod algebra;
mod theta;

pub use algebra::{
    closed_forms, commutator_invariant_direct, frobenius_sq, h_matrices, q_inhomogeneous_reading, remainder,
    sff_from_tuple, CanonicalTuple, ClosedForms, CommutatorInvariant, HMatrices,
};
pub use theta::{brute_force_theta, maximize_theta, ThetaMax, GRID};

use nalgebra::{Matrix2, Matrix3, Vector3};

use crate::cayley::Vec7;
use crate::geometry::{FramePacket, Sff};
use crate::{Error, Result, Tolerances};

/// Which inequalities of the normal form hold (within slack).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Constraints {
    /// `λ₁ + λ₂ ≥ 0`
    pub theta_nonnegative: bool,
    /// `3λ₁ + λ₂ ≥ 0` and `3λ₂ + λ₁ ≥ 0`
    pub lambda_bounds: bool,
    /// `|μ₁|, |μ₂| ≤ λ₁ + λ₂`
    pub mu_bounds: bool,
}

impl Constraints {
    pub const SLACK: f64 = 1e-8;

    pub fn check(t: &CanonicalTuple) -> Self {
        let s = Self::SLACK;
        let th = t.theta();
        Self {
            theta_nonnegative: th >= -s,
            lambda_bounds: 3.0 * t.lambda1 + t.lambda2 >= -s && 3.0 * t.lambda2 + t.lambda1 >= -s,
            mu_bounds: t.mu1.abs() <= th + s && t.mu2.abs() <= th + s,
        }
    }

    pub fn all(&self) -> bool {
        self.theta_nonnegative && self.lambda_bounds && self.mu_bounds
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CanonicalData {
    /// Row `i` holds `e_i` in the coordinates of the frame the form was given in.
    pub basis: Matrix3<f64>,
    pub tuple: CanonicalTuple,
    /// Maximum of the cubic form, `= λ₁ + λ₂`.
    pub theta: f64,
    pub constraints: Constraints,
    /// `max |h − h(λ, μ)|` in the canonical basis.
    pub residual: f64,
    /// `Θ = 0` with `h ≠ 0`; the normal form is then decided by the residual alone.
    pub degenerate: bool,
    /// `λ₁ = λ₂` and the `(e₂, e₃)` pair was fixed by requiring `μ₂ = 0`.
    pub umbilic: bool,
}

impl CanonicalData {
    pub fn lambda1(&self) -> f64 {
        self.tuple.lambda1
    }
    pub fn lambda2(&self) -> f64 {
        self.tuple.lambda2
    }
    pub fn mu1(&self) -> f64 {
        self.tuple.mu1
    }
    pub fn mu2(&self) -> f64 {
        self.tuple.mu2
    }

    /// The canonical basis as ambient vectors.
    pub fn ambient_basis(&self, frame: &FramePacket) -> [Vec7; 3] {
        std::array::from_fn(|i| frame.tangent(&self.basis.row(i).transpose()))
    }
}

// Eigen-decomposition of a symmetric 2×2 matrix, ascending.
fn sym2_eigen(a: &Matrix2<f64>) -> ([f64; 2], [nalgebra::Vector2<f64>; 2]) {
    let (p, q, r) = (a[(0, 0)], a[(0, 1)], a[(1, 1)]);
    let mean = 0.5 * (p + r);
    let rad = (0.5 * (p - r)).hypot(q);
    let lo = mean - rad;
    let hi = mean + rad;
    let phi = 0.5 * (2.0 * q).atan2(p - r);
    let v_hi = nalgebra::Vector2::new(phi.cos(), phi.sin());
    let v_lo = nalgebra::Vector2::new(-phi.sin(), phi.cos());
    ([lo, hi], [v_lo, v_hi])
}

/// Canonical basis and invariants of a Lagrangian second fundamental form.
///
/// Ordering convention: `λ₁ ≥ λ₂`. Signs of `e₂, e₃` make `μ₁, μ₂ ≥ 0`; when
/// `λ₁ = λ₂` the pair is rotated so that `μ₂ = 0` and `μ₁ ≥ 0`.
pub fn canonical_basis(sff: &Sff, tol: &Tolerances) -> Result<CanonicalData> {
    let tm = maximize_theta(sff);
    let e1 = tm.u;
    let (t1, t2) = theta::tangent_basis(&e1);
    let a = Matrix2::new(
        sff.cubic(&e1, &t1, &t1),
        sff.cubic(&e1, &t1, &t2),
        sff.cubic(&e1, &t2, &t1),
        sff.cubic(&e1, &t2, &t2),
    );
    let (vals, vecs) = sym2_eigen(&a);
    let lambda1 = -vals[0];
    let lambda2 = -vals[1];
    let mut e2 = t1 * vecs[0][0] + t2 * vecs[0][1];
    let mut e3 = t1 * vecs[1][0] + t2 * vecs[1][1];

    let scale = sff.norm_sq().sqrt().max(1.0);
    let umbilic = (lambda1 - lambda2).abs() <= tol.equality * scale;
    let mu = |e2: &Vector3<f64>, e3: &Vector3<f64>| (sff.cubic(e2, e2, e2), sff.cubic(e2, e2, e3));
    if umbilic {
        // C(v, v, v) on e₁⊥ is μ₁ cos 3φ + μ₂ sin 3φ; rotate onto its maximum
        let (m1, m2) = mu(&e2, &e3);
        let phi = m2.atan2(m1) / 3.0;
        let (s, c) = phi.sin_cos();
        let (n2, n3) = (e2 * c + e3 * s, e3 * c - e2 * s);
        e2 = n2;
        e3 = n3;
    }
    let (m1, _) = mu(&e2, &e3);
    if m1 < 0.0 {
        e2 = -e2;
    }
    let (_, m2) = mu(&e2, &e3);
    if m2 < 0.0 && !umbilic {
        e3 = -e3;
    }
    let (mu1, mu2) = mu(&e2, &e3);
    let (lambda1, lambda2) = if umbilic {
        let l = 0.5 * (lambda1 + lambda2);
        (l, l)
    } else {
        (lambda1, lambda2)
    };
    let tuple = CanonicalTuple { lambda1, lambda2, mu1, mu2: if umbilic { mu2 } else { mu2.max(0.0) } };

    let basis = Matrix3::from_rows(&[e1.transpose(), e2.transpose(), e3.transpose()]);
    let residual = sff.rotated(&basis).max_abs_diff(&sff_from_tuple(&tuple));
    if residual > tol.reconstruction * scale {
        return Err(Error::Reconstruction(residual));
    }
    Ok(CanonicalData {
        basis,
        tuple,
        theta: tm.theta,
        constraints: Constraints::check(&tuple),
        residual,
        degenerate: tm.theta.abs() <= tol.equality * scale && sff.norm_sq() > 0.0,
        umbilic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Rotation3;
    use proptest::prelude::*;

    #[test]
    fn zero_form() {
        let cd = canonical_basis(&Sff::zero(), &Tolerances::default()).unwrap();
        assert_eq!(cd.tuple, CanonicalTuple::default());
        assert!(cd.constraints.all());
    }

    #[test]
    fn recovers_rotated_berger_tuple() {
        let s = 5f64.sqrt() / 4.0;
        let r = Rotation3::new(Vector3::new(0.3, -1.2, 2.0)).into_inner();
        let sff = sff_from_tuple(&CanonicalTuple::new(s, s, 0.0, 0.0)).rotated(&r);
        let cd = canonical_basis(&sff, &Tolerances::default()).unwrap();
        assert!(cd.tuple.max_abs_diff(&CanonicalTuple::new(s, s, 0.0, 0.0)) < 1e-10);
        assert!(cd.umbilic);
    }

    #[test]
    fn recovers_constant_curvature_tuple() {
        let s = 5f64.sqrt() / 4.0;
        let t = CanonicalTuple::new(s, s, 10f64.sqrt() / 4.0, 0.0);
        for axis in [Vector3::new(0.0, 0.0, 0.0), Vector3::new(1.0, 2.0, -0.5), Vector3::new(-2.0, 0.1, 0.7)] {
            let sff = sff_from_tuple(&t).rotated(&Rotation3::new(axis).into_inner());
            let cd = canonical_basis(&sff, &Tolerances::default()).unwrap();
            assert!(cd.tuple.max_abs_diff(&t) < 1e-9, "{:?}", cd.tuple);
        }
    }

    #[test]
    fn generic_tuple_is_reproduced() {
        // e₁ is the global maximiser, so the tuple comes back unchanged up to
        // the sign convention for μ
        let t = CanonicalTuple::new(0.3, 0.2, 0.1, -0.1);
        let cd = canonical_basis(&sff_from_tuple(&t), &Tolerances::default()).unwrap();
        assert!((cd.theta - 0.5).abs() < 1e-12);
        assert!(cd.tuple.max_abs_diff(&CanonicalTuple::new(0.3, 0.2, 0.1, 0.1)) < 1e-10, "{:?}", cd.tuple);
        assert!(cd.constraints.all());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn gauge_invariants(a in -1.0..1.0f64, b in -1.0..1.0f64, m1 in -1.0..1.0f64, m2 in -1.0..1.0f64,
                            rx in -3.0..3.0f64, ry in -3.0..3.0f64, rz in -3.0..3.0f64) {
            let sff = sff_from_tuple(&CanonicalTuple::new(a, b, m1, m2));
            let tol = Tolerances::default();
            let c0 = canonical_basis(&sff, &tol).unwrap();
            let r = Rotation3::new(Vector3::new(rx, ry, rz)).into_inner();
            let c1 = canonical_basis(&sff.rotated(&r), &tol).unwrap();
            prop_assert!(c0.constraints.all() && c1.constraints.all());
            let (t0, t1) = (c0.tuple, c1.tuple);
            prop_assert!((t0.theta() - t1.theta()).abs() < 1e-8);
            prop_assert!((t0.lambda1 * t0.lambda2 - t1.lambda1 * t1.lambda2).abs() < 1e-8);
            prop_assert!((t0.mu_sq() - t1.mu_sq()).abs() < 1e-8);
            let q0 = commutator_invariant_direct(&HMatrices::from_sff(&sff)).q;
            let q1 = commutator_invariant_direct(&h_matrices(&t1)).q;
            prop_assert!((q0 - q1).abs() < 1e-8 * q0.max(1.0));
            prop_assert!((closed_forms(&t1).hsq - sff.norm_sq()).abs() < 1e-8);
        }
    }
}
