use nalgebra::Matrix3;

use crate::geometry::{shape_operator, Sff};

/// The invariants `(λ₁, λ₂, μ₁, μ₂)` of the canonical normal form
/// `h(e₁,e₁) = (λ₁+λ₂)Je₁`, `h(e₁,e₂) = −λ₁Je₂`, `h(e₁,e₃) = −λ₂Je₃`,
/// `h(e₂,e₂) = −λ₁Je₁ + μ₁Je₂ + μ₂Je₃`, `h(e₂,e₃) = μ₂Je₂ − μ₁Je₃`,
/// `h(e₃,e₃) = −λ₂Je₁ − μ₁Je₂ − μ₂Je₃`.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize)]
pub struct CanonicalTuple {
    pub lambda1: f64,
    pub lambda2: f64,
    pub mu1: f64,
    pub mu2: f64,
}

impl CanonicalTuple {
    pub fn new(lambda1: f64, lambda2: f64, mu1: f64, mu2: f64) -> Self {
        Self { lambda1, lambda2, mu1, mu2 }
    }

    /// `Θ = λ₁ + λ₂`.
    pub fn theta(&self) -> f64 {
        self.lambda1 + self.lambda2
    }

    /// `μ₁² + μ₂²`.
    pub fn mu_sq(&self) -> f64 {
        self.mu1 * self.mu1 + self.mu2 * self.mu2
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.lambda1 - other.lambda1)
            .abs()
            .max((self.lambda2 - other.lambda2).abs())
            .max((self.mu1 - other.mu1).abs())
            .max((self.mu2 - other.mu2).abs())
    }
}

/// Shape-operator matrices `H_k = (h^{k*}_{ij})`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct HMatrices {
    pub h: [Matrix3<f64>; 3],
}

impl HMatrices {
    pub fn from_sff(sff: &Sff) -> Self {
        Self { h: [0, 1, 2].map(|k| shape_operator(sff, k)) }
    }

    pub fn zero() -> Self {
        Self { h: [Matrix3::zeros(); 3] }
    }
}

pub fn h_matrices(t: &CanonicalTuple) -> HMatrices {
    let CanonicalTuple { lambda1: l1, lambda2: l2, mu1: m1, mu2: m2 } = *t;
    #[rustfmt::skip]
    let h1 = Matrix3::new(
        l1 + l2, 0.0, 0.0,
        0.0, -l1, 0.0,
        0.0, 0.0, -l2,
    );
    #[rustfmt::skip]
    let h2 = Matrix3::new(
        0.0, -l1, 0.0,
        -l1, m1, m2,
        0.0, m2, -m1,
    );
    #[rustfmt::skip]
    let h3 = Matrix3::new(
        0.0, 0.0, -l2,
        0.0, m2, -m1,
        -l2, -m1, -m2,
    );
    HMatrices { h: [h1, h2, h3] }
}

/// The second fundamental form in canonical normal form.
pub fn sff_from_tuple(t: &CanonicalTuple) -> Sff {
    Sff::from_matrices(&h_matrices(t).h)
}

/// `N(A) = trace(A Aᵗ)`.
pub fn frobenius_sq(a: &Matrix3<f64>) -> f64 {
    a.norm_squared()
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CommutatorInvariant {
    /// `Σ_{i,j} N(H_iH_j − H_jH_i) + Σ_{i,j} S_ij²`
    pub q: f64,
    /// `S_ij = trace(H_i H_j)`
    pub s: Matrix3<f64>,
    /// `N([H₁,H₂])`, `N([H₁,H₃])`, `N([H₂,H₃])`
    pub n_terms: [f64; 3],
}

pub fn commutator_invariant_direct(hm: &HMatrices) -> CommutatorInvariant {
    let h = &hm.h;
    let comm = |i: usize, j: usize| h[i] * h[j] - h[j] * h[i];
    let n_terms = [frobenius_sq(&comm(0, 1)), frobenius_sq(&comm(0, 2)), frobenius_sq(&comm(1, 2))];
    let s = Matrix3::from_fn(|i, j| (h[i] * h[j]).trace());
    // each unordered pair appears twice in the sum over (i, j)
    let q = 2.0 * n_terms.iter().sum::<f64>() + s.norm_squared();
    CommutatorInvariant { q, s, n_terms }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ClosedForms {
    /// `4λ₁² + 4λ₂² + 2λ₁λ₂ + 4μ₁² + 4μ₂²`
    pub hsq: f64,
    /// `24(λ₁⁴ + λ₁³λ₂ + λ₁²λ₂² + λ₁λ₂³ + λ₂⁴) + 18(λ₁² + λ₂²)M − 36λ₁λ₂M + 24M²`
    /// with `M = μ₁² + μ₂²`.
    pub q: f64,
    /// `24M² + 3(λ₁−λ₂)²(2λ₁² + 2λ₂² − 3λ₁λ₂) + 12(5λ₁² + 5λ₂² + 4λ₁λ₂)M`
    pub r_residual: f64,
    /// `3‖h‖⁴ − (9/2)Θ²‖h‖² − R`, which equals `q` identically.
    pub q_regrouped: f64,
}

pub fn closed_forms(t: &CanonicalTuple) -> ClosedForms {
    let CanonicalTuple { lambda1: a, lambda2: b, .. } = *t;
    let m = t.mu_sq();
    let hsq = 4.0 * a * a + 4.0 * b * b + 2.0 * a * b + 4.0 * m;
    let q = 24.0 * (a.powi(4) + a.powi(3) * b + a * a * b * b + a * b.powi(3) + b.powi(4)) + 18.0 * (a * a + b * b) * m
        - 36.0 * a * b * m
        + 24.0 * m * m;
    let r_residual = remainder(t);
    let q_regrouped = 3.0 * hsq * hsq - 4.5 * t.theta().powi(2) * hsq - r_residual;
    ClosedForms { hsq, q, r_residual, q_regrouped }
}

/// `24M² + 3(λ₁−λ₂)²(2λ₁² + 2λ₂² − 3λ₁λ₂) + 12(5λ₁² + 5λ₂² + 4λ₁λ₂)M`;
/// nonnegative for every real tuple.
pub fn remainder(t: &CanonicalTuple) -> f64 {
    let CanonicalTuple { lambda1: a, lambda2: b, .. } = *t;
    let m = t.mu_sq();
    24.0 * m * m
        + 3.0 * (a - b).powi(2) * (2.0 * a * a + 2.0 * b * b - 3.0 * a * b)
        + 12.0 * (5.0 * a * a + 5.0 * b * b + 4.0 * a * b) * m
}

/// The commutator invariant with the dimensionally inhomogeneous coefficient
/// `18(λ₁² + λ₂)(μ₁² + μ₂²)`. Kept to show that this reading disagrees with
/// the direct matrix computation.
pub fn q_inhomogeneous_reading(t: &CanonicalTuple) -> f64 {
    let CanonicalTuple { lambda1: a, lambda2: b, .. } = *t;
    let m = t.mu_sq();
    24.0 * (a.powi(4) + a.powi(3) * b + a * a * b * b + a * b.powi(3) + b.powi(4)) + 18.0 * (a * a + b) * m
        - 36.0 * a * b * m
        + 24.0 * m * m
}
