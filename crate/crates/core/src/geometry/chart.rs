use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Matrix3;

use crate::cayley::Vec7;
use crate::jet::{self, index_of_axes, MAX_ORDER, MONOMIALS, N_MONOMIALS};
use crate::{Error, Result};

/// Coordinates `(t₁, t₂, t₃)` of a chart point. For the Hopf chart these
/// are `(η, ξ₁, ξ₂)` in radians.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ChartPoint(pub [f64; 3]);

impl ChartPoint {
    pub fn new(t1: f64, t2: f64, t3: f64) -> Self {
        Self([t1, t2, t3])
    }

    pub fn coords(&self) -> &[f64; 3] {
        &self.0
    }

    pub fn offset(&self, axis: usize, h: f64) -> Self {
        let mut t = self.0;
        t[axis] += h;
        Self(t)
    }
}

/// Where a chart stops being an immersion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    None,
    /// Hopf coordinates collapse a circle at `η = 0` and at `η = π/2`.
    HopfPoles,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartDomain {
    pub lower: [f64; 3],
    pub upper: [f64; 3],
    pub periodic: [bool; 3],
    pub degeneracy: Degeneracy,
}

impl ChartDomain {
    /// `η ∈ [0, π/2]`, `ξ₁, ξ₂ ∈ [0, 2π)`.
    pub const HOPF: Self = Self {
        lower: [0.0, 0.0, 0.0],
        upper: [FRAC_PI_2, 2.0 * PI, 2.0 * PI],
        periodic: [false, true, true],
        degeneracy: Degeneracy::HopfPoles,
    };

    pub fn contains(&self, q: &ChartPoint) -> bool {
        (0..3).all(|a| {
            let t = q.0[a];
            t.is_finite() && t >= self.lower[a] && if self.periodic[a] { t < self.upper[a] } else { t <= self.upper[a] }
        })
    }

    pub fn check(&self, q: &ChartPoint) -> Result<()> {
        if self.contains(q) {
            Ok(())
        } else {
            Err(Error::OutsideDomain(q.0[0], q.0[1], q.0[2]))
        }
    }

    /// Distance (in chart coordinates) from `q` to the degeneracy locus.
    pub fn degeneracy_distance(&self, q: &ChartPoint) -> f64 {
        match self.degeneracy {
            Degeneracy::None => f64::INFINITY,
            Degeneracy::HopfPoles => q.0[0].min(FRAC_PI_2 - q.0[0]).max(0.0),
        }
    }

    /// Distance from `q` to the boundary of the non-periodic directions.
    pub fn boundary_distance(&self, q: &ChartPoint) -> f64 {
        (0..3)
            .filter(|&a| !self.periodic[a])
            .map(|a| (q.0[a] - self.lower[a]).min(self.upper[a] - q.0[a]))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Value and partial derivatives of an immersion at a chart point.
#[derive(Debug, Clone, PartialEq)]
pub struct ImmersionJet {
    pub order: usize,
    /// `∂^α x` for every monomial `α` of [`jet::MONOMIALS`]; zero above `order`.
    pub partials: [Vec7; N_MONOMIALS],
}

impl ImmersionJet {
    pub fn value(&self) -> &Vec7 {
        &self.partials[0]
    }

    /// Mixed partial `∂_{a₁} ⋯ ∂_{a_k} x`.
    pub fn partial(&self, axes: &[usize]) -> &Vec7 {
        &self.partials[index_of_axes(axes).expect("derivative order above 3")]
    }

    pub fn d1(&self, a: usize) -> &Vec7 {
        self.partial(&[a])
    }

    pub fn d2(&self, a: usize, b: usize) -> &Vec7 {
        self.partial(&[a, b])
    }

    pub fn d3(&self, a: usize, b: usize, c: usize) -> &Vec7 {
        self.partial(&[a, b, c])
    }

    /// Induced metric `g_ab = ⟨∂_a x, ∂_b x⟩`.
    pub fn metric(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|a, b| self.d1(a).dot(self.d1(b)))
    }

    /// Drops derivatives above `order`.
    pub fn truncated(mut self, order: usize) -> Self {
        for (i, p) in self.partials.iter_mut().enumerate() {
            if jet::degree(i) > order {
                *p = Vec7::zeros();
            }
        }
        self.order = self.order.min(order);
        self
    }

    /// Largest deviation between two jets over derivatives up to `order`.
    pub fn max_deviation(&self, other: &Self, order: usize) -> f64 {
        (0..N_MONOMIALS)
            .filter(|&i| jet::degree(i) <= order)
            .map(|i| (self.partials[i] - other.partials[i]).amax())
            .fold(0.0, f64::max)
    }
}

/// A smooth map from a three-dimensional chart into S⁶ ⊂ R⁷.
///
/// Implementations supply point values; they may also supply exact jets and
/// a global orthonormal frame expressed in the chart basis.
pub trait Immersion: Send + Sync {
    fn name(&self) -> &str;

    fn domain(&self) -> ChartDomain {
        ChartDomain::HOPF
    }

    fn value(&self, t: &[f64; 3]) -> Vec7;

    /// Exact partial derivatives up to third order, when available.
    fn analytic_jet(&self, _t: &[f64; 3]) -> Option<ImmersionJet> {
        None
    }

    /// Rows are the chart-basis coefficients of an orthonormal tangent frame
    /// `e_i = Σ_a c_ia ∂_a x`, for models that carry global frame fields.
    /// Only called where the chart is non-degenerate.
    fn frame_fields(&self, _t: &[f64; 3]) -> Option<Matrix3<f64>> {
        None
    }

    /// Base step for finite-difference jets; `None` selects the default.
    fn fd_step(&self) -> Option<f64> {
        None
    }
}

impl<T: Immersion + ?Sized> Immersion for &T {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn domain(&self) -> ChartDomain {
        (**self).domain()
    }
    fn value(&self, t: &[f64; 3]) -> Vec7 {
        (**self).value(t)
    }
    fn analytic_jet(&self, t: &[f64; 3]) -> Option<ImmersionJet> {
        (**self).analytic_jet(t)
    }
    fn frame_fields(&self, t: &[f64; 3]) -> Option<Matrix3<f64>> {
        (**self).frame_fields(t)
    }
    fn fd_step(&self) -> Option<f64> {
        (**self).fd_step()
    }
}

impl<T: Immersion + ?Sized> Immersion for Box<T> {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn domain(&self) -> ChartDomain {
        (**self).domain()
    }
    fn value(&self, t: &[f64; 3]) -> Vec7 {
        (**self).value(t)
    }
    fn analytic_jet(&self, t: &[f64; 3]) -> Option<ImmersionJet> {
        (**self).analytic_jet(t)
    }
    fn frame_fields(&self, t: &[f64; 3]) -> Option<Matrix3<f64>> {
        (**self).frame_fields(t)
    }
    fn fd_step(&self) -> Option<f64> {
        (**self).fd_step()
    }
}

/// Hides the analytic jets of an immersion so that every derivative is
/// taken by finite differences.
#[derive(Debug, Clone)]
pub struct FdJets<I> {
    pub inner: I,
    pub step: Option<f64>,
}

impl<I: Immersion> FdJets<I> {
    pub fn new(inner: I, step: Option<f64>) -> Self {
        Self { inner, step }
    }
}

impl<I: Immersion> Immersion for FdJets<I> {
    fn name(&self) -> &str {
        self.inner.name()
    }
    fn domain(&self) -> ChartDomain {
        self.inner.domain()
    }
    fn value(&self, t: &[f64; 3]) -> Vec7 {
        self.inner.value(t)
    }
    fn frame_fields(&self, t: &[f64; 3]) -> Option<Matrix3<f64>> {
        self.inner.frame_fields(t)
    }
    fn fd_step(&self) -> Option<f64> {
        self.step
    }
}

/// Jet of `imm` at `q` up to `order`: exact when the immersion provides
/// analytic jets, central finite differences otherwise.
pub fn jet<I: Immersion + ?Sized>(imm: &I, q: &ChartPoint, order: usize) -> Result<ImmersionJet> {
    if order > MAX_ORDER {
        return Err(Error::JetOrder(order));
    }
    imm.domain().check(q)?;
    match imm.analytic_jet(&q.0) {
        Some(j) => Ok(j.truncated(order)),
        None => fd_jet(imm, q, order, imm.fd_step()),
    }
}

// Fourth-order central first-derivative stencil.
const STENCIL: [(f64, f64); 4] = [(-2.0, 1.0 / 12.0), (-1.0, -8.0 / 12.0), (1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)];

/// Default finite-difference step for derivatives of order `k` with the
/// fourth-order stencil: `ε^(1/(k+4))`.
pub fn default_fd_step(k: usize) -> f64 {
    f64::EPSILON.powf(1.0 / (k as f64 + 4.0))
}

/// Finite-difference jet from point values, composing a fourth-order central
/// stencil along each differentiated axis. `step` overrides the per-order
/// default for every order.
pub fn fd_jet<I: Immersion + ?Sized>(imm: &I, q: &ChartPoint, order: usize, step: Option<f64>) -> Result<ImmersionJet> {
    if order > MAX_ORDER {
        return Err(Error::JetOrder(order));
    }
    imm.domain().check(q)?;
    let mut partials = [Vec7::zeros(); N_MONOMIALS];
    partials[0] = imm.value(&q.0);
    for (idx, m) in MONOMIALS.iter().enumerate().skip(1) {
        let k = jet::degree(idx);
        if k > order {
            continue;
        }
        let h = step.unwrap_or_else(|| default_fd_step(k));
        let axes: Vec<usize> = (0..3).flat_map(|a| std::iter::repeat_n(a, m[a] as usize)).collect();
        let mut acc = Vec7::zeros();
        let n = STENCIL.len().pow(k as u32);
        for code in 0..n {
            let mut t = q.0;
            let mut w = 1.0;
            let mut c = code;
            for &a in &axes {
                let (s, wi) = STENCIL[c % STENCIL.len()];
                c /= STENCIL.len();
                t[a] += s * h;
                w *= wi;
            }
            acc += imm.value(&t) * w;
        }
        partials[idx] = acc / h.powi(k as i32);
    }
    Ok(ImmersionJet { order, partials })
}
