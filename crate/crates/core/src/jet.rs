//! Truncated Taylor polynomials in three variables up to total degree three.
//!
//! A [`Jet3`] stores the Taylor coefficients `c_α = ∂^α f(t₀) / α!` of a
//! function of the chart coordinates. Arithmetic truncates everything above
//! degree three, so evaluating a smooth map on jets of the coordinate
//! functions yields its exact partial derivatives up to third order.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::OnceLock;

/// Number of monomials of degree ≤ 3 in three variables.
pub const N_MONOMIALS: usize = 20;

/// Maximum supported derivative order.
pub const MAX_ORDER: usize = 3;

/// Exponent vectors, sorted by total degree then lexicographically descending.
pub const MONOMIALS: [[u8; 3]; N_MONOMIALS] = [
    [0, 0, 0],
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [2, 0, 0],
    [1, 1, 0],
    [1, 0, 1],
    [0, 2, 0],
    [0, 1, 1],
    [0, 0, 2],
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

/// Index of the monomial with exponents `e`, if its degree is at most three.
pub fn monomial_index(e: [u8; 3]) -> Option<usize> {
    MONOMIALS.iter().position(|m| *m == e)
}

/// Index of the monomial `t_{a₁} t_{a₂} …` for a list of axes.
pub fn index_of_axes(axes: &[usize]) -> Option<usize> {
    let mut e = [0u8; 3];
    for &a in axes {
        *e.get_mut(a)? += 1;
    }
    monomial_index(e)
}

pub fn degree(idx: usize) -> usize {
    MONOMIALS[idx].iter().map(|&d| d as usize).sum()
}

/// `α! = α₁! α₂! α₃!`.
pub fn multi_factorial(idx: usize) -> f64 {
    MONOMIALS[idx].iter().map(|&d| (1..=d as u32).product::<u32>() as f64).product()
}

fn product_table() -> &'static [(u8, u8, u8)] {
    static TABLE: OnceLock<Vec<(u8, u8, u8)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::new();
        for (p, mp) in MONOMIALS.iter().enumerate() {
            for (q, mq) in MONOMIALS.iter().enumerate() {
                let e = [mp[0] + mq[0], mp[1] + mq[1], mp[2] + mq[2]];
                if let Some(r) = monomial_index(e) {
                    out.push((p as u8, q as u8, r as u8));
                }
            }
        }
        out
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    pub coeffs: [f64; N_MONOMIALS],
}

impl Jet3 {
    pub const ZERO: Self = Self { coeffs: [0.0; N_MONOMIALS] };

    pub fn constant(value: f64) -> Self {
        let mut coeffs = [0.0; N_MONOMIALS];
        coeffs[0] = value;
        Self { coeffs }
    }

    /// The coordinate function `t_axis` expanded about `value`.
    pub fn variable(value: f64, axis: usize) -> Self {
        let mut j = Self::constant(value);
        j.coeffs[1 + axis] = 1.0;
        j
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// The partial derivative `∂^α f` for the monomial index `idx`.
    pub fn partial(&self, idx: usize) -> f64 {
        self.coeffs[idx] * multi_factorial(idx)
    }

    /// Composition `g ∘ self` given `g` and its first three derivatives at
    /// `self.value()`.
    pub fn compose(&self, g: [f64; 4]) -> Self {
        let mut delta = *self;
        delta.coeffs[0] = 0.0;
        let d2 = delta * delta;
        let d3 = d2 * delta;
        let mut out = Self::constant(g[0]);
        for i in 1..N_MONOMIALS {
            out.coeffs[i] = g[1] * delta.coeffs[i] + g[2] / 2.0 * d2.coeffs[i] + g[3] / 6.0 * d3.coeffs[i];
        }
        out
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose([s, c, -s, -c])
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose([c, -s, -c, s])
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(1.0), |acc, _| acc * *self)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        out.coeffs.iter_mut().for_each(|c| *c *= s);
        out
    }
}

impl Default for Jet3 {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for Jet3 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for Jet3 {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for Jet3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Jet3 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Jet3 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = [0.0; N_MONOMIALS];
        for &(p, q, r) in product_table() {
            out[r as usize] += self.coeffs[p as usize] * rhs.coeffs[q as usize];
        }
        Self { coeffs: out }
    }
}

impl Mul<f64> for Jet3 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Add<f64> for Jet3 {
    type Output = Self;
    fn add(mut self, rhs: f64) -> Self {
        self.coeffs[0] += rhs;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_table_is_complete() {
        assert_eq!(MONOMIALS.iter().filter(|m| m.iter().sum::<u8>() <= 3).count(), N_MONOMIALS);
        for (i, m) in MONOMIALS.iter().enumerate() {
            assert_eq!(monomial_index(*m), Some(i));
        }
        assert_eq!(index_of_axes(&[0, 2, 0]), monomial_index([2, 0, 1]));
        assert_eq!(index_of_axes(&[0, 0, 0, 0]), None);
        assert_eq!(degree(14), 3);
        assert_eq!(multi_factorial(monomial_index([2, 1, 0]).unwrap()), 2.0);
        assert_eq!(multi_factorial(monomial_index([0, 0, 3]).unwrap()), 6.0);
    }

    #[test]
    fn polynomial_partials_are_exact() {
        // f = x²y + 3yz³ − z at (1, 2, −1)
        let (x, y, z) = (Jet3::variable(1.0, 0), Jet3::variable(2.0, 1), Jet3::variable(-1.0, 2));
        let f = x * x * y + y * z.powi(3) * 3.0 - z;
        let p = |e: [u8; 3]| f.partial(monomial_index(e).unwrap());
        assert_eq!(f.value(), 2.0 - 6.0 + 1.0);
        assert_eq!(p([1, 0, 0]), 4.0);
        assert_eq!(p([0, 1, 0]), 1.0 - 3.0);
        assert_eq!(p([0, 0, 1]), 18.0 - 1.0);
        assert_eq!(p([2, 0, 0]), 4.0);
        assert_eq!(p([1, 1, 0]), 2.0);
        assert_eq!(p([0, 1, 1]), 9.0);
        assert_eq!(p([0, 0, 2]), -36.0);
        assert_eq!(p([2, 1, 0]), 2.0);
        assert_eq!(p([0, 1, 2]), -18.0);
        assert_eq!(p([0, 0, 3]), 36.0);
        assert_eq!(p([1, 1, 1]), 0.0);
    }

    #[test]
    fn trig_chain_rule() {
        // f = sin(x y) at (0.3, 0.7)
        let (a, b) = (0.3f64, 0.7f64);
        let f = (Jet3::variable(a, 0) * Jet3::variable(b, 1)).sin();
        let p = |e: [u8; 3]| f.partial(monomial_index(e).unwrap());
        let u = a * b;
        assert!((f.value() - u.sin()).abs() < 1e-15);
        assert!((p([1, 0, 0]) - b * u.cos()).abs() < 1e-15);
        assert!((p([1, 1, 0]) - (u.cos() - a * b * u.sin())).abs() < 1e-15);
        assert!((p([2, 1, 0]) - (-2.0 * b * u.sin() - b * b * a * u.cos() + 0.0 * u)).abs() < 1e-14);
        assert!((p([0, 3, 0]) - (-a * a * a * u.cos())).abs() < 1e-15);
        let c = Jet3::variable(a, 2).cos();
        assert!((c.partial(monomial_index([0, 0, 3]).unwrap()) - a.sin()).abs() < 1e-15);
        let s2 = Jet3::variable(a, 0).sin().powi(2) + Jet3::variable(a, 0).cos().powi(2);
        assert!((s2.value() - 1.0).abs() < 1e-15);
        assert!(s2.coeffs[1..].iter().all(|c| c.abs() < 1e-15));
    }
}
