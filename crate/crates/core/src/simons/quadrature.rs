use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::geometry::ChartPoint;
use crate::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(z) and P_n'(z) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 {
                1.0
            } else if n == 1 {
                z
            } else {
                p1
            };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            z = 0.0;
            dp = 1.0;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Tensor-product rule on the Hopf chart: Gauss–Legendre in `η ∈ [0, π/2]`
/// and the trapezoid rule with offset nodes `(j + ½)2π/n` in `ξ₁, ξ₂`.
/// All nodes are interior, so the chart poles are never sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct QuadratureRule {
    pub n: [usize; 3],
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self { n: [32, 32, 32] }
    }
}

impl fmt::Display for QuadratureRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.n[0], self.n[1], self.n[2])
    }
}

impl From<QuadratureRule> for String {
    fn from(r: QuadratureRule) -> Self {
        r.to_string()
    }
}

impl TryFrom<String> for QuadratureRule {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for QuadratureRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad =
            || Error::InvalidConfig(format!("quadrature rule `{s}` is not `n_eta,n_xi1,n_xi2` with positive counts"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut n = [0; 3];
        for (a, p) in parts.iter().enumerate() {
            n[a] = p.parse().map_err(|_| bad())?;
        }
        Self::new(n).map_err(|_| bad())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub point: ChartPoint,
    pub weight: f64,
}

impl QuadratureRule {
    pub fn new(n: [usize; 3]) -> Result<Self> {
        if n.contains(&0) {
            return Err(Error::InvalidConfig(format!("quadrature counts must be positive, got {n:?}")));
        }
        Ok(Self { n })
    }

    /// Polynomial degree integrated exactly in `η` and the highest
    /// trigonometric degree integrated exactly in each `ξ`.
    pub fn exactness(&self) -> [usize; 3] {
        [2 * self.n[0] - 1, self.n[1] - 1, self.n[2] - 1]
    }

    pub fn len(&self) -> usize {
        self.n.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// A strictly coarser rule used to measure convergence.
    pub fn companion(&self) -> Self {
        Self { n: self.n.map(|k| k.saturating_sub((k / 4).max(1)).max(1)) }
    }

    /// Nodes in `η`-major order with weights for `dη dξ₁ dξ₂`.
    pub fn nodes(&self) -> Vec<Node> {
        let (x, w) = gauss_legendre(self.n[0]);
        let half = FRAC_PI_2 / 2.0;
        let periodic = |n: usize| -> Vec<f64> { (0..n).map(|j| (j as f64 + 0.5) * 2.0 * PI / n as f64).collect() };
        let (a, b) = (periodic(self.n[1]), periodic(self.n[2]));
        let (wa, wb) = (2.0 * PI / self.n[1] as f64, 2.0 * PI / self.n[2] as f64);
        let mut out = Vec::with_capacity(self.len());
        for (xi, wi) in x.iter().zip(&w) {
            let eta = half * (xi + 1.0);
            for &s in &a {
                for &t in &b {
                    out.push(Node { point: ChartPoint::new(eta, s, t), weight: wi * half * wa * wb });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        for n in 1..12 {
            let (x, w) = gauss_legendre(n);
            assert!(w.iter().all(|&wi| wi > 0.0));
            for deg in 0..2 * n {
                let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "n={n} deg={deg}: {q} vs {exact}");
            }
        }
    }

    #[test]
    fn round_sphere_volume() {
        // √det g = cos η sin η on the round S³
        let rule = QuadratureRule::default();
        let f: Vec<f64> = rule.nodes().iter().map(|nd| nd.weight * nd.point.0[0].sin() * nd.point.0[0].cos()).collect();
        let v = crate::par::pairwise_sum(&f);
        assert!((v - 2.0 * PI * PI).abs() < 1e-12, "{v}");
    }

    #[test]
    fn nodes_are_interior() {
        let rule = QuadratureRule::new([5, 3, 4]).unwrap();
        let nodes = rule.nodes();
        assert_eq!(nodes.len(), 60);
        assert!(nodes.iter().all(|nd| nd.point.0[0] > 0.0 && nd.point.0[0] < FRAC_PI_2));
        assert_eq!(rule.exactness(), [9, 2, 3]);
    }

    #[test]
    fn parse_rule() {
        assert_eq!("8, 8,16".parse::<QuadratureRule>().unwrap().n, [8, 8, 16]);
        assert!("8,8".parse::<QuadratureRule>().is_err());
        assert!("8,0,8".parse::<QuadratureRule>().is_err());
        assert_eq!(QuadratureRule::default().companion().n, [24, 24, 24]);
        assert_eq!(QuadratureRule::new([1, 1, 1]).unwrap().companion().n, [1, 1, 1]);
    }
}
