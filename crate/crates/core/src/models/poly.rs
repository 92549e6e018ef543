use std::path::Path;

use nalgebra::{Matrix3, Vector4};

use super::hopf::{hopf, hopf_jet, scaled_frame_coefficients};
use crate::cayley::Vec7;
use crate::geometry::{ChartPoint, Immersion, ImmersionJet};
use crate::jet::{multi_factorial, Jet3, N_MONOMIALS};
use crate::{Error, Result};

/// One monomial `c · y₁^a₁ y₂^a₂ y₃^a₃ y₄^a₄` of an output coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub exponents: [u8; 4],
    pub coefficient: f64,
}

/// A polynomial map R⁴ → R⁷.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolyMap {
    pub rows: [Vec<Term>; 7],
}

impl PolyMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c · y^exponents` to output `row` (0-based).
    pub fn add(&mut self, row: usize, exponents: [u8; 4], coefficient: f64) -> &mut Self {
        self.rows[row].push(Term { exponents, coefficient });
        self
    }

    pub fn degree(&self) -> u8 {
        self.rows.iter().flatten().map(|t| t.exponents.iter().sum::<u8>()).max().unwrap_or(0)
    }

    pub fn eval(&self, y: &Vector4<f64>) -> Vec7 {
        Vec7::from_fn(|r, _| {
            self.rows[r]
                .iter()
                .map(|t| t.coefficient * (0..4).map(|a| y[a].powi(t.exponents[a] as i32)).product::<f64>())
                .sum()
        })
    }

    pub fn eval_jet(&self, y: &[Jet3; 4]) -> [Jet3; 7] {
        let max = self.rows.iter().flatten().flat_map(|t| t.exponents).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<Jet3>> = y
            .iter()
            .map(|ya| {
                let mut p = vec![Jet3::constant(1.0)];
                for n in 1..=max {
                    p.push(p[n - 1] * *ya);
                }
                p
            })
            .collect();
        std::array::from_fn(|r| {
            let mut acc = Jet3::ZERO;
            for t in &self.rows[r] {
                let mut m = Jet3::constant(t.coefficient);
                for a in 0..4 {
                    if t.exponents[a] > 0 {
                        m = m * powers[a][t.exponents[a] as usize];
                    }
                }
                acc += m;
            }
            acc
        })
    }

    /// Parses lines `row a1 a2 a3 a4 coefficient` with `row` in `1..=7`.
    /// Blank lines and `#` comments are ignored; a line `frame s1 s2 s3`
    /// is returned separately as frame-field scales.
    pub fn parse(text: &str) -> Result<(Self, Option<[f64; 3]>)> {
        let mut map = Self::new();
        let mut scales = None;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: String| Error::PolyParse { line, msg };
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields[0] == "frame" {
                if fields.len() != 4 {
                    return Err(err("expected `frame s1 s2 s3`".into()));
                }
                let mut s = [0.0; 3];
                for (i, f) in fields[1..].iter().enumerate() {
                    s[i] = parse_expr(f).ok_or_else(|| err(format!("bad scale `{f}`")))?;
                }
                scales = Some(s);
                continue;
            }
            if fields.len() != 6 {
                return Err(err(format!("expected 6 fields, found {}", fields.len())));
            }
            let row: usize = fields[0].parse().map_err(|_| err(format!("bad row `{}`", fields[0])))?;
            if !(1..=7).contains(&row) {
                return Err(err(format!("row {row} outside 1..=7")));
            }
            let mut e = [0u8; 4];
            for a in 0..4 {
                e[a] = fields[1 + a].parse().map_err(|_| err(format!("bad exponent `{}`", fields[1 + a])))?;
            }
            let c = parse_expr(fields[5]).ok_or_else(|| err(format!("bad coefficient `{}`", fields[5])))?;
            map.add(row - 1, e, c);
        }
        Ok((map, scales))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (r, row) in self.rows.iter().enumerate() {
            for t in row {
                let [a, b, c, d] = t.exponents;
                s.push_str(&format!("{} {a} {b} {c} {d} {:e}\n", r + 1, t.coefficient));
            }
        }
        s
    }
}

// A float, or `sqrt(v)`, or a product/quotient of such factors separated by
// `*` and `/`.
fn parse_expr(s: &str) -> Option<f64> {
    let mut value = 1.0;
    let mut op = '*';
    let mut rest = s;
    loop {
        let end = rest.find(['*', '/']).unwrap_or(rest.len());
        let (tok, tail) = rest.split_at(end);
        let v = match tok.strip_prefix("sqrt(").and_then(|t| t.strip_suffix(')')) {
            Some(inner) => inner.parse::<f64>().ok()?.sqrt(),
            None => match tok.strip_prefix("-sqrt(").and_then(|t| t.strip_suffix(')')) {
                Some(inner) => -inner.parse::<f64>().ok()?.sqrt(),
                None => tok.parse::<f64>().ok()?,
            },
        };
        value = if op == '*' { value * v } else { value / v };
        if tail.is_empty() {
            break;
        }
        op = tail.chars().next()?;
        rest = &tail[1..];
    }
    value.is_finite().then_some(value)
}

/// A polynomial map on S³ ⊂ R⁴ composed with the Hopf chart. When frame
/// scales `s` are given, `e_i = s_i X_i` is used as the global frame.
#[derive(Debug, Clone)]
pub struct PolynomialImmersion {
    name: String,
    map: PolyMap,
    scales: Option<[f64; 3]>,
}

impl PolynomialImmersion {
    pub fn new(name: impl Into<String>, map: PolyMap, scales: Option<[f64; 3]>) -> Self {
        Self { name: name.into(), map, scales }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let (map, scales) = PolyMap::parse(&text)?;
        Ok(Self::new(format!("poly:{}", path.display()), map, scales))
    }

    pub fn map(&self) -> &PolyMap {
        &self.map
    }

    pub fn scales(&self) -> Option<[f64; 3]> {
        self.scales
    }

    /// `Ψ(y)` for a point of R⁴.
    pub fn eval_r4(&self, y: &Vector4<f64>) -> Vec7 {
        self.map.eval(y)
    }
}

impl Immersion for PolynomialImmersion {
    fn name(&self) -> &str {
        &self.name
    }

    fn value(&self, t: &[f64; 3]) -> Vec7 {
        self.map.eval(&hopf(&ChartPoint(*t)))
    }

    fn analytic_jet(&self, t: &[f64; 3]) -> Option<ImmersionJet> {
        let rows = self.map.eval_jet(&hopf_jet(&ChartPoint(*t)));
        let partials: [Vec7; N_MONOMIALS] =
            std::array::from_fn(|i| Vec7::from_fn(|r, _| rows[r].coeffs[i] * multi_factorial(i)));
        Some(ImmersionJet { order: 3, partials })
    }

    fn frame_fields(&self, t: &[f64; 3]) -> Option<Matrix3<f64>> {
        self.scales.map(|s| scaled_frame_coefficients(&ChartPoint(*t), &s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{fd_jet, jet};

    #[test]
    fn parse_and_round_trip() {
        let text = "# test\nframe 1.5 sqrt(3)/2 -sqrt(3)/2\n1 2 0 0 0 5/9\n2 0 1 0 0 -2/3 # trailing\n";
        let (m, s) = PolyMap::parse(text).unwrap();
        let s = s.unwrap();
        assert!((s[1] - 3f64.sqrt() / 2.0).abs() < 1e-15 && (s[2] + s[1]).abs() < 1e-15);
        assert_eq!(m.rows[0][0].exponents, [2, 0, 0, 0]);
        assert!((m.rows[0][0].coefficient - 5.0 / 9.0).abs() < 1e-16);
        let (again, _) = PolyMap::parse(&m.to_text()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn parse_errors_carry_line() {
        for (text, line) in [("1 0 0 0 0\n", 1), ("\n8 0 0 0 0 1\n", 2), ("1 0 0 x 0 1\n", 1), ("frame 1 2\n", 1)] {
            match PolyMap::parse(text) {
                Err(Error::PolyParse { line: l, .. }) => assert_eq!(l, line),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn analytic_jet_matches_finite_differences() {
        let mut m = PolyMap::new();
        m.add(0, [1, 1, 0, 0], 2.0).add(3, [0, 0, 2, 1], -1.5).add(6, [3, 0, 0, 0], 0.5);
        let imm = PolynomialImmersion::new("t", m, None);
        let q = ChartPoint::new(0.6, 1.2, 4.0);
        let a = jet(&imm, &q, 3).unwrap();
        let f = fd_jet(&imm, &q, 3, None).unwrap();
        assert!(a.max_deviation(&f, 3) < 1e-6, "{}", a.max_deviation(&f, 3));
    }
}
