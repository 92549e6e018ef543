use std::fmt;
use std::str::FromStr;

use crate::canonical::{sff_from_tuple, CanonicalTuple};
use crate::geometry::Sff;
use crate::{Error, Result};

/// Pointwise normal forms of the second fundamental form of a Lagrangian
/// submanifold with `𝕋 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum SyntheticCase {
    /// Totally geodesic.
    A,
    /// Constant sectional curvature 1/16.
    B,
    /// The Berger sphere.
    C,
}

impl SyntheticCase {
    pub const ALL: [Self; 3] = [Self::A, Self::B, Self::C];

    pub fn tag(&self) -> &'static str {
        match self {
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
        }
    }
}

impl fmt::Display for SyntheticCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SyntheticCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Self::A),
            "b" | "B" => Ok(Self::B),
            "c" | "C" => Ok(Self::C),
            _ => Err(Error::UnknownModel(format!("synthetic:{s}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SyntheticH {
    pub case: SyntheticCase,
    pub tuple: CanonicalTuple,
}

impl SyntheticH {
    pub fn sff(&self) -> Sff {
        sff_from_tuple(&self.tuple)
    }
}

pub fn synthetic_case(case: SyntheticCase) -> SyntheticH {
    let s5 = 5f64.sqrt() / 4.0;
    let tuple = match case {
        SyntheticCase::A => CanonicalTuple::new(0.0, 0.0, 0.0, 0.0),
        SyntheticCase::B => CanonicalTuple::new(s5, s5, 10f64.sqrt() / 4.0, 0.0),
        SyntheticCase::C => CanonicalTuple::new(s5, s5, 0.0, 0.0),
    };
    SyntheticH { case, tuple }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms() {
        assert_eq!(synthetic_case(SyntheticCase::A).sff().norm_sq(), 0.0);
        assert!((synthetic_case(SyntheticCase::B).sff().norm_sq() - 45.0 / 8.0).abs() < 1e-14);
        assert!((synthetic_case(SyntheticCase::C).sff().norm_sq() - 25.0 / 8.0).abs() < 1e-14);
    }

    #[test]
    fn case_b_matches_normal_form() {
        // h(e₂,e₂) = −(√5/4)Je₁ + (√10/4)Je₂, h(e₂,e₃) = −(√10/4)Je₃
        let h = synthetic_case(SyntheticCase::B).sff().h;
        assert!((h[0][1][1] + 5f64.sqrt() / 4.0).abs() < 1e-15);
        assert!((h[1][1][1] - 10f64.sqrt() / 4.0).abs() < 1e-15);
        assert!((h[2][1][2] + 10f64.sqrt() / 4.0).abs() < 1e-15);
        assert!(h[1][1][2].abs() < 1e-15);
    }

    #[test]
    fn tags() {
        for c in SyntheticCase::ALL {
            assert_eq!(c.tag().parse::<SyntheticCase>().unwrap(), c);
        }
        assert!("d".parse::<SyntheticCase>().is_err());
    }
}
