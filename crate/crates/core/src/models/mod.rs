//! Built-in immersions of S³ into S⁶ and reference pointwise data.
//!
//! Every immersion is a polynomial map on S³ ⊂ R⁴ composed with the Hopf
//! chart `(η, ξ₁, ξ₂)`, so jets are exact.

mod berger;
mod builtin;
pub mod hopf;
mod poly;
mod synthetic;

pub use berger::{berger_closed_form, frame_brackets, BergerSpec};
pub use builtin::{
    coassociative_coordinate_planes, dvv_frame_scales, dvv_immersion, dvv_k, dvv_map, select_table, table_alignment,
    totally_geodesic_immersion, TableAlignment,
};
pub use hopf::S3Point;
pub use poly::{PolyMap, PolynomialImmersion, Term};
pub use synthetic::{synthetic_case, SyntheticCase, SyntheticH};

use crate::cayley::MulTable;
use crate::{Error, Result};

/// A model addressed by name.
#[derive(Debug, Clone)]
pub enum Model {
    Immersion(PolynomialImmersion),
    Synthetic(SyntheticH),
}

impl Model {
    /// Resolves `dvv`, `totally-geodesic`, `synthetic:a|b|c` or `poly:PATH`.
    pub fn resolve(name: &str, table: &MulTable) -> Result<Self> {
        match name {
            "dvv" => Ok(Self::Immersion(dvv_immersion())),
            "totally-geodesic" => Ok(Self::Immersion(totally_geodesic_immersion(table)?)),
            _ => {
                if let Some(tag) = name.strip_prefix("synthetic:") {
                    Ok(Self::Synthetic(synthetic_case(tag.parse()?)))
                } else if let Some(path) = name.strip_prefix("poly:") {
                    Ok(Self::Immersion(PolynomialImmersion::load(path)?))
                } else {
                    Err(Error::UnknownModel(name.to_string()))
                }
            }
        }
    }

    pub fn immersion(&self) -> Option<&PolynomialImmersion> {
        match self {
            Self::Immersion(i) => Some(i),
            Self::Synthetic(_) => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Immersion(i) => crate::geometry::Immersion::name(i).to_string(),
            Self::Synthetic(s) => format!("synthetic:{}", s.case),
        }
    }
}
