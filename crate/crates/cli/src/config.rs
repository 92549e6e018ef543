use std::path::PathBuf;

use clap::{Args, ValueEnum};
use nk6_core::cayley::MulTable;
use nk6_core::geometry::{ChartPoint, FdJets, Immersion};
use nk6_core::models::{select_table, Model};
use nk6_core::simons::QuadratureRule;
use nk6_core::Tolerances;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// dvv, totally-geodesic, synthetic:a|b|c or poly:PATH
    #[arg(long, default_value = "dvv")]
    pub model: String,
    /// Cross-product table file, or `auto` to select a built-in table
    #[arg(long, env = "NK6_TABLE_PATH", default_value = "auto")]
    pub table: String,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Random samples per suite (identities, chart points)
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Quadrature counts `n_eta,n_xi1,n_xi2`
    #[arg(long, default_value = "32,32,32")]
    pub rule: QuadratureRule,
    /// Take every jet by finite differences with this base step
    #[arg(long)]
    pub fd_step: Option<f64>,
    /// Tolerance override, repeatable
    #[arg(long = "tol", value_name = "KEY=VAL")]
    pub tol: Vec<String>,
    /// Write results into this directory instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Chart points `eta,xi1,xi2;eta,xi1,xi2;...` (default: random points)
    #[arg(long)]
    pub points: Option<String>,
}

/// Validated run configuration, echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub model: String,
    pub table: String,
    pub seed: u64,
    pub samples: usize,
    pub rule: QuadratureRule,
    pub fd_step: Option<f64>,
    pub tolerances: Tolerances,
    pub format: Format,
    pub points: Option<Vec<[f64; 3]>>,
}

impl RunConfig {
    pub fn from_args(a: &RunArgs) -> Result<Self, CliError> {
        let mut tolerances = Tolerances::default();
        for kv in &a.tol {
            let (k, v) = kv.split_once('=').ok_or_else(|| CliError::Usage(format!("`--tol {kv}` is not KEY=VAL")))?;
            let val: f64 = v.trim().parse().map_err(|_| CliError::Usage(format!("`{v}` is not a number")))?;
            if !tolerances.set(k.trim(), val) {
                return Err(CliError::Usage(format!(
                    "`--tol {kv}`: key must be one of {} and the value positive",
                    Tolerances::KEYS.join(", ")
                )));
            }
        }
        if let Some(h) = a.fd_step {
            if !(h > 0.0 && h.is_finite()) {
                return Err(CliError::Usage(format!("--fd-step must be positive, got {h}")));
            }
        }
        if a.samples == 0 {
            return Err(CliError::Usage("--samples must be positive".into()));
        }
        let points = a.points.as_deref().map(parse_points).transpose()?;
        Ok(Self {
            model: a.model.clone(),
            table: a.table.clone(),
            seed: a.seed,
            samples: a.samples,
            rule: a.rule,
            fd_step: a.fd_step,
            tolerances,
            format: a.format,
            points,
        })
    }

    pub fn load_table(&self) -> Result<MulTable, CliError> {
        if self.table == "auto" {
            Ok(select_table(&MulTable::candidates())?)
        } else {
            Ok(MulTable::load(&self.table)?)
        }
    }

    /// The model's immersion, with jets forced through finite differences
    /// when a step was given.
    pub fn immersion<'a>(&self, model: &'a Model) -> Option<Box<dyn Immersion + 'a>> {
        let imm = model.immersion()?;
        Some(match self.fd_step {
            Some(h) => Box::new(FdJets::new(imm.clone(), Some(h))),
            None => Box::new(imm),
        })
    }

    pub fn chart_points(&self) -> Vec<ChartPoint> {
        use rand::{Rng, SeedableRng};
        use std::f64::consts::{FRAC_PI_2, PI};
        match &self.points {
            Some(p) => p.iter().map(|c| ChartPoint(*c)).collect(),
            None => {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.seed);
                (0..self.samples)
                    .map(|_| {
                        ChartPoint::new(
                            rng.random_range(0.05..FRAC_PI_2 - 0.05),
                            rng.random_range(0.0..2.0 * PI),
                            rng.random_range(0.0..2.0 * PI),
                        )
                    })
                    .collect()
            }
        }
    }
}

fn parse_points(s: &str) -> Result<Vec<[f64; 3]>, CliError> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let v: Vec<f64> = p
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Usage(format!("point `{p}` is not eta,xi1,xi2")))?;
            <[f64; 3]>::try_from(v).map_err(|_| CliError::Usage(format!("point `{p}` needs three coordinates")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_parse() {
        assert_eq!(parse_points("0.5,1,2; 0.1, 0.2 ,0.3").unwrap(), vec![[0.5, 1.0, 2.0], [0.1, 0.2, 0.3]]);
        assert!(parse_points("0.5,1").is_err());
        assert!(parse_points("a,b,c").is_err());
    }
}
