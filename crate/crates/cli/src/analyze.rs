use nk6_core::cayley::MulTable;
use nk6_core::geometry::ChartPoint;
use nk6_core::models::Model;
use nk6_core::simons::{analyze_point, analyze_pointwise, FormAnalysis};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{num, to_csv};

/// Per-point invariants with the pinching thresholds as annotations.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub point: Option<[f64; 3]>,
    pub hsq: f64,
    pub theta: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub ric_min: f64,
    pub ric_max: f64,
    pub tau: f64,
    pub nabla_sq: f64,
    pub t_sq: f64,
    pub j_defect: f64,
    pub integrand: f64,
    /// `1/16 ≤ K ≤ 21/16`
    pub k_pinched: bool,
    /// `Ric > 3/4`
    pub ric_above_3_4: bool,
    /// `‖h‖² < 5/2`
    pub hsq_below_5_2: bool,
    pub error: Option<String>,
}

pub const HEADER: [&str; 22] = [
    "eta",
    "xi1",
    "xi2",
    "hsq",
    "theta",
    "lambda1",
    "lambda2",
    "mu1",
    "mu2",
    "k_min",
    "k_max",
    "ric_min",
    "ric_max",
    "tau",
    "nabla_sq",
    "t_sq",
    "j_defect",
    "integrand",
    "k_pinched",
    "ric_above_3_4",
    "hsq_below_5_2",
    "error",
];

// Tolerance on the pinching annotations.
const EDGE: f64 = 1e-9;

impl Row {
    fn from_form(point: Option<[f64; 3]>, f: &FormAnalysis, nabla_sq: f64, t_sq: f64, j_defect: f64) -> Self {
        let c = &f.curvature;
        let t = f.canonical.as_ref().map(|c| c.tuple);
        Self {
            point,
            hsq: f.hsq,
            theta: f.theta,
            lambda1: t.map_or(f64::NAN, |t| t.lambda1),
            lambda2: t.map_or(f64::NAN, |t| t.lambda2),
            mu1: t.map_or(f64::NAN, |t| t.mu1),
            mu2: t.map_or(f64::NAN, |t| t.mu2),
            k_min: c.sectional_min,
            k_max: c.sectional_max,
            ric_min: c.ricci_eigenvalues[0],
            ric_max: c.ricci_eigenvalues[2],
            tau: c.scalar,
            nabla_sq,
            t_sq,
            j_defect,
            integrand: f.integrand,
            k_pinched: c.sectional_min >= 1.0 / 16.0 - EDGE && c.sectional_max <= 21.0 / 16.0 + EDGE,
            ric_above_3_4: c.ricci_eigenvalues[0] > 0.75 + EDGE,
            hsq_below_5_2: f.hsq < 2.5 - EDGE,
            error: None,
        }
    }

    fn failed(point: [f64; 3], error: String) -> Self {
        Self {
            point: Some(point),
            hsq: f64::NAN,
            theta: f64::NAN,
            lambda1: f64::NAN,
            lambda2: f64::NAN,
            mu1: f64::NAN,
            mu2: f64::NAN,
            k_min: f64::NAN,
            k_max: f64::NAN,
            ric_min: f64::NAN,
            ric_max: f64::NAN,
            tau: f64::NAN,
            nabla_sq: f64::NAN,
            t_sq: f64::NAN,
            j_defect: f64::NAN,
            integrand: f64::NAN,
            k_pinched: false,
            ric_above_3_4: false,
            hsq_below_5_2: false,
            error: Some(error),
        }
    }

    pub fn csv(&self) -> [String; 22] {
        let p = self.point.map_or([f64::NAN; 3], |p| p);
        let b = |v: bool| if self.error.is_some() { String::new() } else { v.to_string() };
        [
            num(p[0]),
            num(p[1]),
            num(p[2]),
            num(self.hsq),
            num(self.theta),
            num(self.lambda1),
            num(self.lambda2),
            num(self.mu1),
            num(self.mu2),
            num(self.k_min),
            num(self.k_max),
            num(self.ric_min),
            num(self.ric_max),
            num(self.tau),
            num(self.nabla_sq),
            num(self.t_sq),
            num(self.j_defect),
            num(self.integrand),
            b(self.k_pinched),
            b(self.ric_above_3_4),
            b(self.hsq_below_5_2),
            self.error.clone().unwrap_or_default(),
        ]
    }
}

#[derive(Debug, Serialize)]
pub struct AnalyzeBody {
    pub rows: Vec<Row>,
    pub failed_points: usize,
}

pub fn run(cfg: &RunConfig, table: Option<&MulTable>, model: &Model) -> Result<AnalyzeBody, CliError> {
    let rows = match model {
        Model::Synthetic(s) => {
            // pointwise data: ∇h is the parallel one, so |∇h|² = 3/4 |h|²
            let f = analyze_pointwise(&s.sff(), &cfg.tolerances);
            vec![Row::from_form(None, &f, 0.75 * f.hsq, 0.0, 0.0)]
        }
        Model::Immersion(_) => {
            let table = table.expect("immersion models carry a table");
            let imm = cfg.immersion(model).expect("immersion model");
            cfg.chart_points()
                .iter()
                .map(|q: &ChartPoint| match analyze_point(table, imm.as_ref(), q, None, &cfg.tolerances) {
                    Ok(p) => Row::from_form(Some(q.0), &p.form, p.tensors.nabla_sq, p.tensors.t_sq, p.j_defect),
                    Err(e) => Row::failed(q.0, e.to_string()),
                })
                .collect()
        }
    };
    let failed_points = rows.iter().filter(|r| r.error.is_some()).count();
    Ok(AnalyzeBody { rows, failed_points })
}

pub fn csv(body: &AnalyzeBody) -> Result<String, CliError> {
    to_csv(&HEADER, body.rows.iter().map(Row::csv))
}
