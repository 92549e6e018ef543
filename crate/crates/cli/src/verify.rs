use nk6_core::canonical::{canonical_basis, closed_forms, commutator_invariant_direct, h_matrices, HMatrices};
use nk6_core::cayley::{verify_nk_identities, MulTable};
use nk6_core::geometry::Immersion;
use nk6_core::models::{table_alignment, Model, SyntheticCase, SyntheticH};
use nk6_core::simons::{analyze_point, analyze_pointwise, PointAnalysis};
use nk6_core::{Error, Tolerances};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{Check, Suite};

const F_NORM_TOL: f64 = 1e-10;
const DEFECT_TOL: f64 = 1e-7;
const THETA_TOL: f64 = 1e-6;
const TUPLE_TOL: f64 = 1e-7;
const ALGEBRA_TOL: f64 = 1e-12;

#[derive(Debug, Serialize)]
pub struct VerifyBody {
    pub suites: Vec<Suite>,
}

impl VerifyBody {
    pub fn pass(&self) -> bool {
        self.suites.iter().all(|s| s.pass)
    }
}

/// Table from the configuration; an axiom failure becomes a failed suite.
pub fn table_suite(cfg: &RunConfig) -> Result<(Option<MulTable>, Suite), CliError> {
    match cfg.load_table() {
        Ok(t) => {
            let checks =
                vec![Check::new(format!("axioms of `{}`", t.name()), "|u x v|^2 = |u|^2 |v|^2 - <u, v>^2", 0.0, 0.0)];
            Ok((Some(t), Suite::new("table", checks)))
        }
        Err(CliError::Core(e @ Error::InvalidTable(_))) => Ok((
            None,
            Suite::new("table", vec![Check::failed("axioms", "|u x v|^2 = |u|^2 |v|^2 - <u, v>^2", e.to_string())]),
        )),
        Err(e) => Err(e),
    }
}

pub fn run(cfg: &RunConfig, model: &Model) -> Result<VerifyBody, CliError> {
    let tol = &cfg.tolerances;
    let mut suites = Vec::new();
    if let Model::Synthetic(s) = model {
        suites.push(algebra_suite(s, tol));
        return Ok(VerifyBody { suites });
    }
    let (table, ts) = table_suite(cfg)?;
    suites.push(ts);
    let Some(table) = table else {
        return Ok(VerifyBody { suites });
    };
    if model.name() == "dvv" {
        let a = table_alignment(&table);
        suites.push(Suite::new(
            "alignment",
            vec![
                Check::new("lagrangian", "<J e_i, e_j> = 0", a.lagrangian, tol.frame),
                Check::new("G(E2, E3)", "G(E2, E3) = J E1", a.g_alignment, tol.equality),
                Check::new("h(E1, E1)", "h(E1, E1) = sqrt(5)/2 J E1", a.h_sign, tol.equality),
            ],
        ));
    }
    let rep = verify_nk_identities(&table, cfg.samples, cfg.seed);
    suites.push(Suite::new(
        "identities",
        vec![
            Check::new("antisymmetry", "G(X, Y) + G(Y, X) = 0", rep.antisymmetry, tol.unit),
            Check::new("J anticommutes", "G(X, JY) + J G(X, Y) = 0", rep.j_anticommute, tol.unit),
            Check::new("skew", "g(G(X, Y), Z) + g(G(X, Z), Y) = 0", rep.skew, tol.unit),
            Check::new(
                "inner product",
                "g(G(X,Y), G(Z,W)) = g(X,Z)g(Y,W) - g(X,W)g(Z,Y) + g(JX,Z)g(Y,JW) - g(JX,W)g(Y,JZ)",
                rep.inner_product,
                tol.unit,
            ),
            Check::new("almost complex", "J^2 = -1, |JX| = |X|", rep.almost_complex, tol.unit),
            Check::new("derivative", "(D_X G)(Y, Z) = g(Y, JZ) X + g(X, Z) JY - g(X, Y) JZ", rep.derivative, tol.fd),
            Check::new("closed form", "G(X, Y) = (D_X J) Y", rep.closed_form, tol.fd),
        ],
    ));
    let imm = cfg.immersion(model).ok_or_else(|| Error::NoImmersion(model.name()))?;
    suites.push(geometry_suite(cfg, &table, imm.as_ref(), &model.name()));
    Ok(VerifyBody { suites })
}

fn geometry_suite(cfg: &RunConfig, table: &MulTable, imm: &dyn Immersion, name: &str) -> Suite {
    let tol = &cfg.tolerances;
    let mut analyses: Vec<PointAnalysis> = Vec::new();
    let mut checks = Vec::new();
    for q in cfg.chart_points() {
        match analyze_point(table, imm, &q, None, tol) {
            Ok(p) => analyses.push(p),
            Err(e) => {
                checks.push(Check::failed(format!("evaluation at {:?}", q.0), "pipeline evaluates", e.to_string()))
            }
        }
    }
    let max = |f: &dyn Fn(&PointAnalysis) -> f64| analyses.iter().map(f).fold(0.0, f64::max);
    checks.extend([
        Check::new("lagrangian", "<J e_i, e_j> = 0", max(&|p| p.lagrangian_residual), tol.frame),
        Check::new("orthonormal frame", "<e_i, e_j> = delta_ij", max(&|p| p.orthonormality_residual), tol.frame),
        Check::new("G normal", "<G(e_i, e_j), e_k> = 0", max(&|p| p.g_tangent_residual), tol.frame),
        Check::new(
            "cubic form symmetry",
            "<h(X, Y), JZ> totally symmetric",
            max(&|p| p.form.symmetry_residual),
            tol.sff,
        ),
        Check::new("minimality", "trace h = 0", max(&|p| p.form.trace_residual), tol.sff),
        Check::new("codazzi", "h_ij,k = h_ik,j", max(&|p| p.codazzi_residual), tol.nabla),
        Check::new(
            "structure equation",
            "g((D h)(W,X,Z), JY) - g((D h)(W,X,Y), JZ) = g(h(W,X), G(Y,Z))",
            max(&|p| p.structure_residual),
            tol.nabla,
        ),
        Check::new("F norm", "|F|^2 = 3/4 |h|^2", max(&|p| p.tensors.f_residual()), F_NORM_TOL),
        Check::new(
            "T norm",
            "|nabla h|^2 = |T|^2 + 3/4 |h|^2",
            max(&|p| p.tensors.norm_identity_residual()),
            tol.nabla,
        ),
        Check::new("cross term", "sum g(nabla h, F) = 3/4 |h|^2", max(&|p| p.tensors.cross_residual()), tol.nabla),
        Check::new(
            "derivative bound",
            "|nabla h|^2 >= 3/4 |h|^2",
            max(&|p| (-p.tensors.slack()).max(0.0)),
            tol.equality,
        ),
        Check::new(
            "normal form",
            "h = h(lambda1, lambda2, mu1, mu2) in the canonical basis",
            max(&|p| p.form.canonical.as_ref().map_or(f64::INFINITY, |c| c.residual)),
            tol.reconstruction,
        ),
        Check::new("gauss equation", "tau = 6 - |h|^2", max(&|p| p.form.curvature.scalar_consistency()), tol.sff),
    ]);
    match name {
        "dvv" => {
            let s = 5f64.sqrt() / 4.0;
            let target = nk6_core::canonical::CanonicalTuple::new(s, s, 0.0, 0.0);
            checks.extend([
                Check::new("|h|^2", "|h|^2 = 25/8", max(&|p| (p.form.hsq - 25.0 / 8.0).abs()), tol.equality),
                Check::new("theta", "theta = sqrt(5)/2", max(&|p| (p.form.theta - 2.0 * s).abs()), THETA_TOL),
                Check::new(
                    "canonical tuple",
                    "(lambda1, lambda2, mu1, mu2) = (sqrt(5)/4, sqrt(5)/4, 0, 0)",
                    max(&|p| p.form.canonical.as_ref().map_or(f64::INFINITY, |c| c.tuple.max_abs_diff(&target))),
                    TUPLE_TOL,
                ),
                Check::new(
                    "scalar curvature",
                    "tau = 23/8",
                    max(&|p| (p.form.curvature.scalar - 23.0 / 8.0).abs()),
                    tol.equality,
                ),
                Check::new(
                    "sectional range",
                    "1/16 <= K <= 21/16",
                    max(&|p| {
                        let c = &p.form.curvature;
                        (c.sectional_min - 1.0 / 16.0).abs().max((c.sectional_max - 21.0 / 16.0).abs())
                    }),
                    tol.equality,
                ),
                Check::new("J-parallel", "|T|^2 = 0", max(&|p| p.tensors.t_sq), tol.equality),
                Check::new("J-parallel defect", "g((nabla h)(v,v,v), Jv) = 0", max(&|p| p.j_defect), DEFECT_TOL),
            ]);
        }
        "totally-geodesic" => {
            checks.extend([
                Check::new("|h|^2", "h = 0", max(&|p| p.form.hsq), tol.equality),
                Check::new(
                    "unit curvature",
                    "K = 1",
                    max(&|p| {
                        (p.form.curvature.sectional_min - 1.0).abs().max((p.form.curvature.sectional_max - 1.0).abs())
                    }),
                    tol.equality,
                ),
            ]);
        }
        _ => {}
    }
    Suite::new("geometry", checks)
}

/// Matrix-algebra checks on pointwise data without jets.
fn algebra_suite(s: &SyntheticH, tol: &Tolerances) -> Suite {
    let sff = s.sff();
    let fa = analyze_pointwise(&sff, tol);
    let cf = closed_forms(&s.tuple);
    let hm = HMatrices::from_sff(&sff);
    let direct_q = commutator_invariant_direct(&hm).q;
    let tuple_q = commutator_invariant_direct(&h_matrices(&s.tuple)).q;
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
    let mut checks = vec![
        Check::new(
            "|h|^2 closed form",
            "|h|^2 = 4 l1^2 + 4 l2^2 + 2 l1 l2 + 4 (mu1^2 + mu2^2)",
            rel(cf.hsq, fa.hsq),
            ALGEBRA_TOL,
        ),
        Check::new(
            "Q closed form",
            "Q = sum N([H_i, H_j]) + sum S_ij^2",
            rel(cf.q, direct_q).max(rel(tuple_q, direct_q)),
            ALGEBRA_TOL,
        ),
        Check::new("F norm", "|F|^2 = 3/4 |h|^2", (fa.f_sq - 0.75 * fa.hsq).abs(), F_NORM_TOL),
        Check::new("theta", "theta = lambda1 + lambda2", (fa.theta - s.tuple.theta()).abs(), THETA_TOL),
        Check::new(
            "normal form",
            "h = h(lambda1, lambda2, mu1, mu2) in the canonical basis",
            fa.canonical.as_ref().map_or(f64::INFINITY, |c| c.residual),
            tol.reconstruction,
        ),
        Check::new(
            "canonical tuple",
            "recovered tuple = stored tuple",
            canonical_basis(&sff, tol).map_or(f64::INFINITY, |c| c.tuple.max_abs_diff(&s.tuple)),
            TUPLE_TOL,
        ),
        Check::new(
            "parallel laplacian",
            "3/4 |h|^2 + 3 |h|^2 - Q = 0",
            (3.75 * fa.hsq - direct_q).abs(),
            ALGEBRA_TOL * fa.hsq.max(1.0) * 10.0,
        ),
    ];
    let (hsq, q) = match s.case {
        SyntheticCase::A => (0.0, 0.0),
        SyntheticCase::B => (45.0 / 8.0, 675.0 / 32.0),
        SyntheticCase::C => (25.0 / 8.0, 750.0 / 64.0),
    };
    checks.push(Check::new("|h|^2 value", "reference |h|^2", (fa.hsq - hsq).abs(), ALGEBRA_TOL * 10.0));
    checks.push(Check::new("Q value", "reference Q", (direct_q - q).abs(), ALGEBRA_TOL * 100.0));
    Suite::new("algebra", checks)
}
