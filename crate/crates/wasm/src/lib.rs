//! Browser entry points. Every function returns a JSON string so the page
//! needs no generated TypeScript types.

use nalgebra::Vector3;
use nk6_core::canonical::{closed_forms, commutator_invariant_direct, sff_from_tuple, CanonicalTuple, HMatrices};
use nk6_core::cayley::MulTable;
use nk6_core::geometry::curvature;
use nk6_core::models::{select_table, Model};
use nk6_core::simons::{analyze_pointwise, integrate_inequality, QuadratureRule};
use nk6_core::Tolerances;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn finite(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

/// Pointwise invariants of the cubic form with canonical tuple
/// `(λ₁, λ₂, μ₁, μ₂)`.
pub fn tuple_invariants_value(lambda1: f64, lambda2: f64, mu1: f64, mu2: f64) -> Value {
    let t = CanonicalTuple::new(lambda1, lambda2, mu1, mu2);
    let sff = sff_from_tuple(&t);
    let f = analyze_pointwise(&sff, &Tolerances::default());
    let cf = closed_forms(&t);
    let direct_q = commutator_invariant_direct(&HMatrices::from_sff(&sff)).q;
    let c = &f.curvature;
    json!({
        "hsq": f.hsq,
        "theta": f.theta,
        "theta_tuple": t.theta(),
        "q_direct": direct_q,
        "q_closed": cf.q,
        "remainder": cf.r_residual,
        "integrand": f.integrand,
        "ricci": c.ricci_eigenvalues,
        "tau": c.scalar,
        "k_min": c.sectional_min,
        "k_max": c.sectional_max,
        "recovered": f.canonical.as_ref().map(|d| {
            let r = d.tuple;
            json!([r.lambda1, r.lambda2, r.mu1, r.mu2])
        }),
    })
}

#[wasm_bindgen]
pub fn tuple_invariants(lambda1: f64, lambda2: f64, mu1: f64, mu2: f64) -> String {
    tuple_invariants_value(lambda1, lambda2, mu1, mu2).to_string()
}

/// Sectional curvature along two one-parameter families of planes:
/// `span(cos φ e₁ + sin φ e₂, e₃)` and `span(e₁, cos φ e₂ + sin φ e₃)`.
pub fn sectional_curve_value(lambda1: f64, lambda2: f64, mu1: f64, mu2: f64, n: usize) -> Value {
    let c = curvature(&sff_from_tuple(&CanonicalTuple::new(lambda1, lambda2, mu1, mu2)));
    let n = n.clamp(2, 2000);
    let mut phi = Vec::with_capacity(n);
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for i in 0..n {
        let p = std::f64::consts::PI * i as f64 / (n - 1) as f64;
        let (s, co) = p.sin_cos();
        phi.push(p);
        a.push(finite(c.sectional(&Vector3::new(co, s, 0.0), &Vector3::z())));
        b.push(finite(c.sectional(&Vector3::x(), &Vector3::new(0.0, co, s))));
    }
    json!({ "phi": phi, "e1e2_e3": a, "e1_e2e3": b, "k_min": c.sectional_min, "k_max": c.sectional_max })
}

#[wasm_bindgen]
pub fn sectional_curve(lambda1: f64, lambda2: f64, mu1: f64, mu2: f64, n: usize) -> String {
    sectional_curve_value(lambda1, lambda2, mu1, mu2, n).to_string()
}

/// Quadrature of the integral inequality on an `n × n × n` rule.
pub fn integrate_value(model: &str, n: usize) -> Result<Value, String> {
    let table = select_table(&MulTable::candidates()).map_err(|e| e.to_string())?;
    let model = Model::resolve(model, &table).map_err(|e| e.to_string())?;
    let imm = model.immersion().ok_or_else(|| format!("`{}` has no immersion", model.name()))?;
    let rule = QuadratureRule::new([n; 3]).map_err(|e| e.to_string())?;
    let r = integrate_inequality(&table, imm, &rule, &Tolerances::default()).map_err(|e| e.to_string())?;
    Ok(json!({
        "model": model.name(),
        "rule": String::from(r.rule),
        "integral": r.integral,
        "volume": r.volume,
        "min": r.min,
        "max": r.max,
        "sup_hsq": r.sup_hsq,
        "classification": r.classification.label(),
    }))
}

#[wasm_bindgen]
pub fn integrate(model: &str, n: usize) -> Result<String, JsError> {
    integrate_value(model, n).map(|v| v.to_string()).map_err(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dvv_tuple() {
        let s = 5f64.sqrt() / 4.0;
        let v = tuple_invariants_value(s, s, 0.0, 0.0);
        assert!((v["hsq"].as_f64().unwrap() - 25.0 / 8.0).abs() < 1e-12);
        assert!((v["tau"].as_f64().unwrap() - 23.0 / 8.0).abs() < 1e-12);
        assert!(v["remainder"].as_f64().unwrap().abs() < 1e-12);
    }

    #[test]
    fn dvv_curve_stays_in_range() {
        let s = 5f64.sqrt() / 4.0;
        let v = sectional_curve_value(s, s, 0.0, 0.0, 91);
        for key in ["e1e2_e3", "e1_e2e3"] {
            for k in v[key].as_array().unwrap() {
                let k = k.as_f64().unwrap();
                assert!((1.0 / 16.0 - 1e-12..=21.0 / 16.0 + 1e-12).contains(&k), "{k}");
            }
        }
    }

    #[test]
    fn small_integrals() {
        let v = integrate_value("totally-geodesic", 12).unwrap();
        assert_eq!(v["classification"], "geodesic");
        // too coarse in η: the companion rule disagrees
        assert!(integrate_value("totally-geodesic", 6).unwrap_err().contains("did not converge"));
        assert!(integrate_value("synthetic:b", 4).is_err());
        assert!(integrate_value("dvv", 0).is_err());
    }
}
