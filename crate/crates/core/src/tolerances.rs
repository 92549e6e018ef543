use serde::{Deserialize, Serialize};

/// Numerical thresholds used by checks throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Algebraic constraints: unit norms, tangency, exact identities.
    pub unit: f64,
    /// Orthonormality and Lagrangian residuals of adapted frames.
    pub frame: f64,
    /// A frame whose Lagrangian residual exceeds this is rejected.
    pub lagrangian_reject: f64,
    /// Symmetry and trace of the second fundamental form.
    pub sff: f64,
    /// Checks that go through finite differences.
    pub fd: f64,
    /// Tensor identities evaluated from third-order jets.
    pub nabla: f64,
    /// Canonical normal form reconstruction.
    pub reconstruction: f64,
    /// Integrand sup-norm below which the equality case is declared.
    pub equality: f64,
    /// Integrand sup-norm above which the inequality is declared strict.
    pub indeterminate: f64,
    /// Relative agreement required between successive quadrature rules.
    pub refinement: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unit: 1e-12,
            frame: 1e-10,
            lagrangian_reject: 1e-8,
            sff: 1e-9,
            fd: 1e-6,
            nabla: 1e-6,
            reconstruction: 1e-8,
            equality: 1e-8,
            indeterminate: 1e-4,
            refinement: 1e-8,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 10] = [
        "unit",
        "frame",
        "lagrangian_reject",
        "sff",
        "fd",
        "nabla",
        "reconstruction",
        "equality",
        "indeterminate",
        "refinement",
    ];

    /// Overrides one threshold by name. Returns `false` for unknown keys or
    /// non-positive values.
    pub fn set(&mut self, key: &str, value: f64) -> bool {
        if !(value > 0.0 && value.is_finite()) {
            return false;
        }
        let slot = match key {
            "unit" => &mut self.unit,
            "frame" => &mut self.frame,
            "lagrangian_reject" => &mut self.lagrangian_reject,
            "sff" => &mut self.sff,
            "fd" => &mut self.fd,
            "nabla" => &mut self.nabla,
            "reconstruction" => &mut self.reconstruction,
            "equality" => &mut self.equality,
            "indeterminate" => &mut self.indeterminate,
            "refinement" => &mut self.refinement,
            _ => return false,
        };
        *slot = value;
        true
    }
}
