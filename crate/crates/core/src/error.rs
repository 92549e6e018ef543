use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("table parse error on line {line}: {msg}")]
    TableParse { line: usize, msg: String },

    #[error("point is not on the unit sphere: | |x| - 1 | = {deviation:e}")]
    NotOnSphere { deviation: f64 },

    #[error("vector is not tangent at its base point: <x, v> = {residual:e}")]
    NotTangent { residual: f64 },

    #[error("tangent vectors are based at different points")]
    BasePointMismatch,

    #[error("jet order {0} is not supported (maximum is 3)")]
    JetOrder(usize),

    #[error("chart point ({0}, {1}, {2}) lies outside the chart domain")]
    OutsideDomain(f64, f64, f64),

    #[error("chart is degenerate at ({}, {}, {}): distance to degeneracy locus {distance:e}", point[0], point[1], point[2])]
    ChartDegenerate { point: [f64; 3], distance: f64 },

    #[error("finite-difference stencil of step {step:e} leaves the chart domain near ({}, {}, {})", point[0], point[1], point[2])]
    StepUnderflow { point: [f64; 3], step: f64 },

    #[error("immersion is not Lagrangian: max |<J e_i, e_j>| = {0:e}")]
    NotLagrangian(f64),

    #[error("immersion does not map into the unit six-sphere: | |x| - 1 | = {0:e}")]
    NotSpherical(f64),

    #[error("canonical normal form reconstruction failed: residual {0:e}")]
    Reconstruction(f64),

    #[error("identity `{identity}` violated: residual {residual:e}")]
    IdentityViolation { identity: &'static str, residual: f64 },

    #[error("quadrature did not converge: {quantity} differs by {delta:e} between rules (tolerance {tolerance:e})")]
    Resolution { quantity: &'static str, delta: f64, tolerance: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("model `{0}` has no immersion (pointwise data only)")]
    NoImmersion(String),

    #[error("polynomial file parse error on line {line}: {msg}")]
    PolyParse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
