//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid level: {0}")]
    InvalidLevel(String),

    #[error("electric-dipole selection rule violated at line {line}: {lower} <-> {upper}")]
    SelectionRule {
        line: usize,
        lower: String,
        upper: String,
    },

    #[error("invalid value at line {line}: {msg}")]
    InvalidValue { line: usize, msg: String },

    #[error("invalid manifold: {0}")]
    InvalidManifold(String),

    #[error(
        "drive frequency {omega:.6e} rad/s sits on the atomic line at {omega_line:.6e} rad/s \
         (within the resonance guard band of {guard:.3e} rad/s)"
    )]
    Resonance {
        omega_line: f64,
        omega: f64,
        guard: f64,
    },

    #[error("no transition in the dataset touches level {0}")]
    EmptyTransitionSet(String),

    #[error("matrix is not Hermitian within tolerance (deviation {deviation:.3e})")]
    NonHermitian { deviation: f64 },

    #[error("wavelength {lambda_m:.4e} m outside the Sellmeier validity range 0.21-3.7 um")]
    SellmeierRange { lambda_m: f64 },

    #[error("no guided HE11 root in (n2 k0, n1 k0) at lambda = {lambda_m:.4e} m (mode at or beyond cutoff)")]
    Cutoff { lambda_m: f64 },

    #[error("field evaluation requires r > fiber radius (r = {r:.4e} m, a = {a:.4e} m)")]
    InsideFiber { r: f64, a: f64 },

    #[error("distance from surface must be positive (d = {0:.4e} m)")]
    NonPositiveDistance(f64),

    #[error("no interior minimum in the search window [{lo:.4e}, {hi:.4e}] m")]
    NoInteriorMinimum { lo: f64, hi: f64 },

    #[error("shift difference has no sign change over the bracket [{lo} nm, {hi} nm]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("multiple magic-wavelength crossings in the bracket: {0:?} nm")]
    MultipleCrossings(Vec<f64>),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown scenario preset `{0}`")]
    UnknownPreset(String),
}
