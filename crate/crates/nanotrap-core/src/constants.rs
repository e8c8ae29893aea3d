//! Physical constants (CODATA 2018) and the fixed unit conversions used
//! throughout the crate.
//!
//! All internal quantities are SI; nanometres and microseconds appear only at
//! the file boundary of the transition tables.

/// Speed of light in vacuum, m/s (exact).
pub const C: f64 = 299_792_458.0;

/// Planck constant, J·s (exact).
pub const H_PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant ħ = h/2π, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Vacuum electric permittivity, F/m.
pub const EPS0: f64 = 8.854_187_812_8e-12;

/// Boltzmann constant, J/K (exact).
pub const KB: f64 = 1.380_649e-23;

/// Conversion between the two potential scales used in the grids:
/// a potential of 1 mK (U/k_B) corresponds to this many MHz (U/h).
pub const MHZ_PER_MK: f64 = KB * 1e-3 / H_PLANCK / 1e6;

/// Atomic unit of polarizability, C²·m²·J⁻¹. Handy for cross-checking
/// against tabulated atomic-structure data; not used internally.
pub const ALPHA_AU: f64 = 1.648_777_274_36e-41;
