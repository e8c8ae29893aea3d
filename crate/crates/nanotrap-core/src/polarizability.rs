//! Scalar, vector and tensor dynamic polarizabilities of a hyperfine manifold,
//! built from the rank-K propagator and the tabulated reduced dipole
//! strengths.
//!
//! Conventions baked in here:
//! * the counter-rotating term carries the rank-dependent sign (−1)^K;
//! * downward partners reuse the same d² and enter with ω_ji < 0;
//! * hyperfine splittings are degenerate: ω_{F'F} = ±ω_{J'J} for every F'
//!   (trap detunings are tens of THz, hyperfine splittings below 10 GHz).

use std::fmt;
use std::str::FromStr;

use crate::angular::wigner6j;
use crate::atomicdata::{AtomModel, LevelId};
use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;

/// Default resonance guard band, 2π × 1 GHz.
pub const DEFAULT_RESONANCE_GUARD: f64 = 2.0 * std::f64::consts::PI * 1e9;

/// A hyperfine manifold (level, F).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Manifold {
    pub level: LevelId,
    pub f: HalfInt,
}

impl Manifold {
    /// Validates |J − I| ≤ F ≤ J + I with I = 7/2 (¹³³Cs).
    pub fn new(level: LevelId, f: HalfInt) -> Result<Self> {
        let i = HalfInt::from_twice(7);
        if !HalfInt::triangle(level.j, i, f) {
            return Err(Error::InvalidManifold(format!(
                "{level}:F={f} violates |J - 7/2| <= F <= J + 7/2"
            )));
        }
        Ok(Manifold { level, f })
    }
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:F={}", self.level, self.f)
    }
}

impl FromStr for Manifold {
    type Err = Error;

    /// Parses e.g. "6S1/2:F=4".
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidManifold(s.to_string());
        let (lvl, fpart) = s.split_once(':').ok_or_else(bad)?;
        let fstr = fpart.trim().strip_prefix("F=").ok_or_else(bad)?;
        Manifold::new(lvl.parse()?, fstr.parse()?)
    }
}

/// (α⁽⁰⁾, α⁽¹⁾, α⁽²⁾) at one drive frequency, SI units C²·m²·J⁻¹.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizabilityTriple {
    pub alpha0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub omega: f64,
}

/// Rank-K propagator G^(K) = (1/ħ)[1/(ω_ji − ω) + (−1)^K/(ω_ji + ω)], 1/J.
///
/// `omega_ji` is signed (negative for downward partners); `omega` ≥ 0.
pub fn propagator(k: u8, omega_ji: f64, omega: f64) -> Result<f64> {
    propagator_with_guard(k, omega_ji, omega, DEFAULT_RESONANCE_GUARD)
}

pub fn propagator_with_guard(k: u8, omega_ji: f64, omega: f64, guard: f64) -> Result<f64> {
    debug_assert!(k <= 2);
    debug_assert!(omega >= 0.0);
    if (omega_ji.abs() - omega).abs() < guard {
        return Err(Error::Resonance { omega_line: omega_ji.abs(), omega, guard });
    }
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((1.0 / (omega_ji - omega) + sign / (omega_ji + omega)) / HBAR)
}

/// Dynamic polarizabilities of manifold `m` at drive frequency `omega`,
/// summed over all partner levels and partner hyperfine states in `atom`.
pub fn alpha_triple(atom: &AtomModel, m: &Manifold, omega: f64) -> Result<PolarizabilityTriple> {
    alpha_triple_with_guard(atom, m, omega, DEFAULT_RESONANCE_GUARD)
}

pub fn alpha_triple_with_guard(
    atom: &AtomModel,
    m: &Manifold,
    omega: f64,
    guard: f64,
) -> Result<PolarizabilityTriple> {
    let partners = atom.partners(m.level);
    if partners.is_empty() {
        return Err(Error::EmptyTransitionSet(m.level.to_string()));
    }
    let i_nuc = atom.nuclear_spin();
    let j = m.level.j;
    let f = m.f;
    let fv = f.value();
    let one = HalfInt::ONE;
    let two = HalfInt::from_int(2);

    // Rank-dependent prefactors of Eqs. for alpha1/alpha2.
    let pre1 = (3.0 * fv * (2.0 * fv + 1.0) / (2.0 * (fv + 1.0))).sqrt();
    let pre2 =
        (10.0 * fv * (2.0 * fv + 1.0) * (2.0 * fv - 1.0) / (3.0 * (fv + 1.0) * (2.0 * fv + 3.0)))
            .sqrt();

    let mut a0 = 0.0;
    let mut a1 = 0.0;
    let mut a2 = 0.0;
    for (rec, omega_ji, partner) in partners {
        let d2 = rec.reduced_dipole_sq();
        let jp = partner.j;
        let g0 = propagator_with_guard(0, omega_ji, omega, guard)?;
        let g1 = propagator_with_guard(1, omega_ji, omega, guard)?;
        let g2 = propagator_with_guard(2, omega_ji, omega, guard)?;
        let fp_lo = jp.abs_diff(i_nuc);
        let fp_hi = jp.checked_add(i_nuc);
        for fp in HalfInt::range_inclusive(fp_lo, fp_hi) {
            let six = wigner6j(j, jp, one, fp, f, i_nuc);
            if six == 0.0 {
                continue;
            }
            let six_sq = six * six;
            let deg = fp.twice() as f64 + 1.0;
            let sign = if ((f.twice() + fp.twice()) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            a0 += d2 / 3.0 * deg * six_sq * g0;
            a1 += 2.0 * sign * d2 * pre1 * wigner6j(one, one, one, f, f, fp) * deg * six_sq * g1;
            a2 += sign * d2 * pre2 * wigner6j(one, one, two, f, f, fp) * deg * six_sq * g2;
        }
    }
    Ok(PolarizabilityTriple { alpha0: a0, alpha1: a1, alpha2: a2, omega })
}
