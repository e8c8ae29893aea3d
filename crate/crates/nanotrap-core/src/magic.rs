//! Magic-wavelength search: wavelengths where the mF-averaged light shifts of
//! a ground and an excited manifold coincide for a linearly polarized
//! constant-intensity plane wave.
//!
//! The average is the uniform mean over the 2F+1 sublevels (which for linear
//! polarization reduces to the scalar shift); the weighting is pluggable via
//! [`averaged_shift_weighted`] should a different convention be needed.

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::atomicdata::AtomModel;
use crate::constants::{C, EPS0};
use crate::error::{Error, Result};
use crate::lightshift::{adiabatic_levels, build_hamiltonian, FieldBilinear};
use crate::polarizability::Manifold;

/// A magic-wavelength search problem.
#[derive(Debug, Clone)]
pub struct MagicSearchSpec {
    pub ground: Manifold,
    pub excited: Manifold,
    /// Plane-wave intensity, W/m².
    pub intensity: f64,
    /// Search bracket (λ_lo, λ_hi), nm.
    pub bracket_nm: (f64, f64),
    /// Bisection tolerance, nm.
    pub tolerance_nm: f64,
}

impl MagicSearchSpec {
    pub fn new(ground: Manifold, excited: Manifold, bracket_nm: (f64, f64)) -> Self {
        MagicSearchSpec {
            ground,
            excited,
            intensity: 2.9e9,
            bracket_nm,
            tolerance_nm: 0.01,
        }
    }
}

/// Mean light shift (J) of manifold `m` under an x-polarized plane wave of the
/// given intensity, with per-sublevel weights over the ascending eigenvalues.
pub fn averaged_shift_weighted(
    m: &Manifold,
    omega: f64,
    intensity: f64,
    atom: &AtomModel,
    weights: &[f64],
) -> Result<f64> {
    let dim = m.f.multiplicity();
    assert_eq!(weights.len(), dim, "need one weight per sublevel");
    let w_field = intensity / (2.0 * EPS0 * C); // |E+|^2
    let e_plus = Vector3::new(
        Complex64::new(w_field.sqrt(), 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    );
    let bilinear = FieldBilinear::from_amplitudes(&[(omega, e_plus)]);
    let h = build_hamiltonian(m, &bilinear, atom)?;
    let (values, _) = adiabatic_levels(&h)?;
    let total_weight: f64 = weights.iter().sum();
    Ok(values
        .iter()
        .zip(weights)
        .map(|(v, w)| v * w)
        .sum::<f64>()
        / total_weight)
}

/// Uniform mF average of the light shift (J).
pub fn averaged_shift(m: &Manifold, omega: f64, intensity: f64, atom: &AtomModel) -> Result<f64> {
    let weights = vec![1.0; m.f.multiplicity()];
    averaged_shift_weighted(m, omega, intensity, atom, &weights)
}

fn omega_of_nm(lambda_nm: f64) -> f64 {
    2.0 * std::f64::consts::PI * C / (lambda_nm * 1e-9)
}

const SCAN_SUBINTERVALS: usize = 200;

/// Locate the wavelength (nm) where the averaged shifts of the two manifolds
/// cross. Exactly one sign change must lie in the bracket: none is an error,
/// several are reported together with all bisected roots.
pub fn find_magic(spec: &MagicSearchSpec, atom: &AtomModel) -> Result<f64> {
    let (lo, hi) = spec.bracket_nm;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidConfig(format!("bad bracket ({lo}, {hi})")));
    }
    let diff = |lambda_nm: f64| -> Result<f64> {
        let w = omega_of_nm(lambda_nm);
        Ok(averaged_shift(&spec.excited, w, spec.intensity, atom)?
            - averaged_shift(&spec.ground, w, spec.intensity, atom)?)
    };

    let n = SCAN_SUBINTERVALS;
    let mut xs = Vec::with_capacity(n + 1);
    let mut ys = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        xs.push(x);
        ys.push(diff(x)?);
    }
    let mut roots = Vec::new();
    for i in 0..n {
        if ys[i] == 0.0 {
            roots.push(xs[i]);
            continue;
        }
        if ys[i] * ys[i + 1] < 0.0 {
            let (mut a, mut b) = (xs[i], xs[i + 1]);
            let mut fa = ys[i];
            while b - a > spec.tolerance_nm {
                let mid = 0.5 * (a + b);
                let fm = diff(mid)?;
                if fa * fm <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    match roots.len() {
        0 => Err(Error::NoSignChange { lo, hi }),
        1 => Ok(roots[0]),
        _ => Err(Error::MultipleCrossings(roots)),
    }
}
