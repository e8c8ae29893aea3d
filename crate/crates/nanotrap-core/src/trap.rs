//! Two-color evanescent trap potentials: beam composition into field
//! bilinears, the van der Waals surface term, per-sublevel adiabatic
//! potentials, grids and minima.
//!
//! Conventions: the coherent red pair forms a lattice with an antinode at
//! z = 0, which is where radial and azimuthal cuts are taken; mutually
//! detuned beam pairs are modeled as exact incoherence (separate coherence
//! groups). The ground-state C₃ coefficient is applied to every manifold.

use std::collections::BTreeMap;

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::atomicdata::AtomModel;
use crate::constants::{C, H_PLANCK, KB};
use crate::error::{Error, Result};
use crate::fibermode::{mode_field, solve_he11, FiberSpec, GuidedMode};
use crate::lightshift::{adiabatic_levels, build_hamiltonian, CoherentGroup, FieldBilinear};
use crate::polarizability::Manifold;

type C64 = Complex64;

/// One trap beam.
#[derive(Debug, Clone, Copy)]
pub struct BeamSpec {
    /// Vacuum wavelength, m.
    pub lambda: f64,
    /// Guided power, W.
    pub power: f64,
    /// Quasi-linear polarization angle from the x axis, rad.
    pub phi0: f64,
    /// Propagation direction along the fiber axis, +1 or −1.
    pub direction: i8,
    /// Beams sharing a label interfere at amplitude level.
    pub coherence_group: u32,
}

/// A complete trap scenario.
#[derive(Debug, Clone)]
pub struct TrapConfig {
    pub fiber: FiberSpec,
    pub beams: Vec<BeamSpec>,
    /// Surface coefficient C₃/ħ in kHz·μm³ (1.16 for ground-state Cs near silica).
    pub c3_over_hbar_khz_um3: f64,
    /// Manifolds the scenario evaluates (ground and excited).
    pub manifolds: Vec<Manifold>,
}

pub const PRESET_NAMES: &[&str] = &["vetsch", "magic-compensated", "goban-magic", "goban-actual"];

impl TrapConfig {
    pub fn validate(&self) -> Result<()> {
        if self.beams.is_empty() {
            return Err(Error::InvalidConfig("at least one beam required".into()));
        }
        if self.c3_over_hbar_khz_um3 < 0.0 {
            return Err(Error::InvalidConfig("C3 must be >= 0".into()));
        }
        for b in &self.beams {
            if b.power <= 0.0 {
                return Err(Error::InvalidConfig("beam power must be positive".into()));
            }
            if b.direction != 1 && b.direction != -1 {
                return Err(Error::InvalidConfig("beam direction must be +1 or -1".into()));
            }
        }
        for a in &self.beams {
            for b in &self.beams {
                if a.coherence_group == b.coherence_group && a.lambda != b.lambda {
                    return Err(Error::InvalidConfig(format!(
                        "coherence group {} mixes wavelengths {} and {}",
                        a.coherence_group, a.lambda, b.lambda
                    )));
                }
            }
        }
        Ok(())
    }

    /// Built-in scenario presets with the published beam parameters.
    pub fn preset(name: &str) -> Result<Self> {
        let m = |s: &str| s.parse::<Manifold>().expect("preset manifold");
        let pair = |lambda: f64, power: f64, phi0: f64, group_fwd: u32, group_bwd: u32| {
            vec![
                BeamSpec { lambda, power, phi0, direction: 1, coherence_group: group_fwd },
                BeamSpec { lambda, power, phi0, direction: -1, coherence_group: group_bwd },
            ]
        };
        let cfg = match name {
            // 1064 nm lattice pair + single 780 nm beam, a = 250 nm
            "vetsch" => {
                let mut beams = pair(1064e-9, 2.2e-3, 0.0, 0, 0);
                beams.push(BeamSpec {
                    lambda: 780e-9,
                    power: 25e-3,
                    phi0: std::f64::consts::FRAC_PI_2,
                    direction: 1,
                    coherence_group: 1,
                });
                TrapConfig {
                    fiber: FiberSpec::new(250e-9),
                    beams,
                    c3_over_hbar_khz_um3: 1.16,
                    manifolds: vec![m("6S1/2:F=3"), m("6S1/2:F=4"), m("6P3/2:F=4")],
                }
            }
            // both colors at the F=4 -> F'=4 magic wavelengths, a = 250 nm
            "magic-compensated" => {
                let mut beams = pair(935.3e-9, 0.95e-3, 0.0, 0, 0);
                beams.extend(pair(684.9e-9, 16e-3, 0.0, 1, 2));
                TrapConfig {
                    fiber: FiberSpec::new(250e-9),
                    beams,
                    c3_over_hbar_khz_um3: 1.16,
                    manifolds: vec![m("6S1/2:F=3"), m("6S1/2:F=4"), m("6P3/2:F=4")],
                }
            }
            // F=4 -> F'=5 magic wavelengths, a = 215 nm
            "goban-magic" => {
                let mut beams = pair(935.7e-9, 0.4e-3, 0.0, 0, 0);
                beams.extend(pair(684.8e-9, 5e-3, 0.0, 1, 2));
                TrapConfig {
                    fiber: FiberSpec::new(215e-9),
                    beams,
                    c3_over_hbar_khz_um3: 1.16,
                    manifolds: vec![m("6S1/2:F=4"), m("6P3/2:F=5")],
                }
            }
            // wavelengths actually used in the experiment, a = 215 nm
            "goban-actual" => {
                let mut beams = pair(937.1e-9, 0.4e-3, 0.0, 0, 0);
                beams.extend(pair(686.1e-9, 5e-3, 0.0, 1, 2));
                TrapConfig {
                    fiber: FiberSpec::new(215e-9),
                    beams,
                    c3_over_hbar_khz_um3: 1.16,
                    manifolds: vec![m("6S1/2:F=4"), m("6P3/2:F=5")],
                }
            }
            other => return Err(Error::UnknownPreset(other.to_string())),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Van der Waals surface potential U = −C₃/d³ (J) for distance d (m) from the
/// surface, with C₃/ħ given in kHz·μm³. With that unit choice U/h at
/// d = 100 nm and C₃/ħ = 1.16 kHz·μm³ is −1.16 MHz.
pub fn vdw_potential(d: f64, c3_over_hbar_khz_um3: f64) -> Result<f64> {
    if d <= 0.0 {
        return Err(Error::NonPositiveDistance(d));
    }
    Ok(-H_PLANCK * c3_over_hbar_khz_um3 * 1e3 * 1e-18 / (d * d * d))
}

/// Grid axes for potential cuts. Radial and azimuthal cuts default to the
/// red-lattice antinode z = 0.
#[derive(Debug, Clone, Copy)]
pub enum GridAxis {
    /// r − a samples at fixed (φ, z).
    Radial { d_from: f64, d_to: f64, phi: f64, z: f64 },
    /// φ samples at fixed (r − a, z).
    Azimuthal { phi_from: f64, phi_to: f64, d: f64, z: f64 },
    /// z samples at fixed (r − a, φ).
    Axial { z_from: f64, z_to: f64, d: f64, phi: f64 },
}

impl GridAxis {
    pub fn coord_label(&self) -> &'static str {
        match self {
            GridAxis::Radial { .. } => "d_m",
            GridAxis::Azimuthal { .. } => "phi_rad",
            GridAxis::Axial { .. } => "z_m",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub axis: GridAxis,
    pub samples: usize,
}

/// Eigenvalue columns of one manifold along a grid, in both unit systems.
#[derive(Debug, Clone)]
pub struct ManifoldColumns {
    pub manifold: Manifold,
    /// [sample][sublevel], U/k_B in mK.
    pub energies_mk: Vec<Vec<f64>>,
    /// [sample][sublevel], U/h in MHz.
    pub energies_mhz: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct PotentialGrid {
    pub coord_label: &'static str,
    pub coords: Vec<f64>,
    pub columns: Vec<ManifoldColumns>,
}

/// Result of the radial minimum search.
#[derive(Debug, Clone, Copy)]
pub struct TrapMinimum {
    /// Distance of the minimum from the fiber surface, m.
    pub d_star: f64,
    /// Depth of the lowest sublevel, J (negative).
    pub depth_j: f64,
    /// Depth in mK (U/k_B).
    pub depth_mk: f64,
}

/// A trap scenario with its guided modes solved once.
#[derive(Debug, Clone)]
pub struct TrapSystem {
    config: TrapConfig,
    modes: Vec<GuidedMode>,
}

impl TrapSystem {
    pub fn new(config: TrapConfig) -> Result<Self> {
        config.validate()?;
        let modes = config
            .beams
            .iter()
            .map(|b| solve_he11(&config.fiber, b.lambda))
            .collect::<Result<Vec<_>>>()?;
        Ok(TrapSystem { config, modes })
    }

    pub fn config(&self) -> &TrapConfig {
        &self.config
    }

    pub fn modes(&self) -> &[GuidedMode] {
        &self.modes
    }

    /// Accumulated E⁽⁻⁾⊗E⁽⁺⁾ bilinears at one point: beams inside a coherence
    /// group sum at amplitude level, distinct groups stay separate. Groups are
    /// emitted in ascending label order.
    pub fn field_bilinear_at(&self, r: f64, phi: f64, z: f64) -> Result<FieldBilinear> {
        let mut sums: BTreeMap<u32, (f64, Vector3<C64>)> = BTreeMap::new();
        for (beam, mode) in self.config.beams.iter().zip(&self.modes) {
            let e = mode_field(mode, r, phi, z, beam.direction, beam.phi0, beam.power)?;
            let omega = 2.0 * std::f64::consts::PI * C / beam.lambda;
            let entry = sums
                .entry(beam.coherence_group)
                .or_insert_with(|| (omega, Vector3::zeros()));
            entry.1 += e;
        }
        Ok(FieldBilinear {
            groups: sums
                .values()
                .map(|(omega, e)| CoherentGroup::from_amplitude(*omega, e))
                .collect(),
        })
    }

    /// Ascending adiabatic sublevel energies (J) of manifold `m` at one point:
    /// eigenvalues of the summed light-shift Hamiltonian plus the vdW term.
    pub fn total_potential(
        &self,
        m: &Manifold,
        r: f64,
        phi: f64,
        z: f64,
        atom: &AtomModel,
    ) -> Result<Vec<f64>> {
        let bilinear = self.field_bilinear_at(r, phi, z)?;
        let mut h = build_hamiltonian(m, &bilinear, atom)?;
        let u_vdw = vdw_potential(r - self.config.fiber.radius, self.config.c3_over_hbar_khz_um3)?;
        let dim = m.f.multiplicity();
        for k in 0..dim {
            h[(k, k)] += C64::new(u_vdw, 0.0);
        }
        Ok(adiabatic_levels(&h)?.0)
    }

    /// Dense potential evaluation along one axis for the given manifolds.
    pub fn potential_grid(
        &self,
        spec: &GridSpec,
        manifolds: &[Manifold],
        atom: &AtomModel,
    ) -> Result<PotentialGrid> {
        if spec.samples < 2 {
            return Err(Error::InvalidConfig(format!(
                "grid needs at least 2 samples, got {}",
                spec.samples
            )));
        }
        let a = self.config.fiber.radius;
        let n = spec.samples;
        let lin = |from: f64, to: f64, i: usize| from + (to - from) * i as f64 / (n - 1) as f64;
        let points: Vec<(f64, f64, f64, f64)> = (0..n)
            .map(|i| match spec.axis {
                GridAxis::Radial { d_from, d_to, phi, z } => {
                    let d = lin(d_from, d_to, i);
                    (d, a + d, phi, z)
                }
                GridAxis::Azimuthal { phi_from, phi_to, d, z } => {
                    let phi = lin(phi_from, phi_to, i);
                    (phi, a + d, phi, z)
                }
                GridAxis::Axial { z_from, z_to, d, phi } => {
                    let z = lin(z_from, z_to, i);
                    (z, a + d, phi, z)
                }
            })
            .collect();

        let mut columns = Vec::with_capacity(manifolds.len());
        for m in manifolds {
            let mut mk = Vec::with_capacity(n);
            let mut mhz = Vec::with_capacity(n);
            for &(_, r, phi, z) in &points {
                let u = self.total_potential(m, r, phi, z, atom)?;
                mk.push(u.iter().map(|e| e / KB * 1e3).collect());
                mhz.push(u.iter().map(|e| e / H_PLANCK / 1e6).collect());
            }
            columns.push(ManifoldColumns { manifold: *m, energies_mk: mk, energies_mhz: mhz });
        }
        Ok(PotentialGrid {
            coord_label: spec.axis.coord_label(),
            coords: points.iter().map(|p| p.0).collect(),
            columns,
        })
    }

    /// Radial minimum of the lowest sublevel of `m` at φ = 0, z = 0 (lattice
    /// antinode), located by a coarse scan plus golden-section refinement
    /// inside `window` = (d_lo, d_hi) in metres from the surface.
    pub fn find_trap_minimum(
        &self,
        m: &Manifold,
        window: (f64, f64),
        atom: &AtomModel,
    ) -> Result<TrapMinimum> {
        let (lo, hi) = window;
        if !(lo > 0.0 && hi > lo) {
            return Err(Error::InvalidConfig("bad search window".into()));
        }
        let a = self.config.fiber.radius;
        let eval = |d: f64| -> Result<f64> {
            Ok(self.total_potential(m, a + d, 0.0, 0.0, atom)?[0])
        };
        const COARSE: usize = 64;
        let mut best_i = 0;
        let mut best_u = f64::INFINITY;
        let mut ds = Vec::with_capacity(COARSE);
        for i in 0..COARSE {
            let d = lo + (hi - lo) * i as f64 / (COARSE - 1) as f64;
            let u = eval(d)?;
            if u < best_u {
                best_u = u;
                best_i = i;
            }
            ds.push(d);
        }
        if best_i == 0 || best_i == COARSE - 1 {
            return Err(Error::NoInteriorMinimum { lo, hi });
        }
        let (mut x_lo, mut x_hi) = (ds[best_i - 1], ds[best_i + 1]);
        let gr = (5.0_f64.sqrt() - 1.0) / 2.0;
        let mut x1 = x_hi - gr * (x_hi - x_lo);
        let mut x2 = x_lo + gr * (x_hi - x_lo);
        let mut f1 = eval(x1)?;
        let mut f2 = eval(x2)?;
        for _ in 0..70 {
            if f1 < f2 {
                x_hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = x_hi - gr * (x_hi - x_lo);
                f1 = eval(x1)?;
            } else {
                x_lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = x_lo + gr * (x_hi - x_lo);
                f2 = eval(x2)?;
            }
            if x_hi - x_lo < 1e-12 {
                break;
            }
        }
        let d_star = 0.5 * (x_lo + x_hi);
        let depth_j = eval(d_star)?;
        Ok(TrapMinimum { d_star, depth_j, depth_mk: depth_j / KB * 1e3 })
    }
}
