//! Light shifts and two-color evanescent trap potentials for atomic Cesium
//! near an optical nanofiber.
//!
//! The crate covers the full chain from tabulated transition data to
//! adiabatic trap potentials:
//!
//! * [`atomicdata`] — transition tables, reduced dipole strengths;
//! * [`angular`] — exact Wigner 6-j symbols and spin matrices;
//! * [`polarizability`] — rank-K propagator and the scalar/vector/tensor
//!   dynamic polarizabilities of a hyperfine manifold;
//! * [`lightshift`] — the Zeeman-manifold light-shift Hamiltonian and its
//!   adiabatic eigensystem;
//! * [`fibermode`] — HE11 mode of a vacuum-clad step-index fiber and its
//!   power-normalized evanescent field;
//! * [`trap`] — beam composition, van der Waals surface term, potential
//!   grids, trap minima, scenario presets;
//! * [`magic`] — magic-wavelength search.
//!
//! Everything is SI internally. The field convention is
//! E(t) = E⁽⁺⁾e^{−iωt} + c.c., so a plane wave of intensity I has
//! |E⁽⁺⁾|² = I/(2ε₀c).

pub mod angular;
pub mod atomicdata;
pub mod bessel;
pub mod constants;
pub mod error;
pub mod fibermode;
pub mod halfint;
pub mod lightshift;
pub mod magic;
pub mod polarizability;
pub mod trap;

pub use atomicdata::{AtomModel, LevelId, Source, TransitionRecord};
pub use error::{Error, Result};
pub use fibermode::{silica_index, solve_he11, FiberSpec, GuidedMode};
pub use halfint::HalfInt;
pub use lightshift::{adiabatic_levels, build_hamiltonian, FieldBilinear, LightShiftResult};
pub use magic::{averaged_shift, find_magic, MagicSearchSpec};
pub use polarizability::{alpha_triple, propagator, Manifold, PolarizabilityTriple};
pub use trap::{vdw_potential, BeamSpec, GridAxis, GridSpec, PotentialGrid, TrapConfig, TrapSystem};
