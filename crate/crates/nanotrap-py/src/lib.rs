//! Python bindings: a thin mirror of the core types and operations.
//!
//! Build with `cargo build --release -p nanotrap-py`; the produced cdylib is
//! importable as the `nanotrap` module (see python/smoke_test.py).

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use nanotrap_core::atomicdata::Source;
use nanotrap_core::halfint::HalfInt;
use nanotrap_core::lightshift::{CoherentGroup, FieldBilinear};
use nanotrap_core::magic::MagicSearchSpec;
use nanotrap_core::polarizability::Manifold;
use nanotrap_core::trap::{TrapConfig, TrapSystem};
use nanotrap_core::{angular, fibermode, lightshift, magic, polarizability, trap};

fn err(e: nanotrap_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn half_int(x: f64, what: &str) -> PyResult<HalfInt> {
    let t = (2.0 * x).round();
    if t < 0.0 || (2.0 * x - t).abs() > 1e-9 {
        return Err(PyValueError::new_err(format!(
            "{what} must be a non-negative half-integer, got {x}"
        )));
    }
    Ok(HalfInt::from_twice(t as i32))
}

fn manifold(s: &str) -> PyResult<Manifold> {
    s.parse().map_err(err)
}

/// The atom: nuclear spin plus the transition table.
#[pyclass(name = "Atom", from_py_object)]
#[derive(Clone)]
struct PyAtom {
    inner: nanotrap_core::AtomModel,
}

#[pymethods]
impl PyAtom {
    /// The shipped default dataset (corrected tables plus the D1 supplement).
    #[staticmethod]
    fn mckeever_corrected() -> Self {
        PyAtom { inner: nanotrap_core::AtomModel::mckeever_corrected() }
    }

    /// The alternate dataset for sensitivity analysis.
    #[staticmethod]
    fn clark() -> Self {
        PyAtom { inner: nanotrap_core::AtomModel::clark() }
    }

    /// Parse a transition table from CSV text.
    #[staticmethod]
    fn from_csv(text: &str) -> PyResult<Self> {
        Ok(PyAtom {
            inner: nanotrap_core::AtomModel::from_table_str(text, Source::External).map_err(err)?,
        })
    }

    fn transition_count(&self) -> usize {
        self.inner.transitions().len()
    }

    fn nuclear_spin(&self) -> f64 {
        self.inner.nuclear_spin().value()
    }

    /// Canonical CSV text of the loaded table.
    fn to_csv(&self) -> String {
        nanotrap_core::atomicdata::format_transition_table(self.inner.transitions())
    }

    fn __repr__(&self) -> String {
        format!("Atom({} transitions, I = {})", self.inner.transitions().len(), self.inner.nuclear_spin())
    }
}

/// Wigner 6-j symbol {j1 j2 j3; j4 j5 j6} (arguments as floats, e.g. 0.5).
#[pyfunction]
fn wigner6j(j1: f64, j2: f64, j3: f64, j4: f64, j5: f64, j6: f64) -> PyResult<f64> {
    Ok(angular::wigner6j(
        half_int(j1, "j1")?,
        half_int(j2, "j2")?,
        half_int(j3, "j3")?,
        half_int(j4, "j4")?,
        half_int(j5, "j5")?,
        half_int(j6, "j6")?,
    ))
}

type ComplexRows = Vec<Vec<Complex64>>;

/// Cartesian spin matrices (Fx, Fy, Fz) for total angular momentum f, as
/// nested lists of complex numbers in the ascending-mF basis.
#[pyfunction]
fn spin_matrices(f: f64) -> PyResult<(ComplexRows, ComplexRows, ComplexRows)> {
    let s = angular::spin_matrices(half_int(f, "f")?);
    let to_rows = |m: &nalgebra::DMatrix<Complex64>| -> Vec<Vec<Complex64>> {
        (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
            .collect()
    };
    Ok((to_rows(&s.fx), to_rows(&s.fy), to_rows(&s.fz)))
}

/// (alpha0, alpha1, alpha2) of `manifold` (e.g. "6S1/2:F=4") at drive
/// angular frequency omega (rad/s), SI units.
#[pyfunction]
fn alpha_triple(atom: &PyAtom, manifold_str: &str, omega: f64) -> PyResult<(f64, f64, f64)> {
    let a = polarizability::alpha_triple(&atom.inner, &manifold(manifold_str)?, omega).map_err(err)?;
    Ok((a.alpha0, a.alpha1, a.alpha2))
}

/// Rank-K propagator (1/J); omega_ji signed, omega >= 0.
#[pyfunction]
fn propagator(k: u8, omega_ji: f64, omega: f64) -> PyResult<f64> {
    polarizability::propagator(k, omega_ji, omega).map_err(err)
}

/// Fused-silica refractive index at wavelength lambda (m).
#[pyfunction]
fn silica_index(lambda_m: f64) -> PyResult<f64> {
    fibermode::silica_index(lambda_m).map_err(err)
}

/// Van der Waals surface potential (J) at distance d (m) for C3/hbar in
/// kHz um^3.
#[pyfunction]
fn vdw_potential(d: f64, c3_over_hbar_khz_um3: f64) -> PyResult<f64> {
    trap::vdw_potential(d, c3_over_hbar_khz_um3).map_err(err)
}

/// A solved HE11 guided mode.
#[pyclass(name = "Mode")]
struct PyMode {
    inner: fibermode::GuidedMode,
}

#[pymethods]
impl PyMode {
    /// Solve the HE11 mode of a vacuum-clad silica fiber.
    #[staticmethod]
    fn solve(radius_m: f64, lambda_m: f64) -> PyResult<Self> {
        Ok(PyMode {
            inner: fibermode::solve_he11(&fibermode::FiberSpec::new(radius_m), lambda_m).map_err(err)?,
        })
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta
    }

    #[getter]
    fn beta_over_k0(&self) -> f64 {
        self.inner.beta / self.inner.k0
    }

    #[getter]
    fn q(&self) -> f64 {
        self.inner.q
    }

    #[getter]
    fn v_number(&self) -> f64 {
        self.inner.v_number()
    }

    #[getter]
    fn n1(&self) -> f64 {
        self.inner.n1
    }

    /// Quasi-linear evanescent field E(+) in Cartesian components at
    /// (r, phi, z), propagation direction ±1, polarization angle phi0 (rad),
    /// guided power (W).
    #[pyo3(signature = (r, phi, z, direction = 1, phi0 = 0.0, power = 1.0))]
    fn field(
        &self,
        r: f64,
        phi: f64,
        z: f64,
        direction: i8,
        phi0: f64,
        power: f64,
    ) -> PyResult<(Complex64, Complex64, Complex64)> {
        let e = fibermode::mode_field(&self.inner, r, phi, z, direction, phi0, power).map_err(err)?;
        Ok((e[0], e[1], e[2]))
    }

    fn __repr__(&self) -> String {
        format!(
            "Mode(lambda = {:.1} nm, beta/k0 = {:.6})",
            self.inner.lambda * 1e9,
            self.inner.beta / self.inner.k0
        )
    }
}

/// Light-shift Hamiltonian (nested complex lists) of `manifold` for coherence
/// groups given as (omega_rad_s, (Ex, Ey, Ez)) with complex E(+) amplitudes.
#[pyfunction]
fn hamiltonian(
    atom: &PyAtom,
    manifold_str: &str,
    groups: Vec<(f64, (Complex64, Complex64, Complex64))>,
) -> PyResult<Vec<Vec<Complex64>>> {
    let m = manifold(manifold_str)?;
    let bilinear = FieldBilinear {
        groups: groups
            .iter()
            .map(|(w, (ex, ey, ez))| {
                CoherentGroup::from_amplitude(*w, &nalgebra::Vector3::new(*ex, *ey, *ez))
            })
            .collect(),
    };
    let h = lightshift::build_hamiltonian(&m, &bilinear, &atom.inner).map_err(err)?;
    Ok((0..h.nrows())
        .map(|i| (0..h.ncols()).map(|j| h[(i, j)]).collect())
        .collect())
}

/// Ascending eigenvalues and phase-fixed eigenvectors (columns) of a
/// Hermitian matrix given as nested complex lists.
#[pyfunction]
fn adiabatic_levels(h: Vec<Vec<Complex64>>) -> PyResult<(Vec<f64>, Vec<Vec<Complex64>>)> {
    let n = h.len();
    if h.iter().any(|row| row.len() != n) {
        return Err(PyValueError::new_err("matrix must be square"));
    }
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| h[i][j]);
    let (vals, vecs) = lightshift::adiabatic_levels(&m).map_err(err)?;
    let rows = (0..n)
        .map(|i| (0..n).map(|j| vecs[(i, j)]).collect())
        .collect();
    Ok((vals, rows))
}

/// Uniform mF-averaged light shift (J) under an x-polarized plane wave.
#[pyfunction]
fn averaged_shift(atom: &PyAtom, manifold_str: &str, omega: f64, intensity: f64) -> PyResult<f64> {
    magic::averaged_shift(&manifold(manifold_str)?, omega, intensity, &atom.inner).map_err(err)
}

/// Magic wavelength (nm) where the averaged ground and excited shifts cross.
#[pyfunction]
#[pyo3(signature = (atom, ground, excited, bracket_lo_nm, bracket_hi_nm, intensity = 2.9e9, tolerance_nm = 0.01))]
fn find_magic(
    atom: &PyAtom,
    ground: &str,
    excited: &str,
    bracket_lo_nm: f64,
    bracket_hi_nm: f64,
    intensity: f64,
    tolerance_nm: f64,
) -> PyResult<f64> {
    let mut spec = MagicSearchSpec::new(manifold(ground)?, manifold(excited)?, (bracket_lo_nm, bracket_hi_nm));
    spec.intensity = intensity;
    spec.tolerance_nm = tolerance_nm;
    magic::find_magic(&spec, &atom.inner).map_err(err)
}

/// A trap scenario with its guided modes solved once.
#[pyclass(name = "Trap")]
struct PyTrap {
    system: TrapSystem,
}

#[pymethods]
impl PyTrap {
    /// Built-in presets: vetsch, magic-compensated, goban-magic, goban-actual.
    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        let cfg = TrapConfig::preset(name).map_err(err)?;
        Ok(PyTrap { system: TrapSystem::new(cfg).map_err(err)? })
    }

    #[getter]
    fn fiber_radius(&self) -> f64 {
        self.system.config().fiber.radius
    }

    /// Manifolds the preset evaluates, as parseable strings.
    fn manifolds(&self) -> Vec<String> {
        self.system.config().manifolds.iter().map(|m| m.to_string()).collect()
    }

    /// Ascending adiabatic sublevel energies (J) at (r, phi, z).
    fn potential(&self, atom: &PyAtom, manifold_str: &str, r: f64, phi: f64, z: f64) -> PyResult<Vec<f64>> {
        self.system
            .total_potential(&manifold(manifold_str)?, r, phi, z, &atom.inner)
            .map_err(err)
    }

    /// Radial minimum of the lowest sublevel at phi = 0, z = 0 inside the
    /// window (d_lo, d_hi) in metres from the surface; returns
    /// (d_star_m, depth_mK).
    #[pyo3(signature = (atom, manifold_str, d_lo = 120e-9, d_hi = 450e-9))]
    fn radial_minimum(
        &self,
        atom: &PyAtom,
        manifold_str: &str,
        d_lo: f64,
        d_hi: f64,
    ) -> PyResult<(f64, f64)> {
        let min = self
            .system
            .find_trap_minimum(&manifold(manifold_str)?, (d_lo, d_hi), &atom.inner)
            .map_err(err)?;
        Ok((min.d_star, min.depth_mk))
    }
}

#[pymodule]
fn nanotrap(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAtom>()?;
    m.add_class::<PyMode>()?;
    m.add_class::<PyTrap>()?;
    m.add_function(wrap_pyfunction!(wigner6j, m)?)?;
    m.add_function(wrap_pyfunction!(spin_matrices, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_triple, m)?)?;
    m.add_function(wrap_pyfunction!(propagator, m)?)?;
    m.add_function(wrap_pyfunction!(silica_index, m)?)?;
    m.add_function(wrap_pyfunction!(vdw_potential, m)?)?;
    m.add_function(wrap_pyfunction!(hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(adiabatic_levels, m)?)?;
    m.add_function(wrap_pyfunction!(averaged_shift, m)?)?;
    m.add_function(wrap_pyfunction!(find_magic, m)?)?;
    m.add("MHZ_PER_MK", nanotrap_core::constants::MHZ_PER_MK)?;
    Ok(())
}
