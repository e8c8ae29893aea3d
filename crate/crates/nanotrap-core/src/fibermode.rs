//! HE11 mode of a vacuum-clad step-index cylinder: dispersion solution,
//! power-normalized evanescent field, quasi-linear polarization.
//!
//! The mode follows the standard vectorial treatment of a two-layer circular
//! dielectric waveguide. The quasi-circular HE11 solutions with azimuthal
//! rotation p = ±1 are superposed in equal parts into a quasi-linear mode
//! whose transverse principal axis points along the polarization angle φ₀.

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::bessel::{j0, j1, j2, k0 as bk0, k1 as bk1, k2 as bk2};
use crate::constants::C;
use crate::error::{Error, Result};

type C64 = Complex64;

/// Fused-silica refractive index, three-term Sellmeier fit.
/// Valid for 0.21 um < λ < 3.7 um.
pub fn silica_index(lambda_m: f64) -> Result<f64> {
    if !(0.21e-6..=3.7e-6).contains(&lambda_m) {
        return Err(Error::SellmeierRange { lambda_m });
    }
    let l2 = (lambda_m * 1e6).powi(2);
    let n2 = 1.0
        + 0.696_166_3 * l2 / (l2 - 0.068_404_3f64.powi(2))
        + 0.407_942_6 * l2 / (l2 - 0.116_241_4f64.powi(2))
        + 0.897_479_4 * l2 / (l2 - 9.896_161f64.powi(2));
    Ok(n2.sqrt())
}

/// A vacuum-clad silica nanofiber.
#[derive(Debug, Clone, Copy)]
pub struct FiberSpec {
    /// Fiber radius, m.
    pub radius: f64,
    /// Exterior index (1.0 for vacuum).
    pub n_exterior: f64,
}

impl FiberSpec {
    pub fn new(radius: f64) -> Self {
        FiberSpec { radius, n_exterior: 1.0 }
    }

    /// Core index at the given wavelength.
    pub fn index(&self, lambda_m: f64) -> Result<f64> {
        silica_index(lambda_m)
    }

    pub fn v_number(&self, lambda_m: f64) -> Result<f64> {
        let n1 = self.index(lambda_m)?;
        let k0 = 2.0 * std::f64::consts::PI / lambda_m;
        Ok(k0 * self.radius * (n1 * n1 - self.n_exterior * self.n_exterior).sqrt())
    }
}

/// A solved, power-normalized HE11 mode at one wavelength.
#[derive(Debug, Clone)]
pub struct GuidedMode {
    pub lambda: f64,
    pub k0: f64,
    pub n1: f64,
    pub n2: f64,
    pub radius: f64,
    /// Propagation constant, rad/m; n2 k0 < β < n1 k0.
    pub beta: f64,
    /// Interior transverse wavenumber h = √(n1²k0² − β²).
    pub h: f64,
    /// Exterior decay constant q = √(β² − n2²k0²).
    pub q: f64,
    /// Amplitude scale mapping 1 W of guided power to field units (per √W).
    pub norm: f64,
    s: f64,
    s1: f64,
    s2: f64,
    rho: f64,
}

/// The HE-branch characteristic function; its zero in (n2 k0, n1 k0) is the
/// HE11 propagation constant. Dimensionless.
fn he_dispersion(beta: f64, a: f64, k0: f64, n1: f64, n2: f64) -> f64 {
    let h = (n1 * n1 * k0 * k0 - beta * beta).sqrt();
    let q = (beta * beta - n2 * n2 * k0 * k0).sqrt();
    let u = h * a;
    let w = q * a;
    let kp = -(bk0(w) + bk2(w)) / (2.0 * w * bk1(w)); // K1'(w)/(w K1(w))
    let half_sum = (n1 * n1 + n2 * n2) / (2.0 * n1 * n1);
    let half_diff = (n1 * n1 - n2 * n2) / (2.0 * n1 * n1);
    let inv = 1.0 / (u * u) + 1.0 / (w * w);
    let r = (half_diff * half_diff * kp * kp + (beta / (n1 * k0)).powi(2) * inv * inv).sqrt();
    j0(u) / (u * j1(u)) - (1.0 / (u * u) - half_sum * kp - r)
}

const SCAN_POINTS: usize = 2000;

/// Solve the HE11 branch at `lambda`: bracketed scan over (n2 k0, n1 k0),
/// bisection to |Δβ|/β ≤ 1e−12, then power normalization to 1 W by adaptive
/// radial quadrature of the axial Poynting flux (azimuthal integral analytic).
/// If several roots survive the scan the fundamental (largest β) is selected.
pub fn solve_he11(spec: &FiberSpec, lambda: f64) -> Result<GuidedMode> {
    let a = spec.radius;
    let n1 = spec.index(lambda)?;
    let n2 = spec.n_exterior;
    let k0 = 2.0 * std::f64::consts::PI / lambda;
    let lo = n2 * k0 * (1.0 + 1e-9);
    let hi = n1 * k0 * (1.0 - 1e-9);
    let f = |beta: f64| he_dispersion(beta, a, k0, n1, n2);

    let step = (hi - lo) / SCAN_POINTS as f64;
    let mut best: Option<f64> = None;
    let mut prev_x = lo;
    let mut prev_y = f(lo);
    for i in 1..=SCAN_POINTS {
        let x = lo + step * i as f64;
        let y = f(x);
        if prev_y.is_finite() && y.is_finite() && prev_y * y < 0.0 {
            let (mut xa, mut xb) = (prev_x, x);
            let mut ya = prev_y;
            while (xb - xa) / xb > 1e-13 {
                let xm = 0.5 * (xa + xb);
                let ym = f(xm);
                if ya * ym <= 0.0 {
                    xb = xm;
                } else {
                    xa = xm;
                    ya = ym;
                }
            }
            let root = 0.5 * (xa + xb);
            best = Some(best.map_or(root, |b: f64| b.max(root)));
        }
        prev_x = x;
        prev_y = y;
    }
    let beta = best.ok_or(Error::Cutoff { lambda_m: lambda })?;

    let h = (n1 * n1 * k0 * k0 - beta * beta).sqrt();
    let q = (beta * beta - n2 * n2 * k0 * k0).sqrt();
    let u = h * a;
    let w = q * a;
    let jp = (j0(u) - j2(u)) / (2.0 * u * j1(u));
    let kp = -(bk0(w) + bk2(w)) / (2.0 * w * bk1(w));
    let s = (1.0 / (u * u) + 1.0 / (w * w)) / (jp + kp);
    let s1 = s * beta * beta / (n1 * n1 * k0 * k0);
    let s2 = s * beta * beta / (n2 * n2 * k0 * k0);
    let rho = j1(u) / bk1(w);

    let mut mode = GuidedMode {
        lambda,
        k0,
        n1,
        n2,
        radius: a,
        beta,
        h,
        q,
        norm: 1.0,
        s,
        s1,
        s2,
        rho,
    };
    let p_unit = mode.power_for_unit_amplitude();
    mode.norm = 1.0 / p_unit.sqrt();
    Ok(mode)
}

impl GuidedMode {
    pub fn v_number(&self) -> f64 {
        self.k0 * self.radius * (self.n1 * self.n1 - self.n2 * self.n2).sqrt()
    }

    /// Characteristic-equation residual at the solved β (dimensionless).
    pub fn dispersion_residual(&self) -> f64 {
        he_dispersion(self.beta, self.radius, self.k0, self.n1, self.n2).abs()
    }

    /// Cylindrical profile (e_r, e_φ, e_z) of the forward quasi-circular
    /// p = +1 constituent at unit amplitude, valid on both sides of the
    /// boundary. Exterior use drives the trap; the interior branch exists for
    /// normalization and continuity checks.
    pub fn profile_cyl(&self, r: f64) -> (C64, C64, C64) {
        let (s, b) = (self.s, self.beta);
        if r <= self.radius {
            let x = self.h * r;
            let er = C64::new(0.0, -b / (2.0 * self.h)) * ((1.0 - s) * j0(x) - (1.0 + s) * j2(x));
            let ephi = C64::new(b / (2.0 * self.h) * ((1.0 - s) * j0(x) + (1.0 + s) * j2(x)), 0.0);
            let ez = C64::new(j1(x), 0.0);
            (er, ephi, ez)
        } else {
            let x = self.q * r;
            let rho = self.rho;
            let er = C64::new(0.0, -b * rho / (2.0 * self.q))
                * ((1.0 - s) * bk0(x) + (1.0 + s) * bk2(x));
            let ephi = C64::new(
                b * rho / (2.0 * self.q) * ((1.0 - s) * bk0(x) - (1.0 + s) * bk2(x)),
                0.0,
            );
            let ez = C64::new(rho * bk1(x), 0.0);
            (er, ephi, ez)
        }
    }

    /// Time-averaged axial Poynting flux density S̄_z at unit amplitude
    /// (E(t) = E⁽⁺⁾e^{−iωt} + c.c. convention), W/m².
    pub fn poynting_z(&self, r: f64) -> f64 {
        let omega = self.k0 * C;
        let eps0 = crate::constants::EPS0;
        let (s, b) = (self.s, self.beta);
        if r <= self.radius {
            let x = self.h * r;
            b * omega * eps0 * self.n1 * self.n1 / (self.h * self.h)
                * ((1.0 - s) * (1.0 - self.s1) * j0(x) * j0(x)
                    + (1.0 + s) * (1.0 + self.s1) * j2(x) * j2(x))
        } else {
            let x = self.q * r;
            b * omega * eps0 * self.n2 * self.n2 * self.rho * self.rho / (self.q * self.q)
                * ((1.0 - s) * (1.0 - self.s2) * bk0(x) * bk0(x)
                    + (1.0 + s) * (1.0 + self.s2) * bk2(x) * bk2(x))
        }
    }

    /// Total guided power at unit amplitude: 2π ∫ S̄_z r dr over the cross
    /// section (adaptive quadrature, relative tolerance 1e−8).
    fn power_for_unit_amplitude(&self) -> f64 {
        let a = self.radius;
        let inner = adaptive_simpson(&|r| self.poynting_z(r) * r, 0.0, a, 1e-9);
        let outer_edge = a + 40.0 / self.q;
        let outer = adaptive_simpson(&|r| self.poynting_z(r) * r, a, outer_edge, 1e-9);
        2.0 * std::f64::consts::PI * (inner + outer)
    }
}

/// Quasi-linearly polarized evanescent field E⁽⁺⁾ in Cartesian components
/// (quantization axis = fiber axis z), at power `power` (W), polarization
/// angle `phi0`, propagation `direction` (+1 along +z, −1 along −z).
pub fn mode_field(
    mode: &GuidedMode,
    r: f64,
    phi: f64,
    z: f64,
    direction: i8,
    phi0: f64,
    power: f64,
) -> Result<Vector3<C64>> {
    if r <= mode.radius {
        return Err(Error::InsideFiber { r, a: mode.radius });
    }
    debug_assert!(direction == 1 || direction == -1);
    let (er, ephi, ez) = mode.profile_cyl(r);
    let amp = 2.0_f64.sqrt() * mode.norm * power.sqrt();
    let rel = phi - phi0;
    let (cosr, sinr) = (rel.cos(), rel.sin());
    let e_r = er * amp * cosr;
    let e_phi = ephi * C64::new(0.0, amp * sinr);
    let e_z = ez * (amp * direction as f64 * cosr);
    let phase = C64::from_polar(1.0, direction as f64 * mode.beta * z);
    let (cp, sp) = (phi.cos(), phi.sin());
    Ok(Vector3::new(
        (e_r * cp - e_phi * sp) * phase,
        (e_r * sp + e_phi * cp) * phase,
        e_z * phase,
    ))
}

/// Plain adaptive Simpson quadrature.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    let tol = rel_tol * whole.abs().max(1e-300);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 28)
}
