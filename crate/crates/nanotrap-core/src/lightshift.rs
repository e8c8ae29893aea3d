//! Assembly and diagonalization of the Zeeman-manifold light-shift
//! Hamiltonian.
//!
//! Field convention: E(t) = E⁽⁺⁾e^{−iωt} + c.c., so a plane wave of intensity
//! I has |E⁽⁺⁾|² = I/(2ε₀c). The quantization axis is the fiber axis z and all
//! field components are Cartesian. Beams inside one coherence group are summed
//! at amplitude level before the outer product; distinct groups add at the
//! Hamiltonian level.

use nalgebra::{DMatrix, Matrix3, Vector3};
use num_complex::Complex64;

use crate::angular::spin_matrices;
use crate::atomicdata::AtomModel;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::polarizability::{alpha_triple, Manifold, PolarizabilityTriple};

type C64 = Complex64;

/// One mutually-coherent frequency group: drive frequency and the accumulated
/// outer product M_μν = Σ E⁽⁻⁾_μ E⁽⁺⁾_ν of the summed amplitudes (V²/m²).
#[derive(Debug, Clone)]
pub struct CoherentGroup {
    pub omega: f64,
    pub m: Matrix3<C64>,
}

impl CoherentGroup {
    /// Outer product of a single summed amplitude; M is Hermitian PSD by
    /// construction.
    pub fn from_amplitude(omega: f64, e_plus: &Vector3<C64>) -> Self {
        let mut m = Matrix3::<C64>::zeros();
        for mu in 0..3 {
            for nu in 0..3 {
                m[(mu, nu)] = e_plus[mu].conj() * e_plus[nu];
            }
        }
        CoherentGroup { omega, m }
    }
}

/// Field bilinears at one spatial point, grouped by coherence group.
#[derive(Debug, Clone, Default)]
pub struct FieldBilinear {
    pub groups: Vec<CoherentGroup>,
}

impl FieldBilinear {
    pub fn from_amplitudes(amplitudes: &[(f64, Vector3<C64>)]) -> Self {
        FieldBilinear {
            groups: amplitudes
                .iter()
                .map(|(w, e)| CoherentGroup::from_amplitude(*w, e))
                .collect(),
        }
    }
}

/// Light-shift Hamiltonian contribution of a single coherent group with the
/// polarizabilities supplied by the caller. Exposed separately so synthetic
/// polarizability triples can drive it in tests.
pub fn hamiltonian_term(f: HalfInt, alpha: &PolarizabilityTriple, m: &Matrix3<C64>) -> DMatrix<C64> {
    let dim = f.multiplicity();
    let fv = f.value();
    let spins = spin_matrices(f);

    let trace_m = m[(0, 0)] + m[(1, 1)] + m[(2, 2)];
    let mut h = DMatrix::<C64>::identity(dim, dim) * (-alpha.alpha0 * trace_m);

    // (E⁽⁻⁾ × E⁽⁺⁾)_λ from the antisymmetric part of M; purely imaginary for
    // Hermitian M, so the -i prefactor makes the term Hermitian.
    let cross = [
        m[(1, 2)] - m[(2, 1)],
        m[(2, 0)] - m[(0, 2)],
        m[(0, 1)] - m[(1, 0)],
    ];
    let vec_coef = C64::new(0.0, -1.0) * alpha.alpha1 / (2.0 * fv);
    let f_ops = [&spins.fx, &spins.fy, &spins.fz];
    for lam in 0..3 {
        if cross[lam] != C64::new(0.0, 0.0) {
            h += f_ops[lam] * (vec_coef * cross[lam]);
        }
    }

    // Rank-2 coupling is skipped for F = 1/2 (the 1/(F(2F-1)) prefactor is
    // singular and the coupling vanishes for a two-level manifold).
    if f.twice() >= 2 {
        let coef = 3.0 / (fv * (2.0 * fv - 1.0));
        let third_casimir = C64::new(spins.casimir / 3.0, 0.0);
        for mu in 0..3 {
            for nu in 0..3 {
                let m_mu_nu = m[(mu, nu)];
                if m_mu_nu == C64::new(0.0, 0.0) {
                    continue;
                }
                let mut t = (f_ops[mu] * f_ops[nu] + f_ops[nu] * f_ops[mu]) * C64::new(0.5, 0.0);
                if mu == nu {
                    for k in 0..dim {
                        t[(k, k)] -= third_casimir;
                    }
                }
                h += t * (-alpha.alpha2 * coef * m_mu_nu);
            }
        }
    }
    h
}

/// Full light-shift Hamiltonian of manifold `m` in the field `bilinear`:
/// incoherent groups add, each evaluated with its own polarizability triple.
pub fn build_hamiltonian(
    m: &Manifold,
    bilinear: &FieldBilinear,
    atom: &AtomModel,
) -> Result<DMatrix<C64>> {
    let dim = m.f.multiplicity();
    let mut h = DMatrix::<C64>::zeros(dim, dim);
    for group in &bilinear.groups {
        let alpha = alpha_triple(atom, m, group.omega)?;
        h += hamiltonian_term(m.f, &alpha, &group.m);
    }
    Ok(h)
}

/// Hermitian eigensystem with deterministic ordering: eigenvalues ascending,
/// each eigenvector's largest-magnitude component made real positive.
pub fn adiabatic_levels(h: &DMatrix<C64>) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let scale = h.norm();
    let deviation = (h - h.adjoint()).norm();
    if scale > 0.0 && deviation > 1e-12 * scale {
        return Err(Error::NonHermitian { deviation });
    }
    let dim = h.nrows();
    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());

    let mut values = Vec::with_capacity(dim);
    let mut vectors = DMatrix::<C64>::zeros(dim, dim);
    for (k, &idx) in order.iter().enumerate() {
        values.push(eig.eigenvalues[idx]);
        let col = eig.eigenvectors.column(idx);
        // phase convention: largest-magnitude component real positive
        let (mut best, mut best_mag) = (0, 0.0);
        for (i, c) in col.iter().enumerate() {
            if c.norm() > best_mag {
                best_mag = c.norm();
                best = i;
            }
        }
        let phase = if best_mag > 0.0 {
            col[best] / C64::new(best_mag, 0.0)
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..dim {
            vectors[(i, k)] = col[i] / phase;
        }
    }
    Ok((values, vectors))
}

/// Hamiltonian plus its sorted eigensystem for one manifold.
#[derive(Debug, Clone)]
pub struct LightShiftResult {
    pub f: HalfInt,
    pub h: DMatrix<C64>,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<C64>,
}

/// Build and diagonalize in one step.
pub fn light_shift(m: &Manifold, bilinear: &FieldBilinear, atom: &AtomModel) -> Result<LightShiftResult> {
    let h = build_hamiltonian(m, bilinear, atom)?;
    let (eigenvalues, eigenvectors) = adiabatic_levels(&h)?;
    Ok(LightShiftResult { f: m.f, h, eigenvalues, eigenvectors })
}
