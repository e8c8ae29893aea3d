//! Exact angular-momentum algebra: Wigner 6-j symbols and Cartesian spin
//! operator matrices.
//!
//! The 6-j symbol is evaluated with the Racah single-sum formula carried out
//! entirely in exact big-integer rational arithmetic; conversion to `f64`
//! happens once at the very end. Exactness makes the tetrahedral symmetries
//! (column permutations, pairwise upper/lower swaps) hold *bitwise*, which the
//! test suite relies on. Arguments are asserted to satisfy j ≤ 100; the
//! atomic-structure use here never exceeds j = 25/2.

use std::collections::HashMap;
use std::sync::Mutex;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::halfint::HalfInt;

static FACTORIALS: Lazy<Mutex<Vec<BigInt>>> = Lazy::new(|| Mutex::new(vec![BigInt::one()]));

/// n! as a big integer, memoized.
fn factorial(n: usize) -> BigInt {
    let mut cache = FACTORIALS.lock().unwrap();
    while cache.len() <= n {
        let next = cache.last().unwrap() * BigInt::from(cache.len());
        cache.push(next);
    }
    cache[n].clone()
}

/// Δ(a,b,c) = (a+b−c)!(a−b+c)!(−a+b+c)!/(a+b+c+1)! for a valid triad,
/// in twice-value arguments.
fn triangle_coefficient(ta: i32, tb: i32, tc: i32) -> BigRational {
    let f = |x: i32| factorial((x / 2) as usize);
    let num = f(ta + tb - tc) * f(ta - tb + tc) * f(-ta + tb + tc);
    let den = factorial(((ta + tb + tc) / 2 + 1) as usize);
    BigRational::new(num, den)
}

static W6J_CACHE: Lazy<Mutex<HashMap<[i32; 6], f64>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Wigner 6-j symbol {j1 j2 j3; j4 j5 j6}.
///
/// Returns 0 when any of the four triangle conditions fails; never errors.
pub fn wigner6j(j1: HalfInt, j2: HalfInt, j3: HalfInt, j4: HalfInt, j5: HalfInt, j6: HalfInt) -> f64 {
    let key = [j1.twice(), j2.twice(), j3.twice(), j4.twice(), j5.twice(), j6.twice()];
    if let Some(&v) = W6J_CACHE.lock().unwrap().get(&key) {
        return v;
    }
    let v = wigner6j_uncached(j1, j2, j3, j4, j5, j6);
    W6J_CACHE.lock().unwrap().insert(key, v);
    v
}

fn wigner6j_uncached(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    j4: HalfInt,
    j5: HalfInt,
    j6: HalfInt,
) -> f64 {
    for j in [j1, j2, j3, j4, j5, j6] {
        assert!(j.twice() <= 200, "wigner6j argument out of supported range: {j}");
    }
    if !(HalfInt::triangle(j1, j2, j3)
        && HalfInt::triangle(j1, j5, j6)
        && HalfInt::triangle(j4, j2, j6)
        && HalfInt::triangle(j4, j5, j3))
    {
        return 0.0;
    }
    let (t1, t2, t3, t4, t5, t6) = (
        j1.twice(),
        j2.twice(),
        j3.twice(),
        j4.twice(),
        j5.twice(),
        j6.twice(),
    );
    // Triad sums and opposite-pair sums (all integers once the triangle
    // conditions hold).
    let a = [
        (t1 + t2 + t3) / 2,
        (t1 + t5 + t6) / 2,
        (t4 + t2 + t6) / 2,
        (t4 + t5 + t3) / 2,
    ];
    let b = [
        (t1 + t2 + t4 + t5) / 2,
        (t2 + t3 + t5 + t6) / 2,
        (t3 + t1 + t6 + t4) / 2,
    ];
    let t_lo = *a.iter().max().unwrap();
    let t_hi = *b.iter().min().unwrap();

    let mut series = BigRational::zero();
    for t in t_lo..=t_hi {
        let mut den = BigInt::one();
        for ai in a {
            den *= factorial((t - ai) as usize);
        }
        for bi in b {
            den *= factorial((bi - t) as usize);
        }
        let mut term = BigRational::new(factorial((t + 1) as usize), den);
        if t % 2 != 0 {
            term = -term;
        }
        series += term;
    }
    if series.is_zero() {
        return 0.0;
    }

    let delta = triangle_coefficient(t1, t2, t3)
        * triangle_coefficient(t1, t5, t6)
        * triangle_coefficient(t4, t2, t6)
        * triangle_coefficient(t4, t5, t3);

    // value² = series² · Δ-product, exact; one rounding at the conversion.
    let square = &series * &series * delta;
    let magnitude = square
        .to_f64()
        .expect("wigner6j: value out of f64 range")
        .sqrt();
    if series.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// Cartesian spin operator matrices for a manifold of total angular momentum F.
///
/// Basis |F, mF⟩ ordered by ascending mF = −F ... +F; ħ = 1 units.
#[derive(Debug, Clone)]
pub struct SpinMatrices {
    pub f: HalfInt,
    pub fx: DMatrix<Complex64>,
    pub fy: DMatrix<Complex64>,
    pub fz: DMatrix<Complex64>,
    /// F(F+1), the coefficient of the identity in F̂².
    pub casimir: f64,
}

pub fn spin_matrices(f: HalfInt) -> SpinMatrices {
    assert!(f.twice() >= 1, "spin matrices need F >= 1/2");
    let dim = f.multiplicity();
    let cas = f.casimir();
    let m_of = |k: usize| (-f.twice() + 2 * k as i32) as f64 / 2.0;

    let mut fz = DMatrix::<Complex64>::zeros(dim, dim);
    let mut fplus = DMatrix::<Complex64>::zeros(dim, dim);
    for k in 0..dim {
        let m = m_of(k);
        fz[(k, k)] = Complex64::new(m, 0.0);
        if k + 1 < dim {
            fplus[(k + 1, k)] = Complex64::new((cas - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let fminus = fplus.adjoint();
    let fx = (&fplus + &fminus) * Complex64::new(0.5, 0.0);
    let fy = (&fplus - &fminus) * Complex64::new(0.0, -0.5);
    SpinMatrices { f, fx, fy, fz, casimir: cas }
}
