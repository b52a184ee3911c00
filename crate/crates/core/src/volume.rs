//! Hyperbolic volumes of tetrahedra.
//!
//! The general formula is the Murakami–Yano dilogarithm expression. Orthoschemes
//! additionally get the classical Lobachevsky-function formula as a cross-check.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::det;
use crate::real::Real;
use crate::shape::{permutations4, ShapeError, TetShape};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VolumeError {
    #[error("not a hyperbolic tetrahedron: {0}")]
    Domain(#[from] ShapeError),
    #[error("volume error bound {err:e} too large to decide integrality at tolerance {tol:e}")]
    Precision { err: f64, tol: f64 },
    #[error("volume formulas disagree by {0:e}")]
    Inconsistent(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeValue<T = f64> {
    pub value: T,
    /// Empirical bound: spread between independent evaluations.
    pub err: T,
}

/// `ζ(2n)` for `n >= 1`.
fn zeta_even<T: Real>(n: usize) -> T {
    let pi = T::PI();
    match n {
        1 => pi * pi / T::lit(6.0),
        2 => pi.powi(4) / T::lit(90.0),
        3 => pi.powi(6) / T::lit(945.0),
        4 => pi.powi(8) / T::lit(9450.0),
        _ => {
            let s = 2 * n as i32;
            let mut acc = T::zero();
            for k in (1..=60).rev() {
                acc = acc + T::lit(k as f64).powi(-s);
            }
            // integral tail beyond 60
            acc + T::lit(60.5).powi(1 - s) / T::lit((s - 1) as f64)
        }
    }
}

/// `ζ(2n)/(2π)^{2n}` for n = 1..=N, shared by the Clausen and dilogarithm series.
fn zeta_ratios<T: Real>() -> Vec<T> {
    let two_pi = T::PI() * T::lit(2.0);
    (1..=40).map(|n| zeta_even::<T>(n) / two_pi.powi(2 * n as i32)).collect()
}

/// Clausen function `Cl₂(x) = −∫₀^x ln|2 sin(t/2)| dt`.
pub fn clausen2<T: Real>(x: T) -> T {
    let two_pi = T::PI() * T::lit(2.0);
    let mut y = x % two_pi;
    if y > T::PI() {
        y = y - two_pi;
    } else if y < -T::PI() {
        y = y + two_pi;
    }
    if y == T::zero() {
        return T::zero();
    }
    // Cl₂(y) = y − y ln|y| + y Σ ζ(2n) (y/2π)^{2n} / (n(2n+1)), |y| ≤ π
    let y2 = y * y;
    let mut pow = T::one();
    let mut sum = T::zero();
    for (i, z) in zeta_ratios::<T>().iter().enumerate() {
        let n = (i + 1) as f64;
        pow = pow * y2;
        let term = *z * pow / T::lit(n * (2.0 * n + 1.0));
        sum = sum + term;
        if term.abs() < T::epsilon() * T::lit(1e-3) {
            break;
        }
    }
    y - y * y.abs().ln() + y * sum
}

/// Lobachevsky function `Λ(θ) = −∫₀^θ ln|2 sin t| dt = ½ Cl₂(2θ)`.
pub fn lobachevsky<T: Real>(theta: T) -> T {
    clausen2(theta * T::lit(2.0)) / T::lit(2.0)
}

/// Principal-branch dilogarithm.
pub fn dilog<T: Real>(z: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let pi2_6 = T::PI() * T::PI() / T::lit(6.0);
    if z == Complex::new(T::zero(), T::zero()) {
        return z;
    }
    if (z - one).norm() < T::epsilon() {
        return Complex::new(pi2_6, T::zero());
    }
    if z.norm() > T::one() {
        // Li₂(z) = −Li₂(1/z) − π²/6 − ½ ln²(−z)
        let l = (-z).ln();
        return -dilog(one / z) - Complex::new(pi2_6, T::zero()) - l * l / T::lit(2.0);
    }
    if z.re > T::lit(0.5) {
        // Li₂(z) = π²/6 − ln z ln(1−z) − Li₂(1−z)
        return Complex::new(pi2_6, T::zero()) - z.ln() * (one - z).ln() - dilog(one - z);
    }
    // Bernoulli series in u = −ln(1−z)
    let u = -(one - z).ln();
    let u2 = u * u;
    let mut acc = u - u2 / T::lit(4.0);
    let mut pow = u;
    for (i, zr) in zeta_ratios::<T>().iter().enumerate() {
        let k = (i + 1) as f64;
        pow = pow * u2;
        // B_{2k}/(2k+1)! = (−1)^{k+1} 2 ζ(2k) / ((2π)^{2k} (2k+1))
        let sign = if (i + 1) % 2 == 1 { T::one() } else { -T::one() };
        let c = sign * T::lit(2.0) * *zr / T::lit(2.0 * k + 1.0);
        let term = pow * c;
        acc = acc + term;
        if term.norm() < T::epsilon() * T::lit(1e-3) {
            break;
        }
    }
    acc
}

/// Murakami–Yano volume of the tetrahedron with the given shape.
pub fn murakami_yano<T: Real>(t: &TetShape) -> T {
    // A,B,C are the dihedral angles at edges through one vertex; D,E,F the opposite ones.
    let ang = |i, j| t.angle(i, j).radians::<T>();
    let (a_, b_, c_, d_, e_, f_) = (ang(0, 1), ang(0, 2), ang(1, 2), ang(2, 3), ang(1, 3), ang(0, 3));
    let ex = |x: T| Complex::new(x.cos(), x.sin());
    let (a, b, c, d, e, f) = (ex(a_), ex(b_), ex(c_), ex(d_), ex(e_), ex(f_));
    let g = t.gram::<T>();
    let detg = det(&g);
    let s = a_.sin() * d_.sin() + b_.sin() * e_.sin() + c_.sin() * f_.sin();
    let den = a * d + b * e + c * f + a * b * f + a * c * e + b * c * d + d * e * f + a * b * c * d * e * f;
    let sq = Complex::new(detg, T::zero()).sqrt();
    let two = T::lit(2.0);
    let z1 = (Complex::new(s, T::zero()) - sq) * (-two) / den;
    let z2 = (Complex::new(s, T::zero()) + sq) * (-two) / den;
    let u = |z: Complex<T>| {
        (dilog(z) + dilog(a * b * d * e * z) + dilog(a * c * d * f * z) + dilog(b * c * e * f * z)
            - dilog(-a * b * c * z)
            - dilog(-a * e * f * z)
            - dilog(-b * d * f * z)
            - dilog(-c * d * e * z))
            / two
    };
    (u(z1) - u(z2)).im / two
}

/// Volume of the orthoscheme with linear diagram angles `[α, β, γ]`.
pub fn orthoscheme<T: Real>(alpha: T, beta: T, gamma: T) -> T {
    let l = lobachevsky::<T>;
    let half_pi = T::FRAC_PI_2();
    let num = (beta.cos().powi(2) - alpha.sin().powi(2) * gamma.sin().powi(2)).sqrt();
    let delta = (num / (alpha.cos() * gamma.cos())).atan();
    (l(alpha + delta) - l(alpha - delta) + l(gamma + delta) - l(gamma - delta) - l(half_pi - beta + delta)
        + l(half_pi - beta - delta)
        + l(half_pi - delta) * T::lit(2.0))
        / T::lit(4.0)
}

/// Volume with an empirical error bound.
///
/// The bound is the spread of the general formula over all face relabelings,
/// widened by the orthoscheme discrepancy when the diagram is linear.
pub fn tet_volume<T: Real>(t: &TetShape) -> Result<VolumeValue<T>, VolumeError> {
    t.hyperbolic_check::<T>(T::zero_tol())?;
    let base = murakami_yano::<T>(t);
    let mut spread = T::zero();
    for p in permutations4().iter().step_by(5) {
        spread = spread.max((murakami_yano::<T>(&t.permuted(p)) - base).abs());
    }
    if let Some(o) = t.linear_order() {
        let ortho = orthoscheme(
            t.angle(o[0], o[1]).radians::<T>(),
            t.angle(o[1], o[2]).radians::<T>(),
            t.angle(o[2], o[3]).radians::<T>(),
        );
        let gap = (ortho - base).abs();
        if gap > T::lit(1e-8) {
            return Err(VolumeError::Inconsistent(gap.to_f64().unwrap_or(f64::NAN)));
        }
        spread = spread.max(gap);
    }
    Ok(VolumeValue { value: base, err: spread.max(T::epsilon() * T::lit(64.0)) })
}

/// `Some(n)` when `Vol(P)/Vol(F)` is within `tol` of the integer `n`.
pub fn ratio_integrality<T: Real>(
    f: &VolumeValue<T>,
    p: &VolumeValue<T>,
    tol: T,
) -> Result<Option<u32>, VolumeError> {
    let r = p.value / f.value;
    let err = (p.err + r * f.err) / f.value;
    if err > tol / T::lit(10.0) {
        return Err(VolumeError::Precision {
            err: err.to_f64().unwrap_or(f64::NAN),
            tol: tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = r.round();
    if (r - n).abs() < tol && n >= T::one() {
        Ok(n.to_u32())
    } else {
        Ok(None)
    }
}

/// `3Λ(π/3)`, the volume of the regular ideal tetrahedron and the supremum over all tetrahedra.
pub fn max_tet_volume<T: Real>() -> T {
    lobachevsky(T::FRAC_PI_3()) * T::lit(3.0)
}
