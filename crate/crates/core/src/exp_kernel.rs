//! The extremal minorant `L(λ, ·)` and majorant `M(λ, ·)` of `e^{−λ|x|}`
//! among entire functions of exponential type 2π, and their Fourier
//! transforms, which are supported on [−1, 1].

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::Measure;
use crate::quad::{self, QuadResult};
use crate::series::{self, Lattice, Profile};
use crate::specfun::{coth, csch};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelEval {
    pub lambda: f64,
    pub x: f64,
    pub value: f64,
    /// Nodes summed explicitly before the closed-form tail.
    pub trunc_terms: usize,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelTransform {
    pub lambda: f64,
    pub t: f64,
    pub value: f64,
}

/// `e^{−λs}` or, with `shifted`, `e^{−λs} − 1`.  The interpolation series
/// reproduces constants exactly, so the shifted profile gives `L − 1` and
/// `M − 1` without cancellation when λ is small.
struct ExpProfile {
    lambda: f64,
    shifted: bool,
}

impl Profile for ExpProfile {
    fn node(&self, a: f64) -> Result<(f64, f64)> {
        let e = (-self.lambda * a).exp();
        let v = if self.shifted { (-self.lambda * a).exp_m1() } else { e };
        Ok((v, -self.lambda * e))
    }

    fn at_zero(&self) -> Result<f64> {
        Ok(if self.shifted { 0.0 } else { 1.0 })
    }

    fn derivs(&self, s: f64) -> Result<[f64; 7]> {
        let e = (-self.lambda * s).exp();
        let mut out = [0.0; 7];
        let mut p = 1.0;
        for o in out.iter_mut() {
            *o = p * e;
            p *= -self.lambda;
        }
        if self.shifted {
            out[0] = (-self.lambda * s).exp_m1();
        }
        Ok(out)
    }
}

fn check(lambda: f64, x: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::domain(format!("lambda must be positive and finite, got {lambda}")));
    }
    if !x.is_finite() {
        return Err(Error::domain(format!("x must be finite, got {x}")));
    }
    Ok(())
}

fn kernel(lambda: f64, x: f64, lattice: Lattice) -> Result<KernelEval> {
    check(lambda, x)?;
    let s = series::eval(&ExpProfile { lambda, shifted: false }, lattice, x)?;
    Ok(KernelEval { lambda, x, value: s.value, trunc_terms: s.terms, tail_bound: s.tail_bound })
}

/// `L(λ, x)`: interpolates `e^{−λ|x|}` and its derivative on ℤ + ½.
pub fn eval_l(lambda: f64, x: f64) -> Result<KernelEval> {
    kernel(lambda, x, Lattice::HalfInteger)
}

/// `M(λ, x)`: interpolates `e^{−λ|x|}` on ℤ and its derivative on ℤ \ {0}.
pub fn eval_m(lambda: f64, x: f64) -> Result<KernelEval> {
    kernel(lambda, x, Lattice::Integer)
}

/// Below this λ the gaps are computed from the profile `expm1(−λ|s|)`, which
/// avoids cancelling against values near 1; above it that shift would leave
/// rounding noise where the gap is exponentially small.
const GAP_SHIFT_MAX: f64 = 1.0;

/// `e^{−λ|x|} − L(λ, x) ≥ 0`, accurate for small λ.
pub fn minorant_gap(lambda: f64, x: f64) -> Result<f64> {
    check(lambda, x)?;
    if lambda >= GAP_SHIFT_MAX {
        return Ok((-lambda * x.abs()).exp() - eval_l(lambda, x)?.value);
    }
    let s = series::eval(&ExpProfile { lambda, shifted: true }, Lattice::HalfInteger, x)?;
    Ok((-lambda * x.abs()).exp_m1() - s.value)
}

/// `M(λ, x) − e^{−λ|x|} ≥ 0`, accurate for small λ.
pub fn majorant_gap(lambda: f64, x: f64) -> Result<f64> {
    check(lambda, x)?;
    if lambda >= GAP_SHIFT_MAX {
        return Ok(eval_m(lambda, x)?.value - (-lambda * x.abs()).exp());
    }
    let s = series::eval(&ExpProfile { lambda, shifted: true }, Lattice::Integer, x)?;
    Ok(s.value - (-lambda * x.abs()).exp_m1())
}

fn check_t(lambda: f64, t: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::domain(format!("lambda must be positive and finite, got {lambda}")));
    }
    if t.is_nan() {
        return Err(Error::domain("t is NaN"));
    }
    Ok(())
}

/// Fourier transform `L̂(λ, t)`; zero for |t| ≥ 1, nonnegative everywhere.
pub fn eval_lhat(lambda: f64, t: f64) -> Result<KernelTransform> {
    check_t(lambda, t)?;
    Ok(KernelTransform { lambda, t, value: lhat(lambda, t) })
}

/// Fourier transform `M̂(λ, t)`; zero for |t| ≥ 1, nonnegative everywhere.
pub fn eval_mhat(lambda: f64, t: f64) -> Result<KernelTransform> {
    check_t(lambda, t)?;
    Ok(KernelTransform { lambda, t, value: mhat(lambda, t) })
}

pub(crate) fn lhat(lambda: f64, t: f64) -> f64 {
    let at = t.abs();
    if at >= 1.0 {
        return 0.0;
    }
    let y = 0.5 * lambda;
    let (sn, cs) = (PI * at).sin_cos();
    let v = if y <= 1.0 {
        let sh = y.sinh();
        ((1.0 - at) * sh * cs + lambda / (2.0 * PI) * sn * y.cosh()) / (sh * sh + sn * sn)
    } else {
        // numerator and denominator divided by sinh²(λ/2)
        let c = csch(y);
        ((1.0 - at) * cs * c + lambda / (2.0 * PI) * sn * coth(y) * c) / (1.0 + sn * sn * c * c)
    };
    v.max(0.0)
}

pub(crate) fn mhat(lambda: f64, t: f64) -> f64 {
    let at = t.abs();
    if at >= 1.0 {
        return 0.0;
    }
    let y = 0.5 * lambda;
    let (sn, cs) = (PI * at).sin_cos();
    let v = if y <= 1.0 {
        let sh = y.sinh();
        ((1.0 - at) * sh * y.cosh() + lambda / (2.0 * PI) * sn * cs) / (sh * sh + sn * sn)
    } else {
        let c = csch(y);
        ((1.0 - at) * coth(y) + lambda / (2.0 * PI) * sn * cs * c * c) / (1.0 + sn * sn * c * c)
    };
    v.max(0.0)
}

/// `∫_0^∞ L̂(λ, t) dλ/λ` for 0 < |t| ≤ 1; bounded by `1/(2|t|)`.
pub fn lhat_haar_integral(t: f64, tol: f64) -> Result<QuadResult> {
    if !(t != 0.0 && t.abs() <= 1.0) {
        return Err(Error::domain(format!("t must satisfy 0 < |t| <= 1, got {t}")));
    }
    quad::integrate_measure(|l| lhat(l, t), &Measure::haar(), tol)
}
