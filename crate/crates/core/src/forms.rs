//! Sharp bounds for the Hermitian forms `Σ_{m≠n} a_m ā_n r_μ(ξ_m − ξ_n)`
//! over well-separated points, and the Hardy–Littlewood–Sobolev special case.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{Family, Measure};
use crate::quad;
use crate::series::Neumaier;
use crate::specfun::{defect_majorant, defect_minorant, gamma, zeta};

/// Rows per parallel work unit; fixed so the reduction order never depends
/// on the thread count.
const CHUNK: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSet {
    pub xi: Vec<f64>,
    pub a: Vec<Complex64>,
    /// A separation: |ξ_m − ξ_n| ≥ δ for m ≠ n.
    pub delta: f64,
}

impl PointSet {
    /// Validates sizes and separation.  Without an explicit δ the minimal
    /// gap is used.
    pub fn new(xi: Vec<f64>, a: Vec<Complex64>, delta: Option<f64>) -> Result<Self> {
        if xi.len() != a.len() {
            return Err(Error::SizeMismatch(format!("{} points but {} coefficients", xi.len(), a.len())));
        }
        if xi.is_empty() {
            return Err(Error::Invalid("empty point set".into()));
        }
        if xi.iter().any(|x| !x.is_finite()) || a.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Invalid("points and coefficients must be finite".into()));
        }
        let mut sorted = xi.clone();
        sorted.sort_by(f64::total_cmp);
        let gap = sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        if gap == 0.0 {
            return Err(Error::Invalid("points must be distinct".into()));
        }
        let delta = match delta {
            Some(d) if !(d > 0.0 && d.is_finite()) => {
                return Err(Error::domain(format!("separation must be positive, got {d}")))
            }
            Some(d) if d > gap * (1.0 + 1e-12) => {
                return Err(Error::Invalid(format!("points are only {gap}-separated, requested {d}")))
            }
            Some(d) => d,
            None if gap.is_finite() => gap,
            None => 1.0,
        };
        Ok(PointSet { xi, a, delta })
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    pub fn norm2(&self) -> f64 {
        self.a.iter().map(|c| c.norm_sqr()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormBound {
    pub form: f64,
    pub norm2: f64,
    /// `−A(δ, μ) Σ|a|²`.
    pub lower: f64,
    /// `B(δ, μ) Σ|a|²` when the measure allows it.
    pub upper: Option<f64>,
}

impl FormBound {
    /// Whether the form lies within its bounds, up to `tol · Σ|a|²`.
    pub fn holds(&self, tol: f64) -> bool {
        let slack = tol * self.norm2;
        self.form >= self.lower - slack && self.upper.is_none_or(|u| self.form <= u + slack)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HlsConstants {
    pub sigma: f64,
    pub delta: f64,
    /// Positive K with `−K Σ|a|² ≤ Σ_{m≠n} a_m ā_n |ξ_m − ξ_n|^{−σ}`.
    pub lower: f64,
    /// Positive K with the form `≤ K Σ|a|²` (only for 1 < σ ≤ 2).
    pub upper: Option<f64>,
    /// σ = 2 is reached as a limit, not covered by the derivation itself.
    pub continuity_extension: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Lower,
    Upper,
}

/// `C_σ = π / ((2π)^σ sin(πσ/2))`, so that `r_{μ_σ}(t) = C_σ |t|^{−σ}`.
pub fn power_constant(sigma: f64) -> f64 {
    PI / ((2.0 * PI).powf(sigma) * (0.5 * PI * sigma).sin())
}

/// `r_μ(t) = ∫ 2λ/(λ² + 4π²t²) dμ(λ)`, the Fourier transform of `f_μ` off 0.
pub fn r_mu(measure: &Measure, t: f64) -> Result<f64> {
    if !(t != 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("r_mu needs finite t != 0, got {t}")));
    }
    let at = t.abs();
    match measure.family() {
        Family::HaarLog { scale } => Ok(scale / (2.0 * at)),
        Family::PowerLaw { sigma, scale } => Ok(scale * power_constant(*sigma) * at.powf(-sigma)),
        _ => {
            let c = 4.0 * PI * PI * at * at;
            Ok(quad::integrate_measure(|l| 2.0 * l / (l * l + c), measure, 1e-12)?.value)
        }
    }
}

/// `A(δ, μ) = ∫ δ^{−1}(2δ/λ − csch(λ/2δ)) dμ(λ)`.
pub fn a_const(measure: &Measure, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    match measure.family() {
        Family::HaarLog { scale } => Ok(scale * LN_2 / delta),
        Family::PowerLaw { sigma, scale } => {
            let s = *sigma;
            Ok(scale * (2.0 - 2f64.powf(2.0 - s)) * gamma(1.0 - s)? * zeta(1.0 - s)? / delta.powf(s))
        }
        _ => a_const_quad(measure, delta),
    }
}

/// `B(δ, μ) = ∫ δ^{−1}(coth(λ/2δ) − 2δ/λ) dμ(λ)`; needs the stronger condition.
pub fn b_const(measure: &Measure, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    measure.require_majorant()?;
    match measure.family() {
        Family::PowerLaw { sigma, scale } => {
            let s = *sigma;
            Ok(scale * 2.0 * gamma(1.0 - s)? * zeta(1.0 - s)? / delta.powf(s))
        }
        _ => b_const_quad(measure, delta),
    }
}

/// `A(δ, μ)` by quadrature, for any family.
pub fn a_const_quad(measure: &Measure, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let r = quad::integrate_measure(|l| defect_minorant(l / delta).unwrap_or(f64::NAN) / delta, measure, 1e-11)?;
    Ok(r.value)
}

/// `B(δ, μ)` by quadrature, for any family.
pub fn b_const_quad(measure: &Measure, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    measure.require_majorant()?;
    let r = quad::integrate_measure(|l| defect_majorant(l / delta).unwrap_or(f64::NAN) / delta, measure, 1e-11)?;
    Ok(r.value)
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("delta must be positive, got {delta}")))
    }
}

/// Sharp constants of the discrete Hardy–Littlewood–Sobolev forms with
/// kernel `|ξ_m − ξ_n|^{−σ}`, 0 < σ ≤ 2.
pub fn hls_constants(sigma: f64, delta: f64) -> Result<HlsConstants> {
    check_delta(delta)?;
    if !(sigma > 0.0 && sigma <= 2.0) {
        return Err(Error::domain(format!("sigma must lie in (0, 2], got {sigma}")));
    }
    let (lower, upper, ext) = if sigma == 1.0 {
        (2.0 * LN_2 / delta, None, false)
    } else if sigma == 2.0 {
        (PI * PI / (6.0 * delta * delta), Some(PI * PI / (3.0 * delta * delta)), true)
    } else {
        let z = zeta(sigma)?;
        let ds = delta.powf(sigma);
        let lower = (2.0 - 2f64.powf(2.0 - sigma)) * z / ds;
        let upper = (sigma > 1.0).then(|| 2.0 * z / ds);
        (lower, upper, false)
    };
    Ok(HlsConstants { sigma, delta, lower, upper, continuity_extension: ext })
}

/// `Σ_{m≠n} a_m ā_n k(ξ_m − ξ_n)` for a real even kernel.  Rows are split
/// into fixed chunks reduced in index order, so the result is reproducible
/// bit for bit.
pub fn hermitian_form<K>(points: &PointSet, kernel: K) -> Result<f64>
where
    K: Fn(f64) -> Result<f64> + Sync,
{
    let n = points.len();
    let rows: Vec<usize> = (0..n).collect();
    let partial: Vec<Result<f64>> = rows
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = Neumaier::default();
            for &m in chunk {
                // a_m ā_n + a_n ā_m = 2 Re(a_m ā_n); sum the upper triangle
                for j in (m + 1)..n {
                    let k = kernel(points.xi[m] - points.xi[j])?;
                    acc.add(2.0 * (points.a[m] * points.a[j].conj()).re * k);
                }
            }
            Ok(acc.total())
        })
        .collect();
    let mut total = Neumaier::default();
    for p in partial {
        total.add(p?);
    }
    Ok(total.total())
}

/// The form with kernel `r_μ`.
pub fn evaluate_form(points: &PointSet, measure: &Measure) -> Result<f64> {
    hermitian_form(points, |t| r_mu(measure, t))
}

/// The form with kernel `|t|^{−σ}`.
pub fn evaluate_hls_form(points: &PointSet, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::domain(format!("sigma must be positive, got {sigma}")));
    }
    hermitian_form(points, |t| Ok(t.abs().powf(-sigma)))
}

/// The form together with `−A Σ|a|²` and (if admissible) `B Σ|a|²`, using
/// the separation recorded in the point set.
pub fn form_bound(points: &PointSet, measure: &Measure) -> Result<FormBound> {
    let form = evaluate_form(points, measure)?;
    let norm2 = points.norm2();
    let lower = -a_const(measure, points.delta)? * norm2;
    let upper = if measure.admissibility().allows_majorant() {
        Some(b_const(measure, points.delta)? * norm2)
    } else {
        None
    };
    Ok(FormBound { form, norm2, lower, upper })
}

/// The value of the normalised form on the arithmetic progression δℤ ∩ [0, Nδ]
/// with alternating (lower) or constant (upper) coefficients, sign-adjusted so
/// it approaches `A(δ, μ)` resp. `B(δ, μ)` from below as N grows.
pub fn sharpness_witness(measure: &Measure, delta: f64, n: usize, side: Side) -> Result<f64> {
    check_delta(delta)?;
    if side == Side::Upper {
        measure.require_majorant()?;
    }
    let np1 = (n + 1) as f64;
    let mut acc = Neumaier::default();
    for k in 1..=n {
        let w = (np1 - k as f64) * r_mu(measure, delta * k as f64)?;
        let sign = match side {
            Side::Lower if k % 2 == 1 => 1.0,
            Side::Lower => -1.0,
            Side::Upper => 1.0,
        };
        acc.add(sign * w);
    }
    Ok(2.0 * acc.total() / np1)
}

/// N + 1 points with gaps `δ(1 + Exp(1))` starting at 0, and standard
/// complex Gaussian coefficients.
pub fn random_point_set<R: Rng + ?Sized>(rng: &mut R, n: usize, delta: f64) -> Result<PointSet> {
    check_delta(delta)?;
    let mut xi = Vec::with_capacity(n + 1);
    let mut a = Vec::with_capacity(n + 1);
    let mut x = 0.0;
    for k in 0..=n {
        if k > 0 {
            let e: f64 = Exp1.sample(rng);
            x += delta * (1.0 + e);
        }
        xi.push(x);
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        a.push(Complex64::new(re, im));
    }
    PointSet::new(xi, a, Some(delta))
}
