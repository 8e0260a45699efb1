//! Periodic analogues on ℝ/ℤ: the periodised exponential `p(λ, ·)`, its
//! extremal trigonometric polynomials `l`, `m`, the superposition `q_μ` and
//! its extremal polynomials `g_μ`, `h_μ`.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exp_kernel::{lhat, mhat};
use crate::forms::{a_const, b_const};
use crate::measures::{ExtValue, Family, Measure};
use crate::quad;
use crate::specfun::{coth, csch, defect_majorant, defect_minorant, gamma, hurwitz_zeta, zeta};

/// A trigonometric polynomial `Σ_{|n|≤N} c_n e(nx)` with `c_{−n} = conj(c_n)`,
/// so that it is real valued.  Only `c_0, …, c_N` are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct CoeffRecord {
    n: i64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct PolyRecord {
    degree: usize,
    coeffs: Vec<CoeffRecord>,
}

impl TrigPoly {
    /// From `c_0, …, c_N`; `c_0` must be real.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        match coeffs.first() {
            None => Err(Error::Invalid("a trigonometric polynomial needs c_0".into())),
            Some(c) if c.im != 0.0 => Err(Error::Invalid("c_0 of a real polynomial must be real".into())),
            _ => Ok(TrigPoly { coeffs }),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c_n` for any integer n (zero beyond the degree).
    pub fn coeff(&self, n: i64) -> Complex64 {
        let k = n.unsigned_abs() as usize;
        match self.coeffs.get(k) {
            None => Complex64::new(0.0, 0.0),
            Some(c) if n < 0 => c.conj(),
            Some(c) => *c,
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Mean over ℝ/ℤ.
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut s = 0.0;
        for (n, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            let theta = 2.0 * PI * (n as f64 * x).rem_euclid(1.0);
            let (sn, cs) = theta.sin_cos();
            s += c.re * cs - c.im * sn;
        }
        self.coeffs[0].re + 2.0 * s
    }

    pub fn neg(&self) -> TrigPoly {
        TrigPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// CSV with header `n,re,im`, rows for n = −N..N.  Floats use the
    /// shortest representation that round-trips exactly.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,re,im\n");
        let d = self.degree() as i64;
        for n in -d..=d {
            let c = self.coeff(n);
            // + 0.0 turns −0 into 0
            out.push_str(&format!("{},{},{}\n", n, c.re + 0.0, c.im + 0.0));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let mut recs = Vec::new();
        for (i, r) in rdr.deserialize::<CoeffRecord>().enumerate() {
            recs.push(r.map_err(|e| Error::Parse { line: i + 2, msg: e.to_string() })?);
        }
        Self::from_records(recs)
    }

    pub fn to_json(&self) -> String {
        let d = self.degree() as i64;
        let rec = PolyRecord {
            degree: self.degree(),
            coeffs: (-d..=d)
                .map(|n| {
                    let c = self.coeff(n);
                    CoeffRecord { n, re: c.re + 0.0, im: c.im + 0.0 }
                })
                .collect(),
        };
        serde_json::to_string_pretty(&rec).expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rec: PolyRecord =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        let p = Self::from_records(rec.coeffs)?;
        if p.degree() != rec.degree {
            return Err(Error::SizeMismatch(format!("degree {} but coefficients up to {}", rec.degree, p.degree())));
        }
        Ok(p)
    }

    fn from_records(recs: Vec<CoeffRecord>) -> Result<Self> {
        let deg = recs.iter().map(|r| r.n.unsigned_abs() as usize).max().ok_or_else(|| {
            Error::Invalid("no coefficients".into())
        })?;
        let mut pos: Vec<Option<Complex64>> = vec![None; deg + 1];
        let mut neg: Vec<Option<Complex64>> = vec![None; deg + 1];
        for r in &recs {
            let c = Complex64::new(r.re, r.im);
            let slot = if r.n < 0 { &mut neg[r.n.unsigned_abs() as usize] } else { &mut pos[r.n as usize] };
            if slot.replace(c).is_some() {
                return Err(Error::Invalid(format!("coefficient {} given twice", r.n)));
            }
        }
        let mut coeffs = Vec::with_capacity(deg + 1);
        for k in 0..=deg {
            let c = match (pos[k], neg[k]) {
                (Some(c), Some(d)) if k > 0 && d != c.conj() => {
                    return Err(Error::Invalid(format!("c_-{k} is not the conjugate of c_{k}")))
                }
                (Some(c), _) => c,
                (None, Some(d)) => d.conj(),
                (None, None) => Complex64::new(0.0, 0.0),
            };
            coeffs.push(c);
        }
        Self::new(coeffs)
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("lambda must be positive and finite, got {lambda}")))
    }
}

/// `{x} − 1/2` in [−1/2, 1/2).
fn centred(x: f64) -> f64 {
    x.rem_euclid(1.0) - 0.5
}

/// `p(λ, x) = −2/λ + Σ_m e^{−λ|x+m|}`, period 1, mean zero.
pub fn eval_p(lambda: f64, x: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if !x.is_finite() {
        return Err(Error::domain(format!("x must be finite, got {x}")));
    }
    Ok(p_unchecked(lambda, x))
}

pub(crate) fn p_unchecked(lambda: f64, x: f64) -> f64 {
    let y = centred(x).abs();
    if lambda <= 1.0 {
        let s = (0.5 * lambda * y).sinh();
        2.0 * s * s * csch(0.5 * lambda) - defect_minorant(lambda).expect("lambda checked")
    } else {
        let num = (lambda * (y - 0.5)).exp() + (-lambda * (y + 0.5)).exp();
        num / (-(-lambda).exp_m1()) - 2.0 / lambda
    }
}

/// `∂p/∂x`, set to 0 at the integers.
pub fn eval_j(lambda: f64, x: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if !x.is_finite() {
        return Err(Error::domain(format!("x must be finite, got {x}")));
    }
    let f = x.rem_euclid(1.0);
    if f == 0.0 {
        return Ok(0.0);
    }
    let y = f - 0.5;
    Ok(if lambda <= 1.0 {
        lambda * (lambda * y).sinh() * csch(0.5 * lambda)
    } else {
        let num = (lambda * (y - 0.5)).exp() - (-lambda * (y + 0.5)).exp();
        lambda * num / (-(-lambda).exp_m1())
    })
}

/// Extremal minorant of `p(λ, ·)` of degree N; touches p at `(n − ½)/(N+1)`.
pub fn l_poly(lambda: f64, n: usize) -> Result<TrigPoly> {
    check_lambda(lambda)?;
    let d = (n + 1) as f64;
    let mut c = vec![Complex64::new(-defect_minorant(lambda / d)? / d, 0.0)];
    for k in 1..=n {
        c.push(Complex64::new(lhat(lambda / d, k as f64 / d) / d, 0.0));
    }
    TrigPoly::new(c)
}

/// Extremal majorant of `p(λ, ·)` of degree N; touches p at `n/(N+1)`.
pub fn m_poly(lambda: f64, n: usize) -> Result<TrigPoly> {
    check_lambda(lambda)?;
    let d = (n + 1) as f64;
    let mut c = vec![Complex64::new(defect_majorant(lambda / d)? / d, 0.0)];
    for k in 1..=n {
        c.push(Complex64::new(mhat(lambda / d, k as f64 / d) / d, 0.0));
    }
    TrigPoly::new(c)
}

/// `q_μ(x) = ∫ p(λ, x) dμ(λ)`; +∞ at integers unless μ has the stronger
/// integrability.
pub fn q_mu(measure: &Measure, x: f64) -> Result<ExtValue> {
    if !x.is_finite() {
        return Err(Error::domain(format!("x must be finite, got {x}")));
    }
    let f = x.rem_euclid(1.0);
    match measure.family() {
        Family::HaarLog { scale } => {
            if f == 0.0 {
                Ok(ExtValue::PosInf)
            } else {
                Ok(ExtValue::Finite(-scale * (2.0 * (PI * f).sin()).ln()))
            }
        }
        Family::PowerLaw { sigma, scale } => {
            let s = 1.0 - sigma;
            let g = gamma(s)?;
            if f == 0.0 {
                if *sigma < 1.0 {
                    Ok(ExtValue::PosInf)
                } else {
                    Ok(ExtValue::Finite(2.0 * scale * g * zeta(s)?))
                }
            } else {
                Ok(ExtValue::Finite(scale * g * (hurwitz_zeta(s, f)? + hurwitz_zeta(s, 1.0 - f)?)))
            }
        }
        Family::Atomic(atoms) => {
            Ok(ExtValue::Finite(atoms.iter().map(|a| a.weight * p_unchecked(a.lambda, f)).sum()))
        }
        Family::Weight(_) => {
            if f == 0.0 && !measure.admissibility().allows_majorant() {
                return Ok(ExtValue::PosInf);
            }
            Ok(ExtValue::Finite(quad::integrate_measure(|l| p_unchecked(l, f), measure, 1e-11)?.value))
        }
    }
}

fn coefficient_integrals<K>(measure: &Measure, n: usize, tol: f64, kernel: K) -> Result<Vec<f64>>
where
    K: Fn(f64, f64) -> f64 + Sync,
{
    let d = (n + 1) as f64;
    let nu = measure.dilate(d)?;
    (1..=n)
        .into_par_iter()
        .map(|k| {
            let t = k as f64 / d;
            Ok(quad::integrate_measure(|l| kernel(l, t), &nu, tol)?.value / d)
        })
        .collect()
}

/// Extremal minorant of `q_μ` of degree N.
pub fn g_poly(measure: &Measure, n: usize, tol: f64) -> Result<TrigPoly> {
    let c0 = -a_const(measure, (n + 1) as f64)?;
    let rest = coefficient_integrals(measure, n, tol, lhat)?;
    TrigPoly::new(std::iter::once(c0).chain(rest).map(|v| Complex64::new(v, 0.0)).collect())
}

/// Extremal majorant of `q_μ` of degree N; needs the stronger condition.
pub fn h_poly(measure: &Measure, n: usize, tol: f64) -> Result<TrigPoly> {
    measure.require_majorant()?;
    let c0 = b_const(measure, (n + 1) as f64)?;
    let rest = coefficient_integrals(measure, n, tol, mhat)?;
    TrigPoly::new(std::iter::once(c0).chain(rest).map(|v| Complex64::new(v, 0.0)).collect())
}

/// `u_N = −g_μ(N; ·)` for the Haar measure: the minimal-mean majorant of
/// `log|2 sin πx|` of degree N, with mean `log 2/(N+1)`.
pub fn u_poly(n: usize, tol: f64) -> Result<TrigPoly> {
    Ok(g_poly(&Measure::haar(), n, tol)?.neg())
}

/// Closed form of the mean of `u_N`.
pub fn u_mean(n: usize) -> f64 {
    LN_2 / (n + 1) as f64
}

/// `Σ_m e^{−λ|x+m|} − 2/λ` by direct lattice summation, for cross-checks.
pub fn p_lattice_sum(lambda: f64, x: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let f = x.rem_euclid(1.0);
    let mut s = 0.0;
    let mut m = 0i64;
    loop {
        let a = (-lambda * (f + m as f64)).exp();
        let b = (-lambda * (m as f64 + 1.0 - f)).exp();
        s += a + b;
        if a < 1e-18 * s || m > 10_000_000 {
            break;
        }
        m += 1;
    }
    Ok(s - 2.0 / lambda)
}

/// `p(λ, 0)` and `p(λ, ½)`: the extreme values of p.
pub fn p_extremes(lambda: f64) -> Result<(f64, f64)> {
    check_lambda(lambda)?;
    Ok((coth(0.5 * lambda) - 2.0 / lambda, -defect_minorant(lambda)?))
}
