//! Upper bounds for `sup_{|z|≤1} log|F(z)|`, F monic with given roots, in
//! terms of power sums of the roots reflected into the closed unit disk.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad;

/// Roots of modulus at most `1 + INSIDE_GUARD` count as inside the disk, so
/// rounding on the unit circle never produces a spurious reflection.
pub const INSIDE_GUARD: f64 = 1e-15;

const GRID: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet {
    pub alpha: Vec<Complex64>,
}

impl RootSet {
    pub fn new(alpha: Vec<Complex64>) -> Result<Self> {
        if alpha.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::Invalid("roots must be finite".into()));
        }
        Ok(RootSet { alpha })
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// `log|F(e(x))| = Σ log|e(x) − α|`.
    pub fn log_modulus_on_circle(&self, x: f64) -> f64 {
        let z = Complex64::from_polar(1.0, 2.0 * PI * x.rem_euclid(1.0));
        self.alpha.iter().map(|a| (z - a).norm().ln()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtBound {
    pub n: usize,
    /// `Σ log⁺|α|`.
    pub log_plus: f64,
    /// `M log 2 / (N+1)`.
    pub mass_term: f64,
    /// `Σ_{n≤N} n^{−1} |Σ β^n|`.
    pub power_sum_term: f64,
    pub total: f64,
}

fn outside(a: &Complex64) -> bool {
    a.norm() > 1.0 + INSIDE_GUARD
}

/// Exterior roots α ↦ 1/ᾱ; others unchanged.
pub fn reflect_roots(roots: &RootSet) -> Vec<Complex64> {
    roots
        .alpha
        .iter()
        .map(|a| if outside(a) { 1.0 / a.conj() } else { *a })
        .collect()
}

/// `Σ log⁺|α| + M log 2/(N+1) + Σ_{n=1}^N n^{−1}|Σ β^n|`.
pub fn et_bound(roots: &RootSet, n: usize) -> Result<EtBound> {
    let log_plus: f64 = roots.alpha.iter().filter(|a| outside(a)).map(|a| a.norm().ln()).sum();
    let beta = reflect_roots(roots);
    let mass_term = roots.len() as f64 * LN_2 / (n + 1) as f64;
    let mut pow: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); beta.len()];
    let mut power_sum_term = 0.0;
    for k in 1..=n {
        let mut s = Complex64::new(0.0, 0.0);
        for (p, b) in pow.iter_mut().zip(&beta) {
            *p *= b;
            s += *p;
        }
        power_sum_term += s.norm() / k as f64;
    }
    Ok(EtBound { n, log_plus, mass_term, power_sum_term, total: log_plus + mass_term + power_sum_term })
}

/// Numerical lower estimate of `sup_{|z|≤1} log|F(z)|` (attained on the
/// circle): best of a 2^16-point grid, refined by golden-section search.
pub fn sup_log_oracle(roots: &RootSet) -> f64 {
    if roots.is_empty() {
        return 0.0;
    }
    let f = |x: f64| roots.log_modulus_on_circle(x);
    let h = 1.0 / GRID as f64;
    let mut best_x = 0.0;
    let mut best = f64::NEG_INFINITY;
    for k in 0..GRID {
        let x = k as f64 * h;
        let v = f(x);
        // a root on a grid point gives −∞; it can never be the maximum
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let mut half = h;
    for _ in 0..3 {
        let (x, v) = golden_max(&f, best_x - half, best_x + half);
        if v > best {
            best = v;
            best_x = x;
        }
        half *= 0.25;
    }
    best
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-15 {
            break;
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// `(∫_{ℝ/ℤ} log|F(e(x))| dx, Σ log⁺|α|)`; equal by Jensen's formula.
pub fn jensen_check(roots: &RootSet, tol: f64) -> Result<(f64, f64)> {
    // split at root arguments so log singularities sit at piece endpoints
    let mut cuts: Vec<f64> = roots
        .alpha
        .iter()
        .filter(|a| a.norm() > 0.0)
        .map(|a| (a.arg() / (2.0 * PI)).rem_euclid(1.0))
        .collect();
    cuts.push(0.0);
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut total = 0.0;
    for w in cuts.windows(2) {
        total += quad::integrate_finite(|x| roots.log_modulus_on_circle(x), w[0], w[1], tol)?.value;
    }
    let b = et_bound(roots, 0)?;
    Ok((total, b.log_plus))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_root_at_one_is_sharp() {
        let r = RootSet::new(vec![Complex64::new(1.0, 0.0)]).unwrap();
        let b = et_bound(&r, 0).unwrap();
        assert!((b.total - LN_2).abs() < 1e-15);
        assert!((sup_log_oracle(&r) - LN_2).abs() < 1e-12);
    }

    #[test]
    fn reflection_preserves_circle_modulus() {
        let r = RootSet::new(vec![Complex64::new(1.5, 0.7), Complex64::new(-0.2, 0.1)]).unwrap();
        let beta = RootSet::new(reflect_roots(&r)).unwrap();
        let lp = et_bound(&r, 0).unwrap().log_plus;
        for &x in &[0.0, 0.2, 0.71] {
            let a = r.log_modulus_on_circle(x);
            let b = beta.log_modulus_on_circle(x) + lp;
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn unit_circle_roots_are_not_reflected() {
        let z = Complex64::from_polar(1.0, 0.3);
        let r = RootSet::new(vec![z]).unwrap();
        assert_eq!(reflect_roots(&r)[0], z);
        assert_eq!(et_bound(&r, 3).unwrap().log_plus, 0.0);
    }

    #[test]
    fn jensen_outside_root() {
        let r = RootSet::new(vec![Complex64::new(0.0, 3.0), Complex64::new(0.5, 0.0)]).unwrap();
        let (i, lp) = jensen_check(&r, 1e-12).unwrap();
        assert!((i - 3f64.ln()).abs() < 1e-10 && (lp - 3f64.ln()).abs() < 1e-15);
    }
}
