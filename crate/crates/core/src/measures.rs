//! Nonnegative Borel measures on (0, ∞) and the superpositions
//! `f_μ(x) = ∫ (e^{−λ|x|} − e^{−λ}) dμ(λ)` they generate.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quad::{self, QuadConfig};
use crate::specfun::gamma;

/// Which integrability condition a measure satisfies.
///
/// `Cond31`: ∫ λ/(1+λ²) dμ < ∞ — enough for the minorant problem.
/// `Cond47`: ∫ λ/(1+λ) dμ < ∞ — stronger; needed for the majorant problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Admissibility {
    Cond31,
    Cond47,
}

impl Admissibility {
    pub fn allows_majorant(self) -> bool {
        self == Admissibility::Cond47
    }
}

/// A real value that may be +∞ (f_μ at the origin when ∫ dμ diverges there).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtValue {
    Finite(f64),
    PosInf,
}

impl ExtValue {
    pub fn as_f64(self) -> f64 {
        match self {
            ExtValue::Finite(v) => v,
            ExtValue::PosInf => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtValue::Finite(v) => Some(v),
            ExtValue::PosInf => None,
        }
    }
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtValue::Finite(v) => s.serialize_f64(*v),
            ExtValue::PosInf => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Atom {
    pub lambda: f64,
    pub weight: f64,
}

/// A density `w(λ)` on (0, ∞).  When `breakpoints` is set the density is
/// supported on (0, last breakpoint] and smooth between consecutive
/// breakpoints, so it is integrated piece by piece.
#[derive(Clone)]
pub struct WeightFn {
    density: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    breakpoints: Option<Vec<f64>>,
    label: String,
}

impl WeightFn {
    pub fn eval(&self, lambda: f64) -> f64 {
        (self.density)(lambda)
    }

    pub fn breakpoints(&self) -> Option<&[f64]> {
        self.breakpoints.as_deref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for WeightFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightFn")
            .field("label", &self.label)
            .field("breakpoints", &self.breakpoints)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum Family {
    /// scale · dλ/λ
    HaarLog { scale: f64 },
    /// scale · λ^{−σ} dλ, σ ∈ (0, 2) \ {1}
    PowerLaw { sigma: f64, scale: f64 },
    Atomic(Vec<Atom>),
    Weight(WeightFn),
}

#[derive(Debug, Clone)]
pub struct Measure {
    family: Family,
    admissibility: Admissibility,
}

impl Measure {
    pub fn haar() -> Self {
        Self::haar_scaled(1.0).expect("unit scale")
    }

    pub fn haar_scaled(scale: f64) -> Result<Self> {
        check_scale(scale)?;
        Ok(Measure { family: Family::HaarLog { scale }, admissibility: Admissibility::Cond31 })
    }

    pub fn power_law(sigma: f64) -> Result<Self> {
        Self::power_law_scaled(sigma, 1.0)
    }

    /// `scale · λ^{−σ} dλ`.  σ = 1 is the Haar measure.
    pub fn power_law_scaled(sigma: f64, scale: f64) -> Result<Self> {
        check_scale(scale)?;
        if sigma == 1.0 {
            return Self::haar_scaled(scale);
        }
        if !(sigma > 0.0 && sigma < 2.0) {
            return Err(Error::Inadmissible(format!("power:{sigma}")));
        }
        let admissibility = if sigma < 1.0 { Admissibility::Cond31 } else { Admissibility::Cond47 };
        Ok(Measure { family: Family::PowerLaw { sigma, scale }, admissibility })
    }

    /// Σ w_i δ_{λ_i}.  Atoms with zero weight are dropped.
    pub fn atomic(atoms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut out = Vec::new();
        for (lambda, weight) in atoms {
            if !(lambda > 0.0 && lambda.is_finite()) {
                return Err(Error::Invalid(format!("atom location must be positive, got {lambda}")));
            }
            if !(weight >= 0.0 && weight.is_finite()) {
                return Err(Error::Invalid(format!("atom weight must be nonnegative, got {weight}")));
            }
            if weight > 0.0 {
                out.push(Atom { lambda, weight });
            }
        }
        if out.is_empty() {
            return Err(Error::Inadmissible("atomic (zero measure)".into()));
        }
        out.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
        Ok(Measure { family: Family::Atomic(out), admissibility: Admissibility::Cond47 })
    }

    /// An absolutely continuous measure with a nonnegative density.
    /// The integrability condition is decided numerically.
    pub fn weight<F>(density: F, label: impl Into<String>) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let w = WeightFn { density: Arc::new(density), breakpoints: None, label: label.into() };
        Self::from_weight(w)
    }

    /// A step density from a table: value `w_i` on `(λ_{i−1}, λ_i]` with
    /// `λ_{−1} = 0`, zero beyond the last node.
    pub fn tabulated(rows: &[(f64, f64)], label: impl Into<String>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Inadmissible("empty weight table".into()));
        }
        let mut prev = 0.0;
        for &(l, w) in rows {
            if !(l > prev && l.is_finite()) {
                return Err(Error::Invalid(format!("weight table nodes must increase from 0, got {l}")));
            }
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::Invalid(format!("weight table values must be nonnegative, got {w}")));
            }
            prev = l;
        }
        let nodes: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let vals: Vec<f64> = rows.iter().map(|r| r.1).collect();
        let bps = nodes.clone();
        let density = move |l: f64| {
            if !(l > 0.0) {
                return 0.0;
            }
            match nodes.binary_search_by(|n| n.total_cmp(&l)) {
                Ok(i) => vals[i],
                Err(i) if i < vals.len() => vals[i],
                Err(_) => 0.0,
            }
        };
        let w = WeightFn { density: Arc::new(density), breakpoints: Some(bps), label: label.into() };
        Self::from_weight(w)
    }

    fn from_weight(w: WeightFn) -> Result<Self> {
        let name = format!("weight:{}", w.label);
        let probe = Measure { family: Family::Weight(w), admissibility: Admissibility::Cond47 };
        let cfg = QuadConfig::with_tol(1e-8);
        let admissibility = match quad::integrate_measure_with(&|l: f64| l / (1.0 + l), &probe, &cfg) {
            Ok(r) if r.value > 0.0 => Admissibility::Cond47,
            Ok(_) => return Err(Error::Inadmissible(format!("{name} (zero measure)"))),
            Err(Error::Divergence { .. }) => {
                match quad::integrate_measure_with(&|l: f64| l / (1.0 + l * l), &probe, &cfg) {
                    Ok(r) if r.value > 0.0 => Admissibility::Cond31,
                    Ok(_) | Err(Error::Divergence { .. }) => return Err(Error::Inadmissible(name)),
                    Err(e) => return Err(e),
                }
            }
            Err(e) => return Err(e),
        };
        Ok(Measure { admissibility, ..probe })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn admissibility(&self) -> Admissibility {
        self.admissibility
    }

    pub fn name(&self) -> String {
        match &self.family {
            Family::HaarLog { scale } if *scale == 1.0 => "haar".into(),
            Family::HaarLog { scale } => format!("haar*{scale}"),
            Family::PowerLaw { sigma, scale } if *scale == 1.0 => format!("power:{sigma}"),
            Family::PowerLaw { sigma, scale } => format!("power:{sigma}*{scale}"),
            Family::Atomic(a) => format!("atomic[{}]", a.len()),
            Family::Weight(w) => format!("weight:{}", w.label),
        }
    }

    /// Density against dλ, if the measure has one.
    pub fn density(&self, lambda: f64) -> Option<f64> {
        match &self.family {
            Family::HaarLog { scale } => Some(scale / lambda),
            Family::PowerLaw { sigma, scale } => Some(scale * lambda.powf(-sigma)),
            Family::Atomic(_) => None,
            Family::Weight(w) => Some(w.eval(lambda)),
        }
    }

    /// Error unless the majorant problem is posed for this measure.
    pub fn require_majorant(&self) -> Result<()> {
        if self.admissibility.allows_majorant() {
            Ok(())
        } else {
            Err(Error::Admissibility { measure: self.name(), condition: "∫ λ/(1+λ) dμ < ∞".into() })
        }
    }

    /// The image of `μ` under λ ↦ λ/δ: `∫ F dν = ∫ F(λ/δ) dμ`.
    pub fn dilate(&self, delta: f64) -> Result<Measure> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::domain(format!("dilation must be positive, got {delta}")));
        }
        let family = match &self.family {
            Family::HaarLog { scale } => Family::HaarLog { scale: *scale },
            Family::PowerLaw { sigma, scale } => {
                Family::PowerLaw { sigma: *sigma, scale: scale * delta.powf(1.0 - sigma) }
            }
            Family::Atomic(atoms) => Family::Atomic(
                atoms.iter().map(|a| Atom { lambda: a.lambda / delta, weight: a.weight }).collect(),
            ),
            Family::Weight(w) => {
                let inner = w.density.clone();
                Family::Weight(WeightFn {
                    density: Arc::new(move |l: f64| delta * inner(delta * l)),
                    breakpoints: w.breakpoints.as_ref().map(|b| b.iter().map(|x| x / delta).collect()),
                    label: format!("{}/{}", w.label, delta),
                })
            }
        };
        Ok(Measure { family, admissibility: self.admissibility })
    }

    /// `f_μ(x) = ∫ (e^{−λ|x|} − e^{−λ}) dμ(λ)`.
    pub fn f(&self, x: f64) -> Result<ExtValue> {
        if !x.is_finite() {
            return Err(Error::domain(format!("f_mu at non-finite x = {x}")));
        }
        let ax = x.abs();
        match &self.family {
            Family::HaarLog { scale } => {
                if ax == 0.0 {
                    Ok(ExtValue::PosInf)
                } else {
                    Ok(ExtValue::Finite(-scale * ax.ln()))
                }
            }
            Family::PowerLaw { sigma, scale } => {
                let g = gamma(1.0 - sigma)?;
                if ax == 0.0 {
                    if *sigma < 1.0 {
                        Ok(ExtValue::PosInf)
                    } else {
                        Ok(ExtValue::Finite(-scale * g))
                    }
                } else {
                    // |x|^{σ−1} − 1 without cancellation near |x| = 1
                    let d = ((sigma - 1.0) * ax.ln()).exp_m1();
                    Ok(ExtValue::Finite(scale * g * d))
                }
            }
            Family::Atomic(atoms) => Ok(ExtValue::Finite(
                atoms.iter().map(|a| a.weight * exp_diff(a.lambda, ax)).sum(),
            )),
            Family::Weight(_) => {
                if ax == 0.0 && !self.admissibility.allows_majorant() {
                    return Ok(ExtValue::PosInf);
                }
                let r = quad::integrate_measure(|l| exp_diff(l, ax), self, 1e-11)?;
                Ok(ExtValue::Finite(r.value))
            }
        }
    }

    /// `f_μ^{(j)}(s)` for s > 0 and j ≥ 0.
    pub fn f_deriv(&self, j: usize, s: f64) -> Result<f64> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::domain(format!("derivatives of f_mu need s > 0, got {s}")));
        }
        if j == 0 {
            return Ok(self.f(s)?.as_f64());
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        match &self.family {
            Family::HaarLog { scale } => {
                let fact: f64 = (1..j).map(|i| i as f64).product();
                Ok(sign * scale * fact / s.powi(j as i32))
            }
            Family::PowerLaw { sigma, scale } => {
                let g = gamma(j as f64 + 1.0 - sigma)?;
                Ok(sign * scale * g * s.powf(sigma - 1.0 - j as f64))
            }
            Family::Atomic(atoms) => Ok(sign
                * atoms
                    .iter()
                    .map(|a| a.weight * a.lambda.powi(j as i32) * (-a.lambda * s).exp())
                    .sum::<f64>()),
            Family::Weight(_) => {
                let r = quad::integrate_measure(|l| l.powi(j as i32) * (-l * s).exp(), self, 1e-12)?;
                Ok(sign * r.value)
            }
        }
    }

    /// `f_μ'(x)` for x ≠ 0 (odd in x).
    pub fn f_prime(&self, x: f64) -> Result<f64> {
        if x == 0.0 {
            return Err(Error::domain("f_mu' is not defined at 0"));
        }
        Ok(x.signum() * self.f_deriv(1, x.abs())?)
    }
}

fn check_scale(scale: f64) -> Result<()> {
    if scale > 0.0 && scale.is_finite() {
        Ok(())
    } else {
        Err(Error::Inadmissible(format!("scale {scale}")))
    }
}

/// `e^{−λa} − e^{−λ}` with no cancellation for small λ.
pub(crate) fn exp_diff(lambda: f64, a: f64) -> f64 {
    (-lambda * a).exp_m1() - (-lambda).exp_m1()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert_eq!(Measure::haar().admissibility(), Admissibility::Cond31);
        assert_eq!(Measure::power_law(0.5).unwrap().admissibility(), Admissibility::Cond31);
        assert_eq!(Measure::power_law(1.5).unwrap().admissibility(), Admissibility::Cond47);
        assert!(matches!(Measure::power_law(1.0).unwrap().family(), Family::HaarLog { .. }));
        assert!(Measure::power_law(2.0).is_err());
        assert!(Measure::power_law(0.0).is_err());
        assert!(Measure::atomic(vec![(1.0, 0.0)]).is_err());
        let w = Measure::weight(|l| 1.0 / l, "inv").unwrap();
        assert_eq!(w.admissibility(), Admissibility::Cond31);
        let w = Measure::weight(|l| (-l).exp(), "exp").unwrap();
        assert_eq!(w.admissibility(), Admissibility::Cond47);
        assert!(Measure::weight(|l| 1.0 / (l * l), "inv2").is_err());
        assert!(Measure::weight(|_| 0.0, "zero").is_err());
    }

    #[test]
    fn majorant_requires_stronger_condition() {
        assert!(matches!(Measure::haar().require_majorant(), Err(Error::Admissibility { .. })));
        assert!(Measure::power_law(1.5).unwrap().require_majorant().is_ok());
    }

    #[test]
    fn tabulated_is_left_continuous_step() {
        let m = Measure::tabulated(&[(1.0, 2.0), (3.0, 5.0)], "t").unwrap();
        assert_eq!(m.density(0.5), Some(2.0));
        assert_eq!(m.density(1.0), Some(2.0));
        assert_eq!(m.density(1.5), Some(5.0));
        assert_eq!(m.density(3.0), Some(5.0));
        assert_eq!(m.density(3.5), Some(0.0));
    }

    #[test]
    fn haar_f_and_derivs() {
        let m = Measure::haar();
        assert_eq!(m.f(0.0).unwrap(), ExtValue::PosInf);
        assert!((m.f(-2.0).unwrap().as_f64() + 2f64.ln()).abs() < 1e-15);
        assert!((m.f_deriv(3, 2.0).unwrap() + 2.0 / 8.0).abs() < 1e-15);
        assert!((m.f_prime(-2.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn weight_route_matches_closed_form() {
        let w = Measure::weight(|l| l.powf(-0.5), "p05").unwrap();
        let p = Measure::power_law(0.5).unwrap();
        for &x in &[0.1, 0.7, 2.0, 9.0] {
            let a = w.f(x).unwrap().as_f64();
            let b = p.f(x).unwrap().as_f64();
            assert!((a - b).abs() < 1e-8, "{x}: {a} {b}");
            let a = w.f_deriv(2, x).unwrap();
            let b = p.f_deriv(2, x).unwrap();
            assert!((a - b).abs() < 1e-8 * b.abs().max(1.0), "{x}: {a} {b}");
        }
    }

    #[test]
    fn dilation_pushes_forward() {
        let m = Measure::power_law(1.5).unwrap();
        let d = m.dilate(3.0).unwrap();
        let g = |l: f64| (-l).exp() * l;
        let a = quad::integrate_measure(g, &d, 1e-11).unwrap().value;
        let b = quad::integrate_measure(|l| g(l / 3.0), &m, 1e-11).unwrap().value;
        assert!((a - b).abs() < 1e-8 * b.abs());
        let t = Measure::tabulated(&[(1.0, 2.0), (3.0, 5.0)], "t").unwrap();
        let td = t.dilate(2.0).unwrap();
        let a = quad::integrate_measure(g, &td, 1e-11).unwrap().value;
        let b = quad::integrate_measure(|l| g(l / 2.0), &t, 1e-11).unwrap().value;
        assert!((a - b).abs() < 1e-9 * b.abs());
    }
}
