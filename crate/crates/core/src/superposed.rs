//! Extremal minorants `G_μ` and majorants `H_μ` of `f_μ`, of exponential
//! type 2πδ, built either from the interpolation series or by integrating
//! the exponential-kernel gaps against μ.

use std::collections::HashMap;
use std::sync::RwLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exp_kernel::{lhat, majorant_gap, minorant_gap};
use crate::measures::{ExtValue, Family, Measure};
use crate::quad::{self, QuadConfig};
use crate::series::{self, Lattice, Profile};
use crate::forms::r_mu;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kind {
    Minorant,
    Majorant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Interpolation series in the values and derivatives of f_μ.
    Series,
    /// `f_μ ∓ ∫ (kernel gap) dμ`.
    DefectIntegral,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxValue {
    pub x: f64,
    pub value: f64,
    pub abs_err: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DefectProfile {
    pub x: f64,
    /// One-sided defect `f_μ − G` (minorant) or `H − f_μ` (majorant) from
    /// the series; +∞ where f_μ is infinite.
    pub value: ExtValue,
    /// The same quantity computed as a λ-integral of kernel gaps.
    pub integral: ExtValue,
    /// `|value − integral|` plus the quadrature error estimate.
    pub abs_err: f64,
}

/// `f_μ` evaluated through the cached values of a measure.  Weight-family
/// measures need a quadrature per node, so nodes and tail derivatives are
/// memoised; the node set only depends on the integer part of |x|.
struct MeasureProfile<'a> {
    measure: &'a Measure,
    cache: Option<&'a NodeCache>,
}

#[derive(Default)]
struct NodeCache {
    nodes: RwLock<HashMap<u64, (f64, f64)>>,
    tails: RwLock<HashMap<u64, [f64; 7]>>,
}

impl Profile for MeasureProfile<'_> {
    fn node(&self, a: f64) -> Result<(f64, f64)> {
        if let Some(c) = self.cache {
            if let Some(v) = c.nodes.read().expect("cache lock").get(&a.to_bits()) {
                return Ok(*v);
            }
        }
        let v = (self.measure.f_deriv(0, a)?, self.measure.f_deriv(1, a)?);
        if let Some(c) = self.cache {
            c.nodes.write().expect("cache lock").insert(a.to_bits(), v);
        }
        Ok(v)
    }

    fn at_zero(&self) -> Result<f64> {
        self.measure.f(0.0)?.finite().ok_or_else(|| Error::Admissibility {
            measure: self.measure.name(),
            condition: "∫ λ/(1+λ) dμ < ∞".into(),
        })
    }

    fn derivs(&self, s: f64) -> Result<[f64; 7]> {
        if let Some(c) = self.cache {
            if let Some(v) = c.tails.read().expect("cache lock").get(&s.to_bits()) {
                return Ok(*v);
            }
        }
        let mut out = [0.0; 7];
        for (j, o) in out.iter_mut().enumerate() {
            *o = self.measure.f_deriv(j, s)?;
        }
        if let Some(c) = self.cache {
            c.tails.write().expect("cache lock").insert(s.to_bits(), out);
        }
        Ok(out)
    }
}

/// An extremal one-sided approximation of `f_μ` of exponential type 2πδ.
///
/// Internally everything is expressed through the dilated measure
/// `ν = μ ∘ (λ ↦ λ/δ)`, for which `f_ν(δx) = f_μ(x) − f_μ(1/δ)`.
pub struct EntireApprox {
    measure: Measure,
    nu: Measure,
    kind: Kind,
    delta: f64,
    strategy: Strategy,
    tol: f64,
    cache: Option<NodeCache>,
}

impl EntireApprox {
    pub fn new(measure: &Measure, kind: Kind, delta: f64, strategy: Strategy) -> Result<Self> {
        if kind == Kind::Majorant {
            measure.require_majorant()?;
        }
        let nu = measure.dilate(delta)?;
        let cache = matches!(nu.family(), Family::Weight(_)).then(NodeCache::default);
        Ok(EntireApprox {
            measure: measure.clone(),
            nu,
            kind,
            delta,
            strategy,
            tol: quad::DEFAULT_TOL,
            cache,
        })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn measure(&self) -> &Measure {
        &self.measure
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    fn profile(&self) -> MeasureProfile<'_> {
        MeasureProfile { measure: &self.nu, cache: self.cache.as_ref() }
    }

    fn lattice(&self) -> Lattice {
        match self.kind {
            Kind::Minorant => Lattice::HalfInteger,
            Kind::Majorant => Lattice::Integer,
        }
    }

    /// The function being approximated: `f_μ(x) − f_μ(1/δ)`.
    pub fn target(&self, x: f64) -> Result<ExtValue> {
        self.nu.f(self.delta * x)
    }

    pub fn value(&self, x: f64) -> Result<ApproxValue> {
        if !x.is_finite() {
            return Err(Error::domain(format!("x must be finite, got {x}")));
        }
        match self.strategy {
            Strategy::Series => self.series_value(x),
            Strategy::DefectIntegral => {
                let t = self.target(x)?.finite().ok_or_else(|| {
                    Error::domain("defect-integral route is undefined where f_mu is infinite")
                })?;
                let d = self.gap_integral(x)?;
                let value = match self.kind {
                    Kind::Minorant => t - d.value,
                    Kind::Majorant => t + d.value,
                };
                Ok(ApproxValue { x, value, abs_err: d.abs_err_est })
            }
        }
    }

    fn series_value(&self, x: f64) -> Result<ApproxValue> {
        let s = series::eval(&self.profile(), self.lattice(), self.delta * x)?;
        Ok(ApproxValue { x, value: s.value, abs_err: s.tail_bound })
    }

    /// `∫ (e^{−λ|y|} − L(λ,y)) dν` or `∫ (M(λ,y) − e^{−λ|y|}) dν` at y = δx.
    fn gap_integral(&self, x: f64) -> Result<quad::QuadResult> {
        let y = self.delta * x;
        let cfg = QuadConfig::with_tol(self.tol);
        // The series fails only on bad input, which is excluded here; NaN
        // would make the quadrature report a domain error.
        match self.kind {
            Kind::Minorant => quad::integrate_measure_with(
                &|l: f64| minorant_gap(l, y).unwrap_or(f64::NAN),
                &self.nu,
                &cfg,
            ),
            Kind::Majorant => quad::integrate_measure_with(
                &|l: f64| majorant_gap(l, y).unwrap_or(f64::NAN),
                &self.nu,
                &cfg,
            ),
        }
    }

    /// The defect at x by both routes.
    pub fn defect(&self, x: f64) -> Result<DefectProfile> {
        let t = self.target(x)?;
        let s = self.series_value(x)?;
        let value = match t {
            ExtValue::PosInf => ExtValue::PosInf,
            ExtValue::Finite(t) => ExtValue::Finite(match self.kind {
                Kind::Minorant => t - s.value,
                Kind::Majorant => s.value - t,
            }),
        };
        let integral = match self.gap_integral(x) {
            Ok(r) => Some(r),
            Err(Error::Divergence { .. }) if t == ExtValue::PosInf => None,
            Err(e) => return Err(e),
        };
        Ok(match (value, integral) {
            (ExtValue::Finite(v), Some(r)) => DefectProfile {
                x,
                value,
                integral: ExtValue::Finite(r.value),
                abs_err: (v - r.value).abs() + r.abs_err_est + s.abs_err,
            },
            (_, None) => DefectProfile { x, value, integral: ExtValue::PosInf, abs_err: 0.0 },
            (ExtValue::PosInf, Some(r)) => DefectProfile {
                x,
                value,
                integral: ExtValue::Finite(r.value),
                abs_err: f64::INFINITY,
            },
        })
    }

    /// Fourier transform of the minorant defect `f_μ − G` at t ≠ 0:
    /// `r_μ(t) − δ^{−1} ∫ L̂(λ/δ, t/δ) dμ(λ)`; nonnegative, and equal to
    /// `r_μ(t)` for |t| ≥ δ.
    pub fn defect_transform(&self, t: f64) -> Result<f64> {
        if self.kind != Kind::Minorant {
            return Err(Error::Invalid("defect transform is provided for minorants".into()));
        }
        defect_transform(&self.measure, self.delta, t, self.tol)
    }
}

/// `G_μ(x)`, type 2π, by the interpolation series.
pub fn eval_g(measure: &Measure, x: f64) -> Result<ApproxValue> {
    EntireApprox::new(measure, Kind::Minorant, 1.0, Strategy::Series)?.value(x)
}

/// `H_μ(x)`, type 2π; requires the stronger integrability condition.
pub fn eval_h(measure: &Measure, x: f64) -> Result<ApproxValue> {
    EntireApprox::new(measure, Kind::Majorant, 1.0, Strategy::Series)?.value(x)
}

/// Minorant of `f_μ(x) − f_μ(1/δ)` of type 2πδ.
pub fn eval_g_dilated(measure: &Measure, delta: f64, x: f64) -> Result<ApproxValue> {
    EntireApprox::new(measure, Kind::Minorant, delta, Strategy::Series)?.value(x)
}

/// Majorant of `f_μ(x) − f_μ(1/δ)` of type 2πδ.
pub fn eval_h_dilated(measure: &Measure, delta: f64, x: f64) -> Result<ApproxValue> {
    EntireApprox::new(measure, Kind::Majorant, delta, Strategy::Series)?.value(x)
}

pub fn defect(measure: &Measure, kind: Kind, delta: f64, x: f64) -> Result<DefectProfile> {
    EntireApprox::new(measure, kind, delta, Strategy::Series)?.defect(x)
}

/// See [`EntireApprox::defect_transform`].
pub fn defect_transform(measure: &Measure, delta: f64, t: f64, tol: f64) -> Result<f64> {
    if !(t != 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("defect transform needs finite t != 0, got {t}")));
    }
    let r = r_mu(measure, t)?;
    if t.abs() >= delta {
        return Ok(r);
    }
    let nu = measure.dilate(delta)?;
    let s = t / delta;
    let i = quad::integrate_measure(|l| lhat(l, s), &nu, tol)?;
    Ok(r - i.value / delta)
}
