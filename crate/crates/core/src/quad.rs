//! Adaptive Gauss–Kronrod quadrature on finite intervals, dyadic-shell
//! integration on half-lines, and integration against the measure families.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{Family, Measure};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_EVALS: usize = 200_000;
const MAX_SHELLS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err_est: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    /// Absolute tolerance for results of size ≤ 1, relative above that.
    pub tol: f64,
    pub max_evals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { tol: DEFAULT_TOL, max_evals: DEFAULT_MAX_EVALS }
    }
}

impl QuadConfig {
    pub fn with_tol(tol: f64) -> Self {
        QuadConfig { tol, ..Default::default() }
    }
}

// 15-point Kronrod abscissae (descending, last is the centre) and weights;
// every other abscissa belongs to the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    resabs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = 0.0;
    let mut gauss = 0.0;
    let mut resabs = 0.0;
    for i in 0..8 {
        let dx = h * XGK[i];
        let (v, va) = if i == 7 {
            let v = f(c);
            (v, v.abs())
        } else {
            let v1 = f(c - dx);
            let v2 = f(c + dx);
            (v1 + v2, v1.abs() + v2.abs())
        };
        if !v.is_finite() {
            return Err(Error::domain(format!("integrand is not finite on [{a}, {b}]")));
        }
        kron += WGK[i] * v;
        resabs += WGK[i] * va;
        if i % 2 == 1 {
            gauss += WG[i / 2] * v;
        }
    }
    Ok(Segment {
        a,
        b,
        value: kron * h,
        err: ((kron - gauss) * h).abs(),
        resabs: resabs * h.abs(),
    })
}

/// ∫_a^b f with the default budget.
pub fn integrate_finite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    integrate_finite_with(&f, a, b, &QuadConfig::with_tol(tol))
}

/// Globally adaptive G7/K15: always bisect the segment with the largest
/// error estimate.  The reported error is the sum of |K15 − G7| over the
/// final partition (conservative for smooth integrands).
pub fn integrate_finite_with<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integration limits must be finite"));
    }
    if !(cfg.tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {}", cfg.tol)));
    }
    if a == b {
        return Ok(QuadResult { value: 0.0, abs_err_est: 0.0, evaluations: 0 });
    }
    let mut evals = 15;
    let first = gk15(f, a, b)?;
    let mut heap = BinaryHeap::new();
    // segments whose error is at the rounding floor: never split again
    let mut frozen_val = 0.0;
    let mut frozen_err = 0.0;
    let mut total = first.value;
    let mut err = first.err;
    heap.push(first);
    loop {
        if err <= cfg.tol * total.abs().max(1.0) {
            break;
        }
        let Some(seg) = heap.pop() else { break };
        let mid = 0.5 * (seg.a + seg.b);
        let too_narrow = (seg.b - seg.a).abs() <= 8.0 * f64::EPSILON * seg.a.abs().max(seg.b.abs());
        let at_floor = seg.err <= 50.0 * f64::EPSILON * seg.resabs;
        if too_narrow || at_floor || mid == seg.a || mid == seg.b {
            frozen_val += seg.value;
            frozen_err += seg.err;
            continue;
        }
        if evals + 30 > cfg.max_evals {
            heap.push(seg);
            let (v, e) = totals(&heap, frozen_val, frozen_err);
            return Err(Error::Convergence { estimate: v, abs_err: e, evaluations: evals });
        }
        let left = gk15(f, seg.a, mid)?;
        let right = gk15(f, mid, seg.b)?;
        evals += 30;
        total += left.value + right.value - seg.value;
        err += left.err + right.err - seg.err;
        heap.push(left);
        heap.push(right);
        // resync the running sums now and then
        if evals % 3000 == 15 {
            let (v, e) = totals(&heap, frozen_val, frozen_err);
            total = v;
            err = e;
        }
    }
    let (value, abs_err_est) = totals(&heap, frozen_val, frozen_err);
    Ok(QuadResult { value, abs_err_est, evaluations: evals })
}

fn totals(heap: &BinaryHeap<Segment>, fv: f64, fe: f64) -> (f64, f64) {
    let mut v = fv;
    let mut e = fe;
    for s in heap.iter() {
        v += s.value;
        e += s.err;
    }
    (v, e)
}

/// ∫_0^1 h, allowing an integrable singularity (or slow decay) at 0.
///
/// The interval is cut into dyadic shells [2^{-k-1}, 2^{-k}]; the remainder
/// after shell k is estimated geometrically from successive shell ratios.
/// Ratios stuck near or above 1 are reported as divergence.
pub fn integrate_unit_dyadic<F: Fn(f64) -> f64>(h: &F, cfg: &QuadConfig) -> Result<QuadResult> {
    let shell_cfg = QuadConfig { tol: cfg.tol / 16.0, max_evals: cfg.max_evals };
    let mut total = 0.0;
    let mut err = 0.0;
    let mut evals = 0usize;
    let mut prev: Option<f64> = None;
    let mut flat = 0usize;
    let mut hi = 1.0f64;
    for k in 0..MAX_SHELLS {
        let lo = 0.5 * hi;
        let budget = QuadConfig { max_evals: cfg.max_evals.saturating_sub(evals), ..shell_cfg };
        let r = match integrate_finite_with(h, lo, hi, &budget) {
            Ok(r) => r,
            Err(Error::Convergence { estimate, abs_err, evaluations }) => {
                return Err(Error::Convergence {
                    estimate: total + estimate,
                    abs_err: err + abs_err,
                    evaluations: evals + evaluations,
                })
            }
            Err(e) => return Err(e),
        };
        total += r.value;
        err += r.abs_err_est;
        evals += r.evaluations;
        let s = r.value.abs();
        let target = 0.25 * cfg.tol * total.abs().max(1.0);
        if let Some(p) = prev {
            let ratio = if p > 0.0 { s / p } else if s == 0.0 { 0.0 } else { f64::INFINITY };
            if ratio >= 0.99 && s > 1e-3 * cfg.tol {
                flat += 1;
            } else {
                flat = 0;
            }
            if flat >= 12 && k >= 30 {
                return Err(Error::Divergence { partial: total, shells: k + 1 });
            }
            let tail = if ratio < 0.99 { s * ratio / (1.0 - ratio) } else { f64::INFINITY };
            if k >= 12 && s + tail <= target {
                return Ok(QuadResult { value: total, abs_err_est: err + tail, evaluations: evals });
            }
        }
        prev = Some(s);
        hi = lo;
    }
    Err(Error::Convergence { estimate: total, abs_err: err, evaluations: evals })
}

/// ∫_0^∞ g, splitting at 1 and mapping the tail with λ = 1/u.
pub fn integrate_half_line<F: Fn(f64) -> f64>(g: &F, cfg: &QuadConfig) -> Result<QuadResult> {
    let half = QuadConfig { tol: 0.5 * cfg.tol, max_evals: cfg.max_evals / 2 };
    let near = integrate_unit_dyadic(g, &half)?;
    let far = integrate_unit_dyadic(
        &|u: f64| {
            let l = 1.0 / u;
            g(l) * l * l
        },
        &half,
    )?;
    Ok(QuadResult {
        value: near.value + far.value,
        abs_err_est: near.abs_err_est + far.abs_err_est,
        evaluations: near.evaluations + far.evaluations,
    })
}

/// ∫ g(λ) dμ(λ) over (0, ∞).
pub fn integrate_measure<F: Fn(f64) -> f64>(g: F, measure: &Measure, tol: f64) -> Result<QuadResult> {
    integrate_measure_with(&g, measure, &QuadConfig::with_tol(tol))
}

pub fn integrate_measure_with<F: Fn(f64) -> f64>(g: &F, measure: &Measure, cfg: &QuadConfig) -> Result<QuadResult> {
    match measure.family() {
        Family::Atomic(atoms) => {
            let mut v = 0.0;
            for a in atoms {
                let gv = g(a.lambda);
                if !gv.is_finite() {
                    return Err(Error::domain(format!("integrand not finite at atom {}", a.lambda)));
                }
                v += a.weight * gv;
            }
            Ok(QuadResult { value: v, abs_err_est: 0.0, evaluations: atoms.len() })
        }
        Family::HaarLog { scale } => {
            let c = *scale;
            integrate_half_line(&|l: f64| c * g(l) / l, cfg)
        }
        Family::PowerLaw { sigma, scale } => {
            let (s, c) = (*sigma, *scale);
            integrate_half_line(&|l: f64| c * g(l) * l.powf(-s), cfg)
        }
        Family::Weight(w) => match w.breakpoints() {
            Some(bps) => {
                let mut out = QuadResult { value: 0.0, abs_err_est: 0.0, evaluations: 0 };
                let piece_cfg = QuadConfig { tol: cfg.tol / bps.len().max(1) as f64, ..*cfg };
                let mut lo = 0.0;
                for &hi in bps {
                    let r = integrate_finite_with(&|l: f64| g(l) * w.eval(l), lo, hi, &piece_cfg)?;
                    out.value += r.value;
                    out.abs_err_est += r.abs_err_est;
                    out.evaluations += r.evaluations;
                    lo = hi;
                }
                Ok(out)
            }
            None => integrate_half_line(&|l: f64| g(l) * w.eval(l), cfg),
        },
    }
}
