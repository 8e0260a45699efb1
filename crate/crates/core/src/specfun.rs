//! Real special functions: the two exponential defect functions, the Riemann
//! and Hurwitz zeta functions on the strip we need, and the gamma function.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Below this λ the defect functions are summed from their power series;
/// above it the closed forms are used directly.  At λ = 1 the direct forms
/// lose at most ~2 digits to cancellation, the series need ≤ 8 terms.
pub const SERIES_SWITCH: f64 = 1.0;

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("lambda must be positive and finite, got {lambda}")))
    }
}

/// `2/λ − csch(λ/2)`: the mass deficit of the minorant of `e^{−λ|x|}`.
pub fn defect_minorant(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(if lambda < SERIES_SWITCH {
        defect_minorant_series(lambda)
    } else {
        defect_minorant_direct(lambda)
    })
}

/// `coth(λ/2) − 2/λ`: the mass excess of the majorant of `e^{−λ|x|}`.
pub fn defect_majorant(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(if lambda < SERIES_SWITCH {
        defect_majorant_series(lambda)
    } else {
        defect_majorant_direct(lambda)
    })
}

// (sinh y − y) / (y sinh y), numerator summed term by term.
pub(crate) fn defect_minorant_series(lambda: f64) -> f64 {
    let y = 0.5 * lambda;
    let y2 = y * y;
    let mut term = y * y2 / 6.0;
    let mut sum = 0.0;
    let mut k = 1.0;
    loop {
        sum += term;
        if term <= 1e-18 * sum {
            break;
        }
        k += 1.0;
        term *= y2 / ((2.0 * k) * (2.0 * k + 1.0));
    }
    sum / (y * y.sinh())
}

pub(crate) fn defect_minorant_direct(lambda: f64) -> f64 {
    2.0 / lambda - csch(0.5 * lambda)
}

// (y cosh y − sinh y) / (y sinh y); numerator Σ_{k≥1} 2k y^{2k+1}/(2k+1)!.
pub(crate) fn defect_majorant_series(lambda: f64) -> f64 {
    let y = 0.5 * lambda;
    let y2 = y * y;
    // p_k = y^{2k+1}/(2k+1)!
    let mut p = y * y2 / 6.0;
    let mut sum = 0.0;
    let mut k = 1.0;
    loop {
        let term = 2.0 * k * p;
        sum += term;
        if term <= 1e-18 * sum {
            break;
        }
        k += 1.0;
        p *= y2 / ((2.0 * k) * (2.0 * k + 1.0));
    }
    sum / (y * y.sinh())
}

pub(crate) fn defect_majorant_direct(lambda: f64) -> f64 {
    coth(0.5 * lambda) - 2.0 / lambda
}

/// `1/sinh(y)` for y > 0, without overflow for large y.
pub(crate) fn csch(y: f64) -> f64 {
    if y > 20.0 {
        2.0 * (-y).exp() / (-(-2.0 * y).exp_m1())
    } else {
        1.0 / y.sinh()
    }
}

/// `coth(y)` for y > 0.
pub(crate) fn coth(y: f64) -> f64 {
    if y > 20.0 {
        let e = (-2.0 * y).exp();
        (1.0 + e) / (1.0 - e)
    } else {
        1.0 / y.tanh()
    }
}

/// `sin(πx)/(πx)`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - (PI * x) * (PI * x) / 6.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for real x, with reflection below 1/2.  Poles are a domain error.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("gamma of non-finite argument {x}")));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::domain(format!("gamma has a pole at {x}")));
    }
    if x > 171.0 {
        return Err(Error::domain(format!("gamma overflows at {x}")));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    // split the power so t^(x+1/2) cannot overflow before e^−t scales it
    let half = t.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * ((-t).exp() * half) * a
}

/// Riemann ζ(s) for real s in (−1, 2), s ≠ 1.
///
/// On (0, 2) via the alternating (eta) series with Cohen–Villegas–Zagier
/// acceleration; on (−1, 0] via the Hurwitz Euler–Maclaurin expansion at a = 1.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > -1.0 && s < 2.0) {
        return Err(Error::domain(format!("zeta implemented on (-1, 2), got {s}")));
    }
    if s == 1.0 {
        return Err(Error::domain("zeta has a pole at 1"));
    }
    if s <= 0.0 {
        return hurwitz_zeta(s, 1.0);
    }
    let eta = eta_cvz(s, 64);
    // 1 − 2^{1−s}, accurate near s = 1
    let denom = -((1.0 - s) * std::f64::consts::LN_2).exp_m1();
    Ok(eta / denom)
}

/// Dirichlet eta via the CVZ acceleration of Σ (−1)^k (k+1)^{−s}.
fn eta_cvz(s: f64, n: usize) -> f64 {
    let nf = n as f64;
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut sum = 0.0;
    for k in 0..n {
        let kf = k as f64;
        c = b - c;
        sum += c * (kf + 1.0).powf(-s);
        b = (kf + nf) * (kf - nf) * b / ((kf + 0.5) * (kf + 1.0));
    }
    sum / d
}

const BERNOULLI_2J: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Hurwitz ζ(s, a) = Σ_{k≥0} (k+a)^{−s} (analytically continued) for real
/// s in (−3, 2), s ≠ 1, and a > 0.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !(s > -3.0 && s < 2.0) || s == 1.0 {
        return Err(Error::domain(format!("hurwitz_zeta: s = {s} outside (-3, 2) \\ {{1}}")));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain(format!("hurwitz_zeta: a must be positive, got {a}")));
    }
    const N: usize = 16;
    let mut head = 0.0;
    for k in 0..N {
        head += (k as f64 + a).powf(-s);
    }
    let z = N as f64 + a;
    let zs = z.powf(-s);
    let mut sum = head + z * zs / (s - 1.0) + 0.5 * zs;
    // Σ B_{2j}/(2j)! (s)_{2j−1} z^{−s−2j+1}
    let mut rising = s;
    let mut pow = zs / z;
    let mut fact = 2.0;
    for (j, &b) in BERNOULLI_2J.iter().enumerate() {
        let j = j + 1;
        if j > 1 {
            let m = (2 * j) as f64;
            rising *= (s + m - 3.0) * (s + m - 2.0);
            pow /= z * z;
            fact *= (m - 1.0) * m;
        }
        let term = b / fact * rising * pow;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defect_branches_agree_around_switch() {
        for i in 0..=40 {
            let l = 0.6 + 0.02 * i as f64;
            let a = defect_minorant_series(l);
            let b = defect_minorant_direct(l);
            assert!((a - b).abs() <= 1e-12 * a, "min {l}: {a} {b}");
            let a = defect_majorant_series(l);
            let b = defect_majorant_direct(l);
            assert!((a - b).abs() <= 1e-12 * a, "maj {l}: {a} {b}");
        }
    }

    #[test]
    fn defects_match_taylor_for_small_lambda() {
        for &l in &[1e-8f64, 1e-5, 1e-3, 1e-2] {
            let t_min = l / 12.0 - 7.0 * l.powi(3) / 2880.0 + 31.0 * l.powi(5) / 483_840.0;
            let t_maj = l / 6.0 - l.powi(3) / 360.0 + l.powi(5) / 15_120.0;
            assert!((defect_minorant(l).unwrap() - t_min).abs() <= 1e-14 * t_min);
            assert!((defect_majorant(l).unwrap() - t_maj).abs() <= 1e-14 * t_maj);
        }
    }

    #[test]
    fn large_lambda_limits() {
        let l = 1e3;
        assert!((defect_minorant(l).unwrap() - 2.0 / l).abs() < 1e-18);
        assert!((defect_majorant(l).unwrap() - (1.0 - 2.0 / l)).abs() < 1e-15);
        assert!(defect_minorant(0.0).is_err());
        assert!(defect_majorant(f64::NAN).is_err());
    }

    #[test]
    fn gamma_poles_and_values() {
        assert!(gamma(0.0).is_err());
        assert!(gamma(-1.0).is_err());
        assert!((gamma(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(5.0).unwrap() - 24.0).abs() < 1e-12);
    }

    #[test]
    fn zeta_special_values() {
        assert!((zeta(0.0).unwrap() + 0.5).abs() < 1e-14);
        assert!((zeta(-0.5).unwrap() + 0.207_886_224_977_354_57).abs() < 1e-13);
        assert!(zeta(1.0).is_err());
        assert!(zeta(2.0).is_err());
    }

    #[test]
    fn hurwitz_reduces_to_riemann() {
        for &s in &[0.3, 0.7, 1.4, -0.4] {
            let h = hurwitz_zeta(s, 1.0).unwrap();
            let z = zeta(s).unwrap();
            assert!((h - z).abs() < 1e-13, "{s}: {h} {z}");
        }
        // ζ(s, 1/2) = (2^s − 1) ζ(s)
        let s = 0.4;
        let h = hurwitz_zeta(s, 0.5).unwrap();
        assert!((h - (2f64.powf(s) - 1.0) * zeta(s).unwrap()).abs() < 1e-13);
    }
}
