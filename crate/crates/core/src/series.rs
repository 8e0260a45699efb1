//! Hermite-type interpolation series shared by the exponential kernels and
//! the superposed approximations.
//!
//! For an even profile `f` and a node lattice Λ (half-integers or integers)
//! the series is
//!
//! ```text
//!   S(x) = trig²(πx)/π² · Σ_{a ∈ Λ} [ f(a)/(x−a)² + f'(a)/(x−a) ]
//! ```
//!
//! with `trig = cos` on half-integers and `sin` on integers.  Nodes ±a are
//! paired.  The paired term equals `−W'(a)` with
//! `W(s) = f(s)·[1/(s−x) + 1/(s+x)]`, so the tail beyond a cut-off is
//! summed in closed form by the midpoint Euler–Maclaurin formula; only a
//! window of ~64 nodes past |x| is summed term by term.

use std::f64::consts::PI;

use crate::error::Result;
use crate::specfun::sinc;

/// Number of explicitly summed nodes beyond |x|.
const WINDOW: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Lattice {
    HalfInteger,
    Integer,
}

pub(crate) trait Profile {
    /// `(f(a), f'(a))` at a node a > 0.
    fn node(&self, a: f64) -> Result<(f64, f64)>;
    /// `f(0)`; only used on the integer lattice.
    fn at_zero(&self) -> Result<f64>;
    /// `f^{(j)}(s)` for j = 0..=6 at the tail cut-off s > 0.
    fn derivs(&self, s: f64) -> Result<[f64; 7]>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SeriesValue {
    pub value: f64,
    /// Nodes summed explicitly (counting ±a once).
    pub terms: usize,
    /// Size of the last Euler–Maclaurin correction kept.
    pub tail_bound: f64,
}

/// Compensated (Neumaier) accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

pub(crate) fn eval<P: Profile + ?Sized>(p: &P, lattice: Lattice, x: f64) -> Result<SeriesValue> {
    let x = x.abs();
    // nearest node and the offset from it; trig² = sin²(πh) on both lattices
    let (near, h) = match lattice {
        Lattice::HalfInteger => {
            let a = x.floor() + 0.5;
            (a, x - a)
        }
        Lattice::Integer => {
            let a = x.round();
            (a, x - a)
        }
    };
    let sh = (PI * h).sin();
    let s2 = sh * sh / (PI * PI);
    let count = x.ceil() as usize + WINDOW;

    let mut sum = Neumaier::default();
    let mut local = 0.0;
    let node_at = |k: usize| match lattice {
        Lattice::HalfInteger => k as f64 - 0.5,
        Lattice::Integer => k as f64,
    };
    if lattice == Lattice::Integer {
        let f0 = p.at_zero()?;
        if near == 0.0 {
            local += f0 * sinc(h) * sinc(h);
        } else {
            sum.add(f0 / (x * x));
        }
    }
    for k in 1..=count {
        let a = node_at(k);
        let (fa, da) = p.node(a)?;
        let ap = a + x;
        sum.add(fa / (ap * ap) - da / ap);
        if a == near {
            local += fa * sinc(h) * sinc(h);
            if h != 0.0 {
                local += da * s2 / h;
            }
        } else {
            let am = a - x;
            sum.add(fa / (am * am) - da / am);
        }
    }
    // next node would sit at b + 1/2
    let b = match lattice {
        Lattice::HalfInteger => count as f64,
        Lattice::Integer => count as f64 + 0.5,
    };
    let w = w_derivs(&p.derivs(b)?, b, x);
    let c2 = -w[2] / 24.0;
    let c4 = 7.0 * w[4] / 5760.0;
    let c6 = -31.0 * w[6] / 967_680.0;
    sum.add(w[0]);
    sum.add(c2);
    sum.add(c4);
    sum.add(c6);
    Ok(SeriesValue {
        value: s2 * sum.total() + local,
        terms: count,
        tail_bound: s2 * c6.abs(),
    })
}

/// Derivatives 0..=6 of `W(s) = f(s)·g(s)`, `g(s) = 1/(s−x) + 1/(s+x)`.
fn w_derivs(f: &[f64; 7], s: f64, x: f64) -> [f64; 7] {
    let mut g = [0.0; 7];
    let (um, up) = (1.0 / (s - x), 1.0 / (s + x));
    let (mut pm, mut pp) = (um, up);
    let mut fact = 1.0;
    for (j, gj) in g.iter_mut().enumerate() {
        if j > 0 {
            fact *= j as f64;
            pm *= um;
            pp *= up;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        *gj = sign * fact * (pm + pp);
    }
    let mut w = [0.0; 7];
    for (n, wn) in w.iter_mut().enumerate() {
        let mut binom = 1.0;
        let mut acc = 0.0;
        for j in 0..=n {
            acc += binom * f[n - j] * g[j];
            binom = binom * (n - j) as f64 / (j + 1) as f64;
        }
        *wn = acc;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    /// f(s) = 1/(1+s²) is not of exponential type, but the series is still a
    /// well-defined interpolant: check the nodes and a brute-force sum.
    struct Lorentz;
    impl Profile for Lorentz {
        fn node(&self, a: f64) -> Result<(f64, f64)> {
            let d = 1.0 + a * a;
            Ok((1.0 / d, -2.0 * a / (d * d)))
        }
        fn at_zero(&self) -> Result<f64> {
            Ok(1.0)
        }
        fn derivs(&self, s: f64) -> Result<[f64; 7]> {
            // derivatives of Re 1/(1+s²) via partial fractions: 1/(1+s²) = Im[1/(s−i)]
            let z = num_complex::Complex64::new(s, -1.0);
            let mut out = [0.0; 7];
            let mut fact = 1.0;
            for (j, o) in out.iter_mut().enumerate() {
                if j > 0 {
                    fact *= j as f64;
                }
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                *o = (sign * fact / z.powi(j as i32 + 1)).im;
            }
            Ok(out)
        }
    }

    fn brute(lattice: Lattice, x: f64) -> f64 {
        let mut s = 0.0;
        let start = if lattice == Lattice::Integer { -2_000_000i64 } else { -2_000_000 };
        for k in start..=2_000_000 {
            let a = match lattice {
                Lattice::HalfInteger => k as f64 + 0.5,
                Lattice::Integer => k as f64,
            };
            let (fa, da) = if a == 0.0 { (1.0, 0.0) } else {
                let (v, d) = Lorentz.node(a.abs()).unwrap();
                (v, d * a.signum())
            };
            s += fa / ((x - a) * (x - a)) + da / (x - a);
        }
        let t = match lattice {
            Lattice::HalfInteger => (PI * x).cos(),
            Lattice::Integer => (PI * x).sin(),
        };
        t * t / (PI * PI) * s
    }

    #[test]
    fn tail_summation_matches_brute_force() {
        for lattice in [Lattice::HalfInteger, Lattice::Integer] {
            for &x in &[0.13, 1.7, 4.25] {
                let v = eval(&Lorentz, lattice, x).unwrap().value;
                let b = brute(lattice, x);
                assert!((v - b).abs() < 1e-9, "{lattice:?} {x}: {v} vs {b}");
            }
        }
    }

    #[test]
    fn interpolates_at_nodes() {
        for &a in &[0.5, 1.5, 3.5] {
            let v = eval(&Lorentz, Lattice::HalfInteger, a).unwrap().value;
            assert!((v - 1.0 / (1.0 + a * a)).abs() < 1e-15);
        }
        for &a in &[0.0, 1.0, 3.0] {
            let v = eval(&Lorentz, Lattice::Integer, a).unwrap().value;
            assert!((v - 1.0 / (1.0 + a * a)).abs() < 1e-15);
        }
    }
}
