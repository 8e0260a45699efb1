//! Library values against high-precision references.

#[path = "data/reference.rs"]
mod data;

use extremal::exp_kernel::{eval_l, eval_m};
use extremal::measures::Measure;
use extremal::periodic::eval_p;
use extremal::specfun::{defect_majorant, defect_minorant, gamma, hurwitz_zeta, zeta};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn gamma_matches_reference() {
    for &(x, want) in data::GAMMA {
        let got = gamma(x).unwrap();
        assert!(rel(got, want) < 1e-12, "gamma({x}) = {got}, want {want}");
    }
}

#[test]
fn zeta_matches_reference() {
    for &(s, want) in data::ZETA {
        let got = zeta(s).unwrap();
        assert!(rel(got, want) < 1e-12, "zeta({s}) = {got}, want {want}");
    }
}

#[test]
fn hurwitz_matches_reference() {
    for &(s, a, want) in data::HURWITZ {
        let got = hurwitz_zeta(s, a).unwrap();
        assert!(rel(got, want) < 1e-11, "zeta({s}, {a}) = {got}, want {want}");
    }
}

#[test]
fn defects_match_reference() {
    for &(l, want) in data::DEFECT_MINORANT {
        let got = defect_minorant(l).unwrap();
        assert!(rel(got, want) < 1e-13, "minorant defect at {l}: {got}, want {want}");
    }
    for &(l, want) in data::DEFECT_MAJORANT {
        let got = defect_majorant(l).unwrap();
        assert!(rel(got, want) < 1e-13, "majorant defect at {l}: {got}, want {want}");
    }
}

#[test]
fn kernels_match_brute_force_series() {
    for &(l, x, want) in data::KERNEL_L {
        let got = eval_l(l, x).unwrap().value;
        assert!((got - want).abs() < 1e-13, "L({l}, {x}) = {got}, want {want}");
    }
    for &(l, x, want) in data::KERNEL_M {
        let got = eval_m(l, x).unwrap().value;
        assert!((got - want).abs() < 1e-13, "M({l}, {x}) = {got}, want {want}");
    }
}

#[test]
fn periodic_kernel_matches_lattice_sum() {
    for &(l, x, want) in data::PERIODIC_P {
        let got = eval_p(l, x).unwrap();
        assert!((got - want).abs() < 1e-13, "p({l}, {x}) = {got}, want {want}");
    }
}

#[test]
fn power_law_profile_matches_quadrature() {
    for &(s, x, want) in data::F_POWER {
        let got = Measure::power_law(s).unwrap().f(x).unwrap().as_f64();
        assert!(rel(got, want) < 1e-12, "f_power{s}({x}) = {got}, want {want}");
    }
}
