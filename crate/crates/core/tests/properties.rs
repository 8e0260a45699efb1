use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use extremal::erdos_turan::{et_bound, reflect_roots, sup_log_oracle, RootSet};
use extremal::exp_kernel::{eval_l, eval_lhat, eval_m, eval_mhat, majorant_gap, minorant_gap};
use extremal::forms::{evaluate_form, form_bound, PointSet};
use extremal::measures::Measure;
use extremal::periodic::{eval_p, l_poly, m_poly, TrigPoly};
use extremal::quad::{integrate_finite, integrate_measure};
use extremal::superposed::{EntireApprox, Kind, Strategy as Route};

fn lambda() -> impl Strategy<Value = f64> {
    (-3.0f64..1.7).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernels_are_even(l in lambda(), x in -60.0f64..60.0) {
        prop_assert_eq!(eval_l(l, x).unwrap().value, eval_l(l, -x).unwrap().value);
        prop_assert_eq!(eval_m(l, x).unwrap().value, eval_m(l, -x).unwrap().value);
    }

    #[test]
    fn kernels_sandwich_the_exponential(l in lambda(), x in -100.0f64..100.0) {
        let e = (-l * x.abs()).exp();
        prop_assert!(eval_l(l, x).unwrap().value <= e + 1e-12);
        prop_assert!(eval_m(l, x).unwrap().value >= e - 1e-12);
        prop_assert!(minorant_gap(l, x).unwrap() >= -1e-14);
        prop_assert!(majorant_gap(l, x).unwrap() >= -1e-14);
    }

    #[test]
    fn kernels_interpolate_on_their_lattices(l in lambda(), n in -40i32..40) {
        let xl = n as f64 + 0.5;
        let xm = n as f64;
        prop_assert!((eval_l(l, xl).unwrap().value - (-l * xl.abs()).exp()).abs() < 1e-14);
        prop_assert!((eval_m(l, xm).unwrap().value - (-l * xm.abs()).exp()).abs() < 1e-14);
    }

    #[test]
    fn transforms_are_nonnegative_and_band_limited(l in lambda(), t in -2.0f64..2.0) {
        let lh = eval_lhat(l, t).unwrap().value;
        let mh = eval_mhat(l, t).unwrap().value;
        prop_assert!(lh >= 0.0 && mh >= 0.0);
        if t.abs() >= 1.0 {
            prop_assert!(lh == 0.0 && mh == 0.0);
        }
        prop_assert!(lh <= 2.0 * l / (l * l + 4.0 * PI * PI * t * t) * (1.0 + 1e-12));
    }

    #[test]
    fn periodic_polynomials_sandwich_p(l in lambda(), n in 0usize..24, x in 0.0f64..1.0) {
        let p = eval_p(l, x).unwrap();
        let scale = 1.0 + 2.0 / l;
        prop_assert!(l_poly(l, n).unwrap().eval(x) <= p + 1e-12 * scale);
        prop_assert!(m_poly(l, n).unwrap().eval(x) >= p - 1e-12 * scale);
    }

    #[test]
    fn trig_poly_files_round_trip(re in prop::collection::vec(-1e3f64..1e3, 1..12),
                                  im in prop::collection::vec(-1e3f64..1e3, 12)) {
        let coeffs: Vec<Complex64> = re
            .iter()
            .enumerate()
            .map(|(k, &r)| Complex64::new(r, if k == 0 { 0.0 } else { im[k] }))
            .collect();
        let p = TrigPoly::new(coeffs).unwrap();
        prop_assert_eq!(TrigPoly::from_csv(&p.to_csv()).unwrap(), p.clone());
        prop_assert_eq!(TrigPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn quadrature_of_exponential_on_half_line(a in 0.05f64..20.0) {
        // ∫ e^{−aλ} λ dλ/λ = 1/a against the Haar measure
        let r = integrate_measure(|l| l * (-a * l).exp(), &Measure::haar(), 1e-12).unwrap();
        prop_assert!((r.value - 1.0 / a).abs() <= 1e-10 * (1.0 / a).max(1.0));
        let f = integrate_finite(|x| (a * x).cos(), 0.0, 1.0, 1e-13).unwrap();
        prop_assert!((f.value - a.sin() / a).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn superposed_minorant_stays_below(sigma in prop_oneof![Just(1.0), 0.1f64..0.95, 1.05f64..1.95],
                                       delta in 0.3f64..3.0, x in -20.0f64..20.0) {
        let m = if sigma == 1.0 { Measure::haar() } else { Measure::power_law(sigma).unwrap() };
        let g = EntireApprox::new(&m, Kind::Minorant, delta, Route::Series).unwrap();
        if let Some(t) = g.target(x).unwrap().finite() {
            let v = g.value(x).unwrap().value;
            prop_assert!(v <= t + 1e-9 * t.abs().max(1.0), "G = {v} above f = {t}");
        }
        if sigma > 1.0 {
            let h = EntireApprox::new(&m, Kind::Majorant, delta, Route::Series).unwrap();
            let t = h.target(x).unwrap().as_f64();
            prop_assert!(h.value(x).unwrap().value >= t - 1e-9 * t.abs().max(1.0));
        }
    }

    #[test]
    fn form_bounds_hold(n in 1usize..25, delta in 0.2f64..3.0,
                        gaps in prop::collection::vec(0.0f64..2.0, 25),
                        coef in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 25),
                        sigma in prop_oneof![Just(1.0), 0.2f64..0.9, 1.1f64..1.9]) {
        let mut xi = Vec::with_capacity(n);
        let mut x = 0.0;
        for g in gaps.iter().take(n) {
            xi.push(x);
            x += delta * (1.0 + g);
        }
        let a: Vec<Complex64> = coef.iter().take(n).map(|&(r, i)| Complex64::new(r, i)).collect();
        prop_assume!(a.iter().any(|c| c.norm() > 1e-3));
        let p = PointSet::new(xi, a, Some(delta)).unwrap();
        let m = if sigma == 1.0 { Measure::haar() } else { Measure::power_law(sigma).unwrap() };
        let b = form_bound(&p, &m).unwrap();
        prop_assert!(b.holds(1e-9), "{b:?}");
        // the form is real: conjugating the coefficients leaves it unchanged
        let conj = PointSet::new(p.xi.clone(), p.a.iter().map(|c| c.conj()).collect(), Some(delta)).unwrap();
        let f2 = evaluate_form(&conj, &m).unwrap();
        prop_assert!((b.form - f2).abs() <= 1e-12 * b.norm2.max(1.0) * n as f64);
    }

    #[test]
    fn erdos_turan_bound_is_sound(roots in prop::collection::vec((0.0f64..2.0, 0.0f64..1.0), 1..6),
                                  n in 0usize..12) {
        let alpha: Vec<Complex64> = roots.iter().map(|&(r, th)| Complex64::from_polar(r, 2.0 * PI * th)).collect();
        let rs = RootSet::new(alpha).unwrap();
        let b = et_bound(&rs, n).unwrap();
        prop_assert!(b.total >= sup_log_oracle(&rs) - 1e-9);
        prop_assert!(reflect_roots(&rs).iter().all(|z| z.norm() <= 1.0 + 1e-12));
    }
}

#[test]
fn periodic_superpositions_bracket_q() {
    use extremal::periodic::{g_poly, h_poly};
    use extremal::verify::q_grid;
    let grid: Vec<f64> = (0..=2000).map(|i| i as f64 / 2000.0).collect();
    for (m, n) in [(Measure::haar(), 6), (Measure::power_law(0.5).unwrap(), 5), (Measure::power_law(1.5).unwrap(), 7)] {
        let g = g_poly(&m, n, 1e-12).unwrap();
        let q = q_grid(&m, &grid, 1e-4).unwrap();
        for &(x, v) in &q {
            if let Some(v) = v.finite() {
                assert!(g.eval(x) <= v + 1e-9, "{} g({x}) = {} > q = {v}", m.name(), g.eval(x));
            }
        }
        if m.admissibility().allows_majorant() {
            let h = h_poly(&m, n, 1e-12).unwrap();
            for &(x, v) in &q {
                assert!(h.eval(x) >= v.as_f64() - 1e-9, "{} h({x}) below q", m.name());
            }
        }
    }
}
