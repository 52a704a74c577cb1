use overdamped_heat::{
    derive_scales, heat_classical, heat_exact, heat_high_temp_total, heat_low_temp, heat_quantum,
    heat_quantum_high_temp, heat_total, log_term, BathPair64, CircuitParams64, DerivedScales64,
    QuadratureConfig64, TransferMode,
};
use proptest::prelude::*;

fn fig2(gamma_over_omega_d: f64) -> (CircuitParams64, DerivedScales64) {
    let p = CircuitParams64::from_rates(1.0, gamma_over_omega_d, 2.0, 1.0, 5.0).unwrap();
    let s = derive_scales(&p);
    (p, s)
}

fn bath(t1: f64, t2: f64) -> BathPair64 {
    BathPair64::new(t1, t2, 1.0).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn equilibrium_is_zero_for_every_form() {
    let (p, s) = fig2(1e4);
    for t in [1e-3, 0.3, 7.0, 400.0] {
        let b = bath(t, t);
        assert_eq!(heat_classical(&p, &s, &b), 0.0);
        assert_eq!(heat_quantum(&p, &s, &b).unwrap(), 0.0);
        assert_eq!(heat_total(&p, &s, &b).unwrap(), 0.0);
        assert_eq!(heat_low_temp(&p, &b), 0.0);
        assert_eq!(heat_quantum_high_temp(&p, &s, &b), 0.0);
        assert_eq!(heat_high_temp_total(&p, &s, &b), 0.0);
    }
}

#[test]
fn classical_value_at_fig2_point() {
    let (p, s) = fig2(1e4);
    let want = 0.5 * 0.25 * (5.0 / 6.0) * (10.0 / 17.0) * (10.0 / 7.0);
    assert!(rel(heat_classical(&p, &s, &bath(2.0, 1.0)), want) < 1e-15);
}

#[test]
fn markovian_classical_limit() {
    let p = CircuitParams64::from_rates(1.0, 1e4, 2.0, 1.0, 1e9).unwrap();
    let s = derive_scales(&p);
    let want = 0.5 * 0.25 * s.omega_plus * s.omega_minus / s.omega_d;
    assert!(rel(heat_classical(&p, &s, &bath(2.0, 1.0)), want) < 1e-8);
}

#[test]
fn low_temperature_law_is_quartic() {
    let (p, _) = fig2(1e4);
    let one = heat_low_temp(&p, &bath(0.01, 0.005));
    let two = heat_low_temp(&p, &bath(0.02, 0.01));
    assert!(rel(two, 16.0 * one) < 1e-14);
    let q = p.with_cutoff(50.0).unwrap();
    assert_eq!(heat_low_temp(&q, &bath(0.01, 0.005)), one);
}

#[test]
fn low_temperature_law_matches_closed_form() {
    let (p, s) = fig2(1e4);
    let t1 = 0.01 * s.omega_plus * p.hbar() / p.kb();
    let b = bath(t1, t1 / 2.0);
    let closed = heat_total(&p, &s, &b).unwrap();
    assert!(rel(heat_low_temp(&p, &b), closed) <= 0.05);
}

#[test]
fn low_temperature_error_is_second_order() {
    let (p, s) = fig2(1e8);
    let point = |t1: f64| {
        let b = bath(t1, t1 / 2.0);
        let low = heat_low_temp(&p, &b);
        (
            t1.ln(),
            ((heat_total(&p, &s, &b).unwrap() - low) / low).abs().ln(),
        )
    };
    let (x0, y0) = point(1e-3);
    let (x1, y1) = point(1e-2);
    let slope = (y1 - y0) / (x1 - x0);
    assert!((slope - 2.0).abs() < 0.05, "slope {slope}");
}

#[test]
fn closed_total_matches_quadrature_at_low_temperature() {
    let (p, s) = fig2(1e4);
    let q = QuadratureConfig64::default();
    for t1 in [0.02, 0.05, 0.2] {
        let b = bath(t1, t1 / 2.0);
        let exact = heat_exact(&p, &b, TransferMode::OverdampedLinear, &q).unwrap();
        let closed = heat_total(&p, &s, &b).unwrap();
        assert!(
            rel(closed, exact.value) < 1e-7,
            "T1 = {t1}: {closed} vs {}",
            exact.value
        );
    }
}

#[test]
fn high_temperature_expansion_tracks_quantum_part() {
    let (p, s) = fig2(1e8);
    let omega_th = s.lambda_minus.abs() / 1e-3;
    let b = bath(omega_th, omega_th / 2.0);
    let gap = (heat_quantum_high_temp(&p, &s, &b) - heat_quantum(&p, &s, &b).unwrap()).abs();
    assert!(gap <= 1e-4 * log_term(&p, &s, &b).abs(), "gap {gap}");
}

#[test]
fn high_temperature_total_within_correction() {
    let (p, s) = fig2(1e8);
    let b = bath(600.0, 300.0);
    let total = heat_total(&p, &s, &b).unwrap();
    let correction = (heat_quantum_high_temp(&p, &s, &b) - log_term(&p, &s, &b)).abs();
    let gap = (heat_high_temp_total(&p, &s, &b) - total).abs();
    assert!(gap <= correction * 1.01, "{gap} vs {correction}");
}

#[test]
fn quantum_part_approaches_log_term() {
    let (p, s) = fig2(1e8);
    let gaps: Vec<f64> = [1.0, 10.0, 100.0, 1000.0]
        .into_iter()
        .map(|t2| {
            let b = bath(t2 / 5.0, t2);
            (heat_quantum(&p, &s, &b).unwrap() - log_term(&p, &s, &b)).abs()
        })
        .collect();
    for w in gaps.windows(2) {
        assert!(w[1] < 0.2 * w[0], "{gaps:?}");
    }
}

#[test]
fn quantum_correction_grows_logarithmically() {
    let (p, s) = fig2(1e8);
    let q = |t2: f64| heat_quantum(&p, &s, &bath(1.0, t2)).unwrap();
    let step = q(1e6) - q(1e5);
    let next = q(1e7) - q(1e6);
    assert!(step.abs() > 0.0);
    assert!(rel(next, step) < 1e-3, "{step} {next}");
    assert!(q(1e7) > 0.0);
}

#[test]
fn extreme_temperature_ratio_stays_finite() {
    let (p, s) = fig2(1e4);
    let b = bath(1e-300, 1e300);
    assert!(log_term(&p, &s, &b).is_finite());
}

fn working_point() -> impl Strategy<Value = (CircuitParams64, DerivedScales64, BathPair64)> {
    (
        1.0f64..8.0,
        0.05f64..0.9,
        0.5f64..20.0,
        -4.0f64..4.0,
        -4.0f64..4.0,
    )
        .prop_map(|(log_g, ratio, wc, lt1, lt2)| {
            let p =
                CircuitParams64::from_rates(1.0, 10f64.powf(log_g), 2.0, 2.0 * ratio, wc).unwrap();
            let s = derive_scales(&p);
            (p, s, bath(10f64.powf(lt1), 10f64.powf(lt2)))
        })
}

proptest! {
    #[test]
    fn every_form_is_antisymmetric((p, s, b) in working_point()) {
        let r = b.swapped();
        let pairs = [
            (heat_classical(&p, &s, &b), heat_classical(&p, &s, &r)),
            (heat_quantum(&p, &s, &b).unwrap(), heat_quantum(&p, &s, &r).unwrap()),
            (heat_total(&p, &s, &b).unwrap(), heat_total(&p, &s, &r).unwrap()),
            (heat_low_temp(&p, &b), heat_low_temp(&p, &r)),
            (heat_quantum_high_temp(&p, &s, &b), heat_quantum_high_temp(&p, &s, &r)),
            (heat_high_temp_total(&p, &s, &b), heat_high_temp_total(&p, &s, &r)),
        ];
        for (a, c) in pairs {
            prop_assert!((a + c).abs() <= 1e-14 * a.abs(), "{a} vs {c}");
        }
    }

    #[test]
    fn total_has_sign_of_gradient((p, s, b) in working_point()) {
        prop_assume!((b.t1 / b.t2 - 1.0).abs() > 1e-6);
        prop_assert_eq!(heat_total(&p, &s, &b).unwrap() > 0.0, b.t1 > b.t2);
    }

    #[test]
    fn classical_part_increases_with_cutoff((p, _s, b) in working_point(), f in 1.01f64..50.0) {
        prop_assume!(b.t1 > b.t2);
        let q = p.with_cutoff(p.omega_c() * f).unwrap();
        let lo = heat_classical(&p, &derive_scales(&p), &b);
        let hi = heat_classical(&q, &derive_scales(&q), &b);
        prop_assert!(hi > lo);
    }

    #[test]
    fn series_total_agrees_with_direct_sum((p, s, b) in working_point()) {
        let total = heat_total(&p, &s, &b).unwrap();
        let cl = heat_classical(&p, &s, &b);
        let lg = log_term(&p, &s, &b);
        let qu = heat_quantum(&p, &s, &b).unwrap();
        // The direct sum cancels catastrophically at low temperature; its
        // rounding error is a few ulps of the largest piece.
        let scale = cl.abs() + lg.abs() + (qu - lg).abs();
        prop_assert!((total - (cl + qu)).abs() <= 64.0 * f64::EPSILON * scale + 1e-12 * total.abs());
    }
}

#[test]
fn single_precision_follows_double() {
    use overdamped_heat::{BathPair32, CircuitParams32};
    let p = CircuitParams32::from_rates(1.0, 1e4, 2.0, 1.0, 5.0).unwrap();
    let s = derive_scales(&p);
    let b = BathPair32::new(2.0, 1.0, 1.0).unwrap();
    let (p64, s64) = fig2(1e4);
    let b64 = bath(2.0, 1.0);
    let pairs = [
        (heat_classical(&p, &s, &b), heat_classical(&p64, &s64, &b64)),
        (
            heat_quantum(&p, &s, &b).unwrap(),
            heat_quantum(&p64, &s64, &b64).unwrap(),
        ),
        (
            heat_total(&p, &s, &b).unwrap(),
            heat_total(&p64, &s64, &b64).unwrap(),
        ),
    ];
    for (single, double) in pairs {
        assert!(rel(single as f64, double) < 1e-5, "{single} vs {double}");
    }
}
