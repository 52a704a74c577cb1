use overdamped_heat::quadrature::{integrate, integrate_half_line};
use overdamped_heat::{
    classical_integral, derive_scales, heat_exact, heat_quantum, heat_total, quantum_integral,
    transfer_f12, BathPair64, CircuitParams64, HeatError, QuadratureConfig64, TransferMode,
};
use proptest::prelude::*;

const LINEAR: TransferMode = TransferMode::OverdampedLinear;
const CUBIC: TransferMode = TransferMode::ExactCubic;

fn fig2(gamma_over_omega_d: f64) -> CircuitParams64 {
    CircuitParams64::from_rates(1.0, gamma_over_omega_d, 2.0, 1.0, 5.0).unwrap()
}

fn q() -> QuadratureConfig64 {
    QuadratureConfig64::default()
}

fn bath(t1: f64, t2: f64) -> BathPair64 {
    BathPair64::new(t1, t2, 1.0).unwrap()
}

#[test]
fn equilibrium_and_decoupled_vanish() {
    let p = fig2(1e4);
    for mode in [LINEAR, CUBIC] {
        assert_eq!(
            heat_exact(&p, &bath(1.0, 1.0), mode, &q()).unwrap().value,
            0.0
        );
        assert_eq!(
            quantum_integral(&p, &bath(3.0, 3.0), mode, &q())
                .unwrap()
                .value,
            0.0
        );
    }
    let free = CircuitParams64::new(2.0, 2.0, 5e-5, 0.0, 5.0).unwrap();
    assert_eq!(
        heat_exact(&free, &bath(2.0, 1.0), CUBIC, &q())
            .unwrap()
            .value,
        0.0
    );
    assert_eq!(classical_integral(&free, CUBIC, &q()).unwrap().value, 0.0);
}

#[test]
fn overdamped_integral_matches_closed_form() {
    let p = fig2(1e4);
    let s = derive_scales(&p);
    let b = bath(2.0, 1.0);
    let exact = heat_exact(&p, &b, LINEAR, &q()).unwrap().value;
    let closed = heat_total(&p, &s, &b).unwrap();
    assert!(
        (exact - closed).abs() <= 1e-7 * closed.abs(),
        "{exact} vs {closed}"
    );
}

#[test]
fn overdamped_classical_integral_value() {
    let want = 0.5 * 0.25 * (5.0 / 6.0) * (100.0 / 119.0);
    let got = classical_integral(&fig2(1e4), LINEAR, &q()).unwrap();
    assert!((got.value - want).abs() <= 1e-9 * want, "{}", got.value);
    assert!(got.abs_error <= 1e-9 * want);
}

#[test]
fn quantum_integral_matches_residue_sum() {
    let p = fig2(1e4);
    let s = derive_scales(&p);
    let b = bath(2.0, 1.0);
    let integral = quantum_integral(&p, &b, LINEAR, &q()).unwrap().value;
    let closed = heat_quantum(&p, &s, &b).unwrap();
    assert!(
        (integral - closed).abs() <= 1e-6 * closed.abs(),
        "{integral} vs {closed}"
    );
}

#[test]
fn invalid_config_rejected() {
    let p = fig2(1e4);
    let bad = QuadratureConfig64 {
        max_subdivisions: 3,
        ..q()
    };
    assert!(matches!(
        heat_exact(&p, &bath(2.0, 1.0), LINEAR, &bad),
        Err(HeatError::InvalidQuadrature(_))
    ));
}

#[test]
fn starved_quadrature_reports_shortfall() {
    let p = fig2(1e4);
    let starved = QuadratureConfig64 {
        rel_tol: 1e-15,
        max_subdivisions: 10,
        ..q()
    };
    match heat_exact(&p, &bath(2.0, 1.0), CUBIC, &starved) {
        Err(HeatError::ToleranceNotMet {
            value,
            achieved,
            requested,
        }) => {
            assert!(value > 0.0 && achieved > requested);
        }
        other => panic!("expected a tolerance error, got {other:?}"),
    }
}

fn working_point() -> impl Strategy<Value = (CircuitParams64, BathPair64)> {
    (
        1.0f64..6.0,
        0.05f64..0.9,
        0.5f64..20.0,
        -2.0f64..1.5,
        -2.0f64..1.5,
    )
        .prop_map(|(log_g, ratio, wc, lt1, lt2)| {
            let p =
                CircuitParams64::from_rates(1.0, 10f64.powf(log_g), 2.0, 2.0 * ratio, wc).unwrap();
            (p, bath(10f64.powf(lt1), 10f64.powf(lt2)))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classical_integral_is_additive(
        (p, _) in working_point(),
        split_exp in -1.0f64..2.0,
        linear in any::<bool>(),
    ) {
        let mode = if linear { LINEAR } else { CUBIC };
        let omega = 10f64.powf(split_exp);
        let f = |w: f64| transfer_f12(w, &p, mode);
        let full = classical_integral(&p, mode, &q()).unwrap();
        let s = derive_scales(&p);
        let scales = [s.lambda_plus.abs(), s.lambda_minus.abs(), p.omega_c(), s.gamma];
        let head = integrate(f, &[0.0, omega], 1e-11, 0.0, 2000).unwrap();
        let tail = integrate_half_line(
            |x| f(omega + x),
            &scales,
            10.0 * s.gamma.max(p.omega_c()),
            1e-11,
            0.0,
            2000,
        )
        .unwrap();
        let sum = head.value + tail.value;
        let err = full.abs_error + head.abs_error + tail.abs_error;
        prop_assert!((sum - full.value).abs() <= err + 1e-10 * full.value, "{sum} vs {}", full.value);
    }

    #[test]
    fn total_splits_into_classical_and_quantum((p, b) in working_point(), linear in any::<bool>()) {
        let mode = if linear { LINEAR } else { CUBIC };
        let total = heat_exact(&p, &b, mode, &q()).unwrap();
        let cl = classical_integral(&p, mode, &q()).unwrap();
        let qu = quantum_integral(&p, &b, mode, &q()).unwrap();
        let dt = p.kb() * (b.t1 - b.t2);
        let gap = (total.value - dt * cl.value - qu.value).abs();
        let budget = total.abs_error + dt.abs() * cl.abs_error + qu.abs_error;
        let scale = total.value.abs().max((dt * cl.value).abs());
        prop_assert!(gap <= budget + 1e-12 * scale, "gap {gap}, budget {budget}");
    }

    #[test]
    fn antisymmetric_and_signed((p, b) in working_point()) {
        prop_assume!((b.t1 / b.t2 - 1.0).abs() > 1e-3);
        let fwd = heat_exact(&p, &b, CUBIC, &q()).unwrap();
        let back = heat_exact(&p, &b.swapped(), CUBIC, &q()).unwrap();
        prop_assert!((fwd.value + back.value).abs() <= fwd.abs_error + back.abs_error);
        prop_assert_eq!(fwd.value > 0.0, b.t1 > b.t2);
    }

    #[test]
    fn tightening_stays_within_estimate((p, b) in working_point()) {
        let loose = q().with_rel_tol(1e-6);
        let tight = q().with_rel_tol(1e-7);
        let a = heat_exact(&p, &b, CUBIC, &loose).unwrap();
        let c = heat_exact(&p, &b, CUBIC, &tight).unwrap();
        prop_assert!((a.value - c.value).abs() <= a.abs_error, "{} {} {}", a.value, c.value, a.abs_error);
    }
}
