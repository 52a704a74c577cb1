//! Acceptance suite: eight criteria at pinned tolerances, one PASS/FAIL line
//! each. Runs as a plain binary (`harness = false`) and exits non-zero if any
//! criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use heat_cli::{parse_with_preset, run_sweep_with_threads, to_csv_bytes, Preset};
use overdamped_heat::Complex64 as C64;
use overdamped_heat::{
    assemble_report, derive_scales, digamma, heat_exact, heat_low_temp, heat_quantum, heat_total,
    log_term, trace_f12, transfer_f12, BathPair64, CircuitParams64, Method, QuadratureConfig64,
    ReportOptions64, TransferMode, EULER_MASCHERONI,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn log_uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

fn fig2_circuit(gamma_over_omega_d: f64) -> CircuitParams64 {
    CircuitParams64::from_rates(1.0, gamma_over_omega_d, 2.0, 1.0, 5.0).unwrap()
}

fn closed_total(p: &CircuitParams64, b: &BathPair64) -> f64 {
    heat_total(p, &derive_scales(p), b).unwrap()
}

/// Least-squares slope of `ys` against `xs`.
fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn algebra_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut worst = 0.0f64;
    let cases = 400;
    for _ in 0..cases {
        let l = log_uniform(&mut rng, 0.1, 10.0);
        let m = l * rng.random_range(0.05..0.95);
        let r = log_uniform(&mut rng, 0.1, 10.0);
        let gamma_over_omega_d = log_uniform(&mut rng, 1.0, 1e4);
        let omega_d = r / l;
        let c = 1.0 / (r * gamma_over_omega_d * omega_d);
        let omega_c = omega_d * log_uniform(&mut rng, 0.1, 100.0);
        let p = CircuitParams64::new(r, l, c, m, omega_c).unwrap();
        let w = omega_d * log_uniform(&mut rng, 1e-3, 1e3);
        let a = transfer_f12(w, &p, TransferMode::ExactCubic);
        let b = trace_f12(w, &p).unwrap();
        worst = worst.max(rel(a, b));
    }
    outcome(
        worst <= 1e-10,
        format!("{cases} random points, worst relative gap {worst:.2e} (limit 1e-10)"),
    )
}

fn residue_vs_quadrature() -> Outcome {
    let q = QuadratureConfig64::default().with_rel_tol(1e-10);
    let mut worst = 0.0f64;
    let mut at = String::new();
    let mut count = 0;
    for i in 0..5 {
        let ratio = 0.1 + 0.2 * i as f64;
        for j in 0..5 {
            let omega_c = 10f64.powf(j as f64 / 2.0);
            let p = CircuitParams64::from_rates(1.0, 1e4, 1.0, ratio, omega_c).unwrap();
            let s = derive_scales(&p);
            let lo = 0.01 * s.lambda_plus.abs();
            let hi = 300.0 * s.lambda_minus.abs();
            for k in 0..5 {
                let t1 = lo * (hi / lo).powf(k as f64 / 4.0);
                let b = BathPair64::for_circuit(t1, t1 / 2.0, &p).unwrap();
                let closed = closed_total(&p, &b);
                let exact = heat_exact(&p, &b, TransferMode::OverdampedLinear, &q)
                    .unwrap()
                    .value;
                let e = rel(closed, exact);
                count += 1;
                if e > worst {
                    worst = e;
                    at = format!("M/L={ratio:.1}, omega_c={omega_c:.3}, T1={t1:.3e}");
                }
            }
        }
    }
    outcome(
        worst <= 1e-6,
        format!("{count} grid points, worst relative gap {worst:.2e} at {at} (limit 1e-6)"),
    )
}

fn fig2_reproduction() -> Outcome {
    let q = QuadratureConfig64::default();
    let pairs = [(2.0, 1.0), (3.0, 1.0), (1.0, 0.5)];
    let grid: Vec<f64> = (0..20)
        .map(|i| 10f64.powf(1.0 + 4.0 * i as f64 / 19.0))
        .collect();
    let mut notes = Vec::new();
    let mut pass = true;
    for &(t1, t2) in &pairs {
        let errors: Vec<f64> = grid
            .iter()
            .map(|&g| {
                let p = fig2_circuit(g);
                let b = BathPair64::for_circuit(t1, t2, &p).unwrap();
                let exact = heat_exact(&p, &b, TransferMode::ExactCubic, &q)
                    .unwrap()
                    .value;
                rel(exact, closed_total(&p, &b))
            })
            .collect();
        let converged = grid
            .iter()
            .zip(&errors)
            .filter(|(g, _)| **g >= 1e3)
            .map(|(_, e)| *e)
            .fold(0.0, f64::max);
        let diverged = errors[0];
        let monotone = errors.windows(2).all(|w| w[1] < w[0]);
        pass &= converged <= 0.01 && diverged >= 0.2 && monotone;
        notes.push(format!(
            "({t1},{t2}): max {:.2}% for gamma>=1e3, {:.0}% at gamma=10, monotone={monotone}",
            100.0 * converged,
            100.0 * diverged
        ));
    }
    outcome(pass, notes.join("; "))
}

fn low_temperature_law() -> Outcome {
    let p = fig2_circuit(1e4);
    let s = derive_scales(&p);
    let start = 0.01 * s.lambda_plus.abs();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut ratio_ok = true;
    let mut ratios = Vec::new();
    for k in 0..5 {
        let t1 = start / 2f64.powi(k);
        let b = BathPair64::for_circuit(t1, t1 / 2.0, &p).unwrap();
        let ratio = closed_total(&p, &b) / heat_low_temp(&p, &b);
        ratio_ok &= (0.95..=1.05).contains(&ratio);
        ratios.push(ratio);
        xs.push(t1.ln());
        ys.push((ratio - 1.0).abs().ln());
    }
    let k = slope(&xs, &ys);
    outcome(
        ratio_ok && (k - 2.0).abs() <= 0.3,
        format!(
            "ratios {:.6}..{:.6} (limit [0.95, 1.05]), error slope {k:.3} (limit 2.0 +- 0.3)",
            ratios.iter().cloned().fold(f64::INFINITY, f64::min),
            ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        ),
    )
}

fn high_temperature_log() -> Outcome {
    let p = fig2_circuit(1e4);
    let s = derive_scales(&p);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut surviving = f64::INFINITY;
    for k in 0..7 {
        let t1 = 10f64.powf(1.0 + 0.5 * k as f64);
        let b = BathPair64::for_circuit(t1, 2.0 * t1, &p).unwrap();
        let lt = log_term(&p, &s, &b);
        surviving = surviving.min(lt.abs());
        xs.push(t1.ln());
        ys.push((heat_quantum(&p, &s, &b).unwrap() - lt).abs().ln());
    }
    let k = slope(&xs, &ys);
    outcome(
        (k + 1.0).abs() <= 0.1 && surviving > 1e-3,
        format!(
            "remainder exponent {k:.4} (limit -1.0 +- 0.1), log term {surviving:.5} (limit > 1e-3)"
        ),
    )
}

const ORACLE: &[(f64, f64, &str, &str)] = &[
    (
        1.0,
        3.7,
        "1.314466138148507800474142",
        "1.435661191911392902406239",
    ),
    (0.5, 0.0, "-1.963510026021423479440976", "0"),
    (3.0, 0.0, "0.9227843350984671393934879", "0"),
    (10.5, 0.0, "2.303001034297686375272594", "0"),
    (
        2.25,
        -1.5,
        "0.8364627866761271818683116",
        "-0.7009728897664918012493923",
    ),
    (
        0.1,
        0.2,
        "-2.387534102255384589701944",
        "4.280821665691046069577656",
    ),
    (-0.5, 0.0, "0.03648997397857652055902367", "0"),
    (
        -2.5,
        0.5,
        "1.116508021969907301437767",
        "2.717582596900591515735856",
    ),
    (
        -7.3,
        -2.1,
        "2.08967554394961829179199",
        "-2.878913441968782562438656",
    ),
    (
        0.75,
        25.0,
        "3.21885915703462127821131",
        "1.560795326294285229151993",
    ),
    (
        1.0,
        100.0,
        "4.60517851940476200337336",
        "1.565796326794896619231322",
    ),
    (
        1.0,
        -0.01,
        "-0.5770954695794862035201211",
        "-0.01644825844697281999466324",
    ),
    (
        5.0,
        5.0,
        "1.906008170046067513651532",
        "0.8370647983422204977641612",
    ),
    (
        -0.25,
        3.0,
        "1.125035397337721902310192",
        "1.817896589034796274817431",
    ),
    (
        12.0,
        -40.0,
        "3.728567828466005677488274",
        "-1.290833727244042844569833",
    ),
    (
        0.3,
        -0.7,
        "-0.4472079202995611739513501",
        "-1.891810855218526668695821",
    ),
    (
        1.0,
        1e4,
        "9.210340372809516070238632",
        "1.570746326794896619231322",
    ),
    (
        2.0,
        0.001,
        "0.4227845371553333712409876",
        "0.0006449339845250100818175128",
    ),
    (
        -15.5,
        0.25,
        "2.772873308145826519518363",
        "2.044619597493427577721025",
    ),
    (
        1.4616,
        0.3,
        "0.03854229909314759707868445",
        "0.283581948598654824605594",
    ),
    (30.0, 0.0, "3.384438132685524876561928", "0"),
    (
        1.0,
        0.5,
        "-0.3288863572294593503438587",
        "0.7126885749596477556091691",
    ),
    (
        0.01,
        -3.0,
        "1.107430393827597077694452",
        "-1.734191073006137786950567",
    ),
    (
        250.0,
        120.0,
        "5.623504412285305944957913",
        "0.4483010547332437573040907",
    ),
];

fn cot(z: C64) -> C64 {
    z.cos() / z.sin()
}

fn digamma_suite() -> Outcome {
    let one = digamma(C64::new(1.0, 0.0)).unwrap();
    let two = digamma(C64::new(2.0, 0.0)).unwrap();
    let fixed = (one.re + EULER_MASCHERONI)
        .abs()
        .max((two.re - 1.0 + EULER_MASCHERONI).abs());

    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut recurrence = 0.0f64;
    let mut reflection = 0.0f64;
    let mut n = 0;
    while n < 1000 {
        let z = C64::new(rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0));
        // Stay clear of the poles so that the residuals measure the function,
        // not the conditioning of cot near an integer.
        if (z.re - z.re.round()).abs() < 1e-3 && z.im.abs() < 1e-3 {
            continue;
        }
        n += 1;
        let psi = digamma(z).unwrap();
        let next = digamma(z + 1.0).unwrap();
        let rhs = psi + z.inv();
        recurrence = recurrence.max((next - rhs).norm() / next.norm().max(1.0));
        let mirror = digamma(C64::new(1.0, 0.0) - z).unwrap();
        let rhs = psi + cot(z * PI) * PI;
        reflection = reflection.max((mirror - rhs).norm() / mirror.norm().max(1.0));
    }

    let mut table = 0.0f64;
    for &(x, y, re, im) in ORACLE {
        let want = C64::new(re.parse().unwrap(), im.parse().unwrap());
        let got = digamma(C64::new(x, y)).unwrap();
        table = table.max((got - want).norm() / want.norm().max(1.0));
    }
    outcome(
        fixed <= 1e-13 && recurrence <= 1e-12 && reflection <= 1e-12 && table <= 1e-12,
        format!(
            "psi(1), psi(2) {fixed:.1e}; recurrence {recurrence:.1e}, reflection {reflection:.1e} over {n} points; \
             {} oracle points {table:.1e}",
            ORACLE.len()
        ),
    )
}

fn symmetry_and_sign() -> Outcome {
    let opts = ReportOptions64::default();
    let mut problems = Vec::new();
    let p = fig2_circuit(1e6);
    // A hot/cold pair inside each method's domain.
    let cases = [
        (Method::ClosedForm, 2.0, 1.0),
        (Method::ClosedForm, 0.05, 0.01),
        (Method::ExactQuadrature, 2.0, 1.0),
        (Method::ExactQuadrature, 0.3, 0.1),
        (Method::LowTempAsymptotic, 0.004, 0.002),
        (Method::HighTempAsymptotic, 40.0, 20.0),
    ];
    let mut worst_closed = 0.0f64;
    for (method, t1, t2) in cases {
        let b = BathPair64::for_circuit(t1, t2, &p).unwrap();
        let fwd = assemble_report(&p, &b, method, &opts).unwrap();
        let back = assemble_report(&p, &b.swapped(), method, &opts).unwrap();
        if fwd.q_total <= 0.0 {
            problems.push(format!("{method} at ({t1},{t2}) gives {:e}", fwd.q_total));
        }
        let gap = rel(fwd.q_total, -back.q_total);
        match method {
            Method::ExactQuadrature => {
                let allowed = fwd.error_estimate.unwrap() + back.error_estimate.unwrap();
                if (fwd.q_total + back.q_total).abs()
                    > allowed.max(opts.quadrature.rel_tol * fwd.q_total.abs())
                {
                    problems.push(format!("exact antisymmetry gap {gap:e}"));
                }
            }
            _ => worst_closed = worst_closed.max(gap),
        }
    }
    if worst_closed > 1e-12 {
        problems.push(format!("closed-form antisymmetry gap {worst_closed:e}"));
    }

    let decoupled = CircuitParams64::from_rates(1.0, 1e6, 2.0, 0.0, 5.0).unwrap();
    let equal = BathPair64::for_circuit(1.3, 1.3, &p).unwrap();
    let split = BathPair64::for_circuit(2.0, 1.0, &p).unwrap();
    for method in Method::ALL {
        for (circuit, baths, what) in [(&p, &equal, "T1 = T2"), (&decoupled, &split, "M = 0")] {
            let r = assemble_report(circuit, baths, method, &opts).unwrap();
            if r.q_total != 0.0 || r.q_classical != 0.0 || r.q_quantum != 0.0 {
                problems.push(format!("{method} at {what} gives {:e}", r.q_total));
            }
        }
    }
    let pass = problems.is_empty();
    let detail = if pass {
        format!("signs, exact zeros and antisymmetry hold for all methods (closed-form gap {worst_closed:.1e})")
    } else {
        problems.join("; ")
    };
    outcome(pass, detail)
}

fn harness_determinism() -> Outcome {
    let mut problems = Vec::new();
    for preset in Preset::ALL {
        let spec = parse_with_preset(Some(preset), "").unwrap();
        let serial = to_csv_bytes(&run_sweep_with_threads(&spec, Some(1)).unwrap()).unwrap();
        let again = to_csv_bytes(&run_sweep_with_threads(&spec, Some(1)).unwrap()).unwrap();
        let parallel = to_csv_bytes(&run_sweep_with_threads(&spec, Some(4)).unwrap()).unwrap();
        let auto = to_csv_bytes(&run_sweep_with_threads(&spec, None).unwrap()).unwrap();
        if serial != again {
            problems.push(format!("{preset}: repeated serial runs differ"));
        }
        if serial != parallel || serial != auto {
            problems.push(format!("{preset}: serial and parallel runs differ"));
        }
    }
    let pass = problems.is_empty();
    outcome(
        pass,
        if pass {
            "fig2, fig3, fig4 CSV byte-identical across repeats and 1/4/auto workers".into()
        } else {
            problems.join("; ")
        },
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("algebra oracle: transfer vs trace", algebra_oracle),
        (
            "closed form vs overdamped quadrature",
            residue_vs_quadrature,
        ),
        (
            "exact vs closed form convergence in gamma",
            fig2_reproduction,
        ),
        ("low-temperature T^4 law", low_temperature_law),
        ("high-temperature log term", high_temperature_log),
        ("digamma suite", digamma_suite),
        ("symmetry and sign", symmetry_and_sign),
        ("harness determinism", harness_determinism),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} [{}] {name}: {} ({:.2}s)",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
