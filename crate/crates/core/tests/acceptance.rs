//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the verdict lines are always printed.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use phihh::bounds::{self, check_hadamard_chain, lhs_midpoint, lhs_trapezoid, Side};
use phihh::expr::parse;
use phihh::harness::suite::{draw_instance, falsify_sweep, report_from, stream, Target};
use phihh::harness::{corpus, run_suite, SuiteConfig};
use phihh::quadrature::{check_identity_eq4, check_identity_eq7, DEFAULT_TOL};
use phihh::{Expr, PhiSegment, Status, TheoremId};
use rand::Rng;

type Outcome = Result<String, String>;

fn close(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{name} = {got:.12}, expected {want:.12} ± {tol:e}"))
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let f = parse("x^2").map_err(|e| e.to_string())?;
    let s = PhiSegment::new(0.0, 1.0, 0.0).unwrap();
    let tol = phihh::quadrature::DEFAULT_TOL;
    let e = |r: Result<f64, bounds::BoundError>| r.map_err(|e| e.to_string());
    close("lhs_trapezoid", e(lhs_trapezoid(&f, &s, tol))?, 1.0 / 6.0, 1e-8)?;
    close("rhs_tt2", e(bounds::rhs_tt2(&f, &s))?, 0.25, 1e-8)?;
    close("lhs_midpoint", e(lhs_midpoint(&f, &s, tol))?, 1.0 / 12.0, 1e-8)?;
    close("rhs_tt3(p=2)", e(bounds::rhs_tt3(&f, &s, 2.0))?, 0.408248290463863, 1e-8)?;
    close("rhs_tt5(p=2)", e(bounds::rhs_tt5(&f, &s, 2.0))?, 0.394337567297406, 1e-8)?;
    close("rhs_tt6(p=2)", e(bounds::rhs_tt6(&f, &s, 2.0))?, 0.577350269189626, 1e-8)?;
    close("rhs_z(q=1)", e(bounds::rhs_z(&f, &s, 1.0))?, 0.25, 1e-8)?;
    close("rhs_quasi", e(bounds::rhs_quasi(&f, &s, Side::Trapezoid))?, 0.5, 1e-8)?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("8 values within 1e-8 in {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let f = parse("exp(x)").map_err(|e| e.to_string())?;
    let s = PhiSegment::new(0.0, 1.0, 0.0).unwrap();
    let c = check_hadamard_chain(&f, &s, phihh::quadrature::DEFAULT_TOL, 1025).map_err(|e| e.to_string())?;
    close("f(mid)", c.midpoint_value, 1.648721, 1e-6)?;
    close("mean", c.mean, 1.718282, 1e-6)?;
    close("trapezoid", c.trapezoid, 1.859141, 1e-6)?;
    close("generator average", c.generator_average, 1.859141, 1e-6)?;
    if !c.all_hold() {
        return Err(format!("links: {c:?}"));
    }
    let r = bounds::evaluate(TheoremId::Chain2, &f, &s, &Default::default(), phihh::quadrature::DEFAULT_TOL, 1025)
        .map_err(|e| e.to_string())?;
    if r.status != Status::Holds {
        return Err(format!("chain status {:?}", r.status));
    }
    Ok(format!(
        "{:.6} <= {:.6} <= {:.6} <= {:.6}, all links hold",
        c.midpoint_value, c.mean, c.trapezoid, c.generator_average
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let cfg = SuiteConfig::default();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut rotated = 0;
    for entry in corpus().into_iter().filter(|e| e.smooth) {
        let f = parse(&entry.expr).map_err(|e| e.to_string())?;
        for k in 0..50 {
            let (s, _) = draw_instance(&cfg, &entry, &mut stream(2024, &entry.id, k));
            rotated += usize::from(s.phi() > 0.0);
            let r4 = check_identity_eq4(&f, &s, DEFAULT_TOL).map_err(|e| format!("{} {s:?}: {e}", entry.id))?;
            let r7 = check_identity_eq7(&f, &s, DEFAULT_TOL).map_err(|e| format!("{} {s:?}: {e}", entry.id))?;
            let r = r4.max(r7);
            if r > 1e-8 {
                return Err(format!("{} on {s:?}: residual {r:e}", entry.id));
            }
            worst = worst.max(r);
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!("{count} segments ({rotated} rotated), worst residual {worst:.2e}, {elapsed:?}"))
}

fn soundness_config() -> SuiteConfig {
    SuiteConfig { draws: 10_000, seed: 20_240_601, ..SuiteConfig::default() }
}

fn criterion_4(records: &[phihh::harness::InstanceRecord], elapsed: Duration) -> Outcome {
    let cfg = soundness_config();
    let report = report_from(&cfg, "falsify", Some(Target::ViolateWithHypothesis), cfg.draws, records.to_vec());
    if report.exit_code() != 0 || !report.results.is_empty() {
        let first = report.results.first().map(|r| format!("{r:?}")).unwrap_or_default();
        return Err(format!("{} violations; first: {first}", report.metadata.violations));
    }
    within(elapsed, Duration::from_secs(300))?;
    let holds = records.iter().filter(|r| r.status() == Some(Status::Holds)).count();
    Ok(format!("{} draws, {} evaluations ({holds} certified and holding), 0 violations, {elapsed:?}", cfg.draws, records.len()))
}

// Classical real-line bounds, written against hand-coded f and f'.
struct Oracle {
    id: &'static str,
    f: fn(f64) -> f64,
    df: fn(f64) -> f64,
}

const ORACLES: [Oracle; 8] = [
    Oracle { id: "square", f: |x| x * x, df: |x| 2.0 * x },
    Oracle { id: "exp", f: f64::exp, df: f64::exp },
    Oracle { id: "cubic", f: |x| x * x * x + x, df: |x| 3.0 * x * x + 1.0 },
    Oracle { id: "sine", f: f64::sin, df: f64::cos },
    Oracle { id: "cosh2", f: |x| x.exp() + (-x).exp(), df: |x| x.exp() - (-x).exp() },
    Oracle { id: "log", f: f64::ln, df: |x| 1.0 / x },
    Oracle { id: "recip", f: |x| 1.0 / x, df: |x| -1.0 / (x * x) },
    Oracle { id: "double_well", f: |x| x.powi(4) - 2.0 * x * x, df: |x| 4.0 * x.powi(3) - 4.0 * x },
];

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * eps {
        left + right + diff / 15.0
    } else {
        simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
    }
}

fn oracle_mean(f: fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(&f, a, b, fa, fm, fb, whole, 1e-15, 40) / (b - a)
}

fn rel_close(what: &str, got: f64, want: f64) -> Result<(), String> {
    let scale = got.abs().max(want.abs());
    if (got - want).abs() <= 1e-10 * scale || scale == 0.0 {
        Ok(())
    } else {
        Err(format!("{what}: {got:e} vs oracle {want:e} (rel {:.2e})", (got - want).abs() / scale))
    }
}

fn criterion_5() -> Outcome {
    let cfg = SuiteConfig { sampler: phihh::harness::config::SamplerConfig { phi_grid: vec![0.0], phi_grid_weight: 1.0, ..Default::default() }, ..Default::default() };
    let entries = corpus();
    let mut compared = 0;
    for k in 0..100 {
        let o = &ORACLES[k % ORACLES.len()];
        let entry = entries.iter().find(|e| e.id == o.id).expect("oracle ids are corpus ids");
        let (s, _) = draw_instance(&cfg, entry, &mut stream(5, "reduction", k));
        let (a, b) = (s.a(), s.b());
        let f = parse(&entry.expr).map_err(|e| e.to_string())?;
        let mean = oracle_mean(o.f, a, b);
        let (da, db) = ((o.df)(a).abs(), (o.df)(b).abs());
        // Dragomir–Agarwal, Kirmaci and Ion on [a, b]
        let trap_lhs = ((o.f)(a) + (o.f)(b)) / 2.0 - mean;
        let mid_lhs = mean - (o.f)(0.5 * (a + b));
        let da_rhs = (b - a) * (da + db) / 8.0;
        let ion_rhs = (b - a) / 4.0 * da.max(db);
        for (id, lhs, rhs) in [
            (TheoremId::Tt2, trap_lhs.abs(), da_rhs),
            (TheoremId::Tt4, mid_lhs.abs(), da_rhs),
            (TheoremId::QuasiTrapezoid, trap_lhs.abs(), ion_rhs),
        ] {
            let r = bounds::evaluate(id, &f, &s, &Default::default(), DEFAULT_TOL, 129).map_err(|e| e.to_string())?;
            rel_close(&format!("{} {id} lhs on [{a}, {b}]", o.id), r.lhs, lhs)?;
            rel_close(&format!("{} {id} rhs on [{a}, {b}]", o.id), r.rhs, rhs)?;
            compared += 1;
        }
    }
    Ok(format!("{compared} (lhs, rhs) pairs over 100 real instances agree to 1e-10 relative"))
}

fn criterion_6(records: &[phihh::harness::InstanceRecord]) -> Outcome {
    let mut by_instance: BTreeMap<(&str, usize), BTreeMap<TheoremId, f64>> = BTreeMap::new();
    let mut segments: BTreeMap<(&str, usize), PhiSegment> = BTreeMap::new();
    for r in records {
        if let Some(res) = &r.result {
            by_instance.entry((&r.corpus_id, r.draw)).or_default().insert(r.theorem, res.rhs);
            segments.insert((&r.corpus_id, r.draw), r.segment);
        }
    }
    let ge = |hi: f64, lo: f64| hi >= lo - 1e-12 * lo.abs();
    let mut pairs = 0;
    for (key, rhs) in &by_instance {
        if let (Some(&t6), Some(&t5)) = (rhs.get(&TheoremId::Tt6), rhs.get(&TheoremId::Tt5)) {
            if !ge(t6, t5) {
                return Err(format!("{key:?}: tt6 {t6:e} < tt5 {t5:e}"));
            }
            pairs += 1;
        }
        if let (Some(&zr), Some(&z)) = (rhs.get(&TheoremId::ZRelaxed), rhs.get(&TheoremId::Z)) {
            if !ge(zr, z) {
                return Err(format!("{key:?}: z_relaxed {zr:e} < z {z:e}"));
            }
            pairs += 1;
        }
    }
    let mut checked_q1 = 0;
    let exprs: BTreeMap<String, Expr> = corpus().into_iter().map(|e| (e.id, parse(&e.expr).unwrap())).collect();
    for ((id, _), s) in &segments {
        let f = &exprs[*id];
        let (z1, t2) = (bounds::rhs_z(f, s, 1.0), bounds::rhs_tt2(f, s));
        if let (Ok(z1), Ok(t2)) = (z1, t2) {
            if (z1 - t2).abs() > 1e-14 * t2.abs() {
                return Err(format!("{id} {s:?}: z(q=1) {z1:e} != tt2 {t2:e}"));
            }
            checked_q1 += 1;
        }
    }
    Ok(format!("{pairs} dominance pairs and {checked_q1} q=1 equalities, zero exceptions"))
}

fn criterion_7() -> Outcome {
    let mut points = 0;
    let mut worst: f64 = 0.0;
    for entry in corpus() {
        let f = parse(&entry.expr).map_err(|e| e.to_string())?;
        let d = f.differentiate();
        let mut rng = stream(7, &entry.id, 0);
        let (lo, hi) = (entry.a_range.0, entry.a_range.1 + entry.len_range.1);
        let mut n = 0;
        while n < 100 {
            let x = lo + rng.random::<f64>() * (hi - lo);
            if x.abs() < 1e-3 {
                continue;
            }
            let h = 1e-5;
            let fd = |y: f64| f.eval_real(y).map(|v| v.re);
            let (Ok(up), Ok(dn), Ok(exact)) = (fd(x + h), fd(x - h), d.eval_real(x)) else {
                return Err(format!("{}: evaluation failed near {x}", entry.id));
            };
            let numeric = (up - dn) / (2.0 * h);
            let err = (exact.re - numeric).abs() / (1.0 + exact.re.abs());
            if err > 1e-4 {
                return Err(format!("{} at {x}: symbolic {} vs difference {numeric}", entry.id, exact.re));
            }
            worst = worst.max(err);
            n += 1;
        }
        points += n;
    }
    Ok(format!("{points} points over the corpus, worst scaled error {worst:.2e}"))
}

fn criterion_8() -> Outcome {
    let text = r#"{"segments":4,"seed":99,"grid":257}"#;
    let first = run_suite(&SuiteConfig::from_json(text).unwrap()).map_err(|e| e.to_string())?.canonical_json();
    let second = run_suite(&SuiteConfig::from_json(text).unwrap()).map_err(|e| e.to_string())?.canonical_json();
    if first != second {
        return Err("two runs differ".into());
    }
    let seq = SuiteConfig { execution: phihh::Execution::Sequential, ..SuiteConfig::from_json(text).unwrap() };
    let third = run_suite(&seq).map_err(|e| e.to_string())?.canonical_json();
    if third != first {
        return Err("sequential run differs from parallel run".into());
    }
    Ok(format!("{} bytes identical across two parallel runs and one sequential run", first.len()))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: usize, title: &str, outcome: Outcome| {
        match outcome {
            Ok(detail) => println!("[PASS] criterion {n}: {title}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {n}: {title}: {detail}");
            }
        }
    };
    report(1, "closed-form x^2 instance", criterion_1());
    report(2, "Hadamard chain for exp", criterion_2());
    report(3, "identity residuals", criterion_3());
    let start = Instant::now();
    let sweep = falsify_sweep(&soundness_config());
    let elapsed = start.elapsed();
    match sweep {
        Ok(records) => {
            report(4, "soundness sweep", criterion_4(&records, elapsed));
            report(5, "reduction to the real-line bounds", criterion_5());
            report(6, "dominance on the soundness sweep", criterion_6(&records));
        }
        Err(e) => {
            report(4, "soundness sweep", Err(e.to_string()));
            report(5, "reduction to the real-line bounds", criterion_5());
            report(6, "dominance on the soundness sweep", Err("sweep failed".into()));
        }
    }
    report(7, "derivative oracle", criterion_7());
    report(8, "determinism", criterion_8());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
