//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use invsq::counterexample::{
    build_counterexample, center_value, j_symmetric, lower_bound, upper_bound,
};
use invsq::rmax::{
    rmax_approx_quadratic, rmax_approx_simple, rmax_exact, rmax_min_case, rmax_min_case_from_root,
};
use invsq::verification::{
    bound_sandwich_probe, gradient_probe, laplacian_probe, maximum_principle_probe,
    oracle_agreement_probe, ProbeReport,
};
use invsq::{find_extremum, Location, Objective, Point, Region, SearchOptions};

const TABLE_DIMS: [usize; 10] = [5, 6, 7, 8, 9, 10, 15, 20, 50, 100];
const TABLE_VALUES: [f64; 10] = [
    0.0603, 0.0783, 0.0892, 0.0966, 0.1021, 0.1063, 0.1183, 0.1240, 0.1337, 0.1369,
];
const TABLE_TOLERANCE: f64 = 5e-5;
const SEED: u64 = 20240611;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn probes_pass(reports: &[ProbeReport]) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.to_string())
        .collect();
    let worst = reports
        .iter()
        .map(|r| r.worst_violation / r.tolerance)
        .fold(f64::NEG_INFINITY, f64::max);
    let trials: usize = reports.iter().map(|r| r.trials).sum();
    if failed.is_empty() {
        Ok(format!(
            "{} probes, {trials} trials, worst violation {worst:.2e} of tolerance",
            reports.len()
        ))
    } else {
        Err(failed.join("; "))
    }
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = invsq::cli::run(
        ["invsq", "rmax", "--dims", "5..10,15,20,50,100"],
        &mut out,
        &mut err,
    );
    let elapsed = start.elapsed();
    if code != 0 {
        return Err(format!(
            "exit code {code}: {}",
            String::from_utf8_lossy(&err)
        ));
    }
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    let rows: Vec<&str> = text.lines().skip(1).collect();
    if rows.len() != TABLE_DIMS.len() {
        return Err(format!("expected 10 rows, got {}", rows.len()));
    }
    let mut worst = 0.0f64;
    for ((row, &d), &expected) in rows.iter().zip(&TABLE_DIMS).zip(&TABLE_VALUES) {
        let cols: Vec<&str> = row.split(',').collect();
        if cols[0] != d.to_string() || cols[4] != "maximum" {
            return Err(format!("unexpected row `{row}`"));
        }
        let printed: f64 = cols[1]
            .parse()
            .map_err(|_| format!("bad value in `{row}`"))?;
        let exact = rmax_exact(d).map_err(|e| e.to_string())?;
        worst = worst
            .max((printed - expected).abs())
            .max((exact - expected).abs());
    }
    check(
        worst <= TABLE_TOLERANCE && elapsed < Duration::from_secs(1),
        format!("max deviation {worst:.1e}, runtime {elapsed:.2?}"),
    )
}

fn large_dimension_root() -> Outcome {
    let r = rmax_exact(1_000_000).map_err(|e| e.to_string())?;
    check(
        (r - 0.1400).abs() <= TABLE_TOLERANCE,
        format!("r_max(1e6) = {r:.6}"),
    )
}

fn approximations() -> Outcome {
    let mut worst_rel = 0.0f64;
    for &d in &TABLE_DIMS {
        let exact = rmax_exact(d).map_err(|e| e.to_string())?;
        let quad = rmax_approx_quadratic(d).map_err(|e| e.to_string())?;
        let simple = rmax_approx_simple(d).map_err(|e| e.to_string())?;
        worst_rel = worst_rel.max((quad - exact).abs() / exact);
        if simple > exact {
            return Err(format!(
                "simple approximation {simple} exceeds {exact} at D={d}"
            ));
        }
    }
    let limit = (1.0f64 / 52.0).sqrt();
    let far = rmax_approx_simple(1_000_000_000).map_err(|e| e.to_string())?;
    let mid = rmax_approx_simple(1_000).map_err(|e| e.to_string())?;
    let converging = (far - limit).abs() < 1e-6 && (far - limit).abs() < (mid - limit).abs();
    check(
        worst_rel < 5e-4 && converging && (limit - 0.1387).abs() < 5e-5,
        format!("quadratic rel. error {worst_rel:.1e}; simple(1e9) = {far:.6}"),
    )
}

fn min_case_radii() -> Outcome {
    let mut detail = Vec::new();
    for (d, expected) in [(2, 0.3218), (3, 0.1967)] {
        let r = rmax_min_case(d).map_err(|e| e.to_string())?;
        let root = rmax_min_case_from_root(d).map_err(|e| e.to_string())?;
        if (r - expected).abs() > TABLE_TOLERANCE || (r - root).abs() > 1e-10 {
            return Err(format!("D={d}: closed form {r}, root {root}"));
        }
        detail.push(format!(
            "D={d}: {r:.6} (root diff {:.0e})",
            (r - root).abs()
        ));
    }
    Ok(detail.join(", "))
}

fn center_values() -> Outcome {
    let mut worst = 0.0f64;
    for d in 1..=10 {
        let set = build_counterexample(d).map_err(|e| e.to_string())?;
        let v = set.evaluate(&vec![0.0; d]).map_err(|e| e.to_string())?;
        let expected = 8.0 * d as f64;
        worst = worst.max((v - expected).abs() / expected);
        worst = worst.max((center_value(d) - expected).abs() / expected);
    }
    check(
        worst <= 1e-12,
        format!("max relative error {worst:.1e} for D=1..10"),
    )
}

fn laplacian() -> Outcome {
    let reports = (1..=8)
        .map(|d| laplacian_probe(d, 100, SEED))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    probes_pass(&reports)
}

fn gradient() -> Outcome {
    let reports = (1..=6)
        .map(|d| gradient_probe(d, 100, SEED))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    probes_pass(&reports)
}

fn sandwich() -> Outcome {
    let grid: Vec<f64> = (1..=29).map(|k| k as f64 * 0.01).collect();
    let reports = [2, 3, 5, 6]
        .iter()
        .map(|&d| bound_sandwich_probe(d, &grid, 1000, SEED))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    // spot check along an axis as well
    for d in [2, 3, 5, 6] {
        for &r in &grid {
            let mut delta = vec![0.0; d];
            delta[0] = r;
            let j = j_symmetric(d, &delta).map_err(|e| e.to_string())?;
            let (lo, hi) = (
                lower_bound(d, r).map_err(|e| e.to_string())?,
                upper_bound(d, r).map_err(|e| e.to_string())?,
            );
            if lo - j > 1e-10 || j - hi > 1e-10 {
                return Err(format!(
                    "axis direction D={d} r={r}: {lo} <= {j} <= {hi} fails"
                ));
            }
        }
    }
    probes_pass(&reports)
}

fn principle_reports(seed: u64) -> Result<Vec<ProbeReport>, String> {
    let mut reports = Vec::new();
    for d in 1..=4 {
        reports.push(maximum_principle_probe(
            d,
            Objective::Maximum,
            50,
            500,
            seed,
        ));
    }
    for d in 4..=6 {
        reports.push(maximum_principle_probe(
            d,
            Objective::Minimum,
            50,
            500,
            seed,
        ));
    }
    reports
        .into_iter()
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())
}

fn principle() -> Outcome {
    let start = Instant::now();
    let reports = principle_reports(SEED)?;
    let elapsed = start.elapsed();
    let summary = probes_pass(&reports)?;
    check(
        elapsed < Duration::from_secs(30),
        format!("{summary}, runtime {elapsed:.2?}"),
    )
}

fn interior_extremum(dim: usize, radius: f64, objective: Objective) -> Result<(f64, f64), String> {
    let sources = build_counterexample(dim).map_err(|e| e.to_string())?;
    let region = Region::sphere(Point::origin(dim), radius).map_err(|e| e.to_string())?;
    let r = find_extremum(
        &sources,
        &region,
        objective,
        &SearchOptions::with_seed(SEED),
    )
    .map_err(|e| e.to_string())?;
    if r.location != Location::Interior {
        return Err(format!(
            "D={dim}: extremum reported on the boundary at {:?}",
            r.point
        ));
    }
    Ok((r.point.norm(), r.value))
}

fn interior_demonstration() -> Outcome {
    let (n5, v5) = interior_extremum(5, 0.05, Objective::Maximum)?;
    let (n2, v2) = interior_extremum(2, 0.30, Objective::Minimum)?;
    check(
        n5 < 1e-6 && (v5 - 40.0).abs() <= 1e-9 && n2 < 1e-6 && (v2 - 16.0).abs() <= 1e-9,
        format!("D=5 max {v5:.12} at |x|={n5:.1e}; D=2 min {v2:.12} at |x|={n2:.1e}"),
    )
}

fn oracle_reports(seed: u64) -> Result<Vec<ProbeReport>, String> {
    Ok(vec![
        oracle_agreement_probe(2, 20, 101, seed).map_err(|e| e.to_string())?,
        oracle_agreement_probe(3, 20, 41, seed).map_err(|e| e.to_string())?,
    ])
}

fn oracle() -> Outcome {
    probes_pass(&oracle_reports(SEED)?)
}

fn demonstration_report() -> Result<serde_json::Value, String> {
    let (n5, v5) = interior_extremum(5, 0.05, Objective::Maximum)?;
    let (n2, v2) = interior_extremum(2, 0.30, Objective::Minimum)?;
    Ok(serde_json::json!({ "d5": [n5, v5], "d2": [n2, v2] }))
}

fn deterministic_run() -> Result<String, String> {
    let all = serde_json::json!({
        "principle": principle_reports(SEED)?,
        "demonstration": demonstration_report()?,
        "oracle": oracle_reports(SEED)?,
    });
    serde_json::to_string_pretty(&all).map_err(|e| e.to_string())
}

fn determinism() -> Outcome {
    let first = deterministic_run()?;
    let second = deterministic_run()?;
    check(
        first == second,
        format!("two runs of criteria 9-11, {} bytes each", first.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("table reproduction", table_reproduction),
        ("large-dimension root", large_dimension_root),
        ("radius approximations", approximations),
        ("minimum-case radii", min_case_radii),
        ("counterexample centre value", center_values),
        ("laplacian closed form", laplacian),
        ("analytic gradient", gradient),
        ("bound sandwich", sandwich),
        ("empirical extremum principles", principle),
        ("interior extremum demonstration", interior_demonstration),
        ("grid oracle agreement", oracle),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
