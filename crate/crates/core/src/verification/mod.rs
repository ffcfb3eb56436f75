//! Finite-difference oracles and randomized probes that tie the analytic
//! machinery to brute-force evidence. Every probe is deterministic in its
//! seed and reports the worst observed margin alongside the failure count.

mod dd;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counterexample::{self, build_counterexample};
use crate::error::{Error, Result};
use crate::field::{self, Point, SourceSet};
use crate::region::Region;
use crate::search::{
    brute_force_oracle, find_extremum, search_boundary, search_plan, Location, Objective,
    SearchOptions, SearchPlan,
};

/// Default finite-difference step.
pub const FD_STEP: f64 = 1e-5;
/// Stencil points closer than this to a source are rejected.
pub const STENCIL_MARGIN: f64 = 1e-3;

pub const GRADIENT_TOLERANCE: f64 = 1e-6;
/// Components smaller than this fraction of the largest one are compared against it.
pub const GRADIENT_FLOOR: f64 = 1e-3;
pub const LAPLACIAN_TOLERANCE: f64 = 1e-4;
/// Absolute bound on the finite-difference Laplacian when `D = 4`.
pub const HARMONIC_TOLERANCE: f64 = 1e-3;
/// Relative slack allowed between interior samples and the boundary extremum.
pub const PRINCIPLE_TOLERANCE: f64 = 1e-9;
pub const SANDWICH_TOLERANCE: f64 = 1e-10;
pub const ORACLE_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub probe: String,
    pub trials: usize,
    pub failures: usize,
    /// Largest violation seen; negative values are the smallest safety margin.
    pub worst_violation: f64,
    pub tolerance: f64,
    pub seed: u64,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn from_violations(
        probe: impl Into<String>,
        tolerance: f64,
        seed: u64,
        violations: impl IntoIterator<Item = f64>,
    ) -> Self {
        let mut trials = 0;
        let mut failures = 0;
        let mut worst = f64::NEG_INFINITY;
        for v in violations {
            trials += 1;
            // NaN counts as a failure
            if !(v <= tolerance) {
                failures += 1;
            }
            worst = if v.is_nan() { v } else { worst.max(v) };
        }
        Self {
            probe: probe.into(),
            trials,
            failures,
            worst_violation: worst,
            tolerance,
            seed,
        }
    }
}

impl fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: trials={} failures={} worst={:.3e} tol={:.1e} seed={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.probe,
            self.trials,
            self.failures,
            self.worst_violation,
            self.tolerance,
            self.seed
        )
    }
}

fn check_stencil(sources: &SourceSet, x: &[f64]) -> Result<()> {
    let d2 = sources.min_squared_distance(x);
    if d2 < STENCIL_MARGIN * STENCIL_MARGIN {
        let index = sources
            .sources()
            .iter()
            .position(|s| field::squared_distance(x, s) == d2)
            .unwrap_or(0);
        return Err(Error::CoincidentSource {
            index,
            distance_sq: d2,
        });
    }
    Ok(())
}

fn check_offsets(sources: &SourceSet, x: &[f64], axis: usize, h: f64) -> Result<()> {
    for t in [h, -h] {
        let mut y = x.to_vec();
        y[axis] += t;
        check_stencil(sources, &y)?;
    }
    Ok(())
}

/// Central differences `(J(x + h e_k) - J(x - h e_k)) / 2h`.
///
/// Stencil values are summed in double-double precision so the quotient
/// carries truncation error only.
pub fn fd_gradient(sources: &SourceSet, x: &[f64], h: f64) -> Result<Vec<f64>> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "step must be positive, got {h}"
        )));
    }
    field::check_dim(sources.dim(), x.len())?;
    check_stencil(sources, x)?;
    (0..x.len())
        .map(|k| {
            check_offsets(sources, x, k, h)?;
            let plus = dd::evaluate_offset(sources, x, k, h);
            let minus = dd::evaluate_offset(sources, x, k, -h);
            Ok((plus - minus).to_f64() / (2.0 * h))
        })
        .collect()
}

/// `sum_k (J(x + h e_k) - 2 J(x) + J(x - h e_k)) / h^2`, with the same
/// extended-precision stencil sums as [`fd_gradient`].
pub fn fd_laplacian(sources: &SourceSet, x: &[f64], h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "step must be positive, got {h}"
        )));
    }
    field::check_dim(sources.dim(), x.len())?;
    check_stencil(sources, x)?;
    let center = dd::evaluate_offset(sources, x, 0, 0.0);
    let mut total = 0.0;
    for k in 0..x.len() {
        check_offsets(sources, x, k, h)?;
        let plus = dd::evaluate_offset(sources, x, k, h);
        let minus = dd::evaluate_offset(sources, x, k, -h);
        total += (plus - center - center + minus).to_f64() / (h * h);
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionKind {
    Sphere,
    Box,
}

pub fn random_unit_vector<R: Rng>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = field::norm(&v);
        if n > 1e-12 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// A random region with 1 to 6 sources placed uniformly on a shell between
/// 1.5 and 3 times the region's circumradius, weights in `[0.5, 2]`.
pub fn random_config<R: Rng>(dim: usize, kind: RegionKind, rng: &mut R) -> (SourceSet, Region) {
    let center: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let region = match kind {
        RegionKind::Sphere => Region::sphere(
            Point::new(center.clone()).expect("finite"),
            rng.random_range(0.5..1.5),
        ),
        RegionKind::Box => {
            let half: Vec<f64> = (0..dim).map(|_| rng.random_range(0.5..1.5)).collect();
            Region::cuboid(
                Point::new(center.iter().zip(&half).map(|(c, h)| c - h).collect()).expect("finite"),
                Point::new(center.iter().zip(&half).map(|(c, h)| c + h).collect()).expect("finite"),
            )
        }
    }
    .expect("valid random region");
    let radius = region.circumradius();
    let n = rng.random_range(1..=6);
    let mut rows = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for _ in 0..n {
        let dir = random_unit_vector(dim, rng);
        let rho = rng.random_range(1.5 * radius..3.0 * radius);
        rows.push(center.iter().zip(&dir).map(|(c, d)| c + rho * d).collect());
        weights.push(rng.random_range(0.5..2.0));
    }
    let sources = SourceSet::from_rows(dim, rows, weights).expect("valid random sources");
    (sources, region)
}

/// Uniform point of the open ball.
pub fn random_in_ball<R: Rng>(center: &[f64], radius: f64, rng: &mut R) -> Vec<f64> {
    let dir = random_unit_vector(center.len(), rng);
    let rho = radius * rng.random::<f64>().powf(1.0 / center.len() as f64);
    center.iter().zip(&dir).map(|(c, d)| c + rho * d).collect()
}

fn config_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

/// Analytic gradient against central differences at a random interior point
/// of each of `n_configs` random configurations.
pub fn gradient_probe(dim: usize, n_configs: usize, seed: u64) -> Result<ProbeReport> {
    let violations = (0..n_configs)
        .into_par_iter()
        .map(|i| {
            let mut rng = config_rng(seed, i);
            let (sources, region) = random_config(dim, RegionKind::Sphere, &mut rng);
            let x = random_in_ball(&region.center(), region.circumradius(), &mut rng);
            let exact = sources.gradient(&x)?;
            let approx = fd_gradient(&sources, &x, FD_STEP)?;
            let largest = exact.iter().fold(0.0f64, |m, g| m.max(g.abs()));
            Ok(exact
                .iter()
                .zip(&approx)
                .map(|(e, a)| (e - a).abs() / e.abs().max(GRADIENT_FLOOR * largest))
                .fold(0.0, f64::max))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport::from_violations(
        format!("gradient D={dim}"),
        GRADIENT_TOLERANCE,
        seed,
        violations,
    ))
}

/// Closed-form Laplacian against second differences. For `D = 4` the
/// closed form must be exactly zero and the difference estimate below
/// [`HARMONIC_TOLERANCE`]; otherwise the relative error is checked.
pub fn laplacian_probe(dim: usize, n_configs: usize, seed: u64) -> Result<ProbeReport> {
    let violations = (0..n_configs)
        .into_par_iter()
        .map(|i| {
            let mut rng = config_rng(seed, i);
            let (sources, region) = random_config(dim, RegionKind::Sphere, &mut rng);
            let x = random_in_ball(&region.center(), region.circumradius(), &mut rng);
            let exact = sources.laplacian(&x)?;
            let approx = fd_laplacian(&sources, &x, FD_STEP)?;
            Ok(if dim == 4 {
                if exact != 0.0 {
                    f64::INFINITY
                } else {
                    // rescaled so the shared tolerance applies
                    approx.abs() / HARMONIC_TOLERANCE * LAPLACIAN_TOLERANCE
                }
            } else {
                (exact - approx).abs() / exact.abs()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport::from_violations(
        format!("laplacian D={dim}"),
        LAPLACIAN_TOLERANCE,
        seed,
        violations,
    ))
}

/// Largest relative amount by which an interior sample beats the boundary
/// extremum (negative when the boundary wins everywhere). Samples are the
/// centre plus uniform points of the open ball.
fn interior_excess(
    sources: &SourceSet,
    center: &[f64],
    radius: f64,
    objective: Objective,
    boundary_value: f64,
    n_samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<f64> {
    let sign = objective.sign();
    let mut worst = f64::NEG_INFINITY;
    for k in 0..n_samples {
        let x = if k == 0 {
            center.to_vec()
        } else {
            random_in_ball(center, radius, rng)
        };
        let v = sources.evaluate(&x)?;
        worst = worst.max(sign * (v - boundary_value) / boundary_value.abs());
    }
    Ok(worst)
}

fn principle_trial(
    sources: &SourceSet,
    region: &Region,
    objective: Objective,
    n_samples: usize,
    seed: u64,
    rng: &mut ChaCha8Rng,
) -> Result<f64> {
    let edge = search_boundary(sources, region, objective, &SearchOptions::with_seed(seed))?;
    interior_excess(
        sources,
        &region.center(),
        region.circumradius(),
        objective,
        edge.value,
        n_samples,
        rng,
    )
}

/// Empirical maximum (or minimum) principle: on random sphere regions no
/// interior sample may beat the boundary-search extremum. Requires `D <= 4`
/// for maxima and `D >= 4` for minima.
pub fn maximum_principle_probe(
    dim: usize,
    objective: Objective,
    n_configs: usize,
    n_samples: usize,
    seed: u64,
) -> Result<ProbeReport> {
    if search_plan(dim, objective)? != SearchPlan::BoundaryOnly {
        return Err(Error::UnsupportedDimension {
            dim,
            reason: "the boundary principle does not hold for this objective",
        });
    }
    let violations = (0..n_configs)
        .into_par_iter()
        .map(|i| {
            let mut rng = config_rng(seed, i);
            let (sources, region) = random_config(dim, RegionKind::Sphere, &mut rng);
            let search_seed = rng.random();
            principle_trial(
                &sources,
                &region,
                objective,
                n_samples,
                search_seed,
                &mut rng,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport::from_violations(
        format!("{objective}-principle D={dim}"),
        PRINCIPLE_TOLERANCE,
        seed,
        violations,
    ))
}

/// The same interior-versus-boundary check on the cross-polytope
/// configuration inside `sphere(origin, r)`: maxima for `D >= 5`, minima
/// for `D <= 3`. For `r` below the certified radius the probe fails, which
/// is the expected outcome.
pub fn counterexample_probe(
    dim: usize,
    r: f64,
    n_samples: usize,
    seed: u64,
) -> Result<ProbeReport> {
    let objective = match dim {
        1..=3 => Objective::Minimum,
        5.. => Objective::Maximum,
        _ => {
            return Err(Error::UnsupportedDimension {
                dim,
                reason: "D = 4 has no interior extremum",
            })
        }
    };
    if !(r > 0.0 && r < counterexample::SOURCE_RADIUS) {
        return Err(Error::DeltaOutOfRange(r));
    }
    let sources = build_counterexample(dim)?;
    let region = Region::sphere(Point::origin(dim), r)?;
    let mut rng = config_rng(seed, 0);
    let v = principle_trial(&sources, &region, objective, n_samples, seed, &mut rng)?;
    Ok(ProbeReport::from_violations(
        format!("{objective}-principle counterexample D={dim} r={r}"),
        PRINCIPLE_TOLERANCE,
        seed,
        [v],
    ))
}

/// `lower_bound <= j_symmetric <= upper_bound` on random directions scaled to each radius.
pub fn bound_sandwich_probe(
    dim: usize,
    r_grid: &[f64],
    n_dirs: usize,
    seed: u64,
) -> Result<ProbeReport> {
    let mut violations = Vec::with_capacity(r_grid.len() * n_dirs);
    for (i, &r) in r_grid.iter().enumerate() {
        let upper = counterexample::upper_bound(dim, r)?;
        let lower = counterexample::lower_bound(dim, r)?;
        let mut rng = config_rng(seed, i);
        for _ in 0..n_dirs {
            let delta: Vec<f64> = random_unit_vector(dim, &mut rng)
                .into_iter()
                .map(|u| u * r)
                .collect();
            counterexample::check_on_sphere(&delta, r)?;
            let j = counterexample::j_symmetric(dim, &delta)?;
            violations.push((lower - j).max(j - upper) / (1.0 + j.abs()));
        }
    }
    Ok(ProbeReport::from_violations(
        format!("bound-sandwich D={dim}"),
        SANDWICH_TOLERANCE,
        seed,
        violations,
    ))
}

/// Search result against the grid oracle on random box regions, for both
/// objectives. A trial also fails if a boundary-only plan reports an interior point.
pub fn oracle_agreement_probe(
    dim: usize,
    n_configs: usize,
    resolution: usize,
    seed: u64,
) -> Result<ProbeReport> {
    let violations = (0..n_configs)
        .into_par_iter()
        .map(|i| {
            let mut rng = config_rng(seed, i);
            let (sources, region) = random_config(dim, RegionKind::Box, &mut rng);
            let opts = SearchOptions::with_seed(rng.random());
            let mut out = Vec::with_capacity(2);
            for objective in [Objective::Maximum, Objective::Minimum] {
                let found = find_extremum(&sources, &region, objective, &opts)?;
                let oracle = brute_force_oracle(&sources, &region, objective, resolution)?;
                let mut v = (found.value - oracle.value).abs() / oracle.value.abs();
                if found.restricted && found.location != Location::Boundary {
                    v = f64::INFINITY;
                }
                out.push(v);
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport::from_violations(
        format!("oracle-agreement D={dim} resolution={resolution}"),
        ORACLE_TOLERANCE,
        seed,
        violations.into_iter().flatten(),
    ))
}
