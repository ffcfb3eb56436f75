//! Global extremum search for the field over a closed region.
//!
//! When the dimension guarantees that the requested extremum lies on the
//! boundary (maxima for `D <= 4`, minima for `D >= 4`) only the boundary is
//! searched, one dimension fewer than the region itself. Otherwise the
//! interior and the boundary are both searched and the better result wins.
//!
//! Each local search is projected gradient ascent (or descent) with a
//! halving line search; starts are a seeded Halton spread over the surface
//! mixed with the best points of a larger screening pool.

mod oracle;
mod sampling;
mod surface;

use std::cmp::Ordering;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{self, Point, SourceSet};
use crate::region::{Region, SOURCE_MARGIN};

pub use oracle::{brute_force_oracle, grid_sweep, ORACLE_MAX_DIM};
use sampling::ShiftedHalton;
use surface::Surface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Maximum,
    Minimum,
}

impl Objective {
    /// `+1` for maxima, `-1` for minima: searching maximises `sign * J`.
    pub fn sign(self) -> f64 {
        match self {
            Objective::Maximum => 1.0,
            Objective::Minimum => -1.0,
        }
    }

    /// Ordering where `Greater` means `a` is the better value.
    fn compare(self, a: f64, b: f64) -> Ordering {
        match self {
            Objective::Maximum => a.total_cmp(&b),
            Objective::Minimum => b.total_cmp(&a),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Maximum => "maximum",
            Objective::Minimum => "minimum",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchPlan {
    BoundaryOnly,
    FullRegion,
}

impl SearchPlan {
    pub fn label(self) -> &'static str {
        match self {
            SearchPlan::BoundaryOnly => "boundary",
            SearchPlan::FullRegion => "full",
        }
    }
}

/// Boundary-only exactly when the maximum (D <= 4) or minimum (D >= 4) principle applies.
pub fn search_plan(dim: usize, objective: Objective) -> Result<SearchPlan> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let boundary = match objective {
        Objective::Maximum => dim <= 4,
        Objective::Minimum => dim >= 4,
    };
    Ok(if boundary {
        SearchPlan::BoundaryOnly
    } else {
        SearchPlan::FullRegion
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Interior,
    Boundary,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Location::Interior => "interior",
            Location::Boundary => "boundary",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremumResult {
    pub point: Point,
    pub value: f64,
    pub location: Location,
    pub objective: Objective,
    /// Whether the search was restricted to the boundary.
    pub restricted: bool,
    pub starts_used: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub seed: u64,
    /// Starts per search surface; `None` means `max(8, 4D)`.
    pub starts: Option<usize>,
    /// Screening pool size as a multiple of the start count.
    pub pool_factor: usize,
    /// Stop (and report convergence) once the feasible gradient norm is below this.
    pub gradient_tolerance: f64,
    /// Stop once the line search needs steps shorter than this times the region scale.
    pub min_step: f64,
    /// First trial step as a fraction of the region scale.
    pub initial_step: f64,
    pub max_iterations: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            starts: None,
            pool_factor: 16,
            gradient_tolerance: 1e-10,
            min_step: 1e-12,
            initial_step: 0.1,
            max_iterations: 10_000,
        }
    }
}

impl SearchOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn start_count(&self, dim: usize) -> usize {
        self.starts.unwrap_or_else(|| (4 * dim).max(8)).max(1)
    }
}

/// State of a walker: position, value, and the norm of the feasible ascent direction.
#[derive(Debug, Clone)]
struct Iterate {
    x: Vec<f64>,
    value: f64,
    direction: Vec<f64>,
    slope: f64,
}

#[derive(Debug, Clone)]
struct Candidate {
    x: Vec<f64>,
    value: f64,
    converged: bool,
}

/// Better value wins; equal values go to the lexicographically smaller point.
fn prefer(objective: Objective, a: &Candidate, b: &Candidate) -> bool {
    match objective.compare(a.value, b.value) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => lexicographic(&a.x, &b.x) == Ordering::Less,
    }
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

fn reduce(
    objective: Objective,
    candidates: impl IntoIterator<Item = Candidate>,
) -> Option<Candidate> {
    candidates.into_iter().reduce(|best, c| {
        if prefer(objective, &c, &best) {
            c
        } else {
            best
        }
    })
}

struct Walker<'a> {
    sources: &'a SourceSet,
    surface: &'a Surface,
    objective: Objective,
    opts: &'a SearchOptions,
    scale: f64,
}

impl Walker<'_> {
    fn iterate(&self, mut x: Vec<f64>) -> Result<Iterate> {
        self.surface.project(&mut x);
        let (value, grad) = self.sources.value_and_gradient(&x)?;
        let sign = self.objective.sign();
        let ascent: Vec<f64> = grad.iter().map(|g| sign * g).collect();
        let direction = self.surface.feasible_direction(&x, &ascent);
        let slope = field::norm(&direction);
        Ok(Iterate {
            x,
            value,
            direction,
            slope,
        })
    }

    /// Improvement test. Within rounding noise of the current value the
    /// smaller feasible gradient wins, which lets the walk settle onto the
    /// stationary point instead of stalling a few ulps away from it.
    fn improves(&self, next: &Iterate, current: &Iterate) -> bool {
        let gain = self.objective.sign() * (next.value - current.value);
        let noise = 16.0 * f64::EPSILON * next.value.abs().max(current.value.abs());
        if gain > noise {
            true
        } else if gain < -noise {
            false
        } else {
            next.slope < current.slope
        }
    }

    fn step(&self, from: &Iterate, t: f64) -> Result<Iterate> {
        let x = from
            .x
            .iter()
            .zip(&from.direction)
            .map(|(x, d)| x + t * d / from.slope)
            .collect();
        self.iterate(x)
    }

    fn run(&self, start: Vec<f64>, mut trace: Option<&mut Vec<Vec<f64>>>) -> Result<Candidate> {
        let mut current = self.iterate(start)?;
        let t0 = self.opts.initial_step * self.scale;
        let t_min = self.opts.min_step * self.scale;
        if let Some(trace) = trace.as_deref_mut() {
            trace.push(current.x.clone());
        }
        for _ in 0..self.opts.max_iterations {
            if current.slope < self.opts.gradient_tolerance {
                break;
            }
            let mut t = t0;
            let mut accepted = None;
            while t >= t_min {
                let next = self.step(&current, t)?;
                if self.improves(&next, &current) {
                    accepted = Some(next);
                    break;
                }
                t *= 0.5;
            }
            let Some(mut best) = accepted else { break };
            // keep halving while the shorter step still does better
            loop {
                t *= 0.5;
                if t < t_min {
                    break;
                }
                let next = self.step(&current, t)?;
                if self.improves(&next, &best) {
                    best = next;
                } else {
                    break;
                }
            }
            current = best;
            if let Some(trace) = trace.as_deref_mut() {
                trace.push(current.x.clone());
            }
        }
        Ok(Candidate {
            converged: current.slope < self.opts.gradient_tolerance,
            x: current.x,
            value: current.value,
        })
    }
}

/// Multi-start search on one surface. Returns the best candidate and the number of starts.
fn multistart(
    walker: &Walker,
    starts: usize,
    anchors: Vec<Vec<f64>>,
    seed: u64,
) -> Result<(Candidate, usize)> {
    let Walker {
        sources,
        surface,
        objective,
        opts,
        ..
    } = *walker;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool_size = (starts * opts.pool_factor).max(starts);
    let pool: Vec<Vec<f64>> = if surface.sample_dim() == 0 {
        vec![surface.sample(&[])]
    } else {
        ShiftedHalton::new(surface.sample_dim(), &mut rng)
            .take(pool_size)
            .map(|u| surface.sample(&u))
            .collect()
    };
    let spread = starts.div_ceil(2).min(pool.len());
    let mut chosen: Vec<Vec<f64>> = pool[..spread].to_vec();
    let mut screened = pool[spread..]
        .iter()
        .map(|x| {
            Ok(Candidate {
                value: sources.evaluate(x)?,
                x: x.clone(),
                converged: false,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    screened.sort_by(|a, b| {
        objective
            .compare(b.value, a.value)
            .then_with(|| lexicographic(&a.x, &b.x))
    });
    chosen.extend(screened.into_iter().take(starts - spread).map(|c| c.x));
    chosen.extend(anchors);

    let used = chosen.len();
    let results = chosen
        .into_iter()
        .map(|x| walker.run(x, None))
        .collect::<Result<Vec<_>>>()?;
    let best = reduce(objective, results).expect("at least one start");
    Ok((best, used))
}

/// For maxima, the boundary points nearest each source make natural extra starts.
fn source_anchors(sources: &SourceSet, surface: &Surface, objective: Objective) -> Vec<Vec<f64>> {
    if objective != Objective::Maximum {
        return Vec::new();
    }
    sources
        .sources()
        .iter()
        .map(|s| {
            let mut x = s.to_vec();
            surface.project(&mut x);
            x
        })
        .collect()
}

fn derive_seed(seed: u64, stream: u64) -> u64 {
    seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn search_surfaces(
    sources: &SourceSet,
    region: &Region,
    objective: Objective,
    opts: &SearchOptions,
    surfaces: &[Surface],
    stream: u64,
) -> Result<(Candidate, usize)> {
    let dim = region.dim();
    let total = opts.start_count(dim);
    let per_surface = if surfaces.len() > 1 {
        total.div_ceil(surfaces.len()).max(2)
    } else {
        total
    };
    let mut used = 0;
    let mut best = Vec::with_capacity(surfaces.len());
    for (i, surface) in surfaces.iter().enumerate() {
        let walker = Walker {
            sources,
            surface,
            objective,
            opts,
            scale: region.scale(),
        };
        let (c, n) = multistart(
            &walker,
            per_surface,
            source_anchors(sources, surface, objective),
            derive_seed(opts.seed, stream * 1024 + i as u64),
        )?;
        used += n;
        best.push(c);
    }
    Ok((
        reduce(objective, best).expect("non-empty surface list"),
        used,
    ))
}

fn finish(
    sources: &SourceSet,
    region: &Region,
    objective: Objective,
    restricted: bool,
    best: Candidate,
    starts_used: usize,
) -> Result<ExtremumResult> {
    let value = sources.evaluate(&best.x)?;
    let location = if region.is_on_boundary(&best.x) {
        Location::Boundary
    } else {
        Location::Interior
    };
    Ok(ExtremumResult {
        point: Point::new(best.x)?,
        value,
        location,
        objective,
        restricted,
        starts_used,
        converged: best.converged,
    })
}

fn validate(sources: &SourceSet, region: &Region) -> Result<()> {
    field::check_dim(sources.dim(), region.dim())?;
    region.check_sources_outside(sources, SOURCE_MARGIN)
}

/// Global maximum or minimum of the field over `region`, following [`search_plan`].
pub fn find_extremum(
    sources: &SourceSet,
    region: &Region,
    objective: Objective,
    opts: &SearchOptions,
) -> Result<ExtremumResult> {
    validate(sources, region)?;
    match search_plan(region.dim(), objective)? {
        SearchPlan::BoundaryOnly => boundary_search(sources, region, objective, opts, true),
        SearchPlan::FullRegion => {
            let (edge, edge_starts) = search_surfaces(
                sources,
                region,
                objective,
                opts,
                &Surface::boundary(region),
                0,
            )?;
            let (inner, inner_starts) = search_surfaces(
                sources,
                region,
                objective,
                opts,
                &[Surface::solid(region)],
                1,
            )?;
            let best = reduce(objective, [edge, inner]).expect("two candidates");
            finish(
                sources,
                region,
                objective,
                false,
                best,
                edge_starts + inner_starts,
            )
        }
    }
}

/// Searches the boundary only, whatever the dimension says.
pub fn search_boundary(
    sources: &SourceSet,
    region: &Region,
    objective: Objective,
    opts: &SearchOptions,
) -> Result<ExtremumResult> {
    validate(sources, region)?;
    let restricted = search_plan(region.dim(), objective)? == SearchPlan::BoundaryOnly;
    boundary_search(sources, region, objective, opts, restricted)
}

fn boundary_search(
    sources: &SourceSet,
    region: &Region,
    objective: Objective,
    opts: &SearchOptions,
    restricted: bool,
) -> Result<ExtremumResult> {
    let (best, used) = search_surfaces(
        sources,
        region,
        objective,
        opts,
        &Surface::boundary(region),
        0,
    )?;
    finish(sources, region, objective, restricted, best, used)
}

/// Iterates of a single boundary walk on a sphere region, starting from `start`.
pub fn trace_sphere_walk(
    sources: &SourceSet,
    region: &Region,
    objective: Objective,
    start: &[f64],
    opts: &SearchOptions,
) -> Result<Vec<Point>> {
    validate(sources, region)?;
    field::check_dim(region.dim(), start.len())?;
    let Region::Sphere { .. } = region else {
        return Err(Error::InvalidRegion(
            "sphere walk traces need a sphere region".into(),
        ));
    };
    let surface = &Surface::boundary(region)[0];
    let walker = Walker {
        sources,
        surface,
        objective,
        opts,
        scale: region.scale(),
    };
    let mut trace = Vec::new();
    walker.run(start.to_vec(), Some(&mut trace))?;
    trace.into_iter().map(Point::new).collect()
}
