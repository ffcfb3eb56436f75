//! Exhaustive grid search, the reference the gradient-based search is
//! checked against. Uses no derivatives and no descent: a regular grid over
//! the region (plus a boundary sample for spheres), then repeated finer grids
//! around the best few grid points.

use super::{finish, lexicographic, prefer, validate, Candidate, ExtremumResult, Objective};
use crate::error::{Error, Result};
use crate::field::SourceSet;
use crate::region::Region;

/// Grid cost grows as `resolution^D`; beyond this the oracle refuses.
pub const ORACLE_MAX_DIM: usize = 4;

/// Grid points kept for refinement.
const KEEP: usize = 4;
/// Points per axis in each refinement grid.
const REFINE_POINTS: usize = 11;
/// Refinement stops when the grid spacing is below this times the region scale.
const REFINE_FLOOR: f64 = 1e-11;

fn bounding_box(region: &Region) -> (Vec<f64>, Vec<f64>) {
    match region {
        Region::Sphere { center, radius } => (
            center.iter().map(|c| c - radius).collect(),
            center.iter().map(|c| c + radius).collect(),
        ),
        Region::Box { lower, upper } => (lower.to_vec(), upper.to_vec()),
    }
}

fn axis_value(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

/// Calls `visit` on every point of the `n^dim` grid spanning `[lo, hi]`.
fn for_each_grid_point(lo: &[f64], hi: &[f64], n: usize, mut visit: impl FnMut(&[f64])) {
    let dim = lo.len();
    let mut index = vec![0usize; dim];
    let mut x: Vec<f64> = lo.to_vec();
    loop {
        for k in 0..dim {
            x[k] = axis_value(lo[k], hi[k], index[k], n);
        }
        visit(&x);
        let mut k = 0;
        loop {
            if k == dim {
                return;
            }
            index[k] += 1;
            if index[k] < n {
                break;
            }
            index[k] = 0;
            k += 1;
        }
    }
}

/// Keeps the `KEEP` best distinct points seen.
struct Leaders {
    objective: Objective,
    best: Vec<Candidate>,
}

impl Leaders {
    fn offer(&mut self, x: &[f64], value: f64) {
        let c = Candidate {
            x: x.to_vec(),
            value,
            converged: true,
        };
        if self.best.iter().any(|b| b.x == c.x) {
            return;
        }
        if self.best.len() == KEEP {
            if !prefer(self.objective, &c, self.best.last().expect("full")) {
                return;
            }
            self.best.pop();
        }
        let pos = self
            .best
            .iter()
            .position(|b| prefer(self.objective, &c, b))
            .unwrap_or(self.best.len());
        self.best.insert(pos, c);
    }
}

fn check_oracle_args(sources: &SourceSet, region: &Region, resolution: usize) -> Result<()> {
    validate(sources, region)?;
    let dim = region.dim();
    if dim > ORACLE_MAX_DIM {
        return Err(Error::DimensionTooLarge {
            dim,
            max: ORACLE_MAX_DIM,
        });
    }
    if resolution < 3 {
        return Err(Error::InvalidArgument(format!(
            "grid resolution must be at least 3, got {resolution}"
        )));
    }
    Ok(())
}

/// Single-level sweep: the best grid point, with no refinement.
pub fn grid_sweep(
    sources: &SourceSet,
    region: &Region,
    objective: Objective,
    resolution: usize,
) -> Result<ExtremumResult> {
    check_oracle_args(sources, region, resolution)?;
    let leaders = sweep(sources, region, objective, resolution)?;
    let best = leaders.best.into_iter().next().expect("grid is non-empty");
    finish(sources, region, objective, false, best, 0)
}

fn sweep(
    sources: &SourceSet,
    region: &Region,
    objective: Objective,
    resolution: usize,
) -> Result<Leaders> {
    let mut leaders = Leaders {
        objective,
        best: Vec::with_capacity(KEEP + 1),
    };
    let mut failure = None;
    let (lo, hi) = bounding_box(region);
    for_each_grid_point(&lo, &hi, resolution, |x| {
        if region.contains(x) {
            match sources.evaluate(x) {
                Ok(v) => leaders.offer(x, v),
                Err(e) => failure = Some(e),
            }
        }
    });
    if let Region::Sphere { center, radius } = region {
        // cube faces pushed radially onto the sphere
        let dim = center.len();
        for axis in 0..dim {
            for side in [-1.0, 1.0] {
                let mut flo = vec![-1.0; dim];
                let mut fhi = vec![1.0; dim];
                flo[axis] = side;
                fhi[axis] = side;
                let n = if dim == 1 { 1 } else { resolution };
                let mut visit = |v: &[f64]| {
                    let norm = crate::field::norm(v);
                    let x: Vec<f64> = center
                        .iter()
                        .zip(v)
                        .map(|(c, t)| c + radius * t / norm)
                        .collect();
                    match sources.evaluate(&x) {
                        Ok(value) => leaders.offer(&x, value),
                        Err(e) => failure = Some(e),
                    }
                };
                if n == 1 {
                    visit(&flo);
                } else {
                    for_each_grid_point(&flo, &fhi, n, visit);
                }
            }
        }
    }
    match failure {
        Some(e) => Err(e),
        None => Ok(leaders),
    }
}

/// Zooms a grid onto `start`: each round samples `REFINE_POINTS^D` points
/// within two spacings of the incumbent (mapped into the region) and moves
/// to the best of them.
fn refine(
    sources: &SourceSet,
    region: &Region,
    objective: Objective,
    start: Candidate,
    mut spacing: Vec<f64>,
) -> Result<Candidate> {
    let floor = REFINE_FLOOR * region.scale();
    let mut best = start;
    while spacing.iter().cloned().fold(0.0, f64::max) > floor {
        let lo: Vec<f64> = best
            .x
            .iter()
            .zip(&spacing)
            .map(|(c, h)| c - 2.0 * h)
            .collect();
        let hi: Vec<f64> = best
            .x
            .iter()
            .zip(&spacing)
            .map(|(c, h)| c + 2.0 * h)
            .collect();
        let mut round = best.clone();
        let mut failure = None;
        for_each_grid_point(&lo, &hi, REFINE_POINTS, |x| {
            let mut y = x.to_vec();
            region.project(&mut y);
            match sources.evaluate(&y) {
                Ok(value) => {
                    let c = Candidate {
                        x: y,
                        value,
                        converged: true,
                    };
                    if prefer(objective, &c, &round) {
                        round = c;
                    }
                }
                Err(e) => failure = Some(e),
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        best = round;
        for h in &mut spacing {
            *h *= 4.0 / (REFINE_POINTS - 1) as f64;
        }
    }
    Ok(best)
}

/// Best point over the region by exhaustive grid evaluation at `resolution`
/// points per axis, refined by nested grids. Limited to `D <= 4`.
pub fn brute_force_oracle(
    sources: &SourceSet,
    region: &Region,
    objective: Objective,
    resolution: usize,
) -> Result<ExtremumResult> {
    check_oracle_args(sources, region, resolution)?;
    let leaders = sweep(sources, region, objective, resolution)?;
    let (lo, hi) = bounding_box(region);
    let spacing: Vec<f64> = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| (h - l) / (resolution - 1) as f64)
        .collect();
    let mut refined = Vec::with_capacity(leaders.best.len());
    for c in leaders.best {
        refined.push(refine(sources, region, objective, c, spacing.clone())?);
    }
    let best = refined
        .into_iter()
        .reduce(|a, b| match objective.compare(a.value, b.value) {
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Equal => {
                if lexicographic(&b.x, &a.x).is_lt() {
                    b
                } else {
                    a
                }
            }
        })
        .expect("grid is non-empty");
    finish(sources, region, objective, false, best, 0)
}
