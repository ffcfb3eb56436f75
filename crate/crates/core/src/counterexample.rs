//! The cross-polytope configuration: `2D` unit-weight sources at `±1/2` on
//! each coordinate axis, for which the centre is an interior maximum when
//! `D >= 5` and an interior minimum when `D <= 3`.
//!
//! With `|Δ| = r < 1/2` the field reduces to
//!
//! ```text
//! J(Δ) = sum_i (1/2 + 2r^2) / ((1/4 + r^2)^2 - Δ_i^2)
//! ```
//!
//! and the bounds below come from replacing `Δ_i^4` by `r^4` or `0` in the
//! denominator of the equivalent form with denominator `(1/4 + r^2)^4 - Δ_i^4`.

use crate::error::{Error, Result};
use crate::field::{self, Point, SourceSet};

/// Radius of the sphere carrying the sources.
pub const SOURCE_RADIUS: f64 = 0.5;

/// Tolerance for `|Δ| = r` when a displacement is checked against a radius.
pub const SPHERE_TOLERANCE: f64 = 1e-9;

/// Sources `i < D` sit at `+1/2 e_i`, sources `D + i` at `-1/2 e_i`.
pub fn build_counterexample(dim: usize) -> Result<SourceSet> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut rows = Vec::with_capacity(2 * dim);
    for sign in [1.0, -1.0] {
        for axis in 0..dim {
            let mut row = vec![0.0; dim];
            row[axis] = sign * SOURCE_RADIUS;
            rows.push(row);
        }
    }
    SourceSet::from_rows(dim, rows, vec![1.0; 2 * dim])
}

/// `J(0) = 8D` for the configuration in dimension `dim`.
pub fn center_value(dim: usize) -> f64 {
    8.0 * dim as f64
}

fn check_radius(r: f64) -> Result<()> {
    if (0.0..SOURCE_RADIUS).contains(&r) {
        Ok(())
    } else {
        Err(Error::DeltaOutOfRange(r))
    }
}

/// Symmetric closed form of the field at displacement `delta` from the centre.
pub fn j_symmetric(dim: usize, delta: &[f64]) -> Result<f64> {
    field::check_dim(dim, delta.len())?;
    let r2: f64 = delta.iter().map(|d| d * d).sum();
    check_radius(r2.sqrt())?;
    let a = 0.25 + r2;
    let numer = 0.5 + 2.0 * r2;
    Ok(delta.iter().map(|d| numer / (a * a - d * d)).sum())
}

/// Confirms that `delta` lies on the sphere of radius `r` (to [`SPHERE_TOLERANCE`]).
pub fn check_on_sphere(delta: &[f64], r: f64) -> Result<()> {
    let norm = field::norm(delta);
    if (norm - r).abs() <= SPHERE_TOLERANCE {
        Ok(())
    } else {
        Err(Error::NotOnSphere { norm, radius: r })
    }
}

fn bound_numerator(dim: usize, r2: f64) -> f64 {
    let d = dim as f64;
    // D/8 + (D+2) r^2 + 2D r^4
    (2.0 * d * r2 + (d + 2.0)) * r2 + d / 8.0
}

/// Upper bound of `J` over the sphere `|Δ| = r`.
pub fn upper_bound(dim: usize, r: f64) -> Result<f64> {
    check_radius(r)?;
    let r2 = r * r;
    let a = 0.25 + r2;
    Ok(a / (a.powi(4) - r2 * r2) * bound_numerator(dim, r2))
}

/// Lower bound of `J` over the sphere `|Δ| = r`.
pub fn lower_bound(dim: usize, r: f64) -> Result<f64> {
    check_radius(r)?;
    let r2 = r * r;
    let a = 0.25 + r2;
    Ok(bound_numerator(dim, r2) / a.powi(3))
}

/// Numerator of `upper_bound(D, r) - 8D` over its positive denominator
/// `(1/4 + r^2)^4 - r^4`:
/// `-8D r^8 - 6D r^6 + ((13D + 4)/2) r^4 + ((4 - D)/8) r^2`.
pub fn diff_ub_numerator(dim: usize, r: f64) -> f64 {
    let d = dim as f64;
    let x = r * r;
    x * (((-8.0 * d * x - 6.0 * d) * x + (13.0 * d + 4.0) / 2.0) * x + (4.0 - d) / 8.0)
}

/// Numerator of `lower_bound(D, r) - 8D` over its positive denominator
/// `(1/4 + r^2)^3`: `-8D r^6 - 4D r^4 + ((4 - D)/2) r^2`.
pub fn diff_lb_numerator(dim: usize, r: f64) -> f64 {
    let d = dim as f64;
    let x = r * r;
    x * ((-8.0 * d * x - 4.0 * d) * x + (4.0 - d) / 2.0)
}

/// The point `r` along the first axis.
pub fn axis_displacement(dim: usize, r: f64) -> Point {
    let mut v = vec![0.0; dim];
    v[0] = r;
    Point::new(v).expect("finite")
}

/// The point at distance `r` along the main diagonal.
pub fn diagonal_displacement(dim: usize, r: f64) -> Point {
    Point::new(vec![r / (dim as f64).sqrt(); dim]).expect("finite")
}
