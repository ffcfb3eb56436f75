//! Radii around the cross-polytope centre within which the centre is a
//! certified interior maximum (`D >= 5`) or minimum (`D <= 3`).
//!
//! For the maximum case the radius is `sqrt(x)` with `x` the smallest
//! positive root of
//!
//! ```text
//! -8D x^3 - 6D x^2 + ((13D + 4)/2) x + (4 - D)/8 = 0
//! ```
//!
//! and the two closed-form approximations drop the `x^2, x^3` terms or only
//! the `x^3` term. The minimum case has the closed form
//! `sqrt(1/sqrt(4D) - 1/4)`.

use std::fmt;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::{smallest_positive_root, Polynomial, RootSearch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RmaxCase {
    Maximum,
    Minimum,
}

impl fmt::Display for RmaxCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RmaxCase::Maximum => "maximum",
            RmaxCase::Minimum => "minimum",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RmaxReport {
    pub dimension: usize,
    pub exact_root: f64,
    pub approx_simple: Option<f64>,
    pub approx_quadratic: Option<f64>,
    pub case: RmaxCase,
    /// Set when the radius reaches the source sphere (only `D = 1`).
    pub warning: Option<String>,
}

const MAX_CASE_ONLY: &str = "the assured-decrease radius needs D >= 5";
const MIN_CASE_ONLY: &str = "the assured-increase radius needs 1 <= D <= 3";
const HARMONIC: &str = "D = 4 is harmonic; both extrema lie on the boundary";

fn require_max_case(dim: usize) -> Result<()> {
    if dim >= 5 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension {
            dim,
            reason: MAX_CASE_ONLY,
        })
    }
}

fn require_min_case(dim: usize) -> Result<()> {
    if (1..=3).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension {
            dim,
            reason: MIN_CASE_ONLY,
        })
    }
}

/// The cubic in `x = r^2` whose smallest positive root bounds the assured-decrease radius.
pub fn assured_decrease_cubic(dim: usize) -> Polynomial {
    let d = dim as f64;
    Polynomial::new(vec![
        (4.0 - d) / 8.0,
        (13.0 * d + 4.0) / 2.0,
        -6.0 * d,
        -8.0 * d,
    ])
}

/// The quadratic `16D x^2 + 8D x - (4 - D)` in `x = r^2` from the lower-bound difference.
pub fn assured_increase_quadratic(dim: usize) -> Polynomial {
    let d = dim as f64;
    Polynomial::new(vec![-(4.0 - d), 8.0 * d, 16.0 * d])
}

/// Smallest positive root `x` of [`assured_decrease_cubic`].
pub fn assured_decrease_root(dim: usize) -> Result<f64> {
    require_max_case(dim)?;
    smallest_positive_root(&assured_decrease_cubic(dim), RootSearch::default())
}

pub fn rmax_exact(dim: usize) -> Result<f64> {
    Ok(assured_decrease_root(dim)?.sqrt())
}

/// `sqrt((D - 4) / (52D + 16))`, a slight underestimate of [`rmax_exact`].
pub fn rmax_approx_simple(dim: usize) -> Result<f64> {
    require_max_case(dim)?;
    let d = dim as f64;
    Ok(((d - 4.0) / (52.0 * d + 16.0)).sqrt())
}

/// Root of the cubic with the `x^3` term dropped:
/// `sqrt((13D + 4 - sqrt(157D^2 + 152D + 16)) / (24D))`.
pub fn rmax_approx_quadratic(dim: usize) -> Result<f64> {
    require_max_case(dim)?;
    let d = dim as f64;
    // 157D^2 + 152D + 16 = (13D + 4)^2 - 12D(D - 4); the small root is
    // rationalised so nothing cancels when D is large.
    let disc = (157.0 * d + 152.0) * d + 16.0;
    let x = (d - 4.0) / (2.0 * (13.0 * d + 4.0 + disc.sqrt()));
    Ok(x.sqrt())
}

/// Closed form `sqrt(1/sqrt(4D) - 1/4)`.
pub fn rmax_min_case(dim: usize) -> Result<f64> {
    require_min_case(dim)?;
    let d = dim as f64;
    Ok((1.0 / (4.0 * d).sqrt() - 0.25).sqrt())
}

/// The same radius as [`rmax_min_case`], found numerically from [`assured_increase_quadratic`].
pub fn rmax_min_case_from_root(dim: usize) -> Result<f64> {
    require_min_case(dim)?;
    Ok(smallest_positive_root(&assured_increase_quadratic(dim), RootSearch::default())?.sqrt())
}

/// Agreement required between the closed form and the numeric root in the minimum case.
pub const MIN_CASE_CROSS_CHECK: f64 = 1e-10;

pub fn rmax_report(dim: usize) -> Result<RmaxReport> {
    match dim {
        0 => Err(Error::ZeroDimension),
        4 => Err(Error::UnsupportedDimension {
            dim,
            reason: HARMONIC,
        }),
        1..=3 => {
            let closed = rmax_min_case(dim)?;
            let numeric = rmax_min_case_from_root(dim)?;
            assert!(
                (closed - numeric).abs() <= MIN_CASE_CROSS_CHECK,
                "minimum-case radius disagrees with its quadratic root: {closed} vs {numeric}"
            );
            let warning =
                (closed >= 0.5).then(|| "radius reaches the source sphere at 1/2".to_string());
            Ok(RmaxReport {
                dimension: dim,
                exact_root: closed,
                approx_simple: None,
                approx_quadratic: None,
                case: RmaxCase::Minimum,
                warning,
            })
        }
        _ => Ok(RmaxReport {
            dimension: dim,
            exact_root: rmax_exact(dim)?,
            approx_simple: Some(rmax_approx_simple(dim)?),
            approx_quadratic: Some(rmax_approx_quadratic(dim)?),
            case: RmaxCase::Maximum,
            warning: None,
        }),
    }
}

/// One entry per input dimension, in input order.
pub fn rmax_table(dims: &[usize]) -> Vec<Result<RmaxReport>> {
    dims.par_iter().map(|&d| rmax_report(d)).collect()
}

pub const CSV_HEADER: &str = "D,r_max,approx_simple,approx_quadratic,case";

fn fmt4(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |v| format!("{v:.4}"))
}

/// Writes the table as CSV. Unsupported dimensions become `NA` rows with case `error`;
/// a flagged minimum-case row has case `minimum-warning`.
pub fn write_csv<W: Write>(
    dims: &[usize],
    entries: &[Result<RmaxReport>],
    out: &mut W,
) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for (dim, entry) in dims.iter().zip(entries) {
        match entry {
            Ok(r) => {
                let case = match (&r.case, &r.warning) {
                    (RmaxCase::Minimum, Some(_)) => "minimum-warning".to_string(),
                    (c, _) => c.to_string(),
                };
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.dimension,
                    fmt4(Some(r.exact_root)),
                    fmt4(r.approx_simple),
                    fmt4(r.approx_quadratic),
                    case
                )?;
            }
            Err(_) => writeln!(out, "{dim},NA,NA,NA,error")?,
        }
    }
    Ok(())
}
