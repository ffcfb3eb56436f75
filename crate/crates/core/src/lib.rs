//! Combined inverse-square fields `J(X) = sum_i w_i / |X - S_i|^2` of weighted
//! point sources in `D` dimensions.
//!
//! The Laplacian of `J` has the sign of `8 - 2D`, so maxima over a closed
//! region lie on its boundary when `D <= 4` and minima when `D >= 4`.
//! [`find_extremum`] uses this to restrict the search to the boundary where
//! it is allowed, and searches the whole region otherwise.
//!
//! ```
//! use invsq::{find_extremum, Objective, Point, Region, SearchOptions, SourceSet};
//!
//! let sources = SourceSet::from_rows(2, vec![vec![3.0, 0.0]], vec![1.0]).unwrap();
//! let disk = Region::sphere(Point::origin(2), 1.0).unwrap();
//! let best = find_extremum(&sources, &disk, Objective::Maximum, &SearchOptions::default()).unwrap();
//! assert!((best.value - 0.25).abs() < 1e-12);
//! assert!(best.restricted);
//! ```
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod counterexample;
pub mod error;
pub mod field;
pub mod problem;
pub mod region;
pub mod rmax;
pub mod roots;
pub mod search;
pub mod verification;

pub use error::{Error, Result};
pub use field::{classify, Harmonicity, Point, SourceSet};
pub use region::Region;
pub use search::{
    find_extremum, search_plan, ExtremumResult, Location, Objective, SearchOptions, SearchPlan,
};
