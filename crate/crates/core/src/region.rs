//! Closed search regions: D-spheres (balls) and axis-aligned boxes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{self, Point, SourceSet};

/// A point closer than this to the boundary is reported as a boundary point.
pub const BOUNDARY_TOLERANCE: f64 = 1e-7;

/// Sources must sit at least this far outside the closed region.
pub const SOURCE_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Region {
    Sphere { center: Point, radius: f64 },
    Box { lower: Point, upper: Point },
}

impl Region {
    pub fn sphere(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidRegion(format!(
                "sphere radius must be positive, got {radius}"
            )));
        }
        Ok(Region::Sphere { center, radius })
    }

    pub fn cuboid(lower: Point, upper: Point) -> Result<Self> {
        field::check_dim(lower.dim(), upper.dim())?;
        if let Some(k) = (0..lower.dim()).find(|&k| !(lower[k] < upper[k])) {
            return Err(Error::InvalidRegion(format!(
                "box needs lower < upper on every axis; axis {k} has {} >= {}",
                lower[k], upper[k]
            )));
        }
        Ok(Region::Box { lower, upper })
    }

    pub fn dim(&self) -> usize {
        match self {
            Region::Sphere { center, .. } => center.dim(),
            Region::Box { lower, .. } => lower.dim(),
        }
    }

    /// Characteristic length used to size search steps.
    pub fn scale(&self) -> f64 {
        match self {
            Region::Sphere { radius, .. } => *radius,
            Region::Box { lower, upper } => lower
                .iter()
                .zip(upper.iter())
                .map(|(l, u)| 0.5 * (u - l))
                .fold(0.0, f64::max),
        }
    }

    /// Radius of the smallest ball around [`Region::center`] containing the region.
    pub fn circumradius(&self) -> f64 {
        match self {
            Region::Sphere { radius, .. } => *radius,
            Region::Box { lower, upper } => 0.5 * field::squared_distance(lower, upper).sqrt(),
        }
    }

    pub fn center(&self) -> Point {
        match self {
            Region::Sphere { center, .. } => center.clone(),
            Region::Box { lower, upper } => Point::new(
                lower
                    .iter()
                    .zip(upper.iter())
                    .map(|(l, u)| 0.5 * (l + u))
                    .collect(),
            )
            .expect("finite"),
        }
    }

    /// Negative inside (minus the distance to the boundary), positive outside.
    pub fn signed_distance(&self, p: &[f64]) -> f64 {
        match self {
            Region::Sphere { center, radius } => field::squared_distance(p, center).sqrt() - radius,
            Region::Box { lower, upper } => {
                let mut outside = 0.0;
                let mut inside = f64::INFINITY;
                for ((x, l), u) in p.iter().zip(lower.iter()).zip(upper.iter()) {
                    let excess = (l - x).max(x - u).max(0.0);
                    outside += excess * excess;
                    inside = inside.min((x - l).min(u - x));
                }
                if outside > 0.0 {
                    outside.sqrt()
                } else {
                    -inside
                }
            }
        }
    }

    /// Closed-region membership, with a few ulps of slack so projected points count.
    pub fn contains(&self, p: &[f64]) -> bool {
        let slack = 16.0 * f64::EPSILON * (self.scale() + self.center().norm());
        self.signed_distance(p) <= slack
    }

    pub fn is_on_boundary(&self, p: &[f64]) -> bool {
        self.signed_distance(p).abs() < BOUNDARY_TOLERANCE
    }

    /// Nearest point of the closed region.
    pub fn project(&self, p: &mut [f64]) {
        match self {
            Region::Sphere { center, radius } => {
                let dist = field::squared_distance(p, center).sqrt();
                if dist > *radius {
                    for (x, c) in p.iter_mut().zip(center.iter()) {
                        *x = c + (*x - c) * radius / dist;
                    }
                }
            }
            Region::Box { lower, upper } => {
                for ((x, l), u) in p.iter_mut().zip(lower.iter()).zip(upper.iter()) {
                    *x = x.clamp(*l, *u);
                }
            }
        }
    }

    /// Every source must lie strictly outside the region, by at least `margin`.
    pub fn check_sources_outside(&self, sources: &SourceSet, margin: f64) -> Result<()> {
        field::check_dim(self.dim(), sources.dim())?;
        for (index, s) in sources.sources().iter().enumerate() {
            if self.signed_distance(s) <= margin {
                return Err(Error::SourceInsideRegion { index, margin });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[f64]) -> Point {
        Point::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sphere_distances() {
        let s = Region::sphere(pt(&[1.0, 0.0]), 2.0).unwrap();
        assert_eq!(s.signed_distance(&[1.0, 0.0]), -2.0);
        assert_eq!(s.signed_distance(&[1.0, 3.0]), 1.0);
        assert!(s.is_on_boundary(&[3.0, 0.0]));
        let mut p = [1.0, 10.0];
        s.project(&mut p);
        assert_eq!(p, [1.0, 2.0]);
    }

    #[test]
    fn box_distances() {
        let b = Region::cuboid(pt(&[0.0, 0.0]), pt(&[2.0, 1.0])).unwrap();
        assert_eq!(b.signed_distance(&[1.0, 0.25]), -0.25);
        assert_eq!(b.signed_distance(&[5.0, 5.0]), 5.0);
        assert!(b.is_on_boundary(&[2.0, 0.5]));
        assert!(!b.is_on_boundary(&[1.9, 0.5]));
        let mut p = [-1.0, 0.5];
        b.project(&mut p);
        assert_eq!(p, [0.0, 0.5]);
        assert_eq!(b.scale(), 1.0);
    }

    #[test]
    fn invalid_regions() {
        assert!(Region::sphere(pt(&[0.0]), 0.0).is_err());
        assert!(Region::cuboid(pt(&[0.0, 1.0]), pt(&[1.0, 1.0])).is_err());
        assert!(Region::cuboid(pt(&[0.0]), pt(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn sources_must_be_outside() {
        let s = Region::sphere(pt(&[0.0, 0.0]), 1.0).unwrap();
        let inside =
            SourceSet::from_rows(2, vec![vec![3.0, 0.0], vec![0.5, 0.0]], vec![1.0, 1.0]).unwrap();
        assert!(matches!(
            s.check_sources_outside(&inside, SOURCE_MARGIN),
            Err(Error::SourceInsideRegion { index: 1, .. })
        ));
        let on_boundary = SourceSet::from_rows(2, vec![vec![1.0, 0.0]], vec![1.0]).unwrap();
        assert!(s
            .check_sources_outside(&on_boundary, SOURCE_MARGIN)
            .is_err());
        let outside = SourceSet::from_rows(2, vec![vec![0.0, 1.5]], vec![1.0]).unwrap();
        assert!(s.check_sources_outside(&outside, SOURCE_MARGIN).is_ok());
    }
}
