//! The combined inverse-square field of weighted point sources.
//!
//! For sources `S_i` with weights `w_i > 0` in `R^D` the field is
//!
//! ```text
//! J(X) = sum_i w_i / |X - S_i|^2
//! ```
//!
//! Its Laplacian has the closed form `sum_i (8 - 2D) w_i / |X - S_i|^4`, so
//! the sign of `ΔJ` depends on the dimension alone.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Squared distance below which a point counts as sitting on a source.
pub const DEFAULT_EXCLUSION_EPS: f64 = 1e-12;

/// A location in `R^D`. All coordinates are finite.
#[derive(Debug, Clone, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate { index, value });
        }
        Ok(Self(coords))
    }

    pub fn origin(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Self(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, s)| (x - s) * (x - s)).sum()
}

/// Sign class of `ΔJ`, a function of the dimension only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Harmonicity {
    /// `ΔJ > 0` everywhere (D < 4).
    StrictlySubharmonic,
    /// `ΔJ = 0` everywhere (D = 4).
    Harmonic,
    /// `ΔJ < 0` everywhere (D > 4).
    StrictlySuperharmonic,
}

impl Harmonicity {
    pub fn label(self) -> &'static str {
        match self {
            Harmonicity::StrictlySubharmonic => "sub-harmonic",
            Harmonicity::Harmonic => "harmonic",
            Harmonicity::StrictlySuperharmonic => "super-harmonic",
        }
    }
}

pub fn classify(dim: usize) -> Result<Harmonicity> {
    match dim {
        0 => Err(Error::ZeroDimension),
        1..=3 => Ok(Harmonicity::StrictlySubharmonic),
        4 => Ok(Harmonicity::Harmonic),
        _ => Ok(Harmonicity::StrictlySuperharmonic),
    }
}

/// `n` weighted point sources in a fixed dimension. Immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SourceSet {
    dim: usize,
    sources: Vec<Point>,
    weights: Vec<f64>,
    exclusion_eps: f64,
}

impl SourceSet {
    pub fn new(dim: usize, sources: Vec<Point>, weights: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if sources.is_empty() {
            return Err(Error::EmptySourceSet);
        }
        if sources.len() != weights.len() {
            return Err(Error::WeightCountMismatch {
                sources: sources.len(),
                weights: weights.len(),
            });
        }
        for s in &sources {
            check_dim(dim, s.dim())?;
        }
        for (index, &weight) in weights.iter().enumerate() {
            if !(weight > 0.0 && weight.is_finite()) {
                return Err(Error::NonPositiveWeight { index, weight });
            }
        }
        Ok(Self {
            dim,
            sources,
            weights,
            exclusion_eps: DEFAULT_EXCLUSION_EPS,
        })
    }

    /// Builds a set from raw coordinate rows.
    pub fn from_rows(dim: usize, rows: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        let sources = rows
            .into_iter()
            .map(Point::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, sources, weights)
    }

    pub fn with_exclusion_eps(mut self, eps: f64) -> Self {
        assert!(eps >= 0.0, "exclusion epsilon must be non-negative");
        self.exclusion_eps = eps;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    pub fn sources(&self) -> &[Point] {
        &self.sources
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn exclusion_eps(&self) -> f64 {
        self.exclusion_eps
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, f64)> {
        self.sources.iter().zip(self.weights.iter().copied())
    }

    /// Concatenates two source sets of the same dimension.
    pub fn union(&self, other: &SourceSet) -> Result<SourceSet> {
        check_dim(self.dim, other.dim)?;
        let mut sources = self.sources.clone();
        sources.extend(other.sources.iter().cloned());
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        Ok(SourceSet::new(self.dim, sources, weights)?.with_exclusion_eps(self.exclusion_eps))
    }

    pub fn scaled(&self, factor: f64) -> Result<SourceSet> {
        let weights = self.weights.iter().map(|w| w * factor).collect();
        Ok(SourceSet::new(self.dim, self.sources.clone(), weights)?
            .with_exclusion_eps(self.exclusion_eps))
    }

    pub fn translated(&self, shift: &[f64]) -> Result<SourceSet> {
        check_dim(self.dim, shift.len())?;
        let sources = self
            .sources
            .iter()
            .map(|s| Point::new(s.iter().zip(shift).map(|(a, b)| a + b).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(SourceSet::new(self.dim, sources, self.weights.clone())?
            .with_exclusion_eps(self.exclusion_eps))
    }

    /// Squared distances from `x` to each source, rejecting points inside the exclusion radius.
    fn squared_distances(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim, x.len())?;
        self.sources
            .iter()
            .enumerate()
            .map(|(index, s)| {
                let d2 = squared_distance(x, s);
                if d2 < self.exclusion_eps || !d2.is_finite() {
                    Err(Error::CoincidentSource {
                        index,
                        distance_sq: d2,
                    })
                } else {
                    Ok(d2)
                }
            })
            .collect()
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        let d2 = self.squared_distances(x)?;
        Ok(d2.iter().zip(&self.weights).map(|(d2, w)| w / d2).sum())
    }

    /// Component `k` is `sum_i -2 (x_k - s_ki) w_i / |x - S_i|^4`.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(self.value_and_gradient(x)?.1)
    }

    pub fn value_and_gradient(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        let d2 = self.squared_distances(x)?;
        let mut value = 0.0;
        let mut grad = vec![0.0; self.dim];
        for ((s, w), d2) in self.iter().zip(&d2) {
            value += w / d2;
            let scale = -2.0 * w / (d2 * d2);
            for ((g, xk), sk) in grad.iter_mut().zip(x).zip(s.iter()) {
                *g += scale * (xk - sk);
            }
        }
        Ok((value, grad))
    }

    /// Closed-form Laplacian `sum_i (8 - 2D) w_i / |x - S_i|^4`; exactly zero when D = 4.
    pub fn laplacian(&self, x: &[f64]) -> Result<f64> {
        let d2 = self.squared_distances(x)?;
        let coeff = 8.0 - 2.0 * self.dim as f64;
        Ok(d2
            .iter()
            .zip(&self.weights)
            .map(|(d2, w)| coeff * w / (d2 * d2))
            .sum())
    }

    /// Smallest squared distance from `x` to any source (no exclusion check).
    pub fn min_squared_distance(&self, x: &[f64]) -> f64 {
        self.sources
            .iter()
            .map(|s| squared_distance(x, s))
            .fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
