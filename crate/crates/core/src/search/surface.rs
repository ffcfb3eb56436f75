//! The sets a single local search walks on: a solid region, a sphere's
//! surface, or one face of a box.

use crate::field;
use crate::region::Region;

#[derive(Debug, Clone)]
pub(crate) enum Surface {
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Shell {
        center: Vec<f64>,
        radius: f64,
    },
    Cuboid {
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
    /// Box face with coordinate `axis` pinned to `at`.
    Face {
        lower: Vec<f64>,
        upper: Vec<f64>,
        axis: usize,
        at: f64,
    },
}

impl Surface {
    pub(crate) fn solid(region: &Region) -> Self {
        match region {
            Region::Sphere { center, radius } => Surface::Ball {
                center: center.to_vec(),
                radius: *radius,
            },
            Region::Box { lower, upper } => Surface::Cuboid {
                lower: lower.to_vec(),
                upper: upper.to_vec(),
            },
        }
    }

    /// The boundary as one or more surfaces: the sphere itself, or the `2D` faces of a box.
    pub(crate) fn boundary(region: &Region) -> Vec<Self> {
        match region {
            Region::Sphere { center, radius } => vec![Surface::Shell {
                center: center.to_vec(),
                radius: *radius,
            }],
            Region::Box { lower, upper } => (0..lower.dim())
                .flat_map(|axis| {
                    [lower[axis], upper[axis]].map(|at| Surface::Face {
                        lower: lower.to_vec(),
                        upper: upper.to_vec(),
                        axis,
                        at,
                    })
                })
                .collect(),
        }
    }

    /// Number of unit-cube coordinates [`Surface::sample`] consumes.
    pub(crate) fn sample_dim(&self) -> usize {
        match self {
            Surface::Ball { center, .. } => center.len() + 1,
            Surface::Shell { center, .. } => center.len(),
            Surface::Cuboid { lower, .. } => lower.len(),
            Surface::Face { lower, .. } => lower.len() - 1,
        }
    }

    /// Maps a point of the unit cube onto the surface.
    pub(crate) fn sample(&self, u: &[f64]) -> Vec<f64> {
        match self {
            Surface::Ball { center, radius } => {
                let dim = center.len();
                let dir = direction(&u[..dim]);
                let rho = radius * u[dim].powf(1.0 / dim as f64);
                center.iter().zip(&dir).map(|(c, d)| c + rho * d).collect()
            }
            Surface::Shell { center, radius } => {
                let dir = direction(u);
                center
                    .iter()
                    .zip(&dir)
                    .map(|(c, d)| c + radius * d)
                    .collect()
            }
            Surface::Cuboid { lower, upper } => lower
                .iter()
                .zip(upper)
                .zip(u)
                .map(|((l, h), t)| l + t * (h - l))
                .collect(),
            Surface::Face {
                lower,
                upper,
                axis,
                at,
            } => {
                let mut it = u.iter();
                (0..lower.len())
                    .map(|k| {
                        if k == *axis {
                            *at
                        } else {
                            let t = it.next().expect("sample_dim coordinates");
                            lower[k] + t * (upper[k] - lower[k])
                        }
                    })
                    .collect()
            }
        }
    }

    pub(crate) fn project(&self, p: &mut [f64]) {
        match self {
            Surface::Ball { center, radius } => {
                let dist = field::squared_distance(p, center).sqrt();
                if dist > *radius {
                    scale_about(p, center, radius / dist);
                }
            }
            Surface::Shell { center, radius } => {
                let dist = field::squared_distance(p, center).sqrt();
                if dist == 0.0 {
                    p.copy_from_slice(center);
                    p[0] += radius;
                } else {
                    scale_about(p, center, radius / dist);
                }
            }
            Surface::Cuboid { lower, upper } => clamp(p, lower, upper),
            Surface::Face {
                lower,
                upper,
                axis,
                at,
            } => {
                clamp(p, lower, upper);
                p[*axis] = *at;
            }
        }
    }

    /// The part of the ascent direction `a` that keeps `p` on the surface.
    pub(crate) fn feasible_direction(&self, p: &[f64], a: &[f64]) -> Vec<f64> {
        match self {
            Surface::Ball { center, radius } => {
                let n = normal(p, center);
                let dist = field::squared_distance(p, center).sqrt();
                let outward: f64 = a.iter().zip(&n).map(|(x, y)| x * y).sum();
                if dist >= radius * (1.0 - 1e-12) && outward > 0.0 {
                    a.iter().zip(&n).map(|(x, y)| x - outward * y).collect()
                } else {
                    a.to_vec()
                }
            }
            Surface::Shell { center, .. } => {
                let n = normal(p, center);
                let outward: f64 = a.iter().zip(&n).map(|(x, y)| x * y).sum();
                a.iter().zip(&n).map(|(x, y)| x - outward * y).collect()
            }
            Surface::Cuboid { lower, upper } => clip_at_bounds(p, a, lower, upper),
            Surface::Face {
                lower, upper, axis, ..
            } => {
                let mut d = clip_at_bounds(p, a, lower, upper);
                d[*axis] = 0.0;
                d
            }
        }
    }
}

fn scale_about(p: &mut [f64], center: &[f64], factor: f64) {
    for (x, c) in p.iter_mut().zip(center) {
        *x = c + (*x - c) * factor;
    }
}

fn clamp(p: &mut [f64], lower: &[f64], upper: &[f64]) {
    for ((x, l), u) in p.iter_mut().zip(lower).zip(upper) {
        *x = x.clamp(*l, *u);
    }
}

fn clip_at_bounds(p: &[f64], a: &[f64], lower: &[f64], upper: &[f64]) -> Vec<f64> {
    p.iter()
        .zip(a)
        .zip(lower.iter().zip(upper))
        .map(|((x, d), (l, u))| {
            if (*x <= *l && *d < 0.0) || (*x >= *u && *d > 0.0) {
                0.0
            } else {
                *d
            }
        })
        .collect()
}

fn normal(p: &[f64], center: &[f64]) -> Vec<f64> {
    let v: Vec<f64> = p.iter().zip(center).map(|(x, c)| x - c).collect();
    let n = field::norm(&v);
    if n == 0.0 {
        vec![0.0; v.len()]
    } else {
        v.into_iter().map(|x| x / n).collect()
    }
}

/// Unit vector from a point of the unit cube (cube to sphere by normalising).
fn direction(u: &[f64]) -> Vec<f64> {
    let v: Vec<f64> = u.iter().map(|t| 2.0 * t - 1.0).collect();
    let n = field::norm(&v);
    if n < 1e-12 {
        let mut e = vec![0.0; u.len()];
        e[0] = 1.0;
        e
    } else {
        v.into_iter().map(|x| x / n).collect()
    }
}
