//! Problem files: a TOML document holding the dimension, the sources with
//! their weights, and optionally a search region.
//!
//! ```toml
//! dimension = 3
//! weights = [1.0, 2.5]
//! sources = [
//!   [2.0, 0.0, 0.0],
//!   [0.0, -3.0, 0.5],
//! ]
//!
//! [region]
//! type = "sphere"        # or "box" with `lower` and `upper`
//! center = [0.0, 0.0, 0.0]
//! radius = 1.0
//! ```
//!
//! Validation errors name the offending field and, when known, its line.

use std::fmt::{self, Write as _};
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::field::{Point, SourceSet};
use crate::region::Region;

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemError {
    pub field: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}, field `{}`: {}", self.field, self.message),
            None => write!(f, "field `{}`: {}", self.field, self.message),
        }
    }
}

impl std::error::Error for ProblemError {}

#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub sources: SourceSet,
    pub region: Option<Region>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    dimension: Spanned<i64>,
    sources: Spanned<Vec<Spanned<Vec<f64>>>>,
    weights: Spanned<Vec<Spanned<f64>>>,
    region: Option<Spanned<RawRegion>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRegion {
    #[serde(rename = "type")]
    kind: Spanned<String>,
    center: Option<Spanned<Vec<f64>>>,
    radius: Option<Spanned<f64>>,
    lower: Option<Spanned<Vec<f64>>>,
    upper: Option<Spanned<Vec<f64>>>,
}

struct Lines<'a>(&'a str);

impl Lines<'_> {
    fn of(&self, span: Range<usize>) -> usize {
        self.0[..span.start.min(self.0.len())].matches('\n').count() + 1
    }

    fn error<T>(
        &self,
        field: impl Into<String>,
        span: Range<usize>,
        message: impl Into<String>,
    ) -> Result<T, ProblemError> {
        Err(ProblemError {
            field: field.into(),
            line: Some(self.of(span)),
            message: message.into(),
        })
    }
}

fn finite_point(
    lines: &Lines,
    field: &str,
    coords: &Spanned<Vec<f64>>,
    dim: usize,
) -> Result<Point, ProblemError> {
    let v = coords.get_ref();
    if v.len() != dim {
        return lines.error(
            field,
            coords.span(),
            format!("expected {dim} coordinates, found {}", v.len()),
        );
    }
    match Point::new(v.clone()) {
        Ok(p) => Ok(p),
        Err(e) => lines.error(field, coords.span(), e.to_string()),
    }
}

pub fn parse_problem(text: &str) -> Result<Problem, ProblemError> {
    let raw: RawProblem = toml::from_str(text).map_err(|e| {
        let lines = Lines(text);
        ProblemError {
            field: e
                .message()
                .split('`')
                .nth(1)
                .unwrap_or("document")
                .to_string(),
            line: e.span().map(|s| lines.of(s)),
            message: e.message().to_string(),
        }
    })?;
    let lines = Lines(text);

    let dim = *raw.dimension.get_ref();
    if dim < 1 {
        return lines.error(
            "dimension",
            raw.dimension.span(),
            "must be a positive integer",
        );
    }
    let dim = dim as usize;

    let rows = raw.sources.get_ref();
    if rows.is_empty() {
        return lines.error(
            "sources",
            raw.sources.span(),
            "at least one source is required",
        );
    }
    let weights = raw.weights.get_ref();
    if weights.len() != rows.len() {
        return lines.error(
            "weights",
            raw.weights.span(),
            format!("{} weights for {} sources", weights.len(), rows.len()),
        );
    }
    let mut points = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        points.push(finite_point(&lines, &format!("sources[{i}]"), row, dim)?);
    }
    for (i, w) in weights.iter().enumerate() {
        let value = *w.get_ref();
        if !(value > 0.0 && value.is_finite()) {
            return lines.error(
                format!("weights[{i}]"),
                w.span(),
                format!("weight must be strictly positive, got {value}"),
            );
        }
    }
    let sources = SourceSet::new(dim, points, weights.iter().map(|w| *w.get_ref()).collect())
        .map_err(|e| ProblemError {
            field: "sources".into(),
            line: None,
            message: e.to_string(),
        })?;

    let region = match raw.region {
        None => None,
        Some(spanned) => {
            let span = spanned.span();
            let r = spanned.into_inner();
            let region = match r.kind.get_ref().as_str() {
                "sphere" => {
                    let (Some(center), Some(radius)) = (&r.center, &r.radius) else {
                        return lines.error("region", span, "a sphere needs `center` and `radius`");
                    };
                    let center = finite_point(&lines, "region.center", center, dim)?;
                    Region::sphere(center, *radius.get_ref())
                        .or_else(|e| lines.error("region.radius", radius.span(), e.to_string()))?
                }
                "box" => {
                    let (Some(lower), Some(upper)) = (&r.lower, &r.upper) else {
                        return lines.error("region", span, "a box needs `lower` and `upper`");
                    };
                    let lo = finite_point(&lines, "region.lower", lower, dim)?;
                    let hi = finite_point(&lines, "region.upper", upper, dim)?;
                    Region::cuboid(lo, hi)
                        .or_else(|e| lines.error("region.upper", upper.span(), e.to_string()))?
                }
                other => {
                    return lines.error(
                        "region.type",
                        r.kind.span(),
                        format!("unknown region type `{other}` (expected `sphere` or `box`)"),
                    )
                }
            };
            Some(region)
        }
    };
    Ok(Problem { sources, region })
}

fn write_list(out: &mut String, v: &[f64]) {
    out.push('[');
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{x:?}");
    }
    out.push(']');
}

/// Renders a problem in the format [`parse_problem`] reads.
pub fn render_problem(sources: &SourceSet, region: Option<&Region>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dimension = {}", sources.dim());
    out.push_str("weights = ");
    write_list(&mut out, sources.weights());
    out.push_str("\nsources = [\n");
    for s in sources.sources() {
        out.push_str("  ");
        write_list(&mut out, s);
        out.push_str(",\n");
    }
    out.push_str("]\n");
    match region {
        None => {}
        Some(Region::Sphere { center, radius }) => {
            out.push_str("\n[region]\ntype = \"sphere\"\ncenter = ");
            write_list(&mut out, center);
            let _ = writeln!(out, "\nradius = {radius:?}");
        }
        Some(Region::Box { lower, upper }) => {
            out.push_str("\n[region]\ntype = \"box\"\nlower = ");
            write_list(&mut out, lower);
            out.push_str("\nupper = ");
            write_list(&mut out, upper);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexample::build_counterexample;

    #[test]
    fn sphere_problem() {
        let p = parse_problem(
            "dimension = 2\nweights = [1, 2.5]\nsources = [[3.0, 0.0], [0, -4]]\n\n[region]\ntype = \"sphere\"\ncenter = [0.0, 0.0]\nradius = 1.0\n",
        )
        .unwrap();
        assert_eq!(p.sources.len(), 2);
        assert_eq!(p.sources.weights(), &[1.0, 2.5]);
        assert!(matches!(p.region, Some(Region::Sphere { radius, .. }) if radius == 1.0));
    }

    #[test]
    fn nonpositive_weight_names_line_and_field() {
        let err = parse_problem(
            "dimension = 1\nsources = [[2.0], [3.0]]\nweights = [\n  1.0,\n  -2.0,\n]\n",
        )
        .unwrap_err();
        assert_eq!(err.field, "weights[1]");
        assert_eq!(err.line, Some(5));
    }

    #[test]
    fn dimension_mismatch_names_the_source() {
        let err =
            parse_problem("dimension = 3\nweights = [1.0]\nsources = [[1.0, 2.0]]\n").unwrap_err();
        assert_eq!(err.field, "sources[0]");
        assert_eq!(err.line, Some(3));
        assert!(err.to_string().contains("expected 3 coordinates"));
    }

    #[test]
    fn missing_and_malformed_fields() {
        let err = parse_problem("dimension = 2\nsources = [[1.0, 2.0]]\n").unwrap_err();
        assert!(err.to_string().contains("weights"), "{err}");
        let err =
            parse_problem("dimension = \"two\"\nweights=[1.0]\nsources=[[1.0]]\n").unwrap_err();
        assert_eq!(err.line, Some(1));
        let err = parse_problem(
            "dimension = 1\nweights=[1.0]\nsources=[[1.0]]\n[region]\ntype=\"torus\"\n",
        )
        .unwrap_err();
        assert_eq!(err.field, "region.type");
        assert_eq!(err.line, Some(5));
    }

    #[test]
    fn rendered_counterexample_parses_back() {
        let s = build_counterexample(5).unwrap();
        let region = Region::sphere(Point::origin(5), 0.05).unwrap();
        let text = render_problem(&s, Some(&region));
        let p = parse_problem(&text).unwrap();
        assert_eq!(p.sources, s);
        assert_eq!(p.region, Some(region));
        assert_eq!(p.sources.evaluate(&[0.0; 5]).unwrap(), 40.0);
    }
}
