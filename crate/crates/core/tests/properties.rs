use proptest::prelude::*;

use invsq::counterexample::{build_counterexample, j_symmetric, lower_bound, upper_bound};
use invsq::{Point, Region, SourceSet};

fn coord() -> impl Strategy<Value = f64> {
    -5.0..5.0f64
}

/// Sources on a shell of radius 2..4 around the origin, a query point in the unit ball.
fn config(max_sources: usize) -> impl Strategy<Value = (usize, Vec<Vec<f64>>, Vec<f64>, Vec<f64>)> {
    (1usize..=6).prop_flat_map(move |dim| {
        (
            Just(dim),
            prop::collection::vec(
                (prop::collection::vec(coord(), dim), 2.0..4.0f64),
                1..=max_sources,
            ),
            prop::collection::vec(0.1..3.0f64, max_sources),
            prop::collection::vec(-0.5..0.5f64, dim),
        )
            .prop_filter_map("degenerate direction", |(dim, raw, weights, x)| {
                let mut rows = Vec::new();
                for (v, r) in raw {
                    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                    if n < 1e-3 {
                        return None;
                    }
                    rows.push(v.iter().map(|c| c * r / n).collect::<Vec<_>>());
                }
                let w = weights[..rows.len()].to_vec();
                Some((dim, rows, w, x))
            })
    })
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #[test]
    fn union_is_additive((dim, rows, w, x) in config(6), split in 0usize..6) {
        prop_assume!(rows.len() > 1);
        let k = 1 + split % (rows.len() - 1);
        let all = SourceSet::from_rows(dim, rows.clone(), w.clone()).unwrap();
        let a = SourceSet::from_rows(dim, rows[..k].to_vec(), w[..k].to_vec()).unwrap();
        let b = SourceSet::from_rows(dim, rows[k..].to_vec(), w[k..].to_vec()).unwrap();
        let sum = a.evaluate(&x).unwrap() + b.evaluate(&x).unwrap();
        prop_assert!(close(all.evaluate(&x).unwrap(), sum, 1e-12));
        prop_assert!(close(a.union(&b).unwrap().evaluate(&x).unwrap(), sum, 1e-12));
    }

    #[test]
    fn linear_in_weights((dim, rows, w, x) in config(5), c in 0.01..100.0f64) {
        let s = SourceSet::from_rows(dim, rows, w).unwrap();
        let scaled = s.scaled(c).unwrap();
        prop_assert!(close(scaled.evaluate(&x).unwrap(), c * s.evaluate(&x).unwrap(), 1e-12));
        let g = s.gradient(&x).unwrap();
        let gs = scaled.gradient(&x).unwrap();
        for (a, b) in g.iter().zip(&gs) {
            prop_assert!((b - c * a).abs() <= 1e-11 * (1.0 + (c * a).abs()));
        }
    }

    #[test]
    fn translation_invariant((dim, rows, w, x) in config(5), shift in prop::collection::vec(coord(), 6)) {
        let s = SourceSet::from_rows(dim, rows, w).unwrap();
        let t = s.translated(&shift[..dim]).unwrap();
        let moved: Vec<f64> = x.iter().zip(&shift).map(|(a, b)| a + b).collect();
        prop_assert!(close(t.evaluate(&moved).unwrap(), s.evaluate(&x).unwrap(), 1e-10));
    }

    #[test]
    fn laplacian_sign_follows_dimension((dim, rows, w, x) in config(5)) {
        let s = SourceSet::from_rows(dim, rows, w).unwrap();
        let lap = s.laplacian(&x).unwrap();
        match dim {
            1..=3 => prop_assert!(lap > 0.0),
            4 => prop_assert_eq!(lap, 0.0),
            _ => prop_assert!(lap < 0.0),
        }
    }

    #[test]
    fn sphere_sandwich(dim in 1usize..=8, r in 0.001..0.3f64, dir in prop::collection::vec(-1.0..1.0f64, 8)) {
        let dir = &dir[..dim];
        let n = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
        prop_assume!(n > 1e-3);
        let delta: Vec<f64> = dir.iter().map(|c| c * r / n).collect();
        let j = j_symmetric(dim, &delta).unwrap();
        let (lo, hi) = (lower_bound(dim, r).unwrap(), upper_bound(dim, r).unwrap());
        prop_assert!(lo - j <= 1e-10 * j && j - hi <= 1e-10 * j, "{} <= {} <= {}", lo, j, hi);
    }

    #[test]
    fn closed_form_matches_sum(dim in 1usize..=7, delta in prop::collection::vec(-0.3..0.3f64, 7)) {
        let delta = &delta[..dim];
        prop_assume!(delta.iter().map(|c| c * c).sum::<f64>() < 0.2);
        let direct = build_counterexample(dim).unwrap().evaluate(delta).unwrap();
        prop_assert!(close(j_symmetric(dim, delta).unwrap(), direct, 1e-12));
    }

    #[test]
    fn projection_lands_in_region(dim in 1usize..=5, p in prop::collection::vec(-10.0..10.0f64, 5), radius in 0.1..3.0f64) {
        let region = Region::sphere(Point::origin(dim), radius).unwrap();
        let mut q = p[..dim].to_vec();
        region.project(&mut q);
        prop_assert!(region.contains(&q));
    }
}
