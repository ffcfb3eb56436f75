// Extremum search in D = 3 (maximum restricted to the boundary) and in
// D = 5 on the cross-polytope, where the maximum is interior. The grid
// oracle confirms the three-dimensional result.
//
// `cargo run --example boundary_search`

use std::fmt::Write;

use invsq::counterexample::build_counterexample;
use invsq::search::{brute_force_oracle, search_boundary};
use invsq::{find_extremum, Objective, Point, Region, SearchOptions, SourceSet};

fn run_example() -> invsq::Result<String> {
    let mut out = String::new();
    let opts = SearchOptions::with_seed(7);

    let sources = SourceSet::from_rows(
        3,
        vec![
            vec![2.5, 0.3, -0.4],
            vec![-1.8, 2.2, 0.6],
            vec![0.1, -2.4, 1.9],
        ],
        vec![1.0, 1.5, 0.8],
    )?;
    let ball = Region::sphere(Point::origin(3), 1.0)?;
    let best = find_extremum(&sources, &ball, Objective::Maximum, &opts)?;
    writeln!(
        out,
        "D=3 max: J = {:.9} at {:.4?} ({}, restricted: {})",
        best.value,
        best.point.coords(),
        best.location,
        best.restricted
    )
    .unwrap();
    let cube = Region::cuboid(Point::new(vec![-1.0; 3])?, Point::new(vec![1.0; 3])?)?;
    let on_box = find_extremum(&sources, &cube, Objective::Maximum, &opts)?;
    let oracle = brute_force_oracle(&sources, &cube, Objective::Maximum, 41)?;
    writeln!(
        out,
        "D=3 box max: search {:.9}, grid oracle {:.9}",
        on_box.value, oracle.value
    )
    .unwrap();

    let cross = build_counterexample(5)?;
    let small = Region::sphere(Point::origin(5), 0.05)?;
    let inside = find_extremum(&cross, &small, Objective::Maximum, &opts)?;
    let edge = search_boundary(&cross, &small, Objective::Maximum, &opts)?;
    writeln!(
        out,
        "D=5 cross-polytope, r=0.05: max {:.9} ({}), best on the sphere {:.9}",
        inside.value, inside.location, edge.value
    )
    .unwrap();
    Ok(out)
}

fn main() -> invsq::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
