// The cross-polytope configuration: 2D unit sources at +-1/2 on each axis.
// Shows the centre value, the radial bounds and where the interior beats
// the sphere around the origin.
//
// `cargo run --example cross_polytope -- 5`

use std::fmt::Write;

use invsq::counterexample::{
    axis_displacement, build_counterexample, diagonal_displacement, diff_ub_numerator, j_symmetric,
    lower_bound, upper_bound,
};
use invsq::rmax::rmax_exact;

fn run_example(dim: usize) -> invsq::Result<String> {
    let sources = build_counterexample(dim)?;
    let centre = sources.evaluate(&vec![0.0; dim])?;
    let mut out = String::new();
    writeln!(out, "D = {dim}: {} sources, J(0) = {centre}", sources.len()).unwrap();
    writeln!(
        out,
        "{:>6} {:>11} {:>11} {:>11} {:>11} {:>10}",
        "r", "lower", "J(axis)", "J(diag)", "upper", "diff_ub"
    )
    .unwrap();
    for r in [0.02, 0.05, 0.1, 0.15, 0.2] {
        let axis = j_symmetric(dim, &axis_displacement(dim, r))?;
        let diag = j_symmetric(dim, &diagonal_displacement(dim, r))?;
        writeln!(
            out,
            "{r:>6.2} {:>11.6} {axis:>11.6} {diag:>11.6} {:>11.6} {:>10.2e}",
            lower_bound(dim, r)?,
            upper_bound(dim, r)?,
            diff_ub_numerator(dim, r)
        )
        .unwrap();
    }
    if dim >= 5 {
        writeln!(out, "certified radius: {:.6}", rmax_exact(dim)?).unwrap();
    }
    Ok(out)
}

fn main() -> invsq::Result<()> {
    let dim = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("dimension must be a positive integer"))
        .unwrap_or(5);
    print!("{}", run_example(dim)?);
    Ok(())
}
