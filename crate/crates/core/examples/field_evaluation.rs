// Evaluate a field, its gradient and its Laplacian at a few points.
//
// `cargo run --example field_evaluation`

use std::fmt::Write;

use invsq::SourceSet;

fn run_example() -> invsq::Result<String> {
    let sources = SourceSet::from_rows(
        3,
        vec![
            vec![2.0, 0.0, 0.0],
            vec![0.0, -3.0, 0.5],
            vec![-1.0, 1.0, 1.0],
        ],
        vec![1.0, 2.5, 0.5],
    )?;
    let mut out = String::new();
    for x in [[0.0, 0.0, 0.0], [0.5, -0.5, 0.25], [1.0, 0.0, 0.0]] {
        let (j, g) = sources.value_and_gradient(&x)?;
        let lap = sources.laplacian(&x)?;
        writeln!(
            out,
            "x = {x:?}: J = {j:.6}, grad = [{:.6}, {:.6}, {:.6}], laplacian = {lap:.6}",
            g[0], g[1], g[2]
        )
        .unwrap();
    }
    // evaluating on top of a source is an error, not infinity
    match sources.evaluate(&[2.0, 0.0, 0.0]) {
        Ok(v) => writeln!(out, "unexpected value {v}").unwrap(),
        Err(e) => writeln!(out, "at a source: {e}").unwrap(),
    }
    Ok(out)
}

fn main() -> invsq::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
