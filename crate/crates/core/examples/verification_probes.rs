// A small run of each verification probe.
//
// `cargo run --example verification_probes`

use std::fmt::Write;

use invsq::verification::{
    bound_sandwich_probe, counterexample_probe, gradient_probe, laplacian_probe,
    maximum_principle_probe, oracle_agreement_probe,
};
use invsq::Objective;

fn run_example() -> invsq::Result<String> {
    let seed = 11;
    let reports = vec![
        gradient_probe(3, 20, seed)?,
        laplacian_probe(4, 20, seed)?,
        bound_sandwich_probe(5, &[0.05, 0.1, 0.2], 100, seed)?,
        maximum_principle_probe(3, Objective::Maximum, 5, 100, seed)?,
        maximum_principle_probe(6, Objective::Minimum, 5, 100, seed)?,
        oracle_agreement_probe(2, 3, 61, seed)?,
    ];
    let mut out = String::new();
    for r in &reports {
        writeln!(out, "{r}").unwrap();
    }
    // this one is meant to fail: the interior wins for D = 5
    writeln!(out, "{}", counterexample_probe(5, 0.05, 100, seed)?).unwrap();
    Ok(out)
}

fn main() -> invsq::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
