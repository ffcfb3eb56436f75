// Harmonicity of the field and the resulting search plan, per dimension.
//
// `cargo run --example classify_dimensions`

use std::fmt::Write;

use invsq::{classify, search_plan, Objective};

fn run_example() -> invsq::Result<String> {
    let mut out = String::new();
    writeln!(out, "{:>3}  {:<15} {:<9} {:<9}", "D", "class", "max", "min").unwrap();
    for d in 1..=8 {
        writeln!(
            out,
            "{d:>3}  {:<15} {:<9} {:<9}",
            classify(d)?.label(),
            search_plan(d, Objective::Maximum)?.label(),
            search_plan(d, Objective::Minimum)?.label()
        )
        .unwrap();
    }
    Ok(out)
}

fn main() -> invsq::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
