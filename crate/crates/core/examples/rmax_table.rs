// Certified radii for a range of dimensions, written as CSV.
//
// `cargo run --example rmax_table`

use invsq::rmax::{rmax_table, write_csv};

fn run_example() -> std::io::Result<String> {
    let dims: Vec<usize> = (1..=10).chain([15, 20, 50, 100, 1_000_000]).collect();
    let entries = rmax_table(&dims);
    let mut buf = Vec::new();
    write_csv(&dims, &entries, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv is ascii"))
}

fn main() -> std::io::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
