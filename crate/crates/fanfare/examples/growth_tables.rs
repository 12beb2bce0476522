//! Asymptotic dimension of spaces of fixed-ratio Jacobi forms: three
//! closed forms and the toric degree pipeline produce one rational
//! number, cross-checked exactly, and the growth table turns it into
//! predicted dimensions at finite level.
//!
//! Run with `cargo run --example growth_tables`.

use fanfare::growth::{
    asymptotic_table, closed_forms, siegel_volume, table_csv, trivial_dims, WeightIndex,
};
use fanfare::Result;

fn main() -> Result<()> {
    println!("degrees across a small weight grid (all four routes agree exactly):");
    for g in 1..=3 {
        for (k, m) in [(1, 1), (2, 1), (1, 2)] {
            let wi = WeightIndex::new(g, k, m, 1, false)?;
            let report = closed_forms(&wi)?;
            println!("  g = {g}, k = {k}, m = {m}: degree {}", report.degree());
        }
    }

    let doubled = closed_forms(&WeightIndex::new(1, 1, 1, 1, true)?)?;
    println!(
        "the minus-identity flag doubles the count: {}",
        doubled.degree()
    );

    println!("\nexact orbifold volumes:");
    for g in 1..=3 {
        println!("  V_{g} = {}", siegel_volume(g));
    }

    println!("\npredicted dimensions at finite level (g = 1, k = m = 1):");
    let wi = WeightIndex::new(1, 1, 1, 1, false)?;
    print!("{}", table_csv(&asymptotic_table(&wi, &[0, 6, 12, 24, 48])?));

    println!("\ndimensions forced by the weight alone:");
    for (k, m) in [(0, 0), (0, 3), (-2, 1), (4, 1)] {
        match trivial_dims(k, m) {
            Some(d) => println!("  (k, m) = ({k}, {m}): {d}"),
            None => println!("  (k, m) = ({k}, {m}): needs the degree computation"),
        }
    }
    Ok(())
}
