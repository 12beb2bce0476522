//! Monomial graded linear series: the normalized dimension sequence of a
//! polytope series converges to the exact volume limit, a finitely
//! generated subseries is compared against its Cartier model, and the
//! valuation profile round-trips the divisor it came from.
//!
//! Run with `cargo run --example graded_series_volumes`.

use num_bigint::BigInt;

use fanfare::conical::{quadrant_fan, toric_degree, PLConicalFunction};
use fanfare::exact::{fmt_rat, rat_int};
use fanfare::series::{bdiv_roundtrip_check, fg_to_cartier, volume, MonomialGradedSeries};
use fanfare::Result;

fn main() -> Result<()> {
    let o11 = PLConicalFunction::from_ray_values(
        quadrant_fan()?,
        &[rat_int(-1), rat_int(-1), rat_int(0), rat_int(0)],
    )?;
    let series = MonomialGradedSeries::from_polytope(o11.polytope()?);
    let report = volume(&series, 20)?;
    println!("normalized dimensions dim(lP) * 2 / l^2 of the section series:");
    for (l, value) in report.sequence.iter().filter(|(l, _)| l % 5 == 0) {
        println!("  l = {l:>2}: {}", fmt_rat(value));
    }
    println!("  extrapolated: {}", fmt_rat(&report.extrapolated));
    println!(
        "  exact limit:  {} (toric degree {})",
        fmt_rat(&report.exact.expect("polytope series have exact limits")),
        fmt_rat(&toric_degree(&o11, 2)?)
    );

    let generated = MonomialGradedSeries::from_generators(
        2,
        vec![
            (vec![BigInt::from(0), BigInt::from(0)], 1),
            (vec![BigInt::from(1), BigInt::from(0)], 1),
            (vec![BigInt::from(0), BigInt::from(1)], 1),
        ],
    )?;
    let cartier = fg_to_cartier(&generated, o11.complex())?;
    println!(
        "\nthe generator presentation of the simplex series has Cartier degree {}",
        fmt_rat(&toric_degree(&cartier, 2)?)
    );

    let roundtrip = bdiv_roundtrip_check(&o11, &[])?;
    println!(
        "valuation profile returns the divisor at all {} sample vectors: {}",
        roundtrip.checked, roundtrip.matches
    );
    Ok(())
}
