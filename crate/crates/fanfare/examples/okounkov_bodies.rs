//! Okounkov bodies of monomial series: valuation points of the graded
//! components, normalized by degree, fill out a convex body whose volume
//! recovers the volume of the series.
//!
//! Run with `cargo run --example okounkov_bodies`.

use num_bigint::BigInt;

use fanfare::conical::{quadrant_fan, PLConicalFunction};
use fanfare::exact::{fmt_rat, rat_int};
use fanfare::polytope::Hull;
use fanfare::series::{okounkov_body, MonomialGradedSeries};
use fanfare::Result;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn describe(label: &str, hull: &Hull) -> Result<()> {
    match hull {
        Hull::Full(p) => {
            let vertices: Vec<String> = p
                .vertices()?
                .iter()
                .map(|v| {
                    let coords: Vec<String> = v.iter().map(fmt_rat).collect();
                    format!("({})", coords.join(", "))
                })
                .collect();
            println!(
                "{label}: volume {}, vertices {}",
                fmt_rat(&p.volume()?),
                vertices.join(" ")
            );
        }
        Hull::LowerDim { affine_dim } => {
            println!("{label}: degenerate, affine dimension {affine_dim}");
        }
        Hull::Empty => println!("{label}: empty"),
    }
    Ok(())
}

fn main() -> Result<()> {
    let o11 = PLConicalFunction::from_ray_values(
        quadrant_fan()?,
        &[rat_int(-1), rat_int(-1), rat_int(0), rat_int(0)],
    )?;
    let series = MonomialGradedSeries::from_polytope(o11.polytope()?);

    let standard = okounkov_body(&series, &[ints(&[1, 0]), ints(&[0, 1])], 4)?;
    describe("standard flag ", &standard.hull)?;

    let sheared = okounkov_body(&series, &[ints(&[1, 1]), ints(&[0, 1])], 4)?;
    describe("sheared flag  ", &sheared.hull)?;
    println!(
        "volumes agree under a unimodular change of flag: {}",
        standard.volume()? == sheared.volume()?
    );

    let segment = MonomialGradedSeries::from_generators(
        2,
        vec![(ints(&[1, 1]), 1), (ints(&[2, 2]), 2)],
    )?;
    let body = okounkov_body(&segment, &[ints(&[1, 0]), ints(&[0, 1])], 6)?;
    describe("diagonal segment series", &body.hull)?;
    Ok(())
}
