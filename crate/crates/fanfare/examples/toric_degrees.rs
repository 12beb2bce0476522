//! Toric degrees from piecewise linear data: the self-intersection number
//! of the divisor attached to a concave support function is the
//! normalized volume of its section polytope, computed exactly.
//!
//! Run with `cargo run --example toric_degrees`.

use num_bigint::BigInt;

use fanfare::conical::{concavity_test, quadrant_fan, toric_degree, PLConicalFunction};
use fanfare::exact::{fmt_rat, rat_int};
use fanfare::fan::build_complex;
use fanfare::Result;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn main() -> Result<()> {
    let p2 = build_complex(
        2,
        vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[-1, -1])],
        vec![
            vec![],
            vec![0],
            vec![1],
            vec![2],
            vec![0, 1],
            vec![1, 2],
            vec![2, 0],
        ],
    )?;
    let hyperplane =
        PLConicalFunction::from_ray_values(p2, &[rat_int(-1), rat_int(0), rat_int(0)])?;
    println!(
        "hyperplane class on the projective plane: degree {}",
        fmt_rat(&toric_degree(&hyperplane, 2)?)
    );

    let o11 = PLConicalFunction::from_ray_values(
        quadrant_fan()?,
        &[rat_int(-1), rat_int(-1), rat_int(0), rat_int(0)],
    )?;
    println!(
        "bidegree (1,1) on the product of two lines: degree {}",
        fmt_rat(&toric_degree(&o11, 2)?)
    );

    for lambda in [2, 3, 5] {
        let scaled = o11.scale(&rat_int(lambda));
        println!(
            "  scaled by {lambda}: degree {} (quadratic homogeneity)",
            fmt_rat(&toric_degree(&scaled, 2)?)
        );
    }

    let report = concavity_test(&o11)?;
    println!("the (1,1) support function is concave: {}", report.is_concave);
    let tilted = PLConicalFunction::from_ray_values(
        quadrant_fan()?,
        &[rat_int(1), rat_int(1), rat_int(0), rat_int(0)],
    )?;
    let report = concavity_test(&tilted)?;
    println!(
        "flipping the sign breaks concavity: {} (violating wall {:?})",
        report.is_concave, report.violating_wall
    );
    Ok(())
}
