//! Conical polyhedral complexes: building a fan, stellar subdivision with
//! the contraction map it induces, composing maps down a refinement
//! tower, and resolving a singular cone.
//!
//! Run with `cargo run --example fans_and_subdivision`.

use num_bigint::BigInt;

use fanfare::exact::{fmt_rat, rat};
use fanfare::fan::{build_complex, compose_maps, smoothen, subdivide_at};
use fanfare::Result;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn main() -> Result<()> {
    let quadrant = build_complex(
        2,
        vec![ints(&[1, 0]), ints(&[0, 1])],
        vec![vec![], vec![0], vec![1], vec![0, 1]],
    )?;
    println!(
        "quadrant fan: {} rays, {} cones, {} maximal",
        quadrant.rays().len(),
        quadrant.cones().len(),
        quadrant.maximal_cones().len()
    );

    let (once, to_coarse) = subdivide_at(&quadrant, &ints(&[1, 1]))?;
    let (twice, to_once) = subdivide_at(&once, &ints(&[2, 1]))?;
    println!(
        "after subdividing at (1,1) and (2,1): {} rays, {} maximal cones",
        twice.rays().len(),
        twice.maximal_cones().len()
    );

    let tower = compose_maps(&to_coarse, &to_once)?;
    let p = vec![rat(3, 2), rat(5, 7)];
    let direct = tower.apply(&p)?;
    let stepwise = to_coarse.apply(&to_once.apply(&p)?)?;
    println!(
        "composed map at (3/2, 5/7): ({}, {}), stepwise agrees: {}",
        fmt_rat(&direct[0]),
        fmt_rat(&direct[1]),
        direct == stepwise
    );

    let singular = build_complex(
        2,
        vec![ints(&[1, 0]), ints(&[1, 2])],
        vec![vec![], vec![0], vec![1], vec![0, 1]],
    )?;
    let smooth_before = singular.cones().iter().all(|c| c.is_smooth());
    let (resolved, _) = smoothen(&singular)?;
    let smooth_after = resolved.cones().iter().all(|c| c.is_smooth());
    println!(
        "cone <(1,0),(1,2)> smooth before: {smooth_before}, after resolution: {smooth_after}"
    );
    println!("resolution rays: {:?}", resolved.rays());
    Ok(())
}
