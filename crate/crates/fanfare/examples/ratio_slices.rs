//! Fixed-ratio slices of bidegree semigroups: an element of ratio `n` is
//! a product of ratio-`n` generators, because a product's ratio is a
//! mediant of the factors' ratios. The slice generators therefore answer
//! membership questions without any enumeration.
//!
//! Run with `cargo run --example ratio_slices`.

use fanfare::exact::{fmt_rat, rat, rat_int};
use fanfare::series::{ratio_filter, slice_contains, BidegreeSemigroup};
use fanfare::Result;

fn main() -> Result<()> {
    let semigroup = BidegreeSemigroup::new(vec![(1, 1), (2, 2), (1, 2), (3, 1)])?;
    println!("generators: (1,1) (2,2) (1,2) (3,1)");
    println!(
        "elements with k + m <= 6: {:?}",
        semigroup.enumerate(6)
    );

    for n in [rat_int(1), rat_int(2), rat(1, 3)] {
        let slice = ratio_filter(&semigroup, &n)?;
        println!(
            "ratio {}: slice generated by {:?}, max ratio {}",
            fmt_rat(&n),
            slice.slice_generators,
            fmt_rat(&slice.max_ratio)
        );
    }

    let n = rat_int(1);
    for point in [(3, 3), (4, 4), (2, 3)] {
        println!(
            "  ({}, {}) lies in the ratio-1 slice: {}",
            point.0,
            point.1,
            slice_contains(&semigroup, &n, point)?
        );
    }
    Ok(())
}
