//! Recession functions of closed convex functions, evaluated through
//! oracles with certified error bounds, and the Lelong numbers they
//! induce along primitive lattice directions.
//!
//! Run with `cargo run --example recession_and_lelong`.

use num_bigint::BigInt;
use num_traits::Signed;

use fanfare::exact::{fmt_rat, rat, rat_int, RatMatrix};
use fanfare::recession::{
    default_tol, lelong_number, make_logdet_oracle, make_qol_oracle, recession,
    recession_gap_check,
};
use fanfare::Result;

fn main() -> Result<()> {
    let logdet = make_logdet_oracle(vec![
        RatMatrix::from_int_rows(&[&[1, 0], &[0, 0]])?,
        RatMatrix::from_int_rows(&[&[0, 0], &[0, 1]])?,
    ])?;
    let tol = default_tol();
    let base = logdet.domain().basepoint();

    println!("-log det(u1 E11 + u2 E22), tolerance {}", fmt_rat(&tol));
    for dir in [[1i64, 0], [0, 1], [1, 1]] {
        let y: Vec<_> = dir.iter().map(|&c| rat_int(c)).collect();
        let r = recession(&logdet, &base, &y, &tol)?;
        println!(
            "  recession along ({}, {}): {} (error <= {})",
            dir[0],
            dir[1],
            fmt_rat(&r.value),
            fmt_rat(&r.error_bound)
        );
    }

    let shifted = vec![rat_int(3), rat(7, 2)];
    let at_base = recession(&logdet, &base, &[rat_int(1), rat_int(1)], &tol)?;
    let at_shift = recession(&logdet, &shifted, &[rat_int(1), rat_int(1)], &tol)?;
    let drift = (&at_base.value - &at_shift.value).abs();
    println!(
        "  basepoint independence: values drift by {} <= {}",
        fmt_rat(&drift),
        fmt_rat(&(rat_int(2) * &tol))
    );

    let v = vec![BigInt::from(1), BigInt::from(2)];
    println!(
        "  Lelong number along (1,2): {}",
        fmt_rat(&lelong_number(&logdet, &v)?)
    );

    let qol = make_qol_oracle(
        vec![RatMatrix::identity(1), RatMatrix::identity(1)],
        vec![vec![rat_int(0)], vec![rat_int(1)]],
        None,
    )?;
    let gap = recession_gap_check(&qol, &qol.domain().basepoint(), 100)?;
    println!(
        "\nquadratic-over-linear oracle, gap bound over {} samples: holds {} (max gap {})",
        gap.samples,
        gap.holds,
        fmt_rat(&gap.max_gap)
    );
    Ok(())
}
