//! Deciding whether a conical function is piecewise linear. A function
//! given only through an evaluation oracle either interpolates to exact
//! PL data or is refuted by an additive triple inside a single cone, and
//! the refutation is a checkable certificate.
//!
//! Run with `cargo run --example piecewise_linear_or_not`.

use fanfare::conical::{
    parabola_support_oracle, pl_test, quadrant_fan, ConicalOracle, PLConicalFunction, PlOutcome,
};
use fanfare::exact::{fmt_rat, rat_int, Rat};
use fanfare::Result;

fn point(v: &[Rat]) -> String {
    let coords: Vec<String> = v.iter().map(fmt_rat).collect();
    format!("({})", coords.join(", "))
}

fn main() -> Result<()> {
    let pl = PLConicalFunction::from_ray_values(
        quadrant_fan()?,
        &[rat_int(-1), rat_int(-1), rat_int(0), rat_int(0)],
    )?;
    let oracle = ConicalOracle::from_pl(pl);
    match pl_test(&oracle, 3)? {
        PlOutcome::Pl { depth_tested, .. } => {
            println!("the support function of a line bundle is PL (depth {depth_tested})");
        }
        PlOutcome::NotPl { .. } => unreachable!("exact PL data always passes"),
    }

    let curved = parabola_support_oracle()?;
    match pl_test(&curved, 1)? {
        PlOutcome::Pl { .. } => unreachable!("a strictly curved graph cannot pass"),
        PlOutcome::NotPl { witness } => {
            println!("\nthe parabola support function is refuted at depth 1:");
            println!(
                "  f{} + f{} = {} + {}",
                point(&witness.x),
                point(&witness.y),
                fmt_rat(&witness.value_x),
                fmt_rat(&witness.value_y)
            );
            println!(
                "  f{}          = {}",
                point(&witness.z),
                fmt_rat(&witness.value_z)
            );
            println!("  inside the cone spanned by {:?}", witness.cone);
            println!("  witness re-verifies: {}", witness.verify(&curved)?);
        }
    }
    Ok(())
}
