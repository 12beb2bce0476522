//! The headline pipeline: the invariant metric on the Siegel-Jacobi line
//! bundle induces, over an admissible cone decomposition, a descended
//! conical function. That function is convex but provably not piecewise
//! linear, so the associated b-divisor is not Cartier, and the failure is
//! certified by one exact additive triple.
//!
//! Run with `cargo run --example siegel_certificate`.

use num_bigint::BigInt;

use fanfare::exact::{fmt_rat, rat, Rat};
use fanfare::recession::lelong_number;
use fanfare::siegel::{
    admissibility_check, cartier_diagnostic, chart_model_oracle, descended_function,
    extended_value, lelong_at_ray, standard_decomposition_g1, sufficiently_negative_builder,
    CartierOutcome, SiegelPoint,
};
use fanfare::Result;

fn point(v: &[Rat]) -> String {
    let coords: Vec<String> = v.iter().map(fmt_rat).collect();
    format!("({})", coords.join(", "))
}

fn main() -> Result<()> {
    let dec = standard_decomposition_g1();
    let admissible = admissibility_check(&dec)?;
    println!("standard genus-1 decomposition:");
    for item in &admissible.items {
        println!("  [{}] {}", if item.pass { "ok" } else { "FAIL" }, item.label);
    }

    let phi = sufficiently_negative_builder(&dec)?;
    println!(
        "\nbuilder flags: admissible {}, strictly anti-effective {}, polarization {}, sufficiently negative {}",
        phi.is_admissible(),
        phi.is_strictly_anti_effective(),
        phi.is_polarization(),
        phi.is_sufficiently_negative()
    );
    let sample = SiegelPoint::g1(rat(7, 2), rat(5, 3))?;
    println!(
        "extended to the full orbit by the translation law: phi(7/2, 5/3) = {}",
        fmt_rat(&extended_value(&phi, &dec, &sample)?)
    );

    for m in 1..=3u64 {
        match cartier_diagnostic(m, &phi, &dec, 1)? {
            CartierOutcome::NotCartier { witness } => {
                println!(
                    "\nm = {m}: NOT_CARTIER, witnessed by f{} + f{} = {} + {} but f{} = {}",
                    point(&witness.x),
                    point(&witness.y),
                    fmt_rat(&witness.value_x),
                    fmt_rat(&witness.value_y),
                    point(&witness.z),
                    fmt_rat(&witness.value_z)
                );
                let oracle = descended_function(m, &phi, &dec)?;
                println!("  the witness re-verifies: {}", witness.verify(&oracle)?);
            }
            CartierOutcome::Inconclusive { depth_tested } => {
                println!("\nm = {m}: no violation up to depth {depth_tested}");
            }
        }
    }

    println!("\nvanishing orders along the divisor at (2,1):");
    let u = SiegelPoint::g1(rat(2, 1), rat(1, 1))?;
    for m in 1..=3u64 {
        let direct = lelong_at_ray(m, &phi, &dec, &u)?;
        let chart = chart_model_oracle(m, &phi, &dec)?;
        let via_chart = lelong_number(&chart, &[BigInt::from(1), BigInt::from(1)])?;
        println!(
            "  m = {m}: {} (chart model gives {})",
            fmt_rat(&direct),
            fmt_rat(&via_chart)
        );
    }
    Ok(())
}
