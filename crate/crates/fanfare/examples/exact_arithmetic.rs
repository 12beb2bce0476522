//! The arithmetic layer: arbitrary-precision rationals, scalars carrying
//! an exact power of pi, Bernoulli numbers with the zeta values they
//! determine, and symmetric-matrix certificates.
//!
//! Run with `cargo run --example exact_arithmetic`.

use fanfare::exact::{
    bernoulli, psd_certify, rat, trace_dominance, zeta_negative, PiScalar, RatMatrix,
};
use fanfare::Result;

fn main() -> Result<()> {
    println!("Bernoulli numbers and zeta values at negative odd integers");
    for k in 1..=6 {
        let b = bernoulli(2 * k);
        let z = zeta_negative(k);
        println!("  B_{} = {:>10}    zeta({:>3}) = {}", 2 * k, b, 1 - 2 * (k as i64), z);
    }

    println!("\nScalars with an exact pi grading");
    let third_pi = PiScalar::new(rat(1, 3), 1);
    let squared = third_pi.mul(&third_pi);
    println!("  ({third_pi})^2 = {squared}");
    println!("  reciprocal    = {}", squared.recip()?);
    println!("  as f64        = {}", squared.to_f64());

    println!("\nPositive semidefiniteness is decided exactly");
    let gram = RatMatrix::from_int_rows(&[&[2, 1], &[1, 1]])?;
    println!(
        "  [[2,1],[1,1]]  definite:     {}",
        psd_certify(&gram)?.is_definite()
    );
    let indefinite = RatMatrix::from_int_rows(&[&[1, 0], &[0, -1]])?;
    println!(
        "  [[1,0],[0,-1]] semidefinite: {}",
        psd_certify(&indefinite)?.is_semidefinite()
    );

    println!("\nTrace dominance 0 <= tr((A+B)^-1 C) <= tr(A^-1 C)");
    let a = RatMatrix::identity(3);
    let b = RatMatrix::from_int_rows(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, 0]])?;
    let c = RatMatrix::identity(3);
    println!(
        "  holds for a sample triple: {}",
        trace_dominance(&a, &b, &c)?
    );
    Ok(())
}
