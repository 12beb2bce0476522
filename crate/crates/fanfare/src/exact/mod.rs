//! Exact arithmetic substrate.
//!
//! Arbitrary-precision rationals (re-exported as [`Rat`]), scalars of the
//! form `c * pi^k`, exact rational matrices with positive-semidefiniteness
//! certificates, Bernoulli numbers, zeta values at negative odd integers,
//! and a fixed-point kernel for the handful of places where a decimal
//! approximation of a transcendental value is unavoidable.
//!
//! Nothing in this module ever rounds. The only approximate computations
//! live in [`fixedpoint`], and those carry an explicit bit precision.

mod bernoulli;
pub mod fixedpoint;
mod mat;
mod pi;
mod psd;

pub use bernoulli::{bernoulli, binomial, double_factorial_odd, factorial, zeta_negative};
pub use mat::RatMatrix;
pub use pi::PiScalar;
pub use psd::{psd_certify, trace_dominance, PsdOutcome};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// The coefficient field of the whole crate.
pub type Rat = BigRational;

/// Rational from an integer pair. Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse a rational from the wire form `"p/q"` or `"p"`.
///
/// # Errors
///
/// Fails on malformed integers or a zero denominator.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|e| Error::parse(format!("bad numerator {num:?}: {e}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|e| Error::parse(format!("bad denominator {den:?}: {e}")))?;
    if den.is_zero() {
        return Err(Error::parse("zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// Format a rational in the wire form `"p/q"`, omitting `/1`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Best-effort conversion to `f64`, for reports and diagnostics only.
pub fn rat_to_f64(r: &Rat) -> f64 {
    fixedpoint::Fixed::from_rat(r, 128).to_f64()
}

/// Euclidean gcd of the absolute values, with `gcd(0, 0) = 0`.
pub fn gcd_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::gcd(a, b)
}

/// Divide an integer vector by the gcd of its entries.
///
/// Returns `None` for the zero vector. The sign convention keeps the first
/// nonzero entry's sign, so primitivizing is idempotent and sign-stable.
pub fn primitive_vector(v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut g = BigInt::zero();
    for x in v {
        g = gcd_bigint(&g, x);
    }
    if g.is_zero() {
        return None;
    }
    Some(v.iter().map(|x| x / &g).collect())
}

/// True if the integer vector is nonzero with coprime entries.
pub fn is_primitive(v: &[BigInt]) -> bool {
    let mut g = BigInt::zero();
    for x in v {
        g = gcd_bigint(&g, x);
    }
    g.is_one()
}

/// Exact dot product of rational vectors.
///
/// # Errors
///
/// Fails when the lengths differ.
pub fn dot(a: &[Rat], b: &[Rat]) -> Result<Rat> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(a.iter().zip(b).map(|(x, y)| x * y).sum())
}

/// Maximum of the absolute values of the entries.
pub fn linf_norm(v: &[Rat]) -> Rat {
    v.iter()
        .map(|x| x.abs())
        .fold(Rat::zero(), |m, x| if x > m { x } else { m })
}

/// Integer vector to rationals.
pub fn to_rat_vec(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Rational vector scaled to a primitive integer vector, if nonzero.
pub fn rat_vec_to_primitive(v: &[Rat]) -> Option<Vec<BigInt>> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num_integer::Integer::lcm(&lcm, x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive_vector(&ints)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["3/4", "-7/2", "5", "0", "-12"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(fmt_rat(&parse_rat("6/4").unwrap()), "3/2");
        assert_eq!(fmt_rat(&parse_rat(" -2 / 6 ").unwrap()), "-1/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn primitive_vectors() {
        let v: Vec<BigInt> = [4, -6, 2].iter().map(|&x| BigInt::from(x)).collect();
        let p = primitive_vector(&v).unwrap();
        assert_eq!(p, [2, -3, 1].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        assert!(is_primitive(&p));
        assert!(primitive_vector(&[BigInt::zero(), BigInt::zero()]).is_none());
    }

    #[test]
    fn rational_vector_scaling() {
        let v = vec![rat(1, 2), rat(-1, 3)];
        let p = rat_vec_to_primitive(&v).unwrap();
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(-2)]);
        assert!(rat_vec_to_primitive(&[Rat::zero()]).is_none());
    }
}
