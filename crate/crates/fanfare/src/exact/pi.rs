//! Scalars of the form `c * pi^k` with exact rational `c`.
//!
//! The asymptotic dimension formulas produce values where powers of pi
//! either survive or cancel against a symplectic volume. Keeping the power
//! explicit makes every cancellation auditable instead of silently folding
//! it into a float.

use std::fmt;

use num_traits::{Signed, Zero};

use super::{fixedpoint::Fixed, fmt_rat, Rat};
use crate::{Error, Result};

/// An exact rational multiple of an integer power of pi.
///
/// Zero is always stored with `pi_pow = 0`, so equality is structural.
/// Addition is only defined between equal powers; mixing powers is a logic
/// error in the caller and is reported, never coerced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiScalar {
    coeff: Rat,
    pi_pow: i64,
}

impl PiScalar {
    /// `coeff * pi^pi_pow`, normalizing zero to power 0.
    pub fn new(coeff: Rat, pi_pow: i64) -> Self {
        if coeff.is_zero() {
            PiScalar {
                coeff,
                pi_pow: 0,
            }
        } else {
            PiScalar { coeff, pi_pow }
        }
    }

    /// A plain rational, power 0.
    pub fn rational(coeff: Rat) -> Self {
        Self::new(coeff, 0)
    }

    /// The zero scalar.
    pub fn zero() -> Self {
        Self::rational(Rat::zero())
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn pi_pow(&self) -> i64 {
        self.pi_pow
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Exact product.
    pub fn mul(&self, other: &PiScalar) -> PiScalar {
        PiScalar::new(&self.coeff * &other.coeff, self.pi_pow + other.pi_pow)
    }

    /// Exact product with a rational.
    pub fn scale(&self, r: &Rat) -> PiScalar {
        PiScalar::new(&self.coeff * r, self.pi_pow)
    }

    /// Exact sum.
    ///
    /// # Errors
    ///
    /// Fails when the powers of pi differ and neither side is zero.
    pub fn add(&self, other: &PiScalar) -> Result<PiScalar> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_pow != other.pi_pow {
            return Err(Error::invalid(format!(
                "cannot add pi^{} term to pi^{} term",
                self.pi_pow, other.pi_pow
            )));
        }
        Ok(PiScalar::new(&self.coeff + &other.coeff, self.pi_pow))
    }

    pub fn neg(&self) -> PiScalar {
        PiScalar::new(-self.coeff.clone(), self.pi_pow)
    }

    /// Exact reciprocal.
    ///
    /// # Errors
    ///
    /// Fails on zero.
    pub fn recip(&self) -> Result<PiScalar> {
        if self.is_zero() {
            return Err(Error::invalid("division by zero PiScalar"));
        }
        Ok(PiScalar::new(self.coeff.recip(), -self.pi_pow))
    }

    /// Fixed-point decimal evaluation at `prec` bits.
    pub fn decimal(&self, prec: u32) -> Fixed {
        let c = Fixed::from_rat(&self.coeff, prec);
        if self.pi_pow == 0 || self.coeff.is_zero() {
            return c;
        }
        let p = Fixed::pi(prec).powi(self.pi_pow.unsigned_abs() as u32);
        if self.pi_pow > 0 {
            c.mul(&p)
        } else {
            c.div(&p)
        }
    }

    /// `f64` approximation, for reports and tolerance comparisons.
    pub fn to_f64(&self) -> f64 {
        self.decimal(96).to_f64()
    }
}

impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi_pow == 0 || self.coeff.is_zero() {
            return write!(f, "{}", fmt_rat(&self.coeff));
        }
        let pow = match self.pi_pow {
            1 => "pi".to_string(),
            p => format!("pi^{p}"),
        };
        if self.coeff.abs() == Rat::from_integer(1.into()) {
            let sign = if self.coeff.is_negative() { "-" } else { "" };
            write!(f, "{sign}{pow}")
        } else {
            write!(f, "{} {pow}", fmt_rat(&self.coeff))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn zero_normalizes_power() {
        let z = PiScalar::new(Rat::zero(), 7);
        assert_eq!(z.pi_pow(), 0);
        assert_eq!(z, PiScalar::zero());
    }

    #[test]
    fn arithmetic() {
        let a = PiScalar::new(rat(1, 3), 1);
        let b = PiScalar::new(rat(1, 6), 1);
        assert_eq!(a.add(&b).unwrap(), PiScalar::new(rat(1, 2), 1));
        assert_eq!(a.mul(&b), PiScalar::new(rat(1, 18), 2));
        assert_eq!(a.mul(&b.recip().unwrap()), PiScalar::rational(rat(2, 1)));
        assert!(a.add(&PiScalar::rational(rat(1, 1))).is_err());
        assert_eq!(a.add(&PiScalar::zero()).unwrap(), a);
    }

    #[test]
    fn multiplication_commutes_and_associates() {
        let a = PiScalar::new(rat(2, 3), 1);
        let b = PiScalar::new(rat(-5, 7), 2);
        let c = PiScalar::new(rat(9, 4), -1);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn decimal_evaluation() {
        let v = PiScalar::new(rat(1, 3), 1);
        let x = v.to_f64();
        assert!((x - std::f64::consts::PI / 3.0).abs() < 1e-12);
        let w = PiScalar::new(rat(2, 1), -2);
        assert!((w.to_f64() - 2.0 / (std::f64::consts::PI * std::f64::consts::PI)).abs() < 1e-12);
    }

    #[test]
    fn display_forms() {
        assert_eq!(PiScalar::rational(rat(3, 4)).to_string(), "3/4");
        assert_eq!(PiScalar::new(rat(1, 1), 1).to_string(), "pi");
        assert_eq!(PiScalar::new(rat(-1, 1), 3).to_string(), "-pi^3");
        assert_eq!(PiScalar::new(rat(1, 270), 3).to_string(), "1/270 pi^3");
        assert_eq!(PiScalar::new(rat(5, 2), -6).to_string(), "5/2 pi^-6");
    }
}
