//! Binary fixed-point arithmetic on big integers.
//!
//! A [`Fixed`] stores `mant / 2^prec`. This is the crate's only home for
//! approximate values: logarithms inside log-determinant oracles, the
//! exponentials of test oracles, and decimal renderings of pi-graded
//! scalars. Every constructor takes the precision explicitly, and the
//! series below carry 32 guard bits so the returned mantissa is accurate
//! to within a few units in the last place.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Bit precision used when none is configured, overridable through the
/// `FANFARE_PREC_BITS` environment variable.
pub const DEFAULT_PREC_BITS: u32 = 200;

/// The configured fallback precision in bits.
///
/// Reads `FANFARE_PREC_BITS`; values outside `16..=100000` or unparsable
/// ones fall back to [`DEFAULT_PREC_BITS`].
pub fn default_prec() -> u32 {
    match std::env::var("FANFARE_PREC_BITS") {
        Ok(s) => match s.trim().parse::<u32>() {
            Ok(p) if (16..=100_000).contains(&p) => p,
            _ => DEFAULT_PREC_BITS,
        },
        Err(_) => DEFAULT_PREC_BITS,
    }
}

const GUARD: u32 = 32;

/// A signed binary fixed-point number `mant / 2^prec`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed {
    mant: BigInt,
    prec: u32,
}

impl Fixed {
    pub fn zero(prec: u32) -> Self {
        Fixed {
            mant: BigInt::zero(),
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        Fixed {
            mant: BigInt::one() << prec,
            prec,
        }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Fixed {
            mant: BigInt::from(n) << prec,
            prec,
        }
    }

    /// Round a rational to `prec` fractional bits.
    pub fn from_rat(r: &BigRational, prec: u32) -> Self {
        let num = r.numer() << (prec + 1);
        let q = num / r.denom();
        Fixed {
            mant: round_half(q),
            prec,
        }
    }

    /// The exact rational `mant / 2^prec`.
    pub fn to_rat(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn abs(&self) -> Self {
        Fixed {
            mant: self.mant.abs(),
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Self {
        Fixed {
            mant: -self.mant.clone(),
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &Fixed) -> Self {
        assert_eq!(self.prec, other.prec, "mixed precisions");
        Fixed {
            mant: &self.mant + &other.mant,
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Fixed) -> Self {
        assert_eq!(self.prec, other.prec, "mixed precisions");
        Fixed {
            mant: &self.mant - &other.mant,
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Fixed) -> Self {
        assert_eq!(self.prec, other.prec, "mixed precisions");
        let wide = (&self.mant * &other.mant) >> (self.prec - 1);
        Fixed {
            mant: round_half(wide),
            prec: self.prec,
        }
    }

    /// Division; panics on a zero divisor.
    pub fn div(&self, other: &Fixed) -> Self {
        assert_eq!(self.prec, other.prec, "mixed precisions");
        assert!(!other.mant.is_zero(), "division by zero");
        let wide = (&self.mant << (self.prec + 1)) / &other.mant;
        Fixed {
            mant: round_half(wide),
            prec: self.prec,
        }
    }

    /// Integer power by repeated squaring, `x^0 = 1`.
    pub fn powi(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Fixed::one(self.prec);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Change precision, rounding when narrowing.
    pub fn with_prec(&self, prec: u32) -> Self {
        if prec >= self.prec {
            Fixed {
                mant: &self.mant << (prec - self.prec),
                prec,
            }
        } else {
            let shifted = &self.mant >> (self.prec - prec - 1);
            Fixed {
                mant: round_half(shifted),
                prec,
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits();
        if bits == 0 {
            return 0.0;
        }
        if bits <= 52 {
            return self.mant.to_f64().unwrap_or(0.0) / 2f64.powi(self.prec as i32);
        }
        let shift = bits - 52;
        let top = (&self.mant >> shift).to_f64().unwrap_or(0.0);
        top * 2f64.powi(shift as i32 - self.prec as i32)
    }

    /// Natural logarithm; panics unless `self > 0`.
    pub fn ln(&self) -> Self {
        assert!(
            self.mant.sign() == Sign::Plus,
            "ln needs a strictly positive argument"
        );
        let prec = self.prec;
        let wp = prec + GUARD;
        let x = self.with_prec(wp);
        // Scale into [1, 2): x = m * 2^k.
        let k = x.mant.bits() as i64 - 1 - wp as i64;
        let m = if k >= 0 {
            Fixed {
                mant: &x.mant >> (k as u32),
                prec: wp,
            }
        } else {
            Fixed {
                mant: &x.mant << ((-k) as u32),
                prec: wp,
            }
        };
        let ln_m = atanh_of(&ratio_shifted(&m, wp), wp);
        let result = ln_m.add(&ln2(wp).mul_i64(k));
        result.with_prec(prec)
    }

    /// Exponential function.
    pub fn exp(&self) -> Self {
        let prec = self.prec;
        let wp = prec + GUARD;
        let x = self.with_prec(wp);
        let l2 = ln2(wp);
        // x = n ln2 + r with |r| <= ln2 / 2.
        let n_big = round_half((&x.mant << 1) / &l2.mant);
        let n = n_big.to_i64().expect("exp argument out of range");
        let r = x.sub(&l2.mul_i64(n));
        let mut sum = Fixed::one(wp);
        let mut term = Fixed::one(wp);
        let mut j: i64 = 1;
        loop {
            term = term.mul(&r);
            term = Fixed {
                mant: div_round(&term.mant, &BigInt::from(j)),
                prec: wp,
            };
            if term.mant.is_zero() {
                break;
            }
            sum = sum.add(&term);
            j += 1;
        }
        let shifted = if n >= 0 {
            Fixed {
                mant: sum.mant << (n as u32),
                prec: wp,
            }
        } else {
            Fixed {
                mant: round_half(sum.mant >> ((-n) as u32 - 1)),
                prec: wp,
            }
        };
        shifted.with_prec(prec)
    }

    /// The constant pi at the given precision, via Machin's formula.
    pub fn pi(prec: u32) -> Self {
        let wp = prec + GUARD;
        let a = atan_inv_int(5, wp).mul_i64(16);
        let b = atan_inv_int(239, wp).mul_i64(4);
        a.sub(&b).with_prec(prec)
    }

    fn mul_i64(&self, n: i64) -> Self {
        Fixed {
            mant: &self.mant * BigInt::from(n),
            prec: self.prec,
        }
    }
}

fn round_half(twice: BigInt) -> BigInt {
    // Rounds twice/2 to the nearest integer, halves away from zero.
    if twice.is_negative() {
        -round_half(-twice)
    } else {
        (twice + 1) >> 1
    }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    round_half((a << 1) / b)
}

/// `(m - 1) / (m + 1)` for `m` in `[1, 2)`, the atanh argument for ln.
fn ratio_shifted(m: &Fixed, wp: u32) -> Fixed {
    let one = Fixed::one(wp);
    m.sub(&one).div(&m.add(&one))
}

/// `2 * atanh(t)` for `|t| < 1/2`, by the odd series.
fn atanh_of(t: &Fixed, wp: u32) -> Fixed {
    let t2 = t.mul(t);
    let mut term = t.clone();
    let mut sum = t.clone();
    let mut j: i64 = 1;
    loop {
        term = term.mul(&t2);
        let contrib = Fixed {
            mant: div_round(&term.mant, &BigInt::from(2 * j + 1)),
            prec: wp,
        };
        if contrib.mant.is_zero() {
            break;
        }
        sum = sum.add(&contrib);
        j += 1;
    }
    sum.mul_i64(2)
}

fn ln2(wp: u32) -> Fixed {
    let third = Fixed::one(wp).div(&Fixed::from_int(3, wp));
    atanh_of(&third, wp)
}

/// `atan(1/x)` for integer `x >= 2`, by the alternating odd series.
fn atan_inv_int(x: i64, wp: u32) -> Fixed {
    let x2 = BigInt::from(x * x);
    let mut power = Fixed::one(wp);
    power = Fixed {
        mant: div_round(&power.mant, &BigInt::from(x)),
        prec: wp,
    };
    let mut sum = power.clone();
    let mut j: i64 = 1;
    loop {
        power = Fixed {
            mant: div_round(&power.mant, &x2),
            prec: wp,
        };
        let contrib = Fixed {
            mant: div_round(&power.mant, &BigInt::from(2 * j + 1)),
            prec: wp,
        };
        if contrib.mant.is_zero() {
            break;
        }
        if j % 2 == 1 {
            sum = sum.sub(&contrib);
        } else {
            sum = sum.add(&contrib);
        }
        j += 1;
    }
    sum
}
