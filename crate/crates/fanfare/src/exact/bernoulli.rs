//! Bernoulli numbers, zeta values at negative odd integers, and the small
//! combinatorial helpers the closed-form dimension formulas need.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use super::Rat;

static BERNOULLI_TABLE: Lazy<Mutex<Vec<Rat>>> =
    Lazy::new(|| Mutex::new(vec![Rat::one(), Rat::new(BigInt::from(-1), BigInt::from(2))]));

/// The Bernoulli number `B_n` with the convention `B_1 = -1/2`.
///
/// Computed by the recurrence `sum_{k=0}^{n} C(n+1, k) B_k = 0` and
/// memoized, so repeated calls are cheap.
pub fn bernoulli(n: usize) -> Rat {
    let mut table = BERNOULLI_TABLE.lock().unwrap();
    while table.len() <= n {
        let m = table.len();
        let mut acc = Rat::zero();
        for (k, b) in table.iter().enumerate() {
            acc += Rat::from_integer(binomial(m + 1, k)) * b;
        }
        let next = -acc / Rat::from_integer(BigInt::from(m + 1));
        table.push(next);
    }
    table[n].clone()
}

/// The zeta value `zeta(1 - 2k) = -B_{2k} / (2k)` for `k >= 1`.
pub fn zeta_negative(k: usize) -> Rat {
    assert!(k >= 1, "zeta_negative needs k >= 1");
    -bernoulli(2 * k) / Rat::from_integer(BigInt::from(2 * k))
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Factorial `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Odd double factorial `(2k - 1)!! = 1 * 3 * ... * (2k - 1)`, with the
/// empty product for `k = 0`.
pub fn double_factorial_odd(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn small_bernoulli_numbers() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), rat(0, 1));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(8), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn zeta_at_negative_odd_integers() {
        assert_eq!(zeta_negative(1), rat(-1, 12));
        assert_eq!(zeta_negative(2), rat(1, 120));
        assert_eq!(zeta_negative(3), rat(-1, 252));
        for k in 1..=10 {
            let expected = -bernoulli(2 * k) / rat(2 * k as i64, 1);
            assert_eq!(zeta_negative(k), expected);
        }
    }

    #[test]
    fn odd_bernoulli_vanish_beyond_one() {
        for n in (3..25).step_by(2) {
            assert!(bernoulli(n).is_zero(), "B_{n} should vanish");
        }
    }

    #[test]
    fn combinatorial_helpers() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 0), BigInt::one());
        assert_eq!(binomial(3, 7), BigInt::zero());
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(double_factorial_odd(0), BigInt::one());
        assert_eq!(double_factorial_odd(1), BigInt::one());
        assert_eq!(double_factorial_odd(3), BigInt::from(15));
        assert_eq!(double_factorial_odd(4), BigInt::from(105));
    }

    #[test]
    fn pascal_identity_for_binomials() {
        for n in 1..12usize {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }
}
