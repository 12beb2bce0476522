//! Exact positive-semidefiniteness certificates and the trace-dominance
//! inequality for resolvent traces.

use num_traits::{Signed, Zero};

use super::{Rat, RatMatrix};
use crate::{Error, Result};

/// Outcome of [`psd_certify`], always carrying an exact witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdOutcome {
    /// All pivots of the symmetric elimination are strictly positive.
    PositiveDefinite,
    /// Semidefinite with a nontrivial kernel, spanned by the given
    /// rational basis vectors.
    PsdWithKernel { kernel: Vec<Vec<Rat>> },
    /// Not positive semidefinite: `witness^t M witness = value < 0`.
    NotPsd { witness: Vec<Rat>, value: Rat },
}

impl PsdOutcome {
    pub fn is_definite(&self) -> bool {
        matches!(self, PsdOutcome::PositiveDefinite)
    }

    pub fn is_semidefinite(&self) -> bool {
        !matches!(self, PsdOutcome::NotPsd { .. })
    }
}

/// Classify a symmetric rational matrix exactly.
///
/// Runs a symmetric congruence elimination with lowest-index pivoting.
/// A negative pivot or an indefinite 2x2 block yields a `NotPsd` witness
/// vector in the original coordinates; zero rows yield kernel vectors.
/// The witness value is re-evaluated against the input matrix before
/// returning, so the certificate is self-checking.
///
/// # Errors
///
/// Fails on non-symmetric input.
pub fn psd_certify(m: &RatMatrix) -> Result<PsdOutcome> {
    m.check_symmetric()?;
    let n = m.nrows();
    let mut a = m.clone();
    // Congruence transform accumulator: a = p * m * p^t at every step, so a
    // vector w in working coordinates pulls back to p^t w.
    let mut p = RatMatrix::identity(n);
    let mut kernel: Vec<Vec<Rat>> = Vec::new();

    for k in 0..n {
        let d = a.get(k, k).clone();
        if d.is_negative() {
            let witness = pullback_unit(&p, k);
            return Ok(finish_not_psd(m, witness));
        }
        if d.is_zero() {
            match ((k + 1)..n).find(|&j| !a.get(k, j).is_zero()) {
                None => {
                    // Entries left of the pivot were eliminated earlier, so
                    // the whole working row vanishes and e_k is in the
                    // kernel of the transformed matrix.
                    kernel.push(pullback_unit(&p, k));
                    continue;
                }
                Some(j) => {
                    // Indefinite block [[0, b], [b, d_j]]: the combination
                    // t e_k + e_j with t = -(d_j + 1) / (2 b) evaluates to
                    // exactly -1.
                    let b = a.get(k, j).clone();
                    let djj = a.get(j, j).clone();
                    let t = -(djj + Rat::from_integer(1.into())) / (Rat::from_integer(2.into()) * b);
                    let pk = p.row(k);
                    let pj = p.row(j);
                    let witness: Vec<Rat> =
                        pk.iter().zip(pj).map(|(x, y)| &t * x + y).collect();
                    return Ok(finish_not_psd(m, witness));
                }
            }
        } else {
            for r in (k + 1)..n {
                let f = a.get(r, k) / &d;
                if f.is_zero() {
                    continue;
                }
                // Symmetric update: subtract f * (row k) from row r and the
                // same from column r, and track the row operation in p.
                for c in 0..n {
                    let v = a.get(r, c) - &f * a.get(k, c);
                    a.set(r, c, v);
                }
                for c in 0..n {
                    let v = a.get(c, r) - &f * a.get(c, k);
                    a.set(c, r, v);
                }
                for c in 0..n {
                    let v = p.get(r, c) - &f * p.get(k, c);
                    p.set(r, c, v);
                }
            }
        }
    }

    if kernel.is_empty() {
        Ok(PsdOutcome::PositiveDefinite)
    } else {
        Ok(PsdOutcome::PsdWithKernel { kernel })
    }
}

fn pullback_unit(p: &RatMatrix, k: usize) -> Vec<Rat> {
    p.row(k).to_vec()
}

fn finish_not_psd(m: &RatMatrix, witness: Vec<Rat>) -> PsdOutcome {
    let value = m
        .quadratic_form(&witness)
        .expect("witness has the matrix dimension");
    debug_assert!(value.is_negative(), "witness must certify negativity");
    PsdOutcome::NotPsd { witness, value }
}

/// Check the exact resolvent-trace inequality
/// `0 <= tr((A + B)^{-1} C) <= tr(A^{-1} C)`.
///
/// `A` must be symmetric positive definite and `B`, `C` symmetric positive
/// semidefinite of the same size. On valid input the inequality always
/// holds, so this doubles as a self-test of the matrix kernel.
///
/// # Errors
///
/// Fails on dimension mismatch, non-symmetric input, or when a matrix
/// misses its required definiteness class.
pub fn trace_dominance(a: &RatMatrix, b: &RatMatrix, c: &RatMatrix) -> Result<bool> {
    if a.nrows() != b.nrows() || a.nrows() != c.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.nrows().max(c.nrows()),
        });
    }
    if !psd_certify(a)?.is_definite() {
        return Err(Error::invalid("matrix A must be positive definite"));
    }
    if !psd_certify(b)?.is_semidefinite() {
        return Err(Error::invalid("matrix B must be positive semidefinite"));
    }
    if !psd_certify(c)?.is_semidefinite() {
        return Err(Error::invalid("matrix C must be positive semidefinite"));
    }
    let lower = a.add(b)?.inverse()?.matmul(c)?.trace()?;
    let upper = a.inverse()?.matmul(c)?.trace()?;
    Ok(!lower.is_negative() && lower <= upper)
}
