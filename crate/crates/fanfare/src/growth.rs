//! Closed-form leading terms for the dimension growth of bigraded spaces
//! of forms, in exact rational-pi arithmetic.
//!
//! The same degree is computed along three independent routes: a zeta-value
//! product, a Bernoulli product against an explicit power of two, and a
//! symplectic volume against a power of pi. A fourth route walks the toric
//! degree factor by factor. The four values are cross-checked exactly on
//! every call, so a disagreement surfaces as an error instead of a silently
//! wrong table.

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::{
    bernoulli, binomial, double_factorial_odd, factorial, zeta_negative, PiScalar, Rat,
};
use crate::siegel::{form_rank, mixed_rank};
use crate::{Error, Result};

/// The discrete weight data of one bigraded family: genus, the two weight
/// scales, the index of the congruence subgroup, and whether the negated
/// identity belongs to it. The last flag doubles every degree and is always
/// explicit input, never inferred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightIndex {
    genus: usize,
    k: u64,
    m: u64,
    index: u64,
    minus_id: bool,
}

impl WeightIndex {
    /// Validate the weight data: every numeric entry must be positive.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] on a zero entry.
    pub fn new(genus: usize, k: u64, m: u64, index: u64, minus_id: bool) -> Result<Self> {
        if genus == 0 {
            return Err(Error::invalid("genus must be positive"));
        }
        if k == 0 || m == 0 {
            return Err(Error::invalid("both weight scales must be positive"));
        }
        if index == 0 {
            return Err(Error::invalid("the subgroup index must be positive"));
        }
        Ok(WeightIndex {
            genus,
            k,
            m,
            index,
            minus_id,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn minus_id(&self) -> bool {
        self.minus_id
    }

    /// Dimension of the form cone, the exponent of `k` in every degree.
    pub fn form_rank(&self) -> usize {
        form_rank(self.genus)
    }

    /// Dimension of the mixed cone, the order of growth in the level.
    pub fn mixed_rank(&self) -> usize {
        mixed_rank(self.genus)
    }
}

fn sign(exponent: usize) -> Rat {
    if exponent % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

fn pow2(exponent: usize) -> Rat {
    Rat::from_integer(BigInt::from(2).pow(exponent as u32))
}

/// Product over `j = 1..=g` of `(j-1)! B_{2j} / (2j)!`, the Bernoulli core
/// shared by the volume and the second closed form.
fn bernoulli_core(genus: usize) -> Rat {
    let mut acc = Rat::one();
    for j in 1..=genus {
        acc *= Rat::from_integer(factorial(j - 1)) * bernoulli(2 * j)
            / Rat::from_integer(factorial(2 * j));
    }
    acc
}

/// Product over `j = 1..=g` of `zeta(1-2j) / (2j-1)!!`, the zeta core of
/// the first closed form and the toric pipeline.
fn zeta_core(genus: usize) -> Rat {
    let mut acc = Rat::one();
    for j in 1..=genus {
        acc *= zeta_negative(j) / Rat::from_integer(double_factorial_odd(j));
    }
    acc
}

/// The symplectic volume of the rank-`genus` period domain as an exact
/// multiple of `pi^G`.
pub fn siegel_volume(genus: usize) -> PiScalar {
    let g2 = genus * genus;
    let coeff = sign(mixed_rank(genus)) * pow2(g2 + 1) * bernoulli_core(genus);
    PiScalar::new(coeff, form_rank(genus) as i64)
}

/// One weight's degree computed along every route, with the cross-checks
/// already passed. All entries are [`PiScalar`], even where the power of
/// pi has cancelled to zero, so the provenance of each value stays
/// visible.
#[derive(Debug, Clone)]
pub struct AsymptoticsReport {
    pub weight: WeightIndex,
    pub form_a: PiScalar,
    pub form_b: PiScalar,
    pub form_c: PiScalar,
    pub pipeline: PiScalar,
    pub volume: PiScalar,
}

impl AsymptoticsReport {
    /// The common value of the four routes.
    pub fn degree(&self) -> &PiScalar {
        &self.form_a
    }
}

fn common_prefactor(wi: &WeightIndex) -> Rat {
    let mut pref = Rat::from_integer(factorial(wi.mixed_rank()));
    pref *= Rat::from_integer(BigInt::from(wi.m).pow(wi.genus as u32));
    pref *= Rat::from_integer(BigInt::from(wi.k).pow(wi.form_rank() as u32));
    pref *= Rat::from_integer(BigInt::from(wi.index));
    if wi.minus_id {
        pref *= pow2(1);
    }
    pref
}

/// Evaluate the degree along the three closed forms and the toric
/// pipeline, cross-checking all four exactly.
///
/// # Errors
///
/// [`Error::CrossCheck`] when any two routes disagree, which indicates a
/// bug in the formulas rather than bad input and must never fire.
pub fn closed_forms(wi: &WeightIndex) -> Result<AsymptoticsReport> {
    let g = wi.genus;
    let big_g = wi.form_rank();
    let n = wi.mixed_rank();
    let pref = common_prefactor(wi);

    let form_a = PiScalar::rational(sign(big_g) * &pref * zeta_core(g));
    let form_b = PiScalar::rational(sign(n) * &pref * pow2(big_g - g) * bernoulli_core(g));
    let form_c = siegel_volume(g)
        .scale(&(&pref / pow2(big_g + 1)))
        .mul(&PiScalar::new(Rat::one(), -(big_g as i64)));
    let pipeline = degree_pipeline(wi);

    for (label, value) in [("B", &form_b), ("C", &form_c), ("pipeline", &pipeline)] {
        if *value != form_a {
            return Err(Error::CrossCheck(format!(
                "degree route {label} gives {value} against route A giving {form_a}"
            )));
        }
    }
    Ok(AsymptoticsReport {
        weight: wi.clone(),
        form_a,
        form_b,
        form_c,
        pipeline,
        volume: siegel_volume(g),
    })
}

/// The degree assembled factor by factor along the toric route: the
/// binomial count of coordinate blocks, the weight monomial, the fiber
/// factor `2^g g!`, the subgroup index, and the zeta core against the odd
/// double factorials.
pub fn degree_pipeline(wi: &WeightIndex) -> PiScalar {
    let g = wi.genus;
    let big_g = wi.form_rank();
    let n = wi.mixed_rank();
    let mut value = Rat::from_integer(binomial(n, g));
    value *= Rat::from_integer(BigInt::from(wi.m).pow(g as u32));
    value *= Rat::from_integer(BigInt::from(wi.k).pow(big_g as u32));
    value *= pow2(g) * Rat::from_integer(factorial(g));
    value *= Rat::from_integer(BigInt::from(wi.index));
    value *= sign(big_g) * Rat::from_integer(factorial(big_g)) / pow2(g);
    value *= zeta_core(g);
    if wi.minus_id {
        value *= pow2(1);
    }
    PiScalar::rational(value)
}

/// Dimensions that are forced by the weight alone: `1` for the zero
/// weight, `0` for a negative scale or for weight zero with a positive
/// index, and `None` where an actual computation is needed.
pub fn trivial_dims(k: i64, m: i64) -> Option<u64> {
    if k < 0 || m < 0 {
        return Some(0);
    }
    if k == 0 {
        return Some(if m == 0 { 1 } else { 0 });
    }
    None
}

/// Predicted dimensions `degree * level^n / n!` at the requested levels.
///
/// # Errors
///
/// Propagates the [`closed_forms`] cross-check.
pub fn asymptotic_table(wi: &WeightIndex, levels: &[u64]) -> Result<Vec<(u64, PiScalar)>> {
    let degree = closed_forms(wi)?.form_a;
    let n = wi.mixed_rank();
    let n_factorial = Rat::from_integer(factorial(n));
    let mut rows = Vec::with_capacity(levels.len());
    for &level in levels {
        let growth = Rat::from_integer(BigInt::from(level).pow(n as u32)) / &n_factorial;
        rows.push((level, degree.scale(&growth)));
    }
    Ok(rows)
}

/// Render a table as CSV with a header row.
pub fn table_csv(rows: &[(u64, PiScalar)]) -> String {
    let mut out = String::from("level,predicted_dimension\n");
    for (level, value) in rows {
        out.push_str(&format!("{level},{value}\n"));
    }
    out
}
