//! Closed convex functions on box cones and their recession functions.
//!
//! The recession function of a convex `g` along a direction `y` of the
//! domain's recession cone is the limit of the difference quotients
//! `(g(x + t y) - g(x)) / t`, which increase in `t`. The quotient at any
//! finite `t` is therefore always a certified lower bound; closing the
//! bracket from above needs structural information about the oracle, and
//! [`recession`] dispatches on the declared [`OracleShape`] to produce a
//! rigorous two-sided bound or fail honestly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::fixedpoint::{default_prec, Fixed};
use crate::exact::{dot, is_primitive, to_rat_vec, Rat, RatMatrix};
use crate::sample::Sampler;
use crate::{Error, Result};

/// Default certification tolerance, one part in a million.
pub fn default_tol() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(1_000_000u64))
}

/// Rounding slop charged to oracles that evaluate through finite
/// precision: far below any usable tolerance at the default 200 bits.
fn rounding_slop() -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << 140)
}

/// A product of half-lines and full lines: coordinates with a lower bound
/// `c` range over `[c, inf)`, the rest over all rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxDomain {
    lower: Vec<Option<Rat>>,
}

impl BoxDomain {
    pub fn new(lower: Vec<Option<Rat>>) -> Self {
        BoxDomain { lower }
    }

    /// The orthant `[c, inf)^dim`.
    pub fn orthant(dim: usize, c: Rat) -> Self {
        BoxDomain {
            lower: vec![Some(c); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        x.len() == self.lower.len()
            && x.iter()
                .zip(&self.lower)
                .all(|(xi, lo)| lo.as_ref().is_none_or(|c| xi >= c))
    }

    /// Membership in the recession cone: bounded coordinates must not
    /// decrease.
    pub fn recession_contains(&self, y: &[Rat]) -> bool {
        y.len() == self.lower.len()
            && y.iter()
                .zip(&self.lower)
                .all(|(yi, lo)| lo.is_none() || !yi.is_negative())
    }

    /// The canonical basepoint: one above each lower bound, zero on free
    /// coordinates.
    pub fn basepoint(&self) -> Vec<Rat> {
        self.lower
            .iter()
            .map(|lo| match lo {
                Some(c) => c + Rat::one(),
                None => Rat::zero(),
            })
            .collect()
    }
}

/// Structural information that lets [`recession`] certify an upper bound
/// to go with the monotone lower bound.
#[derive(Debug, Clone)]
pub enum OracleShape {
    /// No structure beyond convexity. Recession limits are certified only
    /// when the oracle is also declared bounded above, and then only a
    /// zero limit can close the bracket.
    General,
    /// Homogeneous of degree one: the recession function is the function
    /// itself and the quotient bracket closes at rate `1/t` when a
    /// Lipschitz constant is declared.
    Conical,
    /// `g = constant + <coeffs, x> + deviation` with the deviation ranged
    /// in `[deviation_lo, deviation_hi]` over the whole domain.
    AffinePlusBounded {
        coeffs: Vec<Rat>,
        deviation_lo: Rat,
        deviation_hi: Rat,
    },
    /// A finite maximum of affine forms `offset_i + <form_i, x>`.
    Table {
        offsets: Vec<Rat>,
        forms: Vec<Vec<Rat>>,
    },
}

type ConvexEval = Box<dyn Fn(&[Rat]) -> Result<Rat> + Send + Sync>;

/// A closed convex function given by an evaluation callback on a box
/// domain, with declared structure.
pub struct ConvexOracle {
    domain: BoxDomain,
    eval: ConvexEval,
    shape: OracleShape,
    /// Upper bound on the Euclidean Lipschitz constant, when known.
    lipschitz: Option<Rat>,
    /// Declared upper bound for the values, when the function has one.
    bound_above: Option<Rat>,
    /// Whether the callback is exact; inexact callbacks must be correctly
    /// rounded at the working precision and are charged [`rounding_slop`].
    exact: bool,
}

impl std::fmt::Debug for ConvexOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConvexOracle")
            .field("domain", &self.domain)
            .field("shape", &self.shape)
            .field("lipschitz", &self.lipschitz)
            .field("bound_above", &self.bound_above)
            .field("exact", &self.exact)
            .finish()
    }
}

impl ConvexOracle {
    /// Wrap a callback, spot-checking midpoint convexity on random
    /// segments and the declared upper bound on sampled values.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] when a spot check fails.
    pub fn new(
        domain: BoxDomain,
        eval: ConvexEval,
        shape: OracleShape,
        lipschitz: Option<Rat>,
        bound_above: Option<Rat>,
        exact: bool,
    ) -> Result<Self> {
        let oracle = ConvexOracle {
            domain,
            eval,
            shape,
            lipschitz,
            bound_above,
            exact,
        };
        oracle.spot_check()?;
        Ok(oracle)
    }

    fn spot_check(&self) -> Result<()> {
        let mut s = Sampler::new(0xC0_4EC);
        let slop = if self.exact { Rat::zero() } else { rounding_slop() };
        for _ in 0..12 {
            let a = self.random_point(&mut s);
            let b = self.random_point(&mut s);
            let mid: Vec<Rat> = a
                .iter()
                .zip(&b)
                .map(|(p, q)| (p + q) / Rat::from_integer(2.into()))
                .collect();
            let fa = self.eval(&a)?;
            let fb = self.eval(&b)?;
            let fm = self.eval(&mid)?;
            if &fm * Rat::from_integer(2.into()) > &fa + &fb + Rat::from_integer(4.into()) * &slop {
                return Err(Error::invalid(
                    "midpoint convexity fails on a sampled segment",
                ));
            }
            if let Some(bound) = &self.bound_above {
                if fa > bound + &slop || fb > bound + &slop {
                    return Err(Error::invalid(
                        "a sampled value exceeds the declared upper bound",
                    ));
                }
            }
        }
        Ok(())
    }

    fn random_point(&self, s: &mut Sampler) -> Vec<Rat> {
        self.domain
            .lower
            .iter()
            .map(|lo| match lo {
                Some(c) => c + s.rat(40, 8).abs(),
                None => s.rat(40, 8),
            })
            .collect()
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn shape(&self) -> &OracleShape {
        &self.shape
    }

    pub fn lipschitz(&self) -> Option<&Rat> {
        self.lipschitz.as_ref()
    }

    pub fn bound_above(&self) -> Option<&Rat> {
        self.bound_above.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Evaluate the callback.
    ///
    /// # Errors
    ///
    /// [`Error::OutsideSupport`] off the domain; callback errors
    /// propagate.
    pub fn eval(&self, x: &[Rat]) -> Result<Rat> {
        if !self.domain.contains(x) {
            return Err(Error::OutsideSupport { point: x.to_vec() });
        }
        (self.eval)(x)
    }
}

/// A certified recession value: the difference quotient at the recorded
/// `lambda`, with `|value - limit| <= error_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecessionResult {
    pub direction: Vec<Rat>,
    pub value: Rat,
    pub lambda: Rat,
    pub error_bound: Rat,
}

const LAMBDA_START_LOG2: u32 = 10;
const LAMBDA_CAP_LOG2: u32 = 60;

/// Compute the recession function of a convex oracle along `y`.
///
/// The difference quotient at finite `lambda` is a lower bound by
/// convexity; the upper bound comes from the declared shape. Conical
/// oracles close at rate `(alpha |x| + |g(x)|) / lambda` (exactly, with a
/// zero bound, when no Lipschitz constant is declared), affine-plus-bounded
/// ones at `(hi - lo) / lambda`, tables at `spread(x) / lambda`, and
/// general bounded-above ones only when the limit is zero.
///
/// # Errors
///
/// [`Error::InvalidInput`] for points off the domain or directions off the
/// recession cone; [`Error::ToleranceUnreachable`] when the declared
/// structure cannot certify the requested tolerance.
pub fn recession(g: &ConvexOracle, x: &[Rat], y: &[Rat], tol: &Rat) -> Result<RecessionResult> {
    if !g.domain().contains(x) {
        return Err(Error::invalid("basepoint is outside the domain"));
    }
    if !g.domain().recession_contains(y) {
        return Err(Error::invalid(
            "direction is outside the recession cone of the domain",
        ));
    }
    if !tol.is_positive() {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let slop = if g.is_exact() {
        Rat::zero()
    } else {
        rounding_slop()
    };
    if y.iter().all(Rat::is_zero) {
        return Ok(RecessionResult {
            direction: y.to_vec(),
            value: Rat::zero(),
            lambda: Rat::one(),
            error_bound: Rat::zero(),
        });
    }

    match g.shape() {
        OracleShape::Conical => match g.lipschitz() {
            Some(alpha) => {
                let gx = g.eval(x)?;
                let norm1: Rat = x.iter().map(Signed::abs).sum();
                let numer = alpha * &norm1 + gx.abs() + &slop + &slop;
                bracket_at_rate(g, x, y, tol, &numer, &slop)
            }
            None => Ok(RecessionResult {
                direction: y.to_vec(),
                value: g.eval(y)?,
                lambda: Rat::one(),
                error_bound: slop,
            }),
        },
        OracleShape::AffinePlusBounded {
            deviation_lo,
            deviation_hi,
            coeffs,
        } => {
            let width = deviation_hi - deviation_lo;
            if width.is_zero() && g.is_exact() {
                return Ok(RecessionResult {
                    direction: y.to_vec(),
                    value: dot(coeffs, y)?,
                    lambda: Rat::one(),
                    error_bound: Rat::zero(),
                });
            }
            let numer = width + &slop + &slop;
            bracket_at_rate(g, x, y, tol, &numer, &slop)
        }
        OracleShape::Table { offsets, forms } => {
            let gx = g.eval(x)?;
            let mut spread = Rat::zero();
            for (o, f) in offsets.iter().zip(forms) {
                spread = spread.max((&gx - (o + dot(f, x)?)).abs());
            }
            let numer = spread + &slop + &slop;
            bracket_at_rate(g, x, y, tol, &numer, &slop)
        }
        OracleShape::General => {
            if g.bound_above().is_none() {
                return Err(Error::ToleranceUnreachable(
                    "a general convex oracle certifies recession limits only \
                     when declared bounded above; declare a shape or a bound"
                        .into(),
                ));
            }
            let gx = g.eval(x)?;
            let mut k = LAMBDA_START_LOG2;
            loop {
                let lambda = Rat::from_integer(BigInt::one() << k);
                let q = quotient(g, x, &gx, y, &lambda)?;
                // Bounded above forces a non-positive limit, and the
                // quotient is a lower bound, so [q, 0] brackets it.
                if q > slop {
                    return Err(Error::invalid(
                        "positive quotient contradicts the declared upper bound",
                    ));
                }
                if -&q <= *tol {
                    return Ok(RecessionResult {
                        direction: y.to_vec(),
                        value: q.clone(),
                        lambda,
                        error_bound: -q + &slop,
                    });
                }
                if k == LAMBDA_CAP_LOG2 {
                    return Err(Error::ToleranceUnreachable(format!(
                        "quotient still {} at lambda = 2^{k}; the limit is \
                         negative and boundedness above alone cannot localize it",
                        crate::exact::fmt_rat(&q)
                    )));
                }
                k += 1;
            }
        }
    }
}

/// Close a `numer / lambda` bracket by doubling `lambda`.
fn bracket_at_rate(
    g: &ConvexOracle,
    x: &[Rat],
    y: &[Rat],
    tol: &Rat,
    numer: &Rat,
    slop: &Rat,
) -> Result<RecessionResult> {
    let gx = g.eval(x)?;
    let mut k = LAMBDA_START_LOG2;
    loop {
        let lambda = Rat::from_integer(BigInt::one() << k);
        let bound = numer / &lambda + slop;
        if bound <= *tol {
            let q = quotient(g, x, &gx, y, &lambda)?;
            return Ok(RecessionResult {
                direction: y.to_vec(),
                value: q,
                lambda,
                error_bound: bound,
            });
        }
        if k == LAMBDA_CAP_LOG2 {
            return Err(Error::ToleranceUnreachable(format!(
                "rate numerator {} cannot reach tolerance {} below lambda = 2^{}",
                crate::exact::fmt_rat(numer),
                crate::exact::fmt_rat(tol),
                LAMBDA_CAP_LOG2
            )));
        }
        k += 1;
    }
}

fn quotient(g: &ConvexOracle, x: &[Rat], gx: &Rat, y: &[Rat], lambda: &Rat) -> Result<Rat> {
    let shifted: Vec<Rat> = x.iter().zip(y).map(|(xi, yi)| xi + yi * lambda).collect();
    Ok((g.eval(&shifted)? - gx) / lambda)
}

/// Lelong number of the toroidal metric model attached to `g` along the
/// divisor with primitive vector `v`: the negative of the recession value.
///
/// # Errors
///
/// [`Error::InvalidInput`] for non-primitive `v`; recession errors
/// propagate.
pub fn lelong_number(g: &ConvexOracle, v: &[BigInt]) -> Result<Rat> {
    if !is_primitive(v) {
        return Err(Error::invalid("lelong numbers are indexed by primitive vectors"));
    }
    let y = to_rat_vec(v);
    let x = g.domain().basepoint();
    let r = recession(g, &x, &y, &default_tol())?;
    Ok(-r.value)
}

/// Report of the bound `g(x + y) - rec(g)(y) <= g(x)` over a sample of
/// recession directions.
#[derive(Debug, Clone)]
pub struct GapReport {
    pub max_gap: Rat,
    pub bound: Rat,
    pub holds: bool,
    pub samples: usize,
}

/// Check that `y -> g(x + y) - rec(g)(y)` stays below `g(x)` over sampled
/// recession directions of a bounded-above oracle.
///
/// # Errors
///
/// [`Error::InvalidInput`] when the oracle is not declared bounded above;
/// recession errors propagate.
pub fn recession_gap_check(g: &ConvexOracle, x: &[Rat], samples: usize) -> Result<GapReport> {
    if g.bound_above().is_none() && !matches!(g.shape(), OracleShape::Conical) {
        return Err(Error::invalid(
            "the gap bound is stated for bounded-above or conical oracles",
        ));
    }
    let tol = default_tol();
    let gx = g.eval(x)?;
    let mut s = Sampler::new(0x6A9);
    let mut max_gap: Option<Rat> = None;
    let mut count = 0usize;
    while count < samples {
        let y: Vec<Rat> = (0..g.domain().dim()).map(|_| s.rat(20, 4).abs()).collect();
        if !g.domain().recession_contains(&y) || y.iter().all(Rat::is_zero) {
            continue;
        }
        count += 1;
        let rec = recession(g, x, &y, &tol)?;
        let shifted: Vec<Rat> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let gap = g.eval(&shifted)? - &rec.value;
        max_gap = Some(match max_gap {
            Some(m) => m.max(gap),
            None => gap,
        });
    }
    let max_gap = max_gap.unwrap_or_else(Rat::zero);
    let bound = &gx + Rat::from_integer(2.into()) * &tol;
    Ok(GapReport {
        holds: max_gap <= bound,
        max_gap,
        bound: gx,
        samples: count,
    })
}

/// The log-determinant oracle `u -> -log det(sum_i u_i M_i)` on the
/// orthant with corner 1, for positive semidefinite matrices whose sum is
/// positive definite.
///
/// Values are correctly rounded at the working precision. The function is
/// decreasing in each coordinate, so its corner value is the declared
/// upper bound, and the negated gradient at the corner gives the declared
/// Lipschitz constant.
///
/// # Errors
///
/// [`Error::InvalidInput`] when a summand fails the semidefinite check or
/// the sum is not positive definite.
pub fn make_logdet_oracle(omegas: Vec<RatMatrix>) -> Result<ConvexOracle> {
    if omegas.is_empty() {
        return Err(Error::invalid("at least one matrix is required"));
    }
    let g = omegas[0].nrows();
    for m in &omegas {
        if m.nrows() != g || m.ncols() != g {
            return Err(Error::ShapeMismatch("matrices must share one square size".into()));
        }
        if !crate::exact::psd_certify(m)?.is_semidefinite() {
            return Err(Error::invalid("every summand must be positive semidefinite"));
        }
    }
    let corner_sum = sum_scaled(&omegas, &vec![Rat::one(); omegas.len()])?;
    if !crate::exact::psd_certify(&corner_sum)?.is_definite() {
        return Err(Error::invalid(
            "the sum of the matrices must be positive definite",
        ));
    }
    let corner_inv = corner_sum.inverse()?;
    let mut traces = Vec::new();
    for m in &omegas {
        traces.push(corner_inv.matmul(m)?.trace()?);
    }
    let alpha: Rat = traces.iter().map(Signed::abs).sum();
    let corner_det = corner_sum.det()?;
    let bound = -ln_rat(&corner_det)?;

    let r = omegas.len();
    let mats = omegas.clone();
    let eval: ConvexEval = Box::new(move |u: &[Rat]| {
        let s = sum_scaled(&mats, u)?;
        let d = s.det()?;
        if !d.is_positive() {
            return Err(Error::SingularMatrix);
        }
        Ok(-ln_rat(&d)?)
    });
    ConvexOracle::new(
        BoxDomain::orthant(r, Rat::one()),
        eval,
        OracleShape::General,
        Some(alpha),
        Some(bound),
        false,
    )
}

/// The quadratic-over-linear oracle
/// `u -> N(u) S(u)^{-1} N(u)^t` with `S(u) = sum_i u_i M_i` and
/// `N(u) = sum_i u_i z_i M_i`, on the orthant with corner 1.
///
/// Exact, conical, and convex. A Lipschitz constant is declared for
/// diagonal matrix data; pass `lipschitz` to override, which general
/// dense data requires for bracketed recession output.
///
/// # Errors
///
/// [`Error::InvalidInput`] on shape mismatches or a degenerate corner sum.
pub fn make_qol_oracle(
    omegas: Vec<RatMatrix>,
    zetas: Vec<Vec<Rat>>,
    lipschitz: Option<Rat>,
) -> Result<ConvexOracle> {
    if omegas.is_empty() || omegas.len() != zetas.len() {
        return Err(Error::invalid(
            "matrix and weight lists must be nonempty and equally long",
        ));
    }
    let g = omegas[0].nrows();
    for m in &omegas {
        if m.nrows() != g || m.ncols() != g {
            return Err(Error::ShapeMismatch("matrices must share one square size".into()));
        }
        if !crate::exact::psd_certify(m)?.is_semidefinite() {
            return Err(Error::invalid("every summand must be positive semidefinite"));
        }
    }
    for z in &zetas {
        if z.len() != g {
            return Err(Error::ShapeMismatch("weights must be rows of the matrix size".into()));
        }
    }
    let corner = sum_scaled(&omegas, &vec![Rat::one(); omegas.len()])?;
    if !crate::exact::psd_certify(&corner)?.is_definite() {
        return Err(Error::invalid(
            "the sum of the matrices must be positive definite",
        ));
    }

    let alpha = lipschitz.or_else(|| diagonal_qol_lipschitz(&omegas, &zetas));
    let r = omegas.len();
    let mats = omegas.clone();
    let zs = zetas.clone();
    let eval: ConvexEval = Box::new(move |u: &[Rat]| {
        let s = sum_scaled(&mats, u)?;
        let mut numer = vec![Rat::zero(); s.ncols()];
        for ((m, z), ui) in mats.iter().zip(&zs).zip(u) {
            for (col, entry) in numer.iter_mut().enumerate() {
                let mut acc = Rat::zero();
                for (row, zr) in z.iter().enumerate() {
                    acc += zr * m.get(row, col);
                }
                *entry += acc * ui;
            }
        }
        if u.iter().all(Rat::is_zero) {
            return Ok(Rat::zero());
        }
        let sol = s.solve(&numer)?;
        dot(&numer, &sol)
    });
    ConvexOracle::new(
        BoxDomain::orthant(r, Rat::one()),
        eval,
        OracleShape::Conical,
        alpha,
        None,
        true,
    )
}

/// For diagonal data the quadratic-over-linear form splits into scalar
/// coordinate terms `(sum_i u_i z_id w_id)^2 / (sum_i u_i w_id)` whose
/// partial derivatives are `w_kd m (2 z_kd - m)` with `m` a weighted mean
/// of the `z_id`, giving the bound `3 Z_d^2 sum_k w_kd` per coordinate.
fn diagonal_qol_lipschitz(omegas: &[RatMatrix], zetas: &[Vec<Rat>]) -> Option<Rat> {
    let g = omegas[0].nrows();
    for m in omegas {
        for i in 0..g {
            for j in 0..g {
                if i != j && !m.get(i, j).is_zero() {
                    return None;
                }
            }
        }
    }
    let mut alpha = Rat::zero();
    for d in 0..g {
        let z_max = zetas
            .iter()
            .map(|z| z[d].abs())
            .max()
            .unwrap_or_else(Rat::zero);
        let w_sum: Rat = omegas.iter().map(|m| m.get(d, d).clone()).sum();
        alpha += Rat::from_integer(3.into()) * &z_max * &z_max * w_sum;
    }
    Some(alpha)
}

/// The exact affine oracle `x -> constant + <coeffs, x>`.
///
/// # Errors
///
/// Shape mismatches propagate from the constructor's spot checks.
pub fn make_linear_oracle(domain: BoxDomain, coeffs: Vec<Rat>, constant: Rat) -> Result<ConvexOracle> {
    if coeffs.len() != domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: domain.dim(),
            got: coeffs.len(),
        });
    }
    let c = coeffs.clone();
    let k = constant.clone();
    let eval: ConvexEval = Box::new(move |x: &[Rat]| Ok(&k + dot(&c, x)?));
    ConvexOracle::new(
        domain,
        eval,
        OracleShape::AffinePlusBounded {
            coeffs,
            deviation_lo: Rat::zero(),
            deviation_hi: Rat::zero(),
        },
        None,
        None,
        true,
    )
}

/// The exact polyhedral oracle `x -> max_i (offset_i + <form_i, x>)`.
///
/// # Errors
///
/// [`Error::InvalidInput`] on an empty table; shape mismatches propagate.
pub fn make_table_oracle(
    domain: BoxDomain,
    offsets: Vec<Rat>,
    forms: Vec<Vec<Rat>>,
) -> Result<ConvexOracle> {
    if offsets.is_empty() || offsets.len() != forms.len() {
        return Err(Error::invalid(
            "table oracles need matching nonempty offset and form lists",
        ));
    }
    for f in &forms {
        if f.len() != domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: domain.dim(),
                got: f.len(),
            });
        }
    }
    let of = offsets.clone();
    let fo = forms.clone();
    let eval: ConvexEval = Box::new(move |x: &[Rat]| {
        let mut best: Option<Rat> = None;
        for (o, f) in of.iter().zip(&fo) {
            let v = o + dot(f, x)?;
            best = Some(match best {
                Some(b) => b.max(v),
                None => v,
            });
        }
        Ok(best.expect("table is nonempty"))
    });
    ConvexOracle::new(
        domain,
        eval,
        OracleShape::Table { offsets, forms },
        None,
        None,
        true,
    )
}

fn sum_scaled(mats: &[RatMatrix], u: &[Rat]) -> Result<RatMatrix> {
    if mats.len() != u.len() {
        return Err(Error::DimensionMismatch {
            expected: mats.len(),
            got: u.len(),
        });
    }
    let mut acc = RatMatrix::zeros(mats[0].nrows(), mats[0].ncols());
    for (m, ui) in mats.iter().zip(u) {
        acc = acc.add(&m.scale(ui))?;
    }
    Ok(acc)
}

/// Natural logarithm of a positive rational, correctly rounded at the
/// working precision and returned as a rational.
fn ln_rat(x: &Rat) -> Result<Rat> {
    if !x.is_positive() {
        return Err(Error::invalid("logarithm of a non-positive value"));
    }
    let prec = default_prec();
    Ok(Fixed::from_rat(x, prec).ln().to_rat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn ratvec(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    fn tol() -> Rat {
        default_tol()
    }

    #[test]
    fn logdet_in_one_variable() {
        let o = make_logdet_oracle(vec![RatMatrix::identity(1)]).unwrap();
        assert_eq!(o.eval(&ratvec(&[1])).unwrap(), Rat::zero());
        let at_e_ish = o.eval(&ratvec(&[3])).unwrap();
        assert!(at_e_ish.is_negative());
        let r = recession(&o, &ratvec(&[1]), &ratvec(&[1]), &tol()).unwrap();
        assert!(r.value.abs() <= tol());
        assert!(r.error_bound <= tol());
    }

    #[test]
    fn logdet_of_diagonal_pair() {
        let o1 = RatMatrix::diagonal(&[rat_int(1), rat_int(0)]);
        let o2 = RatMatrix::diagonal(&[rat_int(0), rat_int(1)]);
        let o = make_logdet_oracle(vec![o1, o2]).unwrap();
        assert_eq!(o.eval(&ratvec(&[1, 1])).unwrap(), Rat::zero());
        assert!(o.eval(&ratvec(&[2, 2])).unwrap() < Rat::zero());
    }

    #[test]
    fn logdet_rejects_degenerate_sums() {
        let o1 = RatMatrix::diagonal(&[rat_int(1), rat_int(0)]);
        let o2 = RatMatrix::diagonal(&[rat_int(2), rat_int(0)]);
        assert!(make_logdet_oracle(vec![o1, o2]).is_err());
    }

    #[test]
    fn qol_matches_the_two_weight_example() {
        let o = make_qol_oracle(
            vec![RatMatrix::identity(1), RatMatrix::identity(1)],
            vec![vec![rat_int(0)], vec![rat_int(1)]],
            None,
        )
        .unwrap();
        assert_eq!(o.eval(&ratvec(&[1, 1])).unwrap(), rat(1, 2));
        assert_eq!(o.eval(&ratvec(&[2, 2])).unwrap(), rat_int(1));
        let r = recession(&o, &ratvec(&[1, 1]), &ratvec(&[1, 1]), &tol()).unwrap();
        assert!((&r.value - rat(1, 2)).abs() <= tol());
    }

    #[test]
    fn qol_with_zero_weights_vanishes() {
        let o = make_qol_oracle(
            vec![RatMatrix::identity(2), RatMatrix::identity(2)],
            vec![vec![rat_int(0), rat_int(0)], vec![rat_int(0), rat_int(0)]],
            None,
        )
        .unwrap();
        assert_eq!(o.eval(&ratvec(&[3, 5])).unwrap(), Rat::zero());
        assert_eq!(lelong_number(&o, &[1.into(), 1.into()]).unwrap(), Rat::zero());
    }

    #[test]
    fn linear_recession_is_exact() {
        let o = make_linear_oracle(
            BoxDomain::orthant(1, Rat::zero()),
            vec![rat_int(-1)],
            Rat::zero(),
        )
        .unwrap();
        let r = recession(&o, &ratvec(&[0]), &ratvec(&[1]), &tol()).unwrap();
        assert_eq!(r.value, rat_int(-1));
        assert_eq!(r.error_bound, Rat::zero());
        assert_eq!(lelong_number(&o, &[1.into()]).unwrap(), rat_int(1));
    }

    #[test]
    fn affine_plus_exponential_tail() {
        let prec = default_prec();
        let eval: ConvexEval = Box::new(move |x: &[Rat]| {
            let e = Fixed::from_rat(&-x[0].clone(), prec).exp().to_rat();
            Ok(-&x[0] + e)
        });
        let o = ConvexOracle::new(
            BoxDomain::orthant(1, Rat::zero()),
            eval,
            OracleShape::AffinePlusBounded {
                coeffs: vec![rat_int(-1)],
                deviation_lo: Rat::zero(),
                deviation_hi: Rat::one(),
            },
            Some(rat_int(2)),
            Some(Rat::one()),
            false,
        )
        .unwrap();
        let r = recession(&o, &ratvec(&[0]), &ratvec(&[1]), &tol()).unwrap();
        assert!((&r.value + Rat::one()).abs() <= tol());
        let nu = lelong_number(&o, &[1.into()]).unwrap();
        assert!((&nu - Rat::one()).abs() <= tol());
    }

    #[test]
    fn bounded_deviation_only_has_zero_recession() {
        let prec = default_prec();
        let eval: ConvexEval = Box::new(move |x: &[Rat]| {
            Ok(Fixed::from_rat(&-x[0].clone(), prec).exp().to_rat())
        });
        let o = ConvexOracle::new(
            BoxDomain::orthant(1, Rat::zero()),
            eval,
            OracleShape::AffinePlusBounded {
                coeffs: vec![rat_int(0)],
                deviation_lo: Rat::zero(),
                deviation_hi: Rat::one(),
            },
            Some(Rat::one()),
            Some(Rat::one()),
            false,
        )
        .unwrap();
        assert!(lelong_number(&o, &[1.into()]).unwrap().abs() <= tol());
    }

    #[test]
    fn table_recession_matches_max_slope() {
        let o = make_table_oracle(
            BoxDomain::new(vec![None]),
            vec![rat_int(0), rat_int(-3)],
            vec![vec![rat_int(-1)], vec![rat(1, 2)]],
        )
        .unwrap();
        let r = recession(&o, &ratvec(&[0]), &ratvec(&[1]), &tol()).unwrap();
        assert!((&r.value - rat(1, 2)).abs() <= tol());
        let l = recession(&o, &ratvec(&[0]), &ratvec(&[-1]), &tol()).unwrap();
        assert!((&l.value - rat_int(1)).abs() <= tol());
    }

    #[test]
    fn general_shape_without_bound_is_refused() {
        let eval: ConvexEval = Box::new(|x: &[Rat]| Ok(-x[0].clone()));
        let o = ConvexOracle::new(
            BoxDomain::orthant(1, Rat::zero()),
            eval,
            OracleShape::General,
            Some(Rat::one()),
            None,
            true,
        )
        .unwrap();
        assert!(matches!(
            recession(&o, &ratvec(&[0]), &ratvec(&[1]), &tol()),
            Err(Error::ToleranceUnreachable(_))
        ));
    }

    #[test]
    fn bounded_above_with_negative_limit_fails_honestly() {
        let eval: ConvexEval = Box::new(|x: &[Rat]| Ok(-x[0].clone()));
        let o = ConvexOracle::new(
            BoxDomain::orthant(1, Rat::zero()),
            eval,
            OracleShape::General,
            Some(Rat::one()),
            Some(Rat::zero()),
            true,
        )
        .unwrap();
        assert!(matches!(
            recession(&o, &ratvec(&[0]), &ratvec(&[1]), &tol()),
            Err(Error::ToleranceUnreachable(_))
        ));
    }

    #[test]
    fn direction_outside_recession_cone_is_rejected() {
        let o = make_logdet_oracle(vec![RatMatrix::identity(1)]).unwrap();
        assert!(recession(&o, &ratvec(&[1]), &ratvec(&[-1]), &tol()).is_err());
        assert!(recession(&o, &ratvec(&[0]), &ratvec(&[1]), &tol()).is_err());
    }

    #[test]
    fn basepoint_independence() {
        let o = make_qol_oracle(
            vec![RatMatrix::identity(1), RatMatrix::identity(1)],
            vec![vec![rat_int(0)], vec![rat_int(1)]],
            None,
        )
        .unwrap();
        let y = ratvec(&[2, 1]);
        let r1 = recession(&o, &ratvec(&[1, 1]), &y, &tol()).unwrap();
        let r2 = recession(&o, &ratvec(&[5, 3]), &y, &tol()).unwrap();
        assert!((&r1.value - &r2.value).abs() <= Rat::from_integer(2.into()) * tol());
    }

    #[test]
    fn recession_is_homogeneous() {
        let o = make_qol_oracle(
            vec![RatMatrix::identity(1), RatMatrix::identity(1)],
            vec![vec![rat_int(0)], vec![rat_int(1)]],
            None,
        )
        .unwrap();
        let x = ratvec(&[1, 1]);
        let y = ratvec(&[1, 2]);
        let base = recession(&o, &x, &y, &tol()).unwrap().value;
        for lam in [rat_int(2), rat_int(3), rat(1, 2)] {
            let ly: Vec<Rat> = y.iter().map(|v| v * &lam).collect();
            let scaled = recession(&o, &x, &ly, &tol()).unwrap().value;
            assert!((&scaled - &lam * &base).abs() <= (Rat::one() + &lam) * tol());
        }
    }

    #[test]
    fn conical_oracles_are_recession_fixed_points() {
        let o = make_qol_oracle(
            vec![RatMatrix::identity(1), RatMatrix::identity(1)],
            vec![vec![rat_int(1)], vec![rat_int(2)]],
            None,
        )
        .unwrap();
        let y = ratvec(&[3, 2]);
        let r = recession(&o, &o.domain().basepoint(), &y, &tol()).unwrap();
        assert!((&r.value - o.eval(&y).unwrap()).abs() <= tol());
    }

    #[test]
    fn lelong_numbers_of_bounded_oracles_vanish() {
        let o1 = RatMatrix::diagonal(&[rat_int(1), rat_int(0)]);
        let o2 = RatMatrix::diagonal(&[rat_int(0), rat_int(1)]);
        let o = make_logdet_oracle(vec![o1, o2]).unwrap();
        let mut s = Sampler::new(9);
        for _ in 0..50 {
            let v = vec![BigInt::from(s.int_in(0, 6)), BigInt::from(s.int_in(0, 6))];
            if v.iter().all(Zero::is_zero) || !is_primitive(&v) {
                continue;
            }
            let nu = lelong_number(&o, &v).unwrap();
            assert!(nu >= -tol(), "negative lelong number {nu}");
            assert!(nu <= tol());
        }
    }

    #[test]
    fn recession_lipschitz_constant_is_preserved() {
        let o = make_qol_oracle(
            vec![RatMatrix::identity(1), RatMatrix::identity(1)],
            vec![vec![rat_int(0)], vec![rat_int(1)]],
            None,
        )
        .unwrap();
        let alpha = o.lipschitz().cloned().expect("diagonal data declares a constant");
        let x = o.domain().basepoint();
        let mut s = Sampler::new(21);
        for _ in 0..20 {
            let y1 = vec![s.rat(9, 3).abs(), s.rat(9, 3).abs()];
            let y2 = vec![s.rat(9, 3).abs(), s.rat(9, 3).abs()];
            let r1 = recession(&o, &x, &y1, &tol()).unwrap().value;
            let r2 = recession(&o, &x, &y2, &tol()).unwrap().value;
            let diff = (&r1 - &r2).abs();
            let slack = Rat::from_integer(2.into()) * tol();
            if diff <= slack {
                continue;
            }
            let lhs = (&diff - &slack) * (&diff - &slack);
            let dy: Rat = y1
                .iter()
                .zip(&y2)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            assert!(lhs <= &alpha * &alpha * dy, "lipschitz violated: {diff}");
        }
    }

    #[test]
    fn gap_check_bounds_logdet() {
        let o = make_logdet_oracle(vec![RatMatrix::identity(1)]).unwrap();
        let report = recession_gap_check(&o, &ratvec(&[1]), 20).unwrap();
        assert!(report.holds);
        assert!(report.max_gap <= report.bound);
    }

    #[test]
    fn gap_check_is_tight_for_conical_oracles() {
        let o = make_qol_oracle(
            vec![RatMatrix::identity(1), RatMatrix::identity(1)],
            vec![vec![rat_int(0)], vec![rat_int(1)]],
            None,
        )
        .unwrap();
        let x = o.domain().basepoint();
        let report = recession_gap_check(&o, &x, 10).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn convexity_spot_check_rejects_concave_callbacks() {
        let eval: ConvexEval = Box::new(|x: &[Rat]| Ok(-(&x[0] * &x[0])));
        assert!(ConvexOracle::new(
            BoxDomain::orthant(1, Rat::zero()),
            eval,
            OracleShape::General,
            None,
            None,
            true,
        )
        .is_err());
    }
}
