//! Monomial graded linear series: exact component dimensions, volume
//! sequences with extrapolation, Okounkov bodies for lattice flags, the
//! divisorial valuation profile of a series, and the bidegree slice
//! filter.
//!
//! Two presentations are supported. A polytope series has degree-`l`
//! component equal to the lattice points of the dilate `lP`; a generator
//! series is the monomial subalgebra generated by finitely many
//! (exponent, degree) pairs. Everything downstream is exact: counts are
//! enumerated, support values are vertex maxima, and valuation profiles
//! of generator series are generator maxima.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::conical::PLConicalFunction;
use crate::exact::{dot, factorial, to_rat_vec, Rat, RatMatrix};
use crate::fan::ConicalComplex;
use crate::polytope::{convex_hull, HPolytope, Hull};
use crate::sample::Sampler;
use crate::{Error, Result};

/// A graded linear series of monomials.
#[derive(Debug, Clone)]
pub enum MonomialGradedSeries {
    /// Degree `l` is the set of lattice points of `l P`.
    Polytope { polytope: HPolytope },
    /// The subalgebra generated by the listed (exponent, degree) pairs.
    Generators {
        rank: usize,
        generators: Vec<(Vec<BigInt>, u64)>,
    },
}

impl MonomialGradedSeries {
    pub fn from_polytope(polytope: HPolytope) -> Self {
        MonomialGradedSeries::Polytope { polytope }
    }

    /// Validate a generator presentation.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] for degree-zero generators or exponent
    /// vectors of the wrong length.
    pub fn from_generators(rank: usize, generators: Vec<(Vec<BigInt>, u64)>) -> Result<Self> {
        for (e, d) in &generators {
            if *d == 0 {
                return Err(Error::invalid("generators must have positive degree"));
            }
            if e.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: e.len(),
                });
            }
        }
        Ok(MonomialGradedSeries::Generators { rank, generators })
    }

    pub fn rank(&self) -> usize {
        match self {
            MonomialGradedSeries::Polytope { polytope } => polytope.dim(),
            MonomialGradedSeries::Generators { rank, .. } => *rank,
        }
    }

    /// The exponent vectors of the degree-`l` component.
    ///
    /// # Errors
    ///
    /// [`Error::Unbounded`] for unbounded polytopes.
    pub fn component_points(&self, l: u64) -> Result<Vec<Vec<BigInt>>> {
        match self {
            MonomialGradedSeries::Polytope { polytope } => {
                if l == 0 {
                    return Ok(vec![vec![BigInt::zero(); polytope.dim()]]);
                }
                let pts = polytope
                    .scale(&Rat::from_integer(l.into()))
                    .lattice_points()?;
                Ok(pts
                    .into_iter()
                    .map(|p| p.into_iter().map(|x| x.to_integer()).collect())
                    .collect())
            }
            MonomialGradedSeries::Generators { rank, generators } => {
                let mut layers: Vec<Vec<Vec<BigInt>>> =
                    vec![vec![vec![BigInt::zero(); *rank]]];
                for d in 1..=l {
                    let mut layer: Vec<Vec<BigInt>> = Vec::new();
                    for (e, dg) in generators {
                        if *dg > d {
                            continue;
                        }
                        for prev in &layers[(d - dg) as usize] {
                            let point: Vec<BigInt> =
                                prev.iter().zip(e).map(|(a, b)| a + b).collect();
                            if !layer.contains(&point) {
                                layer.push(point);
                            }
                        }
                    }
                    layers.push(layer);
                }
                Ok(layers.pop().expect("layer for l exists"))
            }
        }
    }

    /// Exact dimension of the degree-`l` component.
    ///
    /// # Errors
    ///
    /// As for [`Self::component_points`].
    pub fn dim_component(&self, l: u64) -> Result<usize> {
        if l == 0 {
            return Ok(1);
        }
        Ok(self.component_points(l)?.len())
    }
}

/// The scaled dimension sequence of a series with its extrapolated limit.
#[derive(Debug, Clone)]
pub struct VolumeReport {
    /// Ambient rank `d` used for the normalization `dim * d! / l^d`.
    pub rank: usize,
    /// Pairs `(l, dim * d! / l^d)` for `l = 1..=l_max`.
    pub sequence: Vec<(u64, Rat)>,
    /// Richardson extrapolation from the two deepest halved entries.
    pub extrapolated: Rat,
    /// Exact limit `d! vol(P)` for polytope series.
    pub exact: Option<Rat>,
}

/// Compute the normalized dimension sequence up to `l_max`.
///
/// The first-order Ehrhart error cancels in `2 x(L) - x(L/2)`, which is
/// reported as the extrapolated limit.
///
/// # Errors
///
/// [`Error::InvalidInput`] when `l_max < 2`; enumeration errors propagate.
pub fn volume(series: &MonomialGradedSeries, l_max: u64) -> Result<VolumeReport> {
    if l_max < 2 {
        return Err(Error::invalid("the volume sequence needs l_max >= 2"));
    }
    let d = series.rank();
    let dfact = Rat::from_integer(factorial(d));
    let mut sequence = Vec::new();
    for l in 1..=l_max {
        let dim = series.dim_component(l)?;
        let ld = Rat::from_integer(BigInt::from(l)).pow(d as i32);
        sequence.push((l, Rat::from_integer(dim.into()) * &dfact / ld));
    }
    let big = l_max - (l_max % 2);
    let x_big = &sequence[(big - 1) as usize].1;
    let x_half = &sequence[(big / 2 - 1) as usize].1;
    let extrapolated = Rat::from_integer(2.into()) * x_big - x_half;
    let exact = match series {
        MonomialGradedSeries::Polytope { polytope } => Some(&dfact * polytope.volume()?),
        MonomialGradedSeries::Generators { .. } => None,
    };
    Ok(VolumeReport {
        rank: d,
        sequence,
        extrapolated,
        exact,
    })
}

/// An inner approximation of the Okounkov body of a series for an ordered
/// lattice basis.
#[derive(Debug, Clone)]
pub struct OkounkovBody {
    pub hull: Hull,
    /// The flag basis, one vector per row.
    pub flag: Vec<Vec<BigInt>>,
    /// Deepest degree that contributed points.
    pub l_max: u64,
}

impl OkounkovBody {
    /// Volume of the approximation (zero for lower-dimensional hulls).
    ///
    /// # Errors
    ///
    /// Volume computation failures propagate.
    pub fn volume(&self) -> Result<Rat> {
        self.hull.volume()
    }
}

/// Collect the normalized valuation images `nu(f) / l` over all components
/// up to `l_max` and return their convex hull.
///
/// For a monomial `f` the valuation vector is the coordinate vector of its
/// exponent in the flag basis.
///
/// # Errors
///
/// [`Error::InvalidInput`] unless the flag is a lattice basis, meaning its
/// determinant is a unit.
pub fn okounkov_body(
    series: &MonomialGradedSeries,
    flag: &[Vec<BigInt>],
    l_max: u64,
) -> Result<OkounkovBody> {
    let d = series.rank();
    if flag.len() != d || flag.iter().any(|row| row.len() != d) {
        return Err(Error::ShapeMismatch("flag must be a square basis".into()));
    }
    let basis = RatMatrix::from_rows(flag.iter().map(|r| to_rat_vec(r)).collect())?;
    let det = basis.det()?;
    if det.abs() != Rat::from_integer(1.into()) {
        return Err(Error::invalid("flag must be unimodular"));
    }
    let columns = basis.transpose();
    let inverse = columns.inverse()?;
    let mut points: Vec<Vec<Rat>> = Vec::new();
    for l in 1..=l_max {
        let scale = Rat::new(BigInt::from(1), BigInt::from(l));
        for e in series.component_points(l)? {
            let nu = inverse.matvec(&to_rat_vec(&e))?;
            let p: Vec<Rat> = nu.iter().map(|x| x * &scale).collect();
            if !points.contains(&p) {
                points.push(p);
            }
        }
    }
    let hull = convex_hull(d, &points)?;
    Ok(OkounkovBody {
        hull,
        flag: flag.to_vec(),
        l_max,
    })
}

/// One valuation-profile value of a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BdivValue {
    Exact(Rat),
    /// Enumeration up to the probed depth has not attained the generator
    /// bound; both are reported.
    NonConverged { enumerated: Rat, bound: Rat },
}

impl BdivValue {
    pub fn exact(&self) -> Option<&Rat> {
        match self {
            BdivValue::Exact(v) => Some(v),
            BdivValue::NonConverged { .. } => None,
        }
    }
}

/// The valuation profile `v -> sup_l max_{f in A_l} <-v, f> / l`.
///
/// Polytope series evaluate exactly as the support value
/// `max_{u in P} <-v, u>` over the vertices. Generator series evaluate as
/// the maximum of `<-v, e_i> / d_i` over the generators, which products
/// cannot exceed because the ratio of a product is a mediant; enumeration
/// at a degree divisible by the maximizing `d_i` confirms attainment, and
/// a failure to attain is reported as [`BdivValue::NonConverged`].
///
/// # Errors
///
/// [`Error::Unbounded`] for unbounded polytopes, with the witness
/// direction; [`Error::InvalidInput`] for empty generator lists.
pub fn bdiv_values(series: &MonomialGradedSeries, queries: &[Vec<BigInt>]) -> Result<Vec<BdivValue>> {
    let mut out = Vec::new();
    match series {
        MonomialGradedSeries::Polytope { polytope } => {
            polytope.require_bounded()?;
            let vertices = polytope.vertices()?;
            for v in queries {
                let neg: Vec<Rat> = v.iter().map(|x| -Rat::from_integer(x.clone())).collect();
                let mut best: Option<Rat> = None;
                for vertex in &vertices {
                    let val = dot(&neg, vertex)?;
                    best = Some(match best {
                        Some(b) => b.max(val),
                        None => val,
                    });
                }
                out.push(BdivValue::Exact(best.unwrap_or_else(Rat::zero)));
            }
        }
        MonomialGradedSeries::Generators { generators, .. } => {
            if generators.is_empty() {
                return Err(Error::invalid("the trivial series needs no generators; pass at least one"));
            }
            // A degree divisible by every generator degree attains the
            // generator bound, capped to keep enumeration finite.
            let mut probe: u64 = 1;
            for (_, d) in generators {
                probe = num_integer::lcm(probe, *d);
                if probe > 12 {
                    probe = 12;
                    break;
                }
            }
            let attained = series.component_points(probe)?;
            for v in queries {
                let neg: Vec<Rat> = v.iter().map(|x| -Rat::from_integer(x.clone())).collect();
                let mut bound: Option<Rat> = None;
                for (e, d) in generators {
                    let val = dot(&neg, &to_rat_vec(e))? / Rat::from_integer((*d).into());
                    bound = Some(match bound {
                        Some(b) => b.max(val),
                        None => val,
                    });
                }
                let bound = bound.expect("nonempty generators");
                let scale = Rat::new(BigInt::from(1), BigInt::from(probe));
                let mut enumerated: Option<Rat> = None;
                for e in &attained {
                    let val = dot(&neg, &to_rat_vec(e))? * &scale;
                    enumerated = Some(match enumerated {
                        Some(b) => b.max(val),
                        None => val,
                    });
                }
                let enumerated = enumerated.unwrap_or_else(Rat::zero);
                if enumerated == bound {
                    out.push(BdivValue::Exact(bound));
                } else {
                    out.push(BdivValue::NonConverged { enumerated, bound });
                }
            }
        }
    }
    Ok(out)
}

/// Residual row of [`bdiv_roundtrip_check`].
#[derive(Debug, Clone)]
pub struct RoundtripResidual {
    pub vector: Vec<BigInt>,
    pub expected: Rat,
    pub got: Rat,
}

/// Report of the series-to-divisor round trip.
#[derive(Debug, Clone)]
pub struct RoundtripReport {
    pub matches: bool,
    pub checked: usize,
    pub mismatches: Vec<RoundtripResidual>,
}

/// Check that the valuation profile of the polytope series of a concave
/// PL function returns the function: for each sample vector `v`, the
/// profile value must equal `-f(v)` exactly.
///
/// With an empty sample list, 20 deterministic primitive vectors inside
/// the support are used, the rays of the complex first.
///
/// # Errors
///
/// Construction and evaluation errors propagate.
pub fn bdiv_roundtrip_check(
    f: &PLConicalFunction,
    samples: &[Vec<BigInt>],
) -> Result<RoundtripReport> {
    let series = MonomialGradedSeries::from_polytope(f.polytope()?);
    let vectors = if samples.is_empty() {
        default_sample_vectors(f.complex(), 20)
    } else {
        samples.to_vec()
    };
    let values = bdiv_values(&series, &vectors)?;
    let mut mismatches = Vec::new();
    for (v, value) in vectors.iter().zip(&values) {
        let expected = -f.eval(&to_rat_vec(v))?;
        let got = match value {
            BdivValue::Exact(x) => x.clone(),
            BdivValue::NonConverged { enumerated, .. } => enumerated.clone(),
        };
        if got != expected {
            mismatches.push(RoundtripResidual {
                vector: v.clone(),
                expected,
                got,
            });
        }
    }
    Ok(RoundtripReport {
        matches: mismatches.is_empty(),
        checked: vectors.len(),
        mismatches,
    })
}

/// Deterministic primitive sample vectors in the support of a complex:
/// the rays, then sampled nonneg generator combinations.
fn default_sample_vectors(complex: &ConicalComplex, count: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for ray in complex.rays() {
        if out.len() == count {
            return out;
        }
        out.push(ray.clone());
    }
    let mut s = Sampler::new(0xB01D);
    let maximal = complex.maximal_cones();
    while out.len() < count && !maximal.is_empty() {
        let mc = maximal[s.below(maximal.len() as u64) as usize];
        let gens = complex.cones()[mc].ray_indices();
        let mut v = vec![BigInt::zero(); complex.rank()];
        for &r in gens {
            let w = BigInt::from(s.int_in(0, 3));
            for (vi, ri) in v.iter_mut().zip(&complex.rays()[r]) {
                *vi += ri * &w;
            }
        }
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(p) = crate::exact::primitive_vector(&v) {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// The exact PL conical function `v -> max_i <-v, e_i> / d_i` of a
/// finitely generated series, on a refinement of the given complete
/// complex fine enough that every cone lies in one max-region.
///
/// # Errors
///
/// [`Error::InvalidInput`] for empty input or a polytope presentation;
/// [`Error::NotImplemented`] above rank 2.
pub fn fg_to_cartier(
    series: &MonomialGradedSeries,
    complex: &ConicalComplex,
) -> Result<PLConicalFunction> {
    let MonomialGradedSeries::Generators { rank, generators } = series else {
        return Err(Error::invalid(
            "the Cartier model is computed from a generator presentation",
        ));
    };
    if generators.is_empty() {
        return Err(Error::invalid("at least one generator is required"));
    }
    if *rank != complex.rank() {
        return Err(Error::DimensionMismatch {
            expected: complex.rank(),
            got: *rank,
        });
    }
    if *rank > 2 {
        return Err(Error::NotImplemented(
            "max-region refinement is implemented for ranks 1 and 2".into(),
        ));
    }
    let slopes: Vec<Vec<Rat>> = generators
        .iter()
        .map(|(e, d)| {
            let inv = Rat::new(BigInt::from(-1), BigInt::from(*d));
            e.iter().map(|x| Rat::from_integer(x.clone()) * &inv).collect()
        })
        .collect();

    let mut current = complex.clone();
    if *rank == 2 {
        for i in 0..slopes.len() {
            for j in (i + 1)..slopes.len() {
                let w: Vec<Rat> = slopes[i]
                    .iter()
                    .zip(&slopes[j])
                    .map(|(a, b)| a - b)
                    .collect();
                if w.iter().all(Rat::is_zero) {
                    continue;
                }
                let perp = vec![-w[1].clone(), w[0].clone()];
                if let Some(p) = crate::exact::rat_vec_to_primitive(&perp) {
                    for dir in [p.clone(), p.iter().map(|x| -x).collect()] {
                        if current.supports(&to_rat_vec(&dir)) {
                            current = crate::fan::subdivide_complex(&current, &dir)?;
                        }
                    }
                }
            }
        }
    }

    let evaluate = |v: &[Rat]| -> Result<Rat> {
        let mut best: Option<Rat> = None;
        for s in &slopes {
            let val = dot(s, v)?;
            best = Some(match best {
                Some(b) => b.max(val),
                None => val,
            });
        }
        Ok(best.expect("nonempty slopes"))
    };
    let values: Vec<Rat> = current
        .rays()
        .iter()
        .map(|r| evaluate(&to_rat_vec(r)))
        .collect::<Result<_>>()?;
    let f = PLConicalFunction::from_ray_values(current.clone(), &values)?;

    // Linearity on each refined cone: the generator sum must be additive.
    for mc in current.maximal_cones() {
        let gens = current.cone_generators(mc);
        if gens.len() < 2 {
            continue;
        }
        let mut total = vec![Rat::zero(); current.rank()];
        let mut sum_vals = Rat::zero();
        for g in &gens {
            for (t, gi) in total.iter_mut().zip(g) {
                *t += gi;
            }
            sum_vals += evaluate(g)?;
        }
        if evaluate(&total)? != sum_vals {
            return Err(Error::invalid(
                "refinement missed a wall of the max-region decomposition",
            ));
        }
    }
    Ok(f)
}

/// A finitely generated sub-semigroup of bidegrees in the nonnegative
/// quadrant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidegreeSemigroup {
    generators: Vec<(u64, u64)>,
}

impl BidegreeSemigroup {
    /// Validate generators: nonzero, and no pure second coordinate.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] for a zero generator or one with `k = 0`
    /// and `m != 0`, which corresponds to a nonconstant weight-zero form
    /// and is excluded.
    pub fn new(generators: Vec<(u64, u64)>) -> Result<Self> {
        for &(k, m) in &generators {
            if k == 0 && m == 0 {
                return Err(Error::invalid("the zero bidegree generates nothing"));
            }
            if k == 0 {
                return Err(Error::invalid(
                    "a generator with zero first coordinate and positive second is excluded",
                ));
            }
        }
        Ok(BidegreeSemigroup { generators })
    }

    pub fn generators(&self) -> &[(u64, u64)] {
        &self.generators
    }

    /// All semigroup elements with coordinate sum at most `bound`,
    /// the identity excluded.
    pub fn enumerate(&self, bound: u64) -> Vec<(u64, u64)> {
        let mut found: Vec<(u64, u64)> = Vec::new();
        let mut frontier: Vec<(u64, u64)> = vec![(0, 0)];
        while let Some((k, m)) = frontier.pop() {
            for &(gk, gm) in &self.generators {
                let next = (k + gk, m + gm);
                if next.0 + next.1 > bound || found.contains(&next) {
                    continue;
                }
                found.push(next);
                frontier.push(next);
            }
        }
        found.sort_unstable();
        found
    }
}

/// Result of slicing a bidegree semigroup along a fixed ratio.
#[derive(Debug, Clone)]
pub struct RatioFilterResult {
    /// Generators whose ratio `m / k` equals the requested value; they
    /// generate the slice.
    pub slice_generators: Vec<(u64, u64)>,
    /// Finite generator lists always have bounded ratio.
    pub bounded_ratio: bool,
    /// The largest `m / k` over all generators.
    pub max_ratio: Rat,
}

/// The slice of a bidegree semigroup at ratio `n`.
///
/// A product's ratio is a mediant of its factors' ratios, so it lies
/// between their minimum and maximum; an element of ratio `n` is
/// therefore a product of ratio-`n` generators, and those generators
/// answer membership for the whole slice.
///
/// # Errors
///
/// [`Error::InvalidInput`] for an empty semigroup.
pub fn ratio_filter(semigroup: &BidegreeSemigroup, n: &Rat) -> Result<RatioFilterResult> {
    if semigroup.generators().is_empty() {
        return Err(Error::invalid("the semigroup has no generators"));
    }
    let mut slice = Vec::new();
    let mut max_ratio: Option<Rat> = None;
    for &(k, m) in semigroup.generators() {
        let ratio = Rat::new(BigInt::from(m), BigInt::from(k));
        if &ratio == n {
            slice.push((k, m));
        }
        max_ratio = Some(match max_ratio {
            Some(r) => r.max(ratio),
            None => ratio,
        });
    }
    Ok(RatioFilterResult {
        slice_generators: slice,
        bounded_ratio: true,
        max_ratio: max_ratio.expect("nonempty generators"),
    })
}

/// Membership of a bidegree in the ratio-`n` slice, answered through the
/// slice generators.
pub fn slice_contains(semigroup: &BidegreeSemigroup, n: &Rat, point: (u64, u64)) -> Result<bool> {
    let (k, m) = point;
    if k == 0 || Rat::new(BigInt::from(m), BigInt::from(k)) != *n {
        return Ok(false);
    }
    let filter = ratio_filter(semigroup, n)?;
    if filter.slice_generators.is_empty() {
        return Ok(false);
    }
    let sub = BidegreeSemigroup::new(filter.slice_generators)?;
    Ok(sub.enumerate(k + m).contains(&point))
}
