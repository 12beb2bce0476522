//! Conical functions on complexes: exact piecewise-linear data, evaluation
//! oracles, piecewise-linearity detection with witnesses, concavity, toric
//! degrees, and decreasing degree sequences.
//!
//! A piecewise-linear conical function corresponds to a Cartier toroidal
//! b-divisor; a general conical function, given only through an evaluation
//! oracle, corresponds to a Weil one. The gap between the two is exactly
//! what [`pl_test`] certifies: a [`PLWitness`] is an additive triple inside
//! one cone where the function fails to be linear, and such a witness is
//! final. A PL verdict is a semi-decision recorded with the tested depth.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{dot, primitive_vector, rat_vec_to_primitive, to_rat_vec, Rat};
use crate::fan::{ComplexMap, ConicalComplex};
use crate::polytope::HPolytope;
use crate::sample::Sampler;
use crate::{Error, Result};

/// A continuous conical piecewise-linear function: one exact linear form
/// per cone of a complex, agreeing on shared faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLConicalFunction {
    complex: ConicalComplex,
    forms: Vec<Vec<Rat>>,
}

impl PLConicalFunction {
    /// Validate per-cone linear forms into a PL function.
    ///
    /// # Errors
    ///
    /// [`Error::InconsistentForms`] when two cones sharing a ray disagree
    /// there; shape errors on malformed forms.
    pub fn new(complex: ConicalComplex, forms: Vec<Vec<Rat>>) -> Result<Self> {
        if forms.len() != complex.cones().len() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} forms, got {}",
                complex.cones().len(),
                forms.len()
            )));
        }
        for f in &forms {
            if f.len() != complex.rank() {
                return Err(Error::DimensionMismatch {
                    expected: complex.rank(),
                    got: f.len(),
                });
            }
        }
        for i in 0..complex.cones().len() {
            for j in (i + 1)..complex.cones().len() {
                let shared: Vec<usize> = complex.cones()[i]
                    .ray_indices()
                    .iter()
                    .copied()
                    .filter(|r| complex.cones()[j].ray_indices().contains(r))
                    .collect();
                for r in shared {
                    let v = to_rat_vec(&complex.rays()[r]);
                    if dot(&forms[i], &v)? != dot(&forms[j], &v)? {
                        return Err(Error::InconsistentForms { first: i, second: j });
                    }
                }
            }
        }
        Ok(PLConicalFunction { complex, forms })
    }

    /// Interpolate prescribed values at the rays into a PL function.
    ///
    /// # Errors
    ///
    /// Fails when the value count differs from the ray count.
    pub fn from_ray_values(complex: ConicalComplex, values: &[Rat]) -> Result<Self> {
        if values.len() != complex.rays().len() {
            return Err(Error::DimensionMismatch {
                expected: complex.rays().len(),
                got: values.len(),
            });
        }
        let mut forms = Vec::new();
        for ci in 0..complex.cones().len() {
            let vals: Vec<Rat> = complex.cones()[ci]
                .ray_indices()
                .iter()
                .map(|&r| values[r].clone())
                .collect();
            forms.push(complex.linear_form_through(ci, &vals)?);
        }
        PLConicalFunction::new(complex, forms)
    }

    /// The constant zero function on a complex.
    pub fn zero(complex: ConicalComplex) -> Self {
        let n = complex.cones().len();
        let rank = complex.rank();
        PLConicalFunction {
            complex,
            forms: vec![vec![Rat::zero(); rank]; n],
        }
    }

    pub fn complex(&self) -> &ConicalComplex {
        &self.complex
    }

    pub fn forms(&self) -> &[Vec<Rat>] {
        &self.forms
    }

    /// Exact evaluation.
    ///
    /// # Errors
    ///
    /// [`Error::OutsideSupport`] when `x` misses the support.
    pub fn eval(&self, x: &[Rat]) -> Result<Rat> {
        let cone = self.complex.locate(x)?;
        dot(&self.forms[cone], x)
    }

    /// Value at a ray's primitive generator.
    pub fn ray_value(&self, ray: usize) -> Result<Rat> {
        self.eval(&to_rat_vec(&self.complex.rays()[ray]))
    }

    /// Pointwise sum; both functions must live on the same complex.
    ///
    /// # Errors
    ///
    /// [`Error::IncompatibleComplexes`] otherwise.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.complex != other.complex {
            return Err(Error::IncompatibleComplexes(
                "sum of PL functions needs a common complex".into(),
            ));
        }
        let forms = self
            .forms
            .iter()
            .zip(&other.forms)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(PLConicalFunction {
            complex: self.complex.clone(),
            forms,
        })
    }

    /// Pointwise scaling by a rational.
    pub fn scale(&self, c: &Rat) -> Self {
        PLConicalFunction {
            complex: self.complex.clone(),
            forms: self
                .forms
                .iter()
                .map(|f| f.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    /// Restrict to a subdivision of the same support: each finer cone
    /// inherits the form of the coarser cone containing it.
    ///
    /// # Errors
    ///
    /// Fails when some finer cone lies in no cone of the original complex.
    pub fn refine_to(&self, finer: &ConicalComplex) -> Result<Self> {
        let mut forms = Vec::new();
        for ci in 0..finer.cones().len() {
            let p = finer.relint_point(ci);
            let home = self.complex.locate(&p)?;
            forms.push(self.forms[home].clone());
        }
        PLConicalFunction::new(finer.clone(), forms)
    }

    /// The section polytope `{u : <u, v> >= f(v) for every ray v}`.
    ///
    /// For a concave PL function on a complete fan this is the bounded
    /// rational polytope whose dilates carry the graded components: the
    /// monomial of exponent `u` has order `<u, v>` along the ray `v`, so
    /// membership is exactly the effectivity of the twisted divisor.
    ///
    /// # Errors
    ///
    /// Propagates construction failures.
    pub fn polytope(&self) -> Result<HPolytope> {
        let mut ineqs = Vec::new();
        for (ri, ray) in self.complex.rays().iter().enumerate() {
            let v: Vec<Rat> = to_rat_vec(ray).iter().map(|x| -x).collect();
            let b = -self.ray_value(ri)?;
            ineqs.push((v, b));
        }
        HPolytope::new(self.complex.rank(), ineqs)
    }
}

type EvalFn = Box<dyn Fn(&[Rat]) -> Result<Rat> + Send + Sync>;

/// A conical function given by an exact evaluation callback on the
/// rational points of a complex's support.
pub struct ConicalOracle {
    support: ConicalComplex,
    eval: EvalFn,
}

impl std::fmt::Debug for ConicalOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConicalOracle")
            .field("support_rank", &self.support.rank())
            .field("support_cones", &self.support.cones().len())
            .finish()
    }
}

impl ConicalOracle {
    /// Wrap a callback, spot-checking homogeneity of degree one.
    ///
    /// The origin must evaluate to zero and scaling a relative interior
    /// point of each maximal cone by 2 and by 1/3 must scale the value
    /// accordingly. This does not prove conicality; it catches the common
    /// mistakes early.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] when a spot check fails; evaluation errors
    /// propagate.
    pub fn new(support: ConicalComplex, eval: EvalFn) -> Result<Self> {
        let origin = vec![Rat::zero(); support.rank()];
        let at_zero = eval(&origin)?;
        if !at_zero.is_zero() {
            return Err(Error::invalid("conical oracle must vanish at the origin"));
        }
        for mc in support.maximal_cones() {
            if support.cones()[mc].dim() == 0 {
                continue;
            }
            let p = support.relint_point(mc);
            let v = eval(&p)?;
            for lambda in [Rat::from_integer(2.into()), Rat::new(1.into(), 3.into())] {
                let scaled: Vec<Rat> = p.iter().map(|x| x * &lambda).collect();
                if eval(&scaled)? != &lambda * &v {
                    return Err(Error::invalid(
                        "oracle is not homogeneous of degree one on its support",
                    ));
                }
            }
        }
        Ok(ConicalOracle { support, eval })
    }

    /// View a PL function as an oracle.
    pub fn from_pl(f: PLConicalFunction) -> Self {
        let complex = f.complex().clone();
        ConicalOracle {
            support: complex,
            eval: Box::new(move |x| f.eval(x)),
        }
    }

    pub fn support(&self) -> &ConicalComplex {
        &self.support
    }

    /// Exact evaluation.
    ///
    /// # Errors
    ///
    /// [`Error::OutsideSupport`] when `x` misses the support; callback
    /// errors propagate.
    pub fn eval(&self, x: &[Rat]) -> Result<Rat> {
        if !self.support.supports(x) {
            return Err(Error::OutsideSupport { point: x.to_vec() });
        }
        (self.eval)(x)
    }
}

/// An exact certificate that a function is not linear on a cone: an
/// additive triple `z = x + y` inside one cone with `f(z) != f(x) + f(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLWitness {
    pub x: Vec<Rat>,
    pub y: Vec<Rat>,
    pub z: Vec<Rat>,
    /// Generators of the cone containing all three points.
    pub cone: Vec<Vec<BigInt>>,
    pub value_x: Rat,
    pub value_y: Rat,
    pub value_z: Rat,
}

impl PLWitness {
    /// Re-verify the witness against an oracle.
    ///
    /// # Errors
    ///
    /// Evaluation errors propagate.
    pub fn verify(&self, oracle: &ConicalOracle) -> Result<bool> {
        let sum: Vec<Rat> = self.x.iter().zip(&self.y).map(|(a, b)| a + b).collect();
        if sum != self.z {
            return Ok(false);
        }
        let fx = oracle.eval(&self.x)?;
        let fy = oracle.eval(&self.y)?;
        let fz = oracle.eval(&self.z)?;
        Ok(fx == self.value_x && fy == self.value_y && fz == self.value_z && fz != fx + fy)
    }
}

/// Outcome of [`pl_test`].
#[derive(Debug)]
pub enum PlOutcome {
    /// No violation found up to the tested depth; the reconstructed PL
    /// function agrees with the oracle on the verification sample.
    Pl {
        function: PLConicalFunction,
        depth_tested: usize,
    },
    /// Exact and final: the function is not linear on the witnessed cone.
    NotPl { witness: PLWitness },
}

impl PlOutcome {
    pub fn is_pl(&self) -> bool {
        matches!(self, PlOutcome::Pl { .. })
    }
}

/// Search for a linearity violation of a conical oracle.
///
/// Level 1 tests the additive triples `(g_i, g_j, g_i + g_j)` over the
/// generator pairs of every maximal cone, cones by index and pairs in
/// lexicographic order. Each further level subdivides every maximal cone
/// at the primitive generator sum and repeats. The first failing triple is
/// returned as a witness; if all levels pass, the PL function interpolating
/// the oracle at the original rays is reconstructed and checked against
/// the oracle on a deterministic sample, any mismatch being converted into
/// a witness as well.
///
/// # Errors
///
/// Evaluation and subdivision errors propagate; `depth` must be positive.
pub fn pl_test(oracle: &ConicalOracle, depth: usize) -> Result<PlOutcome> {
    if depth == 0 {
        return Err(Error::invalid("depth must be positive"));
    }
    let mut current = oracle.support().clone();
    for level in 1..=depth {
        for mc in current.maximal_cones() {
            let gens = current.cones()[mc].ray_indices().to_vec();
            for a in 0..gens.len() {
                for b in (a + 1)..gens.len() {
                    let x = to_rat_vec(&current.rays()[gens[a]]);
                    let y = to_rat_vec(&current.rays()[gens[b]]);
                    let z: Vec<Rat> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
                    let fx = oracle.eval(&x)?;
                    let fy = oracle.eval(&y)?;
                    let fz = oracle.eval(&z)?;
                    if fz != &fx + &fy {
                        let cone = gens
                            .iter()
                            .map(|&r| current.rays()[r].clone())
                            .collect();
                        return Ok(PlOutcome::NotPl {
                            witness: PLWitness {
                                x,
                                y,
                                z,
                                cone,
                                value_x: fx,
                                value_y: fy,
                                value_z: fz,
                            },
                        });
                    }
                }
            }
        }
        if level < depth {
            current = refine_level(&current)?;
        }
    }

    // Reconstruct and verify on a deterministic sample.
    let support = oracle.support().clone();
    let ray_values: Vec<Rat> = support
        .rays()
        .iter()
        .map(|r| oracle.eval(&to_rat_vec(r)))
        .collect::<Result<_>>()?;
    let function = PLConicalFunction::from_ray_values(support.clone(), &ray_values)?;
    let mut sampler = Sampler::new(0x5EED);
    for mc in support.maximal_cones() {
        let gens = support.cone_generators(mc);
        if gens.is_empty() {
            continue;
        }
        for _ in 0..8 {
            let weights: Vec<Rat> = (0..gens.len())
                .map(|_| Rat::from_integer(sampler.int_in(0, 4).into()))
                .collect();
            if weights.iter().all(Rat::is_zero) {
                continue;
            }
            let point = combine(&gens, &weights);
            let oracle_value = oracle.eval(&point)?;
            if oracle_value != function.eval(&point)? {
                let witness = split_witness(oracle, &gens, &weights)?;
                return Ok(PlOutcome::NotPl { witness });
            }
        }
    }
    Ok(PlOutcome::Pl {
        function,
        depth_tested: depth,
    })
}

/// Subdivide every maximal cone of dimension at least two at its primitive
/// generator sum, returning the refined complex and the composed map back.
///
/// # Errors
///
/// Subdivision failures propagate.
pub fn refine_at_generator_sums(complex: &ConicalComplex) -> Result<(ConicalComplex, ComplexMap)> {
    let current = refine_level(complex)?;
    let map = ComplexMap::identity_on_points(current.clone(), complex.clone())?;
    Ok((current, map))
}

/// One refinement level without transition maps.
fn refine_level(complex: &ConicalComplex) -> Result<ConicalComplex> {
    let mut points = Vec::new();
    for mc in complex.maximal_cones() {
        if complex.cones()[mc].dim() < 2 {
            continue;
        }
        let p = complex.relint_point(mc);
        debug_assert!(p.iter().all(|x| x.denom().is_one()));
        let ints: Vec<BigInt> = p.iter().map(|x| x.numer().clone()).collect();
        if let Some(prim) = primitive_vector(&ints) {
            if !points.contains(&prim) {
                points.push(prim);
            }
        }
    }
    let mut current = complex.clone();
    for p in points {
        current = crate::fan::subdivide_complex(&current, &p)?;
    }
    Ok(current)
}

fn combine(gens: &[Vec<Rat>], weights: &[Rat]) -> Vec<Rat> {
    let dim = gens[0].len();
    let mut out = vec![Rat::zero(); dim];
    for (g, w) in gens.iter().zip(weights) {
        for (o, gi) in out.iter_mut().zip(g) {
            *o += gi * w;
        }
    }
    out
}

/// Convert a mismatch between an oracle and its ray interpolant into an
/// additive-triple witness by splitting the weighted generator sum one
/// piece at a time: some partial sum must break additivity, because if
/// every step were additive the interpolant would be exact by conicality.
fn split_witness(
    oracle: &ConicalOracle,
    gens: &[Vec<Rat>],
    weights: &[Rat],
) -> Result<PLWitness> {
    let pieces: Vec<Vec<Rat>> = gens
        .iter()
        .zip(weights)
        .filter(|(_, w)| !w.is_zero())
        .map(|(g, w)| g.iter().map(|x| x * w).collect())
        .collect();
    let cone: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| rat_vec_to_primitive(g).expect("generators are nonzero"))
        .collect();
    let mut acc = pieces[0].clone();
    for piece in &pieces[1..] {
        let z: Vec<Rat> = acc.iter().zip(piece).map(|(a, b)| a + b).collect();
        let fx = oracle.eval(&acc)?;
        let fy = oracle.eval(piece)?;
        let fz = oracle.eval(&z)?;
        if fz != &fx + &fy {
            return Ok(PLWitness {
                x: acc,
                y: piece.clone(),
                z,
                cone,
                value_x: fx,
                value_y: fy,
                value_z: fz,
            });
        }
        acc = z;
    }
    Err(Error::invalid(
        "interpolant mismatch without an additive failure contradicts conicality",
    ))
}

/// The divisor induced by a PL function: coefficient `-f(v)` at each ray.
///
/// # Errors
///
/// Evaluation errors propagate.
pub fn divisor_from_function(f: &PLConicalFunction) -> Result<Vec<(Vec<BigInt>, Rat)>> {
    let mut out = Vec::new();
    for (ri, ray) in f.complex().rays().iter().enumerate() {
        out.push((ray.clone(), -f.ray_value(ri)?));
    }
    Ok(out)
}

/// Order of the induced Weil b-divisor along the exceptional divisor with
/// primitive vector `v`: the value `-f(v)`.
///
/// # Errors
///
/// [`Error::OutsideSupport`] when `v` misses the support.
pub fn iota_order(oracle: &ConicalOracle, v: &[BigInt]) -> Result<Rat> {
    Ok(-oracle.eval(&to_rat_vec(v))?)
}

/// Result of the exact wall-bend concavity criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcavityReport {
    pub is_concave: bool,
    /// Indices of the two maximal cones across the first violating wall.
    pub violating_wall: Option<(usize, usize)>,
}

/// Exact concavity test for PL conical functions.
///
/// For each interior wall between full-dimensional cones, the linear form
/// of one side evaluated at the opposite off-wall generator must dominate
/// the function value there; that local criterion characterizes concavity
/// on convex supports.
///
/// # Errors
///
/// [`Error::InvalidInput`] when the support is neither complete nor
/// convex, detected through a boundary wall whose hyperplane fails to
/// support the remaining rays.
pub fn concavity_test(f: &PLConicalFunction) -> Result<ConcavityReport> {
    let complex = f.complex();
    let rank = complex.rank();
    let maximal = complex.maximal_cones();
    if maximal
        .iter()
        .any(|&m| complex.cones()[m].dim() != rank)
    {
        return Err(Error::invalid(
            "concavity needs a pure full-dimensional complex",
        ));
    }
    for &m in &maximal {
        let rays = complex.cones()[m].ray_indices().to_vec();
        for drop in 0..rays.len() {
            let wall: Vec<usize> = rays
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != drop)
                .map(|(_, &r)| r)
                .collect();
            let neighbors: Vec<usize> = maximal
                .iter()
                .copied()
                .filter(|&other| {
                    other != m
                        && wall
                            .iter()
                            .all(|r| complex.cones()[other].ray_indices().contains(r))
                })
                .collect();
            match neighbors.len() {
                1 => {
                    let other = neighbors[0];
                    let off: usize = complex.cones()[other]
                        .ray_indices()
                        .iter()
                        .copied()
                        .find(|r| !wall.contains(r))
                        .expect("neighbor has an off-wall ray");
                    let v = to_rat_vec(&complex.rays()[off]);
                    let here = dot(&f.forms()[m], &v)?;
                    let there = f.eval(&v)?;
                    if here < there {
                        return Ok(ConcavityReport {
                            is_concave: false,
                            violating_wall: Some((m, other)),
                        });
                    }
                }
                0 => {
                    check_boundary_wall(complex, m, &wall)?;
                }
                _ => {
                    return Err(Error::invalid(
                        "wall shared by more than two maximal cones",
                    ))
                }
            }
        }
    }
    Ok(ConcavityReport {
        is_concave: true,
        violating_wall: None,
    })
}

/// A boundary wall is admissible only when its hyperplane supports the
/// whole complex, which is the convex-support case.
fn check_boundary_wall(complex: &ConicalComplex, cone: usize, wall: &[usize]) -> Result<()> {
    let rank = complex.rank();
    let mut rows: Vec<Vec<Rat>> = wall
        .iter()
        .map(|&r| to_rat_vec(&complex.rays()[r]))
        .collect();
    if rows.is_empty() {
        rows.push(vec![Rat::zero(); rank]);
    }
    let m = crate::exact::RatMatrix::from_rows(rows)?;
    let kernel = m.kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::invalid("support is not convex near a boundary wall"));
    }
    let mut normal = kernel[0].clone();
    // Orient inward: positive on the cone's off-wall generator.
    let off = complex.cones()[cone]
        .ray_indices()
        .iter()
        .copied()
        .find(|r| !wall.contains(r))
        .expect("full-dimensional cone has an off-wall ray");
    let s = dot(&normal, &to_rat_vec(&complex.rays()[off]))?;
    if s.is_negative() {
        normal = normal.iter().map(|x| -x).collect();
    } else if s.is_zero() {
        return Err(Error::invalid("degenerate boundary wall"));
    }
    for ray in complex.rays() {
        if dot(&normal, &to_rat_vec(ray))?.is_negative() {
            return Err(Error::invalid(
                "support is not convex: a ray crosses a boundary wall",
            ));
        }
    }
    Ok(())
}

/// Top self-intersection degree of the nef divisor of a concave PL
/// function on a complete fan: `n!` times the exact volume of its
/// polytope.
///
/// # Errors
///
/// [`Error::InvalidInput`] on non-concave input or a rank mismatch;
/// [`Error::Unbounded`] when the support is not complete enough to cut a
/// bounded polytope.
pub fn toric_degree(f: &PLConicalFunction, n: usize) -> Result<Rat> {
    if n != f.complex().rank() {
        return Err(Error::DimensionMismatch {
            expected: f.complex().rank(),
            got: n,
        });
    }
    let report = concavity_test(f)?;
    if !report.is_concave {
        return Err(Error::invalid(
            "degree via polytope volume needs a concave function",
        ));
    }
    let vol = f.polytope()?.volume()?;
    Ok(Rat::from_integer(crate::exact::factorial(n)) * vol)
}

/// Degrees of the canonical decreasing divisor sequence attached to a
/// concave conical oracle.
///
/// For each depth `d` the complex is refined `d` times at primitive
/// generator sums and the oracle is interpolated at the rays of the
/// refinement. Interpolants of a concave conical function increase with
/// refinement, so their divisors form a decreasing sequence of nef Cartier
/// divisors converging to the divisor of the oracle, and the returned
/// degrees decrease toward the degree of the limit.
///
/// # Errors
///
/// [`Error::InvalidInput`] when an interpolant fails the concavity test,
/// which certifies the oracle was not concave; evaluation errors
/// propagate.
pub fn decreasing_degree_limit(oracle: &ConicalOracle, depths: &[usize]) -> Result<Vec<Rat>> {
    let n = oracle.support().rank();
    let mut degree_at_depth: Vec<(usize, Rat)> = Vec::new();
    let mut complex = oracle.support().clone();
    let mut level = 0usize;
    let mut sorted = depths.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for d in sorted {
        while level < d {
            complex = refine_level(&complex)?;
            level += 1;
        }
        let values: Vec<Rat> = complex
            .rays()
            .iter()
            .map(|r| oracle.eval(&to_rat_vec(r)))
            .collect::<Result<_>>()?;
        let interpolant = PLConicalFunction::from_ray_values(complex.clone(), &values)?;
        let report = concavity_test(&interpolant)?;
        if !report.is_concave {
            return Err(Error::invalid(
                "interpolation exposed a concavity violation in the oracle",
            ));
        }
        degree_at_depth.push((d, toric_degree(&interpolant, n)?));
    }
    Ok(depths
        .iter()
        .map(|d| {
            degree_at_depth
                .iter()
                .find(|(k, _)| k == d)
                .expect("every requested depth was computed")
                .1
                .clone()
        })
        .collect())
}

/// The strictly effective PL offset on a complex: value `-1` at every ray.
///
/// Its divisor is the sum of all prime divisors of the complex, and adding
/// small positive multiples to an increasing interpolant sequence makes
/// the corresponding divisor sequence strictly decreasing. Exposed for
/// callers that need strictness; the plain interpolant sequence is already
/// non-strictly decreasing.
///
/// # Errors
///
/// Interpolation failures propagate.
pub fn strictly_effective_offset(complex: &ConicalComplex) -> Result<PLConicalFunction> {
    let values = vec![-Rat::one(); complex.rays().len()];
    PLConicalFunction::from_ray_values(complex.clone(), &values)
}

/// The support function of the region under the unit parabola, as a
/// conical oracle on the quadrant fan: for `v = (a, b)` the value is
/// `-max {a x + b y : 0 <= y <= 1 - x^2, |x| <= 1}`, which is rational at
/// rational points, concave, conical, and not piecewise linear.
///
/// # Errors
///
/// Construction failures propagate.
pub fn parabola_support_oracle() -> Result<ConicalOracle> {
    let complex = quadrant_fan()?;
    let two = Rat::from_integer(2.into());
    let four = Rat::from_integer(4.into());
    let eval: EvalFn = Box::new(move |v: &[Rat]| {
        let a = v[0].clone();
        let b = v[1].clone();
        if b.is_positive() {
            let ratio = &a / (&two * &b);
            if ratio.abs() <= Rat::one() {
                return Ok(-(&b + &a * &a / (&four * &b)));
            }
        }
        Ok(-a.abs())
    });
    ConicalOracle::new(complex, eval)
}

/// The complete fan of coordinate quadrants in rank 2.
///
/// # Errors
///
/// Construction failures propagate; none occur for this fixed data.
pub fn quadrant_fan() -> Result<ConicalComplex> {
    crate::fan::build_complex(
        2,
        vec![
            vec![BigInt::one(), BigInt::zero()],
            vec![BigInt::zero(), BigInt::one()],
            vec![-BigInt::one(), BigInt::zero()],
            vec![BigInt::zero(), -BigInt::one()],
        ],
        vec![
            vec![0],
            vec![1],
            vec![2],
            vec![3],
            vec![0, 1],
            vec![1, 2],
            vec![2, 3],
            vec![3, 0],
        ],
    )
}
