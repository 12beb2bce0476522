//! Mixed-cone combinatorics for Siegel domains: points pairing a positive
//! semidefinite form with a vector from its row span, the integral affine
//! action on them, decompositions presented by fundamental cones plus group
//! generators, divisorial functions on that data, and the diagnostic that
//! certifies when the descended conical function fails to be piecewise
//! linear.
//!
//! Everything infinite is certified through finite data: decompositions
//! carry fundamental cones and generators, and every checker works on the
//! fundamental objects together with one shell of group translates.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::conical::{pl_test, ConicalOracle, PLConicalFunction, PlOutcome, PLWitness};
use crate::exact::{
    dot, fmt_rat, is_primitive, psd_certify, rat_vec_to_primitive, to_rat_vec, Rat, RatMatrix,
};
use crate::fan::{build_complex, ConicalComplex};
use crate::recession::{BoxDomain, ConvexOracle, OracleShape};
use crate::sample::Sampler;
use crate::{Error, Result};

/// Flattened dimension of the form cone at the given genus.
pub fn form_rank(genus: usize) -> usize {
    genus * (genus + 1) / 2
}

/// Flattened dimension of the mixed cone at the given genus.
pub fn mixed_rank(genus: usize) -> usize {
    form_rank(genus) + genus
}

fn two() -> Rat {
    Rat::from_integer(BigInt::from(2))
}

fn l1_norm(v: &[Rat]) -> Rat {
    v.iter().map(Signed::abs).sum()
}

fn fmt_point(coords: &[Rat]) -> String {
    let parts: Vec<String> = coords.iter().map(fmt_rat).collect();
    format!("({})", parts.join(", "))
}

/// Flatten a symmetric form into the coordinates that make the lattice of
/// half-integral forms exactly the integer points: the diagonal first, then
/// the doubled off-diagonal entries in lexicographic order.
fn flatten_form(omega: &RatMatrix) -> Vec<Rat> {
    let g = omega.nrows();
    let mut out = Vec::with_capacity(form_rank(g));
    for i in 0..g {
        out.push(omega.get(i, i).clone());
    }
    for i in 0..g {
        for j in (i + 1)..g {
            out.push(omega.get(i, j) * two());
        }
    }
    out
}

fn unflatten_form(genus: usize, coords: &[Rat]) -> Result<RatMatrix> {
    if coords.len() != form_rank(genus) {
        return Err(Error::DimensionMismatch {
            expected: form_rank(genus),
            got: coords.len(),
        });
    }
    let mut omega = RatMatrix::zeros(genus, genus);
    for (i, c) in coords.iter().take(genus).enumerate() {
        omega.set(i, i, c.clone());
    }
    let mut idx = genus;
    for i in 0..genus {
        for j in (i + 1)..genus {
            let v = &coords[idx] / two();
            omega.set(i, j, v.clone());
            omega.set(j, i, v);
            idx += 1;
        }
    }
    Ok(omega)
}

fn flatten_pair(omega: &RatMatrix, beta: &[Rat]) -> Vec<Rat> {
    let mut out = flatten_form(omega);
    out.extend(beta.iter().cloned());
    out
}

/// Solve `m x = b` for a possibly singular square matrix, returning `None`
/// when the system is inconsistent and the free-variable-zero solution
/// otherwise.
fn solve_consistent(m: &RatMatrix, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
    let n = m.nrows();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    let mut rows = Vec::with_capacity(n);
    for (i, bi) in b.iter().enumerate() {
        let mut row = m.row(i).to_vec();
        row.push(bi.clone());
        rows.push(row);
    }
    let (r, pivots) = RatMatrix::from_rows(rows)?.rref();
    if pivots.contains(&n) {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(i, n).clone();
    }
    Ok(Some(x))
}

/// Outcome of the row-span membership test for a form-vector pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TildeMembership {
    /// The vector solves `beta = alpha * omega`; the witness is exact.
    In { alpha: Vec<Rat> },
    /// A kernel vector of the form pairing nontrivially with the vector,
    /// certifying that the pair is outside the mixed cone.
    Out { kernel_vector: Vec<Rat>, pairing: Rat },
}

/// Exact membership test for the mixed cone at fixed form part: does
/// `beta` lie in the row span of the positive semidefinite `omega`?
///
/// # Errors
///
/// [`Error::NotSymmetric`] or [`Error::InvalidInput`] when `omega` is not
/// symmetric positive semidefinite, [`Error::DimensionMismatch`] on a
/// wrong vector length.
pub fn tilde_membership(omega: &RatMatrix, beta: &[Rat]) -> Result<TildeMembership> {
    omega.check_symmetric()?;
    if beta.len() != omega.nrows() {
        return Err(Error::DimensionMismatch {
            expected: omega.nrows(),
            got: beta.len(),
        });
    }
    if !psd_certify(omega)?.is_semidefinite() {
        return Err(Error::invalid("the form must be positive semidefinite"));
    }
    for v in omega.kernel_basis() {
        let pairing = dot(beta, &v)?;
        if !pairing.is_zero() {
            return Ok(TildeMembership::Out {
                kernel_vector: v,
                pairing,
            });
        }
    }
    let alpha = solve_consistent(omega, beta)?
        .ok_or_else(|| Error::invalid("span solve failed despite orthogonality to the kernel"))?;
    Ok(TildeMembership::In { alpha })
}

/// A point of the mixed cone: a symmetric positive semidefinite rational
/// form together with a row vector from its row span, with the exact span
/// witness stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiegelPoint {
    omega: RatMatrix,
    beta: Vec<Rat>,
    zeta: Vec<Rat>,
    definite: bool,
}

impl SiegelPoint {
    /// Validate a form-vector pair into a mixed-cone point.
    ///
    /// # Errors
    ///
    /// Propagates the [`tilde_membership`] errors and returns
    /// [`Error::OutsideSupport`] when the vector is outside the row span.
    pub fn new(omega: RatMatrix, beta: Vec<Rat>) -> Result<Self> {
        match tilde_membership(&omega, &beta)? {
            TildeMembership::In { alpha } => {
                let definite = psd_certify(&omega)?.is_definite();
                Ok(SiegelPoint {
                    omega,
                    beta,
                    zeta: alpha,
                    definite,
                })
            }
            TildeMembership::Out { .. } => Err(Error::OutsideSupport {
                point: flatten_pair(&omega, &beta),
            }),
        }
    }

    /// Genus-one convenience constructor from two scalars.
    ///
    /// # Errors
    ///
    /// Same conditions as [`SiegelPoint::new`].
    pub fn g1(omega: Rat, beta: Rat) -> Result<Self> {
        SiegelPoint::new(RatMatrix::from_rows(vec![vec![omega]])?, vec![beta])
    }

    pub fn genus(&self) -> usize {
        self.omega.nrows()
    }

    pub fn omega(&self) -> &RatMatrix {
        &self.omega
    }

    pub fn beta(&self) -> &[Rat] {
        &self.beta
    }

    /// Stored span witness with `beta = zeta * omega`; canonical when the
    /// form is definite and any exact witness otherwise. The quadratic
    /// value `zeta omega zeta^t` does not depend on the choice.
    pub fn zeta(&self) -> &[Rat] {
        &self.zeta
    }

    pub fn is_definite(&self) -> bool {
        self.definite
    }

    /// The boundary-stable quadratic value `zeta omega zeta^t`, equal to
    /// `beta omega^{-1} beta^t` whenever the form is definite.
    ///
    /// # Errors
    ///
    /// Dimension mismatches propagate; none occur for validated points.
    pub fn span_quadratic(&self) -> Result<Rat> {
        dot(&self.beta, &self.zeta)
    }

    /// Coordinates in the flattening of the mixed cone: the form diagonal,
    /// the doubled off-diagonal form entries, then the vector entries. A
    /// point is a lattice point exactly when these are integers.
    pub fn flatten(&self) -> Vec<Rat> {
        flatten_pair(&self.omega, &self.beta)
    }

    /// Rebuild a point from flattened coordinates.
    ///
    /// # Errors
    ///
    /// Same conditions as [`SiegelPoint::new`] plus a length check.
    pub fn from_flat(genus: usize, coords: &[Rat]) -> Result<Self> {
        if coords.len() != mixed_rank(genus) {
            return Err(Error::DimensionMismatch {
                expected: mixed_rank(genus),
                got: coords.len(),
            });
        }
        let omega = unflatten_form(genus, &coords[..form_rank(genus)])?;
        SiegelPoint::new(omega, coords[form_rank(genus)..].to_vec())
    }

    /// Whether the point lies on the lattice of half-integral forms with
    /// integral vectors.
    pub fn is_lattice(&self) -> bool {
        self.flatten().iter().all(|x| x.denom().is_one())
    }

    /// Whether the point is a primitive lattice vector.
    pub fn is_primitive_lattice(&self) -> bool {
        if !self.is_lattice() {
            return false;
        }
        let ints: Vec<BigInt> = self.flatten().iter().map(|x| x.numer().clone()).collect();
        is_primitive(&ints)
    }
}

/// An integral affine symmetry of the mixed cone: a unimodular basis
/// change together with an integer translation row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    a: RatMatrix,
    lambda: Vec<Rat>,
}

impl GroupElement {
    /// Validate a basis change and translation row into a group element.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] for non-integral data or a determinant other
    /// than plus or minus one; shape mismatches propagate.
    pub fn new(a: RatMatrix, lambda: Vec<Rat>) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::ShapeMismatch(format!(
                "basis change must be square, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        if lambda.len() != a.nrows() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                got: lambda.len(),
            });
        }
        let integral = (0..a.nrows()).all(|i| a.row(i).iter().all(|x| x.denom().is_one()))
            && lambda.iter().all(|x| x.denom().is_one());
        if !integral {
            return Err(Error::invalid("group elements must have integer entries"));
        }
        if a.det()?.abs() != Rat::one() {
            return Err(Error::invalid(
                "the basis change must have determinant 1 or -1",
            ));
        }
        Ok(GroupElement { a, lambda })
    }

    pub fn identity(genus: usize) -> Self {
        GroupElement {
            a: RatMatrix::identity(genus),
            lambda: vec![Rat::zero(); genus],
        }
    }

    /// Pure translation by an integer row.
    ///
    /// # Errors
    ///
    /// Same conditions as [`GroupElement::new`].
    pub fn translation(lambda: Vec<Rat>) -> Result<Self> {
        let genus = lambda.len();
        GroupElement::new(RatMatrix::identity(genus), lambda)
    }

    /// Pure basis change with zero translation.
    ///
    /// # Errors
    ///
    /// Same conditions as [`GroupElement::new`].
    pub fn basis_change(a: RatMatrix) -> Result<Self> {
        let genus = a.nrows();
        GroupElement::new(a, vec![Rat::zero(); genus])
    }

    pub fn genus(&self) -> usize {
        self.a.nrows()
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.a
    }

    pub fn lambda(&self) -> &[Rat] {
        &self.lambda
    }

    pub fn is_identity(&self) -> bool {
        self.a == RatMatrix::identity(self.genus()) && self.lambda.iter().all(Rat::is_zero)
    }

    /// Group law chosen so that acting by the product equals acting by the
    /// factors in order: `self` after `other`.
    ///
    /// # Errors
    ///
    /// Fails on a genus mismatch.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.genus() != other.genus() {
            return Err(Error::DimensionMismatch {
                expected: self.genus(),
                got: other.genus(),
            });
        }
        let a = self.a.matmul(&other.a)?;
        let mut lambda = row_times_matrix(&self.lambda, &other.a)?;
        for (l, o) in lambda.iter_mut().zip(&other.lambda) {
            *l += o;
        }
        Ok(GroupElement { a, lambda })
    }

    /// The group inverse.
    ///
    /// # Errors
    ///
    /// Never fails for validated elements; matrix errors propagate.
    pub fn inverse(&self) -> Result<Self> {
        let a_inv = self.a.inverse()?;
        let lambda = row_times_matrix(&self.lambda, &a_inv)?
            .into_iter()
            .map(|x| -x)
            .collect();
        Ok(GroupElement { a: a_inv, lambda })
    }
}

fn row_times_matrix(row: &[Rat], m: &RatMatrix) -> Result<Vec<Rat>> {
    m.transpose().matvec(row)
}

/// Apply a group element to a mixed-cone point: the form transforms by
/// congruence and the vector by the affine rule
/// `(beta + lambda omega) a^t`.
///
/// # Errors
///
/// Fails on a genus mismatch; the image is revalidated.
pub fn act(element: &GroupElement, p: &SiegelPoint) -> Result<SiegelPoint> {
    if element.genus() != p.genus() {
        return Err(Error::DimensionMismatch {
            expected: p.genus(),
            got: element.genus(),
        });
    }
    let omega = element
        .a
        .matmul(&p.omega)?
        .matmul(&element.a.transpose())?;
    let lambda_omega = p.omega.matvec(&element.lambda)?;
    let shifted: Vec<Rat> = p
        .beta
        .iter()
        .zip(&lambda_omega)
        .map(|(b, lo)| b + lo)
        .collect();
    let beta = element.a.matvec(&shifted)?;
    SiegelPoint::new(omega, beta)
}

/// Apply a group element in flattened coordinates.
///
/// # Errors
///
/// Same conditions as [`act`] and [`SiegelPoint::from_flat`].
pub fn act_flat(element: &GroupElement, genus: usize, coords: &[Rat]) -> Result<Vec<Rat>> {
    let p = SiegelPoint::from_flat(genus, coords)?;
    Ok(act(element, &p)?.flatten())
}

/// The exact right side of the translation law at a point:
/// `lambda omega lambda^t + 2 beta lambda^t`. The basis-change part of the
/// element does not enter.
///
/// # Errors
///
/// Fails on a genus mismatch.
pub fn translation_defect(element: &GroupElement, p: &SiegelPoint) -> Result<Rat> {
    if element.genus() != p.genus() {
        return Err(Error::DimensionMismatch {
            expected: p.genus(),
            got: element.genus(),
        });
    }
    let lambda_omega = p.omega.matvec(&element.lambda)?;
    let quad = dot(&element.lambda, &lambda_omega)?;
    let cross = dot(&p.beta, &element.lambda)?;
    Ok(quad + cross * two())
}

/// A decomposition of the mixed cone presented by finite data: fundamental
/// cones for the form cone and the mixed cone, group generators, and the
/// shell radius bounding the group words used by the finite checkers.
#[derive(Debug, Clone)]
pub struct AdmissibleDecomposition {
    genus: usize,
    sigma_rays: Vec<Vec<BigInt>>,
    sigma_cones: Vec<Vec<usize>>,
    pi_rays: Vec<Vec<BigInt>>,
    pi_cones: Vec<Vec<usize>>,
    basis_gens: Vec<RatMatrix>,
    translation_gens: Vec<Vec<Rat>>,
    shell_radius: usize,
}

impl AdmissibleDecomposition {
    /// Assemble user-supplied decomposition data. Only shapes and the
    /// group-element invariants are validated here; run
    /// [`admissibility_check`] for the geometric conditions.
    ///
    /// # Errors
    ///
    /// [`Error::DimensionMismatch`] on wrong ray lengths and
    /// [`Error::InvalidInput`] for bad generators or a zero shell radius.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        genus: usize,
        sigma_rays: Vec<Vec<BigInt>>,
        sigma_cones: Vec<Vec<usize>>,
        pi_rays: Vec<Vec<BigInt>>,
        pi_cones: Vec<Vec<usize>>,
        basis_gens: Vec<RatMatrix>,
        translation_gens: Vec<Vec<Rat>>,
        shell_radius: usize,
    ) -> Result<Self> {
        if genus == 0 {
            return Err(Error::invalid("genus must be positive"));
        }
        if shell_radius == 0 {
            return Err(Error::invalid("the shell radius must be positive"));
        }
        for ray in &sigma_rays {
            if ray.len() != form_rank(genus) {
                return Err(Error::DimensionMismatch {
                    expected: form_rank(genus),
                    got: ray.len(),
                });
            }
        }
        for ray in &pi_rays {
            if ray.len() != mixed_rank(genus) {
                return Err(Error::DimensionMismatch {
                    expected: mixed_rank(genus),
                    got: ray.len(),
                });
            }
        }
        for a in &basis_gens {
            GroupElement::basis_change(a.clone())?;
        }
        for lambda in &translation_gens {
            if lambda.len() != genus {
                return Err(Error::DimensionMismatch {
                    expected: genus,
                    got: lambda.len(),
                });
            }
            GroupElement::translation(lambda.clone())?;
        }
        Ok(AdmissibleDecomposition {
            genus,
            sigma_rays,
            sigma_cones,
            pi_rays,
            pi_cones,
            basis_gens,
            translation_gens,
            shell_radius,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn shell_radius(&self) -> usize {
        self.shell_radius
    }

    pub fn sigma_rays(&self) -> &[Vec<BigInt>] {
        &self.sigma_rays
    }

    pub fn sigma_cones(&self) -> &[Vec<usize>] {
        &self.sigma_cones
    }

    pub fn pi_rays(&self) -> &[Vec<BigInt>] {
        &self.pi_rays
    }

    pub fn pi_cones(&self) -> &[Vec<usize>] {
        &self.pi_cones
    }

    pub fn basis_gens(&self) -> &[RatMatrix] {
        &self.basis_gens
    }

    pub fn translation_gens(&self) -> &[Vec<Rat>] {
        &self.translation_gens
    }

    /// The fundamental form-cone complex.
    ///
    /// # Errors
    ///
    /// Propagates the complex validation errors.
    pub fn sigma_complex(&self) -> Result<ConicalComplex> {
        build_complex(
            form_rank(self.genus),
            self.sigma_rays.clone(),
            self.sigma_cones.clone(),
        )
    }

    /// The fundamental mixed-cone complex.
    ///
    /// # Errors
    ///
    /// Propagates the complex validation errors.
    pub fn pi_complex(&self) -> Result<ConicalComplex> {
        build_complex(
            mixed_rank(self.genus),
            self.pi_rays.clone(),
            self.pi_cones.clone(),
        )
    }

    /// The declared group generators as elements: basis changes first,
    /// then translations.
    ///
    /// # Errors
    ///
    /// Never fails for data accepted by the constructor.
    pub fn generators(&self) -> Result<Vec<GroupElement>> {
        let mut gens = Vec::new();
        for a in &self.basis_gens {
            gens.push(GroupElement::basis_change(a.clone())?);
        }
        for lambda in &self.translation_gens {
            gens.push(GroupElement::translation(lambda.clone())?);
        }
        Ok(gens)
    }
}

/// The classical genus-one decomposition: the half-line as form cone, the
/// wedge between `(1, 0)` and `(1, 1)` as fundamental mixed cone, and the
/// unit translation generating the group.
pub fn standard_decomposition_g1() -> AdmissibleDecomposition {
    AdmissibleDecomposition {
        genus: 1,
        sigma_rays: vec![vec![BigInt::one()]],
        sigma_cones: vec![vec![0]],
        pi_rays: vec![
            vec![BigInt::one(), BigInt::zero()],
            vec![BigInt::one(), BigInt::one()],
        ],
        pi_cones: vec![vec![0], vec![1], vec![0, 1]],
        basis_gens: Vec::new(),
        translation_gens: vec![vec![Rat::one()]],
        shell_radius: 2,
    }
}

fn generator_alphabet(dec: &AdmissibleDecomposition) -> Result<Vec<GroupElement>> {
    let gens = dec.generators()?;
    let mut alphabet = gens.clone();
    for g in &gens {
        let inv = g.inverse()?;
        if !alphabet.contains(&inv) {
            alphabet.push(inv);
        }
    }
    Ok(alphabet)
}

/// All group words of length at most the shell radius, identity included.
fn shell_words(dec: &AdmissibleDecomposition) -> Result<Vec<GroupElement>> {
    let alphabet = generator_alphabet(dec)?;
    let mut words = vec![GroupElement::identity(dec.genus)];
    let mut frontier = words.clone();
    for _ in 0..dec.shell_radius {
        let mut next = Vec::new();
        for w in &frontier {
            for a in &alphabet {
                let nw = a.compose(w)?;
                if !words.contains(&nw) {
                    words.push(nw.clone());
                    next.push(nw);
                }
            }
        }
        frontier = next;
    }
    Ok(words)
}

fn translate_pi_ray(
    element: &GroupElement,
    genus: usize,
    ray: &[BigInt],
) -> Result<Vec<BigInt>> {
    let image = act_flat(element, genus, &to_rat_vec(ray))?;
    rat_vec_to_primitive(&image)
        .ok_or_else(|| Error::invalid("a group element collapsed a mixed-cone ray"))
}

fn translate_sigma_ray(a: &RatMatrix, genus: usize, ray: &[BigInt]) -> Result<Vec<BigInt>> {
    let omega = unflatten_form(genus, &to_rat_vec(ray))?;
    let image = a.matmul(&omega)?.matmul(&a.transpose())?;
    rat_vec_to_primitive(&flatten_form(&image))
        .ok_or_else(|| Error::invalid("a group element collapsed a form-cone ray"))
}

/// Fundamental cones plus their one-shell translates, as raw ray and index
/// data with orbit provenance for the maximal cones.
struct ShellData {
    rays: Vec<Vec<BigInt>>,
    cones: Vec<Vec<usize>>,
    /// For each maximal-dimension translated cone: the word index and the
    /// fundamental cone index it came from.
    provenance: Vec<(usize, usize, Vec<usize>)>,
}

fn shell_data(dec: &AdmissibleDecomposition) -> Result<ShellData> {
    let words = shell_words(dec)?;
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut cones: Vec<Vec<usize>> = Vec::new();
    let mut provenance = Vec::new();
    let maximal: Vec<bool> = dec
        .pi_cones
        .iter()
        .map(|c| {
            !dec.pi_cones
                .iter()
                .any(|d| d.len() > c.len() && c.iter().all(|r| d.contains(r)))
        })
        .collect();
    for (wi, w) in words.iter().enumerate() {
        for (ci, cone) in dec.pi_cones.iter().enumerate() {
            let mut indices = Vec::with_capacity(cone.len());
            for &ri in cone {
                let ray = translate_pi_ray(w, dec.genus, &dec.pi_rays[ri])?;
                let idx = match rays.iter().position(|r| *r == ray) {
                    Some(i) => i,
                    None => {
                        rays.push(ray);
                        rays.len() - 1
                    }
                };
                indices.push(idx);
            }
            indices.sort_unstable();
            if maximal[ci] {
                provenance.push((wi, ci, indices.clone()));
            }
            if !cones.contains(&indices) {
                cones.push(indices);
            }
        }
    }
    Ok(ShellData {
        rays,
        cones,
        provenance,
    })
}

/// A single verified item of an itemized report.
#[derive(Debug, Clone)]
pub struct CheckItem {
    pub item: usize,
    pub label: String,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Itemized pass/fail report with witnesses for the failures.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.items.iter().all(|it| it.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|it| !it.pass)
    }

    fn push(&mut self, item: usize, label: &str, witness: Option<String>) {
        self.items.push(CheckItem {
            item,
            label: label.to_string(),
            pass: witness.is_none(),
            witness,
        });
    }

    fn skip(&mut self, item: usize, label: &str) {
        self.items.push(CheckItem {
            item,
            label: label.to_string(),
            pass: false,
            witness: Some("not evaluated after an earlier failure".to_string()),
        });
    }
}

fn independent_rays(rays: &[&[BigInt]]) -> Result<bool> {
    if rays.is_empty() {
        return Ok(true);
    }
    let rows: Vec<Vec<Rat>> = rays.iter().map(|r| to_rat_vec(r)).collect();
    let m = RatMatrix::from_rows(rows)?;
    Ok(m.rank() == rays.len())
}

/// Sum of the projection residual and the negative-coefficient mass of a
/// point against a simplicial cone: zero exactly on membership.
fn cone_membership_violation(rays: &[Vec<Rat>], x: &[Rat]) -> Result<Rat> {
    if rays.is_empty() {
        return Ok(l1_norm(x));
    }
    let n = x.len();
    let mut cols = RatMatrix::zeros(n, rays.len());
    for (j, r) in rays.iter().enumerate() {
        for (i, ri) in r.iter().enumerate() {
            cols.set(i, j, ri.clone());
        }
    }
    let gt = cols.transpose();
    let gram = gt.matmul(&cols)?;
    let lambda = gram.solve(&gt.matvec(x)?)?;
    let image = cols.matvec(&lambda)?;
    let mut violation = Rat::zero();
    for (xi, im) in x.iter().zip(&image) {
        violation += (xi - im).abs();
    }
    for l in &lambda {
        if l.is_negative() {
            violation -= l;
        }
    }
    Ok(violation)
}

fn in_simplicial_cone(rays: &[Vec<Rat>], x: &[Rat]) -> Result<bool> {
    Ok(cone_membership_violation(rays, x)?.is_zero())
}

/// Verify the decomposition conditions on the fundamental data and one
/// shell of group translates, with default sampling parameters.
///
/// # Errors
///
/// Only internal arithmetic failures; geometric violations are reported,
/// not raised.
pub fn admissibility_check(dec: &AdmissibleDecomposition) -> Result<CheckReport> {
    admissibility_check_with(dec, 12, 3, 0xADA)
}

/// [`admissibility_check`] with explicit support-sample count, sample
/// height, and seed.
///
/// # Errors
///
/// Only internal arithmetic failures; geometric violations are reported.
pub fn admissibility_check_with(
    dec: &AdmissibleDecomposition,
    samples: usize,
    height: i64,
    seed: u64,
) -> Result<CheckReport> {
    let mut report = CheckReport { items: Vec::new() };
    let g = dec.genus;

    let label1 = "cones are rational, strictly convex, with primitive generators in the mixed cone";
    let mut witness1 = None;
    for (i, ray) in dec.sigma_rays.iter().enumerate() {
        if !is_primitive(ray) {
            witness1 = Some(format!("form-cone ray {i} is not primitive"));
            break;
        }
        let omega = unflatten_form(g, &to_rat_vec(ray))?;
        if !omega.is_symmetric() || !psd_certify(&omega)?.is_semidefinite() {
            witness1 = Some(format!("form-cone ray {i} is not a semidefinite form"));
            break;
        }
    }
    if witness1.is_none() {
        for (i, ray) in dec.pi_rays.iter().enumerate() {
            if !is_primitive(ray) {
                witness1 = Some(format!("mixed-cone ray {i} is not primitive"));
                break;
            }
            if SiegelPoint::from_flat(g, &to_rat_vec(ray)).is_err() {
                witness1 = Some(format!("mixed-cone ray {i} is outside the mixed cone"));
                break;
            }
        }
    }
    if witness1.is_none() {
        let all_lists = [
            (&dec.sigma_rays, &dec.sigma_cones, "form"),
            (&dec.pi_rays, &dec.pi_cones, "mixed"),
        ];
        'outer: for (rays, cones, side) in all_lists {
            for (ci, cone) in cones.iter().enumerate() {
                if cone.iter().any(|&r| r >= rays.len()) {
                    witness1 = Some(format!("{side}-cone {ci} references a missing ray"));
                    break 'outer;
                }
                let gens: Vec<&[BigInt]> = cone.iter().map(|&r| rays[r].as_slice()).collect();
                if !independent_rays(&gens)? {
                    witness1 = Some(format!("{side}-cone {ci} is not strictly convex"));
                    break 'outer;
                }
            }
        }
    }
    let structural_ok = witness1.is_none();
    report.push(1, label1, witness1);

    let label2 = "every proper face of a listed cone is listed";
    let mut witness2 = None;
    for (cones, side) in [(&dec.sigma_cones, "form"), (&dec.pi_cones, "mixed")] {
        for (ci, cone) in cones.iter().enumerate() {
            for k in 0..cone.len() {
                let mut face = cone.clone();
                face.remove(k);
                face.sort_unstable();
                let listed = face.is_empty()
                    || cones.iter().any(|c| {
                        let mut s = c.clone();
                        s.sort_unstable();
                        s == face
                    });
                if !listed {
                    witness2 = Some(format!(
                        "{side}-cone {ci} is missing the face without ray {}",
                        cone[k]
                    ));
                    break;
                }
            }
        }
    }
    let faces_ok = witness2.is_none();
    report.push(2, label2, witness2);

    let label3 = "fundamental cones and one shell of translates intersect in common faces";
    let label4 = "each mixed-cone piece projects into a single form-cone piece";
    let label5 = "fundamental cones represent pairwise distinct orbits";
    let label6 = "sampled mixed-cone points reduce into the fundamental cones";
    if !(structural_ok && faces_ok) {
        report.skip(3, label3);
        report.skip(4, label4);
        report.skip(5, label5);
        report.skip(6, label6);
        return Ok(report);
    }

    let shell = shell_data(dec)?;
    let shell_complex = build_complex(mixed_rank(g), shell.rays.clone(), shell.cones.clone());
    let witness3 = match &shell_complex {
        Ok(_) => None,
        Err(e) => Some(format!("shell complex rejected: {e}")),
    };
    report.push(3, label3, witness3);

    let mut sigma_shell: Vec<Vec<Vec<Rat>>> = Vec::new();
    {
        let mut sigma_words: Vec<RatMatrix> = vec![RatMatrix::identity(g)];
        let mut alphabet: Vec<RatMatrix> = dec.basis_gens.clone();
        for a in &dec.basis_gens {
            alphabet.push(a.inverse()?);
        }
        let mut frontier = sigma_words.clone();
        for _ in 0..dec.shell_radius {
            let mut next = Vec::new();
            for w in &frontier {
                for a in &alphabet {
                    let nw = a.matmul(w)?;
                    if !sigma_words.contains(&nw) {
                        sigma_words.push(nw.clone());
                        next.push(nw);
                    }
                }
            }
            frontier = next;
        }
        for w in &sigma_words {
            for cone in &dec.sigma_cones {
                let mut rays = Vec::new();
                for &ri in cone {
                    rays.push(to_rat_vec(&translate_sigma_ray(w, g, &dec.sigma_rays[ri])?));
                }
                sigma_shell.push(rays);
            }
        }
        sigma_shell.push(Vec::new());
    }
    let mut witness4 = None;
    'proj: for cone in &shell.cones {
        let projected: Vec<Vec<Rat>> = cone
            .iter()
            .map(|&ri| to_rat_vec(&shell.rays[ri][..form_rank(g)]))
            .collect();
        let mut contained = false;
        for sigma in &sigma_shell {
            let mut all_in = true;
            for p in &projected {
                if !in_simplicial_cone(sigma, p)? {
                    all_in = false;
                    break;
                }
            }
            if all_in {
                contained = true;
                break;
            }
        }
        if !contained {
            witness4 = Some(format!(
                "the projection of the cone with rays {:?} fits in no form-cone piece",
                cone
            ));
            break 'proj;
        }
    }
    report.push(4, label4, witness4);

    let mut witness5 = None;
    let fundamental_max: Vec<(usize, Vec<usize>)> = shell
        .provenance
        .iter()
        .filter(|(wi, _, _)| *wi == 0)
        .map(|(_, ci, indices)| (*ci, indices.clone()))
        .collect();
    'orbits: for (wi, ci, indices) in &shell.provenance {
        for (cj, fund_indices) in &fundamental_max {
            if ci != cj && indices == fund_indices {
                witness5 = Some(format!(
                    "fundamental cones {ci} and {cj} lie in one orbit (word {wi})"
                ));
                break 'orbits;
            }
        }
    }
    report.push(5, label5, witness5);

    let mut witness6 = None;
    let mut sampler = Sampler::new(seed);
    for _ in 0..samples {
        let omega = sampler.pd_matrix(g, height, 2);
        let zeta = sampler.rat_vec(g, height, 2);
        let beta = omega.matvec(&zeta)?;
        let p = SiegelPoint::new(omega, beta)?;
        if locate_in_support(dec, &p, 256).is_err() {
            witness6 = Some(format!(
                "sample point {} does not reduce into the fundamental cones",
                fmt_point(&p.flatten())
            ));
            break;
        }
    }
    report.push(6, label6, witness6);

    Ok(report)
}

/// A point located in the decomposition: the group element carrying it
/// into the fundamental cones, the resulting representative, and the index
/// of the fundamental cone containing it.
#[derive(Debug, Clone)]
pub struct LocatedPoint {
    pub element: GroupElement,
    pub representative: SiegelPoint,
    pub cone: usize,
}

/// Carry a point into the fundamental cones by greedy descent on the
/// membership violation over the group generators.
///
/// # Errors
///
/// [`Error::IterationLimit`] when the budget runs out or no generator
/// decreases the violation; genus mismatches propagate.
pub fn locate_in_support(
    dec: &AdmissibleDecomposition,
    p: &SiegelPoint,
    budget: usize,
) -> Result<LocatedPoint> {
    if p.genus() != dec.genus {
        return Err(Error::DimensionMismatch {
            expected: dec.genus,
            got: p.genus(),
        });
    }
    let pi = dec.pi_complex()?;
    let maximal = pi.maximal_cones();
    let violation = |point: &SiegelPoint| -> Result<Rat> {
        let coords = point.flatten();
        let mut best: Option<Rat> = None;
        for &mc in &maximal {
            let v = cone_membership_violation(&pi.cone_generators(mc), &coords)?;
            best = Some(match best {
                Some(b) if b <= v => b,
                _ => v,
            });
        }
        Ok(best.unwrap_or_else(|| l1_norm(&coords)))
    };
    let alphabet = generator_alphabet(dec)?;
    let mut current = p.clone();
    let mut word = GroupElement::identity(dec.genus);
    let mut current_violation = violation(&current)?;
    for _ in 0..=budget {
        if current_violation.is_zero() {
            let cone = pi.locate(&current.flatten())?;
            return Ok(LocatedPoint {
                element: word,
                representative: current,
                cone,
            });
        }
        let mut best: Option<(GroupElement, SiegelPoint, Rat)> = None;
        for a in &alphabet {
            let cand = act(a, &current)?;
            let v = violation(&cand)?;
            if v < current_violation && best.as_ref().is_none_or(|(_, _, bv)| v < *bv) {
                best = Some((a.compose(&word)?, cand, v));
            }
        }
        match best {
            Some((w, c, v)) => {
                word = w;
                current = c;
                current_violation = v;
            }
            None => {
                return Err(Error::IterationLimit(format!(
                    "no generator reduces the membership violation of {}",
                    fmt_point(&current.flatten())
                )))
            }
        }
    }
    Err(Error::IterationLimit(format!(
        "point {} did not reduce within {budget} group steps",
        fmt_point(&p.flatten())
    )))
}

/// Piecewise linear data on the fundamental mixed-cone pieces, carrying
/// the denominator bound for its rational values and the checker flags.
/// Every flag starts unset and is only set by the corresponding checker.
#[derive(Debug, Clone)]
pub struct DivisorialFunction {
    pl: PLConicalFunction,
    ray_values: Vec<Rat>,
    denominator_bound: u64,
    admissible: bool,
    strictly_anti_effective: bool,
    polarization: bool,
    sufficiently_negative: bool,
}

impl DivisorialFunction {
    /// Interpolate the given values at the fundamental mixed-cone rays.
    ///
    /// # Errors
    ///
    /// Complex validation errors propagate; the value count must match the
    /// ray count.
    pub fn from_ray_values(dec: &AdmissibleDecomposition, values: &[Rat]) -> Result<Self> {
        let pi = dec.pi_complex()?;
        if values.len() != pi.rays().len() {
            return Err(Error::DimensionMismatch {
                expected: pi.rays().len(),
                got: values.len(),
            });
        }
        let pl = PLConicalFunction::from_ray_values(pi, values)?;
        Ok(DivisorialFunction {
            pl,
            ray_values: values.to_vec(),
            denominator_bound: 60,
            admissible: false,
            strictly_anti_effective: false,
            polarization: false,
            sufficiently_negative: false,
        })
    }

    /// Replace the denominator bound used by [`divisorial_check`]. Resets
    /// the admissible flag.
    pub fn with_denominator_bound(mut self, bound: u64) -> Self {
        self.denominator_bound = bound;
        self.admissible = false;
        self
    }

    pub fn pl(&self) -> &PLConicalFunction {
        &self.pl
    }

    pub fn ray_values(&self) -> &[Rat] {
        &self.ray_values
    }

    pub fn denominator_bound(&self) -> u64 {
        self.denominator_bound
    }

    pub fn is_admissible(&self) -> bool {
        self.admissible
    }

    pub fn is_strictly_anti_effective(&self) -> bool {
        self.strictly_anti_effective
    }

    pub fn is_polarization(&self) -> bool {
        self.polarization
    }

    pub fn is_sufficiently_negative(&self) -> bool {
        self.sufficiently_negative
    }

    /// Evaluate on the fundamental support.
    ///
    /// # Errors
    ///
    /// [`Error::OutsideSupport`] off the fundamental cones.
    pub fn eval(&self, p: &SiegelPoint) -> Result<Rat> {
        self.pl.eval(&p.flatten())
    }
}

/// Lattice sample points of a maximal cone: the rays, their pairwise sums,
/// their doubles, and the total generator sum.
fn cone_lattice_samples(pi: &ConicalComplex, cone: usize) -> Vec<Vec<Rat>> {
    let gens = pi.cone_generators(cone);
    let mut samples: Vec<Vec<Rat>> = Vec::new();
    let mut push = |v: Vec<Rat>| {
        if !samples.contains(&v) {
            samples.push(v);
        }
    };
    for g in &gens {
        push(g.clone());
        push(g.iter().map(|x| x * two()).collect());
    }
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            push(gens[i].iter().zip(&gens[j]).map(|(a, b)| a + b).collect());
        }
    }
    push(pi.relint_point(cone));
    samples
}

/// Verify the divisorial conditions and set the admissible flag on
/// success: conical linear data, the denominator bound on lattice samples,
/// linearity on each fundamental cone, and the translation law together
/// with the consistency of the extension it defines on one shell.
///
/// # Errors
///
/// Internal arithmetic failures only; violations are reported.
pub fn divisorial_check(
    phi: &mut DivisorialFunction,
    dec: &AdmissibleDecomposition,
) -> Result<CheckReport> {
    let mut report = CheckReport { items: Vec::new() };
    let pi = phi.pl.complex().clone();
    let maximal: Vec<usize> = pi
        .maximal_cones()
        .into_iter()
        .filter(|&c| pi.cones()[c].dim() > 0)
        .collect();

    let label1 = "the data is conical: linear forms, matching the stored ray values";
    let mut witness1 = None;
    for (i, ray) in pi.rays().iter().enumerate() {
        let v = phi.pl.eval(&to_rat_vec(ray))?;
        if v != phi.ray_values[i] {
            witness1 = Some(format!(
                "ray {i} evaluates to {} against stored {}",
                fmt_rat(&v),
                fmt_rat(&phi.ray_values[i])
            ));
            break;
        }
    }
    if witness1.is_none() {
        for &mc in &maximal {
            let p = pi.relint_point(mc);
            let scaled: Vec<Rat> = p.iter().map(|x| x * two()).collect();
            if phi.pl.eval(&scaled)? != phi.pl.eval(&p)? * two() {
                witness1 = Some(format!(
                    "homogeneity fails at {}",
                    fmt_point(&p)
                ));
                break;
            }
        }
    }
    report.push(1, label1, witness1);

    let label2 = "values on lattice samples respect the denominator bound";
    let bound = BigInt::from(phi.denominator_bound);
    let mut witness2 = None;
    'denoms: for &mc in &maximal {
        for sample in cone_lattice_samples(&pi, mc) {
            if !sample.iter().all(|x| x.denom().is_one()) {
                continue;
            }
            let v = phi.pl.eval(&sample)?;
            if v.denom() > &bound {
                witness2 = Some(format!(
                    "value {} at {} exceeds the denominator bound {}",
                    fmt_rat(&v),
                    fmt_point(&sample),
                    phi.denominator_bound
                ));
                break 'denoms;
            }
        }
    }
    report.push(2, label2, witness2);

    let label3 = "the data is linear on each fundamental cone";
    let mut witness3 = None;
    'linear: for &mc in &maximal {
        let gens = pi.cone_generators(mc);
        for i in 0..gens.len() {
            for j in (i + 1)..gens.len() {
                let sum: Vec<Rat> = gens[i].iter().zip(&gens[j]).map(|(a, b)| a + b).collect();
                let lhs = phi.pl.eval(&sum)?;
                let rhs = phi.pl.eval(&gens[i])? + phi.pl.eval(&gens[j])?;
                if lhs != rhs {
                    witness3 = Some(format!(
                        "additivity fails at {}: {} against {}",
                        fmt_point(&sum),
                        fmt_rat(&lhs),
                        fmt_rat(&rhs)
                    ));
                    break 'linear;
                }
            }
        }
    }
    report.push(3, label3, witness3);

    let label4 = "the translation law holds and extends consistently on one shell";
    let mut seeds: Vec<(SiegelPoint, Rat)> = Vec::new();
    for &mc in &maximal {
        for sample in cone_lattice_samples(&pi, mc) {
            let point = SiegelPoint::from_flat(dec.genus, &sample)?;
            let value = phi.pl.eval(&sample)?;
            if !seeds.iter().any(|(p, _)| p == &point) {
                seeds.push((point, value));
            }
        }
    }
    for (i, ray) in pi.rays().iter().enumerate() {
        let point = SiegelPoint::from_flat(dec.genus, &to_rat_vec(ray))?;
        if !seeds.iter().any(|(p, _)| p == &point) {
            seeds.push((point, phi.ray_values[i].clone()));
        }
    }
    let witness4 = law_extension_conflict(dec, &seeds)?;
    report.push(4, label4, witness4);

    phi.admissible = report.pass();
    Ok(report)
}

/// Breadth-first extension of seeded values by the translation law over
/// one shell of group words, reporting the first conflict.
fn law_extension_conflict(
    dec: &AdmissibleDecomposition,
    seeds: &[(SiegelPoint, Rat)],
) -> Result<Option<String>> {
    let alphabet = generator_alphabet(dec)?;
    let mut known: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for (p, v) in seeds {
        known.push((p.flatten(), v.clone()));
    }
    let mut frontier: Vec<(SiegelPoint, Rat)> = seeds.to_vec();
    for _ in 0..dec.shell_radius {
        let mut next = Vec::new();
        for (p, v) in &frontier {
            for gamma in &alphabet {
                let image = act(gamma, p)?;
                let value = v - translation_defect(gamma, p)?;
                let coords = image.flatten();
                match known.iter().find(|(c, _)| *c == coords) {
                    Some((_, old)) if *old == value => {}
                    Some((_, old)) => {
                        return Ok(Some(format!(
                            "extension conflict at {}: {} against {}",
                            fmt_point(&coords),
                            fmt_rat(old),
                            fmt_rat(&value)
                        )));
                    }
                    None => {
                        known.push((coords, value.clone()));
                        next.push((image, value));
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(None)
}

/// Outcome of a pointwise bound verification over cone samples.
#[derive(Debug, Clone)]
pub struct PointwiseReport {
    pub holds: bool,
    pub samples: usize,
    /// Failing point with its value and the violated bound.
    pub witness: Option<(Vec<Rat>, Rat, Rat)>,
}

fn pointwise_samples(pi: &ConicalComplex, seed: u64) -> Vec<Vec<Rat>> {
    let mut samples = Vec::new();
    let mut sampler = Sampler::new(seed);
    for mc in pi.maximal_cones() {
        if pi.cones()[mc].dim() == 0 {
            continue;
        }
        samples.extend(cone_lattice_samples(pi, mc));
        let gens = pi.cone_generators(mc);
        for _ in 0..4 {
            let mut p = vec![Rat::zero(); pi.rank()];
            for g in &gens {
                let c = Rat::from_integer(BigInt::from(sampler.int_in(1, 3)));
                for (pi_, gi) in p.iter_mut().zip(g) {
                    *pi_ += gi * &c;
                }
            }
            samples.push(p);
        }
    }
    samples
}

/// Verify the negativity bound `phi(q) <= -(zeta omega zeta^t)` on rays and
/// interior samples of the fundamental cones, setting the
/// sufficiently-negative flag accordingly.
///
/// # Errors
///
/// Internal arithmetic failures only.
pub fn negativity_check(
    phi: &mut DivisorialFunction,
    dec: &AdmissibleDecomposition,
) -> Result<PointwiseReport> {
    let pi = phi.pl.complex().clone();
    let samples = pointwise_samples(&pi, 0x5EC);
    let mut count = 0;
    for coords in samples {
        let point = SiegelPoint::from_flat(dec.genus, &coords)?;
        let bound = -point.span_quadratic()?;
        let value = phi.pl.eval(&coords)?;
        count += 1;
        if value > bound {
            phi.sufficiently_negative = false;
            return Ok(PointwiseReport {
                holds: false,
                samples: count,
                witness: Some((coords, value, bound)),
            });
        }
    }
    phi.sufficiently_negative = true;
    Ok(PointwiseReport {
        holds: true,
        samples: count,
        witness: None,
    })
}

/// Verify that the data is nonpositive at all samples and strictly
/// negative at the relative interior points of the maximal cones, setting
/// the strictly-anti-effective flag accordingly.
///
/// # Errors
///
/// Internal arithmetic failures only.
pub fn strict_negativity_check(
    phi: &mut DivisorialFunction,
    dec: &AdmissibleDecomposition,
) -> Result<PointwiseReport> {
    let _ = dec;
    let pi = phi.pl.complex().clone();
    let mut count = 0;
    for coords in pointwise_samples(&pi, 0x57C) {
        let value = phi.pl.eval(&coords)?;
        count += 1;
        if value.is_positive() {
            phi.strictly_anti_effective = false;
            return Ok(PointwiseReport {
                holds: false,
                samples: count,
                witness: Some((coords, value, Rat::zero())),
            });
        }
    }
    for mc in pi.maximal_cones() {
        if pi.cones()[mc].dim() == 0 {
            continue;
        }
        let p = pi.relint_point(mc);
        let value = phi.pl.eval(&p)?;
        count += 1;
        if !value.is_negative() {
            phi.strictly_anti_effective = false;
            return Ok(PointwiseReport {
                holds: false,
                samples: count,
                witness: Some((p, value, Rat::zero())),
            });
        }
    }
    phi.strictly_anti_effective = true;
    Ok(PointwiseReport {
        holds: true,
        samples: count,
        witness: None,
    })
}

/// Wall-local strict concavity report across one shell of translates.
#[derive(Debug, Clone)]
pub struct WallReport {
    pub holds: bool,
    pub walls: usize,
    pub witness: Option<String>,
}

/// Check strict concavity of the extended data across every interior wall
/// of the fundamental-plus-shell complex, setting the polarization flag
/// accordingly. Strictness is certified wall-locally.
///
/// # Errors
///
/// Requires an admissible function; complex and extension errors
/// propagate.
pub fn polarization_check(
    phi: &mut DivisorialFunction,
    dec: &AdmissibleDecomposition,
) -> Result<WallReport> {
    require_admissible(phi)?;
    let shell = shell_data(dec)?;
    let complex = build_complex(mixed_rank(dec.genus), shell.rays.clone(), shell.cones)?;
    let mut values = Vec::with_capacity(complex.rays().len());
    for ray in complex.rays() {
        let point = SiegelPoint::from_flat(dec.genus, &to_rat_vec(ray))?;
        values.push(extended_value(phi, dec, &point)?);
    }
    let extended = PLConicalFunction::from_ray_values(complex.clone(), &values)?;
    let maximal: Vec<usize> = complex
        .maximal_cones()
        .into_iter()
        .filter(|&c| complex.cones()[c].dim() == complex.rank())
        .collect();
    let mut walls = 0;
    for (a, &ca) in maximal.iter().enumerate() {
        for &cb in maximal.iter().skip(a + 1) {
            let ra = complex.cones()[ca].ray_indices();
            let rb = complex.cones()[cb].ray_indices();
            let shared: Vec<usize> = ra.iter().copied().filter(|r| rb.contains(r)).collect();
            if shared.len() + 1 != complex.rank() {
                continue;
            }
            walls += 1;
            for (cone, other) in [(ca, cb), (cb, ca)] {
                let off = complex.cones()[other]
                    .ray_indices()
                    .iter()
                    .find(|r| !shared.contains(r))
                    .copied()
                    .expect("maximal cones differ in one ray across a wall");
                let form = &extended.forms()[cone];
                let across = dot(form, &to_rat_vec(&complex.rays()[off]))?;
                if across <= values[off] {
                    phi.polarization = false;
                    return Ok(WallReport {
                        holds: false,
                        walls,
                        witness: Some(format!(
                            "the wall between cones {cone} and {other} is not strictly concave"
                        )),
                    });
                }
            }
        }
    }
    phi.polarization = true;
    Ok(WallReport {
        holds: true,
        walls,
        witness: None,
    })
}

/// Build the divisorial function interpolating `-(zeta omega zeta^t)` at
/// the fundamental rays with the negativity bound verified pointwise, not
/// assumed. The divisorial checker also runs and sets the admissible flag
/// when it passes, which is guaranteed on smooth fundamental cones; on
/// coarser cones the interpolant can break the translation law, and the
/// flag stays unset.
///
/// # Errors
///
/// [`Error::InvalidInput`] with a witness when the negativity bound fails
/// at a sample; interpolation errors propagate.
pub fn sufficiently_negative_builder(
    dec: &AdmissibleDecomposition,
) -> Result<DivisorialFunction> {
    let pi = dec.pi_complex()?;
    let mut values = Vec::with_capacity(pi.rays().len());
    for ray in pi.rays() {
        let point = SiegelPoint::from_flat(dec.genus, &to_rat_vec(ray))?;
        values.push(-point.span_quadratic()?);
    }
    let mut phi = DivisorialFunction::from_ray_values(dec, &values)?;
    divisorial_check(&mut phi, dec)?;
    let negativity = negativity_check(&mut phi, dec)?;
    if let Some((point, value, bound)) = negativity.witness {
        return Err(Error::invalid(format!(
            "the negativity bound fails at {}: {} > {}",
            fmt_point(&point),
            fmt_rat(&value),
            fmt_rat(&bound)
        )));
    }
    Ok(phi)
}

fn require_admissible(phi: &DivisorialFunction) -> Result<()> {
    if !phi.admissible {
        return Err(Error::invalid(
            "the divisorial data is not flagged admissible; run divisorial_check first",
        ));
    }
    Ok(())
}

/// The value of an admissible function at any point of the group orbit of
/// the fundamental support, defined through the translation law.
///
/// # Errors
///
/// Requires the admissible flag; location failures propagate.
pub fn extended_value(
    phi: &DivisorialFunction,
    dec: &AdmissibleDecomposition,
    p: &SiegelPoint,
) -> Result<Rat> {
    require_admissible(phi)?;
    let located = locate_in_support(dec, p, LOCATE_BUDGET)?;
    let back = located.element.inverse()?;
    let defect = translation_defect(&back, &located.representative)?;
    Ok(phi.eval(&located.representative)? - defect)
}

const LOCATE_BUDGET: usize = 256;

/// The group-invariant descended value
/// `-m phi(q) - m (zeta omega zeta^t)` at any point of the orbit of the
/// fundamental support, with `phi` extended by the translation law.
///
/// # Errors
///
/// Requires a positive `m` and the admissible flag; location failures
/// propagate.
pub fn descended_value(
    m: u64,
    phi: &DivisorialFunction,
    dec: &AdmissibleDecomposition,
    p: &SiegelPoint,
) -> Result<Rat> {
    if m == 0 {
        return Err(Error::invalid("the index m must be positive"));
    }
    let m = Rat::from_integer(BigInt::from(m));
    let value = extended_value(phi, dec, p)?;
    Ok(-&m * value - m * p.span_quadratic()?)
}

/// Package the descended function over the fundamental cones as a conical
/// oracle: `-m phi - m (zeta omega zeta^t)` with the boundary handled by
/// the span witness. Checks that `m phi` is integral on lattice samples
/// and that the descended values are invariant under the generators at
/// sampled points.
///
/// # Errors
///
/// [`Error::InvalidInput`] for a zero `m`, a non-admissible `phi`,
/// non-integral `m phi` on a lattice sample, or an invariance failure.
pub fn descended_function(
    m: u64,
    phi: &DivisorialFunction,
    dec: &AdmissibleDecomposition,
) -> Result<ConicalOracle> {
    if m == 0 {
        return Err(Error::invalid("the index m must be positive"));
    }
    require_admissible(phi)?;
    let pi = phi.pl.complex().clone();
    let m_rat = Rat::from_integer(BigInt::from(m));
    for mc in pi.maximal_cones() {
        for sample in cone_lattice_samples(&pi, mc) {
            if !sample.iter().all(|x| x.denom().is_one()) {
                continue;
            }
            let scaled = phi.pl.eval(&sample)? * &m_rat;
            if !scaled.denom().is_one() {
                return Err(Error::invalid(format!(
                    "m phi is not integral at the lattice point {}",
                    fmt_point(&sample)
                )));
            }
        }
    }

    let genus = dec.genus;
    let pl = phi.pl.clone();
    let m_eval = m_rat.clone();
    let eval = Box::new(move |x: &[Rat]| -> Result<Rat> {
        let point = SiegelPoint::from_flat(genus, x)?;
        Ok(-&m_eval * pl.eval(x)? - &m_eval * point.span_quadratic()?)
    });
    let oracle = ConicalOracle::new(pi.clone(), eval)?;

    let mut sampler = Sampler::new(0xDE5);
    let gens = dec.generators()?;
    for mc in pi.maximal_cones() {
        if pi.cones()[mc].dim() == 0 {
            continue;
        }
        let gens_of_cone = pi.cone_generators(mc);
        for _ in 0..3 {
            let mut coords = vec![Rat::zero(); pi.rank()];
            for g in &gens_of_cone {
                let c = sampler.rat(3, 2).abs() + Rat::one();
                for (ci, gi) in coords.iter_mut().zip(g) {
                    *ci += gi * &c;
                }
            }
            let point = SiegelPoint::from_flat(genus, &coords)?;
            let direct = oracle.eval(&coords)?;
            for gamma in &gens {
                let moved = act(gamma, &point)?;
                if descended_value(m, phi, dec, &moved)? != direct {
                    return Err(Error::invalid(format!(
                        "the descended values are not invariant at {}",
                        fmt_point(&coords)
                    )));
                }
            }
        }
    }
    Ok(oracle)
}

/// The exact transverse vanishing order of the descended metric model
/// along the divisor indexed by a primitive lattice point: the descended
/// value at the point itself. Face points are routed through the same
/// continuity formula via the span witness.
///
/// # Errors
///
/// [`Error::InvalidInput`] for non-primitive or non-lattice points;
/// descended-value errors propagate.
pub fn lelong_at_ray(
    m: u64,
    phi: &DivisorialFunction,
    dec: &AdmissibleDecomposition,
    u: &SiegelPoint,
) -> Result<Rat> {
    if !u.is_primitive_lattice() {
        return Err(Error::invalid(
            "vanishing orders are indexed by primitive lattice points",
        ));
    }
    descended_value(m, phi, dec, u)
}

/// Outcome of the piecewise-linearity diagnostic on the descended
/// function.
#[derive(Debug)]
pub enum CartierOutcome {
    /// Exact witness of non-additivity inside one fundamental cone; final.
    NotCartier { witness: Box<PLWitness> },
    /// No violation found up to the tested depth.
    Inconclusive { depth_tested: usize },
}

impl CartierOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, CartierOutcome::NotCartier { .. })
    }
}

/// Run the piecewise-linearity test on the descended function over the
/// fundamental cones.
///
/// # Errors
///
/// Same preconditions as [`descended_function`]; test errors propagate.
pub fn cartier_diagnostic(
    m: u64,
    phi: &DivisorialFunction,
    dec: &AdmissibleDecomposition,
    depth: usize,
) -> Result<CartierOutcome> {
    let oracle = descended_function(m, phi, dec)?;
    match pl_test(&oracle, depth)? {
        PlOutcome::NotPl { witness } => Ok(CartierOutcome::NotCartier {
            witness: Box::new(witness),
        }),
        PlOutcome::Pl { depth_tested, .. } => Ok(CartierOutcome::Inconclusive { depth_tested }),
    }
}

/// The genus-one chart model of the negated descended function as a convex
/// oracle on the coordinates of the unique maximal fundamental cone:
/// `m phi(u1 r1 + u2 r2) + m (zeta omega zeta^t)(u1 r1 + u2 r2)`, which is
/// linear plus quadratic-over-linear and hence convex and conical.
///
/// # Errors
///
/// [`Error::InvalidInput`] unless the genus is one, the function is
/// admissible, and there is exactly one maximal fundamental cone of full
/// dimension.
pub fn chart_model_oracle(
    m: u64,
    phi: &DivisorialFunction,
    dec: &AdmissibleDecomposition,
) -> Result<ConvexOracle> {
    if m == 0 {
        return Err(Error::invalid("the index m must be positive"));
    }
    if dec.genus != 1 {
        return Err(Error::invalid("the chart model is a genus-one construction"));
    }
    require_admissible(phi)?;
    let pi = phi.pl.complex().clone();
    let full: Vec<usize> = pi
        .maximal_cones()
        .into_iter()
        .filter(|&c| pi.cones()[c].dim() == pi.rank())
        .collect();
    let [cone] = full.as_slice() else {
        return Err(Error::invalid(
            "the chart model needs exactly one full-dimensional fundamental cone",
        ));
    };
    let rays = pi.cone_generators(*cone);
    let ray_values: Vec<Rat> = pi.cones()[*cone]
        .ray_indices()
        .iter()
        .map(|&i| phi.ray_values[i].clone())
        .collect();
    let genus = dec.genus;
    let m_rat = Rat::from_integer(BigInt::from(m));
    let dim = rays.len();
    let eval = Box::new(move |u: &[Rat]| -> Result<Rat> {
        let mut coords = vec![Rat::zero(); mixed_rank(genus)];
        for (ui, ray) in u.iter().zip(&rays) {
            for (ci, ri) in coords.iter_mut().zip(ray) {
                *ci += ui * ri;
            }
        }
        let point = SiegelPoint::from_flat(genus, &coords)?;
        Ok(&m_rat * dot(u, &ray_values)? + &m_rat * point.span_quadratic()?)
    });
    ConvexOracle::new(
        BoxDomain::orthant(dim, Rat::zero()),
        eval,
        OracleShape::Conical,
        None,
        None,
        true,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::recession::lelong_number;

    fn qpoint(omega: i64, beta_num: i64, beta_den: i64) -> SiegelPoint {
        SiegelPoint::g1(rat_int(omega), rat(beta_num, beta_den)).unwrap()
    }

    fn builder_phi() -> (AdmissibleDecomposition, DivisorialFunction) {
        let dec = standard_decomposition_g1();
        let phi = sufficiently_negative_builder(&dec).unwrap();
        (dec, phi)
    }

    fn random_point(s: &mut Sampler, genus: usize) -> SiegelPoint {
        let omega = s.pd_matrix(genus, 3, 2);
        let zeta = s.rat_vec(genus, 3, 2);
        let beta = omega.matvec(&zeta).unwrap();
        SiegelPoint::new(omega, beta).unwrap()
    }

    fn random_element(s: &mut Sampler, genus: usize) -> GroupElement {
        let a = s.unimodular(genus);
        let lambda: Vec<Rat> = (0..genus).map(|_| rat_int(s.int_in(-2, 2))).collect();
        GroupElement::new(a, lambda).unwrap()
    }

    #[test]
    fn membership_splits_on_the_row_span() {
        let zero = RatMatrix::from_int_rows(&[&[0]]).unwrap();
        match tilde_membership(&zero, &[Rat::one()]).unwrap() {
            TildeMembership::Out {
                kernel_vector,
                pairing,
            } => {
                assert_eq!(kernel_vector, vec![Rat::one()]);
                assert_eq!(pairing, Rat::one());
            }
            other => panic!("expected Out, got {other:?}"),
        }
        let twoform = RatMatrix::from_int_rows(&[&[2]]).unwrap();
        match tilde_membership(&twoform, &[Rat::one()]).unwrap() {
            TildeMembership::In { alpha } => assert_eq!(alpha, vec![rat(1, 2)]),
            other => panic!("expected In, got {other:?}"),
        }
        let negative = RatMatrix::from_int_rows(&[&[-1]]).unwrap();
        assert!(tilde_membership(&negative, &[Rat::zero()]).is_err());
    }

    #[test]
    fn membership_on_a_rank_one_form() {
        let omega = RatMatrix::from_int_rows(&[&[1, 0], &[0, 0]]).unwrap();
        match tilde_membership(&omega, &[rat_int(3), Rat::zero()]).unwrap() {
            TildeMembership::In { alpha } => {
                assert_eq!(alpha, vec![rat_int(3), Rat::zero()]);
            }
            other => panic!("expected In, got {other:?}"),
        }
        match tilde_membership(&omega, &[Rat::zero(), Rat::one()]).unwrap() {
            TildeMembership::Out { kernel_vector, .. } => {
                assert!(!dot(&kernel_vector, &[Rat::zero(), Rat::one()])
                    .unwrap()
                    .is_zero());
            }
            other => panic!("expected Out, got {other:?}"),
        }
    }

    #[test]
    fn points_store_exact_span_witnesses() {
        let p = qpoint(2, 1, 1);
        assert_eq!(p.zeta(), &[rat(1, 2)]);
        assert_eq!(p.span_quadratic().unwrap(), rat(1, 2));
        assert!(p.is_definite());
        assert!(p.is_lattice());
        assert!(p.is_primitive_lattice());
        assert!(!qpoint(2, 2, 1).is_primitive_lattice());
        assert!(!qpoint(1, 1, 2).is_lattice());
        assert!(SiegelPoint::g1(Rat::zero(), Rat::one()).is_err());
        let flat = p.flatten();
        assert_eq!(SiegelPoint::from_flat(1, &flat).unwrap(), p);
    }

    #[test]
    fn flattening_doubles_the_off_diagonal() {
        let omega = RatMatrix::from_int_rows(&[&[2, 1], &[1, 3]]).unwrap();
        let p = SiegelPoint::new(omega, vec![Rat::one(), Rat::zero()]).unwrap();
        assert_eq!(
            p.flatten(),
            vec![rat_int(2), rat_int(3), rat_int(2), Rat::one(), Rat::zero()]
        );
        assert!(p.is_lattice());
        let back = SiegelPoint::from_flat(2, &p.flatten()).unwrap();
        assert_eq!(back.omega(), p.omega());
    }

    #[test]
    fn action_translates_the_vector_part() {
        let shift = GroupElement::translation(vec![Rat::one()]).unwrap();
        let moved = act(&shift, &qpoint(1, 0, 1)).unwrap();
        assert_eq!(moved, qpoint(1, 1, 1));
        let back = GroupElement::translation(vec![-Rat::one()]).unwrap();
        let moved = act(&back, &qpoint(2, 1, 1)).unwrap();
        assert_eq!(moved, qpoint(2, -1, 1));
        let id = GroupElement::identity(1);
        assert_eq!(act(&id, &qpoint(3, 2, 1)).unwrap(), qpoint(3, 2, 1));
    }

    #[test]
    fn action_composes_as_a_group_action() {
        let mut s = Sampler::new(0xAC7);
        for genus in [1usize, 2] {
            for _ in 0..30 {
                let p = random_point(&mut s, genus);
                let g1 = random_element(&mut s, genus);
                let g2 = random_element(&mut s, genus);
                let stepwise = act(&g1, &act(&g2, &p).unwrap()).unwrap();
                let composed = act(&g1.compose(&g2).unwrap(), &p).unwrap();
                assert_eq!(stepwise, composed);
                let inv = g1.inverse().unwrap();
                assert_eq!(act(&inv, &act(&g1, &p).unwrap()).unwrap(), p);
                assert!(g1.compose(&inv).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn group_elements_are_validated() {
        let half = RatMatrix::from_rows(vec![vec![rat(1, 2)]]).unwrap();
        assert!(GroupElement::basis_change(half).is_err());
        let scale = RatMatrix::from_int_rows(&[&[2]]).unwrap();
        assert!(GroupElement::basis_change(scale).is_err());
        assert!(GroupElement::new(RatMatrix::identity(2), vec![Rat::one()]).is_err());
        let shear = RatMatrix::from_int_rows(&[&[1, 1], &[0, 1]]).unwrap();
        let e = GroupElement::new(shear, vec![Rat::one(), -Rat::one()]).unwrap();
        let inv = e.inverse().unwrap();
        assert!(e.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&e).unwrap().is_identity());
    }

    #[test]
    fn standard_decomposition_passes_all_items() {
        let report = admissibility_check(&standard_decomposition_g1()).unwrap();
        assert!(report.pass(), "failures: {:?}", report.first_failure());
        assert_eq!(report.items.len(), 6);
    }

    #[test]
    fn overlapping_translates_fail_the_common_face_item() {
        let dec = AdmissibleDecomposition::new(
            1,
            vec![vec![BigInt::one()]],
            vec![vec![0]],
            vec![
                vec![BigInt::one(), BigInt::zero()],
                vec![BigInt::one(), BigInt::from(2)],
            ],
            vec![vec![0], vec![1], vec![0, 1]],
            Vec::new(),
            vec![vec![Rat::one()]],
            2,
        )
        .unwrap();
        let report = admissibility_check(&dec).unwrap();
        assert!(!report.pass());
        assert_eq!(report.first_failure().unwrap().item, 3);
    }

    #[test]
    fn missing_faces_fail_the_closure_item() {
        let dec = AdmissibleDecomposition::new(
            1,
            vec![vec![BigInt::one()]],
            vec![vec![0]],
            vec![
                vec![BigInt::one(), BigInt::zero()],
                vec![BigInt::one(), BigInt::one()],
            ],
            vec![vec![0, 1]],
            Vec::new(),
            vec![vec![Rat::one()]],
            2,
        )
        .unwrap();
        let report = admissibility_check(&dec).unwrap();
        assert!(!report.pass());
        assert_eq!(report.first_failure().unwrap().item, 2);
    }

    #[test]
    fn duplicate_orbit_representatives_fail_the_orbit_item() {
        let dec = AdmissibleDecomposition::new(
            1,
            vec![vec![BigInt::one()]],
            vec![vec![0]],
            vec![
                vec![BigInt::one(), BigInt::zero()],
                vec![BigInt::one(), BigInt::one()],
                vec![BigInt::one(), BigInt::from(2)],
            ],
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]],
            Vec::new(),
            vec![vec![Rat::one()]],
            2,
        )
        .unwrap();
        let report = admissibility_check(&dec).unwrap();
        assert!(!report.pass());
        assert_eq!(report.first_failure().unwrap().item, 5);
    }

    #[test]
    fn missing_form_cones_fail_the_projection_item() {
        let dec = AdmissibleDecomposition::new(
            1,
            vec![vec![BigInt::one()]],
            vec![Vec::new()],
            vec![
                vec![BigInt::one(), BigInt::zero()],
                vec![BigInt::one(), BigInt::one()],
            ],
            vec![vec![0], vec![1], vec![0, 1]],
            Vec::new(),
            vec![vec![Rat::one()]],
            2,
        )
        .unwrap();
        let report = admissibility_check(&dec).unwrap();
        assert!(!report.pass());
        assert_eq!(report.first_failure().unwrap().item, 4);
    }

    #[test]
    fn locating_reduces_points_into_the_fundamental_cones() {
        let dec = standard_decomposition_g1();
        let located = locate_in_support(&dec, &qpoint(1, 5, 2), 64).unwrap();
        assert_eq!(located.element.lambda(), &[rat_int(-2)]);
        assert_eq!(located.representative, qpoint(1, 1, 2));
        let located = locate_in_support(&dec, &qpoint(1, -3, 2), 64).unwrap();
        assert_eq!(located.element.lambda(), &[rat_int(2)]);
        assert_eq!(located.representative, qpoint(1, 1, 2));
        let located = locate_in_support(&dec, &qpoint(2, 1, 1), 64).unwrap();
        assert!(located.element.is_identity());
    }

    #[test]
    fn builder_interpolates_the_boundary_quadratic() {
        let (dec, phi) = builder_phi();
        assert_eq!(phi.ray_values(), &[Rat::zero(), -Rat::one()]);
        assert!(phi.is_admissible());
        assert!(phi.is_sufficiently_negative());
        assert_eq!(phi.eval(&qpoint(2, 1, 1)).unwrap(), -Rat::one());
        assert_eq!(phi.denominator_bound(), 60);
        let _ = dec;
    }

    #[test]
    fn builder_handles_the_scaled_cone() {
        let dec = AdmissibleDecomposition::new(
            1,
            vec![vec![BigInt::one()]],
            vec![vec![0]],
            vec![
                vec![BigInt::one(), BigInt::zero()],
                vec![BigInt::one(), BigInt::from(2)],
            ],
            vec![vec![0], vec![1], vec![0, 1]],
            Vec::new(),
            vec![vec![Rat::one()]],
            2,
        )
        .unwrap();
        let phi = sufficiently_negative_builder(&dec).unwrap();
        assert_eq!(phi.ray_values(), &[Rat::zero(), rat_int(-4)]);
        assert_eq!(
            phi.eval(&qpoint(2, 2, 1)).unwrap(),
            rat_int(-4)
        );
        let bound = -qpoint(2, 2, 1).span_quadratic().unwrap();
        assert_eq!(bound, rat_int(-2));
        assert!(phi.is_sufficiently_negative());
        assert!(!phi.is_admissible());
    }

    #[test]
    fn zero_data_fails_the_translation_law() {
        let dec = standard_decomposition_g1();
        let mut phi =
            DivisorialFunction::from_ray_values(&dec, &[Rat::zero(), Rat::zero()]).unwrap();
        let report = divisorial_check(&mut phi, &dec).unwrap();
        assert!(!report.pass());
        assert_eq!(report.first_failure().unwrap().item, 4);
        assert!(!phi.is_admissible());
    }

    #[test]
    fn law_consistent_data_passes_the_check() {
        let (dec, mut phi) = builder_phi();
        let report = divisorial_check(&mut phi, &dec).unwrap();
        assert!(report.pass(), "failures: {:?}", report.first_failure());
        assert_eq!(report.items.len(), 4);
        let shifted =
            DivisorialFunction::from_ray_values(&dec, &[rat(1, 2), rat(-1, 2)]).unwrap();
        let mut shifted = shifted;
        let report = divisorial_check(&mut shifted, &dec).unwrap();
        assert!(report.pass());
        assert!(shifted.is_admissible());
    }

    #[test]
    fn translation_law_holds_for_the_builder_at_fundamental_rays() {
        let (dec, phi) = builder_phi();
        for lambda in -2i64..=2 {
            let gamma = GroupElement::translation(vec![rat_int(lambda)]).unwrap();
            for q in [qpoint(1, 0, 1), qpoint(1, 1, 1)] {
                let moved = act(&gamma, &q).unwrap();
                let lhs = extended_value(&phi, &dec, &q).unwrap()
                    - extended_value(&phi, &dec, &moved).unwrap();
                assert_eq!(lhs, translation_defect(&gamma, &q).unwrap());
            }
        }
    }

    #[test]
    fn extension_matches_the_square_growth() {
        let (dec, phi) = builder_phi();
        for j in -3i64..=4 {
            let q = qpoint(1, j, 1);
            assert_eq!(extended_value(&phi, &dec, &q).unwrap(), rat_int(-j * j));
        }
    }

    #[test]
    fn descended_values_match_the_closed_form() {
        let (dec, phi) = builder_phi();
        let oracle = descended_function(1, &phi, &dec).unwrap();
        assert_eq!(
            oracle.eval(&[rat_int(2), rat_int(1)]).unwrap(),
            rat(1, 2)
        );
        assert_eq!(oracle.eval(&[rat_int(1), rat_int(0)]).unwrap(), Rat::zero());
        assert_eq!(oracle.eval(&[rat_int(1), rat_int(1)]).unwrap(), Rat::zero());
        assert_eq!(
            descended_value(1, &phi, &dec, &qpoint(1, 3, 2)).unwrap(),
            rat(1, 4)
        );
        assert_eq!(
            descended_value(1, &phi, &dec, &qpoint(1, 1, 2)).unwrap(),
            rat(1, 4)
        );
        assert_eq!(
            descended_value(3, &phi, &dec, &qpoint(2, 1, 1)).unwrap(),
            rat(3, 2)
        );
    }

    #[test]
    fn descended_function_requires_the_flags() {
        let dec = standard_decomposition_g1();
        let phi =
            DivisorialFunction::from_ray_values(&dec, &[Rat::zero(), -Rat::one()]).unwrap();
        assert!(descended_function(1, &phi, &dec).is_err());
        let (_, phi) = builder_phi();
        assert!(descended_function(0, &phi, &dec).is_err());
    }

    #[test]
    fn integrality_of_m_phi_is_enforced() {
        let dec = standard_decomposition_g1();
        let mut phi =
            DivisorialFunction::from_ray_values(&dec, &[rat(1, 2), rat(-1, 2)]).unwrap();
        let report = divisorial_check(&mut phi, &dec).unwrap();
        assert!(report.pass());
        assert!(descended_function(1, &phi, &dec).is_err());
        assert!(descended_function(2, &phi, &dec).is_ok());
    }

    #[test]
    fn descended_values_are_invariant_on_random_points() {
        let (dec, phi) = builder_phi();
        let oracle = descended_function(1, &phi, &dec).unwrap();
        let pi = phi.pl().complex().clone();
        let mut s = Sampler::new(0x1A7E);
        let shift = GroupElement::translation(vec![Rat::one()]).unwrap();
        for _ in 0..50 {
            let a = s.rat(4, 3).abs();
            let b = s.rat(4, 3).abs();
            let coords = vec![&a + &b, b.clone()];
            if !pi.supports(&coords) {
                continue;
            }
            let q = SiegelPoint::from_flat(1, &coords).unwrap();
            let direct = oracle.eval(&coords).unwrap();
            let mut moved = q.clone();
            for _ in 0..3 {
                moved = act(&shift, &moved).unwrap();
                assert_eq!(descended_value(1, &phi, &dec, &moved).unwrap(), direct);
            }
        }
    }

    #[test]
    fn vanishing_orders_at_primitive_rays() {
        let (dec, phi) = builder_phi();
        assert_eq!(
            lelong_at_ray(1, &phi, &dec, &qpoint(2, 1, 1)).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            lelong_at_ray(1, &phi, &dec, &qpoint(1, 0, 1)).unwrap(),
            Rat::zero()
        );
        assert_eq!(
            lelong_at_ray(3, &phi, &dec, &qpoint(2, 1, 1)).unwrap(),
            rat(3, 2)
        );
        assert!(lelong_at_ray(1, &phi, &dec, &qpoint(2, 2, 1)).is_err());
        assert!(lelong_at_ray(1, &phi, &dec, &qpoint(1, 1, 2)).is_err());
    }

    #[test]
    fn vanishing_orders_match_the_descended_oracle_inside_the_cone() {
        let (dec, phi) = builder_phi();
        let oracle = descended_function(2, &phi, &dec).unwrap();
        let mut s = Sampler::new(0x1E10);
        let mut checked = 0;
        while checked < 20 {
            let a = s.int_in(1, 9);
            let b = s.int_in(1, 9);
            if crate::exact::gcd_bigint(&BigInt::from(a), &BigInt::from(b)) != BigInt::one() {
                continue;
            }
            let u = qpoint(a + b, b, 1);
            assert!(u.is_primitive_lattice());
            let direct = oracle.eval(&u.flatten()).unwrap();
            assert_eq!(lelong_at_ray(2, &phi, &dec, &u).unwrap(), direct);
            checked += 1;
        }
    }

    #[test]
    fn the_diagnostic_returns_the_frozen_witness() {
        let (dec, phi) = builder_phi();
        let outcome = cartier_diagnostic(1, &phi, &dec, 1).unwrap();
        let CartierOutcome::NotCartier { witness } = outcome else {
            panic!("expected a certificate");
        };
        assert_eq!(witness.x, vec![rat_int(1), rat_int(0)]);
        assert_eq!(witness.y, vec![rat_int(1), rat_int(1)]);
        assert_eq!(witness.z, vec![rat_int(2), rat_int(1)]);
        assert_eq!(witness.value_x, Rat::zero());
        assert_eq!(witness.value_y, Rat::zero());
        assert_eq!(witness.value_z, rat(1, 2));
        let oracle = descended_function(1, &phi, &dec).unwrap();
        assert!(witness.verify(&oracle).unwrap());
    }

    #[test]
    fn the_diagnostic_scales_with_the_index() {
        let (dec, phi) = builder_phi();
        let outcome = cartier_diagnostic(2, &phi, &dec, 1).unwrap();
        let CartierOutcome::NotCartier { witness } = outcome else {
            panic!("expected a certificate");
        };
        assert_eq!(witness.value_z, Rat::one());
        let unflagged =
            DivisorialFunction::from_ray_values(&dec, &[Rat::zero(), -Rat::one()]).unwrap();
        assert!(cartier_diagnostic(1, &unflagged, &dec, 1).is_err());
    }

    #[test]
    fn polarization_strictness_across_shell_walls() {
        let (dec, mut phi) = builder_phi();
        let report = polarization_check(&mut phi, &dec).unwrap();
        assert!(report.holds);
        assert!(report.walls >= 2);
        assert!(phi.is_polarization());
    }

    #[test]
    fn strict_negativity_flags_interior_decay() {
        let (dec, mut phi) = builder_phi();
        let report = strict_negativity_check(&mut phi, &dec).unwrap();
        assert!(report.holds);
        assert!(phi.is_strictly_anti_effective());
        let mut zero =
            DivisorialFunction::from_ray_values(&dec, &[Rat::zero(), Rat::zero()]).unwrap();
        let report = strict_negativity_check(&mut zero, &dec).unwrap();
        assert!(!report.holds);
    }

    #[test]
    fn chart_model_agrees_with_the_vanishing_orders() {
        let (dec, phi) = builder_phi();
        for m in [1u64, 2, 3] {
            let chart = chart_model_oracle(m, &phi, &dec).unwrap();
            let nu = lelong_number(&chart, &[BigInt::one(), BigInt::one()]).unwrap();
            assert_eq!(
                nu,
                lelong_at_ray(m, &phi, &dec, &qpoint(2, 1, 1)).unwrap()
            );
        }
        let chart = chart_model_oracle(1, &phi, &dec).unwrap();
        let mut s = Sampler::new(0xC4A7);
        let mut checked = 0;
        while checked < 20 {
            let a = s.int_in(1, 9);
            let b = s.int_in(1, 9);
            if crate::exact::gcd_bigint(&BigInt::from(a), &BigInt::from(b)) != BigInt::one() {
                continue;
            }
            let nu = lelong_number(&chart, &[BigInt::from(a), BigInt::from(b)]).unwrap();
            let expected = lelong_at_ray(1, &phi, &dec, &qpoint(a + b, b, 1)).unwrap();
            assert_eq!(nu, expected);
            checked += 1;
        }
    }

    #[test]
    fn chart_model_splits_into_linear_and_quadratic_over_linear() {
        let (dec, phi) = builder_phi();
        let chart = chart_model_oracle(1, &phi, &dec).unwrap();
        let one = RatMatrix::identity(1);
        let qol = crate::recession::make_qol_oracle(
            vec![one.clone(), one],
            vec![vec![Rat::zero()], vec![Rat::one()]],
            None,
        )
        .unwrap();
        assert_eq!(
            qol.eval(&[Rat::one(), Rat::one()]).unwrap(),
            rat(1, 2)
        );
        let mut s = Sampler::new(0x901);
        for _ in 0..10 {
            let u = vec![s.rat(5, 3).abs() + Rat::one(), s.rat(5, 3).abs() + Rat::one()];
            let linear = -u[1].clone();
            assert_eq!(
                chart.eval(&u).unwrap(),
                linear + qol.eval(&u).unwrap()
            );
        }
    }
}
