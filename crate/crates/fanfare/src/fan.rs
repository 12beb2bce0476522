//! Rational conical polyhedral complexes with integral structure.
//!
//! A [`ConicalComplex`] is a finite fan of simplicial lattice cones: a list
//! of primitive integer rays and a face-closed list of cones referencing
//! them, pairwise intersecting in common faces. Stellar subdivision is the
//! only refinement primitive; each step returns the [`ComplexMap`] from the
//! finer complex back to the coarser one, and maps compose exactly.
//!
//! Complexes here are finite. The infinite complexes arising from cone
//! decompositions with group symmetry are handled in [`crate::siegel`] by a
//! fundamental set of cones plus group generators.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{
    is_primitive, rat_vec_to_primitive, to_rat_vec, Rat, RatMatrix,
};
use crate::{Error, Result};

/// A strictly convex simplicial lattice cone inside a complex, identified
/// by the sorted indices of its generating rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeCone {
    ray_indices: Vec<usize>,
    smooth: bool,
}

impl LatticeCone {
    /// Sorted indices of the generating rays in the parent complex.
    pub fn ray_indices(&self) -> &[usize] {
        &self.ray_indices
    }

    /// Number of generators, which equals the cone dimension.
    pub fn dim(&self) -> usize {
        self.ray_indices.len()
    }

    /// Whether the generators extend to a basis of the ambient lattice.
    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    fn contains_indices(&self, other: &[usize]) -> bool {
        other.iter().all(|i| self.ray_indices.contains(i))
    }
}

/// A finite face-closed fan of simplicial lattice cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicalComplex {
    rank: usize,
    rays: Vec<Vec<BigInt>>,
    cones: Vec<LatticeCone>,
}

/// Validate rays and cone index lists into a complex.
///
/// The zero cone is added when missing. Every other face must be listed:
/// validation reports the first violated invariant with a witness instead
/// of repairing anything else.
///
/// # Errors
///
/// [`Error::NonPrimitiveRay`], [`Error::DuplicateRay`],
/// [`Error::NotSimplicial`], [`Error::NotFaceClosed`],
/// [`Error::BadIntersection`], or [`Error::InvalidInput`] for malformed
/// index lists.
pub fn build_complex(rank: usize, rays: Vec<Vec<BigInt>>, cones: Vec<Vec<usize>>) -> Result<ConicalComplex> {
    assemble_complex(rank, rays, cones, true)
}

/// Shared assembly behind [`build_complex`] and the subdivision routines.
///
/// Stellar subdivision of a valid complex yields a valid complex, so those
/// callers skip the quadratic pairwise intersection check.
fn assemble_complex(
    rank: usize,
    rays: Vec<Vec<BigInt>>,
    cones: Vec<Vec<usize>>,
    check_intersections: bool,
) -> Result<ConicalComplex> {
    if rank == 0 {
        return Err(Error::invalid("ambient rank must be positive"));
    }
    for (index, ray) in rays.iter().enumerate() {
        if ray.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: ray.len(),
            });
        }
        if !is_primitive(ray) {
            return Err(Error::NonPrimitiveRay { index });
        }
    }
    for i in 0..rays.len() {
        for j in (i + 1)..rays.len() {
            if rays[i] == rays[j] {
                return Err(Error::DuplicateRay { first: i, second: j });
            }
        }
    }

    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut normalized: Vec<Vec<usize>> = Vec::new();
    for (index, cone) in cones.iter().enumerate() {
        let mut c = cone.clone();
        c.sort_unstable();
        if c.iter().any(|&r| r >= rays.len()) {
            return Err(Error::invalid(format!("cone {index} references a missing ray")));
        }
        if c.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("cone {index} repeats a ray")));
        }
        if seen.contains(&c) {
            return Err(Error::invalid(format!("cone {index} is listed twice")));
        }
        seen.push(c.clone());
        normalized.push(c);
    }
    if !normalized.iter().any(Vec::is_empty) {
        normalized.push(Vec::new());
    }

    let mut built = Vec::new();
    for (index, ray_indices) in normalized.iter().enumerate() {
        let gens: Vec<&[BigInt]> = ray_indices.iter().map(|&i| rays[i].as_slice()).collect();
        if !generators_independent(&gens, rank)? {
            return Err(Error::NotSimplicial { index });
        }
        built.push(LatticeCone {
            ray_indices: ray_indices.clone(),
            smooth: is_smooth_cone(&gens, rank),
        });
    }

    for (index, cone) in built.iter().enumerate() {
        for face in proper_subsets(&cone.ray_indices) {
            if !built.iter().any(|c| c.ray_indices == face) {
                return Err(Error::NotFaceClosed { cone: index });
            }
        }
    }

    let complex = ConicalComplex {
        rank,
        rays,
        cones: built,
    };
    if check_intersections {
        complex.check_pairwise_intersections()?;
    }
    Ok(complex)
}

impl ConicalComplex {
    /// Ambient lattice rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Primitive ray vectors, in declaration order.
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    /// All cones, zero cone included.
    pub fn cones(&self) -> &[LatticeCone] {
        &self.cones
    }

    /// Indices of the cones that are maximal under inclusion.
    pub fn maximal_cones(&self) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&i| {
                !self.cones.iter().enumerate().any(|(j, c)| {
                    j != i
                        && c.dim() > self.cones[i].dim()
                        && c.contains_indices(&self.cones[i].ray_indices)
                })
            })
            .collect()
    }

    /// Generators of a cone as rational column vectors.
    pub fn cone_generators(&self, cone: usize) -> Vec<Vec<Rat>> {
        self.cones[cone]
            .ray_indices
            .iter()
            .map(|&i| to_rat_vec(&self.rays[i]))
            .collect()
    }

    /// A rational point in the relative interior: the sum of generators.
    pub fn relint_point(&self, cone: usize) -> Vec<Rat> {
        let mut p = vec![Rat::zero(); self.rank];
        for g in self.cone_generators(cone) {
            for (pi, gi) in p.iter_mut().zip(&g) {
                *pi += gi;
            }
        }
        p
    }

    /// Barycentric coordinates of `x` in the given cone, if `x` lies in it.
    pub fn cone_coordinates(&self, cone: usize, x: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if x.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: x.len(),
            });
        }
        let gens = self.cone_generators(cone);
        if gens.is_empty() {
            return Ok(if x.iter().all(Rat::is_zero) {
                Some(Vec::new())
            } else {
                None
            });
        }
        let g = columns_matrix(&gens);
        let gt = g.transpose();
        let gram = gt.matmul(&g)?;
        let rhs = gt.matvec(x)?;
        let lambda = gram.solve(&rhs)?;
        let image = g.matvec(&lambda)?;
        if image != x {
            return Ok(None);
        }
        if lambda.iter().any(|l| l.is_negative()) {
            return Ok(None);
        }
        Ok(Some(lambda))
    }

    /// Whether the cone contains the point.
    pub fn cone_contains(&self, cone: usize, x: &[Rat]) -> Result<bool> {
        Ok(self.cone_coordinates(cone, x)?.is_some())
    }

    /// Index of the minimal cone containing `x`.
    ///
    /// # Errors
    ///
    /// [`Error::OutsideSupport`] when no cone contains `x`.
    pub fn locate(&self, x: &[Rat]) -> Result<usize> {
        let mut order: Vec<usize> = (0..self.cones.len()).collect();
        order.sort_by_key(|&i| self.cones[i].dim());
        for i in order {
            if self.cone_contains(i, x)? {
                return Ok(i);
            }
        }
        Err(Error::OutsideSupport { point: x.to_vec() })
    }

    /// Whether `x` lies in the support of the complex.
    pub fn supports(&self, x: &[Rat]) -> bool {
        self.locate(x).is_ok()
    }

    /// Index of the ray equal to `v`, if listed.
    pub fn ray_index(&self, v: &[BigInt]) -> Option<usize> {
        self.rays.iter().position(|r| r.as_slice() == v)
    }

    /// The unique rational linear form on the span of a cone taking the
    /// given values at its generators, extended by the Gram pseudo-inverse.
    ///
    /// # Errors
    ///
    /// Fails when the value count does not match the cone dimension.
    pub fn linear_form_through(&self, cone: usize, values: &[Rat]) -> Result<Vec<Rat>> {
        let gens = self.cone_generators(cone);
        if values.len() != gens.len() {
            return Err(Error::DimensionMismatch {
                expected: gens.len(),
                got: values.len(),
            });
        }
        if gens.is_empty() {
            return Ok(vec![Rat::zero(); self.rank]);
        }
        let g = columns_matrix(&gens);
        let gt = g.transpose();
        let gram = gt.matmul(&g)?;
        let coeffs = gram.solve(values)?;
        g.matvec(&coeffs)
    }

    fn check_pairwise_intersections(&self) -> Result<()> {
        for i in 0..self.cones.len() {
            for j in (i + 1)..self.cones.len() {
                let a = &self.cones[i];
                let b = &self.cones[j];
                if a.dim() == 0 || b.dim() == 0 {
                    continue;
                }
                if a.contains_indices(&b.ray_indices) || b.contains_indices(&a.ray_indices) {
                    continue;
                }
                if !self.intersection_is_common_face(i, j)? {
                    return Err(Error::BadIntersection { first: i, second: j });
                }
            }
        }
        Ok(())
    }

    /// Exact check that two cones meet exactly in the cone spanned by
    /// their shared rays: every extreme ray of the intersection, written
    /// in barycentric coordinates of the first cone, must be supported on
    /// the shared generators.
    fn intersection_is_common_face(&self, i: usize, j: usize) -> Result<bool> {
        let a = &self.cones[i];
        let b = &self.cones[j];
        let gens_a = self.cone_generators(i);
        let gens_b = self.cone_generators(j);
        let ga = columns_matrix(&gens_a);
        let gb = columns_matrix(&gens_b);
        let k_a = gens_a.len();

        // Equalities: G_a lambda must lie in span(G_b).
        let gbt = gb.transpose();
        let gram_b = gbt.matmul(&gb)?;
        let proj = gb.matmul(&gram_b.inverse()?)?.matmul(&gbt)?;
        let residual = proj
            .scale(&-Rat::one())
            .add(&RatMatrix::identity(self.rank))?
            .matmul(&ga)?;
        let mut eqs = Vec::new();
        for r in 0..residual.nrows() {
            let row = residual.row(r).to_vec();
            if row.iter().any(|x| !x.is_zero()) {
                eqs.push(row);
            }
        }

        // Inequalities: barycentric coordinates in both cones nonnegative.
        let coords_b = gram_b.inverse()?.matmul(&gbt)?.matmul(&ga)?;
        let mut ineqs = Vec::new();
        for r in 0..k_a {
            let mut row = vec![Rat::zero(); k_a];
            row[r] = Rat::one();
            ineqs.push(row);
        }
        for r in 0..coords_b.nrows() {
            ineqs.push(coords_b.row(r).to_vec());
        }

        let shared: Vec<usize> = (0..k_a)
            .filter(|&p| b.ray_indices.contains(&a.ray_indices[p]))
            .collect();
        for ray in extreme_rays(k_a, &eqs, &ineqs) {
            for (pos, coeff) in ray.iter().enumerate() {
                if !coeff.is_zero() && !shared.contains(&pos) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Extreme rays of the pointed cone `{x: eqs x = 0, ineqs x >= 0}`.
///
/// Brute-force double description: every extreme ray is the kernel of a
/// corank-one subset of constraints, so all candidate subsets are tried.
/// The caller must ensure pointedness. Rays are returned primitively
/// normalized.
pub(crate) fn extreme_rays(dim: usize, eqs: &[Vec<Rat>], ineqs: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let base_rank = if eqs.is_empty() {
        0
    } else {
        RatMatrix::from_rows(eqs.to_vec()).map(|m| m.rank()).unwrap_or(0)
    };
    let free_dim = dim - base_rank;
    if free_dim == 0 {
        return Vec::new();
    }
    let need = free_dim - 1;
    let mut rays: Vec<Vec<Rat>> = Vec::new();
    for subset in k_subsets(ineqs.len(), need) {
        let mut rows: Vec<Vec<Rat>> = eqs.to_vec();
        for &s in &subset {
            rows.push(ineqs[s].clone());
        }
        if rows.is_empty() {
            rows.push(vec![Rat::zero(); dim]);
        }
        let m = RatMatrix::from_rows(rows).expect("constraint rows");
        let kernel = m.kernel_basis();
        if kernel.len() != 1 {
            continue;
        }
        for cand in [kernel[0].clone(), kernel[0].iter().map(|x| -x).collect()] {
            let feasible = ineqs.iter().all(|row| {
                let v: Rat = row.iter().zip(&cand).map(|(a, b)| a * b).sum();
                !v.is_negative()
            });
            if !feasible {
                continue;
            }
            if cand.iter().all(Rat::is_zero) {
                continue;
            }
            if let Some(prim) = rat_vec_to_primitive(&cand) {
                let as_rat = to_rat_vec(&prim);
                if !rays.contains(&as_rat) {
                    rays.push(as_rat);
                }
            }
        }
    }
    rays
}

pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

fn proper_subsets(indices: &[usize]) -> Vec<Vec<usize>> {
    let n = indices.len();
    let mut out = Vec::new();
    for mask in 0..(1u64 << n) {
        if mask == (1u64 << n) - 1 {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| indices[i]).collect();
        out.push(subset);
    }
    out
}

fn columns_matrix(cols: &[Vec<Rat>]) -> RatMatrix {
    let rank = cols[0].len();
    let mut m = RatMatrix::zeros(rank, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    m
}

fn generators_independent(gens: &[&[BigInt]], rank: usize) -> Result<bool> {
    if gens.is_empty() {
        return Ok(true);
    }
    if gens.len() > rank {
        return Ok(false);
    }
    let cols: Vec<Vec<Rat>> = gens.iter().map(|g| to_rat_vec(g)).collect();
    Ok(columns_matrix(&cols).rank() == gens.len())
}

/// Smoothness: the gcd of the maximal minors of the generator matrix is 1,
/// so the generators extend to a lattice basis.
fn is_smooth_cone(gens: &[&[BigInt]], rank: usize) -> bool {
    let k = gens.len();
    if k == 0 {
        return true;
    }
    let mut gcd = BigInt::zero();
    for rows in k_subsets(rank, k) {
        let sub: Vec<Vec<Rat>> = gens
            .iter()
            .map(|g| rows.iter().map(|&r| Rat::from_integer(g[r].clone())).collect())
            .collect();
        if let Ok(m) = RatMatrix::from_rows(sub) {
            let d = m.det().expect("square minor");
            debug_assert!(d.denom().is_one());
            gcd = crate::exact::gcd_bigint(&gcd, d.numer());
        }
        if gcd.is_one() {
            return true;
        }
    }
    gcd.is_one()
}

/// A map of complexes, linear on every cone of the source and integral on
/// the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexMap {
    source: ConicalComplex,
    target: ConicalComplex,
    /// One integer matrix per source cone, paired with the index of a
    /// target cone containing the image of that source cone.
    per_cone: Vec<(Vec<Vec<BigInt>>, usize)>,
}

impl ComplexMap {
    /// Validate per-cone integer matrices into a map.
    ///
    /// Each source cone's generators must land inside a single target cone
    /// under its matrix, and matrices for a cone and its faces must agree
    /// on the faces.
    ///
    /// # Errors
    ///
    /// [`Error::IncompatibleComplexes`] when a cone's image misses the
    /// target or matrices disagree on shared faces; shape errors for bad
    /// matrix dimensions.
    pub fn new(
        source: ConicalComplex,
        target: ConicalComplex,
        matrices: Vec<Vec<Vec<BigInt>>>,
    ) -> Result<Self> {
        if matrices.len() != source.cones().len() {
            return Err(Error::IncompatibleComplexes(format!(
                "expected {} per-cone matrices, got {}",
                source.cones().len(),
                matrices.len()
            )));
        }
        let mut per_cone = Vec::new();
        for (ci, mat) in matrices.iter().enumerate() {
            if mat.len() != target.rank() || mat.iter().any(|row| row.len() != source.rank()) {
                return Err(Error::ShapeMismatch(format!(
                    "matrix for cone {ci} must be {}x{}",
                    target.rank(),
                    source.rank()
                )));
            }
            let images: Vec<Vec<Rat>> = source.cones()[ci]
                .ray_indices()
                .iter()
                .map(|&r| apply_int_matrix(mat, &to_rat_vec(&source.rays()[r])))
                .collect();
            let mut found = None;
            'cones: for tc in 0..target.cones().len() {
                for img in &images {
                    if !target.cone_contains(tc, img)? {
                        continue 'cones;
                    }
                }
                if found.is_none_or(|f: usize| target.cones()[tc].dim() < target.cones()[f].dim()) {
                    found = Some(tc);
                }
            }
            let Some(tc) = found else {
                return Err(Error::IncompatibleComplexes(format!(
                    "image of cone {ci} is not contained in any target cone"
                )));
            };
            per_cone.push((mat.clone(), tc));
        }
        let map = ComplexMap {
            source,
            target,
            per_cone,
        };
        map.check_face_agreement()?;
        Ok(map)
    }

    /// The map with identity matrices, for a subdivision refining `target`.
    ///
    /// # Errors
    ///
    /// Fails when ranks differ or some source cone lies in no target cone.
    pub fn identity_on_points(source: ConicalComplex, target: ConicalComplex) -> Result<Self> {
        if source.rank() != target.rank() {
            return Err(Error::IncompatibleComplexes(
                "identity map needs equal ambient ranks".into(),
            ));
        }
        let n = source.rank();
        let ident: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let mats = vec![ident; source.cones().len()];
        ComplexMap::new(source, target, mats)
    }

    pub fn source(&self) -> &ConicalComplex {
        &self.source
    }

    pub fn target(&self) -> &ConicalComplex {
        &self.target
    }

    /// The integer matrix used on the given source cone.
    pub fn cone_matrix(&self, cone: usize) -> &Vec<Vec<BigInt>> {
        &self.per_cone[cone].0
    }

    /// Apply the map to a point of the source support.
    ///
    /// # Errors
    ///
    /// [`Error::OutsideSupport`] when the point is not in the source.
    pub fn apply(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        let cone = self.source.locate(x)?;
        Ok(apply_int_matrix(&self.per_cone[cone].0, x))
    }

    fn check_face_agreement(&self) -> Result<()> {
        for (ci, cone) in self.source.cones().iter().enumerate() {
            for (fi, face) in self.source.cones().iter().enumerate() {
                if fi == ci || !cone.contains_indices(face.ray_indices()) {
                    continue;
                }
                for &r in face.ray_indices() {
                    let v = to_rat_vec(&self.source.rays()[r]);
                    let via_cone = apply_int_matrix(&self.per_cone[ci].0, &v);
                    let via_face = apply_int_matrix(&self.per_cone[fi].0, &v);
                    if via_cone != via_face {
                        return Err(Error::IncompatibleComplexes(format!(
                            "matrices for cone {ci} and its face {fi} disagree on ray {r}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn apply_int_matrix(m: &[Vec<BigInt>], x: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| Rat::from_integer(a.clone()) * b).sum())
        .collect()
}

/// Stellar subdivision at a primitive lattice point of the support.
///
/// Returns the refined complex and the map from it back to the input. A
/// point on an existing ray returns the complex unchanged with the
/// identity map.
///
/// # Errors
///
/// [`Error::OutsideSupport`] when `v` misses the support,
/// [`Error::NonPrimitiveRay`] when `v` is not primitive.
pub fn subdivide_at(complex: &ConicalComplex, v: &[BigInt]) -> Result<(ConicalComplex, ComplexMap)> {
    let finer = subdivide_complex(complex, v)?;
    let map = ComplexMap::identity_on_points(finer.clone(), complex.clone())?;
    Ok((finer, map))
}

/// The subdivided complex alone, for refinement loops that do not need
/// the transition maps.
pub(crate) fn subdivide_complex(complex: &ConicalComplex, v: &[BigInt]) -> Result<ConicalComplex> {
    if !is_primitive(v) {
        return Err(Error::NonPrimitiveRay { index: 0 });
    }
    let v_rat = to_rat_vec(v);
    let home = complex.locate(&v_rat)?;
    if complex.ray_index(v).is_some() {
        return Ok(complex.clone());
    }
    let center = complex.cones()[home].ray_indices().to_vec();

    let mut rays = complex.rays().to_vec();
    let new_ray = rays.len();
    rays.push(v.to_vec());

    let mut cone_sets: Vec<Vec<usize>> = Vec::new();
    for cone in complex.cones() {
        if !cone.contains_indices(&center) {
            cone_sets.push(cone.ray_indices().to_vec());
        }
    }
    for cone in complex.cones() {
        if !cone.contains_indices(&center) {
            continue;
        }
        for face in proper_subsets(cone.ray_indices()) {
            if center.iter().all(|c| face.contains(c)) {
                continue;
            }
            let mut refined = face.clone();
            refined.push(new_ray);
            refined.sort_unstable();
            if !cone_sets.contains(&refined) {
                cone_sets.push(refined);
            }
        }
    }
    cone_sets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));

    assemble_complex(complex.rank(), rays, cone_sets, false)
}

/// Exact composition `f` after `g`.
///
/// # Errors
///
/// [`Error::IncompatibleComplexes`] unless `target(g) = source(f)`.
pub fn compose_maps(f: &ComplexMap, g: &ComplexMap) -> Result<ComplexMap> {
    if g.target() != f.source() {
        return Err(Error::IncompatibleComplexes(
            "target of the inner map must equal source of the outer map".into(),
        ));
    }
    let mut matrices = Vec::new();
    for ci in 0..g.source().cones().len() {
        let (gm, g_target_cone) = &g.per_cone[ci];
        let (fm, _) = &f.per_cone[*g_target_cone];
        matrices.push(int_matmul(fm, gm));
    }
    ComplexMap::new(g.source().clone(), f.target().clone(), matrices)
}

fn int_matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rows = a.len();
    let inner = b.len();
    let cols = b[0].len();
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Repeated stellar subdivision until every cone is smooth.
///
/// Each step subdivides at the primitive lattice point of smallest
/// multiplicity inside a non-smooth cone, ties broken lexicographically.
/// Returns the smooth refinement and the map back to the input.
///
/// # Errors
///
/// Propagates subdivision failures; [`Error::IterationLimit`] after 1000
/// steps, which no input of this crate's size reaches.
pub fn smoothen(complex: &ConicalComplex) -> Result<(ConicalComplex, ComplexMap)> {
    let mut current = complex.clone();
    let mut map = ComplexMap::identity_on_points(complex.clone(), complex.clone())?;
    for _ in 0..1000 {
        let Some(bad) = current.cones().iter().position(|c| !c.is_smooth()) else {
            return Ok((current, map));
        };
        let point = minimal_box_point(&current, bad)?;
        let (finer, step) = subdivide_at(&current, &point)?;
        map = compose_maps(&map, &step)?;
        current = finer;
    }
    Err(Error::IterationLimit("smoothing did not terminate".into()))
}

/// The primitive lattice point in the half-open fundamental box of a
/// non-smooth cone whose barycentric coordinate sum is minimal, ties
/// broken lexicographically.
fn minimal_box_point(complex: &ConicalComplex, cone: usize) -> Result<Vec<BigInt>> {
    let gens = complex.cone_generators(cone);
    let k = gens.len();
    // Integer points of {sum c_i g_i : 0 <= c_i < 1} lie in the integer
    // bounding box of the generators' parallelepiped.
    let mut lo = vec![BigInt::zero(); complex.rank()];
    let mut hi = vec![BigInt::zero(); complex.rank()];
    for g in &gens {
        for (d, val) in g.iter().enumerate() {
            let f = val.floor();
            let c = val.ceil();
            let fi = f.to_integer();
            let ci = c.to_integer();
            if fi < lo[d] {
                lo[d] = fi;
            }
            hi[d] += ci.max(BigInt::zero());
        }
    }
    let mut best: Option<(Rat, Vec<BigInt>)> = None;
    let mut cursor = lo.clone();
    loop {
        let point: Vec<Rat> = cursor.iter().map(|x| Rat::from_integer(x.clone())).collect();
        if let Some(coords) = complex.cone_coordinates(cone, &point)? {
            let in_box = coords.iter().all(|c| *c < Rat::one());
            let nonzero = coords.iter().any(|c| !c.is_zero());
            let full_support = coords.iter().filter(|c| !c.is_zero()).count() == k || k == 0;
            if in_box && nonzero && full_support {
                if let Some(prim) = crate::exact::rat_vec_to_primitive(&point) {
                    let weight: Rat = coords.iter().sum();
                    let cand = (weight, prim);
                    match &best {
                        Some(b) if *b <= cand => {}
                        _ => best = Some(cand),
                    }
                }
            }
        }
        // Odometer increment over the box.
        let mut d = 0;
        loop {
            if d == cursor.len() {
                let best = best.ok_or_else(|| {
                    Error::invalid("non-smooth cone has no interior box point, which cannot happen")
                })?;
                return Ok(best.1);
            }
            cursor[d] += 1;
            if cursor[d] <= hi[d] {
                break;
            }
            cursor[d] = lo[d].clone();
            d += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::sample::Sampler;

    fn bigvec(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn ratvec(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    fn standard_wedge() -> ConicalComplex {
        build_complex(
            2,
            vec![bigvec(&[1, 0]), bigvec(&[1, 1])],
            vec![vec![0], vec![1], vec![0, 1], vec![]],
        )
        .unwrap()
    }

    #[test]
    fn builds_the_standard_wedge() {
        let c = standard_wedge();
        assert_eq!(c.rank(), 2);
        assert_eq!(c.cones().len(), 4);
        assert!(c.cones().iter().all(LatticeCone::is_smooth));
        assert_eq!(c.maximal_cones().len(), 1);
    }

    #[test]
    fn zero_cone_is_added_when_missing() {
        let c = build_complex(2, vec![bigvec(&[1, 0])], vec![vec![0]]).unwrap();
        assert!(c.cones().iter().any(|k| k.dim() == 0));
    }

    #[test]
    fn rejects_non_primitive_ray() {
        let err = build_complex(2, vec![bigvec(&[2, 0])], vec![vec![0]]);
        assert!(matches!(err, Err(Error::NonPrimitiveRay { index: 0 })));
    }

    #[test]
    fn rejects_duplicate_rays() {
        let err = build_complex(
            2,
            vec![bigvec(&[1, 0]), bigvec(&[1, 0])],
            vec![vec![0], vec![1]],
        );
        assert!(matches!(err, Err(Error::DuplicateRay { first: 0, second: 1 })));
    }

    #[test]
    fn rejects_missing_face() {
        let err = build_complex(
            2,
            vec![bigvec(&[1, 0]), bigvec(&[1, 1])],
            vec![vec![0, 1], vec![0]],
        );
        assert!(matches!(err, Err(Error::NotFaceClosed { .. })));
    }

    #[test]
    fn rejects_overlapping_cones() {
        let err = build_complex(
            2,
            vec![bigvec(&[1, 0]), bigvec(&[1, 2]), bigvec(&[1, 1]), bigvec(&[0, 1])],
            vec![
                vec![0], vec![1], vec![2], vec![3],
                vec![0, 1], vec![2, 3],
            ],
        );
        assert!(matches!(err, Err(Error::BadIntersection { .. })));
    }

    #[test]
    fn accepts_adjacent_cones_sharing_a_ray() {
        let c = build_complex(
            2,
            vec![bigvec(&[1, 0]), bigvec(&[1, 1]), bigvec(&[0, 1])],
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        assert_eq!(c.maximal_cones().len(), 2);
    }

    #[test]
    fn rejects_dependent_generators() {
        let err = build_complex(
            2,
            vec![bigvec(&[1, 0]), bigvec(&[-1, 0])],
            vec![vec![0], vec![1], vec![0, 1]],
        );
        assert!(matches!(err, Err(Error::NotSimplicial { .. })));
    }

    #[test]
    fn locates_minimal_cones() {
        let c = standard_wedge();
        let inner = c.locate(&ratvec(&[2, 1])).unwrap();
        assert_eq!(c.cones()[inner].dim(), 2);
        let on_ray = c.locate(&ratvec(&[1, 1])).unwrap();
        assert_eq!(c.cones()[on_ray].dim(), 1);
        let origin = c.locate(&ratvec(&[0, 0])).unwrap();
        assert_eq!(c.cones()[origin].dim(), 0);
        assert!(matches!(
            c.locate(&ratvec(&[0, 1])),
            Err(Error::OutsideSupport { .. })
        ));
    }

    #[test]
    fn stellar_subdivision_splits_the_wedge() {
        let c = standard_wedge();
        let (finer, map) = subdivide_at(&c, &bigvec(&[2, 1])).unwrap();
        let two_cones: Vec<_> = finer.cones().iter().filter(|k| k.dim() == 2).collect();
        assert_eq!(two_cones.len(), 2);
        assert!(two_cones.iter().all(|k| k.is_smooth()));
        assert!(finer.ray_index(&bigvec(&[2, 1])).is_some());
        // Points are unmoved.
        let p = ratvec(&[5, 2]);
        assert_eq!(map.apply(&p).unwrap(), p);
    }

    #[test]
    fn subdivision_at_existing_ray_is_identity() {
        let c = standard_wedge();
        let (same, map) = subdivide_at(&c, &bigvec(&[1, 1])).unwrap();
        assert_eq!(same, c);
        assert_eq!(map.apply(&ratvec(&[3, 2])).unwrap(), ratvec(&[3, 2]));
    }

    #[test]
    fn subdivision_smoothness_flags_follow_determinants() {
        let c = standard_wedge();
        let (finer, _) = subdivide_at(&c, &bigvec(&[3, 1])).unwrap();
        let flags: Vec<(Vec<usize>, bool)> = finer
            .cones()
            .iter()
            .filter(|k| k.dim() == 2)
            .map(|k| (k.ray_indices().to_vec(), k.is_smooth()))
            .collect();
        // <(1,0),(3,1)> has determinant 1; <(3,1),(1,1)> has determinant 2.
        for (rays, smooth) in flags {
            let has_10 = rays.contains(&0);
            assert_eq!(smooth, has_10);
        }
    }

    #[test]
    fn subdivision_preserves_support() {
        let c = build_complex(
            2,
            vec![bigvec(&[1, 0]), bigvec(&[1, 1]), bigvec(&[0, 1])],
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        let (finer, _) = subdivide_at(&c, &bigvec(&[3, 1])).unwrap();
        let mut s = Sampler::new(2024);
        for _ in 0..100 {
            let p = vec![s.rat(6, 4), s.rat(6, 4)];
            assert_eq!(c.supports(&p), finer.supports(&p));
        }
    }

    #[test]
    fn composition_matches_direct_map_on_towers() {
        let mut s = Sampler::new(99);
        for _trial in 0..5 {
            let base = standard_wedge();
            let mut complexes = vec![base.clone()];
            let mut steps = Vec::new();
            let mut current = base.clone();
            for _ in 0..3 {
                // A random primitive point in the support.
                let a = s.int_in(1, 5);
                let b = s.int_in(0, a);
                let v = crate::exact::primitive_vector(&bigvec(&[a, b])).unwrap();
                let (finer, map) = subdivide_at(&current, &v).unwrap();
                complexes.push(finer.clone());
                steps.push(map);
                current = finer;
            }
            let composed = compose_maps(
                &compose_maps(&steps[0], &steps[1]).unwrap(),
                &steps[2],
            )
            .unwrap();
            let direct = ComplexMap::identity_on_points(
                complexes.last().unwrap().clone(),
                base.clone(),
            )
            .unwrap();
            for ray in complexes.last().unwrap().rays() {
                let p = to_rat_vec(ray);
                assert_eq!(composed.apply(&p).unwrap(), direct.apply(&p).unwrap());
            }
        }
    }

    #[test]
    fn map_images_of_primitive_vectors_are_integral() {
        let c = standard_wedge();
        let (finer, map) = subdivide_at(&c, &bigvec(&[2, 1])).unwrap();
        for ray in finer.rays() {
            let img = map.apply(&to_rat_vec(ray)).unwrap();
            assert!(img.iter().all(|x| x.denom().is_one()));
        }
    }

    #[test]
    fn smoothen_resolves_a_singular_wedge() {
        let c = build_complex(
            2,
            vec![bigvec(&[1, 0]), bigvec(&[1, 2])],
            vec![vec![0], vec![1], vec![0, 1]],
        )
        .unwrap();
        assert!(c.cones().iter().any(|k| !k.is_smooth()));
        let (smooth, map) = smoothen(&c).unwrap();
        assert!(smooth.cones().iter().all(LatticeCone::is_smooth));
        assert!(smooth.ray_index(&bigvec(&[1, 1])).is_some());
        let p = ratvec(&[2, 1]);
        assert_eq!(map.apply(&p).unwrap(), p);
    }

    #[test]
    fn linear_form_interpolates_generator_values() {
        let c = standard_wedge();
        let two_cone = c.locate(&ratvec(&[2, 1])).unwrap();
        let form = c
            .linear_form_through(two_cone, &[rat(3, 1), rat(5, 1)])
            .unwrap();
        let at = |x: &[Rat]| crate::exact::dot(&form, x).unwrap();
        assert_eq!(at(&ratvec(&[1, 0])), rat(3, 1));
        assert_eq!(at(&ratvec(&[1, 1])), rat(5, 1));
        assert_eq!(at(&ratvec(&[2, 1])), rat(8, 1));
    }
}
