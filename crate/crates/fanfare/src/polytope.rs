//! Exact rational polytopes.
//!
//! Half-space representations with exact volume, vertex enumeration,
//! lattice-point counting, and convex hulls of rational point sets. The
//! volume routine recurses through facets using the divergence identity;
//! writing each facet measure through a coordinate projection cancels all
//! Euclidean norms, so the answer is a plain rational in every dimension.

use num_traits::{One, Signed, Zero};

use crate::exact::{dot, rat_vec_to_primitive, Rat, RatMatrix};
use crate::fan::{extreme_rays, k_subsets};
use crate::{Error, Result};

/// A polytope `{x : a_i . x <= b_i}` in half-space form.
///
/// Construction normalizes each inequality to a primitive integer normal
/// and drops exact duplicates. Nothing here requires boundedness except
/// [`HPolytope::volume`], [`HPolytope::vertices`], and lattice-point
/// counting, which all verify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    ineqs: Vec<(Vec<Rat>, Rat)>,
}

impl HPolytope {
    /// Build from inequalities `a . x <= b`.
    ///
    /// # Errors
    ///
    /// Fails on a zero ambient dimension or mismatched row lengths.
    pub fn new(dim: usize, ineqs: Vec<(Vec<Rat>, Rat)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("ambient dimension must be positive"));
        }
        let mut normalized: Vec<(Vec<Rat>, Rat)> = Vec::new();
        for (a, b) in ineqs {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: a.len(),
                });
            }
            let row = normalize_ineq(&a, &b)?;
            if let Some(row) = row {
                if !normalized.contains(&row) {
                    normalized.push(row);
                }
            }
        }
        Ok(HPolytope {
            dim,
            ineqs: normalized,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The normalized inequalities `a . x <= b`.
    pub fn inequalities(&self) -> &[(Vec<Rat>, Rat)] {
        &self.ineqs
    }

    /// Exact membership test.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.ineqs
            .iter()
            .all(|(a, b)| dot(a, x).map(|v| v <= *b).unwrap_or(false))
    }

    /// The dilate `c * P` for `c >= 0`.
    pub fn scale(&self, c: &Rat) -> HPolytope {
        assert!(!c.is_negative(), "dilation factor must be nonnegative");
        HPolytope {
            dim: self.dim,
            ineqs: self
                .ineqs
                .iter()
                .map(|(a, b)| (a.clone(), b * c))
                .collect(),
        }
    }

    /// Check boundedness; an unbounded direction is returned as the error
    /// witness.
    ///
    /// # Errors
    ///
    /// [`Error::Unbounded`] with a recession direction.
    pub fn require_bounded(&self) -> Result<()> {
        // Recession cone {x: a_i . x <= 0}. A line through it shows up in
        // the kernel of the normal matrix; otherwise the cone is pointed
        // and brute-force ray enumeration is exact.
        if self.ineqs.is_empty() {
            let mut dir = vec![Rat::zero(); self.dim];
            dir[0] = Rat::one();
            return Err(Error::Unbounded { direction: dir });
        }
        let normals = RatMatrix::from_rows(self.ineqs.iter().map(|(a, _)| a.clone()).collect())?;
        if let Some(line) = normals.kernel_basis().into_iter().next() {
            return Err(Error::Unbounded { direction: line });
        }
        let flipped: Vec<Vec<Rat>> = self
            .ineqs
            .iter()
            .map(|(a, _)| a.iter().map(|x| -x).collect())
            .collect();
        if let Some(ray) = extreme_rays(self.dim, &[], &flipped).into_iter().next() {
            return Err(Error::Unbounded { direction: ray });
        }
        Ok(())
    }

    /// Exact Euclidean volume.
    ///
    /// # Errors
    ///
    /// [`Error::Unbounded`] on an unbounded input.
    pub fn volume(&self) -> Result<Rat> {
        self.require_bounded()?;
        Ok(volume_rec(self.dim, &self.ineqs))
    }

    /// All vertices, each the intersection of `dim` independent active
    /// constraints, deduplicated.
    ///
    /// # Errors
    ///
    /// [`Error::Unbounded`] on an unbounded input.
    pub fn vertices(&self) -> Result<Vec<Vec<Rat>>> {
        self.require_bounded()?;
        let mut verts: Vec<Vec<Rat>> = Vec::new();
        for subset in k_subsets(self.ineqs.len(), self.dim) {
            let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| self.ineqs[i].0.clone()).collect();
            let rhs: Vec<Rat> = subset.iter().map(|&i| self.ineqs[i].1.clone()).collect();
            let m = match RatMatrix::from_rows(rows) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let Ok(x) = m.solve(&rhs) else { continue };
            if self.contains(&x) && !verts.contains(&x) {
                verts.push(x);
            }
        }
        Ok(verts)
    }

    /// Integer points of the polytope.
    ///
    /// # Errors
    ///
    /// [`Error::Unbounded`] on an unbounded input.
    pub fn lattice_points(&self) -> Result<Vec<Vec<Rat>>> {
        let verts = self.vertices()?;
        if verts.is_empty() {
            return Ok(Vec::new());
        }
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for d in 0..self.dim {
            let mut min = verts[0][d].clone();
            let mut max = verts[0][d].clone();
            for v in &verts[1..] {
                if v[d] < min {
                    min = v[d].clone();
                }
                if v[d] > max {
                    max = v[d].clone();
                }
            }
            lo.push(min.ceil().to_integer());
            hi.push(max.floor().to_integer());
        }
        let mut out = Vec::new();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(out);
        }
        let mut cursor = lo.clone();
        loop {
            let point: Vec<Rat> = cursor.iter().map(|x| Rat::from_integer(x.clone())).collect();
            if self.contains(&point) {
                out.push(point);
            }
            let mut d = 0;
            loop {
                if d == self.dim {
                    return Ok(out);
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

    /// Number of integer points.
    ///
    /// # Errors
    ///
    /// [`Error::Unbounded`] on an unbounded input.
    pub fn lattice_point_count(&self) -> Result<u64> {
        Ok(self.lattice_points()?.len() as u64)
    }
}

fn normalize_ineq(a: &[Rat], b: &Rat) -> Result<Option<(Vec<Rat>, Rat)>> {
    if a.iter().all(Rat::is_zero) {
        if b.is_negative() {
            // 0 <= b < 0 is infeasible; keep it so emptiness is visible.
            return Ok(Some((a.to_vec(), b.clone())));
        }
        return Ok(None);
    }
    let prim = rat_vec_to_primitive(a).expect("nonzero vector");
    // The primitive vector keeps the sign of the first nonzero entry, so
    // recover the positive scalar lambda with a = lambda * prim.
    let pivot = a.iter().position(|x| !x.is_zero()).expect("nonzero vector");
    let lambda = &a[pivot] / Rat::from_integer(prim[pivot].clone());
    let (prim, lambda) = if lambda.is_negative() {
        (prim.iter().map(|x| -x.clone()).collect::<Vec<_>>(), -lambda)
    } else {
        (prim, lambda)
    };
    let scaled_b = b / &lambda;
    Ok(Some((
        prim.into_iter().map(Rat::from_integer).collect(),
        scaled_b,
    )))
}

fn volume_rec(dim: usize, ineqs: &[(Vec<Rat>, Rat)]) -> Rat {
    // Infeasible constant rows mean the polytope is empty.
    if ineqs
        .iter()
        .any(|(a, b)| a.iter().all(Rat::is_zero) && b.is_negative())
    {
        return Rat::zero();
    }
    if dim == 1 {
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for (a, b) in ineqs {
            let c = &a[0];
            if c.is_zero() {
                continue;
            }
            let bound = b / c;
            if c.is_positive() {
                if hi.as_ref().is_none_or(|h| bound < *h) {
                    hi = Some(bound);
                }
            } else if lo.as_ref().is_none_or(|l| bound > *l) {
                lo = Some(bound);
            }
        }
        return match (lo, hi) {
            (Some(lo), Some(hi)) if hi > lo => hi - lo,
            _ => Rat::zero(),
        };
    }

    let mut total = Rat::zero();
    for (fi, (a, b)) in ineqs.iter().enumerate() {
        let Some(j) = a.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        // Substitute x_j = (b - sum_{k != j} a_k x_k) / a_j into the other
        // constraints; the result is the projection of this facet along
        // coordinate j, whose (dim-1)-volume absorbs the norm factors.
        let mut facet: Vec<(Vec<Rat>, Rat)> = Vec::new();
        for (gi, (c, d)) in ineqs.iter().enumerate() {
            if gi == fi {
                continue;
            }
            let ratio = &c[j] / &a[j];
            let mut row = Vec::with_capacity(dim - 1);
            for k in 0..dim {
                if k == j {
                    continue;
                }
                row.push(&c[k] - &ratio * &a[k]);
            }
            let rhs = d - &ratio * b;
            facet.push((row, rhs));
        }
        let sub = volume_rec(dim - 1, &facet);
        if !sub.is_zero() {
            total += b * &sub / a[j].abs();
        }
    }
    total / Rat::from_integer(dim.into())
}

/// Convex hull classification of a rational point set.
#[derive(Debug, Clone)]
pub enum Hull {
    /// No points.
    Empty,
    /// The affine hull has the given dimension, below the ambient one, so
    /// the hull has volume zero and no half-space form is produced.
    LowerDim { affine_dim: usize },
    /// Full-dimensional hull in half-space form.
    Full(HPolytope),
}

impl Hull {
    /// Euclidean volume of the hull, zero in the degenerate cases.
    ///
    /// # Errors
    ///
    /// Propagates volume failures; a hull of finitely many points is
    /// always bounded, so none occur in practice.
    pub fn volume(&self) -> Result<Rat> {
        match self {
            Hull::Empty | Hull::LowerDim { .. } => Ok(Rat::zero()),
            Hull::Full(p) => p.volume(),
        }
    }
}

/// Dimension of the affine hull of the points.
pub fn affine_rank(points: &[Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let rows: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    RatMatrix::from_rows(rows).map(|m| m.rank()).unwrap_or(0)
}

/// Convex hull of rational points, by supporting-hyperplane enumeration.
///
/// Every hyperplane through `dim` affinely independent points is tested
/// for supporting the whole set; the surviving half-spaces cut out the
/// hull. Quadratic in the number of candidate hyperplanes but exact, and
/// the point sets in this crate are small.
///
/// # Errors
///
/// Fails on mismatched point dimensions.
pub fn convex_hull(dim: usize, points: &[Vec<Rat>]) -> Result<Hull> {
    let mut unique: Vec<Vec<Rat>> = Vec::new();
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
        if !unique.contains(p) {
            unique.push(p.clone());
        }
    }
    if unique.is_empty() {
        return Ok(Hull::Empty);
    }
    let rank = affine_rank(&unique);
    if rank < dim {
        return Ok(Hull::LowerDim { affine_dim: rank });
    }

    let mut halfspaces: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for subset in k_subsets(unique.len(), dim) {
        // Solve a . p = b for the subset: kernel of rows [p | -1].
        let rows: Vec<Vec<Rat>> = subset
            .iter()
            .map(|&i| {
                let mut r = unique[i].clone();
                r.push(-Rat::one());
                r
            })
            .collect();
        let m = RatMatrix::from_rows(rows)?;
        let kernel = m.kernel_basis();
        if kernel.len() != 1 {
            continue;
        }
        let mut normal = kernel[0].clone();
        let offset = normal.pop().expect("kernel vector has dim+1 entries");
        if normal.iter().all(Rat::is_zero) {
            continue;
        }
        let mut any_above = false;
        let mut any_below = false;
        for p in &unique {
            let s = dot(&normal, p).expect("same dimension") - &offset;
            if s.is_positive() {
                any_above = true;
            }
            if s.is_negative() {
                any_below = true;
            }
        }
        if any_above && any_below {
            continue;
        }
        let (a, b) = if any_above {
            (normal.iter().map(|x| -x).collect::<Vec<_>>(), -offset)
        } else {
            (normal, offset)
        };
        halfspaces.push((a, b));
    }
    Ok(Hull::Full(HPolytope::new(dim, halfspaces)?))
}

/// Greatest common divisor helper for integer boxes in tests and callers
/// that clamp rational bounds to lattice ranges.
pub fn floor_int(r: &Rat) -> num_bigint::BigInt {
    r.floor().to_integer()
}

/// Ceiling counterpart of [`floor_int`].
pub fn ceil_int(r: &Rat) -> num_bigint::BigInt {
    r.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn ratvec(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    fn unit_square() -> HPolytope {
        HPolytope::new(
            2,
            vec![
                (ratvec(&[-1, 0]), rat_int(0)),
                (ratvec(&[0, -1]), rat_int(0)),
                (ratvec(&[1, 0]), rat_int(1)),
                (ratvec(&[0, 1]), rat_int(1)),
            ],
        )
        .unwrap()
    }

    fn standard_simplex(dim: usize) -> HPolytope {
        let mut ineqs = Vec::new();
        for d in 0..dim {
            let mut a = vec![Rat::zero(); dim];
            a[d] = rat_int(-1);
            ineqs.push((a, Rat::zero()));
        }
        ineqs.push((vec![Rat::one(); dim], Rat::one()));
        HPolytope::new(dim, ineqs).unwrap()
    }

    #[test]
    fn square_volume_and_vertices() {
        let p = unit_square();
        assert_eq!(p.volume().unwrap(), rat_int(1));
        let mut vs = p.vertices().unwrap();
        vs.sort();
        assert_eq!(vs.len(), 4);
        assert!(vs.contains(&ratvec(&[1, 1])));
    }

    #[test]
    fn simplex_volumes_are_reciprocal_factorials() {
        assert_eq!(standard_simplex(1).volume().unwrap(), rat_int(1));
        assert_eq!(standard_simplex(2).volume().unwrap(), rat(1, 2));
        assert_eq!(standard_simplex(3).volume().unwrap(), rat(1, 6));
        assert_eq!(standard_simplex(4).volume().unwrap(), rat(1, 24));
    }

    #[test]
    fn volume_is_translation_covariant_under_scaling() {
        let p = standard_simplex(2);
        assert_eq!(p.scale(&rat_int(3)).volume().unwrap(), rat(9, 2));
        assert_eq!(p.scale(&rat(1, 2)).volume().unwrap(), rat(1, 8));
    }

    #[test]
    fn redundant_constraints_do_not_change_volume() {
        let mut ineqs = unit_square().inequalities().to_vec();
        ineqs.push((ratvec(&[1, 1]), rat_int(5)));
        ineqs.push((ratvec(&[1, 0]), rat_int(1)));
        let p = HPolytope::new(2, ineqs).unwrap();
        assert_eq!(p.volume().unwrap(), rat_int(1));
    }

    #[test]
    fn empty_polytope_has_zero_volume() {
        let p = HPolytope::new(
            1,
            vec![(ratvec(&[1]), rat_int(0)), (ratvec(&[-1]), rat_int(-1))],
        )
        .unwrap();
        assert_eq!(p.volume().unwrap(), Rat::zero());
        assert_eq!(p.lattice_point_count().unwrap(), 0);
    }

    #[test]
    fn unbounded_polytope_is_reported_with_direction() {
        let p = HPolytope::new(2, vec![(ratvec(&[-1, 0]), rat_int(0))]).unwrap();
        match p.volume() {
            Err(Error::Unbounded { direction }) => {
                assert!(!direction.iter().all(Rat::is_zero));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn lattice_point_counts_match_ehrhart_values() {
        let square = unit_square();
        assert_eq!(square.lattice_point_count().unwrap(), 4);
        assert_eq!(square.scale(&rat_int(2)).lattice_point_count().unwrap(), 9);
        let tri = standard_simplex(2);
        // Ehrhart polynomial of the unit triangle: (l+1)(l+2)/2.
        for l in 1..=6i64 {
            let count = tri.scale(&rat_int(l)).lattice_point_count().unwrap();
            assert_eq!(count as i64, (l + 1) * (l + 2) / 2);
        }
    }

    #[test]
    fn hull_of_triangle() {
        let pts = vec![ratvec(&[0, 0]), ratvec(&[1, 0]), ratvec(&[0, 1])];
        let hull = convex_hull(2, &pts).unwrap();
        assert_eq!(hull.volume().unwrap(), rat(1, 2));
        let Hull::Full(p) = hull else {
            panic!("expected full hull")
        };
        assert!(p.contains(&[rat(1, 4), rat(1, 4)]));
        assert!(!p.contains(&ratvec(&[1, 1])));
    }

    #[test]
    fn hull_interior_points_are_irrelevant() {
        let pts = vec![
            ratvec(&[0, 0]),
            ratvec(&[2, 0]),
            ratvec(&[0, 2]),
            ratvec(&[2, 2]),
            ratvec(&[1, 1]),
        ];
        let hull = convex_hull(2, &pts).unwrap();
        assert_eq!(hull.volume().unwrap(), rat_int(4));
    }

    #[test]
    fn degenerate_hulls_are_classified() {
        assert!(matches!(convex_hull(2, &[]).unwrap(), Hull::Empty));
        let collinear = vec![ratvec(&[0, 0]), ratvec(&[1, 1]), ratvec(&[2, 2])];
        match convex_hull(2, &collinear).unwrap() {
            Hull::LowerDim { affine_dim } => assert_eq!(affine_dim, 1),
            other => panic!("unexpected: {other:?}"),
        }
        assert_eq!(convex_hull(2, &collinear).unwrap().volume().unwrap(), Rat::zero());
    }

    #[test]
    fn hull_volume_in_three_dimensions() {
        let mut pts = Vec::new();
        for x in 0..=1 {
            for y in 0..=1 {
                for z in 0..=1 {
                    pts.push(ratvec(&[x, y, z]));
                }
            }
        }
        let hull = convex_hull(3, &pts).unwrap();
        assert_eq!(hull.volume().unwrap(), rat_int(1));
    }

    #[test]
    fn vertices_of_a_sheared_triangle() {
        // {x >= 0, y >= 0, x + 2y <= 4}
        let p = HPolytope::new(
            2,
            vec![
                (ratvec(&[-1, 0]), rat_int(0)),
                (ratvec(&[0, -1]), rat_int(0)),
                (ratvec(&[1, 2]), rat_int(4)),
            ],
        )
        .unwrap();
        let mut vs = p.vertices().unwrap();
        vs.sort();
        assert_eq!(
            vs,
            vec![ratvec(&[0, 0]), ratvec(&[0, 2]), ratvec(&[4, 0])]
        );
        assert_eq!(p.volume().unwrap(), rat_int(4));
    }
}
