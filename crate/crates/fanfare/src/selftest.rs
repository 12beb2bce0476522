//! Cross-module invariant battery behind the `selftest` verb.
//!
//! Every module contributes a short list of named checks exercising its
//! public contract: pinned exact values, algebraic laws on sampled inputs,
//! and the frozen certificate of the descent pipeline. A check passes when
//! it returns `Ok(())`; the reports carry per-module pass counts and the
//! failure messages, so a caller can print one line per module and exit
//! nonzero when anything fails.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::conical::{
    concavity_test, parabola_support_oracle, pl_test, quadrant_fan, toric_degree, ConicalOracle,
    PLConicalFunction, PlOutcome,
};
use crate::exact::{
    bernoulli, double_factorial_odd, factorial, fmt_rat, parse_rat, psd_certify, rat, rat_int,
    to_rat_vec, trace_dominance, zeta_negative, PiScalar, PsdOutcome, Rat, RatMatrix,
};
use crate::fan::{build_complex, compose_maps, smoothen, subdivide_at, LatticeCone};
use crate::growth::{asymptotic_table, closed_forms, siegel_volume, trivial_dims, WeightIndex};
use crate::polytope::{convex_hull, HPolytope};
use crate::recession::{
    default_tol, lelong_number, make_linear_oracle, make_logdet_oracle, make_qol_oracle,
    recession, recession_gap_check, BoxDomain,
};
use crate::sample::Sampler;
use crate::series::{
    bdiv_roundtrip_check, okounkov_body, slice_contains, volume as series_volume,
    BidegreeSemigroup, MonomialGradedSeries,
};
use crate::siegel::{
    act, admissibility_check, cartier_diagnostic, chart_model_oracle, descended_function,
    extended_value, lelong_at_ray, standard_decomposition_g1, sufficiently_negative_builder,
    translation_defect, CartierOutcome, GroupElement, SiegelPoint,
};
use crate::{Error, Result};

/// One module's pass counts with the messages of any failed checks.
#[derive(Debug, Clone)]
pub struct ModuleReport {
    pub module: &'static str,
    pub passed: usize,
    /// Pairs of check name and failure message.
    pub failures: Vec<(String, String)>,
}

impl ModuleReport {
    pub fn failed(&self) -> usize {
        self.failures.len()
    }

    pub fn total(&self) -> usize {
        self.passed + self.failures.len()
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// True when every module passed every check.
pub fn all_passed(reports: &[ModuleReport]) -> bool {
    reports.iter().all(ModuleReport::all_passed)
}

type Check = (&'static str, fn(u64) -> Result<()>);

/// Run the whole battery. Sampled checks derive their streams from `seed`,
/// so a fixed seed reproduces a failure exactly.
pub fn run(seed: u64) -> Vec<ModuleReport> {
    [
        ("exact", exact_checks()),
        ("fan", fan_checks()),
        ("conical", conical_checks()),
        ("polytope", polytope_checks()),
        ("recession", recession_checks()),
        ("series", series_checks()),
        ("siegel", siegel_checks()),
        ("growth", growth_checks()),
    ]
    .into_iter()
    .map(|(module, checks)| run_battery(module, seed, &checks))
    .collect()
}

fn run_battery(module: &'static str, seed: u64, checks: &[Check]) -> ModuleReport {
    let mut passed = 0;
    let mut failures = Vec::new();
    for (name, check) in checks {
        match check(seed) {
            Ok(()) => passed += 1,
            Err(e) => failures.push(((*name).to_string(), e.to_string())),
        }
    }
    ModuleReport {
        module,
        passed,
        failures,
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::CrossCheck(msg.into()))
    }
}

fn exact_checks() -> Vec<Check> {
    vec![
        ("bernoulli_and_zeta_values", |_| {
            let pinned = [
                (2usize, rat(1, 6)),
                (4, rat(-1, 30)),
                (6, rat(1, 42)),
                (8, rat(-1, 30)),
                (12, rat(-691, 2730)),
            ];
            for (n, want) in pinned {
                ensure(bernoulli(n) == want, format!("B_{n} is off"))?;
            }
            for k in 1..=8usize {
                let from_bernoulli = -bernoulli(2 * k) / rat_int(2 * k as i64);
                ensure(
                    zeta_negative(k) == from_bernoulli,
                    format!("zeta(1 - 2k) disagrees with -B_2k / 2k at k = {k}"),
                )?;
            }
            for k in 0..=9usize {
                let lhs = double_factorial_odd(k) * (BigInt::one() << k) * factorial(k);
                ensure(
                    lhs == factorial(2 * k),
                    format!("(2k - 1)!! 2^k k! != (2k)! at k = {k}"),
                )?;
            }
            Ok(())
        }),
        ("pi_scalar_algebra", |seed| {
            let mut s = Sampler::new(seed ^ 0x51);
            for _ in 0..25 {
                let a = PiScalar::new(s.rat(9, 5), s.int_in(-3, 3));
                let b = PiScalar::new(s.rat(9, 5), s.int_in(-3, 3));
                let c = PiScalar::new(s.rat(9, 5), s.int_in(-3, 3));
                ensure(a.mul(&b) == b.mul(&a), "multiplication must commute")?;
                ensure(
                    a.mul(&b).mul(&c) == a.mul(&b.mul(&c)),
                    "multiplication must associate",
                )?;
                ensure(
                    a.add(&a)? == a.scale(&rat_int(2)),
                    "doubling must match scaling by two",
                )?;
                ensure(a.add(&a.neg())?.is_zero(), "a - a must vanish")?;
                if !a.is_zero() {
                    ensure(
                        a.recip()?.mul(&a) == PiScalar::rational(Rat::one()),
                        "a reciprocal must invert",
                    )?;
                }
            }
            Ok(())
        }),
        ("wire_format_roundtrip", |seed| {
            let mut s = Sampler::new(seed ^ 0x33);
            for _ in 0..50 {
                let r = s.rat(1000, 60);
                ensure(
                    parse_rat(&fmt_rat(&r))? == r,
                    format!("roundtrip changed {r}"),
                )?;
            }
            Ok(())
        }),
        ("psd_certificates", |seed| {
            let mut s = Sampler::new(seed ^ 0x95D);
            for n in 1..=4 {
                let pd = s.pd_matrix(n, 5, 3);
                ensure(
                    psd_certify(&pd)?.is_definite(),
                    format!("a sampled definite matrix of size {n} was not certified"),
                )?;
                let semi = s.psd_matrix(n, 5, 3);
                ensure(
                    psd_certify(&semi)?.is_semidefinite(),
                    format!("a sampled semidefinite matrix of size {n} was not certified"),
                )?;
            }
            let indefinite = RatMatrix::from_int_rows(&[&[1, 0], &[0, -1]])?;
            match psd_certify(&indefinite)? {
                PsdOutcome::NotPsd { witness, value } => {
                    ensure(value.is_negative(), "refutation value must be negative")?;
                    ensure(
                        indefinite.quadratic_form(&witness)? == value,
                        "refutation witness must reproduce its value",
                    )
                }
                _ => Err(Error::CrossCheck(
                    "an indefinite matrix was not refuted".into(),
                )),
            }
        }),
        ("trace_dominance_sampled", |seed| {
            let mut s = Sampler::new(seed ^ 0x7D);
            for n in 1..=4 {
                for _ in 0..10 {
                    let a = s.pd_matrix(n, 4, 2);
                    let b = s.psd_matrix(n, 4, 2);
                    let c = s.psd_matrix(n, 4, 2);
                    ensure(
                        trace_dominance(&a, &b, &c)?,
                        format!("the trace inequality failed in dimension {n}"),
                    )?;
                }
            }
            Ok(())
        }),
        ("matrix_inverse_roundtrip", |seed| {
            let mut s = Sampler::new(seed ^ 0x314);
            for n in 1..=4 {
                let m = s.pd_matrix(n, 5, 3);
                ensure(m.rank() == n, "a definite matrix must have full rank")?;
                ensure(
                    m.inverse()?.matmul(&m)? == RatMatrix::identity(n),
                    "the inverse must invert",
                )?;
            }
            Ok(())
        }),
    ]
}

fn fan_checks() -> Vec<Check> {
    vec![
        ("subdivision_maps_compose", |seed| {
            let base = quadrant_fan()?;
            let (mid, to_base) = subdivide_at(&base, &[BigInt::one(), BigInt::one()])?;
            let (fine, to_mid) = subdivide_at(&mid, &[BigInt::from(2), BigInt::one()])?;
            ensure(
                fine.rays().len() == base.rays().len() + 2,
                "two stellar subdivisions must add two rays",
            )?;
            let composed = compose_maps(&to_base, &to_mid)?;
            let mut s = Sampler::new(seed ^ 0xFA);
            for _ in 0..20 {
                let x = s.rat_vec(2, 8, 3);
                let stepwise = to_base.apply(&to_mid.apply(&x)?)?;
                ensure(
                    composed.apply(&x)? == stepwise,
                    "the composed refinement map disagrees with stepwise application",
                )?;
            }
            Ok(())
        }),
        ("smoothing_resolves_singular_cones", |_| {
            let singular = build_complex(
                2,
                vec![
                    vec![BigInt::one(), BigInt::zero()],
                    vec![BigInt::one(), BigInt::from(2)],
                ],
                vec![vec![0], vec![1], vec![0, 1]],
            )?;
            let (smooth, map) = smoothen(&singular)?;
            ensure(
                smooth.cones().iter().all(LatticeCone::is_smooth),
                "resolution left a singular cone",
            )?;
            for ray in smooth.rays() {
                let x = to_rat_vec(ray);
                ensure(
                    map.apply(&x)? == x,
                    "the resolution map must be the identity on points",
                )?;
            }
            Ok(())
        }),
        ("located_cones_contain_their_points", |seed| {
            let fan = quadrant_fan()?;
            let mut s = Sampler::new(seed ^ 0x10C);
            for _ in 0..30 {
                let x = s.rat_vec(2, 9, 4);
                ensure(fan.supports(&x), "a complete fan must support every point")?;
                let cone = fan.locate(&x)?;
                ensure(
                    fan.cone_contains(cone, &x)?,
                    "the located cone does not contain its point",
                )?;
            }
            Ok(())
        }),
    ]
}

fn conical_checks() -> Vec<Check> {
    vec![
        ("pl_data_passes_the_pl_test", |_| {
            let f = PLConicalFunction::from_ray_values(
                quadrant_fan()?,
                &[rat_int(-1), rat_int(-1), rat_int(0), rat_int(0)],
            )?;
            let oracle = ConicalOracle::from_pl(f);
            ensure(pl_test(&oracle, 2)?.is_pl(), "PL data must pass the PL test")
        }),
        ("parabola_support_is_refuted", |_| {
            let oracle = parabola_support_oracle()?;
            match pl_test(&oracle, 1)? {
                PlOutcome::NotPl { witness } => ensure(
                    witness.verify(&oracle)?,
                    "the non-PL witness failed verification",
                ),
                PlOutcome::Pl { .. } => Err(Error::CrossCheck(
                    "the parabola support function passed the PL test".into(),
                )),
            }
        }),
        ("toric_degrees_are_pinned", |_| {
            let plane = build_complex(
                2,
                vec![
                    vec![BigInt::one(), BigInt::zero()],
                    vec![BigInt::zero(), BigInt::one()],
                    vec![-BigInt::one(), -BigInt::one()],
                ],
                vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![2, 0]],
            )?;
            let hyperplane =
                PLConicalFunction::from_ray_values(plane, &[rat_int(-1), rat_int(0), rat_int(0)])?;
            ensure(
                toric_degree(&hyperplane, 2)? == rat_int(1),
                "the hyperplane class must have degree one",
            )?;
            let quadric = PLConicalFunction::from_ray_values(
                quadrant_fan()?,
                &[rat_int(-1), rat_int(-1), rat_int(0), rat_int(0)],
            )?;
            ensure(
                toric_degree(&quadric, 2)? == rat_int(2),
                "the bidegree (1, 1) class must have degree two",
            )
        }),
        ("concavity_flags_the_right_side", |_| {
            let concave = PLConicalFunction::from_ray_values(
                quadrant_fan()?,
                &[rat_int(-1), rat_int(-1), rat_int(-1), rat_int(-1)],
            )?;
            ensure(
                concavity_test(&concave)?.is_concave,
                "a concave function was rejected",
            )?;
            let report = concavity_test(&concave.scale(&rat_int(-1)))?;
            ensure(!report.is_concave, "a convex bend was accepted as concave")?;
            ensure(
                report.violating_wall.is_some(),
                "a rejection must name a violating wall",
            )
        }),
    ]
}

fn unit_square() -> Result<HPolytope> {
    HPolytope::new(
        2,
        vec![
            (vec![rat_int(1), rat_int(0)], rat_int(1)),
            (vec![rat_int(-1), rat_int(0)], rat_int(0)),
            (vec![rat_int(0), rat_int(1)], rat_int(1)),
            (vec![rat_int(0), rat_int(-1)], rat_int(0)),
        ],
    )
}

fn polytope_checks() -> Vec<Check> {
    vec![
        ("square_volume_and_counts", |_| {
            let square = unit_square()?;
            ensure(square.volume()? == rat_int(1), "the unit square has area one")?;
            for l in 1..=4i64 {
                let count = square.scale(&rat_int(l)).lattice_point_count()?;
                ensure(
                    count == ((l + 1) * (l + 1)) as u64,
                    format!("the scaled square must hold (l + 1)^2 points at l = {l}"),
                )?;
            }
            Ok(())
        }),
        ("simplex_volume_and_counts", |_| {
            let simplex = HPolytope::new(
                2,
                vec![
                    (vec![rat_int(-1), rat_int(0)], rat_int(0)),
                    (vec![rat_int(0), rat_int(-1)], rat_int(0)),
                    (vec![rat_int(1), rat_int(1)], rat_int(1)),
                ],
            )?;
            ensure(simplex.volume()? == rat(1, 2), "the standard simplex has area 1/2")?;
            let count = simplex.scale(&rat_int(3)).lattice_point_count()?;
            ensure(count == 10, "the tripled simplex must hold ten points")
        }),
        ("hull_of_vertices_roundtrips", |_| {
            let vertices = unit_square()?.vertices()?;
            ensure(vertices.len() == 4, "the square has four vertices")?;
            let hull = convex_hull(2, &vertices)?;
            ensure(
                hull.volume()? == rat_int(1),
                "the vertex hull must recover the volume",
            )
        }),
    ]
}

fn recession_checks() -> Vec<Check> {
    vec![
        ("linear_recession_is_exact", |_| {
            let o = make_linear_oracle(
                BoxDomain::orthant(2, Rat::zero()),
                vec![rat_int(-1), rat_int(-2)],
                rat_int(5),
            )?;
            let r = recession(
                &o,
                &[Rat::zero(), Rat::zero()],
                &[Rat::one(), rat_int(2)],
                &default_tol(),
            )?;
            ensure(r.value == rat_int(-5), "the linear recession value is off")?;
            ensure(r.error_bound.is_zero(), "a linear oracle must report zero error")?;
            let nu = lelong_number(&o, &[BigInt::one(), BigInt::zero()])?;
            ensure(nu == rat_int(1), "the linear vanishing order is off")
        }),
        ("recession_is_basepoint_independent", |_| {
            let o = make_qol_oracle(
                vec![RatMatrix::identity(1), RatMatrix::identity(1)],
                vec![vec![rat_int(0)], vec![rat_int(1)]],
                None,
            )?;
            let y = [rat_int(2), rat_int(1)];
            let tol = default_tol();
            let r1 = recession(&o, &[rat_int(1), rat_int(1)], &y, &tol)?;
            let r2 = recession(&o, &[rat_int(5), rat_int(3)], &y, &tol)?;
            ensure(
                (&r1.value - &r2.value).abs() <= rat_int(2) * tol,
                "recession values drift with the basepoint",
            )
        }),
        ("gap_bound_holds", |_| {
            let logdet = make_logdet_oracle(vec![RatMatrix::identity(1)])?;
            let report = recession_gap_check(&logdet, &[Rat::one()], 10)?;
            ensure(report.holds, "the gap bound failed for a log determinant")?;
            let qol = make_qol_oracle(
                vec![RatMatrix::identity(1), RatMatrix::identity(1)],
                vec![vec![rat_int(0)], vec![rat_int(1)]],
                None,
            )?;
            let report = recession_gap_check(&qol, &qol.domain().basepoint(), 10)?;
            ensure(report.holds, "the gap bound failed for a conical oracle")
        }),
        ("bounded_oracles_have_no_vanishing", |seed| {
            let o = make_logdet_oracle(vec![
                RatMatrix::from_int_rows(&[&[1, 0], &[0, 0]])?,
                RatMatrix::from_int_rows(&[&[0, 0], &[0, 1]])?,
            ])?;
            let tol = default_tol();
            let mut s = Sampler::new(seed ^ 0x1E1);
            let mut checked = 0;
            while checked < 10 {
                let v = vec![BigInt::from(s.int_in(0, 6)), BigInt::from(s.int_in(0, 6))];
                if !crate::exact::is_primitive(&v) {
                    continue;
                }
                let nu = lelong_number(&o, &v)?;
                ensure(
                    nu.abs() <= tol,
                    format!("a bounded oracle reported vanishing order {nu}"),
                )?;
                checked += 1;
            }
            Ok(())
        }),
    ]
}

fn series_checks() -> Vec<Check> {
    vec![
        ("polytope_series_volume", |_| {
            let series = MonomialGradedSeries::from_polytope(unit_square()?);
            ensure(
                series.dim_component(3)? == 16,
                "the degree three component of the square is off",
            )?;
            let report = series_volume(&series, 16)?;
            ensure(
                report.exact == Some(rat_int(2)),
                "the exact normalized volume of the square is off",
            )?;
            ensure(
                (&report.extrapolated - rat_int(2)).abs() <= rat(1, 10),
                "the extrapolated volume is too far from the limit",
            )
        }),
        ("okounkov_body_of_the_square", |_| {
            let series = MonomialGradedSeries::from_polytope(unit_square()?);
            let flag = vec![
                vec![BigInt::one(), BigInt::zero()],
                vec![BigInt::zero(), BigInt::one()],
            ];
            let body = okounkov_body(&series, &flag, 3)?;
            ensure(
                body.volume()? == rat_int(1),
                "the valuation body must recover the square",
            )
        }),
        ("divisor_roundtrip_is_exact", |_| {
            let plane = build_complex(
                2,
                vec![
                    vec![BigInt::one(), BigInt::zero()],
                    vec![BigInt::zero(), BigInt::one()],
                    vec![-BigInt::one(), -BigInt::one()],
                ],
                vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![2, 0]],
            )?;
            let f =
                PLConicalFunction::from_ray_values(plane, &[rat_int(-1), rat_int(0), rat_int(0)])?;
            let report = bdiv_roundtrip_check(&f, &[])?;
            ensure(
                report.matches,
                format!("{} of {} profile values drifted", report.mismatches.len(), report.checked),
            )
        }),
        ("ratio_slice_matches_brute_force", |seed| {
            let mut s = Sampler::new(seed ^ 0x57);
            for _ in 0..6 {
                let gens: Vec<(u64, u64)> =
                    (0..3).map(|_| (s.below(3) + 1, s.below(4))).collect();
                let semigroup = BidegreeSemigroup::new(gens.clone())?;
                let all = semigroup.enumerate(12);
                let (gk, gm) = gens[s.below(3) as usize];
                let n = Rat::new(BigInt::from(gm), BigInt::from(gk));
                for k in 1..=12u64 {
                    for m in 0..=(12 - k) {
                        let ratio = Rat::new(BigInt::from(m), BigInt::from(k));
                        let brute = ratio == n && all.contains(&(k, m));
                        ensure(
                            slice_contains(&semigroup, &n, (k, m))? == brute,
                            format!("slice membership disagrees at ({k}, {m})"),
                        )?;
                    }
                }
            }
            Ok(())
        }),
    ]
}

fn siegel_checks() -> Vec<Check> {
    vec![
        ("standard_decomposition_is_admissible", |_| {
            let report = admissibility_check(&standard_decomposition_g1())?;
            ensure(report.items.len() == 6, "the battery must run six items")?;
            ensure(
                report.pass(),
                format!("admissibility failed: {:?}", report.first_failure()),
            )
        }),
        ("descent_is_certified_not_cartier", |_| {
            let dec = standard_decomposition_g1();
            let phi = sufficiently_negative_builder(&dec)?;
            ensure(phi.is_admissible(), "the built function must be admissible")?;
            for m in 1..=3u64 {
                let outcome = cartier_diagnostic(m, &phi, &dec, 1)?;
                let CartierOutcome::NotCartier { witness } = outcome else {
                    return Err(Error::CrossCheck(format!(
                        "the descended function at index {m} was not refuted"
                    )));
                };
                let oracle = descended_function(m, &phi, &dec)?;
                ensure(
                    witness.verify(&oracle)?,
                    format!("the witness at index {m} failed verification"),
                )?;
            }
            Ok(())
        }),
        ("action_satisfies_the_group_laws", |seed| {
            let mut s = Sampler::new(seed ^ 0xAC);
            for genus in [1usize, 2] {
                for _ in 0..12 {
                    let omega = s.pd_matrix(genus, 3, 2);
                    let zeta = s.rat_vec(genus, 3, 2);
                    let beta = omega.matvec(&zeta)?;
                    let p = SiegelPoint::new(omega, beta)?;
                    let g1 = random_element(&mut s, genus)?;
                    let g2 = random_element(&mut s, genus)?;
                    ensure(
                        act(&g1, &act(&g2, &p)?)? == act(&g1.compose(&g2)?, &p)?,
                        "the action must respect composition",
                    )?;
                    let inv = g1.inverse()?;
                    ensure(act(&inv, &act(&g1, &p)?)? == p, "the inverse must undo the action")?;
                    ensure(g1.compose(&inv)?.is_identity(), "an element times its inverse is trivial")?;
                }
            }
            Ok(())
        }),
        ("translation_law_extends_the_builder", |_| {
            let dec = standard_decomposition_g1();
            let phi = sufficiently_negative_builder(&dec)?;
            for lambda in -2i64..=2 {
                let gamma = GroupElement::translation(vec![rat_int(lambda)])?;
                for q in [
                    SiegelPoint::g1(Rat::one(), Rat::zero())?,
                    SiegelPoint::g1(Rat::one(), Rat::one())?,
                ] {
                    let moved = act(&gamma, &q)?;
                    let drop = extended_value(&phi, &dec, &q)? - extended_value(&phi, &dec, &moved)?;
                    ensure(
                        drop == translation_defect(&gamma, &q)?,
                        format!("the translation law fails at shift {lambda}"),
                    )?;
                }
            }
            for j in -2i64..=3 {
                let q = SiegelPoint::g1(Rat::one(), rat_int(j))?;
                ensure(
                    extended_value(&phi, &dec, &q)? == rat_int(-j * j),
                    format!("the extension misses the square growth at {j}"),
                )?;
            }
            Ok(())
        }),
        ("vanishing_orders_match_the_chart_model", |_| {
            let dec = standard_decomposition_g1();
            let phi = sufficiently_negative_builder(&dec)?;
            let u = SiegelPoint::g1(rat_int(2), Rat::one())?;
            ensure(
                lelong_at_ray(1, &phi, &dec, &u)? == rat(1, 2),
                "the vanishing order at (2, 1) must be 1/2",
            )?;
            for m in 1..=3u64 {
                let chart = chart_model_oracle(m, &phi, &dec)?;
                let nu = lelong_number(&chart, &[BigInt::one(), BigInt::one()])?;
                ensure(
                    nu == lelong_at_ray(m, &phi, &dec, &u)?,
                    format!("the chart model disagrees at index {m}"),
                )?;
            }
            Ok(())
        }),
    ]
}

fn random_element(s: &mut Sampler, genus: usize) -> Result<GroupElement> {
    let a = s.unimodular(genus);
    let lambda: Vec<Rat> = (0..genus).map(|_| rat_int(s.int_in(-2, 2))).collect();
    GroupElement::new(a, lambda)
}

fn growth_checks() -> Vec<Check> {
    vec![
        ("closed_forms_agree_on_a_grid", |_| {
            for genus in 1..=4 {
                for k in 1..=2 {
                    for m in 1..=2 {
                        for index in 1..=2 {
                            for minus_id in [false, true] {
                                let wi = WeightIndex::new(genus, k, m, index, minus_id)?;
                                let degree = closed_forms(&wi)?;
                                ensure(
                                    degree.degree().pi_pow() == 0,
                                    "degrees must be rational",
                                )?;
                                ensure(
                                    degree.degree().coeff().is_positive(),
                                    "degrees must be positive",
                                )?;
                            }
                        }
                    }
                }
            }
            Ok(())
        }),
        ("pinned_degrees", |_| {
            let base = closed_forms(&WeightIndex::new(1, 1, 1, 1, false)?)?;
            ensure(base.degree().coeff() == &rat(1, 6), "the genus one base degree is 1/6")?;
            for k in 1..=2u64 {
                for m in 1..=2u64 {
                    let report = closed_forms(&WeightIndex::new(2, k, m, 1, false)?)?;
                    let want = rat((m * m * k * k * k) as i64, 36);
                    ensure(
                        report.degree().coeff() == &want,
                        format!("the genus two degree is off at k = {k}, m = {m}"),
                    )?;
                }
            }
            let unit = closed_forms(&WeightIndex::new(1, 2, 3, 1, false)?)?;
            ensure(unit.degree().coeff() == &rat_int(1), "weight two index three must give one")?;
            let indexed = closed_forms(&WeightIndex::new(1, 1, 1, 24, false)?)?;
            ensure(indexed.degree().coeff() == &rat_int(4), "index 24 must give four")
        }),
        ("volumes_are_pinned", |_| {
            let v1 = siegel_volume(1);
            ensure(
                v1.coeff() == &rat(1, 3) && v1.pi_pow() == 1,
                "the genus one volume must be pi/3",
            )?;
            let v2 = siegel_volume(2);
            ensure(
                v2.coeff() == &rat(1, 270) && v2.pi_pow() == 3,
                "the genus two volume must be pi^3/270",
            )?;
            for genus in 1..=6 {
                ensure(
                    siegel_volume(genus).coeff().is_positive(),
                    format!("the genus {genus} volume must be positive"),
                )?;
            }
            Ok(())
        }),
        ("table_reproduces_quadratic_growth", |_| {
            let wi = WeightIndex::new(1, 1, 1, 1, false)?;
            let rows = asymptotic_table(&wi, &[0, 6, 12, 24])?;
            let want = [rat_int(0), rat_int(3), rat_int(12), rat_int(48)];
            for ((level, predicted), want) in rows.iter().zip(&want) {
                ensure(
                    predicted.pi_pow() == 0 && predicted.coeff() == want,
                    format!("the predicted dimension at level {level} is off"),
                )?;
            }
            ensure(trivial_dims(0, 0) == Some(1), "weight zero index zero holds constants")?;
            ensure(trivial_dims(0, 5) == Some(0), "weight zero positive index is empty")?;
            ensure(trivial_dims(-1, 2) == Some(0), "negative weight is empty")?;
            ensure(trivial_dims(4, 1).is_none(), "positive weight stays undetermined")
        }),
    ]
}
