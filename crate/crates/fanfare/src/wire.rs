//! JSON wire formats for the library's inputs and outputs.
//!
//! Rationals travel as `"p/q"` strings so no precision is lost; pi-scalars
//! as `{"coeff": "p/q", "pi_pow": e}`; fans, piecewise linear data, and
//! decompositions as the schemas consumed by the command-line front end.
//! Every serializer has a matching parser and round-trips exactly.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::conical::{PLConicalFunction, PLWitness};
use crate::exact::{fmt_rat, parse_rat, PiScalar, Rat, RatMatrix};
use crate::fan::{build_complex, ConicalComplex};
use crate::growth::AsymptoticsReport;
use crate::polytope::Hull;
use crate::recession::{
    make_linear_oracle, make_logdet_oracle, make_qol_oracle, BoxDomain, ConvexOracle,
    RecessionResult,
};
use crate::selftest::ModuleReport;
use crate::series::{MonomialGradedSeries, OkounkovBody, RatioFilterResult, VolumeReport};
use crate::siegel::{AdmissibleDecomposition, CartierOutcome, CheckReport};
use crate::{Error, Result};

fn rats_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

fn strings_to_rats(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

fn bigints_to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::invalid("ray entry does not fit the wire integer width"))
        })
        .collect()
}

fn i64s_to_bigints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// A conical complex on the wire: ambient rank, primitive ray vectors, and
/// cones as ray index lists.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FanDto {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

impl FanDto {
    /// Capture a validated complex.
    ///
    /// # Errors
    ///
    /// Fails when a ray entry exceeds the wire integer width.
    pub fn from_complex(complex: &ConicalComplex) -> Result<Self> {
        let rays = complex
            .rays()
            .iter()
            .map(|r| bigints_to_i64(r))
            .collect::<Result<Vec<_>>>()?;
        let cones = complex
            .cones()
            .iter()
            .filter(|c| c.dim() > 0)
            .map(|c| c.ray_indices().to_vec())
            .collect();
        Ok(FanDto {
            rank: complex.rank(),
            rays,
            cones,
        })
    }

    /// Rebuild and revalidate the complex.
    ///
    /// # Errors
    ///
    /// Propagates the complex validation errors.
    pub fn to_complex(&self) -> Result<ConicalComplex> {
        let rays = self.rays.iter().map(|r| i64s_to_bigints(r)).collect();
        build_complex(self.rank, rays, self.cones.clone())
    }
}

/// Piecewise linear conical data on the wire: the underlying fan and one
/// linear form per listed cone, matching the fan's cone order after the
/// automatic zero cone.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PlDto {
    pub fan: FanDto,
    pub forms: Vec<Vec<String>>,
}

impl PlDto {
    /// Capture a piecewise linear function.
    ///
    /// # Errors
    ///
    /// Fails when a ray entry exceeds the wire integer width.
    pub fn from_function(f: &PLConicalFunction) -> Result<Self> {
        Ok(PlDto {
            fan: FanDto::from_complex(f.complex())?,
            forms: f.forms().iter().map(|v| rats_to_strings(v)).collect(),
        })
    }

    /// Rebuild and revalidate the function. Forms may be listed for the
    /// nonzero cones only; the zero cone's form is fixed anyway.
    ///
    /// # Errors
    ///
    /// Propagates parse and validation errors.
    pub fn to_function(&self) -> Result<PLConicalFunction> {
        let complex = self.fan.to_complex()?;
        let mut forms: Vec<Vec<Rat>> = self
            .forms
            .iter()
            .map(|v| strings_to_rats(v))
            .collect::<Result<_>>()?;
        if forms.len() + 1 == complex.cones().len() {
            let zero_at = complex
                .cones()
                .iter()
                .position(|c| c.dim() == 0)
                .expect("a validated complex contains the zero cone");
            forms.insert(zero_at, vec![Rat::from_integer(0.into()); complex.rank()]);
        }
        PLConicalFunction::new(complex, forms)
    }
}

/// A pi-scalar on the wire.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PiScalarDto {
    pub coeff: String,
    pub pi_pow: i64,
}

impl PiScalarDto {
    pub fn from_scalar(v: &PiScalar) -> Self {
        PiScalarDto {
            coeff: fmt_rat(v.coeff()),
            pi_pow: v.pi_pow(),
        }
    }

    /// Parse back into an exact scalar.
    ///
    /// # Errors
    ///
    /// Propagates rational parse errors.
    pub fn to_scalar(&self) -> Result<PiScalar> {
        Ok(PiScalar::new(parse_rat(&self.coeff)?, self.pi_pow))
    }
}

/// Group generators on the wire: unimodular integer matrices and integer
/// translation rows.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupDto {
    #[serde(rename = "A_gens")]
    pub a_gens: Vec<Vec<Vec<i64>>>,
    pub lambda_gens: Vec<Vec<i64>>,
}

/// A decomposition on the wire. Cones are listed as arrays of their
/// generator vectors: form-cone generators as flattened symmetric forms,
/// mixed-cone generators as flattened form-vector pairs.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DecompositionDto {
    pub g: usize,
    pub sigma_cones: Vec<Vec<Vec<i64>>>,
    pub pi_cones: Vec<Vec<Vec<i64>>>,
    pub group: GroupDto,
    #[serde(default = "default_shell_radius")]
    pub shell_radius: usize,
}

fn default_shell_radius() -> usize {
    2
}

fn cones_to_indexed(cones: &[Vec<Vec<i64>>]) -> (Vec<Vec<BigInt>>, Vec<Vec<usize>>) {
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut indexed = Vec::with_capacity(cones.len());
    for cone in cones {
        let mut indices = Vec::with_capacity(cone.len());
        for ray in cone {
            let ray = i64s_to_bigints(ray);
            let idx = match rays.iter().position(|r| *r == ray) {
                Some(i) => i,
                None => {
                    rays.push(ray);
                    rays.len() - 1
                }
            };
            indices.push(idx);
        }
        indexed.push(indices);
    }
    (rays, indexed)
}

fn indexed_to_cones(rays: &[Vec<BigInt>], cones: &[Vec<usize>]) -> Result<Vec<Vec<Vec<i64>>>> {
    cones
        .iter()
        .map(|cone| {
            cone.iter()
                .map(|&i| bigints_to_i64(&rays[i]))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

impl DecompositionDto {
    /// Capture a decomposition.
    ///
    /// # Errors
    ///
    /// Fails when an entry exceeds the wire integer width.
    pub fn from_decomposition(dec: &AdmissibleDecomposition) -> Result<Self> {
        let a_gens = dec
            .basis_gens()
            .iter()
            .map(|a| {
                (0..a.nrows())
                    .map(|i| {
                        a.row(i)
                            .iter()
                            .map(|x| {
                                x.to_integer().to_i64().ok_or_else(|| {
                                    Error::invalid("generator entry does not fit the wire width")
                                })
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let lambda_gens = dec
            .translation_gens()
            .iter()
            .map(|l| {
                l.iter()
                    .map(|x| {
                        x.to_integer().to_i64().ok_or_else(|| {
                            Error::invalid("generator entry does not fit the wire width")
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DecompositionDto {
            g: dec.genus(),
            sigma_cones: indexed_to_cones(dec.sigma_rays(), dec.sigma_cones())?,
            pi_cones: indexed_to_cones(dec.pi_rays(), dec.pi_cones())?,
            group: GroupDto {
                a_gens,
                lambda_gens,
            },
            shell_radius: dec.shell_radius(),
        })
    }

    /// Rebuild the decomposition with the constructor's validation.
    ///
    /// # Errors
    ///
    /// Propagates the decomposition validation errors.
    pub fn to_decomposition(&self) -> Result<AdmissibleDecomposition> {
        let (sigma_rays, sigma_cones) = cones_to_indexed(&self.sigma_cones);
        let (pi_rays, pi_cones) = cones_to_indexed(&self.pi_cones);
        let basis_gens = self
            .group
            .a_gens
            .iter()
            .map(|rows| {
                RatMatrix::from_rows(
                    rows.iter()
                        .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let translation_gens = self
            .group
            .lambda_gens
            .iter()
            .map(|l| l.iter().map(|&x| Rat::from_integer(x.into())).collect())
            .collect();
        AdmissibleDecomposition::new(
            self.g,
            sigma_rays,
            sigma_cones,
            pi_rays,
            pi_cones,
            basis_gens,
            translation_gens,
            self.shell_radius,
        )
    }
}

/// The degree report on the wire: the four routes as exact rational
/// strings (their powers of pi have cancelled) and the volume with its
/// power of pi intact.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AsymptoticsDto {
    pub g: usize,
    pub k: u64,
    pub m: u64,
    pub index: u64,
    pub minus_id: bool,
    #[serde(rename = "formA")]
    pub form_a: String,
    #[serde(rename = "formB")]
    pub form_b: String,
    #[serde(rename = "formC")]
    pub form_c: String,
    pub pipeline: String,
    #[serde(rename = "V_g")]
    pub volume: PiScalarDto,
}

fn rational_scalar(v: &PiScalar) -> Result<String> {
    if v.pi_pow() != 0 {
        return Err(Error::CrossCheck(format!(
            "expected a rational degree, got {v}"
        )));
    }
    Ok(fmt_rat(v.coeff()))
}

impl AsymptoticsDto {
    /// Capture a degree report.
    ///
    /// # Errors
    ///
    /// [`Error::CrossCheck`] when a degree entry still carries a power of
    /// pi, which the closed-form cross-check rules out.
    pub fn from_report(report: &AsymptoticsReport) -> Result<Self> {
        Ok(AsymptoticsDto {
            g: report.weight.genus(),
            k: report.weight.k(),
            m: report.weight.m(),
            index: report.weight.index(),
            minus_id: report.weight.minus_id(),
            form_a: rational_scalar(&report.form_a)?,
            form_b: rational_scalar(&report.form_b)?,
            form_c: rational_scalar(&report.form_c)?,
            pipeline: rational_scalar(&report.pipeline)?,
            volume: PiScalarDto::from_scalar(&report.volume),
        })
    }
}

/// A non-additivity witness on the wire: the three points, their values,
/// and the generators of the cone containing them.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct WitnessDto {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
    pub value_x: String,
    pub value_y: String,
    pub value_z: String,
    pub cone: Vec<Vec<i64>>,
}

impl WitnessDto {
    /// Capture a verified witness.
    ///
    /// # Errors
    ///
    /// Fails when a cone generator exceeds the wire integer width.
    pub fn from_witness(w: &PLWitness) -> Result<Self> {
        Ok(WitnessDto {
            x: rats_to_strings(&w.x),
            y: rats_to_strings(&w.y),
            z: rats_to_strings(&w.z),
            value_x: fmt_rat(&w.value_x),
            value_y: fmt_rat(&w.value_y),
            value_z: fmt_rat(&w.value_z),
            cone: w
                .cone
                .iter()
                .map(|r| bigints_to_i64(r))
                .collect::<Result<_>>()?,
        })
    }
}

/// An itemized checker report on the wire.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckReportDto {
    pub pass: bool,
    pub items: Vec<CheckItemDto>,
}

/// One item of a checker report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckItemDto {
    pub item: usize,
    pub label: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckReportDto {
    pub fn from_report(report: &CheckReport) -> Self {
        CheckReportDto {
            pass: report.pass(),
            items: report
                .items
                .iter()
                .map(|it| CheckItemDto {
                    item: it.item,
                    label: it.label.clone(),
                    pass: it.pass,
                    witness: it.witness.clone(),
                })
                .collect(),
        }
    }
}

fn matrix_to_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.nrows()).map(|i| rats_to_strings(m.row(i))).collect()
}

fn strings_to_matrix(rows: &[Vec<String>]) -> Result<RatMatrix> {
    RatMatrix::from_rows(
        rows.iter()
            .map(|r| strings_to_rats(r))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// A convex oracle description on the wire, dispatched by `kind`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleDto {
    /// Negated log-determinant of a weighted matrix sum.
    Logdet { omegas: Vec<Vec<Vec<String>>> },
    /// Quadratic-over-linear form with one weight vector per matrix.
    Qol {
        omegas: Vec<Vec<Vec<String>>>,
        zetas: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lipschitz: Option<String>,
    },
    /// Affine function on a nonnegative orthant shifted to `corner`.
    Linear {
        coeffs: Vec<String>,
        constant: String,
        #[serde(default)]
        corner: Option<String>,
    },
}

impl OracleDto {
    /// Describe a log-determinant oracle over the given matrices.
    #[must_use]
    pub fn logdet(omegas: &[RatMatrix]) -> Self {
        OracleDto::Logdet {
            omegas: omegas.iter().map(matrix_to_strings).collect(),
        }
    }

    /// Describe a quadratic-over-linear oracle.
    #[must_use]
    pub fn qol(omegas: &[RatMatrix], zetas: &[Vec<Rat>], lipschitz: Option<&Rat>) -> Self {
        OracleDto::Qol {
            omegas: omegas.iter().map(matrix_to_strings).collect(),
            zetas: zetas.iter().map(|z| rats_to_strings(z)).collect(),
            lipschitz: lipschitz.map(fmt_rat),
        }
    }

    /// Describe an affine oracle on the orthant shifted to `corner`.
    #[must_use]
    pub fn linear(coeffs: &[Rat], constant: &Rat, corner: Option<&Rat>) -> Self {
        OracleDto::Linear {
            coeffs: rats_to_strings(coeffs),
            constant: fmt_rat(constant),
            corner: corner.map(fmt_rat),
        }
    }

    /// Build the described oracle.
    ///
    /// # Errors
    ///
    /// Parse failures and the constructors' own validation propagate.
    pub fn to_oracle(&self) -> Result<ConvexOracle> {
        match self {
            OracleDto::Logdet { omegas } => {
                let omegas = omegas
                    .iter()
                    .map(|m| strings_to_matrix(m))
                    .collect::<Result<Vec<_>>>()?;
                make_logdet_oracle(omegas)
            }
            OracleDto::Qol {
                omegas,
                zetas,
                lipschitz,
            } => {
                let omegas = omegas
                    .iter()
                    .map(|m| strings_to_matrix(m))
                    .collect::<Result<Vec<_>>>()?;
                let zetas = zetas
                    .iter()
                    .map(|z| strings_to_rats(z))
                    .collect::<Result<Vec<_>>>()?;
                let lipschitz = lipschitz.as_deref().map(parse_rat).transpose()?;
                make_qol_oracle(omegas, zetas, lipschitz)
            }
            OracleDto::Linear {
                coeffs,
                constant,
                corner,
            } => {
                let coeffs = strings_to_rats(coeffs)?;
                let corner = corner
                    .as_deref()
                    .map(parse_rat)
                    .transpose()?
                    .unwrap_or_else(Rat::zero);
                let domain = BoxDomain::orthant(coeffs.len(), corner);
                make_linear_oracle(domain, coeffs, parse_rat(constant)?)
            }
        }
    }
}

/// A recession computation on the wire.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RecessionDto {
    pub direction: Vec<String>,
    pub value: String,
    pub lambda: String,
    pub error_bound: String,
}

impl RecessionDto {
    pub fn from_result(r: &RecessionResult) -> Self {
        RecessionDto {
            direction: rats_to_strings(&r.direction),
            value: fmt_rat(&r.value),
            lambda: fmt_rat(&r.lambda),
            error_bound: fmt_rat(&r.error_bound),
        }
    }
}

/// A generator presentation of a monomial graded series on the wire:
/// pairs of exponent vector and degree.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesDto {
    pub rank: usize,
    pub generators: Vec<(Vec<i64>, u64)>,
}

impl SeriesDto {
    /// Validate into a series.
    ///
    /// # Errors
    ///
    /// The series constructor's validation propagates.
    pub fn to_series(&self) -> Result<MonomialGradedSeries> {
        MonomialGradedSeries::from_generators(
            self.rank,
            self.generators
                .iter()
                .map(|(e, d)| (i64s_to_bigints(e), *d))
                .collect(),
        )
    }
}

/// A normalized dimension sequence on the wire.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VolumeReportDto {
    pub rank: usize,
    pub sequence: Vec<(u64, String)>,
    pub extrapolated: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

impl VolumeReportDto {
    pub fn from_report(report: &VolumeReport) -> Self {
        VolumeReportDto {
            rank: report.rank,
            sequence: report
                .sequence
                .iter()
                .map(|(l, v)| (*l, fmt_rat(v)))
                .collect(),
            extrapolated: fmt_rat(&report.extrapolated),
            exact: report.exact.as_ref().map(fmt_rat),
        }
    }
}

/// An Okounkov body approximation on the wire: the flag, the probed
/// depth, the exact volume, and the hull as a vertex list when it is
/// full-dimensional.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct OkounkovDto {
    pub flag: Vec<Vec<i64>>,
    pub l_max: u64,
    pub volume: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine_dim: Option<usize>,
}

impl OkounkovDto {
    /// Capture a computed body.
    ///
    /// # Errors
    ///
    /// Fails when a flag entry exceeds the wire integer width or vertex
    /// enumeration fails.
    pub fn from_body(body: &OkounkovBody) -> Result<Self> {
        let (vertices, affine_dim) = match &body.hull {
            Hull::Full(p) => (
                Some(p.vertices()?.iter().map(|v| rats_to_strings(v)).collect()),
                None,
            ),
            Hull::LowerDim { affine_dim } => (None, Some(*affine_dim)),
            Hull::Empty => (None, Some(0)),
        };
        Ok(OkounkovDto {
            flag: body
                .flag
                .iter()
                .map(|r| bigints_to_i64(r))
                .collect::<Result<_>>()?,
            l_max: body.l_max,
            volume: fmt_rat(&body.volume()?),
            vertices,
            affine_dim,
        })
    }
}

/// A ratio slice on the wire, with an optional membership answer.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RatioFilterDto {
    pub slice_generators: Vec<(u64, u64)>,
    pub bounded_ratio: bool,
    pub max_ratio: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<(u64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contains: Option<bool>,
}

impl RatioFilterDto {
    pub fn from_result(r: &RatioFilterResult) -> Self {
        RatioFilterDto {
            slice_generators: r.slice_generators.clone(),
            bounded_ratio: r.bounded_ratio,
            max_ratio: fmt_rat(&r.max_ratio),
            point: None,
            contains: None,
        }
    }
}

/// A piecewise-linearity verdict on the wire. `result` is `NOT_CARTIER`
/// with the witness attached, or `INCONCLUSIVE` with the tested depth.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CartierDto {
    pub result: String,
    pub m: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth_tested: Option<usize>,
}

impl CartierDto {
    /// Capture a diagnostic outcome.
    ///
    /// # Errors
    ///
    /// Fails when the witness cone exceeds the wire integer width.
    pub fn from_outcome(m: u64, outcome: &CartierOutcome) -> Result<Self> {
        Ok(match outcome {
            CartierOutcome::NotCartier { witness } => CartierDto {
                result: "NOT_CARTIER".into(),
                m,
                witness: Some(WitnessDto::from_witness(witness)?),
                depth_tested: None,
            },
            CartierOutcome::Inconclusive { depth_tested } => CartierDto {
                result: "INCONCLUSIVE".into(),
                m,
                witness: None,
                depth_tested: Some(*depth_tested),
            },
        })
    }
}

/// An exact toric degree on the wire.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DegreeDto {
    pub rank: usize,
    pub degree: String,
}

/// A vanishing order on the wire.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LelongDto {
    pub m: u64,
    pub ray: Vec<i64>,
    pub vanishing_order: String,
}

/// One module's selftest counts on the wire.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleReportDto {
    pub module: String,
    pub passed: usize,
    pub failed: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<(String, String)>,
}

/// The whole selftest run on the wire.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SelftestDto {
    pub all_passed: bool,
    pub modules: Vec<ModuleReportDto>,
}

impl SelftestDto {
    pub fn from_reports(reports: &[ModuleReport]) -> Self {
        SelftestDto {
            all_passed: crate::selftest::all_passed(reports),
            modules: reports
                .iter()
                .map(|r| ModuleReportDto {
                    module: r.module.to_string(),
                    passed: r.passed,
                    failed: r.failed(),
                    failures: r.failures.clone(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conical::quadrant_fan;
    use crate::exact::rat;
    use crate::growth::{closed_forms, WeightIndex};
    use crate::siegel::standard_decomposition_g1;

    #[test]
    fn fans_round_trip() {
        let complex = quadrant_fan().unwrap();
        let dto = FanDto::from_complex(&complex).unwrap();
        let json = serde_json::to_string(&dto).unwrap();
        let back: FanDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back, dto);
        let rebuilt = back.to_complex().unwrap();
        assert_eq!(rebuilt.rays(), complex.rays());
        assert_eq!(rebuilt.cones().len(), complex.cones().len());
    }

    #[test]
    fn pl_functions_round_trip() {
        let complex = quadrant_fan().unwrap();
        let values = vec![rat(1, 2), rat(-3, 1), rat(0, 1), rat(7, 5)];
        let f = PLConicalFunction::from_ray_values(complex, &values).unwrap();
        let dto = PlDto::from_function(&f).unwrap();
        let json = serde_json::to_string(&dto).unwrap();
        let back: PlDto = serde_json::from_str(&json).unwrap();
        let g = back.to_function().unwrap();
        for x in [vec![rat(1, 1), rat(0, 1)], vec![rat(2, 3), rat(5, 7)]] {
            assert_eq!(f.eval(&x).unwrap(), g.eval(&x).unwrap());
        }
    }

    #[test]
    fn pl_parser_accepts_nonzero_cone_forms_only() {
        let complex = quadrant_fan().unwrap();
        let f = PLConicalFunction::from_ray_values(
            complex,
            &[rat(1, 1), rat(2, 1), rat(1, 1), rat(2, 1)],
        )
        .unwrap();
        let mut dto = PlDto::from_function(&f).unwrap();
        let zero_at = dto
            .forms
            .iter()
            .position(|form| form.iter().all(|s| s == "0"))
            .unwrap();
        dto.forms.remove(zero_at);
        let g = dto.to_function().unwrap();
        assert_eq!(
            g.eval(&[rat(1, 1), rat(1, 1)]).unwrap(),
            f.eval(&[rat(1, 1), rat(1, 1)]).unwrap()
        );
    }

    #[test]
    fn pi_scalars_round_trip() {
        let v = PiScalar::new(rat(-7, 270), 3);
        let dto = PiScalarDto::from_scalar(&v);
        let json = serde_json::to_string(&dto).unwrap();
        assert_eq!(json, r#"{"coeff":"-7/270","pi_pow":3}"#);
        let back: PiScalarDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_scalar().unwrap(), v);
    }

    #[test]
    fn decompositions_round_trip() {
        let dec = standard_decomposition_g1();
        let dto = DecompositionDto::from_decomposition(&dec).unwrap();
        let json = serde_json::to_string(&dto).unwrap();
        let back: DecompositionDto = serde_json::from_str(&json).unwrap();
        let rebuilt = back.to_decomposition().unwrap();
        assert_eq!(rebuilt.genus(), 1);
        assert_eq!(rebuilt.pi_rays(), dec.pi_rays());
        assert_eq!(rebuilt.pi_cones(), dec.pi_cones());
        assert_eq!(rebuilt.shell_radius(), dec.shell_radius());
    }

    #[test]
    fn decomposition_shell_radius_defaults() {
        let json = r#"{
            "g": 1,
            "sigma_cones": [[[1]]],
            "pi_cones": [[[1,0]],[[1,1]],[[1,0],[1,1]]],
            "group": {"A_gens": [], "lambda_gens": [[1]]}
        }"#;
        let dto: DecompositionDto = serde_json::from_str(json).unwrap();
        assert_eq!(dto.shell_radius, 2);
        let dec = dto.to_decomposition().unwrap();
        assert_eq!(dec.pi_rays().len(), 2);
    }

    #[test]
    fn degree_reports_serialize_with_exact_strings() {
        let wi = WeightIndex::new(1, 1, 1, 1, false).unwrap();
        let report = closed_forms(&wi).unwrap();
        let dto = AsymptoticsDto::from_report(&report).unwrap();
        assert_eq!(dto.form_a, "1/6");
        assert_eq!(dto.volume.coeff, "1/3");
        assert_eq!(dto.volume.pi_pow, 1);
        let json = serde_json::to_string(&dto).unwrap();
        assert!(json.contains(r#""formA":"1/6""#));
        assert!(json.contains(r#""V_g""#));
        let back: AsymptoticsDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back, dto);
    }

    #[test]
    fn oracle_descriptions_build_and_round_trip() {
        let dto = OracleDto::logdet(&[RatMatrix::identity(2)]);
        let json = serde_json::to_string(&dto).unwrap();
        assert!(json.contains(r#""kind":"logdet""#));
        let back: OracleDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back, dto);
        let oracle = dto.to_oracle().unwrap();
        assert_eq!(oracle.eval(&[rat(1, 1)]).unwrap(), Rat::zero());

        let qol: OracleDto = serde_json::from_str(
            r#"{"kind":"qol","omegas":[[["1"]],[["1"]]],"zetas":[["0"],["1"]]}"#,
        )
        .unwrap();
        let oracle = qol.to_oracle().unwrap();
        assert_eq!(oracle.eval(&[rat(1, 1), rat(1, 1)]).unwrap(), rat(1, 2));

        let linear: OracleDto = serde_json::from_str(
            r#"{"kind":"linear","coeffs":["-1","-2"],"constant":"0"}"#,
        )
        .unwrap();
        let oracle = linear.to_oracle().unwrap();
        assert_eq!(oracle.eval(&[rat(1, 1), rat(1, 1)]).unwrap(), rat(-3, 1));
    }

    #[test]
    fn series_and_ratio_results_round_trip() {
        let dto = SeriesDto {
            rank: 2,
            generators: vec![(vec![1, 0], 1), (vec![0, 2], 1)],
        };
        let series = dto.to_series().unwrap();
        let json = serde_json::to_string(&dto).unwrap();
        let back: SeriesDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back, dto);
        let report = crate::series::volume(&series, 4).unwrap();
        let report_dto = VolumeReportDto::from_report(&report);
        let json = serde_json::to_string(&report_dto).unwrap();
        let back: VolumeReportDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report_dto);

        let semigroup = crate::series::BidegreeSemigroup::new(vec![(1, 0), (1, 1)]).unwrap();
        let filtered =
            crate::series::ratio_filter(&semigroup, &Rat::from_integer(1.into())).unwrap();
        let mut dto = RatioFilterDto::from_result(&filtered);
        dto.point = Some((2, 2));
        dto.contains = Some(true);
        let json = serde_json::to_string(&dto).unwrap();
        let back: RatioFilterDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back, dto);
        assert_eq!(dto.slice_generators, vec![(1, 1)]);
        assert_eq!(dto.max_ratio, "1");
    }

    #[test]
    fn selftest_reports_serialize_per_module() {
        let reports = vec![
            ModuleReport {
                module: "exact",
                passed: 3,
                failures: Vec::new(),
            },
            ModuleReport {
                module: "fan",
                passed: 1,
                failures: vec![("a_check".into(), "broke".into())],
            },
        ];
        let dto = SelftestDto::from_reports(&reports);
        assert!(!dto.all_passed);
        let json = serde_json::to_string(&dto).unwrap();
        assert!(json.contains(r#""module":"exact""#));
        let back: SelftestDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back, dto);
        assert_eq!(back.modules[1].failed, 1);
    }
}
