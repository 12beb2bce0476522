//! Thin command-line front end over the `fanfare` library.
//!
//! Every verb maps to one library pipeline and prints a single JSON
//! document, or CSV where the output is a table. Exit code 0 means
//! success, 2 flags a certified negative finding (a descended function
//! that is provably not piecewise linear, a decomposition that fails the
//! admissibility checker), and 1 covers usage and computation errors.

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde_json as json;

use fanfare::conical::{toric_degree, PLConicalFunction};
use fanfare::exact::{fmt_rat, parse_rat, Rat};
use fanfare::growth::{asymptotic_table, closed_forms, table_csv, WeightIndex};
use fanfare::recession::{default_tol, recession};
use fanfare::series::{
    okounkov_body, ratio_filter, slice_contains, volume, BidegreeSemigroup, MonomialGradedSeries,
};
use fanfare::siegel::{
    admissibility_check, cartier_diagnostic, lelong_at_ray, standard_decomposition_g1,
    sufficiently_negative_builder, AdmissibleDecomposition, SiegelPoint,
};
use fanfare::wire::{
    AsymptoticsDto, CartierDto, CheckReportDto, DecompositionDto, DegreeDto, FanDto, LelongDto,
    OkounkovDto, OracleDto, PlDto, RatioFilterDto, RecessionDto, SelftestDto, SeriesDto,
    VolumeReportDto,
};

const EXIT_NEGATIVE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "fanfare",
    version,
    about = "Exact toroidal b-divisor combinatorics",
    after_help = "The FANFARE_PREC_BITS environment variable sets the working precision of \
                  decimal fallbacks in bits (default 200)."
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Verb {
    /// Closed-form asymptotic dimension of fixed-ratio Jacobi forms.
    Asymdim {
        /// Genus.
        #[arg(long)]
        g: usize,
        /// Weight scale of the modular direction.
        #[arg(long)]
        k: u64,
        /// Weight scale of the index direction.
        #[arg(long)]
        m: u64,
        /// Index of the arithmetic subgroup.
        #[arg(long)]
        index: u64,
        /// Halve the count by the minus-identity factor.
        #[arg(long)]
        minus_id: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Largest level of the CSV growth table.
        #[arg(long, default_value_t = 24)]
        lmax: u64,
    },
    /// Exact toric degree of a concave piecewise linear function.
    Degree {
        /// Fan description file.
        #[arg(long)]
        fan: PathBuf,
        /// Ray values (a JSON array) or a full piecewise linear object.
        #[arg(long)]
        pl: PathBuf,
    },
    /// Test the descended invariant function for piecewise linearity.
    CartierTest {
        /// Genus.
        #[arg(long, default_value_t = 1)]
        g: usize,
        /// Index of the line bundle twist.
        #[arg(long)]
        m: u64,
        /// `standard` or a path to a decomposition file.
        #[arg(long, default_value = "standard")]
        dec: String,
        /// Subdivision depth to probe before giving up.
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Recession value of a convex oracle along a direction.
    Recession {
        /// Oracle description file.
        #[arg(long)]
        oracle: PathBuf,
        /// Direction, comma-separated rationals.
        #[arg(long)]
        dir: String,
        /// Basepoint, comma-separated rationals; defaults to the domain corner.
        #[arg(long)]
        base: Option<String>,
        /// Convergence tolerance.
        #[arg(long)]
        tol: Option<String>,
    },
    /// Vanishing order of the descended function along a divisor.
    Lelong {
        /// Genus.
        #[arg(long, default_value_t = 1)]
        g: usize,
        /// Index of the line bundle twist.
        #[arg(long)]
        m: u64,
        /// `standard` or a path to a decomposition file.
        #[arg(long, default_value = "standard")]
        dec: String,
        /// Flattened coordinates of the primitive lattice point, comma-separated.
        #[arg(long)]
        ray: String,
    },
    /// Normalized dimension sequence of the section series of a fan divisor.
    ToricVolume {
        /// Fan description file.
        #[arg(long)]
        fan: PathBuf,
        /// Ray values (a JSON array) or a full piecewise linear object.
        #[arg(long)]
        pl: PathBuf,
        /// Deepest level of the sequence.
        #[arg(long, default_value_t = 20)]
        lmax: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Inner approximation of the Okounkov body of a graded series.
    Okounkov {
        /// Series description file with explicit generators.
        #[arg(long, conflicts_with_all = ["fan", "pl"])]
        series: Option<PathBuf>,
        /// Fan description file, paired with --pl.
        #[arg(long, requires = "pl")]
        fan: Option<PathBuf>,
        /// Ray values (a JSON array) or a full piecewise linear object.
        #[arg(long)]
        pl: Option<PathBuf>,
        /// Flag basis rows, such as `1,0;0,1`; defaults to the standard basis.
        #[arg(long)]
        flag: Option<String>,
        /// Deepest degree scanned for valuation points.
        #[arg(long, default_value_t = 10)]
        lmax: u64,
    },
    /// Run the admissibility checker on a cone decomposition.
    Admissibility {
        /// Genus.
        #[arg(long, default_value_t = 1)]
        g: usize,
        /// `standard` or a path to a decomposition file.
        #[arg(long, default_value = "standard")]
        dec: String,
    },
    /// Generators and membership of a fixed-ratio slice of a bidegree semigroup.
    RatioFilter {
        /// Generators as `k:m` pairs, comma-separated.
        #[arg(long)]
        gens: String,
        /// Target ratio `m/k` as a rational.
        #[arg(long)]
        ratio: String,
        /// Optional membership query, one `k:m` pair.
        #[arg(long)]
        point: Option<String>,
    },
    /// Run the cross-module invariant battery.
    Selftest {
        /// Seed for the sampled checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.verb) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(verb: Verb) -> Result<u8, Box<dyn Error>> {
    match verb {
        Verb::Asymdim {
            g,
            k,
            m,
            index,
            minus_id,
            format,
            lmax,
        } => {
            let wi = WeightIndex::new(g, k, m, index, minus_id)?;
            match format {
                Format::Json => {
                    let report = closed_forms(&wi)?;
                    emit(&AsymptoticsDto::from_report(&report)?)?;
                }
                Format::Csv => {
                    let levels: Vec<u64> = (0..=lmax).collect();
                    print!("{}", table_csv(&asymptotic_table(&wi, &levels)?));
                }
            }
            Ok(0)
        }
        Verb::Degree { fan, pl } => {
            let f = load_pl(Some(&fan), &pl)?;
            let rank = f.complex().rank();
            emit(&DegreeDto {
                rank,
                degree: fmt_rat(&toric_degree(&f, rank)?),
            })?;
            Ok(0)
        }
        Verb::CartierTest { g, m, dec, depth } => {
            let dec = load_decomposition(g, &dec)?;
            let phi = sufficiently_negative_builder(&dec)?;
            let outcome = cartier_diagnostic(m, &phi, &dec, depth)?;
            let certified = outcome.is_certified();
            emit(&CartierDto::from_outcome(m, &outcome)?)?;
            Ok(if certified { EXIT_NEGATIVE } else { 0 })
        }
        Verb::Recession {
            oracle,
            dir,
            base,
            tol,
        } => {
            let dto: OracleDto = load_json(&oracle)?;
            let oracle = dto.to_oracle()?;
            let y = parse_rats(&dir)?;
            let x = match base {
                Some(b) => parse_rats(&b)?,
                None => oracle.domain().basepoint(),
            };
            let tol = match tol {
                Some(t) => parse_rat(&t)?,
                None => default_tol(),
            };
            let result = recession(&oracle, &x, &y, &tol)?;
            emit(&RecessionDto::from_result(&result))?;
            Ok(0)
        }
        Verb::Lelong { g, m, dec, ray } => {
            let dec = load_decomposition(g, &dec)?;
            let phi = sufficiently_negative_builder(&dec)?;
            let coords = parse_ints(&ray)?;
            let flat: Vec<Rat> = coords.iter().map(|&c| Rat::from_integer(c.into())).collect();
            let u = SiegelPoint::from_flat(g, &flat)?;
            let order = lelong_at_ray(m, &phi, &dec, &u)?;
            emit(&LelongDto {
                m,
                ray: coords,
                vanishing_order: fmt_rat(&order),
            })?;
            Ok(0)
        }
        Verb::ToricVolume {
            fan,
            pl,
            lmax,
            format,
        } => {
            let f = load_pl(Some(&fan), &pl)?;
            let series = MonomialGradedSeries::from_polytope(f.polytope()?);
            let report = volume(&series, lmax)?;
            let dto = VolumeReportDto::from_report(&report);
            match format {
                Format::Json => emit(&dto)?,
                Format::Csv => {
                    println!("level,normalized_dimension");
                    for (level, value) in &dto.sequence {
                        println!("{level},{value}");
                    }
                }
            }
            Ok(0)
        }
        Verb::Okounkov {
            series,
            fan,
            pl,
            flag,
            lmax,
        } => {
            let series = match (series, pl) {
                (Some(path), None) => load_json::<SeriesDto>(&path)?.to_series()?,
                (None, Some(pl)) => {
                    let f = load_pl(fan.as_ref(), &pl)?;
                    MonomialGradedSeries::from_polytope(f.polytope()?)
                }
                _ => return Err("pass either --series or --pl".into()),
            };
            let flag = match flag {
                Some(s) => parse_flag_rows(&s)?,
                None => standard_flag(series.rank()),
            };
            let body = okounkov_body(&series, &flag, lmax)?;
            emit(&OkounkovDto::from_body(&body)?)?;
            Ok(0)
        }
        Verb::Admissibility { g, dec } => {
            let dec = load_decomposition(g, &dec)?;
            let report = admissibility_check(&dec)?;
            let pass = report.pass();
            emit(&CheckReportDto::from_report(&report))?;
            Ok(if pass { 0 } else { EXIT_NEGATIVE })
        }
        Verb::RatioFilter { gens, ratio, point } => {
            let semigroup = BidegreeSemigroup::new(parse_pairs(&gens)?)?;
            let n = parse_rat(&ratio)?;
            let mut dto = RatioFilterDto::from_result(&ratio_filter(&semigroup, &n)?);
            if let Some(p) = point {
                let p = parse_pair(&p)?;
                dto.contains = Some(slice_contains(&semigroup, &n, p)?);
                dto.point = Some(p);
            }
            emit(&dto)?;
            Ok(0)
        }
        Verb::Selftest { seed, format } => {
            let reports = fanfare::selftest::run(seed);
            let dto = SelftestDto::from_reports(&reports);
            match format {
                Format::Json => emit(&dto)?,
                Format::Csv => {
                    println!("module,passed,failed");
                    for module in &dto.modules {
                        println!("{},{},{}", module.module, module.passed, module.failed);
                    }
                }
            }
            Ok(if dto.all_passed { 0 } else { 1 })
        }
    }
}

fn emit<T: serde::Serialize>(dto: &T) -> Result<(), Box<dyn Error>> {
    println!("{}", json::to_string(dto)?);
    Ok(())
}

fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, Box<dyn Error>> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

/// Accept either a bare JSON array of ray values, interpolated over the
/// fan passed next to it, or a self-contained piecewise linear object
/// whose embedded fan wins.
fn load_pl(fan: Option<&PathBuf>, pl: &Path) -> Result<PLConicalFunction, Box<dyn Error>> {
    let text = fs::read_to_string(pl).map_err(|e| format!("{}: {e}", pl.display()))?;
    let value: json::Value = json::from_str(&text).map_err(|e| format!("{}: {e}", pl.display()))?;
    if value.is_array() {
        let fan = fan.ok_or("a bare array of ray values needs --fan")?;
        let complex = load_json::<FanDto>(fan)?.to_complex()?;
        let values = json::from_value::<Vec<String>>(value)?
            .iter()
            .map(|s| parse_rat(s))
            .collect::<fanfare::Result<Vec<_>>>()?;
        Ok(PLConicalFunction::from_ray_values(complex, &values)?)
    } else {
        Ok(json::from_value::<PlDto>(value)?.to_function()?)
    }
}

fn load_decomposition(g: usize, source: &str) -> Result<AdmissibleDecomposition, Box<dyn Error>> {
    if source == "standard" {
        if g != 1 {
            return Err("the standard decomposition is defined for genus 1".into());
        }
        return Ok(standard_decomposition_g1());
    }
    let dec = load_json::<DecompositionDto>(Path::new(source))?.to_decomposition()?;
    if dec.genus() != g {
        return Err(format!(
            "the decomposition file has genus {}, the command asked for {g}",
            dec.genus()
        )
        .into());
    }
    Ok(dec)
}

fn parse_rats(s: &str) -> Result<Vec<Rat>, Box<dyn Error>> {
    s.split(',')
        .map(|t| Ok(parse_rat(t.trim())?))
        .collect()
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Box<dyn Error>> {
    s.split(',')
        .map(|t| Ok(t.trim().parse::<i64>()?))
        .collect()
}

fn parse_pair(s: &str) -> Result<(u64, u64), Box<dyn Error>> {
    let (k, m) = s
        .split_once(':')
        .ok_or_else(|| format!("expected `k:m`, got `{s}`"))?;
    Ok((k.trim().parse()?, m.trim().parse()?))
}

fn parse_pairs(s: &str) -> Result<Vec<(u64, u64)>, Box<dyn Error>> {
    s.split(',').map(parse_pair).collect()
}

fn parse_flag_rows(s: &str) -> Result<Vec<Vec<BigInt>>, Box<dyn Error>> {
    s.split(';')
        .map(|row| {
            Ok(parse_ints(row)?
                .into_iter()
                .map(BigInt::from)
                .collect())
        })
        .collect()
}

fn standard_flag(rank: usize) -> Vec<Vec<BigInt>> {
    (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| BigInt::from(u8::from(i == j)))
                .collect()
        })
        .collect()
}
