//! Comparison against the committed fixtures, which are produced by an
//! independent exact-arithmetic generator (`tools/gen_fixtures.py`).

use std::collections::BTreeMap;

use serde::Deserialize;

use fanfare::exact::{bernoulli, parse_rat, rat_int, zeta_negative, Rat};
use fanfare::growth::{closed_forms, siegel_volume, WeightIndex};
use fanfare::polytope::HPolytope;

const BERNOULLI: &str = include_str!("fixtures/bernoulli.json");
const ZETA: &str = include_str!("fixtures/zeta_negative.json");
const EHRHART: &str = include_str!("fixtures/ehrhart.json");
const DEGREES: &str = include_str!("fixtures/degree_grid.json");
const VOLUMES: &str = include_str!("fixtures/siegel_volumes.json");

#[derive(Deserialize)]
struct ValueTable {
    values: BTreeMap<String, String>,
}

fn parse_table(raw: &str) -> BTreeMap<usize, Rat> {
    let table: ValueTable = serde_json::from_str(raw).expect("fixture parses");
    table
        .values
        .into_iter()
        .map(|(k, v)| (k.parse().unwrap(), parse_rat(&v).unwrap()))
        .collect()
}

#[test]
fn bernoulli_numbers_match_the_fixture() {
    let table = parse_table(BERNOULLI);
    assert_eq!(table.len(), 16);
    for (n, want) in table {
        assert_eq!(bernoulli(n), want, "B_{n}");
    }
}

#[test]
fn zeta_values_match_the_fixture() {
    let table = parse_table(ZETA);
    assert_eq!(table.len(), 10);
    for (k, want) in table {
        assert_eq!(zeta_negative(k), want, "zeta(1 - 2k) at k = {k}");
    }
}

#[derive(Deserialize)]
struct EhrhartTables {
    square: BTreeMap<String, u64>,
    simplex: BTreeMap<String, u64>,
}

fn unit_square() -> HPolytope {
    HPolytope::new(
        2,
        vec![
            (vec![rat_int(1), rat_int(0)], rat_int(1)),
            (vec![rat_int(-1), rat_int(0)], rat_int(0)),
            (vec![rat_int(0), rat_int(1)], rat_int(1)),
            (vec![rat_int(0), rat_int(-1)], rat_int(0)),
        ],
    )
    .unwrap()
}

fn unit_simplex() -> HPolytope {
    HPolytope::new(
        2,
        vec![
            (vec![rat_int(-1), rat_int(0)], rat_int(0)),
            (vec![rat_int(0), rat_int(-1)], rat_int(0)),
            (vec![rat_int(1), rat_int(1)], rat_int(1)),
        ],
    )
    .unwrap()
}

#[test]
fn lattice_counts_match_the_fixture() {
    let tables: EhrhartTables = serde_json::from_str(EHRHART).expect("fixture parses");
    for (polytope, table) in [(unit_square(), tables.square), (unit_simplex(), tables.simplex)] {
        for (l, want) in table {
            let l: i64 = l.parse().unwrap();
            let count = polytope.scale(&rat_int(l)).lattice_point_count().unwrap();
            assert_eq!(count, want, "count at dilation {l}");
        }
    }
}

#[derive(Deserialize)]
struct DegreeRow {
    g: usize,
    k: u64,
    m: u64,
    index: u64,
    minus_id: bool,
    degree: String,
}

#[derive(Deserialize)]
struct DegreeGrid {
    rows: Vec<DegreeRow>,
}

#[test]
fn degree_grid_matches_the_fixture() {
    let grid: DegreeGrid = serde_json::from_str(DEGREES).expect("fixture parses");
    assert_eq!(grid.rows.len(), 216);
    for row in grid.rows {
        let wi = WeightIndex::new(row.g, row.k, row.m, row.index, row.minus_id).unwrap();
        let report = closed_forms(&wi).unwrap();
        assert_eq!(report.degree().pi_pow(), 0);
        assert_eq!(
            report.degree().coeff(),
            &parse_rat(&row.degree).unwrap(),
            "degree at g = {}, k = {}, m = {}, index = {}, minus_id = {}",
            row.g,
            row.k,
            row.m,
            row.index,
            row.minus_id,
        );
    }
}

#[derive(Deserialize)]
struct VolumeEntry {
    coeff: String,
    pi_pow: i64,
}

#[derive(Deserialize)]
struct VolumeTable {
    values: BTreeMap<String, VolumeEntry>,
}

#[test]
fn volumes_match_the_fixture() {
    let table: VolumeTable = serde_json::from_str(VOLUMES).expect("fixture parses");
    assert_eq!(table.values.len(), 6);
    for (g, entry) in table.values {
        let g: usize = g.parse().unwrap();
        let v = siegel_volume(g);
        assert_eq!(v.coeff(), &parse_rat(&entry.coeff).unwrap(), "volume at genus {g}");
        assert_eq!(v.pi_pow(), entry.pi_pow, "pi power at genus {g}");
    }
}
