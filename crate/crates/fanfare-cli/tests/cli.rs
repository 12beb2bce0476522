//! End-to-end runs of the binary against the documented examples: every
//! JSON document on standard output must re-parse under the wire schemas,
//! and the exit codes must separate certified negatives from errors.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use fanfare::wire::{
    AsymptoticsDto, CartierDto, CheckReportDto, DegreeDto, LelongDto, OkounkovDto, RatioFilterDto,
    RecessionDto, SelftestDto, VolumeReportDto,
};

fn fanfare_bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fanfare"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn parse_stdout<T: serde::de::DeserializeOwned>(out: &Output) -> T {
    serde_json::from_slice(&out.stdout).expect("stdout re-parses under the wire schema")
}

fn stdout_text(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is text")
}

fn write_input(name: &str, content: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    path.push(name);
    fs::write(&path, content).expect("inputs are writable");
    path.to_string_lossy().into_owned()
}

fn product_fan() -> String {
    write_input(
        "p1xp1.json",
        r#"{"rank":2,"rays":[[1,0],[0,1],[-1,0],[0,-1]],
            "cones":[[],[0],[1],[2],[3],[0,1],[1,2],[2,3],[3,0]]}"#,
    )
}

fn o11_values() -> String {
    write_input("o11.json", r#"["-1","-1","0","0"]"#)
}

#[test]
fn asymdim_reports_the_pinned_degree() {
    let out = fanfare_bin(&["asymdim", "--g", "1", "--k", "1", "--m", "1", "--index", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let dto: AsymptoticsDto = parse_stdout(&out);
    assert_eq!(dto.form_a, "1/6");
    assert_eq!(dto.pipeline, "1/6");
    assert_eq!(dto.volume.coeff, "1/3");
    assert_eq!(dto.volume.pi_pow, 1);
}

#[test]
fn asymdim_doubles_under_the_minus_identity_flag() {
    let args = ["asymdim", "--g", "2", "--k", "1", "--m", "1", "--index", "1"];
    let plain: AsymptoticsDto = parse_stdout(&fanfare_bin(&args));
    let flagged: AsymptoticsDto =
        parse_stdout(&fanfare_bin(&[&args[..], &["--minus-id"]].concat()));
    assert_eq!(plain.form_a, "1/36");
    assert_eq!(flagged.form_a, "1/18");
}

#[test]
fn asymdim_csv_reproduces_the_growth_table() {
    let out = fanfare_bin(&[
        "asymdim", "--g", "1", "--k", "1", "--m", "1", "--index", "1", "--format", "csv",
        "--lmax", "24",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_text(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("level,predicted_dimension"));
    assert_eq!(lines.next(), Some("0,0"));
    for pinned in ["6,3", "12,12", "24,48"] {
        assert!(text.lines().any(|l| l == pinned), "missing row {pinned}");
    }
}

#[test]
fn cartier_test_certifies_the_standard_witness() {
    let out = fanfare_bin(&["cartier-test", "--g", "1", "--m", "1", "--dec", "standard"]);
    assert_eq!(out.status.code(), Some(2));
    let dto: CartierDto = parse_stdout(&out);
    assert_eq!(dto.result, "NOT_CARTIER");
    let w = dto.witness.expect("a certified run carries its witness");
    assert_eq!(w.x, ["1", "0"]);
    assert_eq!(w.y, ["1", "1"]);
    assert_eq!(w.z, ["2", "1"]);
    assert_eq!(w.value_x, "0");
    assert_eq!(w.value_y, "0");
    assert_eq!(w.value_z, "1/2");
}

#[test]
fn cartier_test_witness_value_scales_with_the_index() {
    let out = fanfare_bin(&["cartier-test", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let dto: CartierDto = parse_stdout(&out);
    assert_eq!(dto.witness.expect("witness").value_z, "1");
}

#[test]
fn degree_pins_the_two_reference_surfaces() {
    let fan = product_fan();
    let pl = o11_values();
    let out = fanfare_bin(&["degree", "--fan", &fan, "--pl", &pl]);
    assert_eq!(out.status.code(), Some(0));
    let dto: DegreeDto = parse_stdout(&out);
    assert_eq!(dto.degree, "2");

    let fan = write_input(
        "p2.json",
        r#"{"rank":2,"rays":[[1,0],[0,1],[-1,-1]],
            "cones":[[],[0],[1],[2],[0,1],[1,2],[2,0]]}"#,
    );
    let pl = write_input("hyperplane.json", r#"["-1","0","0"]"#);
    let out = fanfare_bin(&["degree", "--fan", &fan, "--pl", &pl]);
    let dto: DegreeDto = parse_stdout(&out);
    assert_eq!(dto.degree, "1");
}

#[test]
fn toric_volume_converges_to_the_exact_degree() {
    let fan = product_fan();
    let pl = o11_values();
    let out = fanfare_bin(&[
        "toric-volume", "--fan", &fan, "--pl", &pl, "--lmax", "50",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let dto: VolumeReportDto = parse_stdout(&out);
    assert_eq!(dto.exact.as_deref(), Some("2"));
    assert_eq!(dto.sequence.len(), 50);
    assert_eq!(dto.sequence[49], (50, "2601/1250".to_string()));

    let out = fanfare_bin(&[
        "toric-volume", "--fan", &fan, "--pl", &pl, "--lmax", "4", "--format", "csv",
    ]);
    let text = stdout_text(&out);
    assert_eq!(text.lines().next(), Some("level,normalized_dimension"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn recession_of_a_linear_oracle_is_exact() {
    let oracle = write_input(
        "linear.json",
        r#"{"kind":"linear","coeffs":["-1","-2"],"constant":"5"}"#,
    );
    let out = fanfare_bin(&["recession", "--oracle", &oracle, "--dir", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let dto: RecessionDto = parse_stdout(&out);
    assert_eq!(dto.value, "-1");
    assert_eq!(dto.error_bound, "0");
}

#[test]
fn lelong_reports_the_chart_vanishing_order() {
    let out = fanfare_bin(&["lelong", "--m", "1", "--ray", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let dto: LelongDto = parse_stdout(&out);
    assert_eq!(dto.vanishing_order, "1/2");

    let out = fanfare_bin(&["lelong", "--m", "2", "--ray", "2,1"]);
    let dto: LelongDto = parse_stdout(&out);
    assert_eq!(dto.vanishing_order, "1");
}

#[test]
fn okounkov_recovers_the_section_square() {
    let fan = product_fan();
    let pl = o11_values();
    let out = fanfare_bin(&[
        "okounkov", "--fan", &fan, "--pl", &pl, "--lmax", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let dto: OkounkovDto = parse_stdout(&out);
    assert_eq!(dto.volume, "1");
    assert_eq!(dto.vertices.expect("a full-dimensional body").len(), 4);
}

#[test]
fn admissibility_passes_on_the_standard_decomposition() {
    let out = fanfare_bin(&["admissibility"]);
    assert_eq!(out.status.code(), Some(0));
    let dto: CheckReportDto = parse_stdout(&out);
    assert!(dto.pass);
    assert_eq!(dto.items.len(), 6);
}

#[test]
fn ratio_filter_answers_membership() {
    let out = fanfare_bin(&[
        "ratio-filter", "--gens", "1:1,2:2,1:2", "--ratio", "1", "--point", "3:3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let dto: RatioFilterDto = parse_stdout(&out);
    assert_eq!(dto.slice_generators, [(1, 1), (2, 2)]);
    assert_eq!(dto.max_ratio, "2");
    assert_eq!(dto.contains, Some(true));

    let out = fanfare_bin(&[
        "ratio-filter", "--gens", "1:1,2:2,1:2", "--ratio", "2", "--point", "2:3",
    ]);
    let dto: RatioFilterDto = parse_stdout(&out);
    assert_eq!(dto.slice_generators, [(1, 2)]);
    assert_eq!(dto.contains, Some(false));
}

#[test]
fn selftest_passes_and_counts_per_module() {
    let out = fanfare_bin(&["selftest", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let dto: SelftestDto = parse_stdout(&out);
    assert!(dto.all_passed);
    assert_eq!(dto.modules.len(), 8);
    assert!(dto.modules.iter().all(|m| m.failed == 0 && m.passed > 0));
}

#[test]
fn usage_errors_exit_one_on_stderr() {
    let out = fanfare_bin(&["asymdim", "--g", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());

    let out = fanfare_bin(&["no-such-verb"]);
    assert_eq!(out.status.code(), Some(1));

    let out = fanfare_bin(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn computation_errors_exit_one() {
    let out = fanfare_bin(&["cartier-test", "--g", "2", "--m", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let out = fanfare_bin(&["lelong", "--m", "1", "--ray", "2,2"]);
    assert_eq!(out.status.code(), Some(1));
}
