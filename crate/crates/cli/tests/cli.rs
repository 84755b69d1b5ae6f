use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hamembed::adiabatic::{
    flip_all_embedded, flip_all_term, format_instance, spin_glass, standard_driver,
    success_probability, SpinGlassInstance,
};
use hamembed::dense::{ground_state, to_matrix};
use hamembed::{format_hamiltonian, Hamiltonian};
use tempfile::TempDir;

fn hamembed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamembed"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn field(report: &str, key: &str) -> String {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key} ")))
        .unwrap_or_else(|| panic!("no `{key}` in report:\n{report}"))
        .to_string()
}

fn instance3() -> SpinGlassInstance<f64> {
    let mut g = SpinGlassInstance::new(3);
    g.set_field(0, 0.4).unwrap();
    g.set_field(1, -0.7).unwrap();
    g.set_field(2, 0.2).unwrap();
    g.set_coupling(1, 0, 0.9).unwrap();
    g.set_coupling(2, 0, -0.5).unwrap();
    g.set_coupling(2, 1, 0.3).unwrap();
    g
}

const FACTOR_EXAMPLE: &str = "qubits 5\n0.4 XYZIY\n0.3 ZZIII\n-1.75 IIXII\n0.5 IIIIZ\n0.2 IYIIX\n";

#[test]
fn case2_mask_reproduces_factor_example() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.ham", FACTOR_EXAMPLE);
    let out = dir.path().join("embedding.txt");
    let o = hamembed(&["embed", "--input", s(&h), "--chi", "XYZIY", "--case", "2", "--mask", "11000", "--output", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report = std::fs::read_to_string(&out).unwrap();
    assert_eq!(field(&report, "chi_prime"), "XYIII");
    assert_eq!(field(&report, "chi_double_prime"), "IIZIY");

    let v = hamembed(&["verify", "--input", s(&h), "--embedding", s(&out)]);
    assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
    assert!(String::from_utf8_lossy(&v.stdout).contains("result pass"));
}

#[test]
fn index_and_string_selectors_agree() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.ham", FACTOR_EXAMPLE);
    let parsed: Hamiltonian<f64> = hamembed::parse_hamiltonian(FACTOR_EXAMPLE).unwrap();
    let index = parsed.terms().iter().position(|t| t.string.to_string() == "XYZIY").unwrap();
    let by_index = hamembed(&["embed", "--input", s(&h), "--chi", &index.to_string()]);
    let by_string = hamembed(&["embed", "--input", s(&h), "--chi", "XYZIY"]);
    assert!(by_index.status.success());
    assert_eq!(by_index.stdout, by_string.stdout);
}

#[test]
fn flip_all_embedding_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    let g = instance3();
    let b = [1.0, 0.8, 1.3];
    let b0 = 0.6;
    let mut h = standard_driver(&b).unwrap().add(&spin_glass(&g)).unwrap();
    h.push(flip_all_term(b0, 3)).unwrap();
    let input = write(&dir, "h.ham", &format_hamiltonian(&h));
    let physical = dir.path().join("physical.ham");
    let o = hamembed(&["embed", "--input", s(&input), "--chi", "XXX", "--case", "1", "--physical", s(&physical)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (d, p) = flip_all_embedded(&g, &b, b0).unwrap();
    let expected = format_hamiltonian(&d.add(&p).unwrap());
    assert_eq!(std::fs::read_to_string(&physical).unwrap(), expected);
}

#[test]
fn auto_embedding_verifies_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let text = "qubits 4\n0.9 IXXX\n0.3 ZIII\n0.7 ZZII\n1.0 IXII\n0.1 IIYZ\n-0.4 YIIZ\n";
    let h = write(&dir, "h.ham", text);
    let out = dir.path().join("e.txt");
    let o = hamembed(&["embed", "--input", s(&h), "--chi", "IXXX", "--output", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report = std::fs::read_to_string(&out).unwrap();
    let parsed = hamembed::embedding::report::parse_report::<f64>(&report).unwrap();
    assert_eq!(hamembed::embedding::report::format_report(&parsed), report);
    let v = hamembed(&["verify", "--input", s(&h), "--embedding", s(&out)]);
    assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
}

#[test]
fn malformed_hamiltonian_exits_2_with_line() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "bad.ham", "qubits 3\n0.5 XXX\n0.2 XQZ\n");
    let o = hamembed(&["embed", "--input", s(&h), "--chi", "XXX"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn unresolvable_chi_exits_2() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.ham", FACTOR_EXAMPLE);
    assert_eq!(hamembed(&["embed", "--input", s(&h), "--chi", "XXXXX"]).status.code(), Some(2));
    assert_eq!(hamembed(&["embed", "--input", s(&h), "--chi", "17"]).status.code(), Some(2));
    assert_eq!(hamembed(&["embed", "--input", s(&h), "--chi", "XYZIY", "--case", "2"]).status.code(), Some(2));
}

#[test]
fn corrupted_physical_term_fails_verification() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.ham", FACTOR_EXAMPLE);
    let out = dir.path().join("e.txt");
    assert!(hamembed(&["embed", "--input", s(&h), "--chi", "XYZIY", "--output", s(&out)]).status.success());
    let report = std::fs::read_to_string(&out).unwrap();
    let (head, physical) = report.split_once("[physical]\n").unwrap();
    let mut lines: Vec<String> = physical.lines().map(String::from).collect();
    // lines[0] is the `qubits` header
    let (coef, string) = lines[1].split_once(' ').unwrap();
    let perturbed = coef.parse::<f64>().unwrap() + 1e-3;
    lines[1] = format!("{perturbed:e} {string}");
    let corrupted = format!("{head}[physical]\n{}\n", lines.join("\n"));
    let bad = write(&dir, "bad.txt", &corrupted);
    let v = hamembed(&["verify", "--input", s(&h), "--embedding", s(&bad)]);
    assert_eq!(v.status.code(), Some(1), "{}", stderr(&v));
    assert!(String::from_utf8_lossy(&v.stdout).contains("FAIL"));
}

#[test]
fn verify_refuses_above_cap() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.ham", FACTOR_EXAMPLE);
    let out = dir.path().join("e.txt");
    assert!(hamembed(&["embed", "--input", s(&h), "--chi", "XYZIY", "--output", s(&out)]).status.success());
    let v = hamembed(&["verify", "--input", s(&h), "--embedding", s(&out), "--cap", "5"]);
    assert_eq!(v.status.code(), Some(2));
    assert!(stderr(&v).contains("refusing"));
}

#[test]
fn paired_anneal_agrees() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "g.txt", &format_instance(&instance3()));
    let out = dir.path().join("r.txt");
    let o = hamembed(&[
        "anneal", "--input", s(&inst), "--tau", "3", "--steps", "200", "--flip-all", "0.5", "--paired",
        "--gap-samples", "8", "--output", s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = std::fs::read_to_string(&out).unwrap();
    let diff: f64 = field(&report, "difference").parse().unwrap();
    assert!(diff < 1e-8);
    assert_eq!(report.matches("success_probability").count(), 2);
}

#[test]
fn zero_duration_anneal_reports_initial_overlap() {
    let dir = TempDir::new().unwrap();
    let g = instance3();
    let inst = write(&dir, "g.txt", &format_instance(&g));
    let o = hamembed(&["anneal", "--input", s(&inst), "--tau", "0", "--steps", "1", "--gap-samples", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let p: f64 = field(&String::from_utf8_lossy(&o.stdout), "success_probability").parse().unwrap();
    let (_, psi0, _) = ground_state(&to_matrix(&standard_driver(&[1.0; 3]).unwrap()).unwrap());
    let direct = success_probability(&psi0, &spin_glass(&g)).unwrap().success_probability;
    assert!((p - direct).abs() < 1e-12);
}

#[test]
fn anneal_rejects_bad_parameters() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "g.txt", &format_instance(&instance3()));
    assert_eq!(hamembed(&["anneal", "--input", s(&inst), "--steps", "0"]).status.code(), Some(2));
    assert_eq!(hamembed(&["anneal", "--input", s(&inst), "--tau", "-1"]).status.code(), Some(2));
    assert_eq!(hamembed(&["anneal", "--input", s(&inst), "--paired"]).status.code(), Some(2));
    let bad = write(&dir, "bad.txt", "n 2\nJ 0 1 1.0\n");
    let o = hamembed(&["anneal", "--input", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
}

fn flip_all_protocol(dir: &TempDir, extra: &str) -> PathBuf {
    let g = instance3();
    // negative fields put the driver ground state at |+++⟩, a +1 eigenstate of XXX
    let mut driver = standard_driver(&[-1.0; 3]).unwrap();
    driver.push(flip_all_term(-0.5, 3)).unwrap();
    write(dir, "driver.ham", &format_hamiltonian(&driver));
    write(dir, "problem.ham", &format_hamiltonian(&spin_glass(&g)));
    write(
        dir,
        "run.conf",
        &format!("driver driver.ham\nproblem problem.ham\nchi XXX\nmask 111\ntau 2\nsteps 100\n{extra}"),
    )
}

#[test]
fn full_protocol_has_no_leakage() {
    let dir = TempDir::new().unwrap();
    let conf = flip_all_protocol(&dir, "mode full\n");
    let state = dir.path().join("state.txt");
    let o = hamembed(&["protocol", "--input", s(&conf), "--state", s(&state)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = String::from_utf8_lossy(&o.stdout).into_owned();
    let leakage: f64 = field(&report, "leakage").parse().unwrap();
    assert!(leakage <= 1e-10);
    let fidelity: f64 = field(&report, "fidelity").parse().unwrap();
    assert!(fidelity > 1.0 - 1e-10);
    assert_eq!(std::fs::read_to_string(&state).unwrap().lines().count(), 8);
}

#[test]
fn shortcut_refuses_non_invariant_state() {
    let dir = TempDir::new().unwrap();
    let conf = flip_all_protocol(&dir, "initial zero\n");
    let o = hamembed(&["protocol", "--input", s(&conf), "--mode", "shortcut"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("deviat"), "{}", stderr(&o));
}

#[test]
fn shortcut_is_deterministic_per_seed() {
    let dir = TempDir::new().unwrap();
    let conf = flip_all_protocol(&dir, "mode shortcut\n");
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for out in [&a, &b] {
        let o = hamembed(&["protocol", "--input", s(&conf), "--seed", "42", "--output", s(out)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    let report = String::from_utf8(first).unwrap();
    let fidelity: f64 = field(&report, "fidelity").parse().unwrap();
    assert!(fidelity > 1.0 - 1e-10);
}

#[test]
fn malformed_config_exits_2_with_line() {
    let dir = TempDir::new().unwrap();
    let conf = write(&dir, "run.conf", "hamiltonian h.ham\nchi XX\nsteps many\n");
    let o = hamembed(&["protocol", "--input", s(&conf)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(hamembed(&["embed", "--bogus"]).status.code(), Some(2));
}
