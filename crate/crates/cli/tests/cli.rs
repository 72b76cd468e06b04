use std::path::PathBuf;
use std::process::{Command, Output};

use qdr_cli::report::{Report, Value};

fn qdr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdr")).args(args).output().expect("binary runs")
}

fn scenario_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qdr-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(format!("{name}.toml"));
    std::fs::write(&p, body).unwrap();
    p
}

fn run(name: &str, body: &str, extra: &[&str]) -> Output {
    let p = scenario_file(name, body);
    let mut args = vec!["--scenario", p.to_str().unwrap()];
    args.extend_from_slice(extra);
    qdr(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn flat_quantum_product() {
    let o = run(
        "product",
        "model = \"flat\"\ndim = 2\n[[tasks]]\nkind = \"product\"\nexpr = \"e[1] ^h e[2]\"\n",
        &[],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("e1^e2 + (-1)*h"), "{out}");
    assert!(out.trim_end().ends_with("PASS"), "{out}");
}

#[test]
fn torus_stokes_suite() {
    let o = run("stokes", "model = \"torus\"\ndim = 2\ntruncation = 2\nseed = 7\n[[tasks]]\nkind = \"stokes\"\n", &["--samples", "60"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("T^2: exact forms integrate to zero"));
}

#[test]
fn empty_task_list() {
    let o = run("empty", "model = \"flat\"\n", &["--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.tasks.is_empty() && r.ledger.is_empty() && r.summary.passed);
}

#[test]
fn unknown_suite_lists_available() {
    let o = qdr(&["--check", "nonexistent"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    for s in ["associativity", "lefschetz", "stokes", "cpn"] {
        assert!(err.contains(s), "{err}");
    }
}

#[test]
fn associativity_check() {
    let o = qdr(&["--check", "associativity", "--dim", "6", "--seed", "42", "--samples", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn lefschetz_check() {
    let o = qdr(&["--check", "lefschetz", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    let vals = &r.tasks[0].values;
    assert!(vals.iter().any(|v| v.value.text() == "(t - 2)^8"), "{vals:?}");
}

#[test]
fn failing_expectation_exits_one() {
    let o = run("expect", "model = \"flat\"\n[[tasks]]\nkind = \"product\"\nexpr = \"e[1] ^h e[2]\"\nexpect = \"e1^e2 + h\"\n", &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn usage_errors_exit_two() {
    let cases = [
        ("singular", "model = \"flat\"\nomega = [[\"0\", \"0\"], [\"0\", \"0\"]]\n", "degenerate"),
        ("unknown_key", "model = \"flat\"\nfoo = 1\n", "line 2"),
        (
            "jacobi",
            "model = \"custom\"\npoisson = [[\"0\", \"1\", \"x[1]\"], [\"-1\", \"0\", \"0\"], [\"-x[1]\", \"0\", \"0\"]]\n",
            "Jacobi",
        ),
        ("truncation", "model = \"torus\"\ntruncation = 1\n[[tasks]]\nkind = \"product\"\nexpr = \"mode(3,0)\"\n", "truncation"),
        ("syntax", "model = \"flat\"\n[[tasks]]\nkind = \"product\"\nexpr = \"e[1] +* e[2]\"\n", "column 7"),
    ];
    for (name, body, needle) in cases {
        let o = run(name, body, &[]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(stderr(&o).contains(needle), "{name}: {}", stderr(&o));
    }
    let o = qdr(&["--check", "associativity", "--dim", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(qdr(&[]).status.code(), Some(2));
}

#[test]
fn max_dim_env_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_qdr"))
        .args(["--check", "associativity", "--dim", "4", "--samples", "5"])
        .env("QDR_MAX_DIM", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

const RICH: &str = r#"
model = "flat"
dim = 2
seed = 3

[expressions]
w = "e[1]^e[2]"

[[tasks]]
kind = "product"
expr = "3/2 * e[1] ^h e[2]"

[[tasks]]
kind = "power"
expr = "{w}"
exponent = 2
expect = "2*h*e1^e2 + (-1)*h^2"

[[tasks]]
kind = "cpn_table"
n = 1

[[tasks]]
kind = "moyal"
samples = 5
"#;

#[test]
fn json_report_is_deterministic_and_round_trips() {
    let a = run("rich", RICH, &["--format", "json"]);
    let b = run("rich2", RICH, &["--format", "json"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let r: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap(), text.trim_end());
    let f = r.tasks[0].values[0].value.decode_rational_form(2).unwrap();
    assert_eq!(f.to_string(), "(3/2)*e1^e2 + (-3/2)*h");
    assert!(text.contains("\"3/2\""));
    // w * w in CP^1 carries 2h w - h^2.
    let Value::Form { terms, .. } = &r.tasks[2].values.iter().find(|v| v.name == "w^1 * w^1").unwrap().value else {
        panic!("form value")
    };
    let w1 = terms.iter().find(|t| t.basis == "w^1").unwrap();
    assert_eq!(w1.coeffs, vec![(1, "2".to_string())]);
    let w0 = terms.iter().find(|t| t.basis == "w^0").unwrap();
    assert_eq!(w0.coeffs, vec![(2, "-1".to_string())]);
    assert!(r.ledger.iter().any(|e| e.key == "decomposition (c0, c1, c2)"));
}

#[test]
fn text_report_ends_with_summary() {
    let o = run("rich_text", RICH, &[]);
    let out = stdout(&o);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("summary: 4 tasks"), "{last}");
    assert!(out.contains("ledger"));
}

#[test]
fn list_suites() {
    let o = qdr(&["--list-suites"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 12);
}
