use std::io::Write;
use std::process::{Command, Output, Stdio};

use cartier_lift::cli::{parse_toml, CurveDescription};
use serde_json::Value;

fn run(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cartier-lift"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(args: &[&str], input: &str) -> Value {
    let out = run(args, input);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const E5: &str = "p = 5\nmodel = \"hyperelliptic\"\nf = [1, 0, 0, 1]\n";

const LINE_FROB: &str = r#"
target = "source"
frobenius = true
[curve]
p = 5
model = "rational"
"#;

#[test]
fn analyze_curve_example() {
    let v = json(&["analyze-curve"], E5);
    assert_eq!(v["genus"], 1);
    assert_eq!(v["cartier_manin"], serde_json::json!([[0]]));
    assert_eq!(v["p_rank"], 0);
    assert_eq!(v["a_number"], 1);
    assert_eq!(v["closed_form_agrees"], true);
}

#[test]
fn check_lift_example() {
    let v = json(&["check-lift"], LINE_FROB);
    assert_eq!(v["verdict"], "LIFTABLE");
}

#[test]
fn construct_example() {
    let v = json(&["construct-example"], "p = 7\nf = [1, 0, 0, 0, 0, 1]\nm = 30\n");
    assert_eq!(v["verdict"], "LIFTABLE");
    assert!(v["hom_dimension"].as_u64().unwrap() >= 1);
    assert_eq!(v["family_dimension"], 26);
    assert_eq!(v["genus"], 101);
    assert_eq!(v["d_different"], 186);
}

#[test]
fn other_commands() {
    let v = json(&["search-base", "--budget", "20"], "p = 7\ngenus = 2\n");
    assert!(v["found"].as_u64().unwrap() >= 1);
    let v = json(&["analyze-morphism"], LINE_FROB);
    assert!(v["hom_space"]["dimension"].as_u64().unwrap() >= 1);
    let text = run(&["analyze-curve", "--format", "text"], E5);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.lines().any(|l| l == "genus: 1"), "{text}");
}

#[test]
fn malformed_input_exits_2_with_a_line() {
    let out = run(&["analyze-curve"], "p = 5\nmodel = \"hyperelliptic\"\nf = [1, 0, 0, \"x\"]\n");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
    let out = run(&["analyze-curve"], "p = 4\nmodel = \"rational\"\n");
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["analyze-curve"], "p = 5\nmodel = \"hyperelliptic\"\nf = [1, 0, 1]\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runs_are_deterministic() {
    for (cmd, input) in [("analyze-curve", E5), ("check-lift", LINE_FROB)] {
        let a = run(&[cmd], input).stdout;
        let b = run(&[cmd], input).stdout;
        assert_eq!(a, b);
    }
    let a = run(&["search-base", "--seed", "3", "--budget", "50"], "p = 5\ngenus = 2\n").stdout;
    let b = run(&["search-base", "--seed", "3", "--budget", "50"], "p = 5\ngenus = 2\n").stdout;
    assert_eq!(a, b);
}

#[test]
fn files_in_and_out() {
    let dir = std::env::temp_dir().join(format!("cartier-lift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("job.toml");
    let output = dir.join("report.json");
    std::fs::write(&input, E5).unwrap();
    let out = run(
        &["analyze-curve", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()],
        "",
    );
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(v["genus"], 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

/// The curve embedded in a report parses back to the same model.
#[test]
fn embedded_descriptions_round_trip() {
    let cover = r#"
p = 3
model = "artin_schreier"
u = [0, 1]
u_y = [1]
[base]
model = "hyperelliptic"
f = [0, 1, 0, 0, 0, 1]
"#;
    for input in [E5, cover] {
        let v = json(&["analyze-curve"], input);
        let embedded: CurveDescription = serde_json::from_value(v["curve"].clone()).unwrap();
        let original: CurveDescription = parse_toml(input).unwrap();
        assert_eq!(embedded.to_model().unwrap(), original.to_model().unwrap());
        let again = toml::to_string(&embedded).unwrap();
        let reparsed: CurveDescription = parse_toml(&again).unwrap();
        assert_eq!(reparsed, embedded);
    }
}
