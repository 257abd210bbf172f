use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use minpoly::cli::main_with_args;
use minpoly::{Field, Poly};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

/// Runs the binary with `stdin` piped in.
fn run_bin(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_minpoly"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

// (golden file, flags, stdin)
const GOLDEN: &[(&str, &[&str], &str)] = &[
    ("minpoly_ex23.txt", &["--field", "gf2"], "0,1,1,0"),
    ("minpoly_ex24.txt", &["--field", "gf2", "--mode", "minpoly"], "1,1,0,0"),
    ("minpoly_b1.txt", &["--field", "gf2", "--variant", "b1"], "0 1"),
    ("minpoly_gf3.txt", &["--field", "gf:3"], "2"),
    ("minpoly_q.txt", &["--field", "q"], "1, 1/2, 1/4, 1/8"),
    ("minpoly_q.json", &["--field", "q", "--json"], "1 3 2 -5/3"),
    ("minpoly_ex23.json", &["--field", "gf2", "--json"], "0110"),
    ("profile_ex24.txt", &["--field", "gf2", "--mode", "profile"], "1,1,0,0"),
    ("profile_ex24.json", &["--field", "gf2", "--mode", "profile", "--json"], "1100"),
    ("trace_ex23.txt", &["--field", "gf2", "--mode", "trace"], "0,1,1,0"),
    ("trace_gf5.json", &["--field", "gf:5", "--mode", "trace", "--json"], "1 2 4 3"),
    ("massey_ex24.txt", &["--field", "gf2", "--mode", "massey"], "1,1,0,0"),
    ("massey_gf3.json", &["--field", "gf:3", "--mode", "massey", "--json"], "1 1 2 0"),
    ("extend_ex23.txt", &["--field", "gf2", "--mode", "extend", "--poly", "x^2 + x + 1", "--count", "2"], "0 1"),
    ("extend_gf3.json", &["--field", "gf:3", "--mode", "extend", "--poly", "x + 1", "--count", "2", "--json"], "1"),
    ("oracle_ex23.txt", &["--field", "gf2", "--mode", "oracle-check"], "0,1,1,0"),
    ("oracle_gf3.json", &["--field", "gf:3", "--mode", "oracle-check", "--json"], "1 0 1"),
];

#[test]
fn golden_outputs() {
    for (file, flags, stdin) in GOLDEN {
        let (code, stdout, stderr) = run_bin(flags, stdin);
        assert_eq!(code, 0, "{file}: {stderr}");
        let expected = std::fs::read_to_string(data("golden").join(file)).unwrap();
        assert_eq!(stdout, expected, "golden mismatch for {file}");
    }
}

#[test]
fn reads_input_file() {
    let path = data("data/ex24.txt");
    let o = main_with_args(["minpoly", "--field", "gf2", "--in", path.to_str().unwrap()]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "x^2\n"));
}

#[test]
fn text_and_json_describe_the_same_polynomial() {
    for (field, input) in [("gf2", "0,1,1,0,1,1,1"), ("gf:7", "3 1 4 1 5"), ("q", "1 2 3 5 8 13")] {
        let path = data("data").join(format!("rt_{}.txt", field.replace(':', "_")));
        std::fs::write(&path, input).unwrap();
        let p = path.to_str().unwrap();
        let text = main_with_args(["minpoly", "--field", field, "--in", p]);
        let json = main_with_args(["minpoly", "--field", field, "--in", p, "--json"]);
        std::fs::remove_file(&path).unwrap();
        let f: Field = field.parse().unwrap();
        let from_text = Poly::parse(text.stdout.trim(), f).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
        let coeffs: Vec<String> = v["coeffs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| match c {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        let rebuilt = Poly::from_coeffs(
            f,
            coeffs
                .iter()
                .map(|c| Poly::parse(c, f).unwrap().coeff(0))
                .collect(),
        )
        .unwrap();
        assert_eq!(rebuilt, from_text, "{field}");
        assert_eq!(v["degree"], from_text.degree().finite().unwrap());
        assert_eq!(v["field"], field);
    }
}

#[test]
fn exhaustive_oracle_check_gf2_up_to_10() {
    let (code, stdout, stderr) = run_bin(
        &["--field", "gf2", "--mode", "oracle-check", "--exhaustive", "10"],
        "",
    );
    assert_eq!(code, 0, "{stderr}");
    assert_eq!(
        stdout,
        "checked 2046 sequences over gf2 of length 1..=10: 0 mismatches\n"
    );
    let (code, _, _) = run_bin(
        &["--field", "gf:3", "--mode", "oracle-check", "--exhaustive", "4", "--variant", "b1"],
        "",
    );
    assert_eq!(code, 0);
}

#[test]
fn exit_codes() {
    assert_eq!(run_bin(&["--field", "gf2"], "1,2,x").0, 1);
    assert_eq!(run_bin(&["--field", "gf:9"], "1").0, 1);
    assert_eq!(run_bin(&["--field", "gf2"], "").0, 1);
    assert_eq!(run_bin(&["--field", "gf2", "--mode", "nope"], "1").0, 1);
    assert_eq!(
        run_bin(&["--field", "gf:3", "--mode", "extend", "--poly", "2*x + 1", "--count", "1"], "1").0,
        1
    );
}
