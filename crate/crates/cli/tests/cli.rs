use std::process::{Command, Output};

fn hypertab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypertab")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hypertab(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    hypertab(args).status.code().expect("exit code")
}

fn temp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("hypertab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn table_examples() {
    assert_eq!(stdout(&["table", "hyperharmonic", "--r", "2", "--n", "3"]), "0,1,5/2,13/3\n");
    assert_eq!(stdout(&["table", "fibonacci", "--n", "5"]), "0,1,1,2,3,5\n");
    assert_eq!(stdout(&["table", "hyperfib", "--r", "1", "--n", "4"]), "0,1,2,4,7\n");
    assert_eq!(stdout(&["table", "lucas", "--n", "3", "--header"]), "0,1,2,3\n2,1,3,4\n");
}

#[test]
fn table_errors() {
    assert_eq!(code(&["table", "no-family", "--n", "3"]), 2);
    assert_eq!(code(&["table", "hyperharmonic", "--n", "3"]), 2);
    assert_eq!(code(&["table", "fibonacci", "--r", "1", "--n", "3"]), 2);
    assert_eq!(code(&["table", "hyperfib", "--r", "-1", "--n", "3"]), 2);
    assert_eq!(code(&["table", "fibonacci"]), 2);
}

#[test]
fn series_examples() {
    assert_eq!(stdout(&["series", "incomplete-fib", "--k", "0", "--order", "4"]), "0,1,1,1,1\n");
    assert_eq!(stdout(&["series", "hyperharmonic", "--r", "1", "--order", "3"]), "0,1,3/2,11/6\n");
    assert_eq!(stdout(&["series", "fib-subseq", "--k", "2", "--r", "1", "--order", "3"]), "1,2,5,13\n");
    assert_eq!(stdout(&["series", "lucas-subseq", "--k", "2", "--r", "0", "--order", "3"]), "2,3,7,18\n");
    assert_eq!(stdout(&["series", "sym-row", "fib-odd", "--k", "1", "--order", "3"]), "0,1,2,3\n");
    assert_eq!(stdout(&["series", "sym-col", "fib-odd", "--n", "1", "--order", "3"]), "0,1,3,8\n");
    assert_eq!(stdout(&["series", "es-column", "--seq", "fibonacci", "--order", "5"]), "0,1,3,8,21,55\n");
    assert_eq!(stdout(&["series", "hyperlucas", "--r", "1", "--order", "3"]), "2,3,6,10\n");
}

#[test]
fn series_errors() {
    assert_eq!(code(&["series", "no-gf", "--order", "3"]), 2);
    assert_eq!(code(&["series", "fib-subseq", "--k", "0", "--r", "0", "--order", "3"]), 2);
    assert_eq!(code(&["series", "hyperfib", "--k", "1", "--r", "1", "--order", "3"]), 2);
    assert_eq!(code(&["series", "sym-row", "--k", "1", "--order", "3"]), 2);
    assert_eq!(code(&["series", "sym-row", "fib-odd", "--k", "0", "--order", "3"]), 2);
    assert_eq!(code(&["series", "es-column", "--order", "3"]), 2);
}

#[test]
fn matrix_examples() {
    let fib = stdout(&["matrix", "fib-odd", "--rows", "3", "--cols", "4"]);
    let rows: Vec<&str> = fib.lines().collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3], "5,8,13,21,34");
    let hh = stdout(&["matrix", "hyperharmonic", "--rows", "2", "--cols", "3"]);
    assert_eq!(hh.lines().next(), Some("1,1/2,1/3,1/4"));
    assert_eq!(hh.lines().nth(2), Some("1,5/2,13/3,77/12"));
    let headed = stdout(&["matrix", "hyperharmonic", "--rows", "0", "--cols", "1", "--header"]);
    assert_eq!(headed, "k,n=0,n=1\n0,1,1/2\n");
}

#[test]
fn matrix_seed_files() {
    let good = temp("good.json", r#"{"row_seed": ["1", "1/2", "1/3"], "col_seed": ["1", "1", "1"]}"#);
    let g = good.to_str().unwrap();
    assert_eq!(stdout(&["matrix", "--seed-file", g, "--rows", "2", "--cols", "2"]), "1,1/2,1/3\n1,3/2,11/6\n1,5/2,13/3\n");
    assert_eq!(code(&["matrix", "--seed-file", g, "--rows", "2", "--cols", "3"]), 2);

    let corner = temp("corner.json", r#"{"row_seed": ["1", "2"], "col_seed": ["3", "4"]}"#);
    assert_eq!(code(&["matrix", "--seed-file", corner.to_str().unwrap(), "--rows", "1", "--cols", "1"]), 2);
    let extra = temp("extra.json", r#"{"row_seed": ["1"], "col_seed": ["1"], "corner": "1"}"#);
    assert_eq!(code(&["matrix", "--seed-file", extra.to_str().unwrap(), "--rows", "0", "--cols", "0"]), 2);
    let junk = temp("junk.json", r#"{"row_seed": ["1/0"], "col_seed": ["1"]}"#);
    assert_eq!(code(&["matrix", "--seed-file", junk.to_str().unwrap(), "--rows", "0", "--cols", "0"]), 2);
    assert_eq!(code(&["matrix", "--seed-file", "/nonexistent/seeds.json", "--rows", "0", "--cols", "0"]), 2);
    assert_eq!(code(&["matrix", "no-preset", "--rows", "1", "--cols", "1"]), 2);
    assert_eq!(code(&["matrix", "fib-odd", "--seed-file", g, "--rows", "1", "--cols", "1"]), 2);
    assert_eq!(code(&["matrix", "--rows", "1", "--cols", "1"]), 2);
}

#[test]
fn csv_and_json_agree() {
    let csv = stdout(&["matrix", "hyperharmonic", "--rows", "3", "--cols", "4"]);
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["matrix", "hyperharmonic", "--rows", "3", "--cols", "4", "--format", "json"])).unwrap();
    assert_eq!(json["rows"], 4);
    assert_eq!(json["cols"], 5);
    let from_json: Vec<String> = json["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect::<Vec<_>>().join(","))
        .collect();
    assert_eq!(csv.lines().collect::<Vec<_>>(), from_json);

    let table: serde_json::Value =
        serde_json::from_str(&stdout(&["table", "hyperharmonic", "--r", "2", "--n", "3", "--format", "json"])).unwrap();
    assert_eq!(table["values"], serde_json::json!(["0", "1", "5/2", "13/3"]));
    let series: serde_json::Value =
        serde_json::from_str(&stdout(&["series", "hyperharmonic", "--r", "1", "--order", "3", "--format", "json"])).unwrap();
    assert_eq!(series["coeffs"], serde_json::json!(["0", "1", "3/2", "11/6"]));
    assert_eq!(series["order"], 3);
}

#[test]
fn check_examples() {
    let report: serde_json::Value = serde_json::from_str(&stdout(&["check", "fibnew1", "--variant", "printed"])).unwrap();
    assert_eq!(report["verdict"], "PASS");
    assert_eq!(report["tested"], 30);

    let report: serde_json::Value = serde_json::from_str(&stdout(&["check", "lastfib", "--variant", "printed"])).unwrap();
    assert_eq!(report["verdict"], "ERRATUM-CONFIRMED");
    assert_eq!(report["failures"][0]["params"], serde_json::json!({"k": 1, "n": 4}));

    let narrowed: serde_json::Value = serde_json::from_str(&stdout(&[
        "check", "lastfib", "--variant", "printed", "--override", "k=1..5", "--override", "n=5..30",
    ]))
    .unwrap();
    assert_eq!(narrowed["failures"][0], serde_json::json!({"params": {"k": 1, "n": 5}, "lhs": "4", "rhs": "2"}));

    let all_variants: serde_json::Value = serde_json::from_str(&stdout(&["check", "lastluc"])).unwrap();
    assert_eq!(all_variants.as_array().unwrap().len(), 3);
    assert_eq!(all_variants[1]["verdict"], "FAIL");
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&["check", "no-such-id"]), 2);
    assert_eq!(code(&["check", "lastfib", "--variant", "nope"]), 2);
    assert_eq!(code(&["check", "fibnew1", "--override", "k=0..3"]), 2);
    assert_eq!(code(&["check", "fibnew1", "--override", "k"]), 2);
    assert_eq!(code(&["check", "all", "--variant", "printed"]), 2);
    assert_eq!(code(&["check", "binsuminc", "--override", "h=0", "--override", "n=5", "--override", "k=3"]), 2);
    assert_eq!(code(&["check", "binsuminc", "--override", "h=0", "--override", "n=5", "--override", "k=3", "--outside"]), 0);
    // outside its valid domain the binomial sum is not the incomplete number
    assert_eq!(code(&["check", "incfib-gf-vs-sum", "--override", "k=1", "--override", "n=2", "--outside"]), 1);
    assert_eq!(code(&["check", "lucas-corollary", "--format", "csv"]), 0);
    assert_eq!(code(&["check", "theorem2-row", "--order", "80"]), 2);
    assert_eq!(code(&["--no-such-flag"]), 2);
}

#[test]
fn check_csv() {
    let out = stdout(&["check", "incfib-fib1", "--format", "csv", "--header"]);
    assert_eq!(
        out,
        "identity,variant,tested,failures,verdict,expected\n\
         incfib-fib1,printed,143,11,ERRATUM-CONFIRMED,ERRATUM-CONFIRMED\n\
         incfib-fib1,gf-range,143,0,PASS,PASS\n"
    );
}

#[test]
fn output_flag_writes_file() {
    let path = temp("out.csv", "");
    let p = path.to_str().unwrap();
    let out = hypertab(&["table", "fibonacci", "--n", "4", "--output", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "0,1,1,2,3\n");
}

#[test]
fn seed_flag_is_reproducible() {
    let a = stdout(&["check", "symmetric-closed-form", "--seed", "99", "--override", "sample=0..4"]);
    let b = stdout(&["check", "symmetric-closed-form", "--seed", "99", "--override", "sample=0..4"]);
    assert_eq!(a, b);
    assert_eq!(code(&["check", "theorem2-col", "--seed", "12345"]), 0);
}

#[test]
fn check_all_is_byte_identical() {
    let a = hypertab(&["check", "all", "--format", "json"]);
    let b = hypertab(&["check", "all", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let reports: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let ids: Vec<&str> = reports.as_array().unwrap().iter().map(|r| r["identity"].as_str().unwrap()).collect();
    assert!(ids.windows(2).all(|w| w[0] <= w[1]));
}
