use std::process::{Command, Output};

use serde_json::Value;

fn tilecensus(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tilecensus"));
    cmd.args(args);
    for key in ["TILECENSUS_JOBS", "TILECENSUS_MAX_N", "TILECENSUS_BUDGET_CELLS"] {
        cmd.env_remove(key);
    }
    cmd.envs(env.iter().copied());
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn error_code(out: &Output) -> String {
    let last = String::from_utf8_lossy(&out.stderr).lines().last().unwrap().to_string();
    let v: Value = serde_json::from_str(&last).unwrap();
    assert!(v["detail"].is_string());
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn census_json_and_csv() {
    let out = tilecensus(&["census", "--n", "4"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["n"].as_u64(), v["d"].as_u64(), v["total"].as_u64()), (Some(4), Some(1), Some(13)));
    assert_eq!(v["manifest"]["command"], "census");
    assert_eq!(v["manifest"]["parameters"]["n"], 4);

    let out = tilecensus(&["--format", "csv", "census", "--n", "5", "--min-size", "2", "--max-size", "3"], &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,d,size,count");
    assert_eq!(&lines[1..3], &["5,1,2,10", "5,1,3,4"]);
    assert!(lines[3].starts_with("5,1,ALL,14,"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let out = tilecensus(&["census", "--n", "3", "--csv", path.to_str().unwrap()], &[]);
    assert_eq!(json(&out)["total"], 7);
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("n,d,size,count\n3,1,1,3\n"));
}

#[test]
fn decisions() {
    let out = tilecensus(&["decide", "--tile", r#"{"d":1,"n":4,"points":[[0],[1],[3]]}"#], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "not_tile");

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.json");
    std::fs::write(&file, r#"{"d":1,"n":6,"points":[[0],[2],[3],[5]]}"#).unwrap();
    let v = json(&tilecensus(&["decide", "--tile", file.to_str().unwrap()], &[]));
    assert_eq!(v["status"], "tiles");
    assert_eq!(v["certificate"]["kind"], "period");
    let v = json(&tilecensus(&["period", "--tile", file.to_str().unwrap()], &[]));
    assert!(v["period"].as_u64().unwrap() > 0);

    let v = json(&tilecensus(&["census-set", "--elements", "1,2,4,8"], &[]));
    assert!(v["total"].as_u64().unwrap() >= 4);

    let l =
        json(&tilecensus(&["lattice", "find", "--tile", r#"{"d":2,"n":2,"points":[[0,0],[0,1],[1,0],[1,1]]}"#], &[]));
    assert_eq!(l["status"], "tiles");
    assert_eq!(l["certificate"]["kind"], "lattice");
    let t = json(&tilecensus(&["torus", "--tile", r#"{"d":2,"n":2,"points":[[0,0],[1,0]]}"#, "--dims", "4,4"], &[]));
    assert_eq!(t["status"], "tiles");
    assert_eq!(t["certificate"]["kind"], "torus");
    let z = json(&tilecensus(&["decide-zd", "--tile", r#"{"d":1,"n":3,"points":[[0],[2]]}"#], &[]));
    assert_eq!(z["status"], "tiles");
}

#[test]
fn exit_codes() {
    let usage = tilecensus(&["census", "--bogus"], &[]);
    assert_eq!(usage.status.code(), Some(2));
    assert_eq!(error_code(&usage), "USAGE");
    assert_eq!(tilecensus(&["frobnicate"], &[]).status.code(), Some(2));

    let parse = tilecensus(&["decide", "--tile", "[]"], &[]);
    assert_eq!(parse.status.code(), Some(1));
    assert_eq!(error_code(&parse), "PARSE_ERROR");
    let empty = tilecensus(&["decide", "--tile", r#"{"d":1,"n":3,"points":[]}"#], &[]);
    assert_eq!((empty.status.code(), error_code(&empty).as_str()), (Some(1), "EMPTY_SET"));
    let div = tilecensus(&["torus", "--tile", r#"{"d":2,"n":2,"points":[[0,0],[0,1],[1,0]]}"#, "--dims", "4,4"], &[]);
    assert_eq!((div.status.code(), error_code(&div).as_str()), (Some(1), "BAD_DIVISIBILITY"));
    let vac = tilecensus(&["bound", "total", "--n", "1000", "--d", "1", "--alpha", "0.1"], &[]);
    assert_eq!((vac.status.code(), error_code(&vac).as_str()), (Some(1), "VACUOUS_BOUND"));

    let big = tilecensus(&["census", "--n", "25"], &[]);
    assert_eq!((big.status.code(), error_code(&big).as_str()), (Some(3), "LIMIT_EXCEEDED"));
    let cells = tilecensus(
        &["--budget-cells", "10", "torus", "--tile", r#"{"d":1,"n":2,"points":[[0],[1]]}"#, "--dims", "12"],
        &[],
    );
    assert_eq!((cells.status.code(), error_code(&cells).as_str()), (Some(3), "BUDGET_EXCEEDED"));
}

#[test]
fn configuration_precedence() {
    let env = [("TILECENSUS_MAX_N", "4")];
    assert_eq!(tilecensus(&["census", "--n", "5"], &env).status.code(), Some(3));
    assert_eq!(tilecensus(&["--max-n", "5", "census", "--n", "5"], &env).status.code(), Some(0));
    let cells = [("TILECENSUS_BUDGET_CELLS", "10")];
    let args = ["torus", "--tile", r#"{"d":1,"n":2,"points":[[0],[1]]}"#, "--dims", "12"];
    assert_eq!(tilecensus(&args, &cells).status.code(), Some(3));
    let mut with_flag = vec!["--budget-cells", "100"];
    with_flag.extend(args);
    assert_eq!(tilecensus(&with_flag, &cells).status.code(), Some(0));
    assert_eq!(tilecensus(&["census", "--n", "6"], &[("TILECENSUS_JOBS", "x")]).status.code(), Some(2));
}

#[test]
fn manifest_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let out = tilecensus(
        &[
            "--jobs",
            "2",
            "--manifest",
            path.to_str().unwrap(),
            "stats",
            "sample",
            "--n",
            "6",
            "--seed",
            "5",
            "--count",
            "3",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let embedded = json(&out)["manifest"].clone();
    assert_eq!(embedded["seed"], 5);
    assert!(embedded.get("started_unix_ms").is_none());
    let side: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(side["command"], embedded["command"]);
    assert_eq!(side["parameters"], embedded["parameters"]);
    assert_eq!(side["jobs"], 2);
    assert!(side["finished_unix_ms"].as_u64() >= side["started_unix_ms"].as_u64());
}

#[test]
fn module_commands() {
    let v = json(&tilecensus(&["construct", "word", "--t", "3", "--letters", "0,1,2"], &[]));
    assert_eq!(v["tile"]["points"], serde_json::json!([[0], [4], [8]]));
    let a = tilecensus(&["construct", "word", "--t", "4", "--random", "--seed", "3"], &[]);
    assert_eq!(a.stdout, tilecensus(&["construct", "word", "--t", "4", "--random", "--seed", "3"], &[]).stdout);
    let v = json(&tilecensus(&["construct", "slab", "--t", "1", "--d", "2", "--u", "1", "--coloring", "[0,1,2]"], &[]));
    assert_eq!(v["certificate"]["kind"], "lattice");
    let v = json(&tilecensus(&["construct", "family-census", "--t", "1", "--d", "2"], &[]));
    assert_eq!(v["family_size"], "81");

    let v = json(&tilecensus(&["bound", "rate", "--rho", "3.0"], &[]));
    assert_eq!(v["bits_per_cell"].as_f64(), Some(0.528320833574));
    assert_eq!(json(&tilecensus(&["bound", "jensen", "--m", "3", "--t", "7"], &[]))["max_product"], "12");
    assert!(json(&tilecensus(&["bound", "lemma", "--N", "2"], &[]))["gap"].as_f64().unwrap() >= 0.0);
    let v = json(&tilecensus(&["bound", "total", "--n", "1000000", "--d", "1", "--alpha", "0.1"], &[]));
    assert_eq!(v["k"], 1000);

    let v = json(&tilecensus(&["stats", "marginals", "--n", "3"], &[]));
    assert_eq!(v["marginals"], serde_json::json!([0.571428571429, 0.571428571429, 0.571428571429]));
    let csv = tilecensus(&["--format", "csv", "stats", "density", "--n", "6"], &[]);
    assert!(String::from_utf8(csv.stdout).unwrap().lines().count() > 1);
    assert_eq!(json(&tilecensus(&["stats", "windows", "--n", "12", "--w", "2"], &[]))["w"], 2);
}
