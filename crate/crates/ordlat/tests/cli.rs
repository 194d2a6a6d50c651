use std::process::{Command, Output};

fn ordlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordlat"))
        .args(args)
        .env_remove("ORDLAT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn thm21_summary_line() {
    let o = ordlat(&["check", "--suite", "thm21", "--max-n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().last(),
        Some("63+16+5+2+1+1 instances: holds")
    );
}

#[test]
fn ordinal_expressions() {
    for (expr, want) in [
        ("id(w+1)", "w+2"),
        ("w^2*3 + w + 5", "w^2*3+w+5"),
        ("cofinal(w,w1)", "false"),
        ("cof(w+3)", "max"),
    ] {
        let o = ordlat(&["ordinal", "--expr", expr]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), format!("{want}\n"));
    }
    assert_eq!(ordlat(&["ordinal", "--expr", "w +"]).status.code(), Some(2));
}

#[test]
fn kurepa_trace() {
    let o = ordlat(&["counterexample", "--name", "atoms", "--k", "3"]);
    assert!(stdout(&o).contains("trace: ∅, {0}, {a0,0}, {a1,a0,0}"));
    let o = ordlat(&["check", "--suite", "kurepa", "--format", "jsonl"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(
        v["witness"]["values"],
        serde_json::json!(["∅", "{0}", "{a0,0}", "{a1,a0,0}"])
    );
    assert_eq!(v["note"], "NotAnIdealOfChains at step 3");
}

#[test]
fn exit_codes() {
    assert_eq!(ordlat(&["check", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(ordlat(&["complete", "--op", "down"]).status.code(), Some(2));
    assert_eq!(
        ordlat(&["complete", "--op", "down", "--poset", "chain:65"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(ordlat(&["gen", "--max-n", "7"]).status.code(), Some(3));
    let tiny = Command::new(env!("CARGO_BIN_EXE_ordlat"))
        .args([
            "check", "--suite", "cor32", "--max-n", "3", "--format", "jsonl",
        ])
        .env("ORDLAT_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(tiny.status.code(), Some(3));
    assert!(stdout(&tiny).contains(r#""verdict":"unknown""#));
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let poset = dir.path().join("p.json");
    std::fs::write(
        &poset,
        r#"{"n":3,"leq":[[0,1],[0,2]],"labels":["z","x","y"]}"#,
    )
    .unwrap();
    let fam = dir.path().join("f.json");
    let p = poset.to_str().unwrap();
    let o = ordlat(&[
        "complete",
        "--op",
        "Id",
        "--input",
        p,
        "--format",
        "jsonl",
        "--out",
        fam.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&fam).unwrap(),
        "{\"kind\":\"ideal\",\"base_n\":3,\"sets\":[0,1,3,5],\"leq\":[[0,1],[1,2],[1,3]]}\n"
    );
    let dot = stdout(&ordlat(&["render", "--family", fam.to_str().unwrap()]));
    assert!(dot.starts_with("digraph \"ideal\""));
    assert!(dot.contains("n1 -> n3"));
    let o = ordlat(&["check", "--suite", "thm21", "--input", p]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&poset, r#"{"n":2,"leq":[[0,1],[1,0]]}"#).unwrap();
    assert_eq!(ordlat(&["render", "--input", p]).status.code(), Some(2));
}

#[test]
fn gen_table_and_lines() {
    let o = ordlat(&["gen", "--max-n", "4"]);
    assert_eq!(
        stdout(&o),
        " n  count\n 0      1\n 1      1\n 2      2\n 3      5\n 4     16\n"
    );
    let o = ordlat(&["gen", "--max-n", "2", "--format", "jsonl"]);
    assert_eq!(stdout(&o), "{\"id\":\"n0-0\",\"leq\":[],\"n\":0}\n{\"id\":\"n1-0\",\"leq\":[],\"n\":1}\n{\"id\":\"n2-0\",\"leq\":[],\"n\":2}\n{\"id\":\"n2-1\",\"leq\":[[0,1]],\"n\":2}\n");
}

#[test]
fn idpow_and_builtins() {
    let o = ordlat(&[
        "complete", "--op", "idpow", "--k", "2", "--poset", "diamond", "--format", "jsonl",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["sets"].as_array().unwrap().len(), 4);
    let o = ordlat(&["counterexample", "--name", "idemb-tower", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("4 elements"));
    let o = ordlat(&["render", "--poset", "corpus:n3-2"]);
    assert_eq!(o.status.code(), Some(0));
}
