use sconn_cli::{run, Status};
use serde_json::{json, Value};

fn sconn(args: &str) -> (i32, String) {
    let argv = std::iter::once("sconn").chain(args.split_whitespace());
    let r = run(argv);
    assert_eq!(r.exit_code() == 0, r.status == Status::Ok);
    (r.exit_code(), r.payload)
}

fn sconn_json(args: &str) -> (i32, Value) {
    let (code, text) = sconn(args);
    (
        code,
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args}: {e}: {text}")),
    )
}

#[test]
fn zsigmondy_exception_and_prime() {
    let (code, v) = sconn_json("zsigmondy 2 6");
    assert_eq!(code, 0);
    assert_eq!(v["prime"], Value::Null);
    assert_eq!(v["exception"], "zsigmondy");
    assert_eq!(v["schema"], 1);
    assert_eq!(sconn("zsigmondy 2 10 --quiet"), (0, "11".to_string()));
}

#[test]
fn main_theorem_example() {
    let (code, v) = sconn_json("maintheorem builtin:A5 --a builtin:A4_in_A5 --b builtin:C5_in_A5");
    assert_eq!(code, 0);
    assert_eq!(
        (v["c1"].clone(), v["c2"].clone(), v["c3"].clone()),
        (json!(false), json!(false), json!(false))
    );
    assert_eq!(v["witness"], json!({"a": "(2,3,4)", "b": "(1,2,3,4,5)"}));
}

#[test]
fn group_info_and_radical() {
    let (_, v) = sconn_json("group info builtin:S4");
    assert_eq!(v["order"], 24);
    assert_eq!(v["soluble"], true);
    assert_eq!(v["derived_length"], 3);
    assert_eq!(v["radical_order"], 24);
    let (code, v) = sconn_json("radical builtin:S4xA5 --method both");
    assert_eq!(code, 0);
    assert_eq!(v["order"], 24);
}

#[test]
fn independence() {
    assert_eq!(
        sconn_json("independent builtin:A5 3 5").1["independent"],
        true
    );
    assert_eq!(
        sconn("independent builtin:A5 2 3 --quiet"),
        (0, "false".to_string())
    );
}

#[test]
fn arithmetic_commands() {
    let (_, v) = sconn_json("lieorder linear 2 7");
    assert_eq!(
        (v["order"].clone(), v["out_order"].clone()),
        (json!(168), json!(2))
    );
    let (_, v) = sconn_json("lieprimes linear 6 2");
    assert_eq!(
        (v["r"].clone(), v["s"].clone(), v["t"].clone()),
        (Value::Null, json!(31), json!(5))
    );
    assert_eq!(
        sconn_json("ackcert symplectic 3 3 7 13").1["certified"],
        true
    );
}

#[test]
fn graph_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a5.dot");
    let (code, _) = sconn(&format!(
        "graph soluble builtin:A5 --format dot --out {}",
        path.display()
    ));
    assert_eq!(code, 0);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph G {"));
    assert!(dot.contains("2 -- 3;") && dot.contains("2 -- 5;") && !dot.contains("3 -- 5;"));
}

#[test]
fn exit_codes_and_error_shape() {
    let (code, v) = sconn_json("radical builtin:S8 --method bruteforce --budget-order 100");
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "budget_exceeded");
    assert_eq!(v["error"]["context"]["command"], "radical");
    assert!(v["error"]["message"].is_string());

    let (code, v) = sconn_json("lieorder bogus 2 7");
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "invalid_parameters");

    assert_eq!(sconn_json("frobnicate").0, 1);
    assert_eq!(sconn_json("group info builtin:Q8").0, 1);
    assert_eq!(sconn_json("group info /no/such/file").0, 1);
}

#[test]
fn file_sources() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.gens");
    std::fs::write(&path, "degree 3\n(1,2)\n(1,2,3)\n").unwrap();
    let (code, v) = sconn_json(&format!("group info {}", path.display()));
    assert_eq!(code, 0);
    assert_eq!(v["order"], 6);
}

#[test]
fn output_is_stable_across_runs_and_job_counts() {
    for cmd in [
        "graph soluble builtin:psl2_7",
        "sconnect builtin:S4 --a builtin:A4_in_S4 --b builtin:C2_in_S4",
        "factorizations builtin:S3 --check-maintheorem",
    ] {
        let one = sconn(&format!("{cmd} --jobs 1"));
        let two = sconn(&format!("{cmd} --jobs 2"));
        let again = sconn(cmd);
        assert_eq!(one, two, "{cmd}");
        assert_eq!(one, again, "{cmd}");
    }
}

#[test]
fn factorization_count_of_s3() {
    // S3 = AB for: (1, S3), (S3, 1), (S3, S3), (C2, S3) and (S3, C2) for each of
    // three C2, (C3, S3), (S3, C3), (C2, C3) and (C3, C2) for each C2.
    let (_, v) = sconn_json("factorizations builtin:S3");
    assert_eq!(v["count"], 17);
}
