use std::path::PathBuf;

use serde_json::Value;

use nonstd::cli::{run, Outcome};

fn nonstd(args: &[&str]) -> Outcome {
    run(std::iter::once("nonstd").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    let text = if o.stdout.is_empty() {
        &o.stderr
    } else {
        &o.stdout
    };
    serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"))
}

fn space_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nonstd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const SIERPINSKI: &str = r#"{"points":["a","b"],"opens":[[],["a"],["a","b"]]}"#;
const DISCRETE3: &str = r#"{"points":["0","1","2"],"opens":[[],["0"],["1"],["2"],["0","1"],["0","2"],["1","2"],["0","1","2"]]}"#;
const THREE_POINT: &str =
    r#"{"points":["0","1","2"],"opens":[[],["0"],["0","1"],["0","2"],["0","1","2"]]}"#;

#[test]
fn hyper_eval_reports() {
    let o = nonstd(&["hyper", "eval", "(2+e)/(1+3*e)"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["canonical"], "(2+e)/(1+3*e)");
    assert_eq!(v["classification"], "appreciable");
    assert_eq!(v["st"], "2");

    let v = json(&nonstd(&["hyper", "eval", "1/e"]));
    assert_eq!(
        (v["classification"].as_str(), v["st"].as_str()),
        (Some("infinite"), Some("+inf"))
    );

    let o = nonstd(&["hyper", "eval", "(1)/(0)"]);
    assert_eq!(o.code, 2);
    assert!(json(&o)["error"]
        .as_str()
        .unwrap()
        .contains("zero-denominator"));
}

#[test]
fn germ_compare_verdicts() {
    let o = nonstd(&["germ", "compare", "rf(1/n)", "ep([];[0])", "lt"]);
    assert_eq!(
        (o.code, json(&o)["verdict"].as_str()),
        (1, Some("false-ae"))
    );
    assert!(json(&o).get("witness").is_some());

    let o = nonstd(&["germ", "compare", "ep([];[0,1])", "ep([];[0])", "eq"]);
    assert_eq!(json(&o)["verdict"], "ultrafilter-dependent");

    let o = nonstd(&["germ", "compare", "ep([];[0])", "rf(1/n)", "lt"]);
    assert_eq!((o.code, json(&o)["verdict"].as_str()), (0, Some("true-ae")));

    assert_eq!(
        nonstd(&["germ", "compare", "rf(n)", "ep([];[0,1])", "eq"]).code,
        2
    );
}

#[test]
fn topo_check_verdicts() {
    let s = space_file("sierpinski.json", SIERPINSKI);
    let o = nonstd(&[
        "topo",
        "check",
        s.to_str().unwrap(),
        "--property",
        "regular",
    ]);
    assert_eq!(o.code, 1);
    let v = &json(&o)["verdicts"][0];
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"]["points"], serde_json::json!(["a"]));
    assert_eq!(v["witness"]["sets"], serde_json::json!([["b"]]));

    let d = space_file("discrete.json", DISCRETE3);
    let o = nonstd(&["topo", "check", d.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stdout);

    let bad = space_file(
        "bad.json",
        r#"{"points":["a","b"],"opens":[["a"],["a","b"]]}"#,
    );
    assert_eq!(nonstd(&["topo", "check", bad.to_str().unwrap()]).code, 2);
    assert_eq!(
        nonstd(&["topo", "check", "/nonexistent/space.json"]).code,
        2
    );
}

#[test]
fn topo_hull_examples() {
    let x = space_file("three.json", THREE_POINT);
    let o = nonstd(&["topo", "hull", x.to_str().unwrap(), "--stone-cech"]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["classes"].as_array().unwrap().len(), 1);

    let d = space_file("discrete-hull.json", DISCRETE3);
    let fam = space_file("family.json", r#"{"f":{"0":0,"1":0,"2":1}}"#);
    let o = nonstd(&[
        "topo",
        "hull",
        d.to_str().unwrap(),
        "--family",
        fam.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(json(&o)["classes"], serde_json::json!([["0", "1"], ["2"]]));

    let s = space_file("sierpinski-hull.json", SIERPINSKI);
    let bad = space_file("bad-family.json", r#"{"f":{"a":0,"b":"1/2"}}"#);
    let o = nonstd(&[
        "topo",
        "hull",
        s.to_str().unwrap(),
        "--family",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 2);
    assert!(json(&o).get("witness").is_some());
}

#[test]
fn topo_dot_and_reflect() {
    let s = space_file("sierpinski-dot.json", SIERPINSKI);
    let o = nonstd(&["--format", "dot", "topo", "dot", s.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("digraph specialization {"));
    let o = nonstd(&["topo", "reflect", s.to_str().unwrap()]);
    assert_eq!(o.code, 0);
}

#[test]
fn audit_counts() {
    let o = nonstd(&["audit", "--max-points", "3"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["largest_size_count"], 29);
    assert_eq!(nonstd(&["audit", "--max-points", "9"]).code, 2);
}

#[test]
fn bqf_eval_and_define() {
    let o = nonstd(&[
        "bqf",
        "eval",
        "(forall x in S) x in S",
        "--bind",
        "S={a,b}",
        "--atoms",
        "a,b",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(nonstd(&["bqf", "eval", "(forall x in S"]).code, 2);
}

#[test]
fn output_is_byte_deterministic() {
    let d = space_file("determinism.json", THREE_POINT);
    for args in [
        vec!["topo", "check", d.to_str().unwrap()],
        vec!["--seed", "7", "audit", "--max-points", "2"],
        vec!["--format", "table", "hyper", "eval", "e^(1/2) + 3"],
    ] {
        let a = nonstd(&args);
        let b = nonstd(&args);
        assert_eq!(
            (a.code, &a.stdout, &a.stderr),
            (b.code, &b.stdout, &b.stderr)
        );
    }
}
