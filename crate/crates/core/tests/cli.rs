use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    json: Value,
}

fn rbminor(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_rbminor")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    Run {
        code: out.status.code().unwrap(),
        json: serde_json::from_str(stdout.trim()).unwrap_or(Value::Null),
    }
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rbminor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn certify_both_outcomes() {
    let odd = scratch("odd.txt", "3 3\n0 1 R\n1 2 R\n0 2 R\n");
    let r = rbminor(&["certify", arg(&odd)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["status"], "certificate");
    assert_eq!(r.json["payload"]["kind"], "r_odd");
    assert_eq!(r.json["payload"]["red_count"], 3);

    let even = scratch("even.txt", "3 3\n0 1 R\n1 2 R\n0 2 B\n");
    let r = rbminor(&["certify", arg(&even)]);
    assert_eq!(r.json["payload"]["kind"], "partition");
}

#[test]
fn random_output_round_trips() {
    let r = rbminor(&["random", "--n", "9", "--p", "0.6", "--seed", "3", "--red", "0.5"]);
    assert_eq!(r.code, 0);
    let text = r.json["payload"]["text"].as_str().unwrap();
    let file = scratch("random.txt", text);
    let half = rbminor(&["extract-half", arg(&file), "--order", "8,7,6,5,4,3,2,1,0"]);
    assert_eq!(half.code, 0);
    let e = half.json["payload"]["edges"].as_u64().unwrap();
    assert!(2 * half.json["payload"]["kept"].as_u64().unwrap() >= e);
}

#[test]
fn tk_report_verifies() {
    let text = rbminor(&["random", "--n", "21", "--p", "1", "--seed", "9", "--red", "0.4"]).json["payload"]["text"]
        .as_str()
        .unwrap()
        .to_string();
    let host = scratch("k21.txt", &text);
    let built = rbminor(&["tk-build", arg(&host), "--t", "4"]);
    assert_eq!(built.code, 0);
    let report = scratch("tk.json", &built.json.to_string());
    let v = rbminor(&["verify", "tk", arg(&host), arg(&report)]);
    assert_eq!(v.code, 0);
    assert_eq!(v.json["payload"]["t"], 4);
}

#[test]
fn pipeline_on_subdivided_clique() {
    let h = scratch("h.txt", "5 4\n0 1\n1 2\n2 3\n3 4\n");
    let gh = rbminor(&["gh", arg(&h)]);
    let payload = &gh.json["payload"];
    let mut model = payload["text"].as_str().unwrap().to_string();
    for (i, part) in payload["parts"].as_array().unwrap().iter().enumerate() {
        let vs: Vec<String> = part.as_array().unwrap().iter().map(|v| v.to_string()).collect();
        model.push_str(&format!("part {i}: {}\n", vs.join(" ")));
    }
    let file = scratch("gh_model.txt", &model);
    let r = rbminor(&["pipeline", arg(&file), "--epsilon", "0.25"]);
    assert_eq!(r.code, 0, "{}", r.json);
    let checks = &r.json["payload"]["checks"];
    assert!(["disjoint", "connected", "pairwise_adjacent", "bipartite"].iter().all(|k| checks[k] == true));
    let report = scratch("pipeline.json", &r.json.to_string());
    assert_eq!(rbminor(&["verify", "pipeline", arg(&file), arg(&report)]).code, 0);
}

#[test]
fn aux_and_lift() {
    // triangle of singleton parts joined through paths of length 2 and 1
    let model = scratch("model.txt", "4 4\n0 1\n1 2\n0 3\n2 3\npart 0: 0\npart 1: 1\npart 2: 2 3\n");
    let r = rbminor(&["aux", arg(&model)]);
    assert_eq!(r.code, 0, "{}", r.json);
    let pairs = scratch("pairs.txt", "0 1\n1 2\n0 2\n");
    let r = rbminor(&["lift", arg(&model), arg(&pairs)]);
    assert_eq!(r.code, 0, "{}", r.json);
    assert!(r.json["payload"]["lift"]["bipartite"].is_boolean());
}

#[test]
fn experiment_writes_jsonl() {
    let path = std::env::temp_dir().join(format!("rbminor-cli-{}-trials.jsonl", std::process::id()));
    let r = rbminor(&["experiment", "--n", "5", "--trials", "4", "--seed", "1", "--jsonl", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["timing"]["runtime_ms"].as_array().unwrap().len(), 4);
    let lines = std::fs::read_to_string(&path).unwrap();
    assert_eq!(lines.lines().count(), 4);
    for line in lines.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["h"], 5);
        assert!(v["runtime_ms"].is_u64());
    }
}

#[test]
fn exit_codes() {
    let bad = scratch("bad.txt", "3 1\n0 9\n");
    let r = rbminor(&["certify", arg(&bad)]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json["payload"]["kind"], "parse");

    let big = scratch("k11.txt", rbminor(&["random", "--n", "11", "--p", "1", "--seed", "0"]).json["payload"]["text"]
        .as_str()
        .unwrap());
    assert_eq!(rbminor(&["oracle", "hadwiger", arg(&big)]).code, 3);

    let k2 = scratch("k2.txt", "2 1\n0 1\n");
    let r = rbminor(&["pipeline", arg(&k2)]);
    assert_eq!(r.code, 4);
    assert_eq!(r.json["payload"]["kind"], "budget_exhausted");

    let red_k2 = scratch("red_k2.txt", "2 1\n0 1 R\n");
    let r = rbminor(&["tk-build", arg(&red_k2), "--t", "3"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json["payload"]["kind"], "host_too_small");
    assert_eq!(rbminor(&["experiment", "--n", "4", "--trials", "1"]).code, 1);
}
