use std::process::{Command, Output};

use serde_json::Value;

fn sympcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sympcoh")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

fn witness<'a>(r: &'a Value, check: &str) -> &'a Value {
    let c = r["checks"].as_array().unwrap().iter().find(|c| c["check"] == check).unwrap();
    &c["witness"]
}

#[test]
fn class_numbers_of_small_discriminants() {
    for (disc, h) in [("-20", 2), ("-4", 1), ("-3", 1), ("-23", 3), ("-56", 4)] {
        let out = sympcoh(&["classgroup", "--disc", disc]);
        assert_eq!(out.status.code(), Some(0), "{disc}");
        let r = report(&out);
        assert_eq!(witness(&r, "class_number_matches_oracle")["h"], h, "{disc}");
    }
}

#[test]
fn invalid_discriminant_is_a_usage_error() {
    for disc in ["-12", "5", "-1"] {
        let out = sympcoh(&["classgroup", "--disc", disc]);
        assert_eq!(out.status.code(), Some(2), "{disc}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn homology_examples() {
    let r = report(&sympcoh(&["homology", "--n", "2", "--group", "2"]));
    let degrees = witness(&r, "wedge_n2_Z/2")["homology"].as_array().unwrap().clone();
    assert_eq!(degrees.last().unwrap()["rank"], 1);
    let r = report(&sympcoh(&["homology", "--n", "1", "--group", "3"]));
    assert_eq!(witness(&r, "wedge_n1_Z/3")["homology"][0]["rank"], 2);
    let r = report(&sympcoh(&["homology", "--n", "2", "--group", "1"]));
    assert!(witness(&r, "wedge_n2_0")["homology"].as_array().unwrap().iter().all(|d| d["rank"] == 0));
    assert_eq!(sympcoh(&["homology", "--n", "5", "--group", "2"]).status.code(), Some(2));
    assert_eq!(sympcoh(&["homology", "--n", "2", "--group", "5"]).status.code(), Some(2));
}

#[test]
fn symbolic_surjectivity_passes() {
    for n in ["1", "2", "3"] {
        assert_eq!(sympcoh(&["verify-symbolic", "--n", n]).status.code(), Some(0));
    }
    assert_eq!(sympcoh(&["verify-symbolic", "--n", "6"]).status.code(), Some(2));
}

#[test]
fn nonintegrality_examples() {
    let r = report(&sympcoh(&["nonintegrality", "--cl", "5", "--n", "2"]));
    let w = witness(&r, "integral_bound_cl5_n2");
    assert!(w["count"].as_u64().unwrap() <= 1);
    assert_eq!(w["full_rank"], 16);
    assert_eq!(sympcoh(&["nonintegrality", "--cl", "3", "--n", "3"]).status.code(), Some(0));
    assert_eq!(sympcoh(&["nonintegrality", "--cl", "1", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn rank_two_pushforward_is_the_cube_sum() {
    let out = sympcoh(&["pushforward", "--disc", "-20", "--classes", "0:1,1:0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(witness(&r, "pushforward_in_cube_class")["span_rank_of_difference"], 0);
}

#[test]
fn standard_frame_has_zero_class() {
    let r = report(&sympcoh(&["pushforward", "--disc", "-20", "--n", "2", "--standard"]));
    assert_eq!(witness(&r, "pushforward_is_cycle")["chain"], Value::Array(vec![]));
    assert_eq!(r["checks"][1]["status"], "pass");
}

#[test]
fn frame_file_round_trip() {
    let path = std::env::temp_dir().join(format!("sympcoh-frame-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = sympcoh(&["build-frame", "--disc", "-20", "--classes", "1:0,0:1", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    let v = sympcoh(&["verify-frame", "--frame", p]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(report(&v)["checks"].as_array().unwrap().len(), 11);
    assert_eq!(sympcoh(&["pushforward", "--frame", p]).status.code(), Some(0));
    std::fs::remove_file(path).ok();
}

#[test]
fn corrupted_frame_fails_verification() {
    let path = std::env::temp_dir().join(format!("sympcoh-bad-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(sympcoh(&["build-frame", "--disc", "-20", "--classes", "1:0,0:1", "--out", p]).status.code(), Some(0));
    let mut frame: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // Make I_{-1} a copy of I_1.
    let pieces = frame["pieces"].as_array_mut().unwrap();
    let first = pieces.iter().find(|x| x["index"] == 1).unwrap()["lattice"].clone();
    pieces.iter_mut().find(|x| x["index"] == -1).unwrap()["lattice"] = first;
    std::fs::write(&path, frame.to_string()).unwrap();
    assert_eq!(sympcoh(&["verify-frame", "--frame", p]).status.code(), Some(1));
    std::fs::remove_file(path).ok();
}

#[test]
fn malformed_class_lists_are_usage_errors() {
    for text in ["0:0", "0:7", "zero:1", "0-1"] {
        assert_eq!(sympcoh(&["pushforward", "--disc", "-20", "--classes", text]).status.code(), Some(2), "{text}");
    }
    assert_eq!(sympcoh(&["pushforward", "--disc", "-20"]).status.code(), Some(2));
    assert_eq!(sympcoh(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn jobs_do_not_change_the_report() {
    let strip = |out: Output| {
        let mut r = report(&out);
        r["elapsed_ms"] = Value::Null;
        r
    };
    let one = strip(sympcoh(&["verify-frame", "--disc", "-20", "--n", "2", "--all-s"]));
    let four = strip(sympcoh(&["verify-frame", "--disc", "-20", "--n", "2", "--all-s", "--jobs", "4"]));
    assert_eq!(one, four);
    assert_eq!(one["checks"].as_array().unwrap().len(), 44);
}

#[test]
fn seeded_reports_are_reproducible() {
    let run = || {
        let out = sympcoh(&["lattice-props", "--samples", "12", "--seed", "7"]);
        assert_eq!(out.status.code(), Some(0));
        let mut r = report(&out);
        r["elapsed_ms"] = Value::Null;
        r
    };
    assert_eq!(run(), run());
}
