use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lab")).args(args).env_remove("LAB_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("lab-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

/// Suite lines with the timing field removed.
fn untimed(s: &str) -> Vec<Value> {
    s.lines()
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("timing");
            v
        })
        .collect()
}

#[test]
fn flux_axioms_suite_passes_and_repeats() {
    let a = lab(&["suite", "flux-axioms", "--samples", "60"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = lab(&["suite", "flux-axioms", "--samples", "60"]);
    let (ra, rb) = (untimed(&stdout(&a)), untimed(&stdout(&b)));
    assert_eq!(ra, rb);
    assert!(ra.iter().all(|r| r["passed"] == true && r["suite"] == "flux-axioms"));
    assert!(ra.iter().any(|r| r["test"] == "pseudometric"));
}

#[test]
fn detour_r1_suite_passes() {
    let o = lab(&["suite", "detour-R1", "--samples", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let rs = untimed(&stdout(&o));
    assert!(rs.len() >= 4);
    assert!(rs.iter().all(|r| r["instances"].as_u64().unwrap() > 0));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = lab(&["suite", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
    assert_eq!(lab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn parallel_suites_match_single_runs() {
    let dir = scratch("par");
    let o = lab(&["suite", "flux-axioms", "straight", "--samples", "30", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["flux-axioms", "straight"] {
        let file = std::fs::read_to_string(dir.join(format!("{name}.jsonl"))).unwrap();
        let single = lab(&["suite", name, "--samples", "30"]);
        assert_eq!(untimed(&file), untimed(&stdout(&single)), "{name}");
    }
}

#[test]
fn seed_env_reaches_the_reports() {
    let o = Command::new(env!("CARGO_BIN_EXE_lab"))
        .args(["suite", "flux-axioms", "--samples", "10"])
        .env("LAB_SEED", "7")
        .output()
        .unwrap();
    let rs = untimed(&stdout(&o));
    assert!(rs.iter().all(|r| r["seed"] == 7));
}

#[test]
fn export_neighborhoods() {
    let o = lab(&["export", "--window=-2:2", "--center", "U0", "--radius", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert_eq!(dot.matches("label=").count(), 1);
    assert!(!dot.contains(" -- "));

    let o = lab(&["export", "--window=-2:2", "--center", "U0", "--radius", "1", "--format", "json"]);
    let g: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let labels = g["labels"].as_array().unwrap();
    let c = labels.iter().position(|l| l == "[U0]").unwrap();
    for (u, vs) in g["adj"].as_array().unwrap().iter().enumerate() {
        let vs = vs.as_array().unwrap();
        if u == c {
            assert_eq!(vs.len(), labels.len() - 1);
        } else {
            assert_eq!(vs.len(), 1, "leaf {u} has other edges");
        }
    }

    let a = stdout(&lab(&["export", "--window=-2:2", "--center", "U0", "--radius", "1"]));
    let b = stdout(&lab(&["export", "--window=-2:2", "--center", "U0", "--radius", "1"]));
    assert_eq!(a, b);

    let o = lab(&["export", "--window=-2:2", "--center", "U9", "--radius", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in the slice"));
}

#[test]
fn flute_detour_round_trip() {
    let dir = scratch("flute");
    let spec = write(&dir, "flute.json", r#"{"n_discrete":1,"n_cantor":0,"genus":"zero","accumulated":[]}"#);
    let path = dir.join("path.json");
    let o = lab(&["detour", "--surface", &spec, "--o", "U0", "--a", "U3", "--b", "U-3", "-R", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let p = path.to_str().unwrap();
    assert_eq!(lab(&["verify", p, "--o", "U0", "-R", "1"]).status.code(), Some(0));
    assert_eq!(lab(&["verify", p, "--o", "U0", "-R", "4"]).status.code(), Some(1));

    let o = lab(&["detour", "--surface", &spec, "--o", "U0", "--a", "U3", "--b", "U-2", "-R", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn general_detour_round_trip() {
    let dir = scratch("general");
    let spec = write(&dir, "s.json", r#"{"n_discrete":1,"n_cantor":1,"genus":"infinite","accumulated":[]}"#);
    let base = |k: &str| {
        let o = lab(&["general", "base", "--surface", &spec, &format!("--copy={k}")]);
        write(&dir, &format!("base{k}.json"), &stdout(&o))
    };
    let (o, a, b) = (base("0"), base("3"), base("-3"));
    let flux: Value = serde_json::from_str(&stdout(&lab(&["metric", "flux", &o, &a]))).unwrap();
    assert_eq!(flux["total"], 3);
    let full: Value = serde_json::from_str(&stdout(&lab(&["general", "full", &o, &a]))).unwrap();
    assert_eq!(full["full"], true);

    let path = dir.join("path.json");
    let out = lab(&["detour", "--surface", &spec, "--o", &o, "--a", &a, "--b", &b, "-R", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = lab(&["verify", path.to_str().unwrap(), "--o", &o, "-R", "1"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn flute_and_metric_commands() {
    let v: Value = serde_json::from_str(&stdout(&lab(&["flute", "partition", "U0 D2 U3"]))).unwrap();
    assert_eq!(v["threshold"], 4);
    assert_eq!(v["extra"], serde_json::json!([1, 2]));
    let v: Value = serde_json::from_str(&stdout(&lab(&["metric", "flux", "U0", "U3"]))).unwrap();
    assert_eq!(v["total"], 3);
    let v: Value = serde_json::from_str(&stdout(&lab(&["metric", "side", "U0", "U3"]))).unwrap();
    assert_eq!(v["side"], "Right");
    let v: Value = serde_json::from_str(&stdout(&lab(&["flute", "neighbors", "U0", "--carrier=-1:2"]))).unwrap();
    let ns = v["neighbors"].as_array().unwrap();
    assert!(ns.contains(&"[U1]".into()) && ns.contains(&"[U-1]".into()));

    let dir = scratch("diagram");
    let d = write(&dir, "tau.json", r#"{"crossings":[{"gap":0,"dir":"U"},{"gap":2,"dir":"D"},{"gap":3,"dir":"U"}],"succ":[1,2,0]}"#);
    let v: Value = serde_json::from_str(&stdout(&lab(&["flute", "canon", &d]))).unwrap();
    assert_eq!(v["word"], "[U0 D2 U3]");

    let o = lab(&["oracle", "--window=-3:3", "dist", "U-3", "U3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["distance"], 6);
}

#[test]
fn spec_validation_exit_codes() {
    let dir = scratch("spec");
    let good = write(&dir, "good.json", r#"{"n_discrete":2,"n_cantor":1,"genus":1,"accumulated":[]}"#);
    let bad = write(&dir, "bad.json", r#"{"n_discrete":0,"n_cantor":0,"genus":"zero","accumulated":[]}"#);
    assert_eq!(lab(&["spec", "validate", &good]).status.code(), Some(0));
    assert_eq!(lab(&["spec", "validate", &bad]).status.code(), Some(1));
    assert_eq!(lab(&["spec", "validate", "{not json"]).status.code(), Some(2));
}
