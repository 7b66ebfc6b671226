use hyperarr::cli::run;
use serde_json::Value;

fn ok(args: &[&str]) -> String {
    let (code, out) = run(std::iter::once("hyperarr").chain(args.iter().copied()));
    assert_eq!(code, 0, "{args:?}: {out}");
    out
}

fn json(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.push("--json");
    serde_json::from_str(&ok(&v)).unwrap()
}

#[test]
fn charpoly_ascending_with_cross_check() {
    let out = ok(&["charpoly", "--catalog", "braid(4)"]);
    assert!(out.contains("chi(t) = -6t + 11t^2 - 6t^3 + t^4"), "{out}");
    assert!(out.contains("check deletion-restriction: pass"));
    assert!(out.lines().last().unwrap().starts_with("time:"));
}

#[test]
fn reads_arrangement_files() {
    let path = std::env::temp_dir().join(format!("hyperarr-cli-{}.arr", std::process::id()));
    let text = ok(&["catalog", "--catalog", "braid(3)"]);
    let body: String = text.lines().filter(|l| !l.contains(':')).map(|l| format!("{l}\n")).collect();
    std::fs::write(&path, body).unwrap();
    let v = json(&["regions", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(v["result"]["regions"], 6);
    assert_eq!(v["arrangement"]["n"], 3);
}

#[test]
fn json_report_shape() {
    let v = json(&["os", "--catalog", "braid(4)"]);
    assert_eq!(v["command"], "os");
    assert_eq!(v["seed"], 0x5eed);
    assert_eq!(v["result"]["hilbert_series"], serde_json::json!([1, 6, 11, 6]));
    assert_eq!(v["checks"][0]["passed"], true);
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn resonance_census_and_audit() {
    let v = json(&["resonance", "--catalog", "braid(4)", "--threads", "2"]);
    let comps = v["result"]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 5);
    assert!(comps.iter().all(|c| c["dimension"] == 2));
    assert_eq!(v["result"]["audit"]["exceptions"].as_array().unwrap().len(), 0);
}

#[test]
fn pencil_and_critical() {
    let out = ok(&["pencil", "--catalog", "ceva(2)", "--classes", "1,2|3,4|5,6"]);
    assert!(out.contains("dependencies (1, 1, 1)"), "{out}");
    let out = ok(&["critical", "--catalog", "ceva(2)", "--classes", "1,2|3,4|5,6"]);
    assert!(out.contains("check critical-residuals-zero: pass"), "{out}");
}

#[test]
fn neighborly_lists_opposite_pairs() {
    let out = ok(&["neighborly", "--catalog", "braid(4)"]);
    assert!(out.contains("12,34 | 13,24 | 14,23"), "{out}");
}

#[test]
fn chen_reports_low_degree_mismatch() {
    let v = json(&["chen", "--catalog", "braid(4)", "--max-degree", "5"]);
    assert_eq!(v["result"]["theta"], serde_json::json!([6, 4, 10, 15, 20]));
    assert_eq!(v["result"]["comparison"]["equal_from"], 3);
}

#[test]
fn exit_codes() {
    let (code, out) = run(["hyperarr", "poset", "--catalog", "nonsense"]);
    assert_eq!(code, 1);
    assert!(out.contains("unknown catalog"));
    let (code, out) = run(["hyperarr", "resonance", "--catalog", "hessian", "--field", "fp", "--p", "3", "--budget", "100"]);
    assert_eq!(code, 2, "{out}");
    let (code, _) = run(["hyperarr", "poset"]);
    assert_eq!(code, 1);
    let (code, _) = run(["hyperarr", "frobnicate"]);
    assert_eq!(code, 1);
    let (code, out) = run(["hyperarr", "critical", "--catalog", "braid(4)", "--classes", "12,34|13,24|14,23"]);
    assert_eq!(code, 1, "{out}");
}
