use std::process::{Command, Output};

fn reptile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reptile"))
        .args(args)
        .env_remove("REPTILE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = reptile(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn triangle_verdict_table() {
    let o = reptile(&["verdicts", "--domain", "triangle", "--cutoff", "100", "--format", "csv"]);
    assert!(o.status.success());
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    let sharp: Vec<String> = reader
        .records()
        .map(|r| r.unwrap())
        .filter(|r| &r[5] == "yes")
        .map(|r| r[0].to_string())
        .collect();
    assert_eq!(sharp, ["1", "2", "3", "4", "6"]);
}

#[test]
fn box_spectrum_is_simple_in_three_dimensions() {
    let v = json(&["spectrum", "--domain", "box", "--dim", "3", "--cutoff", "10", "--format", "json"]);
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 17);
    assert!(levels.iter().all(|l| l["members"].as_array().unwrap().len() == 1));
}

#[test]
fn nodal_count_and_svg() {
    let path = std::env::temp_dir().join(format!("reptile-nodal-{}.svg", std::process::id()));
    let v = json(&["nodal", "--domain", "triangle", "--qn", "3,3", "--svg", path.to_str().unwrap()]);
    assert_eq!(v["nu"], 10);
    assert_eq!(v["formula"], 10);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml") && svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["verdicts", "--domain", "box", "--dim", "2", "--cutoff", "80", "--format", "json"];
    assert_eq!(reptile(&args).stdout, reptile(&args).stdout);
    let args = ["checkframe", "--qn", "5,0", "--qn", "4,3", "--coef", "0.3", "--coef", "-0.7"];
    assert_eq!(reptile(&args).stdout, reptile(&args).stdout);
}

#[test]
fn explain_names_the_witness() {
    let o = reptile(&["verdicts", "--cutoff", "100", "--explain", "7"]);
    let text = stdout(&o);
    assert!(text.contains("(2,0) and (2,2)"), "{text}");
}

#[test]
fn point_syntax_and_eval() {
    let v = json(&["eval", "--qn", "1,0", "--at", "pi/2,pi/2"]);
    assert!(v["value"].as_f64().unwrap().abs() < 1e-15);
    let v = json(&["eval", "--domain", "box", "--qn", "2,1", "--at", "0,0"]);
    assert_eq!(v["value"].as_f64().unwrap(), 1.0);
}

#[test]
fn frames_and_deficiency() {
    let v = json(&["frame", "--domain", "box", "--dim", "2", "--k", "2", "--json"]);
    assert_eq!(v["partition"]["count"], 3);
    let v = json(&["checksym", "--qn", "2,1"]);
    assert_eq!(v["symmetry"], "Odd");
    let v = json(&["dirichlet-check", "--lambda", "6"]);
    assert_eq!(v["holds"], true);
    assert_eq!(v["check"]["lhs"], 0);
    let v = json(&["deficiency", "--lambda", "9"]);
    assert_eq!(v["boundary_bound"], 1);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["spectrum", "--cutoff", "0"][..],
        &["nodal", "--qn", "1,x"],
        &["nodal", "--qn", "1,2"],
        &["verdicts", "--domain", "box", "--dim", "1", "--cutoff", "100"],
        &["eval", "--qn", "1,0", "--at", "pi/2"],
        &["frobnicate"],
    ] {
        assert_eq!(reptile(args).status.code(), Some(2), "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_reptile"))
        .args(["spectrum", "--cutoff", "5"])
        .env("REPTILE_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_runs_single_criteria() {
    let o = Command::new(env!("CARGO_BIN_EXE_reptile"))
        .args(["selftest", "--criterion", "9", "--criterion", "4"])
        .env("REPTILE_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.starts_with("[PASS]")), "{text}");
}
