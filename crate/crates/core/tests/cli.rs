use std::path::Path;
use std::process::{Command, Output};

use flagcurv::curvature::is_k_large;
use flagcurv::generators::{disk_vertex_count, generate, CorpusSpec};
use flagcurv::io::{ComplexFile, MapFile, Outcome, Report};
use flagcurv::{Verdict, Witness};
use serde_json::Value;
use tempfile::TempDir;

fn flagcurv(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagcurv"))
        .args(args)
        .current_dir(dir)
        .env_remove("FLAGCURV_DELTA_CAP")
        .output()
        .unwrap()
}

fn gen(dir: &Path, spec: &str, file: &str) {
    let mut args = vec!["gen"];
    args.extend(spec.split(' '));
    args.extend(["-o", file]);
    let out = flagcurv(dir, &args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

fn report(out: &Output) -> Report {
    Report::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

fn details(out: &Output, i: usize) -> Value {
    report(out).checks[i].details.clone().unwrap()
}

fn load(dir: &Path, file: &str) -> flagcurv::FlagComplex {
    ComplexFile::parse(&std::fs::read_to_string(dir.join(file)).unwrap()).unwrap().to_complex().unwrap()
}

#[test]
fn octahedron_is_not_5_large() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "octahedron", "oct.json");
    let out = flagcurv(dir.path(), &["check", "oct.json", "klarge", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let c = load(dir.path(), "oct.json");
    let entry = &report(&out).checks[0];
    let Outcome::Fail { witness } = &entry.outcome else { panic!("{entry:?}") };
    assert!(matches!(witness, Witness::FullCycle { cycle } if cycle.len() == 4));
    assert_eq!(witness.replay(&c), Some(true));
    assert_eq!(Verdict::fail(witness.clone()), is_k_large(&c, 5, 12).unwrap());
}

#[test]
fn wheel_is_8_located() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "wheel k=6", "w.json");
    let out = flagcurv(dir.path(), &["check", "w.json", "mlocated", "8", "klarge", "4", "flag"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\n  \"format\": \"flagcurv-complex/1\",\n  \"vertex_count\": 3,\n  \"edges\": [[0, 1],\n").unwrap();
    let out = flagcurv(dir.path(), &["check", "bad.json", "flag"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    std::fs::write(
        dir.path().join("extra.json"),
        r#"{"format": "flagcurv-complex/1", "vertex_count": 2, "edges": [], "colour": "red"}"#,
    )
    .unwrap();
    assert_eq!(flagcurv(dir.path(), &["check", "extra.json", "flag"]).status.code(), Some(64));
    assert_eq!(flagcurv(dir.path(), &["check", "missing.json", "flag"]).status.code(), Some(64));
    assert_eq!(flagcurv(dir.path(), &["frobnicate"]).status.code(), Some(64));
    assert_eq!(flagcurv(dir.path(), &["gen", "disk", "d=5", "r=2", "-o", "x.json"]).status.code(), Some(64));
}

#[test]
fn hollow_tetrahedron_is_not_flag() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("t.json"),
        r#"{"format": "flagcurv-complex/1", "vertex_count": 4,
            "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]],
            "simplices": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#,
    )
    .unwrap();
    let out = flagcurv(dir.path(), &["check", "t.json", "flag"]);
    assert_eq!(out.status.code(), Some(1));
    let entry = &report(&out).checks[0];
    assert_eq!(entry.outcome, Outcome::Fail { witness: Witness::MissingSimplex { clique: vec![0, 1, 2, 3] } });
}

#[test]
fn cycle_rotation_profile() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "cycle n=6", "c6.json");
    let out = flagcurv(dir.path(), &["isom", "c6.json", "c6.map.json", "profile"]);
    assert_eq!(out.status.code(), Some(0));
    let d = details(&out, 0);
    assert_eq!(d["translation_length"], 1);
    assert_eq!(d["classification"]["kind"], "hyperbolic");
}

#[test]
fn strip_shift_power_embeds() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "strip w=2 l=16", "s.json");
    let c = load(dir.path(), "s.json");
    let shift = MapFile::parse(&std::fs::read_to_string(dir.path().join("s.map.json")).unwrap())
        .unwrap()
        .to_isometry(&c)
        .unwrap();
    std::fs::write(dir.path().join("s4.map.json"), MapFile::from_isometry(&shift.power(4).unwrap()).to_json()).unwrap();
    let out = flagcurv(dir.path(), &["isom", "s.json", "s4.map.json", "profile", "embed", "minset", "union", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(details(&out, 0)["translation_length"], 4);
}

#[test]
fn elliptic_maps_have_no_axes() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "octahedron", "oct.json");
    let out = flagcurv(dir.path(), &["isom", "oct.json", "oct.map.json", "axes", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let entry = &report(&out).checks[0];
    let Outcome::Fail { witness } = &entry.outcome else { panic!("{entry:?}") };
    assert!(matches!(witness, Witness::Elliptic { simplex } if simplex == &[0]));
    assert_eq!(witness.replay(&load(dir.path(), "oct.json")), Some(true));
}

#[test]
fn axes_graph_of_strip_is_a_path() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "strip w=3 l=14", "s.json");
    let out = flagcurv(dir.path(), &["isom", "s.json", "s.map.json", "axesgraph", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let d = details(&out, 0);
    assert_eq!(d["graph"]["edges"], serde_json::json!([[0, 1], [1, 2]]));
    assert_eq!(d["delta_doubled"], 0);
    assert_eq!(d["bottleneck_radius"], 0);
}

#[test]
fn generated_files() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "disk d=7 r=3", "d.json");
    assert_eq!(load(dir.path(), "d.json").vertex_count(), disk_vertex_count(7, 3));
    assert!(dir.path().join("d.map.json").exists());
    gen(dir.path(), "cycle n=6", "c6.json");
    assert_eq!(load(dir.path(), "c6.json"), generate(&CorpusSpec::Cycle(6)).unwrap().complex);
    gen(dir.path(), "strip w=2 l=10", "s.json");
    let c = load(dir.path(), "s.json");
    let map = MapFile::parse(&std::fs::read_to_string(dir.path().join("s.map.json")).unwrap()).unwrap();
    assert!(map.to_isometry(&c).is_ok());
    gen(dir.path(), "path n=4", "p.json");
    assert!(!dir.path().join("p.map.json").exists());
    let a = std::fs::read(dir.path().join("d.json")).unwrap();
    gen(dir.path(), "disk d=7 r=3", "d2.json");
    assert_eq!(a, std::fs::read(dir.path().join("d2.json")).unwrap());
}

#[test]
fn random_specs_take_the_global_seed() {
    let dir = TempDir::new().unwrap();
    let run = |seed: &str, file: &str| {
        let out = flagcurv(dir.path(), &["--seed", seed, "gen", "random", "n=12", "p=0.3", "-o", file]);
        assert_eq!(out.status.code(), Some(0));
        std::fs::read(dir.path().join(file)).unwrap()
    };
    gen(dir.path(), "random n=12 p=0.3 seed=42", "explicit.json");
    assert_eq!(run("42", "implicit.json"), std::fs::read(dir.path().join("explicit.json")).unwrap());
    assert_ne!(run("43", "other.json"), run("42", "again.json"));
}

#[test]
fn delta_reports() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "path n=9", "p.json");
    gen(dir.path(), "cycle n=6", "c6.json");
    gen(dir.path(), "cycle n=500", "big.json");
    let out = flagcurv(dir.path(), &["delta", "p.json"]);
    assert_eq!((out.status.code(), details(&out, 0)["delta"].clone()), (Some(0), Value::from("0")));
    let out = flagcurv(dir.path(), &["delta", "c6.json"]);
    assert_eq!((out.status.code(), details(&out, 0)["delta"].clone()), (Some(0), Value::from("1")));
    let out = flagcurv(dir.path(), &["delta", "big.json"]);
    assert_eq!(out.status.code(), Some(2));
    let entry = &report(&out).checks[0];
    assert!(matches!(&entry.outcome, Outcome::Error { message } if message.contains("cap")), "{entry:?}");
    let out = flagcurv(dir.path(), &["--delta-cap", "600", "delta", "c6.json"]);
    assert_eq!(report(&out).config.limits.delta_cap, 600);
}

#[test]
fn environment_overrides_flags() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "cycle n=6", "c6.json");
    let out = Command::new(env!("CARGO_BIN_EXE_flagcurv"))
        .args(["check", "c6.json", "klarge", "6"])
        .current_dir(dir.path())
        .env("FLAGCURV_CYCLE_CAP", "7")
        .env("FLAGCURV_BUDGET", "9")
        .output()
        .unwrap();
    let r = report(&out);
    assert_eq!((r.config.limits.cycle_cap, r.config.limits.area_budget), (7, 9));
}

#[test]
fn unknown_verdicts_exit_2() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "disk d=6 r=2", "d.json");
    let out = flagcurv(dir.path(), &["--budget", "1", "--node-limit", "1", "check", "d.json", "mlocated", "8"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stdout));
    let out = flagcurv(dir.path(), &["check", "d.json", "mlocated", "8", "sd", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_stable_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "cylinder c=7 h=3", "cy.json");
    let args = ["check", "cy.json", "klarge", "7", "mlocated", "8", "sd", "2", "simplyconnected"];
    let one = flagcurv(dir.path(), &[&["--jobs", "1"][..], &args].concat()).stdout;
    let four = flagcurv(dir.path(), &[&["--jobs", "4"][..], &args].concat()).stdout;
    assert_eq!(one, four);
    let timed = flagcurv(dir.path(), &[&["--timings"][..], &args].concat());
    assert!(report(&timed).checks.iter().all(|c| c.elapsed_ms.is_some()));
}
