use std::fs;
use std::path::PathBuf;

use revsynth_cli::run;
use tempfile::TempDir;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn revsynth(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("revsynth").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const SAMPLE_SPEC: &str = "n 3\nperm 1 0 3 2 5 7 4 6\n";

#[test]
fn synth_then_stats_counts_five_gates() {
    let dir = TempDir::new().unwrap();
    let spec = file(&dir, "t.spec", SAMPLE_SPEC);
    let synth = revsynth(&["synth", &spec, "--method", "bsssn", "--side", "output"]);
    assert_eq!(synth.code, 0, "{}", synth.stderr);
    let circuit = file(&dir, "c.txt", &synth.stdout);
    let stats = revsynth(&["stats", &circuit]);
    assert_eq!(stats.code, 0);
    assert!(stats.stdout.contains("gates 5\n"), "{}", stats.stdout);
    assert!(stats.stdout.contains("cf 8\n"));
    assert!(stats.stdout.contains("histogram 0:0 1:0 2:5\n"));
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let spec = file(&dir, "t.spec", SAMPLE_SPEC);
    let good = file(&dir, "good.txt", "T(a',c:b) T(b,c:a) T(a,c:b) T(b,c':a) T(b',c':a)\n");
    let empty = file(&dir, "empty.txt", "");
    let v = revsynth(&["verify", &good, &spec]);
    assert_eq!(v.code, 0);
    assert_eq!(v.stdout, "equivalent\n");
    let v = revsynth(&["verify", &empty, &spec]);
    assert_eq!(v.code, 1);
    assert!(v.stdout.starts_with("not equivalent"));
    let wide = file(&dir, "wide.txt", "T(d)\n");
    assert_eq!(revsynth(&["verify", &wide, &spec]).code, 1);
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = TempDir::new().unwrap();
    let bad_spec = file(&dir, "bad.spec", "n 2\nperm 0 0 1 2\n");
    let circuit = file(&dir, "c.txt", "T(:a)\n");
    let v = revsynth(&["verify", &circuit, &bad_spec]);
    assert_eq!(v.code, 2);
    assert!(v.stderr.contains("error:"));
    let self_ctl = file(&dir, "s.txt", "T(a)\nT(b:b)\n");
    let v = revsynth(&["stats", &self_ctl]);
    assert_eq!(v.code, 2);
    assert!(v.stderr.contains("at 2:3"), "{}", v.stderr);
    let missing = dir.path().join("nope.spec");
    assert_eq!(revsynth(&["synth", missing.to_str().unwrap()]).code, 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(revsynth(&[]).code, 2);
    assert_eq!(revsynth(&["frobnicate"]).code, 2);
    let dir = TempDir::new().unwrap();
    let spec = file(&dir, "t.spec", SAMPLE_SPEC);
    assert_eq!(revsynth(&["synth", &spec, "--method", "random"]).code, 2);
    assert_eq!(revsynth(&["synth", &spec, "--seed", "3"]).code, 2);
    assert_eq!(revsynth(&["synth", &spec, "--tie", "nonsense"]).code, 2);
    let help = revsynth(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("synth"));
}

#[test]
fn synth_flags() {
    let dir = TempDir::new().unwrap();
    let spec = file(&dir, "t.spec", SAMPLE_SPEC);
    let variant = revsynth(&["synth", &spec, "--method", "variant", "--reversed"]);
    assert_eq!(
        variant.stdout,
        ".lines 3\nT(b',c':a)\nT(b,c':a)\nT(b',c:a)\nT(a,c:b)\nT(b,c:a)\n"
    );
    let input_side = revsynth(&["synth", &spec, "--side", "input"]);
    assert_eq!(
        input_side.stdout,
        ".lines 3\nT(b',c':a)\nT(b,c':a)\nT(b,c:a)\nT(a,c:b)\nT(b',c:a)\n"
    );
    let rotate = file(&dir, "r.spec", "n 3\nperm 7 0 1 2 3 4 5 6\n");
    let reduced = revsynth(&["synth", &rotate, "--method", "variant", "--reduce-controls"]);
    assert_eq!(reduced.stdout, ".lines 3\nT(:a)\nT(a:b)\nT(a,b:c)\n");
    let budget = revsynth(&["synth", &spec, "--max-gates", "2"]);
    assert_eq!(budget.code, 2);
    let random = revsynth(&["synth", &spec, "--method", "random", "--seed", "9", "--opt"]);
    assert_eq!(random.code, 0);
    let c = file(&dir, "rand.txt", &random.stdout);
    assert_eq!(revsynth(&["verify", &c, &spec]).code, 0);
}

#[test]
fn optimize_with_template_file() {
    let dir = TempDir::new().unwrap();
    let circuit = file(&dir, "c.txt", "T(a,b:c) T(a:c) T(a,b:c)\n");
    let out = revsynth(&["optimize", &circuit]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, ".lines 3\nT(a:c)\n");

    let doubled = file(&dir, "d.txt", "T(a:b) T(a:b)\n");
    let bare = revsynth(&["optimize", &doubled, "--no-builtin-templates"]);
    assert_eq!(bare.stdout, ".lines 2\n");

    let template = file(&dir, "t.tpl", "T(b:a) T(b:a)\n=>\n");
    let with = revsynth(&["optimize", &doubled, "--templates", &template]);
    assert_eq!(with.code, 0);
    assert_eq!(with.stdout, ".lines 2\n");
    let bad = file(&dir, "bad.tpl", "T(b:a)\n=>\nT(a:b)\n");
    assert_eq!(revsynth(&["optimize", &doubled, "--templates", &bad]).code, 2);
}

#[test]
fn simulate_one_and_all() {
    let dir = TempDir::new().unwrap();
    let fredkin = file(&dir, "f.txt", "T(b,c:a) T(a,c:b) T(b,c:a)\n");
    let one = revsynth(&["simulate", &fredkin, "--input", "6"]);
    assert_eq!(one.stdout, "6 -> 5  (110 -> 101)\n");
    let all = revsynth(&["simulate", &fredkin, "--all"]);
    assert_eq!(all.stdout.lines().count(), 8);
    assert_eq!(revsynth(&["simulate", &fredkin, "--input", "8"]).code, 2);
    assert_eq!(revsynth(&["simulate", &fredkin]).code, 2);
}

#[test]
fn embed_prints_spec_and_report() {
    let dir = TempDir::new().unwrap();
    let and = file(&dir, "and.tbl", ".inputs 2\n.outputs 1\n0\n0\n0\n1\n");
    let out = revsynth(&["embed", &and]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("n 3\nperm 0 1 2 7 4 5 6 3\n"));
    assert!(out.stdout.contains("# garbage_min 2\n"));
    assert!(out.stdout.contains("# constants c\n"));
    // The output is itself a spec file.
    let spec = file(&dir, "and.spec", &out.stdout);
    let synth = revsynth(&["synth", &spec, "--opt"]);
    assert_eq!(synth.stdout, ".lines 3\nT(a,b:c)\n");
    let short = file(&dir, "short.tbl", ".inputs 2\n.outputs 1\n0\n1\n1\n");
    assert_eq!(revsynth(&["embed", &short]).code, 2);
}

#[test]
fn bench_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let args = ["bench", "--min-width", "3", "--max-width", "4", "--trials", "2", "--seed", "11"];
    let a = revsynth(&args);
    let b = revsynth(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout.lines().count(), 1 + 2 * 2 * 3 * 2 * 2);
    assert!(a.stdout.starts_with("n,trial,method,tie,side,gates_raw,gates_opt,cf,runtime_us,seed\n"));

    let path = dir.path().join("out.csv");
    let p = path.to_str().unwrap();
    let mut with_file = args.to_vec();
    with_file.extend(["--output", p]);
    let c = revsynth(&with_file);
    assert_eq!(c.code, 0);
    assert!(c.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), a.stdout);
    assert_eq!(revsynth(&["bench", "--trials", "0"]).code, 2);
}

#[test]
fn synth_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let spec = file(&dir, "s.spec", "n 4\nperm 3 14 0 9 12 1 7 15 2 10 5 13 6 8 4 11\n");
    for args in [
        vec!["synth", &spec, "--method", "random", "--seed", "1234", "--opt"],
        vec!["synth", &spec, "--method", "bsssn", "--tie", "highest", "--side", "input"],
    ] {
        let a = revsynth(&args);
        let b = revsynth(&args);
        assert_eq!(a.code, 0);
        assert_eq!((a.stdout, a.code), (b.stdout, b.code));
    }
}
