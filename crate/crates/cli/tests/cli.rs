use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn medusa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_medusa")).args(args).output().expect("binary runs")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn stat(text: &str, key: &str) -> u64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no {key} in stats"))
        .parse()
        .unwrap()
}

const STILL: &str = "trajectories 4
times 0 1
traj 0 0 1
0 0 0 0
1 0 0 0
traj 1 0 1
0 6 1 0
1 6 1 0
traj 2 0 1
0 1 5 1
1 1 5 1
traj 3 0 1
0 1 1 6
1 1 1 6
";

#[test]
fn stationary_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(dir.path(), "in.txt");
    fs::write(&input, STILL).unwrap();
    let (out, stats) = (path(dir.path(), "m.txt"), path(dir.path(), "s.txt"));
    let r = medusa(&["--input", &input, "--alpha-sq", "100", "--output", &out, "--stats", &stats, "--probes", "5"]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let m = fs::read_to_string(&out).unwrap();
    assert!(m.starts_with("medusa 15\n"));
    assert!(m.lines().skip(1).all(|l| l.ends_with("INITIAL 0/1 1/1 FINAL")));
    let s = fs::read_to_string(&stats).unwrap();
    assert_eq!(stat(&s, "flips") + stat(&s, "radius_events"), 0);
}

#[test]
fn generated_runs_are_reproducible_and_pruning_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str, extra: &[&str]| {
        let (out, stats) = (path(dir.path(), &format!("m{tag}")), path(dir.path(), &format!("s{tag}")));
        let mut args = vec!["--generate", "10,3,4,true", "--seed", "4", "--alpha-sq", "2", "--output", &out, "--stats", &stats];
        args.extend_from_slice(extra);
        let r = medusa(&args);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
        (fs::read_to_string(&out).unwrap(), fs::read_to_string(&stats).unwrap())
    };
    let a = run("a", &[]);
    let b = run("b", &[]);
    assert_eq!(a, b);
    let c = run("c", &["--no-prune"]);
    assert_eq!(a.0, c.0);
    assert!(stat(&c.1, "certificates_built") > stat(&a.1, "certificates_built"));
    let d = run("d", &["--no-filter", "--no-cache"]);
    assert_eq!(a.0, d.0);
}

#[test]
fn saved_input_replays() {
    let dir = tempfile::tempdir().unwrap();
    let saved = path(dir.path(), "in.txt");
    let r = medusa(&["--generate", "8,2,4,false,40", "--seed", "9", "--save-input", &saved, "--alpha-sq", "3/2"]);
    assert!(r.status.success());
    let replay = medusa(&["--input", &saved, "--alpha-sq", "3/2"]);
    assert!(replay.status.success());
    assert_eq!(r.stdout, replay.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = medusa(&["--input", &path(dir.path(), "nope"), "--alpha-sq", "1"]);
    assert_eq!(missing.status.code(), Some(3));

    let bad = path(dir.path(), "bad.txt");
    fs::write(&bad, STILL.replace("0 6 1 0", "0 6 one 0")).unwrap();
    let parse = medusa(&["--input", &bad, "--alpha-sq", "1"]);
    assert_eq!(parse.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 7"));

    // trajectory 3 moves onto trajectory 0
    let crash = path(dir.path(), "crash.txt");
    fs::write(&crash, STILL.replace("1 1 1 6\n", "1 0 0 0\n")).unwrap();
    let degenerate = medusa(&["--input", &crash, "--alpha-sq", "1"]);
    assert_eq!(degenerate.status.code(), Some(2));

    let usage = medusa(&["--alpha-sq", "1"]);
    assert_eq!(usage.status.code(), Some(1));
    let unknown = medusa(&["--alpha-sq", "1", "--bogus"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert_eq!(medusa(&["--help"]).status.code(), Some(0));
}
