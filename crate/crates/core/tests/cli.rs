use std::path::Path;
use std::process::Command;

use char2::cli::corpus::default_corpus;
use char2::cli::main_with;
use char2::cli::suite::{run_entries, Options, RunReport};

fn run(args: &[&str], out: &Path) -> i32 {
    let mut v = vec!["char2".to_string()];
    v.extend(args.iter().map(|s| s.to_string()));
    v.push("--out".into());
    v.push(out.display().to_string());
    main_with(v)
}

fn read_run(out: &Path) -> RunReport {
    serde_json::from_str(&std::fs::read_to_string(out.join("run.json")).unwrap()).unwrap()
}

#[test]
fn suite_reports_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(run(&["suite", "--no-cache"], a.path()), 0);
    assert_eq!(run(&["suite", "--no-cache", "--workers", "3"], b.path()), 0);
    for f in ["run.json", "run.txt"] {
        assert_eq!(
            std::fs::read(a.path().join(f)).unwrap(),
            std::fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
    assert!(a.path().join("timings.json").exists());
}

#[test]
fn cached_and_fresh_verdicts_agree() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = tempfile::tempdir().unwrap();
    assert_eq!(run(&["suite"], dir.path()), 0);
    let first = read_run(dir.path());
    assert!(std::fs::read_dir(dir.path().join("cache")).unwrap().count() > 0);
    assert_eq!(run(&["suite"], dir.path()), 0);
    let second = read_run(dir.path());
    assert_eq!(run(&["suite", "--no-cache"], fresh.path()), 0);
    let third = read_run(fresh.path());
    assert_eq!(first, second);
    assert_eq!(first, third);
}

#[test]
fn single_entry_suite_matches_verify() {
    let entries: Vec<_> = default_corpus().unwrap().into_iter().filter(|e| e.name == "S4").collect();
    let (suite, _) = run_entries(&entries, &Options::default(), "suite").unwrap();
    let dir = tempfile::tempdir().unwrap();
    for r in suite.checks.iter().filter(|r| r.check != "expected") {
        let mut args = vec!["verify", "--no-cache", "--theorem", &r.check, "--group", "S4"];
        let sub = match &r.subgroup {
            s if s.is_empty() => None,
            s => Some(s.clone()),
        };
        let file;
        if let Some(s) = &sub {
            let h = entries[0]
                .normals
                .iter()
                .chain(&entries[0].subnormals)
                .find(|h| h.name() == s)
                .unwrap();
            file = dir.path().join(format!("{s}.txt"));
            std::fs::write(&file, char2::grp::perm::format_group_text(h.degree(), h.gens())).unwrap();
            args.push(if r.check == "subnormal" { "--subgroup" } else { "--normal" });
            args.push(file.to_str().unwrap());
        }
        if r.check == "brauer-table" {
            continue;
        }
        let out = dir.path().join(format!("out-{}-{}", r.check, r.subgroup));
        assert_eq!(run(&args, &out), 0, "{} {}", r.check, r.subgroup);
        let v = read_run(&out);
        let mut got = v.checks[0].clone();
        got.subgroup = r.subgroup.clone();
        assert_eq!(got, *r);
    }
}

#[test]
fn verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["verify", "--theorem", "T1", "--group", "S3", "--normal", "C3"], dir.path()), 0);
    assert_eq!(run(&["verify", "--theorem", "T4", "--group", "S4", "--normal", "S4"], dir.path()), 0);
    assert_eq!(run(&["verify", "--theorem", "radical", "--group", "A5"], dir.path()), 0);
    assert_eq!(run(&["verify", "--theorem", "subnormal", "--group", "Muller3"], dir.path()), 0);
}

#[test]
fn usage_and_input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["nonsense"], dir.path()), 2);
    assert_eq!(run(&["verify", "--theorem", "T9", "--group", "S3"], dir.path()), 2);
    assert_eq!(run(&["verify", "--theorem", "T1", "--group", "S3"], dir.path()), 2);
    assert_eq!(run(&["verify", "--theorem", "T1", "--group", "S4", "--normal", "S3"], dir.path()), 2);
    assert_eq!(run(&["irreducibles", "--group", "NoSuchGroup"], dir.path()), 2);
    assert_eq!(run(&["irreducibles", "--group", "S5", "--cap", "100"], dir.path()), 2);
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "degree 3\n(1,2\n").unwrap();
    assert_eq!(run(&["irreducibles", "--group", bad.to_str().unwrap()], dir.path()), 2);
    assert_eq!(main_with(["char2", "--help"]), 0);
}

#[test]
fn group_files_and_env_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c4.txt");
    std::fs::write(&g, "degree 4\n(1,2,3,4)\n").unwrap();
    let out = dir.path().join("env-out");
    let status = Command::new(env!("CARGO_BIN_EXE_char2"))
        .args(["irreducibles", "--format", "json", "--group"])
        .arg(&g)
        .env("CHAR2_OUT", &out)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let listing: serde_json::Value = serde_json::from_slice(&status.stdout).unwrap();
    assert_eq!(listing["group"], "c4");
    assert_eq!(listing["simples"].as_array().unwrap().len(), 1);
    assert!(out.join("irreducibles.json").exists());
}

#[test]
fn blocks_and_brauer_table_outputs() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["blocks", "--group", "S4", "--normal", "A4"], dir.path()), 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("blocks.json")).unwrap()).unwrap();
    assert_eq!(v["blocks"]["blocks"].as_array().unwrap().len(), 1);
    assert_eq!(v["covering"].as_array().unwrap().len(), 1);
    assert_eq!(run(&["brauer-table", "--group", "A5"], dir.path()), 0);
    assert!(std::fs::read_to_string(dir.path().join("brauer-table.txt")).unwrap().contains("1a"));
}

#[test]
fn findings_map_to_exit_1() {
    use char2::cli::exit_code;
    use char2::error::Error;
    assert_eq!(exit_code(&Error::Finding("x".into())), 1);
    assert_eq!(exit_code(&Error::RetryExhausted(3)), 1);
    assert_eq!(exit_code(&Error::InvalidInput("x".into())), 2);
    assert_eq!(exit_code(&Error::NotNormal), 2);
}
