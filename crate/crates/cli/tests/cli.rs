use std::path::Path;
use std::process::{Command, Output};

fn run_env(cache: &Path, env_cache: Option<&Path>, args: &[&str]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cubic-census"));
    c.env_remove("CUBIC_CENSUS_CACHE").arg("--cache").arg(cache).args(args);
    if let Some(p) = env_cache {
        c.env("CUBIC_CENSUS_CACHE", p);
    }
    c.output().unwrap()
}

fn run(cache: &Path, args: &[&str]) -> Output {
    run_env(cache, None, args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn sweep_is_resumable_and_extends() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.cache");
    let o = run(&cache, &["sweep", "--r-max", "0.3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "1 primitive class, 1 order, \u{3a3}h = 1\n1 new record\n");

    let again = run(&cache, &["sweep", "--r-max", "0.3"]);
    assert!(again.status.success());
    assert!(stdout(&again).ends_with("0 new records\n"));
    let before = std::fs::read_to_string(&cache).unwrap();

    let o = run(&cache, &["sweep", "--r-max", "0.6"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("2 primitive classes, 2 orders"));
    let after = std::fs::read_to_string(&cache).unwrap();
    assert!(after.starts_with(&before));
    let added: Vec<&str> = after[before.len()..].lines().filter(|l| l.starts_with("R|")).collect();
    assert_eq!(added.len(), 2);
    assert!(added[0].starts_with("R|1,0|"));
    assert!(added[1].starts_with("R|2,1|"));

    // a covered r_max is served from the cache
    let o = run(&cache, &["sweep", "--r-max", "0.3"]);
    assert_eq!(stdout(&o), "1 primitive class, 1 order, \u{3a3}h = 1\n0 new records\n");
}

#[test]
fn census_table() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.cache");
    assert!(run(&cache, &["sweep", "--r-max", "0.6"]).status.success());
    let o = run(&cache, &["census", "--x", "0.3,0.6"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,pi,sum_h_total,sum_h_proper,main_term,ratio_total,ratio_proper,adjudication");
    assert!(lines[1].starts_with("0.3,1,1,1,2.73289234573,"));
    assert!(lines[2].starts_with("0.6,2,2,2,3.36091525801,"));
    assert!(lines[2].ends_with(",both"));

    let o = run(&cache, &["census", "--x", ""]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);

    let o = run(&cache, &["--format", "json", "census", "--x", "0.3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&String> = v[0].as_object().unwrap().keys().collect();
    assert_eq!(keys[0], "x");
    assert_eq!(keys[7], "adjudication");
    assert_eq!(v[0]["pi"], 1);

    let o = run(&cache, &["census", "--x", "1.5"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("sweep --r-max 1.5"));
}

#[test]
fn corrupted_cache_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.cache");
    assert!(run(&cache, &["sweep", "--r-max", "0.6"]).status.success());
    let text = std::fs::read_to_string(&cache).unwrap();
    let broken = text.replacen("R|1,0|", "R|1,1|", 1);
    let line = broken.lines().position(|l| l.starts_with("R|1,1|")).unwrap() + 1;
    std::fs::write(&cache, broken).unwrap();
    let o = run(&cache, &["sweep", "--r-max", "0.6"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains(&format!("line {line}")), "{}", stderr(&o));
    assert!(stderr(&o).contains("checksum"));
}

#[test]
fn env_var_overrides_cache_flag() {
    let dir = tempfile::tempdir().unwrap();
    let flag = dir.path().join("flag.cache");
    let env = dir.path().join("env.cache");
    assert!(run_env(&flag, Some(&env), &["sweep", "--r-max", "0.3"]).status.success());
    assert!(env.exists());
    assert!(!flag.exists());
}

#[test]
fn kernel_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("unused");
    let o = run(&cache, &["kernel", "1", "1.0", "2.0"]);
    assert_eq!(stdout(&o), "lambda,N,x,value\n1,1,2,0.0676676416183\n");
    let o = run(&cache, &["kernel", "--N", "2", "--lambda", "4", "--x", "0,1"]);
    assert_eq!(stdout(&o).lines().count(), 3);
    assert!(!cache.exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.cache");
    assert_eq!(run(&cache, &["sweep"]).status.code(), Some(2));
    assert_eq!(run(&cache, &["sweep", "--r-max", "-1"]).status.code(), Some(2));
    assert_eq!(run(&cache, &["--shards", "0", "sweep", "--r-max", "0.3"]).status.code(), Some(2));
    assert_eq!(run(&cache, &["frobnicate"]).status.code(), Some(2));
    let o = run(&cache, &["kernel", "1", "-1", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(run(&cache, &["order", "2,2"]).status.code(), Some(3));
    assert_eq!(run(&cache, &["pgt", "--x", "10"]).status.code(), Some(4));
    assert_eq!(run(&cache, &["--precision", "2", "sweep", "--r-max", "0.3"]).status.code(), Some(2));
}

#[test]
fn reps_report() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("unused");
    let o = run(&cache, &["reps"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains("MISMATCH"));
    assert!(text.contains("sign audit"));
    let o = run(&cache, &["--json", "reps"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["all_match"], true);
    assert_eq!(v["sign_audit"]["reference"][0]["coefficient"], -2);
    assert_eq!(v["parabolic_regularity"]["zero_counts"], serde_json::json!([100, 100, 100]));
}

#[test]
fn order_and_class_number() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("unused");
    let o = run(&cache, &["--json", "class-number", "5,2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order_disc"], -279);
    assert_eq!((v["h_total"].as_u64(), v["h_proper"].as_u64()), (Some(2), Some(1)));
    let o = run(&cache, &["order", "0,-1"]);
    let text = stdout(&o);
    assert!(text.contains("\nD,23\n"));
    assert!(text.contains("\ntr_psi,-1\n"));
}

#[test]
fn series_commands_on_a_small_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.cache");
    assert!(run(&cache, &["sweep", "--r-max", "0.6"]).status.success());
    let o = run(&cache, &["lseries", "--s", "2"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,partial_sum,tail_low,tail_high,L_cut,residue_estimate");
    let partial: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!(partial > 0.0);
    let o = run(&cache, &["lseries", "--s", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&cache, &["records"]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = run(&cache, &["geometric", "--N", "1", "--lambda", "4"]);
    assert!(o.status.success());
}
