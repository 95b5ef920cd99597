use std::fs;
use std::process::{Command, Output};

fn kzlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kzlab"))
        .args(args)
        .env_remove("KZLAB_CORPUS_DIR")
        .output()
        .expect("spawn kzlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn compute_unknot_json_has_zero_degree_sums() {
    let o = kzlab(&["compute", "--corpus", "u0", "--degree", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let degrees = v["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 3);
    assert_eq!(degrees[1]["sum"], "0/1");
    assert_eq!(degrees[2]["sum"], "0/1");
    assert!(!degrees[2]["terms"].as_array().unwrap().is_empty());
}

#[test]
fn compute_hopf_degree_one() {
    let o = kzlab(&["compute", "--corpus", "hopf+", "--degree", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let terms = v["degrees"][1]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["coeff"], "1/1");
}

#[test]
fn json_output_is_byte_identical() {
    let args = ["compute", "--corpus", "chain3", "--degree", "2", "--format", "json"];
    let a = kzlab(&args);
    let b = kzlab(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let args = ["verify", "theorem", "--corpus", "hopf-", "--all-S", "--max-degree", "2", "--format", "json"];
    assert_eq!(kzlab(&args).stdout, kzlab(&args).stdout);
}

#[test]
fn truncation_cap_exits_4() {
    assert_eq!(code(&kzlab(&["compute", "--corpus", "u1", "--degree", "9"])), 4);
    assert_eq!(code(&kzlab(&["compute", "--corpus", "u0", "--degree", "9"])), 4);
}

#[test]
fn parse_and_validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qtw");
    fs::write(&bad, "cup@1\nfrob@2\n").unwrap();
    let o = kzlab(&["compute", "--word", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains('2'));

    let open = dir.path().join("open.qtw");
    fs::write(&open, "cup@1; cup@3").unwrap();
    assert_eq!(code(&kzlab(&["compute", "--word", open.to_str().unwrap()])), 3);

    let missing = dir.path().join("nope.qtw");
    assert_eq!(code(&kzlab(&["compute", "--word", missing.to_str().unwrap()])), 2);
    assert_eq!(code(&kzlab(&["compute", "--corpus", "no-such-word"])), 2);
}

#[test]
fn word_file_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mine.qtw");
    fs::write(&path, "# hopf link\ncup@1; cup@2\nassoc-@1\nx-@1; x-@1\nassoc+@1\ncap@2; cap@1\n").unwrap();
    let o = kzlab(&["verify", "theorem", "--word", path.to_str().unwrap(), "--all-S", "--max-degree", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn verify_examples_pass() {
    let o = kzlab(&["verify", "theorem", "--corpus", "hopf+", "--all-S", "--max-degree", "3"]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("FAIL"));
    let o = kzlab(&["verify", "degree-sum", "--corpus", "chain3", "--k", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS"));
    let o = kzlab(&["verify", "recursion", "--corpus", "trefoil", "--crossing", "4", "--S", "[[2]]"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("9 checks, 0 failed"));
}

#[test]
fn recursion_rejects_non_crossing_slice() {
    let o = kzlab(&["verify", "recursion", "--corpus", "trefoil", "--crossing", "1", "--S", "[[2]]"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn theorem_needs_a_type() {
    assert_eq!(code(&kzlab(&["verify", "theorem", "--corpus", "u0"])), 2);
}

#[test]
fn enumerate_counts() {
    for (args, n) in [
        (vec!["--circles", "1", "--k", "3"], 5),
        (vec!["--circles", "2", "--S", "[[0,1],[1,0]]"], 1),
        (vec!["--circles", "2", "--k", "1"], 3),
    ] {
        let mut full = vec!["enumerate"];
        full.extend(args);
        let o = kzlab(&full);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains(&format!("count: {n}")), "{}", stdout(&o));
        let mut json = full.clone();
        json.extend(["--format", "json"]);
        let v: serde_json::Value = serde_json::from_slice(&kzlab(&json).stdout).unwrap();
        assert_eq!(v["count"], n);
    }
}

#[test]
fn enumerate_rejects_bad_matrix() {
    let o = kzlab(&["enumerate", "--circles", "2", "--S", "[[0,1],[2,0]]"]);
    assert_ne!(code(&o), 0);
}

#[test]
fn relabel_swaps_components() {
    let a = kzlab(&["compute", "--corpus", "u1", "--degree", "1", "--format", "json"]);
    assert_eq!(code(&a), 0);
    let plain = kzlab(&["compute", "--corpus", "chain3", "--degree", "1", "--format", "json"]);
    let swapped = kzlab(&["compute", "--corpus", "chain3", "--degree", "1", "--relabel", "2,1,3", "--format", "json"]);
    assert_eq!(code(&swapped), 0);
    let lk = |o: &Output| serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["linking"].clone();
    assert_eq!(lk(&plain)[0][2], "0/1");
    assert_eq!(lk(&swapped)[0][2], "1/1");
    assert_eq!(lk(&swapped)[0][1], "1/1");
    assert_eq!(code(&kzlab(&["compute", "--corpus", "chain3", "--relabel", "1,1,2"])), 2);
}

#[test]
fn corpus_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("u0.qtw"), "cup@1; x+@1; cap'@1").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_kzlab"))
        .args(["compute", "--corpus", "u0", "--degree", "1", "--format", "json"])
        .env("KZLAB_CORPUS_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["linking"][0][0], "1/2");
}

#[test]
fn selftest_single_section() {
    let o = kzlab(&["selftest", "--section", "pentagon", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 1);
    assert_eq!(v["results"][0]["section"], "pentagon");
    assert_eq!(v["results"][0]["pass"], true);
    assert_ne!(code(&kzlab(&["selftest", "--section", "bogus"])), 0);
}

#[test]
fn trace_and_corpus_listing() {
    let o = kzlab(&["corpus"]);
    assert_eq!(code(&o), 0);
    for name in ["u0", "u1", "hopf+", "hopf-", "trefoil", "chain2", "chain3", "unlink2"] {
        assert!(stdout(&o).contains(name));
    }
    let o = kzlab(&["trace", "--corpus", "hopf+"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("empty"));
}
