use std::process::{Command, Output};

fn clpforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clpforge")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    clpforge(args).status.code().expect("exit code")
}

#[test]
fn analyze_exit_codes_follow_the_verdict() {
    assert_eq!(code(&["analyze", "--group", "Direct(Sym(3),Cyclic(3))", "--prime", "3"]), 10);
    assert_eq!(code(&["analyze", "--group", "Wreath(Cyclic(3),Cyclic(3))", "--prime", "3"]), 11);
    assert_eq!(code(&["analyze", "--group", "Alt(9)", "--prime", "3"]), 11);
    assert_eq!(code(&["analyze", "--group", "PermFile(\"tits_1600.txt\")", "--prime", "3"]), 0);
}

#[test]
fn bad_input_is_a_usage_error() {
    let out = clpforge(&["analyze", "--group", "PSL(3)", "--prime", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 0"));
    assert_eq!(code(&["analyze", "--group", "Sym(4)", "--prime", "2"]), 2);
    assert_eq!(code(&["analyze", "--group", "Sym(4)", "--prime", "9"]), 2);
    assert_eq!(code(&["analyze", "--group", "Sym(4)", "--prime", "5"]), 2);
    assert_eq!(code(&["verify", "--suite", "no-such-suite"]), 2);
    assert_eq!(code(&["analyze", "--group", "Sym(4)"]), 2);
}

#[test]
fn missing_perm_file_is_an_error() {
    let out = clpforge(&["analyze", "--group", "PermFile(\"/nonexistent/g.txt\")", "--prime", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/g.txt"));
}

#[test]
fn json_is_identical_across_runs_and_thread_counts() {
    for group in ["Wreath(Cyclic(3),Cyclic(3))", "PSL(3,4)", "Direct(Alt(5),Cyclic(3))"] {
        let runs: Vec<Vec<u8>> = ["1", "4", "1"]
            .iter()
            .map(|t| clpforge(&["analyze", "--group", group, "--prime", "3", "--json", "--threads", t]).stdout)
            .collect();
        assert!(!runs[0].is_empty());
        assert_eq!(runs[0], runs[1], "{group}");
        assert_eq!(runs[0], runs[2], "{group}");
        let v: serde_json::Value = serde_json::from_slice(&runs[0]).unwrap();
        assert_eq!(v["p"], 3);
        assert!(v["order"].is_string());
        assert!(v.get("elapsed").is_none());
    }
}

#[test]
fn json_report_fields() {
    let out = clpforge(&["analyze", "--group", "Wreath(Cyclic(3),Cyclic(3))", "--prime", "3", "--json", "--exhaustive"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["group"], "Wreath(Cyclic(3),Cyclic(3))");
    assert_eq!(v["order"], "81");
    assert_eq!(v["sylow_order"], 81);
    assert_eq!(v["sylow_abelian"], false);
    assert_eq!(v["verdict"], "NOT_CLP_CLASS_SIZE");
    assert_eq!(v["truncated"], false);
    let classes = v["classes"].as_array().unwrap();
    // 3-group: every nontrivial class except the two central ones has size 3 or 9
    let sizes: u64 = classes.iter().map(|c| c["size"].as_str().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(sizes, 80);
    let w = v["witness"].as_u64().unwrap() as usize;
    assert_eq!(classes[w]["p_divides_size"], true);
}

#[test]
fn text_report_names_the_verdict() {
    let out = clpforge(&["analyze", "--group", "Alt(9)", "--prime", "3"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("order     181440"), "{text}");
    assert!(text.contains("verdict   NOT_CLP_CLASS_SIZE"), "{text}");
}

#[test]
fn list_suites_names_all_fourteen() {
    let out = clpforge(&["list-suites"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 14);
    for name in clpforge::suites::suite_names() {
        assert!(text.lines().any(|l| l.split_whitespace().next() == Some(name)), "{name}");
    }
}

#[test]
fn verify_reports_json_and_exit_status() {
    let out = clpforge(&["verify", "--suite", "cyclotomic-lemmas", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["suite"], "cyclotomic-lemmas");
    assert!(v[0]["wall_time_ms"].is_u64());
    assert!(v[0]["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn eval_order_prints_the_standard_2f4_order() {
    let out = clpforge(&["eval-order", "--family", "2F4", "--q", "2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("at q = 2: 35942400"), "{text}");
    assert_eq!(code(&["eval-order", "--family", "H4", "--q", "2"]), 2);
    let g2 = clpforge(&["eval-order", "--family", "G2", "--q", "4"]);
    assert!(String::from_utf8_lossy(&g2.stdout).contains("at q = 4: 251596800"));
}
