use clpforge::report::Status;
use clpforge::suites::run_suite;

#[test]
fn fast_suites_pass() {
    for name in ["wreath-exponent", "class-lift", "class-split", "defining-characteristic", "cyclotomic-lemmas", "exceptional-tables", "sylow-oracle"] {
        let r = run_suite(name, 0).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(r.count(Status::Pass) > 0, "{name}");
    }
}

#[test]
fn suite_outcomes_do_not_depend_on_the_seed() {
    for name in ["sylow-oracle", "wreath-exponent"] {
        let a = run_suite(name, 0).unwrap();
        let b = run_suite(name, 0xdead_beef).unwrap();
        let summary = |r: &clpforge::report::SuiteReport| r.checks.iter().map(|c| (c.id.clone(), c.status, c.witness.clone())).collect::<Vec<_>>();
        assert_eq!(summary(&a), summary(&b), "{name}");
    }
}

#[test]
fn sylow_oracle_covers_the_corpus() {
    let r = run_suite("sylow-oracle", 0).unwrap();
    let groups: std::collections::BTreeSet<&str> = r.checks.iter().map(|c| c.id.split("/p").next().unwrap()).collect();
    assert!(groups.len() >= 20, "{groups:?}");
    for c in &r.checks {
        assert_eq!(c.value("mismatches"), Some("none"), "{}", c.id);
        assert!(c.value("order").unwrap().parse::<u64>().unwrap() <= 5000, "{}", c.id);
    }
}

#[test]
fn two_f4_discrepancy_is_reported() {
    let r = run_suite("exceptional-tables", 0).unwrap();
    let c = r.check("2F4/standard-order").unwrap();
    assert_eq!(c.status, Status::Pass);
    assert_eq!(c.value("standard"), Some("35942400"));
    assert_eq!(r.check("2F4/printed-discrepancy").unwrap().status, Status::Pass);
}

/// |SL_3(q)| / (q-1)^2: the class of a regular diagonal element whose
/// centralizer is the full diagonal torus.
fn sl3_torus_class(q: u64) -> u64 {
    q.pow(3) * (q * q - 1) * (q.pow(3) - 1) / (q - 1).pow(2)
}

#[test]
fn sl3_7_witness_class_matches_the_torus_count() {
    let r = run_suite("psl-witness", 0).unwrap();
    let c = r.check("SL(3,7)/witness-divisible").unwrap();
    assert_eq!(c.value("class size"), Some(sl3_torus_class(7).to_string().as_str()));
    assert_eq!(c.value("centralizer"), Some("36"));
    // PSL(3,19): the torus has order 18^2 / 3 modulo scalars
    let c = r.check("PSL(3,19)/witness-divisible").unwrap();
    assert_eq!(c.value("class size"), Some(sl3_torus_class(19).to_string().as_str()));
    assert_eq!(c.status, Status::Pass);
}
