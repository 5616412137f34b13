//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Duration;

use clpforge::report::{Status, SuiteReport};
use clpforge::suites::run_suite;
use num_bigint::BigUint;

struct Outcome {
    pass: bool,
    detail: String,
}

fn suite(name: &str) -> Result<SuiteReport, String> {
    run_suite(name, 0).map_err(|e| e.to_string())
}

fn passed(r: &SuiteReport, id: &str) -> bool {
    r.check(id).is_some_and(|c| c.status == Status::Pass)
}

fn value<'a>(r: &'a SuiteReport, id: &str, key: &str) -> &'a str {
    r.check(id).and_then(|c| c.value(key)).unwrap_or("-")
}

fn failures(r: &SuiteReport) -> String {
    let ids: Vec<&str> = r.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.id.as_str()).collect();
    if ids.is_empty() {
        "none".into()
    } else {
        ids.join(", ")
    }
}

fn within(r: &SuiteReport, limit: Duration) -> bool {
    r.wall_time <= limit
}

fn summary(r: &SuiteReport) -> String {
    format!(
        "{} pass, {} fail, {} skip in {:.1?}",
        r.count(Status::Pass),
        r.count(Status::Fail),
        r.count(Status::Skip),
        r.wall_time
    )
}

fn tits() -> Result<Outcome, String> {
    let r = suite("tits")?;
    let ids = ["order", "sylow", "classes", "class-size", "consistency", "verdict"];
    Ok(Outcome {
        pass: ids.iter().all(|id| passed(&r, id)) && within(&r, Duration::from_secs(600)),
        detail: format!(
            "order {}, Sylow {}, {} class(es) of size {} with centralizer {}, verdict {}; {}",
            value(&r, "order", "order"),
            value(&r, "sylow", "order"),
            value(&r, "classes", "classes"),
            value(&r, "classes", "size"),
            value(&r, "classes", "centralizer"),
            value(&r, "verdict", "verdict"),
            summary(&r)
        ),
    })
}

/// The witness criteria demand the printed index as the exact class size.
fn witness(suite_name: &str, group: &str, printed: u64, limit: Duration) -> Result<Outcome, String> {
    let r = suite(suite_name)?;
    let id = |s: &str| format!("{group}/{s}");
    let size = value(&r, &id("witness-divisible"), "class size");
    let divisible = size.parse::<BigUint>().is_ok_and(|n| (n % 3u32) == BigUint::from(0u32));
    let pass = passed(&r, &id("verdict"))
        && passed(&r, &id("witness-divisible"))
        && passed(&r, &id("printed-index"))
        && divisible
        && within(&r, limit);
    Ok(Outcome {
        pass,
        detail: format!(
            "verdict {}; diagonal witness class size {} (centralizer {}), expected {printed}; q^3 times that is {} ({}); {}",
            value(&r, &id("verdict"), "verdict"),
            size,
            value(&r, &id("witness-divisible"), "centralizer"),
            value(&r, &id("witness-divisible"), "full index"),
            if passed(&r, &id("full-index")) { "matches" } else { "does not match" },
            summary(&r)
        ),
    })
}

fn su3() -> Result<Outcome, String> {
    let r = suite("su3-sylow-dichotomy")?;
    let show = |g: &str| format!("{g}: exp(P) = {}, exp(Z(P)) = {}", value(&r, g, "exp(P)"), value(&r, g, "exp(Z(P))"));
    Ok(Outcome {
        pass: passed(&r, "SU(3,2)") && passed(&r, "SU(3,8)") && r.passed(),
        detail: format!("{}; {}; {}", show("SU(3,2)"), show("SU(3,8)"), summary(&r)),
    })
}

fn whole_suites(names: &[&str], limit: Option<Duration>) -> Result<Outcome, String> {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in names {
        let r = suite(name)?;
        pass &= r.passed() && r.count(Status::Pass) > 0 && limit.is_none_or(|l| within(&r, l));
        parts.push(format!("{name}: {} (failed: {})", summary(&r), failures(&r)));
    }
    Ok(Outcome { pass, detail: parts.join("; ") })
}

fn alternating() -> Result<Outcome, String> {
    let r = suite("alternating")?;
    let ids = ["Alt(9)/verdict", "Alt(9)/nine-cycle", "Alt(10)/verdict", "Alt(11)/verdict"];
    Ok(Outcome {
        pass: r.passed() && ids.iter().all(|id| passed(&r, id)),
        detail: format!("9-cycle class size {}; {}", value(&r, "Alt(9)/nine-cycle", "size"), summary(&r)),
    })
}

fn exceptional() -> Result<Outcome, String> {
    let r = suite("exceptional-tables")?;
    Ok(Outcome {
        pass: r.passed() && passed(&r, "2F4/standard-order") && passed(&r, "2F4/printed-discrepancy"),
        detail: format!(
            "standard |2F4(2)| = {}; printed factorisation gives {}; {}",
            value(&r, "2F4/standard-order", "standard"),
            value(&r, "2F4/printed-discrepancy", "printed at q=2"),
            summary(&r)
        ),
    })
}

fn sylow() -> Result<Outcome, String> {
    let r = suite("sylow-oracle")?;
    let groups: std::collections::BTreeSet<&str> = r.checks.iter().filter_map(|c| c.id.rsplit_once("/p").map(|(g, _)| g)).collect();
    Ok(Outcome {
        pass: r.passed() && groups.len() >= 20,
        detail: format!("{} groups; {}", groups.len(), summary(&r)),
    })
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Box<dyn Fn() -> Result<Outcome, String>>);
    let criteria: Vec<Criterion> = vec![
        ("Tits group is cl_3", Box::new(tits)),
        ("PSL(3,19) witness class of size 7620", Box::new(|| witness("psl-witness", "PSL(3,19)", 7620, Duration::from_secs(60)))),
        ("PSU(3,8) witness class of size 399", Box::new(|| witness("psu-witness", "PSU(3,8)", 399, Duration::from_secs(120)))),
        ("SU(3,q) Sylow exponent dichotomy", Box::new(su3)),
        ("wreath product centre and exponent", Box::new(|| whole_suites(&["wreath-exponent"], None))),
        ("Weir towers", Box::new(|| whole_suites(&["weir-towers"], None))),
        ("central-extension identities", Box::new(|| whole_suites(&["class-lift", "class-split"], None))),
        ("alternating groups are not cl_3", Box::new(alternating)),
        ("cyclotomic lemma sweep", Box::new(|| whole_suites(&["cyclotomic-lemmas"], Some(Duration::from_secs(10))))),
        ("exceptional table audit", Box::new(exceptional)),
        ("Sylow oracle equivalence", Box::new(sylow)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        println!("criterion {:>2} {} {name}: {detail}", i + 1, if pass { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
