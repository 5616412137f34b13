//! Suite reports and rendering of analysis reports as text or JSON.

use std::fmt::Write as _;
use std::time::Duration;

use clpforge_core::analyzer::ClpReport;
use clpforge_core::Perm;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

fn pairs_as_map<S: Serializer>(pairs: &[(String, String)], s: S) -> Result<S::Ok, S::Error> {
    let mut m = s.serialize_map(Some(pairs.len()))?;
    for (k, v) in pairs {
        m.serialize_entry(k, v)?;
    }
    m.end()
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub status: Status,
    #[serde(serialize_with = "pairs_as_map")]
    pub witness: Vec<(String, String)>,
}

impl Check {
    pub fn value(&self, key: &str) -> Option<&str> {
        self.witness.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    #[serde(rename = "wall_time_ms", serialize_with = "millis")]
    pub wall_time: Duration,
}

fn millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl SuiteReport {
    /// True when every check that ran passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "suite {}: {verdict} ({} pass, {} fail, {} skip) in {:.2?}",
            self.suite,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip),
            self.wall_time
        );
        for c in &self.checks {
            let _ = writeln!(out, "  [{}] {}: {}", c.status.as_str(), c.id, c.description);
            for (k, v) in &c.witness {
                let _ = writeln!(out, "         {k} = {v}");
            }
        }
        out
    }
}

/// Cycle notation with 1-based points; `()` for the identity.
pub fn cycle_string(g: &Perm) -> String {
    let cycles: Vec<String> = g
        .cycles()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| format!("({})", c.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    if cycles.is_empty() {
        "()".into()
    } else {
        cycles.concat()
    }
}

#[derive(Serialize)]
struct ProfileJson {
    center_order: u64,
    exponent: u64,
    center_exponent: u64,
}

#[derive(Serialize)]
struct ClassJson {
    representative: String,
    representative_order: u64,
    size: String,
    p_divides_size: bool,
    centralizer_order: String,
    enumerated: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    group: &'a str,
    p: u64,
    order: String,
    order_factored: Vec<(String, u32)>,
    sylow_order: u64,
    sylow_abelian: bool,
    sylow_profile: ProfileJson,
    classes: Vec<ClassJson>,
    verdict: &'static str,
    witness: Option<usize>,
    truncated: bool,
}

/// The stable JSON schema. Big integers are decimal strings; timings are left
/// out so equal inputs give byte-identical output.
pub fn report_json(r: &ClpReport) -> String {
    let j = ReportJson {
        group: &r.group,
        p: r.p,
        order: r.order.to_string(),
        order_factored: r.order_factored.iter().map(|(p, e)| (p.to_string(), *e)).collect(),
        sylow_order: r.sylow_order,
        sylow_abelian: r.sylow_abelian,
        sylow_profile: ProfileJson {
            center_order: r.sylow_profile.center_order,
            exponent: r.sylow_profile.exponent,
            center_exponent: r.sylow_profile.center_exponent,
        },
        classes: r
            .classes
            .iter()
            .map(|c| ClassJson {
                representative: cycle_string(&c.representative),
                representative_order: c.representative_order,
                size: c.size.to_string(),
                p_divides_size: c.p_divides_size,
                centralizer_order: c.centralizer_order.to_string(),
                enumerated: c.enumerated,
            })
            .collect(),
        verdict: r.verdict.as_str(),
        witness: r.witness,
        truncated: r.truncated,
    };
    serde_json::to_string_pretty(&j).expect("report serialises")
}

pub fn factored_string(r: &ClpReport) -> String {
    r.order_factored
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ")
}

pub fn report_text(r: &ClpReport) -> String {
    let mut out = String::new();
    let pr = &r.sylow_profile;
    let _ = writeln!(out, "group     {}", r.group);
    let _ = writeln!(out, "order     {} = {}", r.order, factored_string(r));
    let _ = writeln!(out, "prime     {}", r.p);
    let _ = writeln!(
        out,
        "sylow     order {}, {}, |Z| = {}, exp = {}, exp(Z) = {}",
        r.sylow_order,
        if r.sylow_abelian { "abelian" } else { "non-abelian" },
        pr.center_order,
        pr.exponent,
        pr.center_exponent
    );
    if !r.classes.is_empty() {
        let _ = writeln!(out, "classes of nontrivial {}-elements:", r.p);
        let _ = writeln!(out, "  {:>3}  {:>5}  {:>14}  {:>14}  {:<6}  method", "#", "order", "size", "centralizer", "p|size");
        for (i, c) in r.classes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {:>3}  {:>5}  {:>14}  {:>14}  {:<6}  {}",
                i + 1,
                c.representative_order,
                c.size.to_string(),
                c.centralizer_order.to_string(),
                if c.p_divides_size { "yes" } else { "no" },
                if c.enumerated { "enumerated" } else { "backtrack" }
            );
        }
    }
    if r.truncated {
        let _ = writeln!(out, "note      class table truncated (rerun with --exhaustive for all classes)");
    }
    let _ = write!(out, "verdict   {}", r.verdict.as_str());
    if let Some(w) = r.witness_class() {
        let _ = write!(out, " (class #{} of size {})", r.witness.unwrap() + 1, w.size);
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_are_one_based() {
        let g = Perm::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(cycle_string(&g), "(1,2,3)(4,5)");
        assert_eq!(cycle_string(&Perm::identity(3)), "()");
    }

    #[test]
    fn witness_values_serialise_as_a_map() {
        let r = SuiteReport {
            suite: "s".into(),
            checks: vec![Check {
                id: "a".into(),
                description: "d".into(),
                status: Status::Skip,
                witness: vec![("z".into(), "1".into()), ("a".into(), "2".into())],
            }],
            wall_time: Duration::from_millis(3),
        };
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(j, r#"{"suite":"s","checks":[{"id":"a","description":"d","status":"skip","witness":{"z":"1","a":"2"}}],"wall_time_ms":3}"#);
        assert!(r.passed());
    }
}
