//! The cl_p decision: a group is cl_p at p when its Sylow p-subgroups are
//! non-abelian and no p-element has a class size divisible by p.
//!
//! Every p-element is conjugate into a fixed Sylow subgroup P, so walking the
//! non-identity elements of P (sorted by order, then digest) and skipping
//! those already in a known class lists each p-element class once.
//!
//! Each class is sized from a backtrack centralizer. Classes that are cheap to
//! enumerate are also enumerated; that cross-checks the size and gives a
//! fingerprint set for the skip test. Larger classes are told apart by cycle
//! type, centralizer order and, as a last resort, a conjugating-element search.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::time::{Duration, Instant};

use crate::arith::{factor_big, is_prime};
use crate::backtrack::{centralizer_search, conjugating_element, rebased_for, DEFAULT_SEARCH_BUDGET};
use crate::conjugacy::{ClassOrbit, ConjugacyClassInfo, DEFAULT_CLASS_CAP};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::sylow::{p_group_profile, sylow_subgroup, PGroupProfile, PSubgroup, SylowOptions, DEFAULT_RETRIES};

/// Classes are enumerated only when `size * degree` stays below this.
pub const ENUMERATION_WORK: u64 = 300_000_000;

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub seed: u64,
    pub class_cap: u64,
    pub search_budget: u64,
    pub retries: usize,
    /// Complete the class table even after the verdict is known.
    pub exhaustive: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> AnalyzeOptions {
        AnalyzeOptions {
            seed: 0,
            class_cap: DEFAULT_CLASS_CAP,
            search_budget: DEFAULT_SEARCH_BUDGET,
            retries: DEFAULT_RETRIES,
            exhaustive: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NotClpAbelianSylow,
    NotClpClassSize,
    Clp,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::NotClpAbelianSylow => "NOT_CLP_ABELIAN_SYLOW",
            Verdict::NotClpClassSize => "NOT_CLP_CLASS_SIZE",
            Verdict::Clp => "CLP",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassRow {
    pub representative: Perm,
    pub representative_order: u64,
    pub size: BigUint,
    pub p_divides_size: bool,
    pub centralizer_order: BigUint,
    pub enumerated: bool,
}

#[derive(Clone, Debug)]
pub struct ClpReport {
    pub group: String,
    pub p: u64,
    pub order: BigUint,
    /// Prime factorisation; a cofactor with no small prime factor is listed as is.
    pub order_factored: Vec<(BigUint, u32)>,
    pub sylow_order: u64,
    pub sylow_abelian: bool,
    pub sylow_profile: PGroupProfile,
    pub classes: Vec<ClassRow>,
    pub verdict: Verdict,
    /// Index into `classes` of the first class whose size p divides.
    pub witness: Option<usize>,
    /// True when elements of the Sylow subgroup were left unexamined.
    pub truncated: bool,
    pub elapsed: Duration,
}

impl ClpReport {
    pub fn witness_class(&self) -> Option<&ClassRow> {
        self.witness.map(|i| &self.classes[i])
    }
}

/// A computed class together with what later skip tests need.
struct KnownClass {
    info: ConjugacyClassInfo,
    cycle_type: Vec<usize>,
    centralizer: PermGroup,
}

pub struct ClassWalk {
    pub classes: Vec<ConjugacyClassInfo>,
    pub truncated: bool,
}

/// One class per p-element class of `g`, walking the elements of the Sylow
/// subgroup `sylow`. With `stop_at_divisible`, the walk ends at the first
/// class whose size `p` divides.
pub fn p_class_representatives(
    g: &PermGroup,
    p: u64,
    sylow: &PSubgroup,
    opts: &AnalyzeOptions,
    stop_at_divisible: bool,
) -> Result<ClassWalk> {
    if !sylow.is_sylow || sylow.p != p {
        return Err(Error::PreconditionViolated("a Sylow p-subgroup is required".into()));
    }
    let mut elems: Vec<Perm> = sylow.elements().into_iter().filter(|e| !e.is_identity()).collect();
    elems.sort_by_cached_key(|e| (e.order(), e.digest()));
    let mut known: Vec<KnownClass> = Vec::new();
    let bp = BigUint::from(p);
    for (i, y) in elems.iter().enumerate() {
        if known.iter().any(|k| k.info.fingerprints.as_ref().is_some_and(|f| f.contains(y))) {
            continue;
        }
        let hy = rebased_for(g, y, opts.seed);
        let cy = centralizer_search(&hy, y, opts.search_budget, opts.seed)?;
        let ct = y.cycle_type();
        let mut seen = false;
        for k in known.iter().filter(|k| k.info.fingerprints.is_none()) {
            if k.cycle_type == ct
                && k.centralizer.order() == cy.order()
                && conjugating_element(&hy, y, &k.info.representative, Some(&k.centralizer), opts.search_budget)?
                    .is_some()
            {
                seen = true;
                break;
            }
        }
        if seen {
            continue;
        }
        let (size, rem) = g.order().div_rem(cy.order());
        debug_assert!(rem.is_zero());
        let work = size.to_u64().and_then(|s| s.checked_mul(g.degree() as u64));
        let fingerprints = match work {
            Some(w) if w <= ENUMERATION_WORK && size <= BigUint::from(opts.class_cap) => {
                let orbit = ClassOrbit::build(g, y, opts.class_cap)?;
                if BigUint::from(orbit.len()) != size {
                    return Err(Error::PreconditionViolated(format!(
                        "class enumeration found {} elements but the centralizer gives {size}",
                        orbit.len()
                    )));
                }
                Some(orbit.fingerprints())
            }
            _ => None,
        };
        let divisible = (&size % &bp).is_zero();
        known.push(KnownClass {
            info: ConjugacyClassInfo { representative: y.clone(), size, centralizer_order: cy.order().clone(), fingerprints },
            cycle_type: ct,
            centralizer: cy,
        });
        if divisible && stop_at_divisible {
            return Ok(ClassWalk { classes: known.into_iter().map(|k| k.info).collect(), truncated: i + 1 < elems.len() });
        }
    }
    Ok(ClassWalk { classes: known.into_iter().map(|k| k.info).collect(), truncated: false })
}

fn factorise(n: &BigUint) -> Vec<(BigUint, u32)> {
    let (small, rest) = factor_big(n, 100_000);
    let mut out: Vec<(BigUint, u32)> = small.into_iter().map(|(p, e)| (BigUint::from(p), e)).collect();
    if rest > BigUint::from(1u32) {
        out.push((rest, 1));
    }
    out
}

/// Decides the cl_p property of `g`; `descriptor` names the group in the report.
pub fn analyze(g: &PermGroup, p: u64, descriptor: &str, opts: &AnalyzeOptions) -> Result<ClpReport> {
    let start = Instant::now();
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::PIsTwo);
    }
    if !(g.order() % p).is_zero() {
        return Err(Error::PNotDividingOrder { p });
    }
    let sylow = sylow_subgroup(g, p, &SylowOptions { seed: opts.seed, retries: opts.retries })?;
    let abelian = sylow.is_abelian();
    let profile = p_group_profile(&sylow)?;
    let (classes, truncated) = if abelian && !opts.exhaustive {
        (Vec::new(), true)
    } else {
        let walk = p_class_representatives(g, p, &sylow, opts, !opts.exhaustive)?;
        (walk.classes, walk.truncated)
    };
    let rows: Vec<ClassRow> = classes
        .into_iter()
        .map(|c| ClassRow {
            representative_order: c.representative.order_u64().expect("p-element orders are small"),
            p_divides_size: (&c.size % p).is_zero(),
            enumerated: c.fingerprints.is_some(),
            representative: c.representative,
            size: c.size,
            centralizer_order: c.centralizer_order,
        })
        .collect();
    let witness = rows.iter().position(|r| r.p_divides_size);
    let verdict = if abelian {
        Verdict::NotClpAbelianSylow
    } else if witness.is_some() {
        Verdict::NotClpClassSize
    } else {
        Verdict::Clp
    };
    Ok(ClpReport {
        group: descriptor.to_string(),
        p,
        order: g.order().clone(),
        order_factored: factorise(g.order()),
        sylow_order: sylow.order,
        sylow_abelian: abelian,
        sylow_profile: profile,
        classes: rows,
        verdict,
        witness,
        truncated,
        elapsed: start.elapsed(),
    })
}
