//! Sylow subgroups by centralizer descent and normalizer climbing.
//!
//! A p-subgroup S is grown through centralizers (modulo the central p-part)
//! of elements of Z(S): a Sylow subgroup of such a subgroup, when its p-part
//! exceeds |S|, replaces S.
//! Normalizer climbing (P extended by a p-element of N(P)) is the fallback
//! when only central elements would make progress.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

use crate::arith::p_part;
use crate::backtrack::{centralizer_search, conjugating_element, rebased_for, DEFAULT_SEARCH_BUDGET};
use crate::conjugacy::p_part_element;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Largest Sylow order handled.
pub const SYLOW_ORDER_CAP: u64 = 6561;
pub const DEFAULT_RETRIES: usize = 10_000;
/// Bound on the number of conjugates of a subgroup held during climbing.
const SUBGROUP_ORBIT_CAP: usize = 200_000;
/// Random p-elements tried before concluding they are all central.
const CENTRAL_TRIES: usize = 64;

#[derive(Clone, Debug)]
pub struct SylowOptions {
    pub seed: u64,
    pub retries: usize,
}

impl Default for SylowOptions {
    fn default() -> SylowOptions {
        SylowOptions { seed: 0, retries: DEFAULT_RETRIES }
    }
}

#[derive(Clone, Debug)]
pub struct PSubgroup {
    pub group: PermGroup,
    pub p: u64,
    pub order: u64,
    /// Sorted digests of all elements.
    pub digests: Vec<u128>,
    pub is_sylow: bool,
}

impl PSubgroup {
    pub fn new(group: PermGroup, p: u64, is_sylow: bool) -> Result<PSubgroup> {
        let order = match group.order_u64() {
            Some(o) if o <= SYLOW_ORDER_CAP => o,
            _ => return Err(Error::SylowOrderCapExceeded { order: group.order().to_string(), cap: SYLOW_ORDER_CAP }),
        };
        if p_part(group.order(), p) != *group.order() {
            return Err(Error::PreconditionViolated(format!("order {order} is not a power of {p}")));
        }
        let mut digests: Vec<u128> = group.elements(SYLOW_ORDER_CAP)?.iter().map(|e| e.digest()).collect();
        digests.sort_unstable();
        Ok(PSubgroup { group, p, order, digests, is_sylow })
    }

    pub fn elements(&self) -> Vec<Perm> {
        self.group.elements(SYLOW_ORDER_CAP).expect("within cap")
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.digests.binary_search(&g.digest()).is_ok() && self.group.contains(g).unwrap_or(false)
    }

    pub fn is_abelian(&self) -> bool {
        is_abelian(&self.group)
    }
}

pub fn is_abelian(h: &PermGroup) -> bool {
    h.is_abelian()
}

/// A nontrivial element of p-power order from p-parts of random elements.
pub fn find_p_element(g: &PermGroup, p: u64, rng: &mut ChaCha8Rng, retries: usize) -> Result<Perm> {
    if !(g.order() % BigUint::from(p)).is_zero() {
        return Err(Error::PNotDividingOrder { p });
    }
    for _ in 0..retries {
        let x = p_part_element(&g.random_element(rng), p);
        if !x.is_identity() {
            return Ok(x);
        }
    }
    Err(Error::RetriesExhausted(retries))
}

pub fn sylow_subgroup(g: &PermGroup, p: u64, opts: &SylowOptions) -> Result<PSubgroup> {
    let target = p_part(g.order(), p);
    if target.is_one() {
        return Err(Error::PNotDividingOrder { p });
    }
    if target > BigUint::from(SYLOW_ORDER_CAP) {
        return Err(Error::SylowOrderCapExceeded { order: target.to_string(), cap: SYLOW_ORDER_CAP });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let s = sylow_in(g, p, &mut rng, opts)?;
    PSubgroup::new(s, p, true)
}

/// If S is a p-subgroup of H but not Sylow, some p-element w outside S
/// normalizes S. Writing Z for the central p-elements of H inside S, w acts on
/// the centre of S/Z and fixes some nontrivial coset yZ there; so the
/// stabilizer of yZ under conjugation contains <S, w> and has a larger p-part
/// than S. Scanning those y therefore makes progress unless each useful yZ is
/// central in H/Z, in which case one normalizer step is taken instead.
fn sylow_in(h: &PermGroup, p: u64, rng: &mut ChaCha8Rng, opts: &SylowOptions) -> Result<PermGroup> {
    let target = p_part(h.order(), p);
    if h.order() == &target {
        return Ok(h.clone());
    }
    let n = h.degree();
    let central = |e: &Perm| h.generators().iter().all(|g| g.commutes_with(e));
    let mut s = PermGroup::new(n, vec![find_p_element(h, p, rng, opts.retries)?])?;
    for _ in 0..CENTRAL_TRIES {
        let x = &s.generators()[0];
        if !central(x) {
            let c = centralizer_search(&rebased_for(h, x, opts.seed), x, DEFAULT_SEARCH_BUDGET, opts.seed)?;
            s = sylow_in(&c, p, rng, opts)?;
            break;
        }
        s = PermGroup::new(n, vec![find_p_element(h, p, rng, opts.retries)?])?;
    }
    while s.order() != &target {
        let elems = s.elements(SYLOW_ORDER_CAP)?;
        let zc: Vec<&Perm> = elems.iter().filter(|e| central(e)).collect();
        let in_zc = |e: &Perm| zc.contains(&e);
        let mut cands: Vec<&Perm> = elems
            .iter()
            .filter(|y| !in_zc(y) && s.generators().iter().all(|g| in_zc(&y.commutator(g))))
            .collect();
        cands.sort_by_key(|e| (e.order(), e.digest()));
        let mut grown = false;
        for y in cands {
            let k = coset_stabilizer(h, y, &zc, opts.seed)?;
            if p_part(k.order(), p) > *s.order() && k.order() < h.order() {
                s = sylow_in(&k, p, rng, opts)?;
                grown = true;
                break;
            }
        }
        if !grown {
            let norm = normalizer_of_p_subgroup(h, &s, rng)?;
            let mut gens = s.generators().to_vec();
            for _ in 0..opts.retries {
                let z = p_part_element(&norm.random_element(rng), p);
                if !s.contains(&z)? {
                    gens.push(z);
                    grown = true;
                    break;
                }
            }
            if !grown {
                return Err(Error::RetriesExhausted(opts.retries));
            }
            s = PermGroup::new(n, gens)?;
        }
    }
    Ok(s)
}

/// `{g in H : y^g in yZ}` for a set `zc` of central elements forming a group.
fn coset_stabilizer(h: &PermGroup, y: &Perm, zc: &[&Perm], seed: u64) -> Result<PermGroup> {
    let hy = rebased_for(h, y, seed);
    let c = centralizer_search(&hy, y, DEFAULT_SEARCH_BUDGET, seed)?;
    let mut gens = c.generators().to_vec();
    let mut hits = 0u64;
    for z in zc {
        let yz = y.mul(z);
        if let Some(g) = conjugating_element(&hy, y, &yz, Some(&c), DEFAULT_SEARCH_BUDGET)? {
            hits += 1;
            if !g.is_identity() {
                gens.push(g);
            }
        }
    }
    if hits == 1 {
        return Ok(c);
    }
    PermGroup::with_order_bound(h.degree(), gens, c.order() * BigUint::from(hits), seed)
}

fn set_key(elems: &[Perm]) -> (u128, u128) {
    let mut d: Vec<u128> = elems.iter().map(|e| e.digest()).collect();
    d.sort_unstable();
    let bytes: Vec<u8> = d.iter().flat_map(|v| v.to_le_bytes()).collect();
    (
        xxhash_rust::xxh3::xxh3_128_with_seed(&bytes, crate::perm::DIGEST_KEY),
        xxhash_rust::xxh3::xxh3_128_with_seed(&bytes, crate::perm::DIGEST_KEY_ALT),
    )
}

/// N_H(P) as the stabilizer of P in the conjugation action on subgroups.
/// Only digests of the conjugates are stored; conjugates on the frontier are
/// rebuilt from the Schreier tree.
pub fn normalizer_of_p_subgroup(h: &PermGroup, sub: &PermGroup, rng: &mut ChaCha8Rng) -> Result<PermGroup> {
    let elems = sub.elements(SYLOW_ORDER_CAP)?;
    let gens: Vec<Perm> = h.generators().iter().filter(|s| !s.is_identity()).cloned().collect();
    let mut index: HashMap<u128, u32> = HashMap::new();
    let mut alt: Vec<u128> = Vec::new();
    let mut parent: Vec<(u32, u32)> = Vec::new();
    let (k1, k2) = set_key(&elems);
    index.insert(k1, 0);
    alt.push(k2);
    parent.push((u32::MAX, 0));
    let conjugator = |parent: &[(u32, u32)], mut node: u32| {
        let mut path = Vec::new();
        while parent[node as usize].0 != u32::MAX {
            path.push(parent[node as usize].1);
            node = parent[node as usize].0;
        }
        let mut u = Perm::identity(h.degree());
        for &l in path.iter().rev() {
            u.mul_assign(&gens[l as usize]);
        }
        u
    };
    let mut frontier: Vec<u32> = vec![0];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &v in &frontier {
            let u = conjugator(&parent, v);
            for (l, s) in gens.iter().enumerate() {
                let us = u.mul(s);
                let conj: Vec<Perm> = elems.iter().map(|e| e.conjugate(&us)).collect();
                let (d1, d2) = set_key(&conj);
                match index.get(&d1) {
                    Some(&j) if alt[j as usize] == d2 => {}
                    Some(_) => return Err(Error::DigestCollision("subgroup key".into())),
                    None => {
                        if alt.len() >= SUBGROUP_ORBIT_CAP {
                            return Err(Error::SearchBudgetExhausted(SUBGROUP_ORBIT_CAP as u64));
                        }
                        let id = alt.len() as u32;
                        index.insert(d1, id);
                        alt.push(d2);
                        parent.push((v, l as u32));
                        next.push(id);
                    }
                }
            }
        }
        frontier = next;
    }
    let (order, rem) = h.order().div_rem(&BigUint::from(alt.len()));
    debug_assert!(rem.is_zero());
    let budget = 200 + 64 * order.bits() as usize;
    PermGroup::from_sampler(h.degree(), order, budget, || {
        let r = h.random_element(rng);
        let conj: Vec<Perm> = elems.iter().map(|e| e.conjugate(&r)).collect();
        let (d1, d2) = set_key(&conj);
        match index.get(&d1) {
            Some(&j) if alt[j as usize] == d2 => Ok(r.mul(&conjugator(&parent, j).inverse())),
            _ => Err(Error::DigestCollision("subgroup conjugate missing from orbit".into())),
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PGroupProfile {
    pub center_order: u64,
    pub exponent: u64,
    pub center_exponent: u64,
}

pub fn p_group_profile(p: &PSubgroup) -> Result<PGroupProfile> {
    let elems = p.elements();
    let gens = p.group.generators();
    let center: Vec<&Perm> = elems.iter().filter(|e| gens.iter().all(|s| s.commutes_with(e))).collect();
    let exp = |it: &mut dyn Iterator<Item = &Perm>| it.map(|e| e.order().to_u64().unwrap()).fold(1u64, |a, b| a.lcm(&b));
    Ok(PGroupProfile {
        center_order: center.len() as u64,
        exponent: exp(&mut elems.iter()),
        center_exponent: exp(&mut center.iter().copied()),
    })
}
