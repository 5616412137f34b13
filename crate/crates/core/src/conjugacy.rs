//! Conjugacy classes as conjugation orbits, with digest-based deduplication.
//!
//! The settled set keeps two independently keyed 128-bit digests per class
//! member instead of the member itself. A match on the first key is accepted
//! only if the second key agrees too; a disagreement is a genuine collision
//! of the first key and aborts with [`Error::DigestCollision`]. Frontier
//! elements are held in full while they fit in memory and are rebuilt from the
//! Schreier tree otherwise.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

pub const DEFAULT_CLASS_CAP: u64 = 10_000_000;
const FRONTIER_BYTES: usize = 1 << 28;
const CHUNK: usize = 4096;
const NO_PARENT: u32 = u32::MAX;

/// `g^m` where `|g| = p^a m` with `p` not dividing `m`.
pub fn p_part_element(g: &Perm, p: u64) -> Perm {
    let mut m = g.order();
    let bp = BigUint::from(p);
    while (&m % &bp).is_zero() {
        m /= &bp;
    }
    g.pow(&m)
}

/// Sorted first-key digests of a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprints(Vec<u128>);

impl Fingerprints {
    pub fn contains(&self, g: &Perm) -> bool {
        self.0.binary_search(&g.digest()).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClassInfo {
    pub representative: Perm,
    pub size: BigUint,
    pub centralizer_order: BigUint,
    /// Present when the class was enumerated.
    pub fingerprints: Option<Fingerprints>,
}

/// The conjugation orbit of `x` under the generators of a group, as a
/// Schreier tree over digests.
pub struct ClassOrbit {
    x: Perm,
    gens: Vec<Perm>,
    index: HashMap<u128, u32>,
    alt: Vec<u128>,
    parent: Vec<u32>,
    label: Vec<u16>,
}

impl ClassOrbit {
    pub fn build(g: &PermGroup, x: &Perm, cap: u64) -> Result<ClassOrbit> {
        if !g.contains(x)? {
            return Err(Error::NotAMember);
        }
        let gens: Vec<Perm> = g.generators().iter().filter(|s| !s.is_identity()).cloned().collect();
        if gens.len() > u16::MAX as usize {
            return Err(Error::OutOfRange("too many generators".into()));
        }
        let mut orbit = ClassOrbit {
            x: x.clone(),
            gens,
            index: HashMap::new(),
            alt: Vec::new(),
            parent: Vec::new(),
            label: Vec::new(),
        };
        orbit.index.insert(x.digest(), 0);
        orbit.alt.push(x.digest_alt());
        orbit.parent.push(NO_PARENT);
        orbit.label.push(0);
        let bytes_per = x.degree() * 2 + 24;
        let mut frontier: Vec<u32> = vec![0];
        let mut held: Option<Vec<Perm>> = Some(vec![x.clone()]);
        while !frontier.is_empty() {
            let mut next: Vec<u32> = Vec::new();
            let mut next_held: Option<Vec<Perm>> = Some(Vec::new());
            for (ci, chunk) in frontier.chunks(CHUNK).enumerate() {
                let elems: Vec<Perm> = match &held {
                    Some(h) => h[ci * CHUNK..ci * CHUNK + chunk.len()].to_vec(),
                    None => chunk.par_iter().map(|&v| orbit.element(v)).collect(),
                };
                let gens = &orbit.gens;
                let children: Vec<(u128, u128, u32, u16, Perm)> = chunk
                    .par_iter()
                    .zip(elems.par_iter())
                    .flat_map_iter(|(&v, y)| {
                        gens.iter().enumerate().map(move |(l, s)| {
                            let z = y.conjugate(s);
                            (z.digest(), z.digest_alt(), v, l as u16, z)
                        })
                    })
                    .collect();
                for (d1, d2, v, l, z) in children {
                    match orbit.index.get(&d1) {
                        Some(&j) => {
                            if orbit.alt[j as usize] != d2 {
                                return Err(Error::DigestCollision(format!("first-key digest {d1:032x}")));
                            }
                        }
                        None => {
                            let id = orbit.alt.len() as u32;
                            if id as u64 >= cap {
                                return Err(Error::ClassTooLarge { cap });
                            }
                            orbit.index.insert(d1, id);
                            orbit.alt.push(d2);
                            orbit.parent.push(v);
                            orbit.label.push(l);
                            next.push(id);
                            if let Some(h) = &mut next_held {
                                if (h.len() + 1) * bytes_per > FRONTIER_BYTES {
                                    next_held = None;
                                } else {
                                    h.push(z);
                                }
                            }
                        }
                    }
                }
            }
            frontier = next;
            held = next_held;
        }
        Ok(orbit)
    }

    pub fn len(&self) -> usize {
        self.alt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alt.is_empty()
    }

    /// Node of `y` in the orbit, if present.
    pub fn locate(&self, y: &Perm) -> Result<Option<u32>> {
        match self.index.get(&y.digest()) {
            None => Ok(None),
            Some(&j) if self.alt[j as usize] == y.digest_alt() => Ok(Some(j)),
            Some(_) => Err(Error::DigestCollision(format!("first-key digest {:032x}", y.digest()))),
        }
    }

    /// `u` with `x^u` equal to the element at `node`.
    pub fn conjugator(&self, mut node: u32) -> Perm {
        let mut path = Vec::new();
        while self.parent[node as usize] != NO_PARENT {
            path.push(self.label[node as usize]);
            node = self.parent[node as usize];
        }
        let mut u = Perm::identity(self.x.degree());
        for &l in path.iter().rev() {
            u.mul_assign(&self.gens[l as usize]);
        }
        u
    }

    pub fn element(&self, node: u32) -> Perm {
        self.x.conjugate(&self.conjugator(node))
    }

    pub fn fingerprints(&self) -> Fingerprints {
        let mut keys: Vec<u128> = self.index.keys().copied().collect();
        keys.sort_unstable();
        Fingerprints(keys)
    }

    /// C_G(x) from uniformly random `g`: if `x^g = x^u` for the tree element
    /// `u`, then `g u^-1` centralizes `x`. Certified by reaching |G| / |class|.
    pub fn centralizer(&self, g: &PermGroup, seed: u64) -> Result<PermGroup> {
        let (order, rem) = g.order().div_rem(&BigUint::from(self.len()));
        if !rem.is_zero() {
            return Err(Error::PreconditionViolated("class size does not divide the group order".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = &self.x;
        let budget = 200 + 64 * order.bits() as usize;
        PermGroup::from_sampler(g.degree(), order, budget, || {
            let r = g.random_element(&mut rng);
            let node = self.locate(&x.conjugate(&r))?.ok_or(Error::PreconditionViolated(
                "conjugate missing from the class orbit".into(),
            ))?;
            let c = r.mul(&self.conjugator(node).inverse());
            debug_assert!(c.commutes_with(x));
            Ok(c)
        })
    }
}

pub fn conjugacy_class(g: &PermGroup, x: &Perm, cap: u64) -> Result<ConjugacyClassInfo> {
    let orbit = ClassOrbit::build(g, x, cap)?;
    let size = BigUint::from(orbit.len());
    let (centralizer_order, rem) = g.order().div_rem(&size);
    if !rem.is_zero() {
        return Err(Error::PreconditionViolated("class size does not divide the group order".into()));
    }
    Ok(ConjugacyClassInfo {
        representative: x.clone(),
        size,
        centralizer_order,
        fingerprints: Some(orbit.fingerprints()),
    })
}

/// The class of `x` together with its centralizer, from one orbit run.
pub fn class_and_centralizer(g: &PermGroup, x: &Perm, cap: u64, seed: u64) -> Result<(ConjugacyClassInfo, PermGroup)> {
    let orbit = ClassOrbit::build(g, x, cap)?;
    let c = orbit.centralizer(g, seed)?;
    let size = BigUint::from(orbit.len());
    debug_assert_eq!(&size * c.order(), *g.order());
    let info = ConjugacyClassInfo {
        representative: x.clone(),
        size,
        centralizer_order: c.order().clone(),
        fingerprints: Some(orbit.fingerprints()),
    };
    Ok((info, c))
}

pub fn centralizer(g: &PermGroup, x: &Perm, cap: u64, seed: u64) -> Result<PermGroup> {
    Ok(class_and_centralizer(g, x, cap, seed)?.1)
}

/// Largest group order accepted by [`commutator_profile`].
pub const PROFILE_CAP: u64 = 100_000;

/// `|{[g, h] : h in G} ∩ N|` by enumeration; `n` must be a normal subgroup
/// given as an element set.
pub fn commutator_profile(elements: &[Perm], g: &Perm, n: &HashSet<Perm>) -> Result<usize> {
    if elements.len() as u64 > PROFILE_CAP {
        return Err(Error::GroupTooLarge { order: elements.len().to_string(), cap: PROFILE_CAP });
    }
    for a in n {
        for b in n {
            if !n.contains(&a.mul(b)) {
                return Err(Error::NotSubgroup);
            }
        }
        for h in elements {
            if !n.contains(&a.conjugate(h)) {
                return Err(Error::NotNormal);
            }
        }
    }
    let hits: HashSet<Perm> = elements.iter().map(|h| g.commutator(h)).filter(|c| n.contains(c)).collect();
    Ok(hits.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn sym(n: usize) -> PermGroup {
        let t = Perm::from_cycles(n, &[&[0, 1]]).unwrap();
        let c: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![t, Perm::from_cycles(n, &[&c]).unwrap()]).unwrap()
    }

    fn alt(n: usize) -> PermGroup {
        let gens = (2..n).map(|k| Perm::from_cycles(n, &[&[0, 1, k]]).unwrap()).collect();
        PermGroup::new(n, gens).unwrap()
    }

    #[test]
    fn p_parts() {
        let g = Perm::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(p_part_element(&g, 3), g.pow_i64(2));
        assert_eq!(p_part_element(&g, 3).order_u64(), Some(3));
        assert!(p_part_element(&g, 5).is_identity());
        let h = Perm::from_cycles(11, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8], &[9, 10]]).unwrap();
        assert_eq!(p_part_element(&h, 3).order_u64(), Some(9));
    }

    #[test]
    fn class_sizes() {
        // 3-cycles in Sym(5): choose 3 points, 2 cyclic orders
        let x = Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        let info = conjugacy_class(&sym(5), &x, DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(info.size, BigUint::from(2u32 * 10));
        assert!(info.fingerprints.as_ref().unwrap().contains(&x));

        let y = Perm::from_cycles(9, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8]]).unwrap();
        let a9 = alt(9);
        let (info, c) = class_and_centralizer(&a9, &y, DEFAULT_CLASS_CAP, 0).unwrap();
        assert_eq!(info.size, BigUint::from(20160u32));
        assert_eq!(c.order(), &BigUint::from(9u32));
        assert!(c.generators().iter().all(|s| s.commutes_with(&y)));

        let id = conjugacy_class(&a9, &Perm::identity(9), 10).unwrap();
        assert!(id.size.is_one());
    }

    #[test]
    fn cap_is_enforced() {
        let y = Perm::from_cycles(9, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8]]).unwrap();
        assert!(matches!(conjugacy_class(&alt(9), &y, 1000), Err(Error::ClassTooLarge { cap: 1000 })));
        let odd = Perm::from_cycles(9, &[&[0, 1]]).unwrap();
        assert!(matches!(conjugacy_class(&alt(9), &odd, 1000), Err(Error::NotAMember)));
    }

    #[test]
    fn centralizer_of_identity_is_everything() {
        let g = sym(5);
        let c = centralizer(&g, &Perm::identity(5), DEFAULT_CLASS_CAP, 3).unwrap();
        assert_eq!(c.order(), g.order());
    }

    #[test]
    fn commutator_counts() {
        let g = sym(3);
        let elems = g.elements(10).unwrap();
        let trivial: HashSet<Perm> = [Perm::identity(3)].into();
        assert_eq!(commutator_profile(&elems, &Perm::identity(3), &trivial).unwrap(), 1);
        let a3: HashSet<Perm> = elems.iter().filter(|e| e.is_even()).cloned().collect();
        let t = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        assert_eq!(commutator_profile(&elems, &t, &a3).unwrap(), 3);
        let not_normal: HashSet<Perm> = [Perm::identity(3), t.clone()].into();
        assert!(matches!(commutator_profile(&elems, &t, &not_normal), Err(Error::NotNormal)));
    }
}
