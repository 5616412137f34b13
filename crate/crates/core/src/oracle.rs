//! Brute-force reference implementations for small groups: full
//! multiplication tables, exact quotients, conjugacy classes by pairwise
//! conjugation, and Sylow subgroups grown through normalizers by scanning
//! every element. Nothing here touches stabilizer chains beyond listing the
//! elements once.

use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Largest order for which a multiplication table is built.
pub const TABLE_CAP: u64 = 2000;
/// Largest order handled by [`brute_force_sylow`].
pub const BRUTE_SYLOW_CAP: u64 = 5000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementTable {
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    identity: usize,
}

impl ElementTable {
    /// From a full multiplication table in row-major order; checks the group axioms.
    pub fn from_table(n: usize, mul: Vec<u16>, seed: u64) -> Result<ElementTable> {
        if n == 0 || mul.len() != n * n || n > u16::MAX as usize {
            return Err(Error::PreconditionViolated("table has the wrong shape".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul[e * n + a] as usize == a && mul[a * n + e] as usize == a))
            .ok_or_else(|| Error::PreconditionViolated("no identity element".into()))?;
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| mul[a * n + b] as usize == identity)
                .ok_or_else(|| Error::PreconditionViolated(format!("element {a} has no inverse")))?;
            inv[a] = b as u16;
        }
        let t = ElementTable { n, mul, inv, identity };
        t.check_axioms(seed)?;
        Ok(t)
    }

    /// Latin rows and columns; associativity on every triple for `n <= 200`,
    /// otherwise on 10^4 random triples.
    pub fn check_axioms(&self, seed: u64) -> Result<()> {
        let n = self.n;
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[self.mul(a, b)] = true;
                col[self.mul(b, a)] = true;
            }
            if row.contains(&false) || col.contains(&false) {
                return Err(Error::PreconditionViolated("table is not a Latin square".into()));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= 200 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::PreconditionViolated(format!("({a} {b}) {c} != {a} ({b} {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..10_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(Error::PreconditionViolated(format!("({a} {b}) {c} != {a} ({b} {c})")));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g^-1 a g`.
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// `a^-1 b^-1 a b`.
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&h| self.mul(a, h) == self.mul(h, a)).collect()
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n).filter(|&z| (0..self.n).all(|h| self.mul(z, h) == self.mul(h, z))).collect()
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n).filter(|&x| seen[x]).collect()
    }

    /// The smallest normal subgroup containing `a`.
    pub fn normal_closure(&self, a: usize) -> Vec<usize> {
        let conjugates: HashSet<usize> = (0..self.n).map(|g| self.conj(a, g)).collect();
        let mut gens: Vec<usize> = conjugates.into_iter().collect();
        gens.sort_unstable();
        self.generated(&gens)
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let member: HashSet<usize> = set.iter().copied().collect();
        member.contains(&self.identity) && set.iter().all(|&a| set.iter().all(|&b| member.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let member: HashSet<usize> = set.iter().copied().collect();
        set.iter().all(|&a| (0..self.n).all(|g| member.contains(&self.conj(a, g))))
    }

    /// `T / N` and the projection onto it.
    pub fn quotient(&self, normal: &[usize]) -> Result<(ElementTable, Vec<usize>)> {
        if !self.is_subgroup(normal) {
            return Err(Error::NotSubgroup);
        }
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let mut coset = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if coset[g] == usize::MAX {
                for &k in normal {
                    coset[self.mul(g, k)] = reps.len();
                }
                reps.push(g);
            }
        }
        let m = reps.len();
        let mut mul = vec![0u16; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * m + j] = coset[self.mul(a, b)] as u16;
            }
        }
        Ok((ElementTable::from_table(m, mul, 0)?, coset))
    }
}

/// Multiplication table of a permutation group, with the element list
/// indexing it (element `i` of the table is `elements[i]`).
pub fn from_permutation_group(g: &PermGroup) -> Result<(ElementTable, Vec<Perm>)> {
    let elements = g.elements(TABLE_CAP)?;
    let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = elements.len();
    let mut mul = vec![0u16; n * n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            mul[i * n + j] = index[&a.mul(b)] as u16;
        }
    }
    let t = ElementTable::from_table(n, mul, 0)?;
    Ok((t, elements))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleClass {
    pub members: Vec<usize>,
    pub centralizer_order: usize,
}

/// Every conjugacy class, ordered by smallest member.
pub fn oracle_class_data(t: &ElementTable) -> Vec<OracleClass> {
    let mut class_of = vec![usize::MAX; t.order()];
    let mut out = Vec::new();
    for a in 0..t.order() {
        if class_of[a] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = (0..t.order()).map(|g| t.conj(a, g)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = out.len();
        }
        out.push(OracleClass { centralizer_order: t.order() / members.len(), members });
    }
    out
}

/// `|{[g, h] : h in T} ∩ N|`.
pub fn commutators_in(t: &ElementTable, g: usize, normal: &[usize]) -> usize {
    let member: HashSet<usize> = normal.iter().copied().collect();
    let hits: HashSet<usize> = (0..t.order()).map(|h| t.comm(g, h)).filter(|c| member.contains(c)).collect();
    hits.len()
}

/// One instance of the quotient-centraliser identity
/// `|C_{G/N}(gN)| * |N| = |{[g,G] ∩ N}| * |C_G(g)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCheck {
    pub quotient_centralizer: usize,
    pub normal_order: usize,
    pub commutators: usize,
    pub centralizer: usize,
}

impl LiftCheck {
    pub fn holds(&self) -> bool {
        self.quotient_centralizer * self.normal_order == self.commutators * self.centralizer
    }
}

pub fn class_lift(t: &ElementTable, g: usize, normal: &[usize]) -> Result<LiftCheck> {
    let (q, proj) = t.quotient(normal)?;
    Ok(lift_check(t, &q, &proj, g, normal))
}

/// [`class_lift`] for every element of `t`, building the quotient once.
pub fn class_lift_sweep(t: &ElementTable, normal: &[usize]) -> Result<Vec<LiftCheck>> {
    let (q, proj) = t.quotient(normal)?;
    Ok((0..t.order()).map(|g| lift_check(t, &q, &proj, g, normal)).collect())
}

fn lift_check(t: &ElementTable, q: &ElementTable, proj: &[usize], g: usize, normal: &[usize]) -> LiftCheck {
    LiftCheck {
        quotient_centralizer: q.centralizer(proj[g]).len(),
        normal_order: normal.len(),
        commutators: commutators_in(t, g, normal),
        centralizer: t.centralizer(g).len(),
    }
}

/// For the class of `x`: the preimage of the class of `xZ` in `G/Z(G)` splits
/// into `k` classes of `G`, and `|C_G(x)| = k |C_{G/Z}(xZ)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCheck {
    pub k: usize,
    pub centralizer: usize,
    pub quotient_centralizer: usize,
    /// The preimage is exactly a union of whole classes.
    pub is_union: bool,
}

impl SplitCheck {
    pub fn holds(&self) -> bool {
        self.is_union && self.centralizer == self.k * self.quotient_centralizer
    }
}

pub fn class_split(t: &ElementTable, x: usize) -> Result<SplitCheck> {
    Ok(class_split_sweep(t)?.swap_remove(x))
}

/// [`class_split`] for every element of `t`.
pub fn class_split_sweep(t: &ElementTable) -> Result<Vec<SplitCheck>> {
    let (q, proj) = t.quotient(&t.center())?;
    let classes = oracle_class_data(t);
    let qclasses = oracle_class_data(&q);
    let mut qclass_of = vec![0; q.order()];
    for (i, c) in qclasses.iter().enumerate() {
        for &m in &c.members {
            qclass_of[m] = i;
        }
    }
    // For each class of the quotient: the classes of G meeting its preimage.
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); qclasses.len()];
    for (ci, c) in classes.iter().enumerate() {
        let mut hit: Vec<usize> = c.members.iter().map(|&m| qclass_of[proj[m]]).collect();
        hit.sort_unstable();
        hit.dedup();
        for h in hit {
            touching[h].push(ci);
        }
    }
    Ok((0..t.order())
        .map(|x| {
            let qc = qclass_of[proj[x]];
            let is_union = touching[qc]
                .iter()
                .all(|&ci| classes[ci].members.iter().all(|&m| qclass_of[proj[m]] == qc));
            SplitCheck {
                k: touching[qc].len(),
                centralizer: t.centralizer(x).len(),
                quotient_centralizer: qclasses[qc].centralizer_order,
                is_union,
            }
        })
        .collect())
}

/// Isomorphism invariants of a p-group found by brute force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteSylow {
    pub order: u64,
    pub abelian: bool,
    pub center_order: u64,
    pub exponent: u64,
    pub center_exponent: u64,
}

/// A Sylow p-subgroup by scanning: starting from the trivial group, adjoin
/// any p-element of `N(P) \ P` until none is left.
pub fn brute_force_sylow(g: &PermGroup, p: u64) -> Result<BruteSylow> {
    let elements = g.elements(BRUTE_SYLOW_CAP)?;
    let is_p_element = |x: &Perm| {
        let mut o = x.order_u64().expect("small group");
        while o.is_multiple_of(p) {
            o /= p;
        }
        o == 1
    };
    let mut sub: HashSet<Perm> = HashSet::from([g.identity()]);
    loop {
        let next = elements.iter().find(|x| {
            !sub.contains(*x) && is_p_element(x) && sub.iter().all(|s| sub.contains(&s.conjugate(x)))
        });
        let Some(x) = next else { break };
        let mut gens: Vec<Perm> = sub.iter().cloned().collect();
        gens.push(x.clone());
        sub = closure(&gens, g.degree());
    }
    let members: Vec<Perm> = sub.into_iter().collect();
    let abelian = members.iter().all(|a| members.iter().all(|b| a.commutes_with(b)));
    let centre: Vec<&Perm> = members.iter().filter(|z| members.iter().all(|b| z.commutes_with(b))).collect();
    let exp = |xs: &mut dyn Iterator<Item = &Perm>| -> u64 {
        xs.fold(BigUint::from(1u32), |e, x| e.lcm(&x.order())).try_into().expect("small exponent")
    };
    Ok(BruteSylow {
        order: members.len() as u64,
        abelian,
        center_order: centre.len() as u64,
        exponent: exp(&mut members.iter()),
        center_exponent: exp(&mut centre.iter().copied()),
    })
}

fn closure(gens: &[Perm], degree: usize) -> HashSet<Perm> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = x.mul(s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// The quaternion group in its regular representation on 8 points.
pub fn quaternion_group() -> PermGroup {
    let i = Perm::from_cycles(8, &[&[0, 1, 2, 3], &[4, 5, 6, 7]]).unwrap();
    let j = Perm::from_cycles(8, &[&[0, 4, 2, 6], &[1, 7, 3, 5]]).unwrap();
    PermGroup::new(8, vec![i, j]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic, symmetric, wreath_product};

    fn sizes(t: &ElementTable) -> Vec<usize> {
        let mut s: Vec<usize> = oracle_class_data(t).iter().map(|c| c.members.len()).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn tables_and_classes() {
        let (s3, _) = from_permutation_group(&symmetric(3).unwrap()).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(sizes(&s3), vec![1, 2, 3]);
        let (q8, _) = from_permutation_group(&quaternion_group()).unwrap();
        assert_eq!(sizes(&q8), vec![1, 1, 2, 2, 2]);
        assert_eq!((0..8).filter(|&a| q8.element_order(a) == 2).count(), 1);
        let (w, _) = from_permutation_group(&wreath_product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap()).unwrap();
        assert_eq!(w.order(), 81);
        assert_eq!(w.center().len(), 3);
    }

    #[test]
    fn quotients() {
        let (w, _) = from_permutation_group(&wreath_product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap()).unwrap();
        let (q, proj) = w.quotient(&w.center()).unwrap();
        assert_eq!(q.order(), 27);
        assert_eq!(proj.len(), 81);
        let (same, _) = w.quotient(&[w.identity()]).unwrap();
        assert_eq!(same.order(), 81);
        let (s3, _) = from_permutation_group(&symmetric(3).unwrap()).unwrap();
        let transposition = (0..6).find(|&a| s3.element_order(a) == 2).unwrap();
        let sub = s3.generated(&[transposition]);
        assert_eq!(s3.quotient(&sub).unwrap_err(), Error::NotNormal);
        assert_eq!(s3.quotient(&[transposition]).unwrap_err(), Error::NotSubgroup);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(ElementTable::from_table(2, vec![0, 0, 0, 1], 0).is_err());
        assert!(ElementTable::from_table(2, vec![0, 1, 1, 0], 0).is_ok());
    }

    #[test]
    fn quaternion_lift() {
        let (q8, _) = from_permutation_group(&quaternion_group()).unwrap();
        let z = q8.center();
        let i = (0..8).find(|&a| q8.element_order(a) == 4).unwrap();
        let c = class_lift(&q8, i, &z).unwrap();
        assert_eq!(c.commutators, 2);
        assert_eq!(c.commutators * c.centralizer, 8);
        assert!(c.holds());
        assert!(class_split(&q8, i).unwrap().holds());
    }

    #[test]
    fn brute_sylow() {
        let s = brute_force_sylow(&symmetric(6).unwrap(), 3).unwrap();
        assert_eq!((s.order, s.abelian), (9, true));
        let w = brute_force_sylow(&wreath_product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap(), 3).unwrap();
        assert_eq!((w.order, w.abelian, w.center_order, w.exponent, w.center_exponent), (81, false, 3, 9, 3));
    }
}
