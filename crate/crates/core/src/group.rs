//! Permutation groups with a stabilizer chain built by Schreier–Sims.
//!
//! Chains are built in two phases: random elements from product replacement
//! are sifted until the chain stops growing (or a certified upper bound on the
//! order is met), then every Schreier generator is sifted deterministically, so
//! the resulting order is exact rather than an estimate.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::perm::{Perm, Point, MAX_DEGREE};
use crate::random::ProductReplacer;

const NONE: u32 = u32::MAX;
/// Consecutive trivial sifts that end the random phase.
const RANDOM_STREAK: usize = 40;

#[derive(Clone, Debug)]
pub struct Level {
    base: Point,
    /// Indices into the chain's strong generators.
    gens: Vec<usize>,
    orbit: Vec<Point>,
    parent: Vec<u32>,
    label: Vec<u32>,
    /// Per orbit position: how many leading generators have had their
    /// Schreier generators verified.
    checked: Vec<u32>,
}

impl Level {
    fn new(base: Point, degree: usize) -> Level {
        let mut parent = vec![NONE; degree];
        let label = vec![NONE; degree];
        parent[base as usize] = base as u32;
        Level { base, gens: Vec::new(), orbit: vec![base], parent, label, checked: vec![0] }
    }

    pub fn base_point(&self) -> usize {
        self.base as usize
    }

    pub fn orbit(&self) -> &[Point] {
        &self.orbit
    }

    pub fn in_orbit(&self, x: usize) -> bool {
        self.parent[x] != NONE
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gens
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    strong: Vec<Perm>,
    strong_inv: Vec<Perm>,
    levels: Vec<Level>,
    /// Preferred base points, tried in order before the first moved point.
    base_prefix: Vec<Point>,
}

impl StabChain {
    fn new(degree: usize, base_prefix: Vec<Point>) -> StabChain {
        StabChain { degree, strong: Vec::new(), strong_inv: Vec::new(), levels: Vec::new(), base_prefix }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base as usize).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn level_generators(&self, i: usize) -> impl Iterator<Item = &Perm> {
        self.levels[i].gens.iter().map(move |&s| &self.strong[s])
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Multiplies `g` on the right by the inverse transversal of `beta` at level `i`.
    #[inline]
    fn strip(&self, i: usize, mut beta: usize, g: &mut Perm) {
        let lv = &self.levels[i];
        while beta != lv.base as usize {
            let s = lv.gens[lv.label[beta] as usize];
            g.mul_assign(&self.strong_inv[s]);
            beta = lv.parent[beta] as usize;
        }
    }

    /// Transversal element mapping the base point of level `i` to `beta`.
    pub fn transversal(&self, i: usize, mut beta: usize) -> Option<Perm> {
        let lv = &self.levels[i];
        if lv.parent[beta] == NONE {
            return None;
        }
        let mut path = Vec::new();
        while beta != lv.base as usize {
            path.push(lv.gens[lv.label[beta] as usize]);
            beta = lv.parent[beta] as usize;
        }
        let mut u = Perm::identity(self.degree);
        for &s in path.iter().rev() {
            u.mul_assign(&self.strong[s]);
        }
        Some(u)
    }

    /// Inverse of [`transversal`](Self::transversal), built by stripping.
    pub fn transversal_inverse(&self, i: usize, beta: usize) -> Option<Perm> {
        if !self.levels[i].in_orbit(beta) {
            return None;
        }
        let mut g = Perm::identity(self.degree);
        self.strip(i, beta, &mut g);
        Some(g)
    }

    /// Sifts from level `start`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when all levels were passed).
    pub fn sift_from(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for i in start..self.levels.len() {
            let beta = g.image(self.levels[i].base as usize);
            if self.levels[i].parent[beta] == NONE {
                return (g, i);
            }
            self.strip(i, beta, &mut g);
        }
        let n = self.levels.len();
        (g, n)
    }

    pub fn sift(&self, g: Perm) -> (Perm, usize) {
        self.sift_from(g, 0)
    }

    fn choose_base_point(&self, h: &Perm) -> Point {
        let used: Vec<Point> = self.levels.iter().map(|l| l.base).collect();
        for &b in &self.base_prefix {
            if h.image(b as usize) != b as usize && !used.contains(&b) {
                return b;
            }
        }
        h.first_moved().expect("non-identity residue") as Point
    }

    /// Adds `h` (fixing the base points of levels < j) as a strong generator.
    fn add_generator(&mut self, h: Perm, j: usize) {
        debug_assert!(!h.is_identity());
        if j == self.levels.len() {
            let b = self.choose_base_point(&h);
            self.levels.push(Level::new(b, self.degree));
        }
        let idx = self.strong.len();
        self.strong_inv.push(h.inverse());
        self.strong.push(h);
        for i in 0..=j {
            self.levels[i].gens.push(idx);
            self.extend_orbit(i);
        }
    }

    fn extend_orbit(&mut self, i: usize) {
        let lv = &mut self.levels[i];
        let new_label = (lv.gens.len() - 1) as u32;
        let s = &self.strong[*lv.gens.last().unwrap()];
        let old_len = lv.orbit.len();
        for k in 0..old_len {
            let beta = lv.orbit[k] as usize;
            let gamma = s.image(beta);
            if lv.parent[gamma] == NONE {
                lv.parent[gamma] = beta as u32;
                lv.label[gamma] = new_label;
                lv.orbit.push(gamma as Point);
            }
        }
        let mut k = old_len;
        while k < lv.orbit.len() {
            let beta = lv.orbit[k] as usize;
            for (l, &si) in lv.gens.iter().enumerate() {
                let gamma = self.strong[si].image(beta);
                if lv.parent[gamma] == NONE {
                    lv.parent[gamma] = beta as u32;
                    lv.label[gamma] = l as u32;
                    lv.orbit.push(gamma as Point);
                }
            }
            k += 1;
        }
        lv.checked.resize(lv.orbit.len(), 0);
    }

    /// Sifts `g` and adds the residue if non-trivial. Returns true if the
    /// chain grew.
    fn absorb(&mut self, g: Perm) -> bool {
        let (h, j) = self.sift(g);
        if h.is_identity() {
            false
        } else {
            self.add_generator(h, j);
            true
        }
    }

    fn random_phase(&mut self, gens: &[Perm], seed: u64, bound: Option<&BigUint>) -> bool {
        // Random elements go in first so that base points follow the
        // preferred prefix; the generators are absorbed afterwards so the
        // verification pass sees the whole group.
        if gens.iter().all(|g| g.is_identity()) {
            return true;
        }
        let reached = |c: &StabChain| bound.is_some_and(|b| &c.order() >= b);
        let mut pr = ProductReplacer::new(self.degree, gens, seed);
        let mut streak = 0;
        while streak < RANDOM_STREAK {
            if self.absorb(pr.next_element()) {
                streak = 0;
                if reached(self) {
                    return true;
                }
            } else {
                streak += 1;
            }
        }
        for g in gens {
            self.absorb(g.clone());
        }
        reached(self)
    }

    /// Sifts every unverified Schreier generator, bottom level first.
    fn verify(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            match self.first_failing_schreier_generator(li) {
                Some((h, j)) => {
                    self.add_generator(h, j);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn first_failing_schreier_generator(&mut self, i: usize) -> Option<(Perm, usize)> {
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            let beta = self.levels[i].orbit[k] as usize;
            let ngens = self.levels[i].gens.len() as u32;
            let mut done = self.levels[i].checked[k];
            if done < ngens {
                let u = self.transversal(i, beta).unwrap();
                while done < ngens {
                    let s = &self.strong[self.levels[i].gens[done as usize]];
                    let mut h = u.mul(s);
                    self.strip(i, s.image(beta), &mut h);
                    let (r, j) = self.sift_from(h, i + 1);
                    if !r.is_identity() {
                        self.levels[i].checked[k] = done;
                        return Some((r, j));
                    }
                    done += 1;
                }
                self.levels[i].checked[k] = ngens;
            }
            k += 1;
        }
        None
    }

    /// Uniformly random element, as a product of random transversal elements.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for i in (0..self.levels.len()).rev() {
            let lv = &self.levels[i];
            let beta = lv.orbit[rng.gen_range(0..lv.orbit.len())] as usize;
            g.mul_assign(&self.transversal(i, beta).unwrap());
        }
        g
    }
}

#[derive(Clone, Debug, Default)]
pub struct ChainOptions {
    pub seed: u64,
    /// A proven upper bound on the order. Reaching it ends the construction
    /// without the deterministic verification pass.
    pub order_bound: Option<BigUint>,
    pub base_prefix: Vec<Point>,
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
    order: BigUint,
}

pub fn build_chain(degree: usize, gens: &[Perm], opts: &ChainOptions) -> StabChain {
    let mut chain = StabChain::new(degree, opts.base_prefix.clone());
    let certified = chain.random_phase(gens, opts.seed, opts.order_bound.as_ref());
    if !certified {
        chain.verify();
    }
    if let Some(b) = &opts.order_bound {
        assert!(&chain.order() <= b, "order bound violated: the supplied bound is not an upper bound");
    }
    chain
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        PermGroup::with_options(degree, gens, &ChainOptions::default())
    }

    pub fn with_options(degree: usize, gens: Vec<Perm>, opts: &ChainOptions) -> Result<PermGroup> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeCapExceeded { degree, cap: MAX_DEGREE });
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
            }
        }
        let gens: Vec<Perm> = if gens.is_empty() { vec![Perm::identity(degree)] } else { gens };
        let chain = build_chain(degree, &gens, opts);
        let order = chain.order();
        Ok(PermGroup { degree, gens, chain, order })
    }

    pub fn with_order_bound(degree: usize, gens: Vec<Perm>, bound: BigUint, seed: u64) -> Result<PermGroup> {
        PermGroup::with_options(degree, gens, &ChainOptions { seed, order_bound: Some(bound), base_prefix: Vec::new() })
    }

    /// Subgroup of known order built from sampled elements: residues are
    /// absorbed until the chain reaches `order`, which must be the exact order
    /// of the group the samples come from.
    pub fn from_sampler(
        degree: usize,
        order: BigUint,
        max_samples: usize,
        mut sample: impl FnMut() -> Result<Perm>,
    ) -> Result<PermGroup> {
        let mut chain = StabChain::new(degree, Vec::new());
        let mut tries = 0;
        while chain.order() < order {
            if tries == max_samples {
                return Err(Error::RetriesExhausted(max_samples));
            }
            tries += 1;
            chain.absorb(sample()?);
        }
        assert!(chain.order() == order, "sampled elements exceed the stated order");
        let gens = if chain.strong.is_empty() { vec![Perm::identity(degree)] } else { chain.strong.clone() };
        Ok(PermGroup { degree, gens, chain, order })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, vec![]).unwrap()
    }

    /// The same group with a chain whose base starts with `prefix` where possible.
    pub fn rebase(&self, prefix: &[Point], seed: u64) -> PermGroup {
        let opts = ChainOptions { seed, order_bound: Some(self.order.clone()), base_prefix: prefix.to_vec() };
        let chain = build_chain(self.degree, &self.gens, &opts);
        debug_assert_eq!(chain.order(), self.order);
        PermGroup { degree: self.degree, gens: self.gens.clone(), chain, order: self.order.clone() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn contains(&self, g: &Perm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: g.degree() });
        }
        Ok(self.chain.sift(g.clone()).0.is_identity())
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        self.chain.random_element(rng)
    }

    pub fn product_replacer(&self, seed: u64) -> ProductReplacer {
        ProductReplacer::new(self.degree, &self.gens, seed)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn orbit(&self, x: usize) -> Result<Orbit> {
        point_orbit(self.degree, &self.gens, x)
    }

    /// Subgroup generated by `gens`, which must lie in this group.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        PermGroup::new(self.degree, gens)
    }

    /// Every element, for groups of order at most `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Perm>> {
        match self.order.to_u64() {
            Some(n) if n <= cap => {}
            _ => return Err(Error::GroupTooLarge { order: self.order.to_string(), cap }),
        }
        let levels = self.chain.levels();
        let mut out = vec![Perm::identity(self.degree)];
        // g = u_k ... u_1 u_0: extend by the level-i transversal on the right,
        // walking from the deepest level up.
        for i in (0..levels.len()).rev() {
            let trans: Vec<Perm> =
                levels[i].orbit.iter().map(|&b| self.chain.transversal(i, b as usize).unwrap()).collect();
            let mut next = Vec::with_capacity(out.len() * trans.len());
            for g in &out {
                for u in &trans {
                    next.push(g.mul(u));
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.degree).filter(|&x| self.gens.iter().any(|g| g.image(x) != x)).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).map(|o| o.points.len() == self.degree).unwrap_or(false)
    }
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<usize>,
    /// For each point of the orbit: (parent point, generator index); the root
    /// maps to itself with generator index `usize::MAX`.
    pub schreier: Vec<Option<(usize, usize)>>,
}

impl Orbit {
    pub fn contains(&self, x: usize) -> bool {
        self.schreier.get(x).is_some_and(|s| s.is_some())
    }
}

pub fn point_orbit(degree: usize, gens: &[Perm], x: usize) -> Result<Orbit> {
    if x >= degree {
        return Err(Error::PointOutOfRange { point: x, degree });
    }
    let mut schreier = vec![None; degree];
    schreier[x] = Some((x, usize::MAX));
    let mut points = vec![x];
    let mut queue = VecDeque::from([x]);
    while let Some(b) = queue.pop_front() {
        for (l, g) in gens.iter().enumerate() {
            let c = g.image(b);
            if schreier[c].is_none() {
                schreier[c] = Some((b, l));
                points.push(c);
                queue.push_back(c);
            }
        }
    }
    Ok(Orbit { points, schreier })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sym(n: usize) -> PermGroup {
        let t = Perm::from_cycles(n, &[&[0, 1]]).unwrap();
        let c: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![t, Perm::from_cycles(n, &[&c]).unwrap()]).unwrap()
    }

    fn alt(n: usize) -> PermGroup {
        let t = Perm::from_cycles(n, &[&[0, 1, 2]]).unwrap();
        let c: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
        PermGroup::new(n, vec![t, Perm::from_cycles(n, &[&c]).unwrap()]).unwrap()
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        assert_eq!(sym(5).order(), &BigUint::from(120u32));
        assert_eq!(alt(9).order(), &BigUint::from(181440u32));
        assert_eq!(alt(10).order(), &BigUint::from(1814400u32));
        assert_eq!(sym(12).order(), &crate::arith::factorial(12));
    }

    #[test]
    fn membership() {
        let a4 = alt(4);
        assert!(!a4.contains(&Perm::from_cycles(4, &[&[0, 1]]).unwrap()).unwrap());
        for g in a4.generators() {
            assert!(a4.contains(g).unwrap());
        }
        let a9 = alt(9);
        let s9 = sym(9);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let g = s9.random_element(&mut rng);
            assert_eq!(a9.contains(&g).unwrap(), g.is_even());
        }
        assert!(a9.contains(&Perm::identity(8)).is_err());
    }

    #[test]
    fn chain_consistency() {
        for g in [sym(6), alt(7)] {
            let prod = g.chain().levels().iter().fold(BigUint::one(), |a, l| a * l.orbit().len());
            assert_eq!(&prod, g.order());
            for s in g.generators() {
                assert!(g.chain().sift(s.clone()).0.is_identity());
            }
            for (i, lv) in g.chain().levels().iter().enumerate() {
                for s in g.chain().level_generators(i) {
                    for prev in &g.chain().levels()[..i] {
                        assert_eq!(s.image(prev.base_point()), prev.base_point());
                    }
                }
                let _ = lv;
            }
        }
    }

    #[test]
    fn random_products_are_members() {
        let g = alt(8);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let mut x = Perm::identity(8);
            for _ in 0..rng.gen_range(1..20) {
                x = x.mul(&g.generators()[rng.gen_range(0..2)]);
            }
            assert!(g.contains(&x).unwrap());
        }
    }

    #[test]
    fn orbits() {
        let s5 = sym(5);
        assert_eq!(s5.orbit(0).unwrap().points.len(), 5);
        let g = PermGroup::new(6, vec![Perm::from_cycles(6, &[&[0, 1, 2]]).unwrap(), Perm::from_cycles(6, &[&[3, 4]]).unwrap()]).unwrap();
        let o = g.orbit(4).unwrap();
        let mut pts = o.points.clone();
        pts.sort();
        assert_eq!(pts, vec![3, 4]);
        assert!(g.orbit(6).is_err());
    }

    #[test]
    fn element_enumeration_and_rebase() {
        let g = sym(4);
        let els = g.elements(100).unwrap();
        let set: std::collections::HashSet<_> = els.iter().cloned().collect();
        assert_eq!(set.len(), 24);
        assert!(g.elements(10).is_err());
        let r = sym(7).rebase(&[6, 5, 4], 3);
        assert_eq!(r.chain().base()[..3], [6, 5, 4]);
        assert_eq!(r.order(), &BigUint::from(5040u32));
    }

    #[test]
    fn bound_stops_early_and_subgroup_orders_divide() {
        let s = sym(8);
        let g = PermGroup::with_order_bound(8, s.generators().to_vec(), BigUint::from(40320u32), 9).unwrap();
        assert_eq!(g.order(), s.order());
        let h = s.subgroup(vec![s.generators()[1].clone()]).unwrap();
        assert_eq!(h.order(), &BigUint::from(8u32));
        assert!((s.order() % h.order()) == BigUint::from(0u32));
    }

    #[test]
    fn trivial_group() {
        let t = PermGroup::trivial(5);
        assert!(t.is_trivial());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(t.random_element(&mut rng).is_identity());
    }
}
