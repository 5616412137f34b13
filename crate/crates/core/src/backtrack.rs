//! Backtrack search over a stabilizer chain: centralizers of elements and
//! conjugating elements between two elements.
//!
//! The base is taken along the cycles of `x`, so once the image of a cycle's
//! first base point is chosen, every later base point on the same cycle has a
//! forced image. Only cycle starts branch, and only onto cycles of equal length.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::group::{PermGroup, StabChain};
use crate::perm::{Perm, Point};

/// Node budget for a single search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

/// Cycle bookkeeping: for every point, its cycle and position on it.
struct Cycles {
    cycles: Vec<Vec<usize>>,
    at: Vec<(u32, u32)>,
}

impl Cycles {
    fn new(x: &Perm) -> Cycles {
        let n = x.degree();
        let mut at = vec![(0u32, 0u32); n];
        let mut cycles = Vec::new();
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut p = x.image(s);
            while p != s {
                seen[p] = true;
                c.push(p);
                p = x.image(p);
            }
            for (k, &q) in c.iter().enumerate() {
                at[q] = (cycles.len() as u32, k as u32);
            }
            cycles.push(c);
        }
        Cycles { cycles, at }
    }

    fn len_at(&self, p: usize) -> usize {
        self.cycles[self.at[p].0 as usize].len()
    }

    /// `x^k(p)`.
    fn step(&self, p: usize, k: usize) -> usize {
        let (c, pos) = self.at[p];
        let cyc = &self.cycles[c as usize];
        cyc[(pos as usize + k) % cyc.len()]
    }
}

/// Base prefix running along the cycles of `x`, longest cycles first.
pub fn cycle_base_prefix(x: &Perm) -> Vec<Point> {
    let mut cycles = Cycles::new(x).cycles;
    cycles.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    cycles.into_iter().flatten().map(|p| p as Point).collect()
}

struct Search<'a> {
    chain: &'a StabChain,
    base: Vec<usize>,
    x: &'a Perm,
    y: &'a Perm,
    xc: Cycles,
    yc: Cycles,
    /// For each level, an earlier level on the same x-cycle and the offset.
    forced: Vec<Option<(usize, usize)>>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(chain: &'a StabChain, x: &'a Perm, y: &'a Perm, budget: u64) -> Search<'a> {
        let base = chain.base();
        let xc = Cycles::new(x);
        let forced = (0..base.len())
            .map(|i| {
                let (c, pos) = xc.at[base[i]];
                (0..i).find(|&j| xc.at[base[j]].0 == c).map(|j| {
                    let len = xc.cycles[c as usize].len();
                    let pj = xc.at[base[j]].1 as usize;
                    (j, (pos as usize + len - pj) % len)
                })
            })
            .collect();
        Search { chain, base, x, y, xc, yc: Cycles::new(y), forced, nodes: 0, budget }
    }

    fn is_solution(&self, g: &Perm) -> bool {
        (0..self.x.degree()).all(|p| g.image(self.x.image(p)) == self.y.image(g.image(p)))
    }

    /// Extends `h` (fixing images of base points < i) to a solution.
    fn descend(&mut self, i: usize, h: &Perm, hinv: &Perm) -> Result<Option<Perm>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExhausted(self.budget));
        }
        if i == self.base.len() {
            return Ok(self.is_solution(h).then(|| h.clone()));
        }
        let b = self.base[i];
        let lv = &self.chain.levels()[i];
        if let Some((j, k)) = self.forced[i] {
            let target = self.yc.step(h.image(self.base[j]), k);
            let beta = hinv.image(target);
            if !lv.in_orbit(beta) {
                return Ok(None);
            }
            return self.branch(i, beta, h, hinv);
        }
        let want = self.xc.len_at(b);
        let cands: Vec<usize> = lv
            .orbit()
            .iter()
            .map(|&p| p as usize)
            .filter(|&beta| self.yc.len_at(h.image(beta)) == want)
            .collect();
        for beta in cands {
            if let Some(g) = self.branch(i, beta, h, hinv)? {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    fn branch(&mut self, i: usize, beta: usize, h: &Perm, hinv: &Perm) -> Result<Option<Perm>> {
        let t = self.chain.transversal(i, beta).unwrap();
        let tinv = self.chain.transversal_inverse(i, beta).unwrap();
        self.descend(i + 1, &t.mul(h), &hinv.mul(&tinv))
    }
}

fn orbit_closure(degree: usize, gens: &[Perm], seeds: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut mark = vec![false; degree];
    let mut stack: Vec<usize> = Vec::new();
    for s in seeds {
        if !mark[s] {
            mark[s] = true;
            stack.push(s);
        }
    }
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.image(p);
            if !mark[q] {
                mark[q] = true;
                stack.push(q);
            }
        }
    }
    mark
}

/// `G` with its chain rebased along the cycles of `x`.
pub fn rebased_for(g: &PermGroup, x: &Perm, seed: u64) -> PermGroup {
    g.rebase(&cycle_base_prefix(x), seed)
}

/// C_G(x) by backtrack search. `g` should be rebased with
/// [`rebased_for`] for speed, but any chain gives a correct result.
pub fn centralizer_search(g: &PermGroup, x: &Perm, budget: u64, seed: u64) -> Result<PermGroup> {
    if !g.contains(x)? {
        return Err(Error::NotAMember);
    }
    let chain = g.chain();
    let n = g.degree();
    let mut search = Search::new(chain, x, x, budget);
    let mut found: Vec<Perm> = Vec::new();
    let mut order = BigUint::one();
    let id = Perm::identity(n);
    for i in (0..chain.levels().len()).rev() {
        if search.forced[i].is_some() {
            continue;
        }
        let b = search.base[i];
        let want = search.xc.len_at(b);
        let mut covered = orbit_closure(n, &found, [b]);
        let mut dead = vec![false; n];
        let orbit: Vec<usize> = chain.levels()[i].orbit().iter().map(|&p| p as usize).collect();
        for &gamma in &orbit {
            if covered[gamma] || dead[gamma] || search.xc.len_at(gamma) != want {
                continue;
            }
            match search.branch(i, gamma, &id, &id)? {
                Some(c) => {
                    found.push(c);
                    covered = orbit_closure(n, &found, [b]);
                }
                None => {
                    for (p, d) in orbit_closure(n, &found, [gamma]).into_iter().enumerate() {
                        dead[p] |= d;
                    }
                }
            }
        }
        order *= BigUint::from(covered.iter().filter(|&&c| c).count());
    }
    if found.is_empty() {
        return Ok(PermGroup::trivial(n));
    }
    PermGroup::with_order_bound(n, found, order, seed)
}

/// An element `c` with `x^c = y`, or None when they are not conjugate.
/// `cy`, when given, must be C_G(y); it prunes the first level.
pub fn conjugating_element(
    g: &PermGroup,
    x: &Perm,
    y: &Perm,
    cy: Option<&PermGroup>,
    budget: u64,
) -> Result<Option<Perm>> {
    if !g.contains(x)? || !g.contains(y)? {
        return Err(Error::NotAMember);
    }
    if x.cycle_type() != y.cycle_type() {
        return Ok(None);
    }
    let chain = g.chain();
    let n = g.degree();
    let mut search = Search::new(chain, x, y, budget);
    if chain.levels().is_empty() {
        return Ok((x == y).then(|| Perm::identity(n)));
    }
    let id = Perm::identity(n);
    let b = search.base[0];
    let want = search.xc.len_at(b);
    let prune: Vec<Perm> = cy.map(|c| c.generators().to_vec()).unwrap_or_default();
    let mut dead = vec![false; n];
    let orbit: Vec<usize> = chain.levels()[0].orbit().iter().map(|&p| p as usize).collect();
    for &gamma in &orbit {
        if dead[gamma] || search.yc.len_at(gamma) != want {
            continue;
        }
        if let Some(c) = search.branch(0, gamma, &id, &id)? {
            return Ok(Some(c));
        }
        for (p, d) in orbit_closure(n, &prune, [gamma]).into_iter().enumerate() {
            dead[p] |= d;
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorial;

    fn sym(n: usize) -> PermGroup {
        let t = Perm::from_cycles(n, &[&[0, 1]]).unwrap();
        let c: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![t, Perm::from_cycles(n, &[&c]).unwrap()]).unwrap()
    }

    fn alt(n: usize) -> PermGroup {
        let gens = (2..n).map(|k| Perm::from_cycles(n, &[&[0, 1, k]]).unwrap()).collect();
        PermGroup::new(n, gens).unwrap()
    }

    /// Centralizer order of a permutation in Sym(n) from its cycle type.
    fn sym_centralizer(x: &Perm) -> BigUint {
        let mut counts = std::collections::BTreeMap::new();
        for l in x.cycle_type() {
            *counts.entry(l).or_insert(0u64) += 1;
        }
        counts.iter().fold(BigUint::one(), |acc, (&l, &m)| acc * BigUint::from(l).pow(m as u32) * factorial(m))
    }

    #[test]
    fn centralizers_in_symmetric_groups() {
        let g = sym(8);
        for cycles in [vec![vec![0, 1, 2]], vec![vec![0, 1, 2], vec![3, 4, 5]], vec![vec![0, 1], vec![2, 3, 4, 5]], vec![]] {
            let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
            let x = Perm::from_cycles(8, &refs).unwrap();
            let gx = rebased_for(&g, &x, 1);
            let c = centralizer_search(&gx, &x, DEFAULT_SEARCH_BUDGET, 0).unwrap();
            assert_eq!(c.order(), &sym_centralizer(&x), "{x:?}");
            assert!(c.generators().iter().all(|s| s.commutes_with(&x)));
        }
    }

    #[test]
    fn nine_cycle_in_alt9() {
        let g = alt(9);
        let x = Perm::from_cycles(9, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8]]).unwrap();
        let c = centralizer_search(&rebased_for(&g, &x, 0), &x, DEFAULT_SEARCH_BUDGET, 0).unwrap();
        assert_eq!(c.order(), &BigUint::from(9u32));
    }

    #[test]
    fn conjugacy_tests() {
        let g = alt(5);
        let x = Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let y = x.pow_i64(2);
        let z = x.conjugate(&Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap());
        let gx = rebased_for(&g, &x, 0);
        // 5-cycles split into two classes in Alt(5): x and x^2 are not conjugate
        assert!(conjugating_element(&gx, &x, &y, None, DEFAULT_SEARCH_BUDGET).unwrap().is_none());
        let c = conjugating_element(&gx, &x, &z, None, DEFAULT_SEARCH_BUDGET).unwrap().unwrap();
        assert_eq!(x.conjugate(&c), z);
        let cz = centralizer_search(&rebased_for(&g, &z, 0), &z, DEFAULT_SEARCH_BUDGET, 0).unwrap();
        let c = conjugating_element(&gx, &x, &z, Some(&cz), DEFAULT_SEARCH_BUDGET).unwrap().unwrap();
        assert_eq!(x.conjugate(&c), z);
        let w = Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        assert!(conjugating_element(&gx, &x, &w, None, DEFAULT_SEARCH_BUDGET).unwrap().is_none());
    }
}
