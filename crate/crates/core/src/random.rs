//! Product replacement ("rattle" variant with an accumulator).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::perm::Perm;

pub const SLOTS: usize = 10;
pub const BURN_IN: usize = 60;

#[derive(Clone)]
pub struct ProductReplacer {
    slots: Vec<Perm>,
    acc: Perm,
    rng: ChaCha8Rng,
}

impl ProductReplacer {
    pub fn new(degree: usize, gens: &[Perm], seed: u64) -> ProductReplacer {
        let id = Perm::identity(degree);
        let mut slots: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if slots.is_empty() {
            slots.push(id.clone());
        }
        let base = slots.len();
        let mut i = 0;
        while slots.len() < SLOTS.max(base) {
            slots.push(slots[i % base].clone());
            i += 1;
        }
        let mut pr = ProductReplacer { slots, acc: id, rng: ChaCha8Rng::seed_from_u64(seed) };
        for _ in 0..BURN_IN {
            pr.step();
        }
        pr
    }

    fn step(&mut self) {
        let n = self.slots.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let inverse = self.rng.gen_bool(0.5);
        let right = self.rng.gen_bool(0.5);
        let sj = if inverse { self.slots[j].inverse() } else { self.slots[j].clone() };
        self.slots[i] = if right { self.slots[i].mul(&sj) } else { sj.mul(&self.slots[i]) };
        self.acc.mul_assign(&self.slots[i]);
    }

    pub fn next_element(&mut self) -> Perm {
        self.step();
        self.acc.clone()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_group_gives_identity() {
        let mut pr = ProductReplacer::new(4, &[Perm::identity(4)], 3);
        for _ in 0..10 {
            assert!(pr.next_element().is_identity());
        }
    }

    #[test]
    fn sym3_is_close_to_uniform() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let mut pr = ProductReplacer::new(3, &[a, b], 0);
        let mut counts = std::collections::HashMap::new();
        let n = 10_000;
        for _ in 0..n {
            *counts.entry(pr.next_element()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 6);
        let expected = n as f64 / 6.0;
        let sigma = (n as f64 * (1.0 / 6.0) * (5.0 / 6.0)).sqrt();
        for (_, c) in counts {
            assert!((c as f64 - expected).abs() < 5.0 * sigma, "count {c}");
        }
    }
}
