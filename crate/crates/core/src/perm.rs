//! Permutations on {0, .., n-1} with n <= 65535.
//!
//! Products are read left to right: `a.mul(&b)` first applies `a`, then `b`,
//! so `x^(ab) = (x^a)^b`. Conjugation follows the same convention,
//! `x^g = g^-1 x g`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use xxhash_rust::xxh3::xxh3_128_with_seed;

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = u16::MAX as usize;

pub type Point = u16;

/// Hash keys for element fingerprints; the second key is an independent check.
pub const DIGEST_KEY: u64 = 0x9e37_79b9_7f4a_7c15;
pub const DIGEST_KEY_ALT: u64 = 0xc2b2_ae3d_27d4_eb4f;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<Point>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for c in self.cycles() {
            if c.len() > 1 {
                write!(f, "(")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= MAX_DEGREE + 1);
        Perm { images: (0..n).map(|i| i as Point).collect() }
    }

    /// Validates that `images` is a bijection on [0, n).
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeCapExceeded { degree: n, cap: MAX_DEGREE });
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
            seen[x] = true;
        }
        Ok(Perm { images: images.into_iter().map(|x| x as Point).collect() })
    }

    /// Trusted constructor; caller guarantees bijectivity.
    pub fn from_points_unchecked(images: Vec<Point>) -> Perm {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| x as usize == i)
        });
        Perm { images }
    }

    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x >= n {
                    return Err(Error::PointOutOfRange { point: x, degree: n });
                }
                if touched[x] {
                    return Err(Error::InvalidPermutation(format!("point {x} in two cycles")));
                }
                touched[x] = true;
                images[x] = c[(i + 1) % c.len()];
            }
        }
        Perm::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    #[inline]
    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x as usize)
    }

    fn check_degree(&self, other: &Perm) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(())
    }

    /// Left-to-right product: apply `self`, then `other`.
    #[inline]
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        self.check_degree(other)?;
        Ok(self.mul(other))
    }

    /// `self <- self * other` without allocating.
    #[inline]
    pub fn mul_assign(&mut self, other: &Perm) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0 as Point; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as Point;
        }
        Perm { images: inv }
    }

    /// `g^-1 self g`.
    pub fn conjugate(&self, g: &Perm) -> Perm {
        let mut out = vec![0 as Point; self.degree()];
        self.conjugate_into(g, &mut out);
        Perm { images: out }
    }

    #[inline]
    pub fn conjugate_into(&self, g: &Perm, out: &mut [Point]) {
        for (b, &xb) in self.images.iter().enumerate() {
            out[g.images[b] as usize] = g.images[xb as usize];
        }
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    /// Commutator `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.image(x);
            }
            out.push(c);
        }
        out
    }

    /// Sorted multiset of cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable();
        t
    }

    /// Length of the cycle through each point.
    pub fn cycle_lengths(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.degree()];
        for c in self.cycles() {
            for &x in &c {
                out[x] = c.len() as u32;
            }
        }
        out
    }

    pub fn order(&self) -> BigUint {
        let mut lens: Vec<u64> = self.cycles().iter().map(|c| c.len() as u64).collect();
        lens.sort_unstable();
        lens.dedup();
        let mut acc = 1u64;
        let mut big: Option<BigUint> = None;
        for l in lens {
            match &mut big {
                Some(b) => *b = b.lcm(&BigUint::from(l)),
                None => {
                    let g = acc.gcd(&l);
                    match (acc / g).checked_mul(l) {
                        Some(v) => acc = v,
                        None => big = Some(BigUint::from(acc).lcm(&BigUint::from(l))),
                    }
                }
            }
        }
        big.unwrap_or_else(|| BigUint::from(acc))
    }

    /// Element order when it fits in a u64.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    /// `self^e`, computed cycle by cycle so any exponent costs O(n).
    pub fn pow(&self, e: &BigUint) -> Perm {
        let mut images = vec![0 as Point; self.degree()];
        for c in self.cycles() {
            let l = c.len();
            let s = (e % BigUint::from(l)).to_usize().unwrap();
            for (i, &x) in c.iter().enumerate() {
                images[x] = c[(i + s) % l] as Point;
            }
        }
        Perm { images }
    }

    pub fn pow_i64(&self, e: i64) -> Perm {
        let p = self.pow(&BigUint::from(e.unsigned_abs()));
        if e < 0 {
            p.inverse()
        } else {
            p
        }
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        transpositions.is_multiple_of(2)
    }

    pub fn digest(&self) -> u128 {
        digest_points(&self.images, DIGEST_KEY)
    }

    pub fn digest_alt(&self) -> u128 {
        digest_points(&self.images, DIGEST_KEY_ALT)
    }

    /// Extends the permutation to a larger degree, fixing the new points.
    pub fn extend_to(&self, n: usize) -> Perm {
        assert!(n >= self.degree());
        let mut images = self.images.clone();
        images.extend((self.degree()..n).map(|i| i as Point));
        Perm { images }
    }

    /// Moves every point by `offset`, inside a domain of size `n`.
    pub fn shifted(&self, offset: usize, n: usize) -> Perm {
        assert!(offset + self.degree() <= n);
        let mut images: Vec<Point> = (0..n).map(|i| i as Point).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = (offset + x as usize) as Point;
        }
        Perm { images }
    }

    /// 1-based image list, as used by the data file format.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }
}

#[inline]
pub fn digest_points(points: &[Point], key: u64) -> u128 {
    xxh3_128_with_seed(bytemuck::cast_slice(points), key)
}

pub fn perm_order(a: &Perm) -> BigUint {
    a.order()
}

/// Order of a p-power element as the exponent `a` with `|g| = p^a`, or None
/// if the order is not a power of `p`.
pub fn p_power_exponent(g: &Perm, p: u64) -> Option<u32> {
    let mut o = g.order();
    let bp = BigUint::from(p);
    let mut a = 0;
    while !o.is_one() {
        if !(&o % &bp).is_zero() {
            return None;
        }
        o /= &bp;
        a += 1;
    }
    Some(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn random_perm(n: usize, seed: u64) -> Perm {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        Perm::from_images(v).unwrap()
    }

    #[test]
    fn order_of_mixed_cycles() {
        let g = Perm::from_cycles(6, &[&[1, 2, 3], &[4, 5]]).unwrap();
        assert_eq!(g.order(), BigUint::from(6u32));
        assert_eq!(g.cycle_type(), vec![1, 2, 3]);
    }

    #[test]
    fn three_cycle_cubed() {
        let c = Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        assert!(c.mul(&c).mul(&c).is_identity());
        assert!(c.inverse().mul(&c.inverse()).mul(&c.inverse()).is_identity());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.mul(&b).image(0), 2);
        assert_eq!(b.mul(&a).image(0), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
        let a = Perm::identity(3);
        assert_eq!(
            a.compose(&Perm::identity(4)).unwrap_err(),
            Error::DegreeMismatch { left: 3, right: 4 }
        );
    }

    #[test]
    fn large_round_trip() {
        let a = random_perm(1600, 1);
        let b = random_perm(1600, 2);
        assert_eq!(a.mul(&b).mul(&b.inverse()), a);
        assert_eq!(a.inverse().mul(&a), Perm::identity(1600));
    }

    #[test]
    fn powers() {
        let g = Perm::from_cycles(10, &[&[0, 1, 2, 3, 4, 5], &[6, 7, 8]]).unwrap();
        let mut acc = Perm::identity(10);
        for e in 0..20u32 {
            assert_eq!(g.pow(&BigUint::from(e)), acc);
            acc = acc.mul(&g);
        }
        assert_eq!(g.pow_i64(-1), g.inverse());
        assert_eq!(p_power_exponent(&g.pow_i64(2), 3), Some(1));
        assert_eq!(p_power_exponent(&g, 3), None);
    }

    proptest! {
        #[test]
        fn conjugation_matches_products(s1 in 0u64..1000, s2 in 0u64..1000) {
            let x = random_perm(40, s1);
            let g = random_perm(40, s2 + 5000);
            prop_assert_eq!(x.conjugate(&g), g.inverse().mul(&x).mul(&g));
            prop_assert_eq!(x.conjugate(&g).order(), x.order());
        }

        #[test]
        fn commutes_matches_products(s1 in 0u64..1000, s2 in 0u64..1000) {
            let x = random_perm(7, s1);
            let y = random_perm(7, s2 + 5000);
            prop_assert_eq!(x.commutes_with(&y), x.mul(&y) == y.mul(&x));
            prop_assert_eq!(x.commutator(&y).is_identity(), x.commutes_with(&y));
        }

        #[test]
        fn parity_is_a_homomorphism(s1 in 0u64..1000, s2 in 0u64..1000) {
            let x = random_perm(9, s1);
            let y = random_perm(9, s2 + 5000);
            prop_assert_eq!(x.mul(&y).is_even(), x.is_even() == y.is_even());
        }
    }
}
