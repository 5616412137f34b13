//! GF(p^k) for q = p^k <= 2^16 via log/antilog tables.
//!
//! An element is encoded as the integer sum c_i p^i of its coefficients in
//! the polynomial basis 1, x, ..., x^(k-1) modulo the reduction polynomial.

use crate::arith::is_prime;
use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Coefficients c_0..c_k of the monic reduction polynomial.
    modulus: Vec<u32>,
    log: Vec<u32>,
    antilog: Vec<u32>,
    primitive: u32,
}

fn digits(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `m` (coefficient vectors, low first).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn monic_of_degree(d: u32, low: u32, p: u32) -> Vec<u32> {
    let mut m = digits(low, p, d);
    m.push(1);
    m
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = (m.len() - 1) as u32;
    for d in 1..=k / 2 {
        for low in 0..p.pow(d) {
            let f = monic_of_degree(d, low, p);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds GF(p^k). The reduction polynomial is the first monic irreducible
    /// when the lower coefficients are read as a base-p integer; the
    /// distinguished primitive element is the smallest encoding of order q-1.
    pub fn new(p: u64, k: u32) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::OutOfRange("field degree must be positive".into()));
        }
        match p.checked_pow(k) {
            Some(q) if q <= MAX_FIELD_ORDER => {}
            _ => return Err(Error::FieldTooLarge { p, k }),
        }
        let p = p as u32;
        let q = p.pow(k);
        let modulus = (0..p.pow(k))
            .map(|low| monic_of_degree(k, low, p))
            .find(|m| is_irreducible(m, p))
            .expect("irreducible polynomials exist in every degree");

        let mulmod = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a, p, k), digits(b, p, k));
            let mut prod = vec![0u32; (2 * k) as usize];
            for (i, &x) in da.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            undigits(&poly_rem(&prod, &modulus, p), p)
        };

        let mut log = vec![0u32; q as usize];
        let mut antilog = vec![0u32; q as usize];
        let mut primitive = 0;
        'search: for g in 1..q {
            let mut x = 1u32;
            for i in 0..q - 1 {
                antilog[i as usize] = x;
                x = mulmod(x, g);
                if x == 1 && i + 1 < q - 1 {
                    continue 'search;
                }
            }
            primitive = g;
            break;
        }
        assert!(primitive != 0);
        antilog[(q - 1) as usize] = 1;
        for i in 0..q - 1 {
            log[antilog[i as usize] as usize] = i;
        }
        Ok(FieldSpec { p, k, q, modulus, log, antilog, primitive })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> FieldElement {
        FieldElement(self.primitive)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// The element `value` of the prime subfield.
    pub fn from_int(&self, value: i64) -> FieldElement {
        FieldElement(value.rem_euclid(self.p as i64) as u32)
    }

    pub fn log(&self, a: FieldElement) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::DivisionByZero(self.q));
        }
        Ok(self.log[a.0 as usize])
    }

    /// g^i for the distinguished primitive element g.
    pub fn exp(&self, i: u64) -> FieldElement {
        FieldElement(self.antilog[(i % (self.q as u64 - 1)) as usize])
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.k == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        if self.k == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        let n = self.q - 1;
        FieldElement(self.antilog[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero(self.q));
        }
        let n = self.q - 1;
        Ok(FieldElement(self.antilog[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e by square-and-multiply; 0^0 = 1.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let (mut base, mut acc) = (a, FieldElement::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero(self.q));
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Ok(n / num_integer::gcd(n, l))
    }

    /// An element of exact multiplicative order `m`.
    pub fn element_of_order(&self, m: u64) -> Result<FieldElement> {
        let n = (self.q - 1) as u64;
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::OrderNotDividing { m, modulus: n });
        }
        let mut x = self.exp(n / m);
        // With a primitive g the first candidate is exact; the loop only
        // guards the contract.
        let mut i = 1u64;
        while self.multiplicative_order(x)? != m {
            i += 1;
            x = self.exp(i * (n / m));
        }
        Ok(x)
    }
}

pub fn field_create(p: u64, k: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::divisors;
    use proptest::prelude::*;

    fn brute_order(f: &FieldSpec, a: FieldElement) -> u64 {
        let mut x = a;
        let mut n = 1;
        while x != FieldElement::ONE {
            x = f.mul(x, a);
            n += 1;
        }
        n
    }

    #[test]
    fn small_prime_fields() {
        let f3 = field_create(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
        assert_eq!(f3.modulus(), &[0, 1]);
        let f5 = field_create(5, 1).unwrap();
        assert_eq!(f5.inv(FieldElement(2)).unwrap(), FieldElement(3));
        let f7 = field_create(7, 1).unwrap();
        assert_eq!(f7.pow(FieldElement(3), 6), FieldElement::ONE);
        assert_eq!(f7.multiplicative_order(FieldElement(3)).unwrap(), 6);
        assert_eq!(brute_order(&f7, FieldElement(3)), 6);
    }

    #[test]
    fn primitive_elements() {
        let f19 = field_create(19, 1).unwrap();
        assert_eq!(brute_order(&f19, f19.primitive()), 18);
        let f64 = field_create(2, 6).unwrap();
        assert_eq!(f64.q() - 1, 63);
        assert_eq!(brute_order(&f64, f64.primitive()), 63);
    }

    #[test]
    fn elements_of_order_nine() {
        for (p, k) in [(2u64, 6u32), (19, 1)] {
            let f = field_create(p, k).unwrap();
            let z = f.element_of_order(9).unwrap();
            assert_eq!(brute_order(&f, z), 9);
        }
        let f7 = field_create(7, 1).unwrap();
        assert!(matches!(f7.element_of_order(5), Err(Error::OrderNotDividing { .. })));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(field_create(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(field_create(2, 17), Err(Error::FieldTooLarge { .. })));
        assert!(field_create(2, 16).is_ok());
        let f = field_create(5, 1).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero(5)));
    }

    #[test]
    fn tables_are_inverse() {
        for (p, k) in [(2, 1), (2, 4), (3, 2), (5, 2), (7, 1), (3, 5)] {
            let f = field_create(p, k).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.exp(f.log(a).unwrap() as u64), a);
            }
            for i in 0..f.q() - 1 {
                assert_eq!(f.log(f.exp(i as u64)).unwrap(), i);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_gf25() {
        let f = field_create(5, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in [FieldElement(7), FieldElement(13)] {
                    assert_eq!(
                        f.mul(a, f.add(b, c)),
                        f.add(f.mul(a, b), f.mul(a, c))
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn log_is_additive(a in 1u32..64, b in 1u32..64) {
            let f = field_create(2, 6).unwrap();
            let (a, b) = (FieldElement(a), FieldElement(b));
            let lhs = f.log(f.mul(a, b)).unwrap();
            let rhs = (f.log(a).unwrap() + f.log(b).unwrap()) % 63;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn frobenius_is_a_homomorphism(a in 0u32..81, b in 0u32..81) {
            let f = field_create(3, 4).unwrap();
            let (a, b) = (FieldElement(a), FieldElement(b));
            prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        }

        #[test]
        fn element_of_order_is_exact(m_idx in 0usize..12) {
            let f = field_create(2, 12).unwrap();
            let ds = divisors(4095);
            let m = ds[m_idx % ds.len()];
            let x = f.element_of_order(m).unwrap();
            prop_assert_eq!(f.pow(x, m), FieldElement::ONE);
            for d in divisors(m) {
                if d < m {
                    prop_assert_ne!(f.pow(x, d), FieldElement::ONE);
                }
            }
        }
    }
}
