//! Small integer helpers shared across modules.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation by trial division, ascending primes.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    assert!(n > 0 && p > 1);
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

pub fn valuation(n: &BigUint, p: u64) -> u32 {
    assert!(!n.is_zero() && p > 1);
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = (&n / &p, &n % &p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

/// The largest power of `p` dividing `n`.
pub fn p_part(n: &BigUint, p: u64) -> BigUint {
    num_traits::pow(BigUint::from(p), valuation(n, p) as usize)
}

/// Factor a big integer whose prime divisors are all below `bound`;
/// the cofactor that remains (1 if fully factored) is returned last.
pub fn factor_big(n: &BigUint, bound: u64) -> (Vec<(u64, u32)>, BigUint) {
    let mut n = n.clone();
    let mut out = Vec::new();
    for p in 2..bound {
        if !is_prime(p) {
            continue;
        }
        let bp = BigUint::from(p);
        let mut e = 0;
        while !n.is_zero() && (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        if n.is_one() {
            break;
        }
    }
    (out, n)
}

pub fn pow_u64(b: u64, e: u32) -> u64 {
    b.checked_pow(e).expect("integer overflow in pow_u64")
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Splits `q` into `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = factor(q);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(19) && is_prime(65537));
        assert!(!is_prime(1) && !is_prime(91));
        assert_eq!(factor(17971200), vec![(2, 11), (3, 3), (5, 2), (13, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigUint::from(181440u32), 3), 4);
        assert_eq!(valuation(&BigUint::from(17971200u32), 3), 3);
        assert_eq!(valuation(&BigUint::from(1u32), 5), 0);
        assert_eq!(p_part(&BigUint::from(5515776u32), 3), BigUint::from(81u32));
    }
}
