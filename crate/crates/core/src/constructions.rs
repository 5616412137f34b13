//! Group constructors: cyclic, symmetric and alternating groups, direct and
//! wreath products, Weir towers, and enumeration-based centre and exponent.
//!
//! Wreath products `H wr A` act imprimitively on `d * t` points: block `j`
//! holds points `j*d .. (j+1)*d`, the base group's generators come first
//! (copy 0, copy 1, ...) and the top group's block permutations last. An
//! element `g` factors as `(h_0, ..., h_{t-1}) * sigma` with
//! `g(j*d + i) = sigma(j)*d + h_j(i)`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::arith::{factorial, is_prime, valuation_u64};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{Perm, MAX_DEGREE};

/// Largest order accepted by [`center_small`] and [`exponent_small`].
pub const ENUMERATION_CAP: u64 = 1_000_000;

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n < 1 {
        return Err(Error::DegreeTooSmall { min: 1, got: n });
    }
    check_degree(n)?;
    let c: Vec<usize> = (0..n).collect();
    PermGroup::with_order_bound(n, vec![Perm::from_cycles(n, &[&c])?], BigUint::from(n), 0)
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: n });
    }
    check_degree(n)?;
    let c: Vec<usize> = (0..n).collect();
    let gens = vec![Perm::from_cycles(n, &[&[0, 1]])?, Perm::from_cycles(n, &[&c])?];
    PermGroup::with_order_bound(n, gens, factorial(n as u64), 0)
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: n });
    }
    check_degree(n)?;
    if n < 3 {
        return Ok(PermGroup::trivial(n));
    }
    // (0 1 2) with an (n-1)- or n-cycle, whichever is even.
    let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
    let gens = vec![Perm::from_cycles(n, &[&[0, 1, 2]])?, Perm::from_cycles(n, &[&long])?];
    PermGroup::with_order_bound(n, gens, factorial(n as u64) / 2u32, 0)
}

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        return Err(Error::DegreeCapExceeded { degree: n, cap: MAX_DEGREE });
    }
    Ok(())
}

/// `G x H` on the disjoint union of the domains, `G` first.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let n = g.degree() + h.degree();
    check_degree(n)?;
    let mut gens: Vec<Perm> = g.generators().iter().map(|x| x.extend_to(n)).collect();
    gens.extend(h.generators().iter().map(|x| x.shifted(g.degree(), n)));
    PermGroup::with_order_bound(n, gens, g.order() * h.order(), 0)
}

pub fn direct_power(g: &PermGroup, k: usize) -> Result<PermGroup> {
    let mut acc = g.clone();
    for _ in 1..k {
        acc = direct_product(&acc, g)?;
    }
    Ok(acc)
}

/// `H wr A` in the imprimitive action; `A` must be transitive.
pub fn wreath_product(bottom: &PermGroup, top: &PermGroup) -> Result<PermGroup> {
    if !top.is_transitive() {
        return Err(Error::TopNotTransitive);
    }
    let (d, t) = (bottom.degree(), top.degree());
    let n = d * t;
    check_degree(n)?;
    let mut gens = Vec::new();
    for j in 0..t {
        gens.extend(bottom.generators().iter().filter(|h| !h.is_identity()).map(|h| h.shifted(j * d, n)));
    }
    for s in top.generators().iter().filter(|s| !s.is_identity()) {
        let images: Vec<usize> = (0..n).map(|x| s.image(x / d) * d + x % d).collect();
        gens.push(Perm::from_images(images)?);
    }
    let order = bottom.order().pow(t as u32) * top.order();
    PermGroup::with_order_bound(n, gens, order, 0)
}

/// Splits an element of a wreath product with bottom degree `d` into its
/// base coordinates and its block permutation.
pub fn wreath_decompose(g: &Perm, d: usize) -> Result<(Vec<Perm>, Perm)> {
    if d == 0 || !g.degree().is_multiple_of(d) {
        return Err(Error::PreconditionViolated(format!("degree {} is not a multiple of {d}", g.degree())));
    }
    let t = g.degree() / d;
    let mut sigma = Vec::with_capacity(t);
    let mut base = Vec::with_capacity(t);
    for j in 0..t {
        let target = g.image(j * d) / d;
        let mut h = Vec::with_capacity(d);
        for i in 0..d {
            let y = g.image(j * d + i);
            if y / d != target {
                return Err(Error::PreconditionViolated("element does not preserve the blocks".into()));
            }
            h.push(y % d);
        }
        sigma.push(target);
        base.push(Perm::from_images(h)?);
    }
    Ok((base, Perm::from_images(sigma)?))
}

/// Levels `G_0, ..., G_s` of the tower `G_i = G_{i-1} wr C_p`.
pub fn weir_tower(g0: &PermGroup, p: usize, s: usize) -> Result<Vec<PermGroup>> {
    let cp = cyclic(p)?;
    let mut levels = vec![g0.clone()];
    for _ in 0..s {
        let next = wreath_product(levels.last().unwrap(), &cp)?;
        levels.push(next);
    }
    Ok(levels)
}

/// A Sylow p-subgroup of GL_n(q) for odd `p` dividing `q - 1`: with
/// `n = a_0 + a_1 p + ... + a_s p^s`, the product of `a_i` copies of each
/// tower level over `G_0 = C_{(q-1)_p}`.
pub fn weir_sylow_gl(n: usize, q: u64, p: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::PreconditionViolated("the tower construction needs an odd prime".into()));
    }
    if n < 1 || q < 2 {
        return Err(Error::OutOfRange(format!("n = {n}, q = {q}")));
    }
    if !(q - 1).is_multiple_of(p) {
        return Err(Error::PNotDividingQMinus1 { p, q_minus_1: q - 1 });
    }
    let g0 = cyclic(p.pow(valuation_u64(q - 1, p)) as usize)?;
    let mut digits = Vec::new();
    let mut m = n;
    while m > 0 {
        digits.push(m % p as usize);
        m /= p as usize;
    }
    let levels = weir_tower(&g0, p as usize, digits.len() - 1)?;
    let mut acc: Option<PermGroup> = None;
    for (level, &a) in levels.iter().zip(&digits) {
        for _ in 0..a {
            acc = Some(match acc {
                None => level.clone(),
                Some(x) => direct_product(&x, level)?,
            });
        }
    }
    Ok(acc.expect("n >= 1 has a nonzero digit"))
}

fn enumerate(g: &PermGroup) -> Result<Vec<Perm>> {
    g.elements(ENUMERATION_CAP)
}

/// Z(G) by enumeration: the elements commuting with every generator.
pub fn center_small(g: &PermGroup) -> Result<PermGroup> {
    let elems = enumerate(g)?;
    let central: Vec<Perm> =
        elems.into_iter().filter(|e| g.generators().iter().all(|s| s.commutes_with(e))).collect();
    let order = BigUint::from(central.len());
    let mut gens: Vec<Perm> = Vec::new();
    let mut z = PermGroup::trivial(g.degree());
    for e in central {
        if z.order() == &order {
            break;
        }
        if !z.contains(&e)? {
            gens.push(e);
            z = PermGroup::new(g.degree(), gens.clone())?;
        }
    }
    debug_assert_eq!(z.order(), &order);
    Ok(z)
}

/// The lcm of element orders, by enumeration.
pub fn exponent_small(g: &PermGroup) -> Result<u64> {
    let mut e = BigUint::one();
    for x in enumerate(g)? {
        e = e.lcm(&x.order());
    }
    e.to_u64().ok_or_else(|| Error::OutOfRange("exponent exceeds 64 bits".into()))
}
