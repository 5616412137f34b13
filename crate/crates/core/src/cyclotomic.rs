//! Exact arithmetic on orders written as `q^a * prod Phi_m(q)^b_m`, the
//! geometric-sum divisibility lemmas for linear and unitary groups, and audits
//! of centraliser and maximal-subgroup tables for exceptional groups.
//!
//! Orders of exceptional groups are those of the simply connected versions;
//! the central factor that separates them from the simple group is handled by
//! a row's required valuation rather than by division.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::arith::{divisors, is_prime, prime_power, valuation};
use crate::error::{Error, Result};

pub const MAX_CYCLOTOMIC_INDEX: u32 = 30;

/// `Phi_m(q)`, from `q^m - 1 = prod_{d | m} Phi_d(q)`.
pub fn phi_eval(m: u32, q: u64) -> Result<BigUint> {
    if !(1..=MAX_CYCLOTOMIC_INDEX).contains(&m) || q < 2 {
        return Err(Error::OutOfRange(format!("Phi_{m}({q})")));
    }
    let mut v = BigUint::from(q).pow(m) - 1u32;
    for d in divisors(m as u64) {
        if d < m as u64 {
            let (quot, rem) = v.div_rem(&phi_eval(d as u32, q)?);
            debug_assert!(rem.is_zero());
            v = quot;
        }
    }
    Ok(v)
}

/// `v_p(n)`, zero for `n = 1`.
pub fn p_valuation(n: &BigUint, p: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::OutOfRange("valuation of zero".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(valuation(n, p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeometricVariant {
    /// `q^(k-1) + ... + q + 1` with `p | q - 1`; claimed: `p | k`.
    Linear,
    /// `q^(k-1) - q^(k-2) + ... - q + 1`, `k` odd, `p | q + 1`; claimed: `p | k`.
    UnitaryOdd,
    /// `q^(k-2) + q^(k-4) + ... + q^2 + 1`, `k` even, `p | q + 1`; claimed: `p | k/2`.
    UnitaryEven,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Divisibility {
    pub divides: bool,
    pub claimed: bool,
}

pub fn geometric_sum(q: u64, k: u32, variant: GeometricVariant) -> BigUint {
    let q = BigUint::from(q);
    match variant {
        GeometricVariant::Linear => (0..k).map(|i| q.pow(i)).sum(),
        GeometricVariant::UnitaryOdd => {
            let even: BigUint = (0..k).step_by(2).map(|i| q.pow(i)).sum();
            let odd: BigUint = (1..k).step_by(2).map(|i| q.pow(i)).sum();
            even - odd
        }
        GeometricVariant::UnitaryEven => (0..k).step_by(2).map(|i| q.pow(i)).sum(),
    }
}

pub fn geometric_divisibility(p: u64, q: u64, k: u32, variant: GeometricVariant) -> Result<Divisibility> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k < 1 || q < 2 {
        return Err(Error::PreconditionViolated(format!("need k >= 1 and q >= 2, got k = {k}, q = {q}")));
    }
    let claimed = match variant {
        GeometricVariant::Linear => {
            if !(q - 1).is_multiple_of(p) {
                return Err(Error::PreconditionViolated(format!("{p} does not divide q - 1 = {}", q - 1)));
            }
            (k as u64).is_multiple_of(p)
        }
        GeometricVariant::UnitaryOdd | GeometricVariant::UnitaryEven => {
            if !(q + 1).is_multiple_of(p) {
                return Err(Error::PreconditionViolated(format!("{p} does not divide q + 1 = {}", q + 1)));
            }
            let odd = variant == GeometricVariant::UnitaryOdd;
            if (k % 2 == 1) != odd {
                return Err(Error::PreconditionViolated(format!("k = {k} has the wrong parity")));
            }
            if odd {
                (k as u64).is_multiple_of(p)
            } else {
                ((k / 2) as u64).is_multiple_of(p)
            }
        }
    };
    let divides = (geometric_sum(q, k, variant) % p).is_zero();
    Ok(Divisibility { divides, claimed })
}

/// `q^a * prod Phi_m(q)^b_m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycloProduct {
    pub a: u32,
    pub factors: BTreeMap<u32, u32>,
}

impl CycloProduct {
    pub fn new(a: u32, factors: &[(u32, u32)]) -> Result<CycloProduct> {
        let mut out = CycloProduct { a, factors: BTreeMap::new() };
        for &(m, b) in factors {
            if !(1..=MAX_CYCLOTOMIC_INDEX).contains(&m) || b == 0 {
                return Err(Error::OutOfRange(format!("Phi{m}^{b}")));
            }
            *out.factors.entry(m).or_insert(0) += b;
        }
        Ok(out)
    }

    pub fn eval(&self, q: u64) -> Result<BigUint> {
        let mut v = BigUint::from(q).pow(self.a);
        for (&m, &b) in &self.factors {
            v *= phi_eval(m, q)?.pow(b);
        }
        Ok(v)
    }

    pub fn exponent(&self, m: u32) -> u32 {
        self.factors.get(&m).copied().unwrap_or(0)
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.a > 0 {
            parts.push(if self.a == 1 { "q".to_string() } else { format!("q^{}", self.a) });
        }
        for (&m, &b) in &self.factors {
            parts.push(if b == 1 { format!("Phi{m}") } else { format!("Phi{m}^{b}") });
        }
        if parts.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", parts.join(" * "))
    }
}

impl FromStr for CycloProduct {
    type Err = Error;

    /// `q^a * Phi1^2 * Phi6`; `1` is the empty product.
    fn from_str(s: &str) -> Result<CycloProduct> {
        let bad = |t: &str| Error::Parse(format!("bad factor {t:?} in {s:?}"));
        let mut a = 0;
        let mut factors = Vec::new();
        if s.trim() == "1" {
            return Ok(CycloProduct::default());
        }
        for term in s.split('*').map(str::trim) {
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<u32>().map_err(|_| bad(term))?),
                None => (term, 1),
            };
            if base == "q" {
                a += exp;
            } else if let Some(m) = base.strip_prefix("Phi") {
                factors.push((m.parse::<u32>().map_err(|_| bad(term))?, exp));
            } else {
                return Err(bad(term));
            }
        }
        CycloProduct::new(a, &factors)
    }
}

/// A congruence condition on `q` (or `q^2` when `squared`) modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub modulus: u64,
    pub squared: bool,
    /// Accepted residues, as signed values in `(-modulus, modulus)`.
    pub residues: Vec<i64>,
}

impl Congruence {
    pub fn holds(&self, q: u64) -> bool {
        let x = if self.squared { (q % self.modulus).pow(2) } else { q } % self.modulus;
        self.residues.iter().any(|r| r.rem_euclid(self.modulus as i64) as u64 == x)
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = if self.squared { "q^2" } else { "q" };
        let rhs = if self.residues.len() == 2 && self.residues[0] == -self.residues[1] {
            format!("+-{}", self.residues[0].abs())
        } else {
            self.residues.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
        };
        write!(f, "{lhs}={rhs} mod {}", self.modulus)
    }
}

impl FromStr for Congruence {
    type Err = Error;

    /// `q=1 mod 3`, `q=-1 mod 5`, `q=+-1 mod 5`, `q^2=-1 mod 5`.
    fn from_str(s: &str) -> Result<Congruence> {
        let bad = || Error::Parse(format!("bad congruence {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (lhs, rest) = compact.split_once('=').ok_or_else(bad)?;
        let (rhs, modulus) = rest.split_once("mod").ok_or_else(bad)?;
        let squared = match lhs {
            "q" => false,
            "q^2" => true,
            _ => return Err(bad()),
        };
        let modulus: u64 = modulus.parse().map_err(|_| bad())?;
        let residues: Vec<i64> = if let Some(r) = rhs.strip_prefix("+-") {
            let r: i64 = r.parse().map_err(|_| bad())?;
            vec![r, -r]
        } else {
            rhs.split(',').map(|r| r.parse::<i64>().map_err(|_| bad())).collect::<Result<_>>()?
        };
        if modulus < 2 || residues.is_empty() {
            return Err(bad());
        }
        Ok(Congruence { modulus, squared, residues })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// The centraliser of a p-element; the class size must be divisible by p
    /// (to the row's required power).
    Centralizer,
    /// A subgroup containing a full Sylow p-subgroup: the index must be prime to p.
    Maximal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub family: String,
    pub congruence: Congruence,
    pub group_order: CycloProduct,
    /// Centraliser order, or the subgroup order for maximal rows.
    pub subgroup_order: CycloProduct,
    /// Free text; a `max:` prefix marks a maximal-subgroup row.
    pub label: String,
    /// Least `v_p` of the index that the argument needs (centraliser rows).
    pub need: u32,
}

impl TableRow {
    pub fn kind(&self) -> RowKind {
        if self.label.starts_with("max:") {
            RowKind::Maximal
        } else {
            RowKind::Centralizer
        }
    }

    pub fn prime(&self) -> u64 {
        self.congruence.modulus
    }

    /// The first `count` prime powers `q`, prime to p, satisfying the row's congruence.
    pub fn admissible_q(&self, count: usize) -> Vec<u64> {
        (2u64..)
            .filter(|&q| prime_power(q).is_some() && q % self.prime() != 0 && self.congruence.holds(q))
            .take(count)
            .collect()
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}; {}; {}; {}", self.family, self.congruence, self.group_order, self.subgroup_order, self.label)?;
        if self.need != 1 {
            write!(f, "; need={}", self.need)?;
        }
        Ok(())
    }
}

impl FromStr for TableRow {
    type Err = Error;

    /// `family; congruence; order-product; subgroup-product; label[; need=N]`.
    fn from_str(s: &str) -> Result<TableRow> {
        let fields: Vec<&str> = s.split(';').map(str::trim).collect();
        if !(5..=6).contains(&fields.len()) {
            return Err(Error::Parse(format!("expected 5 or 6 fields in {s:?}")));
        }
        let need = match fields.get(5) {
            Some(f) => f
                .strip_prefix("need=")
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad sixth field {f:?}")))?,
            None => 1,
        };
        Ok(TableRow {
            family: fields[0].to_string(),
            congruence: fields[1].parse()?,
            group_order: fields[2].parse()?,
            subgroup_order: fields[3].parse()?,
            label: fields[4].to_string(),
            need,
        })
    }
}

/// Rows in the text format; blank lines and `#` comments are skipped.
pub fn parse_table(text: &str) -> Result<Vec<TableRow>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowAudit {
    pub q: u64,
    pub p: u64,
    /// `v_p(|G| / |C|)`, or `v_p(|G| / |M|)` for maximal rows.
    pub index_valuation: u32,
    /// The subgroup order divides the group order.
    pub divides: bool,
    pub pass: bool,
}

pub fn audit_table_row(row: &TableRow, p: u64, q: u64) -> Result<RowAudit> {
    if p != row.prime() {
        return Err(Error::PreconditionViolated(format!("row is stated for p = {}, not {p}", row.prime())));
    }
    if !row.congruence.holds(q) {
        return Err(Error::CongruenceViolated(format!("q = {q} does not satisfy {}", row.congruence)));
    }
    if prime_power(q).is_none() || q.is_multiple_of(p) {
        return Err(Error::PreconditionViolated(format!("q = {q} must be a prime power prime to {p}")));
    }
    let g = row.group_order.eval(q)?;
    let c = row.subgroup_order.eval(q)?;
    let divides = (&g % &c).is_zero();
    let index_valuation = valuation(&g, p).saturating_sub(valuation(&c, p));
    let pass = divides
        && match row.kind() {
            RowKind::Centralizer => index_valuation >= row.need,
            RowKind::Maximal => index_valuation == 0,
        };
    Ok(RowAudit { q, p, index_valuation, divides, pass })
}

/// Standard orders of the simply connected exceptional groups.
pub fn exceptional_order(family: &str) -> Option<CycloProduct> {
    let text = match family {
        "G2" => "q^6 * Phi1^2 * Phi2^2 * Phi3 * Phi6",
        "3D4" => "q^12 * Phi1^2 * Phi2^2 * Phi3^2 * Phi6^2 * Phi12",
        "F4" => "q^24 * Phi1^4 * Phi2^4 * Phi3^2 * Phi4^2 * Phi6^2 * Phi8 * Phi12",
        "E6" => "q^36 * Phi1^6 * Phi2^4 * Phi3^3 * Phi4^2 * Phi5 * Phi6^2 * Phi8 * Phi9 * Phi12",
        "2E6" => "q^36 * Phi1^4 * Phi2^6 * Phi3^2 * Phi4^2 * Phi6^3 * Phi8 * Phi10 * Phi12 * Phi18",
        "E7" => "q^63 * Phi1^7 * Phi2^7 * Phi3^3 * Phi4^2 * Phi5 * Phi6^3 * Phi7 * Phi8 * Phi9 * Phi10 * Phi12 * Phi14 * Phi18",
        "E8" => "q^120 * Phi1^8 * Phi2^8 * Phi3^4 * Phi4^4 * Phi5^2 * Phi6^4 * Phi7 * Phi8^2 * Phi9 * Phi10^2 * Phi12^2 * Phi14 * Phi15 * Phi18 * Phi20 * Phi24 * Phi30",
        "2F4" => TWO_F4_STANDARD,
        _ => return None,
    };
    Some(text.parse().expect("built-in product"))
}

pub const EXCEPTIONAL_FAMILIES: [&str; 8] = ["G2", "3D4", "F4", "E6", "2E6", "E7", "E8", "2F4"];

pub const TWO_F4_STANDARD: &str = "q^12 * Phi1^2 * Phi2^2 * Phi4^2 * Phi6 * Phi12";
/// The factorisation as printed in the source of the table audits; it carries
/// an extra `Phi3`.
pub const TWO_F4_PRINTED: &str = "q^12 * Phi1^2 * Phi2^2 * Phi3 * Phi4^2 * Phi6 * Phi12";

/// Built-in rows, in the text format.
pub const EXCEPTIONAL_TABLE: &str = "\
# p = 3: a 3-element whose class size is divisible by 3
G2;  q=1 mod 3;  q^6 * Phi1^2 * Phi2^2 * Phi3 * Phi6;  q * Phi1^2 * Phi2;  ~A_1(q)+(q-1)
G2;  q=-1 mod 3; q^6 * Phi1^2 * Phi2^2 * Phi3 * Phi6;  q * Phi1 * Phi2^2;  ~A_1(q)+(q+1)
3D4; q=1 mod 3;  q^12 * Phi1^2 * Phi2^2 * Phi3^2 * Phi6^2 * Phi12; q^3 * Phi1^2 * Phi2 * Phi3 * Phi6; A_1(q^3)+(q-1)
3D4; q=-1 mod 3; q^12 * Phi1^2 * Phi2^2 * Phi3^2 * Phi6^2 * Phi12; q^3 * Phi1 * Phi2^2 * Phi3 * Phi6; A_1(q^3)+(q+1)
F4;  q=1 mod 3;  q^24 * Phi1^4 * Phi2^4 * Phi3^2 * Phi4^2 * Phi6^2 * Phi8 * Phi12; q^9 * Phi1^4 * Phi2^3 * Phi3 * Phi4 * Phi6; C_3(q)+(q-1)
F4;  q=-1 mod 3; q^24 * Phi1^4 * Phi2^4 * Phi3^2 * Phi4^2 * Phi6^2 * Phi8 * Phi12; q^9 * Phi1^3 * Phi2^4 * Phi3 * Phi4 * Phi6; C_3(q)+(q+1)
E8;  q=1 mod 3;  q^120 * Phi1^8 * Phi2^8 * Phi3^4 * Phi4^4 * Phi5^2 * Phi6^4 * Phi7 * Phi8^2 * Phi9 * Phi10^2 * Phi12^2 * Phi14 * Phi15 * Phi18 * Phi20 * Phi24 * Phi30; q^36 * Phi1^8 * Phi2^4 * Phi3^3 * Phi4^2 * Phi5 * Phi6 * Phi7 * Phi8 * Phi9; A_8(q)
E8;  q=-1 mod 3; q^120 * Phi1^8 * Phi2^8 * Phi3^4 * Phi4^4 * Phi5^2 * Phi6^4 * Phi7 * Phi8^2 * Phi9 * Phi10^2 * Phi12^2 * Phi14 * Phi15 * Phi18 * Phi20 * Phi24 * Phi30; q^36 * Phi1^4 * Phi2^8 * Phi3 * Phi4^2 * Phi6^3 * Phi8 * Phi10 * Phi14 * Phi18; 2A_8(q)
# p = 3, simply connected covers; a central quotient of order 3 needs 9 | class size
E6;  q=1 mod 3;  q^36 * Phi1^6 * Phi2^4 * Phi3^3 * Phi4^2 * Phi5 * Phi6^2 * Phi8 * Phi9 * Phi12; q^15 * Phi1^6 * Phi2^3 * Phi3^2 * Phi4 * Phi5 * Phi6; A_5(q)+(q-1); need=2
2E6; q=1 mod 3;  q^36 * Phi1^4 * Phi2^6 * Phi3^2 * Phi4^2 * Phi6^3 * Phi8 * Phi10 * Phi12 * Phi18; q^12 * Phi1^4 * Phi2^4 * Phi3 * Phi4 * Phi6 * Phi8; 2D_4(q)+(q^2-1)
E7;  q=1 mod 3;  q^63 * Phi1^7 * Phi2^7 * Phi3^3 * Phi4^2 * Phi5 * Phi6^3 * Phi7 * Phi8 * Phi9 * Phi10 * Phi12 * Phi14 * Phi18; q^21 * Phi1^7 * Phi2^3 * Phi3^2 * Phi4 * Phi5 * Phi6 * Phi7; A_6(q)+(q-1)
E6;  q=-1 mod 3; q^36 * Phi1^6 * Phi2^4 * Phi3^3 * Phi4^2 * Phi5 * Phi6^2 * Phi8 * Phi9 * Phi12; q^15 * Phi1^5 * Phi2^4 * Phi3^2 * Phi4 * Phi5 * Phi6; A_5(q)+(q+1)
2E6; q=-1 mod 3; q^36 * Phi1^4 * Phi2^6 * Phi3^2 * Phi4^2 * Phi6^3 * Phi8 * Phi10 * Phi12 * Phi18; q^12 * Phi1^4 * Phi2^6 * Phi3 * Phi4^2 * Phi6; D_4(q)+(q^2+2q+1); need=2
E7;  q=-1 mod 3; q^63 * Phi1^7 * Phi2^7 * Phi3^3 * Phi4^2 * Phi5 * Phi6^3 * Phi7 * Phi8 * Phi9 * Phi10 * Phi12 * Phi14 * Phi18; q^21 * Phi1^3 * Phi2^7 * Phi3 * Phi4 * Phi6^2 * Phi10 * Phi14; 2A_6(q)+(q+1)
# p = 5: maximal subgroups containing a Sylow 5-subgroup (orders of the SL/SU covers)
E6;  q=1 mod 5;  q^36 * Phi1^6 * Phi2^4 * Phi3^3 * Phi4^2 * Phi5 * Phi6^2 * Phi8 * Phi9 * Phi12; q^16 * Phi1^6 * Phi2^4 * Phi3^2 * Phi4 * Phi5 * Phi6; max: PSL_2(q) x PSL_6(q)
2E6; q=-1 mod 5; q^36 * Phi1^4 * Phi2^6 * Phi3^2 * Phi4^2 * Phi6^3 * Phi8 * Phi10 * Phi12 * Phi18; q^16 * Phi1^4 * Phi2^6 * Phi3 * Phi4 * Phi6^2 * Phi10; max: PSL_2(q) x PSU_6(q)
E7;  q=1 mod 5;  q^63 * Phi1^7 * Phi2^7 * Phi3^3 * Phi4^2 * Phi5 * Phi6^3 * Phi7 * Phi8 * Phi9 * Phi10 * Phi12 * Phi14 * Phi18; q^28 * Phi1^7 * Phi2^4 * Phi3^2 * Phi4^2 * Phi5 * Phi6 * Phi7 * Phi8; max: PSL_8(q)
E7;  q=-1 mod 5; q^63 * Phi1^7 * Phi2^7 * Phi3^3 * Phi4^2 * Phi5 * Phi6^3 * Phi7 * Phi8 * Phi9 * Phi10 * Phi12 * Phi14 * Phi18; q^28 * Phi1^4 * Phi2^7 * Phi3 * Phi4^2 * Phi6^2 * Phi8 * Phi10 * Phi14; max: PSU_8(q)
# p = 5: E8 centralisers (the 5-relevant part of the centraliser order)
E8;  q=1 mod 5;  q^120 * Phi1^8 * Phi2^8 * Phi3^4 * Phi4^4 * Phi5^2 * Phi6^4 * Phi7 * Phi8^2 * Phi9 * Phi10^2 * Phi12^2 * Phi14 * Phi15 * Phi18 * Phi20 * Phi24 * Phi30; Phi1^8 * Phi2^7 * Phi4^2 * Phi5 * Phi10; E_7(q)+(q-1)
E8;  q=-1 mod 5; q^120 * Phi1^8 * Phi2^8 * Phi3^4 * Phi4^4 * Phi5^2 * Phi6^4 * Phi7 * Phi8^2 * Phi9 * Phi10^2 * Phi12^2 * Phi14 * Phi15 * Phi18 * Phi20 * Phi24 * Phi30; Phi1^7 * Phi2^8 * Phi4^2 * Phi5 * Phi10; E_7(q)+(q+1)
E8;  q^2=-1 mod 5; q^120 * Phi1^8 * Phi2^8 * Phi3^4 * Phi4^4 * Phi5^2 * Phi6^4 * Phi7 * Phi8^2 * Phi9 * Phi10^2 * Phi12^2 * Phi14 * Phi15 * Phi18 * Phi20 * Phi24 * Phi30; Phi1^6 * Phi2^6 * Phi4^4 * Phi5 * Phi10; D_6^-(q)+(q^2+1)
# p = 7: maximal subgroups containing a Sylow 7-subgroup
E7;  q=1 mod 7;  q^63 * Phi1^7 * Phi2^7 * Phi3^3 * Phi4^2 * Phi5 * Phi6^3 * Phi7 * Phi8 * Phi9 * Phi10 * Phi12 * Phi14 * Phi18; q^28 * Phi1^7 * Phi2^4 * Phi3^2 * Phi4^2 * Phi5 * Phi6 * Phi7 * Phi8; max: PSL_8(q)
E7;  q=-1 mod 7; q^63 * Phi1^7 * Phi2^7 * Phi3^3 * Phi4^2 * Phi5 * Phi6^3 * Phi7 * Phi8 * Phi9 * Phi10 * Phi12 * Phi14 * Phi18; q^28 * Phi1^4 * Phi2^7 * Phi3 * Phi4^2 * Phi6^2 * Phi8 * Phi10 * Phi14; max: PSU_8(q)
E8;  q=1 mod 7;  q^120 * Phi1^8 * Phi2^8 * Phi3^4 * Phi4^4 * Phi5^2 * Phi6^4 * Phi7 * Phi8^2 * Phi9 * Phi10^2 * Phi12^2 * Phi14 * Phi15 * Phi18 * Phi20 * Phi24 * Phi30; q^64 * Phi1^8 * Phi2^8 * Phi3^3 * Phi4^2 * Phi5 * Phi6^3 * Phi7 * Phi8 * Phi9 * Phi10 * Phi12 * Phi14 * Phi18; max: PSL_2(q) x E_7(q)
E8;  q=-1 mod 7; q^120 * Phi1^8 * Phi2^8 * Phi3^4 * Phi4^4 * Phi5^2 * Phi6^4 * Phi7 * Phi8^2 * Phi9 * Phi10^2 * Phi12^2 * Phi14 * Phi15 * Phi18 * Phi20 * Phi24 * Phi30; q^64 * Phi1^8 * Phi2^8 * Phi3^3 * Phi4^2 * Phi5 * Phi6^3 * Phi7 * Phi8 * Phi9 * Phi10 * Phi12 * Phi14 * Phi18; max: PSL_2(q) x E_7(q)
";

pub fn exceptional_table() -> Vec<TableRow> {
    parse_table(EXCEPTIONAL_TABLE).expect("built-in table parses")
}

/// The two factorisations of `|2F4(q)|` side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoF4Comparison {
    pub q: u64,
    pub standard: BigUint,
    pub printed: BigUint,
    /// `printed / standard`, which is `Phi3(q)`.
    pub ratio: BigUint,
    /// `v_3` of the standard order, and of `Phi2^2 * Phi6`.
    pub v3_order: u32,
    pub v3_phi2_sq_phi6: u32,
}

pub fn two_f4_comparison(q: u64) -> Result<TwoF4Comparison> {
    if q < 2 || !q.is_power_of_two() || q.trailing_zeros().is_multiple_of(2) {
        return Err(Error::PreconditionViolated(format!("q = {q} is not an odd power of 2")));
    }
    let standard = TWO_F4_STANDARD.parse::<CycloProduct>()?.eval(q)?;
    let printed = TWO_F4_PRINTED.parse::<CycloProduct>()?.eval(q)?;
    let ratio = &printed / &standard;
    let part = phi_eval(2, q)?.pow(2) * phi_eval(6, q)?;
    Ok(TwoF4Comparison {
        q,
        v3_order: valuation(&standard, 3),
        v3_phi2_sq_phi6: valuation(&part, 3),
        standard,
        printed,
        ratio,
    })
}

/// `|2F4(q)|` from the product formula `q^12 (q^6+1)(q^4-1)(q^3+1)(q-1)`.
pub fn two_f4_formula(q: u64) -> BigUint {
    let q = BigUint::from(q);
    q.pow(12) * (q.pow(6) + 1u32) * (q.pow(4) - 1u32) * (q.pow(3) + 1u32) * (&q - 1u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn phi_values() {
        assert_eq!(phi_eval(1, 2).unwrap(), BigUint::one());
        assert_eq!(phi_eval(6, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(phi_eval(12, 2).unwrap(), BigUint::from(13u32));
        assert_eq!(phi_eval(3, 7).unwrap(), BigUint::from(57u32));
        assert!(phi_eval(31, 2).is_err());
        assert!(phi_eval(0, 2).is_err());
    }

    #[test]
    fn phi_product_identity() {
        for m in 1..=30u32 {
            for q in 2..=20u64 {
                let prod: BigUint = divisors(m as u64).iter().map(|&d| phi_eval(d as u32, q).unwrap()).product();
                assert_eq!(prod, BigUint::from(q).pow(m) - 1u32);
            }
        }
    }

    #[test]
    fn geometric_examples() {
        let lin = GeometricVariant::Linear;
        assert_eq!(geometric_divisibility(3, 7, 3, lin).unwrap(), Divisibility { divides: true, claimed: true });
        assert_eq!(geometric_divisibility(3, 7, 4, lin).unwrap(), Divisibility { divides: false, claimed: false });
        let odd = GeometricVariant::UnitaryOdd;
        assert_eq!(geometric_sum(8, 3, odd), BigUint::from(57u32));
        assert_eq!(geometric_divisibility(3, 8, 3, odd).unwrap(), Divisibility { divides: true, claimed: true });
        assert_eq!(geometric_sum(2, 4, GeometricVariant::UnitaryEven), BigUint::from(5u32));
        assert!(geometric_divisibility(3, 8, 3, lin).is_err());
        assert!(geometric_divisibility(3, 8, 4, odd).is_err());
    }

    #[test]
    fn products_round_trip() {
        let p: CycloProduct = "q^12 * Phi1^2 * Phi6".parse().unwrap();
        assert_eq!(p.to_string(), "q^12 * Phi1^2 * Phi6");
        assert_eq!(p.to_string().parse::<CycloProduct>().unwrap(), p);
        assert_eq!("q".parse::<CycloProduct>().unwrap().a, 1);
        assert!("Phi31".parse::<CycloProduct>().is_err());
        assert!("x^2".parse::<CycloProduct>().is_err());
        for row in exceptional_table() {
            assert_eq!(row.to_string().parse::<TableRow>().unwrap(), row);
        }
    }

    #[test]
    fn congruences() {
        let c: Congruence = "q^2=-1 mod 5".parse().unwrap();
        assert!(c.holds(2) && c.holds(3) && !c.holds(4));
        let e: Congruence = "q=+-1 mod 5".parse().unwrap();
        assert!(e.holds(4) && e.holds(11) && !e.holds(2));
        assert_eq!(e.to_string(), "q=+-1 mod 5");
    }

    #[test]
    fn rows_use_the_standard_group_orders() {
        for row in exceptional_table() {
            assert_eq!(Some(&row.group_order), exceptional_order(&row.family).as_ref(), "{row}");
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(p_valuation(&BigUint::from(181_440u32), 3).unwrap(), 4);
        assert_eq!(p_valuation(&BigUint::from(17_971_200u32), 3).unwrap(), 3);
        assert_eq!(p_valuation(&BigUint::one(), 7).unwrap(), 0);
    }

    #[test]
    fn two_f4() {
        let c = two_f4_comparison(2).unwrap();
        assert_eq!(c.standard, BigUint::from(35_942_400u32));
        assert_eq!(c.ratio, BigUint::from(7u32));
        assert_eq!(c.v3_order, 3);
        assert_eq!(c.v3_order, c.v3_phi2_sq_phi6);
        for q in [2, 8, 32] {
            assert_eq!(two_f4_comparison(q).unwrap().standard, two_f4_formula(q));
        }
        assert!(two_f4_comparison(4).is_err());
    }
}
