//! Classical matrix groups over GF(q) and their permutation images.
//!
//! Matrices act on row vectors, `v -> vM`, so the map to permutations is a
//! homomorphism under the left-to-right product convention of [`Perm`].
//! Unitary groups live over GF(q^2) and preserve the Hermitian form with
//! anti-diagonal Gram matrix J; `bar` is the q-th power Frobenius.

use num_bigint::BigUint;
use std::collections::HashMap;
use std::fmt;

use crate::arith::{is_prime, prime_power};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::group::PermGroup;
use crate::perm::{Perm, Point, MAX_DEGREE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    GL,
    SL,
    GU,
    SU,
}

impl Family {
    pub fn is_unitary(self) -> bool {
        matches!(self, Family::GU | Family::SU)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::GU => "GU",
            Family::SU => "SU",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "GL" => Ok(Family::GL),
            "SL" => Ok(Family::SL),
            "GU" => Ok(Family::GU),
            "SU" => Ok(Family::SU),
            other => Err(Error::UnsupportedFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatrixGroupSpec {
    pub family: Family,
    pub n: usize,
    pub q: u64,
}

impl MatrixGroupSpec {
    pub fn new(family: Family, n: usize, q: u64) -> Result<MatrixGroupSpec> {
        if n < 2 {
            return Err(Error::OutOfRange(format!("dimension {n} < 2")));
        }
        match prime_power(q) {
            Some((p, _)) if is_prime(p) => {}
            _ => return Err(Error::OutOfRange(format!("{q} is not a prime power"))),
        }
        Ok(MatrixGroupSpec { family, n, q })
    }

    /// Order of the matrix group, from the product formula.
    pub fn order(&self) -> BigUint {
        let q = BigUint::from(self.q);
        let n = self.n as u32;
        let mut o = num_traits::pow(q.clone(), (n * (n - 1) / 2) as usize);
        for i in 1..=n {
            let qi = num_traits::pow(q.clone(), i as usize);
            o *= if self.family.is_unitary() && i % 2 == 1 { qi + 1u32 } else { qi - 1u32 };
        }
        match self.family {
            Family::GL | Family::GU => o,
            Family::SL => o / (q - 1u32),
            Family::SU => o / (q + 1u32),
        }
    }

    /// Order of the group of scalar matrices it contains.
    pub fn scalar_count(&self) -> u64 {
        let n = self.n as u64;
        match self.family {
            Family::GL => self.q - 1,
            Family::GU => self.q + 1,
            Family::SL => num_integer::gcd(n, self.q - 1),
            Family::SU => num_integer::gcd(n, self.q + 1),
        }
    }

    /// The field the matrices live over: GF(q), or GF(q^2) for unitary types.
    pub fn field(&self) -> Result<FieldSpec> {
        let (p, k) = prime_power(self.q).unwrap();
        let k = if self.family.is_unitary() { 2 * k } else { k };
        FieldSpec::new(p, k)
    }
}

impl fmt::Display for MatrixGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.family.name(), self.n, self.q)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).0.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn zero(n: usize) -> Matrix {
        Matrix { n, entries: vec![FieldElement::ZERO; n * n] }
    }

    pub fn diagonal(d: &[FieldElement]) -> Matrix {
        let mut m = Matrix::zero(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<FieldElement>]) -> Matrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        Matrix { n, entries: rows.concat() }
    }

    /// The anti-diagonal Gram matrix J.
    pub fn antidiagonal(n: usize) -> Matrix {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.set(i, n - 1 - i, FieldElement::ONE);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Matrix, f: &FieldSpec) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Entry-wise `x -> x^e`.
    pub fn map_pow(&self, e: u64, f: &FieldSpec) -> Matrix {
        Matrix { n: self.n, entries: self.entries.iter().map(|&x| f.pow(x, e)).collect() }
    }

    /// Determinant and inverse by Gauss–Jordan elimination.
    fn eliminate(&self, f: &FieldSpec) -> (FieldElement, Option<Matrix>) {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        let mut det = FieldElement::ONE;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return (FieldElement::ZERO, None);
            };
            if piv != col {
                for j in 0..n {
                    let (x, y) = (a.get(col, j), a.get(piv, j));
                    a.set(col, j, y);
                    a.set(piv, j, x);
                    let (x, y) = (inv.get(col, j), inv.get(piv, j));
                    inv.set(col, j, y);
                    inv.set(piv, j, x);
                }
                det = f.neg(det);
            }
            let pv = a.get(col, col);
            det = f.mul(det, pv);
            let pinv = f.inv(pv).unwrap();
            for j in 0..n {
                a.set(col, j, f.mul(a.get(col, j), pinv));
                inv.set(col, j, f.mul(inv.get(col, j), pinv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let c = a.get(r, col);
                if c.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(c, a.get(col, j))));
                    inv.set(r, j, f.sub(inv.get(r, j), f.mul(c, inv.get(col, j))));
                }
            }
        }
        (det, Some(inv))
    }

    pub fn det(&self, f: &FieldSpec) -> FieldElement {
        self.eliminate(f).0
    }

    pub fn inverse(&self, f: &FieldSpec) -> Result<Matrix> {
        self.eliminate(f).1.ok_or(Error::DivisionByZero(f.q()))
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.get(0, 0);
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { d } else { FieldElement::ZERO }))
    }

    pub fn order(&self, f: &FieldSpec) -> u64 {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self, f);
            k += 1;
        }
        k
    }

    /// `v M` for a row vector `v`.
    pub fn apply(&self, v: &[FieldElement], f: &FieldSpec, out: &mut [FieldElement]) {
        for (j, o) in out.iter_mut().enumerate().take(self.n) {
            let mut s = FieldElement::ZERO;
            for (i, &x) in v.iter().enumerate() {
                if !x.is_zero() {
                    s = f.add(s, f.mul(x, self.get(i, j)));
                }
            }
            *o = s;
        }
    }
}

/// A group family together with its field; knows the Hermitian form for
/// unitary types.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    pub spec: MatrixGroupSpec,
    pub field: FieldSpec,
}

impl MatrixGroup {
    pub fn new(spec: MatrixGroupSpec) -> Result<MatrixGroup> {
        Ok(MatrixGroup { field: spec.field()?, spec })
    }

    /// `x -> x^q` on GF(q^2); the identity for linear types.
    pub fn bar(&self, x: FieldElement) -> FieldElement {
        if self.spec.family.is_unitary() {
            self.field.pow(x, self.spec.q)
        } else {
            x
        }
    }

    fn bar_matrix(&self, m: &Matrix) -> Matrix {
        m.map_pow(if self.spec.family.is_unitary() { self.spec.q } else { 1 }, &self.field)
    }

    /// `bar(M)^T J M == J`.
    pub fn preserves_form(&self, m: &Matrix) -> bool {
        let j = Matrix::antidiagonal(self.spec.n);
        let f = &self.field;
        self.bar_matrix(m).transpose().mul(&j, f).mul(m, f) == j
    }

    /// Hermitian form `u J bar(v)^T`.
    pub fn form(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        let n = u.len();
        let mut s = FieldElement::ZERO;
        for i in 0..n {
            s = self.field.add(s, self.field.mul(u[i], self.bar(v[n - 1 - i])));
        }
        s
    }

    pub fn is_member(&self, m: &Matrix) -> bool {
        let f = &self.field;
        let det = m.det(f);
        match self.spec.family {
            Family::GL => !det.is_zero(),
            Family::SL => det == FieldElement::ONE,
            Family::GU => self.preserves_form(m),
            Family::SU => det == FieldElement::ONE && self.preserves_form(m),
        }
    }

    /// F_p-basis of GF(q) (or of GF(q^2) for unitary types).
    fn prime_basis(&self) -> Vec<FieldElement> {
        let g = self.field.primitive();
        (0..self.field.k() as u64).map(|i| self.field.pow(g, i)).collect()
    }

    /// A maximal F_p-independent subset of `elems`.
    fn independent(&self, elems: impl Iterator<Item = FieldElement>) -> Vec<FieldElement> {
        let f = &self.field;
        let mut span = vec![FieldElement::ZERO];
        let mut out = Vec::new();
        for x in elems {
            if span.contains(&x) {
                continue;
            }
            let mut next = span.clone();
            for c in 1..f.p() {
                let cx = f.mul(f.from_int(c as i64), x);
                next.extend(span.iter().map(|&s| f.add(s, cx)));
            }
            span = next;
            out.push(x);
        }
        out
    }

    pub fn standard_generators(&self) -> Result<Vec<Matrix>> {
        let n = self.spec.n;
        let f = &self.field;
        let g = f.primitive();
        let mut gens = Vec::new();
        match self.spec.family {
            Family::GL | Family::SL => {
                for beta in self.prime_basis() {
                    let mut x = Matrix::identity(n);
                    x.set(0, 1, beta);
                    gens.push(x);
                }
                // e_i -> e_{i+1}, signed so that the determinant is 1
                let mut w = Matrix::zero(n);
                for i in 0..n {
                    w.set(i, (i + 1) % n, FieldElement::ONE);
                }
                if n.is_multiple_of(2) {
                    w.set(n - 1, 0, f.neg(FieldElement::ONE));
                }
                gens.push(w);
                if self.spec.family == Family::GL {
                    let mut d = Matrix::identity(n);
                    d.set(0, 0, g);
                    gens.push(d);
                }
            }
            Family::GU | Family::SU => {
                let mirror = |i: usize| n - 1 - i;
                let trace_zero = self.independent(f.elements().filter(|&a| f.add(a, self.bar(a)).is_zero()));
                let full = self.prime_basis();
                let mut upper = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        if j == mirror(i) {
                            for &a in &trace_zero {
                                let mut x = Matrix::identity(n);
                                x.set(i, j, a);
                                upper.push(x);
                            }
                        } else if j < mirror(i) {
                            let mid = n % 2 == 1 && (j == n / 2);
                            for &a in &full {
                                let mut x = Matrix::identity(n);
                                x.set(i, j, a);
                                x.set(mirror(j), mirror(i), f.neg(self.bar(a)));
                                if mid {
                                    // beta + bar(beta) + a bar(a) = 0 keeps the form
                                    let target = f.neg(f.mul(a, self.bar(a)));
                                    let beta = f
                                        .elements()
                                        .find(|&b| f.add(b, self.bar(b)) == target)
                                        .expect("trace is surjective");
                                    x.set(i, mirror(i), beta);
                                }
                                upper.push(x);
                            }
                        }
                    }
                }
                let j = Matrix::antidiagonal(n);
                for x in &upper {
                    gens.push(x.clone());
                    gens.push(j.mul(x, f).mul(&j, f));
                }
                gens.push(self.unitary_torus(g));
                if self.spec.family == Family::GU {
                    let mut d = Matrix::identity(n);
                    d.set(0, 0, g);
                    d.set(n - 1, n - 1, f.inv(self.bar(g)).unwrap());
                    gens.push(d);
                }
            }
        }
        for x in &gens {
            if !self.is_member(x) {
                return Err(if self.spec.family.is_unitary() && !self.preserves_form(x) {
                    Error::FormViolated
                } else {
                    Error::DeterminantNotOne
                });
            }
        }
        Ok(gens)
    }

    /// A diagonal element of determinant 1 in the unitary group.
    fn unitary_torus(&self, l: FieldElement) -> Matrix {
        let f = &self.field;
        let n = self.spec.n;
        let q = self.spec.q;
        let mut d = vec![FieldElement::ONE; n];
        if n == 2 {
            // diag(m, bar(m)^-1) has determinant 1 exactly when m lies in GF(q)
            let m = f.pow(l, q + 1);
            d[0] = m;
            d[1] = f.inv(self.bar(m)).unwrap();
        } else if n == 3 {
            d[0] = l;
            d[1] = f.pow(l, q - 1);
            d[2] = f.inv(self.bar(l)).unwrap();
        } else {
            let li = f.inv(l).unwrap();
            d[0] = l;
            d[1] = li;
            d[n - 2] = f.inv(self.bar(li)).unwrap();
            d[n - 1] = f.inv(self.bar(l)).unwrap();
        }
        Matrix::diagonal(&d)
    }

    /// Exponents e_i (units mod m_i) with sum of (Q/m_i) e_i = 0 mod Q,
    /// lexicographically smallest.
    fn diagonal_exponents(orders: &[u64], modulus: u64, need_det_one: bool) -> Result<Vec<u64>> {
        for &m in orders {
            if m == 0 || !modulus.is_multiple_of(m) {
                return Err(Error::OrderNotDividing { m, modulus });
            }
        }
        let units: Vec<Vec<u64>> = orders
            .iter()
            .map(|&m| (0..m.max(1)).filter(|&e| num_integer::gcd(e, m) == 1 || m == 1).collect())
            .collect();
        let mut idx = vec![0usize; orders.len()];
        loop {
            let es: Vec<u64> = idx.iter().zip(&units).map(|(&i, u)| u[i]).collect();
            let total: u64 = es.iter().zip(orders).map(|(&e, &m)| (modulus / m) * e % modulus).sum::<u64>() % modulus;
            if !need_det_one || total == 0 {
                return Ok(es);
            }
            let mut k = orders.len();
            loop {
                if k == 0 {
                    return Err(Error::DeterminantNotOne);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < units[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// A semisimple witness whose eigenvalues have the requested multiplicative
    /// orders. For linear types this is the diagonal matrix itself. For unitary
    /// types the diagonal is taken with respect to an orthonormal basis of the
    /// Hermitian form (a literal diagonal in the anti-diagonal form always has
    /// eigenvalue pattern (a, a^(q-1), a^-q) and cannot realise (z, z^-1, 1)).
    pub fn witness_diag(&self, orders: &[u64]) -> Result<Witness> {
        let n = self.spec.n;
        if orders.len() != n {
            return Err(Error::OutOfRange(format!("need {n} entry orders, got {}", orders.len())));
        }
        let f = &self.field;
        let big = (f.q() - 1) as u64;
        let det_one = matches!(self.spec.family, Family::SL | Family::SU);
        let es = Self::diagonal_exponents(orders, big, det_one)?;
        let d: Vec<FieldElement> = es.iter().zip(orders).map(|(&e, &m)| f.exp(big / m * e)).collect();
        let diag = Matrix::diagonal(&d);
        if !self.spec.family.is_unitary() {
            return Ok(Witness { matrix: diag.clone(), diagonal: diag, basis: Matrix::identity(n) });
        }
        if d.iter().any(|&x| f.mul(x, self.bar(x)) != FieldElement::ONE) {
            return Err(Error::FormViolated);
        }
        let b = self.orthonormal_basis();
        let m = b.inverse(f)?.mul(&diag, f).mul(&b, f);
        if !self.preserves_form(&m) {
            return Err(Error::FormViolated);
        }
        if det_one && m.det(f) != FieldElement::ONE {
            return Err(Error::DeterminantNotOne);
        }
        Ok(Witness { matrix: m, diagonal: diag, basis: b })
    }

    /// Rows b_i with form(b_i, b_j) = delta_ij (unitary types only).
    pub fn orthonormal_basis(&self) -> Matrix {
        let n = self.spec.n;
        let f = &self.field;
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        let q = f.q() as u64;
        let total = q.pow(n as u32);
        let mut v = vec![FieldElement::ZERO; n];
        for code in 1..total {
            let mut c = code;
            for x in v.iter_mut() {
                *x = FieldElement((c % q) as u32);
                c /= q;
            }
            if rows.iter().any(|r| !self.form(&v, r).is_zero()) {
                continue;
            }
            let h = self.form(&v, &v);
            if h.is_zero() {
                continue;
            }
            // scale by s with s bar(s) = h^-1
            let hinv = f.inv(h).unwrap();
            let s = f.elements().find(|&s| f.mul(s, self.bar(s)) == hinv).unwrap();
            rows.push(v.iter().map(|&x| f.mul(s, x)).collect());
            if rows.len() == n {
                break;
            }
        }
        Matrix::from_rows(&rows)
    }
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub matrix: Matrix,
    pub diagonal: Matrix,
    /// Rows form the basis in which `matrix` is `diagonal`.
    pub basis: Matrix,
}

/// How a matrix group is turned into a permutation group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActionKind {
    /// Only vectors with form(v, v) = 0.
    pub isotropic: bool,
    /// Vectors are taken modulo the scalars of order dividing `scalars`;
    /// 1 gives the vector action, |F*| the projective action.
    pub scalars: u64,
}

#[derive(Debug, Clone)]
pub struct MatrixAction {
    pub group: MatrixGroup,
    pub kind: ActionKind,
    points: Vec<Vec<FieldElement>>,
    index: HashMap<Vec<FieldElement>, u32>,
}

impl MatrixAction {
    pub fn new(group: MatrixGroup, kind: ActionKind) -> Result<MatrixAction> {
        let f = &group.field.clone();
        let n = group.spec.n;
        let big = (f.q() - 1) as u64;
        if kind.scalars == 0 || !big.is_multiple_of(kind.scalars) {
            return Err(Error::OrderNotDividing { m: kind.scalars, modulus: big });
        }
        let vectors = (f.q() as u64).checked_pow(n as u32).map(|v| v - 1);
        let estimate = vectors.map(|v| v / kind.scalars);
        if kind.isotropic && !group.spec.family.is_unitary() {
            return Err(Error::UnsupportedFamily("isotropic action needs a unitary group".into()));
        }
        // Cheap cap check before enumeration (isotropic sets are smaller, so
        // bound those by the exact count below).
        if !kind.isotropic && estimate.is_none_or(|d| d as usize > MAX_DEGREE) {
            return Err(Error::DegreeCapExceeded { degree: estimate.unwrap_or(u64::MAX) as usize, cap: MAX_DEGREE });
        }
        if vectors.is_none_or(|v| v > 1 << 26) {
            return Err(Error::DegreeCapExceeded { degree: usize::MAX, cap: MAX_DEGREE });
        }
        let mut act = MatrixAction { group, kind, points: Vec::new(), index: HashMap::new() };
        let q = f.q() as u64;
        let mut v = vec![FieldElement::ZERO; n];
        for code in 1..=vectors.unwrap() {
            let mut c = code;
            for x in v.iter_mut() {
                *x = FieldElement((c % q) as u32);
                c /= q;
            }
            if kind.isotropic && !act.group.form(&v, &v).is_zero() {
                continue;
            }
            let canon = act.canonical(&v);
            if canon == v {
                if act.points.len() >= MAX_DEGREE {
                    return Err(Error::DegreeCapExceeded { degree: act.points.len() + 1, cap: MAX_DEGREE });
                }
                act.index.insert(v.clone(), act.points.len() as u32);
                act.points.push(v.clone());
            }
        }
        Ok(act)
    }

    pub fn vector(group: MatrixGroup) -> Result<MatrixAction> {
        MatrixAction::new(group, ActionKind { isotropic: false, scalars: 1 })
    }

    pub fn projective(group: MatrixGroup) -> Result<MatrixAction> {
        let s = (group.field.q() - 1) as u64;
        MatrixAction::new(group, ActionKind { isotropic: false, scalars: s })
    }

    /// A small faithful action: for unitary groups, isotropic vectors modulo
    /// the largest scalar subgroup meeting the centre trivially; for linear
    /// groups, the vector action.
    pub fn faithful(group: MatrixGroup) -> Result<MatrixAction> {
        if !group.spec.family.is_unitary() {
            return MatrixAction::vector(group);
        }
        let big = (group.field.q() - 1) as u64;
        let z = group.spec.scalar_count();
        let mut d = big;
        while num_integer::gcd(d, z) != 1 {
            d /= num_integer::gcd(d, z);
        }
        MatrixAction::new(group, ActionKind { isotropic: true, scalars: d })
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, i: usize) -> &[FieldElement] {
        &self.points[i]
    }

    /// Scales `v` within its scalar class so that the first nonzero
    /// coordinate has the smallest discrete log.
    fn canonical(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let f = &self.group.field;
        let big = (f.q() - 1) as u64;
        let step = big / self.kind.scalars;
        let lead = *v.iter().find(|x| !x.is_zero()).expect("nonzero vector");
        let l = f.log(lead).unwrap() as u64;
        let shift = f.exp(big - (l - l % step));
        v.iter().map(|&x| f.mul(x, shift)).collect()
    }

    /// Order of the kernel of the action restricted to the group.
    pub fn kernel_order(&self) -> u64 {
        num_integer::gcd(self.group.spec.scalar_count(), self.kind.scalars)
    }

    pub fn perm_of(&self, m: &Matrix) -> Perm {
        let f = &self.group.field;
        let mut out = vec![FieldElement::ZERO; m.dim()];
        let images: Vec<Point> = self
            .points
            .iter()
            .map(|v| {
                m.apply(v, f, &mut out);
                let c = self.canonical(&out);
                *self.index.get(&c).expect("matrix does not preserve the point set") as Point
            })
            .collect();
        Perm::from_points_unchecked(images)
    }

    /// The permutation image of the whole group, with its order certified
    /// against |G| / |kernel|.
    pub fn image(&self, seed: u64) -> Result<PermGroup> {
        let gens: Vec<Perm> =
            self.group.standard_generators()?.iter().map(|m| self.perm_of(m)).collect();
        let bound = self.group.spec.order() / BigUint::from(self.kernel_order());
        let g = PermGroup::with_order_bound(self.degree(), gens, bound.clone(), seed)?;
        if g.order() != &bound {
            return Err(Error::PreconditionViolated(format!(
                "{} generators reach order {} of {}",
                self.group.spec,
                g.order(),
                bound
            )));
        }
        Ok(g)
    }
}

pub fn standard_generators(spec: MatrixGroupSpec) -> Result<Vec<Matrix>> {
    MatrixGroup::new(spec)?.standard_generators()
}

pub fn vector_action(spec: MatrixGroupSpec, seed: u64) -> Result<(MatrixAction, PermGroup)> {
    let act = MatrixAction::vector(MatrixGroup::new(spec)?)?;
    let g = act.image(seed)?;
    Ok((act, g))
}

pub fn projective_action(spec: MatrixGroupSpec, seed: u64) -> Result<(MatrixAction, PermGroup)> {
    let act = MatrixAction::projective(MatrixGroup::new(spec)?)?;
    let g = act.image(seed)?;
    Ok((act, g))
}

/// Orders of the projective image: |G| / |scalars in G|.
pub fn projective_order(spec: &MatrixGroupSpec) -> BigUint {
    spec.order() / BigUint::from(spec.scalar_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn spec(f: Family, n: usize, q: u64) -> MatrixGroupSpec {
        MatrixGroupSpec::new(f, n, q).unwrap()
    }

    /// |GL_n(q)| as the number of ordered bases.
    fn gl_count(n: u32, q: u64) -> BigUint {
        let qn = BigUint::from(q).pow(n);
        (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - BigUint::from(q).pow(i)))
    }

    #[test]
    fn formulas_against_basis_counts() {
        for (n, q) in [(2u32, 3u64), (3, 4), (3, 7), (3, 19), (2, 4)] {
            assert_eq!(spec(Family::GL, n as usize, q).order(), gl_count(n, q));
            assert_eq!(spec(Family::SL, n as usize, q).order(), gl_count(n, q) / (q - 1));
        }
        assert_eq!(spec(Family::SU, 3, 2).order(), BigUint::from(216u32));
        assert_eq!(spec(Family::SU, 3, 8).order(), BigUint::from(16547328u32));
        assert_eq!(projective_order(&spec(Family::SU, 3, 8)), BigUint::from(5515776u32));
    }

    #[test]
    fn generators_are_members() {
        for s in [spec(Family::SL, 3, 4), spec(Family::SU, 3, 8), spec(Family::GU, 3, 2), spec(Family::SU, 4, 2)] {
            let g = MatrixGroup::new(s).unwrap();
            for x in g.standard_generators().unwrap() {
                assert!(g.is_member(&x), "{s} {x:?}");
            }
        }
    }

    #[test]
    fn small_images() {
        let (act, g) = vector_action(spec(Family::SL, 2, 3), 0).unwrap();
        assert_eq!((act.degree(), g.order().clone()), (8, BigUint::from(24u32)));
        let (act, g) = vector_action(spec(Family::SU, 3, 2), 0).unwrap();
        assert_eq!((act.degree(), g.order().clone()), (63, BigUint::from(216u32)));
        let (act, g) = vector_action(spec(Family::GL, 3, 4), 0).unwrap();
        assert_eq!((act.degree(), g.order().clone()), (63, BigUint::from(181440u32)));
        let (act, g) = projective_action(spec(Family::SL, 2, 3), 0).unwrap();
        assert_eq!((act.degree(), g.order().clone()), (4, BigUint::from(12u32)));
    }

    #[test]
    fn unitary_vector_action_over_cap() {
        let err = MatrixAction::vector(MatrixGroup::new(spec(Family::SU, 3, 8)).unwrap()).unwrap_err();
        assert!(matches!(err, Error::DegreeCapExceeded { .. }));
    }

    #[test]
    fn projective_kernel_is_scalars() {
        let g = MatrixGroup::new(spec(Family::SL, 3, 7)).unwrap();
        let act = MatrixAction::projective(g.clone()).unwrap();
        let w = g.field.element_of_order(3).unwrap();
        assert!(act.perm_of(&Matrix::diagonal(&[w, w, w])).is_identity());
        for x in g.standard_generators().unwrap() {
            assert!(!act.perm_of(&x).is_identity());
        }
    }

    #[test]
    fn witnesses() {
        let g = MatrixGroup::new(spec(Family::SL, 3, 19)).unwrap();
        let w = g.witness_diag(&[9, 9, 1]).unwrap();
        let f = &g.field;
        assert_eq!(w.matrix.get(0, 0), f.inv(w.matrix.get(1, 1)).unwrap());
        assert_eq!(w.matrix.order(f), 9);
        assert!(g.is_member(&w.matrix));
        let g7 = MatrixGroup::new(spec(Family::SL, 3, 7)).unwrap();
        assert!(matches!(g7.witness_diag(&[9, 9, 1]), Err(Error::OrderNotDividing { .. })));

        let u = MatrixGroup::new(spec(Family::SU, 3, 8)).unwrap();
        let w = u.witness_diag(&[9, 9, 1]).unwrap();
        assert!(u.is_member(&w.matrix));
        assert_eq!(w.matrix.order(&u.field), 9);
        // eigenvalues z, z^-1, 1: M - 1 is singular
        let mut m1 = w.matrix.clone();
        for i in 0..3 {
            m1.set(i, i, u.field.sub(m1.get(i, i), FieldElement::ONE));
        }
        assert!(m1.det(&u.field).is_zero());
    }

    #[test]
    fn orthonormal_basis_is_orthonormal() {
        let u = MatrixGroup::new(spec(Family::SU, 3, 8)).unwrap();
        let b = u.orthonormal_basis();
        for i in 0..3 {
            for j in 0..3 {
                let r = |k: usize| (0..3).map(|c| b.get(k, c)).collect::<Vec<_>>();
                let expect = if i == j { FieldElement::ONE } else { FieldElement::ZERO };
                assert_eq!(u.form(&r(i), &r(j)), expect);
            }
        }
    }
}
