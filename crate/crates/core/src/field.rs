//! Finite fields GF(p^k).
//!
//! An element is stored as the integer `c0 + c1 p + ... + c_{k-1} p^{k-1}`
//! where `c0 + c1 a + ... + c_{k-1} a^{k-1}` is its residue modulo the defining
//! polynomial. Small fields use full lookup tables, medium fields log/exp
//! tables, larger ones plain polynomial arithmetic.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SeededRng;

pub type Elem = u32;

const TABLE_LIMIT: u64 = 256;
const LOG_LIMIT: u64 = 1 << 16;

#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    p: u32,
    k: u32,
    order: u64,
    /// Monic defining polynomial over GF(p), lowest degree first, length k+1.
    modulus: Vec<u32>,
    arith: Arith,
}

enum Arith {
    Table { add: Vec<u8>, mul: Vec<u8>, inv: Vec<u8>, neg: Vec<u8> },
    Log { log: Vec<u32>, exp: Vec<u32> },
    Generic,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Serialized field identifier; the modulus is implied by the canonical table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
}

/// Canonical defining polynomials for the binary fields used throughout.
pub fn canonical_binary_modulus(k: u32) -> Option<Vec<u32>> {
    match k {
        1 => Some(vec![0, 1]),
        2 => Some(vec![1, 1, 1]),
        3 => Some(vec![1, 1, 0, 1]),
        4 => Some(vec![1, 1, 0, 0, 1]),
        5 => Some(vec![1, 0, 1, 0, 0, 1]),
        _ => None,
    }
}

// ---- polynomials over GF(p) as coefficient vectors, used for setup only ----

fn ptrim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn pmod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn prem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    ptrim(&mut r);
    let dm = m.len() - 1;
    let lc_inv = pmod_inv(m[dm], p) as u64;
    while r.len() > dm {
        let d = r.len() - 1;
        let c = r[d] as u64 * lc_inv % p as u64;
        for i in 0..=dm {
            let t = (c * m[i] as u64) % p as u64;
            r[d - dm + i] = ((r[d - dm + i] as u64 + p as u64 - t) % p as u64) as u32;
        }
        ptrim(&mut r);
    }
    r
}

fn pmulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let r: Vec<u32> = r.into_iter().map(|v| v as u32).collect();
    prem(&r, m, p)
}

fn pgcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    ptrim(&mut a);
    ptrim(&mut b);
    while !b.is_empty() {
        let r = prem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test: f of degree k is irreducible iff
/// gcd(x^{p^i} - x, f) = 1 for all i <= k/2.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k == 0 || f[k] == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = prem(&[0, 1], f, p);
    let mut xp = x.clone();
    for _ in 0..k / 2 {
        // xp <- xp^p mod f
        let mut acc = vec![1u32];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = pmulmod(&acc, &base, f, p);
            }
            base = pmulmod(&base, &base, f, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        ptrim(&mut diff);
        let g = pgcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1)
    }

    /// GF(p^k) with the canonical modulus. Only prime fields and the binary
    /// fields of degree at most 5 have one; others need [`Field::with_modulus`].
    pub fn new(p: u32, k: u32) -> Result<Field> {
        if !is_prime(p) || p > 251 {
            return Err(Error::InvalidField(format!("characteristic {p} is not a prime <= 251")));
        }
        let modulus = match (p, k) {
            (_, 0) => return Err(Error::InvalidField("degree must be positive".into())),
            (_, 1) => vec![0, 1],
            (2, k) => canonical_binary_modulus(k).ok_or_else(|| {
                Error::InvalidField(format!("GF(2^{k}) has no canonical modulus; supply one"))
            })?,
            _ => {
                return Err(Error::InvalidField(format!(
                    "GF({p}^{k}) has no canonical modulus; supply one"
                )))
            }
        };
        Field::with_modulus(p, modulus)
    }

    /// GF(2^k) with the canonical modulus.
    pub fn gf2k(k: u32) -> Result<Field> {
        Field::new(2, k)
    }

    pub fn gf2() -> Field {
        Field::new(2, 1).expect("GF(2)")
    }

    /// Field defined by an explicit monic irreducible modulus (lowest degree first).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        if !is_prime(p) || p > 251 {
            return Err(Error::InvalidField(format!("characteristic {p} is not a prime <= 251")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus must be monic with reduced coefficients".into()));
        }
        let k = (modulus.len() - 1) as u32;
        let order = (p as u64)
            .checked_pow(k)
            .filter(|&q| q < (1u64 << 32))
            .ok_or_else(|| Error::InvalidField(format!("GF({p}^{k}) is too large")))?;
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        let mut inner = Inner { p, k, order, modulus, arith: Arith::Generic };
        inner.arith = build_tables(&inner);
        Ok(Field(Arc::new(inner)))
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Field> {
        Field::new(spec.p, spec.k)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.0.p, k: self.0.k }
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_gf2(&self) -> bool {
        self.0.p == 2 && self.0.k == 1
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// The class of the polynomial variable `a`.
    pub fn generator(&self) -> Elem {
        if self.0.k == 1 {
            // x reduces to -modulus[0]
            (self.0.p - self.0.modulus[0]) % self.0.p
        } else {
            self.0.p
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as Elem
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.order as Elem
    }

    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let p = self.0.p;
        let mut v = a;
        (0..self.0.k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[u32]) -> Elem {
        let p = self.0.p;
        d.iter().rev().fold(0u32, |acc, &c| acc * p + c % p)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 {
            return a ^ b;
        }
        match &inner.arith {
            Arith::Table { add, .. } => add[(a as usize) * inner.order as usize + b as usize] as Elem,
            _ => {
                if inner.k == 1 {
                    ((a as u64 + b as u64) % inner.p as u64) as Elem
                } else {
                    let da = self.digits(a);
                    let db = self.digits(b);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % inner.p).collect();
                    self.from_digits(&s)
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 {
            return a;
        }
        match &inner.arith {
            Arith::Table { neg, .. } => neg[a as usize] as Elem,
            _ => {
                let d: Vec<u32> = self.digits(a).iter().map(|&x| (inner.p - x) % inner.p).collect();
                self.from_digits(&d)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        match &inner.arith {
            Arith::Table { mul, .. } => mul[(a as usize) * inner.order as usize + b as usize] as Elem,
            Arith::Log { log, exp } => {
                if a == 0 || b == 0 {
                    0
                } else {
                    exp[(log[a as usize] + log[b as usize]) as usize]
                }
            }
            Arith::Generic => generic_mul(inner, a, b),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.0;
        Ok(match &inner.arith {
            Arith::Table { inv, .. } => inv[a as usize] as Elem,
            Arith::Log { log, exp } => {
                let n = inner.order as u32 - 1;
                exp[((n - log[a as usize]) % n) as usize]
            }
            Arith::Generic => self.pow(a, inner.order - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut r = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// The Frobenius automorphism a -> a^p.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.p as u64)
    }

    /// Absolute trace to the prime field, returned as a prime-field element.
    pub fn trace(&self, a: Elem) -> Elem {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.0.k {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        acc
    }

    /// Square root if one exists (brute force; fields here are small).
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if self.0.p == 2 {
            // squaring is bijective: sqrt = a^(q/2)
            return Some(self.pow(a, self.0.order / 2));
        }
        self.elements().find(|&x| self.mul(x, x) == a)
    }

    pub fn is_square(&self, a: Elem) -> bool {
        if a == 0 || self.0.p == 2 {
            return true;
        }
        self.pow(a, (self.0.order - 1) / 2) == 1
    }

    /// Draws one element: k generator outputs, each reduced mod p, as digits.
    pub fn random(&self, rng: &mut SeededRng) -> Elem {
        let p = self.0.p as u64;
        let d: Vec<u32> = (0..self.0.k).map(|_| rng.below(p) as u32).collect();
        self.from_digits(&d)
    }

    pub fn element(&self, value: Elem) -> Result<FieldElement> {
        if value as u64 >= self.0.order {
            return Err(Error::InvalidField(format!("{value} is not an element of {self}")));
        }
        Ok(FieldElement { field: self.clone(), value })
    }

    /// Renders an element as a polynomial in `a`, e.g. `1+a^2`.
    pub fn format(&self, x: Elem) -> String {
        if self.0.k == 1 {
            return x.to_string();
        }
        let digits = self.digits(x);
        let mut parts = Vec::new();
        for (i, &c) in digits.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            parts.push(match (i, c) {
                (0, _) => c.to_string(),
                (_, 1) => mon,
                _ => format!("{c}*{mon}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    /// Inverse of [`Field::format`].
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let p = self.0.p;
        let mut acc = 0;
        for term in s.split('+') {
            let (coef, mon) = match term.split_once('*') {
                Some((c, m)) => (c, m),
                None if term.contains('a') => ("1", term),
                None => (term, ""),
            };
            let c: i64 = coef.parse().map_err(|_| Error::Parse(format!("bad coefficient `{coef}`")))?;
            let e: u64 = match mon {
                "" => 0,
                "a" => 1,
                m => m
                    .strip_prefix("a^")
                    .and_then(|x| x.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad monomial `{m}`")))?,
            };
            let term = self.mul(self.from_int(c.rem_euclid(p as i64)), self.pow(self.generator(), e));
            acc = self.add(acc, term);
        }
        Ok(acc)
    }

    /// Embedding into `target`, sending `a` to the smallest root (by integer
    /// encoding) of this field's modulus in the target.
    pub fn embedding_into(&self, target: &Field) -> Result<Embedding> {
        if self.0.p != target.0.p || target.0.k % self.0.k != 0 {
            return Err(Error::IncompatibleFields(format!("{self} does not embed in {target}")));
        }
        let root = if self.0.k == 1 {
            0
        } else {
            target
                .elements()
                .find(|&x| {
                    let v = self.0.modulus.iter().rev().fold(0, |acc, &c| {
                        target.add(target.mul(acc, x), c)
                    });
                    v == 0
                })
                .ok_or_else(|| Error::Internal("no root of the modulus in the target".into()))?
        };
        let powers: Vec<Elem> = (0..self.0.k).map(|i| target.pow(root, i as u64)).collect();
        let table = if self.0.order <= LOG_LIMIT {
            Some(
                self.elements()
                    .map(|x| embed_digits(self, target, &powers, x))
                    .collect(),
            )
        } else {
            None
        };
        Ok(Embedding { source: self.clone(), target: target.clone(), powers, table })
    }
}

fn embed_digits(src: &Field, tgt: &Field, powers: &[Elem], x: Elem) -> Elem {
    src.digits(x)
        .iter()
        .zip(powers)
        .fold(0, |acc, (&c, &pw)| tgt.add(acc, tgt.mul(c, pw)))
}

fn generic_mul(inner: &Inner, a: Elem, b: Elem) -> Elem {
    let p = inner.p;
    let k = inner.k as usize;
    let mut da = Vec::with_capacity(k);
    let mut db = Vec::with_capacity(k);
    let (mut x, mut y) = (a, b);
    for _ in 0..k {
        da.push(x % p);
        db.push(y % p);
        x /= p;
        y /= p;
    }
    let r = pmulmod(&da, &db, &inner.modulus, p);
    r.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn build_tables(inner: &Inner) -> Arith {
    let q = inner.order;
    if q <= TABLE_LIMIT {
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        let mut inv = vec![0u8; n];
        let mut neg = vec![0u8; n];
        let p = inner.p;
        let digits = |mut v: u32| -> Vec<u32> {
            (0..inner.k)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect()
        };
        let undigits = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        for a in 0..n {
            let da = digits(a as u32);
            neg[a] = undigits(&da.iter().map(|&x| (p - x) % p).collect::<Vec<_>>()) as u8;
            for b in 0..n {
                let db = digits(b as u32);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = undigits(&s) as u8;
                mul[a * n + b] = generic_mul(inner, a as u32, b as u32) as u8;
            }
        }
        for a in 1..n {
            for b in 1..n {
                if mul[a * n + b] == 1 {
                    inv[a] = b as u8;
                    break;
                }
            }
        }
        Arith::Table { add, mul, inv, neg }
    } else if q <= LOG_LIMIT {
        let n = q as usize;
        // find a primitive element
        for g in 2..n as u32 {
            let mut exp = vec![0u32; 2 * n];
            let mut log = vec![0u32; n];
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..n - 1 {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp[i] = x;
                log[x as usize] = i as u32;
                x = generic_mul(inner, x, g);
            }
            if !ok || x != 1 {
                continue;
            }
            for i in n - 1..2 * n {
                exp[i] = exp[i - (n - 1)];
            }
            return Arith::Log { log, exp };
        }
        unreachable!("multiplicative group is cyclic")
    } else {
        Arith::Generic
    }
}

/// Ring homomorphism between two fields of the canonical tower.
#[derive(Clone)]
pub struct Embedding {
    source: Field,
    target: Field,
    powers: Vec<Elem>,
    table: Option<Vec<Elem>>,
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, x: Elem) -> Elem {
        match &self.table {
            Some(t) => t[x as usize],
            None => embed_digits(&self.source, &self.target, &self.powers, x),
        }
    }
}

/// An element bundled with its field, for the checked value-level API.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.format(self.value), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    fn same(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::IncompatibleFields(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.div(self.value, other.value)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.wrap(self.field.pow(self.value, e))
    }

    pub fn frobenius(&self) -> FieldElement {
        self.wrap(self.field.frobenius(self.value))
    }

    pub fn embed(&self, target: &Field) -> Result<FieldElement> {
        let e = self.field.embedding_into(target)?;
        Ok(FieldElement { field: target.clone(), value: e.apply(self.value) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_generator_squares_to_a_plus_one() {
        let f = Field::gf2k(2).unwrap();
        let a = f.generator();
        assert_eq!(f.format(f.mul(a, a)), "1+a");
        assert_eq!(f.parse("1+a").unwrap(), f.mul(a, a));
    }

    #[test]
    fn gf16_inverse_of_generator() {
        let f = Field::gf2k(4).unwrap();
        let a = f.generator();
        let inv = f.inv(a).unwrap();
        assert_eq!(f.format(inv), "1+a^3");
    }

    #[test]
    fn gf8_embeds_in_gf64_but_not_gf16() {
        let f8 = Field::gf2k(3).unwrap();
        let f16 = Field::gf2k(4).unwrap();
        let f64 = Field::with_modulus(2, vec![1, 1, 0, 0, 0, 0, 1]).unwrap();
        assert!(Field::gf2k(6).is_err());
        assert!(matches!(f8.embedding_into(&f16), Err(Error::IncompatibleFields(_))));
        let e = f8.embedding_into(&f64).unwrap();
        for x in f8.elements() {
            for y in f8.elements() {
                assert_eq!(e.apply(f8.mul(x, y)), f64.mul(e.apply(x), e.apply(y)));
                assert_eq!(e.apply(f8.add(x, y)), f64.add(e.apply(x), e.apply(y)));
            }
        }
    }

    #[test]
    fn explicit_moduli_are_checked() {
        assert!(Field::with_modulus(3, vec![2, 0, 1]).is_err()); // x^2 - 1
        let f9 = Field::with_modulus(3, vec![1, 0, 1]).unwrap();
        for a in f9.elements().skip(1) {
            assert_eq!(f9.mul(a, f9.inv(a).unwrap()), 1);
        }
        assert!(Field::new(3, 2).is_err());
        assert!(Field::new(257, 1).is_err());
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_field_arithmetic_fails() {
        let a = Field::gf2k(2).unwrap().element(1).unwrap();
        let b = Field::gf2k(3).unwrap().element(1).unwrap();
        assert!(matches!(a.add(&b), Err(Error::IncompatibleFields(_))));
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (5, 1), (7, 1)] {
            let f = Field::new(p, k).unwrap();
            for a in f.elements() {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "{f} {a}");
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in f.elements().step_by(3) {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements().step_by(5) {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn log_tables_agree_with_generic() {
        let f = Field::with_modulus(2, vec![1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        let inner = &*f.0;
        for a in (0..1024).step_by(7) {
            for b in (0..1024).step_by(11) {
                assert_eq!(f.mul(a, b), generic_mul(inner, a, b));
            }
        }
    }

    #[test]
    fn trace_is_prime_field_valued() {
        let f = Field::gf2k(4).unwrap();
        let ones = f.elements().filter(|&x| f.trace(x) == 1).count();
        assert_eq!(ones, 8);
        assert!(f.elements().all(|x| f.trace(x) <= 1));
    }

    #[test]
    fn format_parse_roundtrip() {
        let f = Field::with_modulus(3, vec![1, 0, 1]).unwrap();
        for x in f.elements() {
            assert_eq!(f.parse(&f.format(x)).unwrap(), x);
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = Field::gf2k(5).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
    }

    #[test]
    fn random_draws_are_deterministic() {
        let f = Field::gf2k(4).unwrap();
        let mut r1 = SeededRng::new(9);
        let mut r2 = SeededRng::new(9);
        let a: Vec<_> = (0..10).map(|_| f.random(&mut r1)).collect();
        let b: Vec<_> = (0..10).map(|_| f.random(&mut r2)).collect();
        assert_eq!(a, b);
    }
}
