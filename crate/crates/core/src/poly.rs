//! Multivariate polynomials over finite fields (at most 8 variables).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, Embedding, Field};
use crate::linalg::Matrix;

pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(i: usize) -> Monomial {
        let mut m = Monomial::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(e: &[u32]) -> Monomial {
        assert!(e.len() <= MAX_VARS);
        let mut m = Monomial::one();
        for (i, &x) in e.iter().enumerate() {
            m.exps[i] = x as u16;
            m.deg += x;
        }
        m
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += o.exps[i];
        }
        m.deg += o.deg;
        m
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.exps[i] <= o.exps[i])
    }

    /// o / self, assuming divisibility.
    #[inline]
    pub fn div_of(&self, o: &Monomial) -> Monomial {
        let mut m = *o;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn checked_div(&self, d: &Monomial) -> Option<Monomial> {
        d.divides(self).then(|| d.div_of(self))
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(o.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || o.exps[i] == 0)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        let mut m = *self;
        for x in m.exps.iter_mut() {
            *x *= e as u16;
        }
        m.deg *= e;
        m
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn render(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = (0..MAX_VARS)
            .filter(|&i| self.exps[i] > 0)
            .map(|i| match self.exps[i] {
                1 => format!("x{i}"),
                e => format!("x{i}^{e}"),
            })
            .collect();
        parts.join("*")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => {
                if a.deg != b.deg {
                    return a.deg.cmp(&b.deg);
                }
                for i in (0..MAX_VARS).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => {
                for i in 0..MAX_VARS {
                    if a.exps[i] != b.exps[i] {
                        return a.exps[i].cmp(&b.exps[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

struct RingInner {
    nvars: usize,
    field: Field,
    order: MonomialOrder,
}

impl PartialEq for Ring {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
            || (self.0.nvars == o.0.nvars && self.0.field == o.0.field && self.0.order == o.0.order)
    }
}
impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[x0..x{}] ({})", self.0.field, self.0.nvars - 1, self.0.order.name())
    }
}

impl Ring {
    pub fn new(field: &Field, nvars: usize, order: MonomialOrder) -> Result<Ring> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::DimensionMismatch(format!("{nvars} variables (1..={MAX_VARS} supported)")));
        }
        Ok(Ring(Arc::new(RingInner { nvars, field: field.clone(), order })))
    }

    pub fn grevlex(field: &Field, nvars: usize) -> Result<Ring> {
        Ring::new(field, nvars, MonomialOrder::Grevlex)
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.0.order.cmp(a, b)
    }

    /// Same variables and order over another field.
    pub fn with_field(&self, field: &Field) -> Ring {
        Ring(Arc::new(RingInner { nvars: self.0.nvars, field: field.clone(), order: self.0.order }))
    }

    /// All monomials of degree d, in decreasing monomial order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut e = vec![0u32; n];
        fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == e.len() {
                e[i] = left;
                out.push(Monomial::from_exps(e));
                return;
            }
            for x in (0..=left).rev() {
                e[i] = x;
                rec(i + 1, left - x, e, out);
            }
        }
        rec(0, d, &mut e, &mut out);
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }
}

pub type Term = (Monomial, Elem);

/// Polynomial with terms sorted strictly decreasing in the ring's order.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let field = self.ring.field();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cs = field.format(*c);
                let cs = if cs.contains('+') { format!("({cs})") } else { cs };
                match (m.is_one(), *c == 1) {
                    (true, _) => cs,
                    (false, true) => m.render(),
                    (false, false) => format!("{cs}*{}", m.render()),
                }
            })
            .collect();
        write!(out, "{}", parts.join(" + "))
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: Elem) -> Polynomial {
        Polynomial::term(ring, Monomial::one(), c)
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, 1)
    }

    pub fn var(ring: &Ring, i: usize) -> Polynomial {
        Polynomial::term(ring, Monomial::var(i), 1)
    }

    pub fn term(ring: &Ring, m: Monomial, c: Elem) -> Polynomial {
        let terms = if c == 0 { vec![] } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds from arbitrary terms: sorts and combines like monomials.
    pub fn from_terms(ring: &Ring, mut terms: Vec<Term>) -> Polynomial {
        let f = ring.field();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Terms already strictly decreasing and nonzero.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<Term>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn lead_coeff(&self) -> Elem {
        self.terms.first().map_or(0, |t| t.1)
    }

    /// Maximum total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> Elem {
        self.terms.iter().find(|t| t.0 == *m).map_or(0, |t| t.1)
    }

    /// self + c * t * other, merged in one pass.
    pub fn add_scaled(&self, c: Elem, t: &Monomial, other: &Polynomial) -> Polynomial {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let terms = merge_scaled(&self.ring, &self.terms, c, t, &other.terms);
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        self.add_scaled(1, &Monomial::one(), o)
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add_scaled(self.field().neg(1), &Monomial::one(), o)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field().neg(1))
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let f = self.field();
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|&(m, x)| (m, f.mul(x, c))).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: Elem) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let f = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(t, x)| (t.mul(m), f.mul(x, c))).collect(),
        }
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        let f = self.field();
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for &(a, x) in &self.terms {
            for &(b, y) in &o.terms {
                terms.push((a.mul(&b), f.mul(x, y)));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::one(&self.ring);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) => self.scale(self.field().inv(c).expect("nonzero lead")),
        }
    }

    pub fn eval(&self, point: &[Elem]) -> Elem {
        let f = self.field();
        self.terms.iter().fold(0, |acc, (m, c)| {
            let v = (0..self.ring.nvars()).fold(*c, |v, i| f.mul(v, f.pow(point[i], m.exp(i) as u64)));
            f.add(acc, v)
        })
    }

    /// Evaluation at a point with coordinates in an extension field.
    pub fn eval_embedded(&self, emb: &Embedding, point: &[Elem]) -> Elem {
        let t = emb.target();
        self.terms.iter().fold(0, |acc, (m, c)| {
            let v = (0..self.ring.nvars()).fold(emb.apply(*c), |v, i| t.mul(v, t.pow(point[i], m.exp(i) as u64)));
            t.add(acc, v)
        })
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let f = self.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|&(m, c)| {
                let e = m.exp(i);
                let mut d = m;
                d.exps[i] -= 1;
                d.deg -= 1;
                (d, f.mul(c, f.from_int(e as i64)))
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// f ↦ f^p, computed coefficient- and exponent-wise.
    pub fn frobenius(&self) -> Polynomial {
        let f = self.field();
        let p = f.characteristic();
        // the map is injective on monomials and order-preserving, so no resort is needed
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, c)| (m.pow(p), f.frobenius(c))).collect(),
        }
    }

    /// Linear change of variables x_i ↦ Σ_j g[i][j] x_j.
    pub fn substitute_linear(&self, g: &Matrix) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch("substitution matrix".into()));
        }
        let forms: Vec<Polynomial> = (0..n)
            .map(|i| {
                let t = (0..n).map(|j| (Monomial::var(j), g.get(i, j))).collect();
                Polynomial::from_terms(&self.ring, t)
            })
            .collect();
        let mut out = Polynomial::zero(&self.ring);
        for &(m, c) in &self.terms {
            let mut t = Polynomial::constant(&self.ring, c);
            for (i, form) in forms.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = t.mul(form);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Same polynomial in a ring with another monomial order.
    pub fn reorder(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.clone())
    }

    pub fn parse(ring: &Ring, s: &str) -> Result<Polynomial> {
        let field = ring.field();
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // split on top-level + and -
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut depth = 0;
        let mut cur = String::new();
        let mut negative = false;
        for ch in s.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch)
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch)
                }
                '+' | '-' if depth == 0 => {
                    if !cur.is_empty() {
                        pieces.push((negative, std::mem::take(&mut cur)));
                    }
                    negative = ch == '-';
                }
                _ => cur.push(ch),
            }
        }
        if !cur.is_empty() {
            pieces.push((negative, cur));
        }
        let mut terms = Vec::new();
        for (neg, piece) in pieces {
            let mut coeff = 1;
            let mut exps = [0u32; MAX_VARS];
            for factor in split_factors(&piece) {
                if let Some(inner) = factor.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
                    coeff = field.mul(coeff, field.parse(inner)?);
                } else if let Some(rest) = factor.strip_prefix('x') {
                    let (v, e) = match rest.split_once('^') {
                        Some((v, e)) => (v, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
                        None => (rest, 1),
                    };
                    let v: usize = v.parse().map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
                    if v >= ring.nvars() {
                        return Err(Error::Parse(format!("variable x{v} outside the ring")));
                    }
                    exps[v] += e;
                } else {
                    coeff = field.mul(coeff, field.parse(&factor)?);
                }
            }
            if neg {
                coeff = field.neg(coeff);
            }
            terms.push((Monomial::from_exps(&exps[..ring.nvars()]), coeff));
        }
        Ok(Polynomial::from_terms(ring, terms))
    }
}

/// a + c * t * b for sorted term lists.
pub(crate) fn merge_scaled(ring: &Ring, a: &[Term], c: Elem, t: &Monomial, b: &[Term]) -> Vec<Term> {
    let f = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() {
            out.extend_from_slice(&a[i..]);
            break;
        }
        let bm = t.mul(&b[j].0);
        if i == a.len() {
            out.push((bm, f.mul(c, b[j].1)));
            j += 1;
            continue;
        }
        match ring.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, f.mul(c, b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = f.add(a[i].1, f.mul(c, b[j].1));
                if v != 0 {
                    out.push((bm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn split_factors(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '*' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    out.push(cur);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, n: usize) -> Ring {
        Ring::grevlex(&Field::prime(p).unwrap(), n).unwrap()
    }

    #[test]
    fn grevlex_order() {
        let r = ring(2, 3);
        let m = |e: &[u32]| Monomial::from_exps(e);
        // x0 > x1 > x2; x1^2 > x0*x2 in grevlex
        assert_eq!(r.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(r.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(r.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        let all = r.monomials_of_degree(2);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], m(&[2, 0, 0]));
        assert_eq!(all[5], m(&[0, 0, 2]));
    }

    #[test]
    fn arithmetic_and_parse() {
        let r = ring(3, 3);
        let f = Polynomial::parse(&r, "x0^2 + 2*x0*x1 + x2").unwrap();
        let g = Polynomial::parse(&r, "x0 - x1").unwrap();
        let h = f.mul(&g);
        assert_eq!(h.sub(&f.mul(&g)), Polynomial::zero(&r));
        assert_eq!(Polynomial::parse(&r, &h.to_string()).unwrap(), h);
        assert_eq!(f.eval(&[1, 1, 1]), (1 + 2 + 1) % 3);
        assert_eq!(f.derivative(0), Polynomial::parse(&r, "2*x0 + 2*x1").unwrap());
    }

    #[test]
    fn extension_coefficients_roundtrip() {
        let f4 = Field::gf2k(2).unwrap();
        let r = Ring::grevlex(&f4, 2).unwrap();
        let p = Polynomial::parse(&r, "(1+a)*x0^2 + a*x1 + 1").unwrap();
        assert_eq!(Polynomial::parse(&r, &p.to_string()).unwrap(), p);
        assert_eq!(p.to_string(), "(1+a)*x0^2 + a*x1 + 1");
    }

    #[test]
    fn frobenius_matches_power() {
        let f4 = Field::gf2k(2).unwrap();
        let r = Ring::grevlex(&f4, 3).unwrap();
        let p = Polynomial::parse(&r, "a*x0*x1 + x1^2 + (1+a)*x2 + x0").unwrap();
        assert_eq!(p.frobenius(), p.mul(&p));
        let r3 = ring(3, 2);
        let q = Polynomial::parse(&r3, "x0 + 2*x1^2 + 1").unwrap();
        assert_eq!(q.frobenius(), q.pow(3));
    }

    #[test]
    fn linear_substitution() {
        let r = ring(5, 2);
        let f = Polynomial::parse(&r, "x0*x1").unwrap();
        let g = Matrix::from_rows(r.field(), &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(f.substitute_linear(&g).unwrap(), Polynomial::parse(&r, "x0*x1 + x1^2").unwrap());
    }

    #[test]
    fn embedded_evaluation() {
        let f2 = Field::gf2();
        let f4 = Field::gf2k(2).unwrap();
        let r = Ring::grevlex(&f2, 2).unwrap();
        let p = Polynomial::parse(&r, "x0^2 + x0*x1 + x1^2").unwrap();
        let e = f2.embedding_into(&f4).unwrap();
        // (1 : a) is a root of x² + xy + y² over GF(4)
        assert_eq!(p.eval_embedded(&e, &[1, f4.generator()]), 0);
        assert_ne!(p.eval_embedded(&e, &[1, 1]), 0);
    }
}
