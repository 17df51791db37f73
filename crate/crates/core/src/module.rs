//! Vectors in free modules under Schreyer-type orders, division with
//! quotients and syzygies of Gröbner bases.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::poly::{Monomial, Polynomial, Ring};

/// (key, component, coefficient). The key is the term's monomial multiplied
/// by the weight of its component.
pub type MTerm = (Monomial, usize, Elem);

/// Order on terms t*e_l: compare t*W_l in the ring order, then the smaller
/// tiebreak position wins.
#[derive(Clone, Debug)]
pub struct ModuleOrder {
    ring: Ring,
    weights: Vec<Monomial>,
    pos: Vec<usize>,
}

impl ModuleOrder {
    pub fn new(ring: &Ring, weights: Vec<Monomial>, pos: Vec<usize>) -> ModuleOrder {
        assert_eq!(weights.len(), pos.len());
        ModuleOrder { ring: ring.clone(), weights, pos }
    }

    /// Term-over-position order with trivial weights.
    pub fn top(ring: &Ring, rank: usize) -> ModuleOrder {
        ModuleOrder::new(ring, vec![Monomial::one(); rank], (0..rank).collect())
    }

    /// Order induced on the free module spanned by `elems` (a Gröbner basis
    /// under `self`): weights are the lead keys, ties go to the lead
    /// component's position, then to the element index.
    pub fn induced(&self, elems: &[ModVec]) -> ModuleOrder {
        let weights: Vec<Monomial> = elems.iter().map(|v| v.lead().expect("nonzero").0).collect();
        let mut idx: Vec<usize> = (0..elems.len()).collect();
        idx.sort_by_key(|&l| (self.pos[elems[l].lead().expect("nonzero").1], l));
        let mut pos = vec![0; elems.len()];
        for (rank, &l) in idx.iter().enumerate() {
            pos[l] = rank;
        }
        ModuleOrder::new(&self.ring, weights, pos)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, comp: usize) -> &Monomial {
        &self.weights[comp]
    }

    pub fn position(&self, comp: usize) -> usize {
        self.pos[comp]
    }

    #[inline]
    pub fn cmp(&self, a: &MTerm, b: &MTerm) -> Ordering {
        self.ring.cmp(&a.0, &b.0).then_with(|| self.pos[b.1].cmp(&self.pos[a.1]))
    }
}

/// Sparse module vector, terms strictly decreasing in its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModVec {
    terms: Vec<MTerm>,
}

impl ModVec {
    pub fn zero() -> ModVec {
        ModVec { terms: Vec::new() }
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(order: &ModuleOrder, mut terms: Vec<MTerm>) -> ModVec {
        let f = order.ring.field().clone();
        terms.sort_by(|a, b| order.cmp(b, a));
        let mut out: Vec<MTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.0 == t.0 && last.1 == t.1 => last.2 = f.add(last.2, t.2),
                _ => out.push(t),
            }
            if out.last().is_some_and(|l| l.2 == 0) {
                out.pop();
            }
        }
        ModVec { terms: out }
    }

    pub fn from_polys(order: &ModuleOrder, entries: &[Polynomial]) -> ModVec {
        let mut terms = Vec::new();
        for (r, p) in entries.iter().enumerate() {
            for &(m, c) in p.terms() {
                terms.push((m.mul(order.weight(r)), r, c));
            }
        }
        ModVec::from_terms(order, terms)
    }

    pub fn to_polys(&self, order: &ModuleOrder) -> Vec<Polynomial> {
        let ring = order.ring();
        let mut parts: Vec<Vec<(Monomial, Elem)>> = vec![Vec::new(); order.rank()];
        for &(k, comp, c) in &self.terms {
            parts[comp].push((order.weight(comp).div_of(&k), c));
        }
        parts.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect()
    }

    pub fn terms(&self) -> &[MTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&MTerm> {
        self.terms.first()
    }

    /// Monomial part of the lead term (key divided by the component weight).
    pub fn lead_monomial(&self, order: &ModuleOrder) -> Option<Monomial> {
        self.lead().map(|&(k, comp, _)| order.weight(comp).div_of(&k))
    }

    /// self + c * t * other.
    pub fn add_scaled(&self, order: &ModuleOrder, c: Elem, t: &Monomial, other: &ModVec) -> ModVec {
        ModVec { terms: merge_scaled(order, &self.terms, c, t, &other.terms) }
    }

    pub fn scale(&self, order: &ModuleOrder, c: Elem) -> ModVec {
        if c == 0 {
            return ModVec::zero();
        }
        let f = order.ring().field();
        ModVec { terms: self.terms.iter().map(|&(k, comp, x)| (k, comp, f.mul(c, x))).collect() }
    }
}

fn merge_scaled(order: &ModuleOrder, a: &[MTerm], c: Elem, t: &Monomial, b: &[MTerm]) -> Vec<MTerm> {
    let f = order.ring().field();
    if c == 0 {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() {
            out.extend_from_slice(&a[i..]);
            break;
        }
        let bt = (t.mul(&b[j].0), b[j].1, f.mul(c, b[j].2));
        if i == a.len() {
            out.push(bt);
            j += 1;
            continue;
        }
        match order.cmp(&a[i], &bt) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(bt);
                j += 1;
            }
            Ordering::Equal => {
                let v = f.add(a[i].2, bt.2);
                if v != 0 {
                    out.push((bt.0, bt.1, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Result of dividing a vector by a list of module vectors.
#[derive(Clone, Debug)]
pub struct Division {
    /// Quotient terms (multiplier key times divisor lead key, divisor index, coefficient).
    /// Keys are those of the free module on the divisors under the induced order.
    pub quotient: Vec<MTerm>,
    pub remainder: ModVec,
}

/// Full division: the highest remaining term is reduced by the first divisor
/// (in list order) whose lead divides it.
pub fn divide(order: &ModuleOrder, v: &ModVec, divisors: &[ModVec]) -> Division {
    let f = order.ring().field().clone();
    let leads: Vec<(MTerm, Elem)> = divisors
        .iter()
        .map(|d| {
            let l = *d.lead().expect("nonzero divisor");
            (l, f.inv(l.2).expect("nonzero"))
        })
        .collect();
    let mut p = v.terms.clone();
    let mut start = 0;
    let mut rem = Vec::new();
    let mut quotient = Vec::new();
    while start < p.len() {
        let (k, comp, c) = p[start];
        match leads.iter().position(|((lk, lc, _), _)| *lc == comp && lk.divides(&k)) {
            Some(l) => {
                let ((lk, _, _), linv) = leads[l];
                let q = f.mul(c, linv);
                quotient.push((k, l, q));
                p = merge_scaled(order, &p[start..], f.neg(q), &lk.div_of(&k), &divisors[l].terms);
                start = 0;
            }
            None => {
                rem.push(p[start]);
                start += 1;
            }
        }
    }
    Division { quotient, remainder: ModVec { terms: rem } }
}

/// Stable reordering so that, within each lead component, exponents of
/// variable `var` in the lead monomials are non-increasing.
pub fn sort_for_schreyer(order: &ModuleOrder, elems: &mut [ModVec], var: usize) {
    if var >= order.ring().nvars() {
        return;
    }
    elems.sort_by_key(|v| std::cmp::Reverse(v.lead_monomial(order).expect("nonzero").exp(var)));
}

/// Schreyer syzygies of a Gröbner basis `elems` (under `order`), as vectors
/// in the free module on `elems` with order `next = order.induced(elems)`.
/// Only pairs with minimal lcm quotients are used; the result is a Gröbner
/// basis of the syzygy module under `next`.
pub fn schreyer_syzygies(order: &ModuleOrder, elems: &[ModVec], next: &ModuleOrder) -> Result<Vec<ModVec>> {
    let f = order.ring().field().clone();
    let n = elems.len();
    let leads: Vec<MTerm> = elems.iter().map(|v| *v.lead().expect("nonzero")).collect();
    let mut by_pos: Vec<usize> = (0..n).collect();
    by_pos.sort_by_key(|&l| next.position(l));
    let mut out = Vec::new();
    for (a, &i) in by_pos.iter().enumerate() {
        let (ki, ci, _) = leads[i];
        // candidates j after i in position order, same lead component
        let mut cands: Vec<(Monomial, usize)> = by_pos[a + 1..]
            .iter()
            .filter(|&&j| leads[j].1 == ci)
            .map(|&j| (ki.div_of(&ki.lcm(&leads[j].0)), j))
            .collect();
        let mut keep: Vec<(Monomial, usize)> = Vec::new();
        for (idx, &(m, j)) in cands.iter().enumerate() {
            let dominated = cands.iter().enumerate().any(|(o, &(m2, _))| {
                o != idx && m2.divides(&m) && (m2 != m || o < idx)
            });
            if !dominated {
                keep.push((m, j));
            }
        }
        cands.clear();
        for (m_ij, j) in keep {
            let (kj, _, cj) = leads[j];
            let ci_inv = f.inv(leads[i].2).expect("nonzero");
            let cj_inv = f.inv(cj).expect("nonzero");
            let l = ki.lcm(&kj);
            let m_ji = kj.div_of(&l);
            let s = ModVec::zero()
                .add_scaled(order, ci_inv, &m_ij, &elems[i])
                .add_scaled(order, f.neg(cj_inv), &m_ji, &elems[j]);
            let div = divide(order, &s, elems);
            if !div.remainder.is_zero() {
                return Err(Error::Internal("S-vector of a Gröbner basis did not reduce to zero".into()));
            }
            let mut terms = vec![(m_ij.mul(&ki), i, ci_inv), (m_ji.mul(&kj), j, f.neg(cj_inv))];
            terms.extend(div.quotient.iter().map(|&(k, l, c)| (k, l, f.neg(c))));
            let syz = ModVec::from_terms(next, terms);
            debug_assert_eq!(syz.lead().map(|t| (t.0, t.1)), Some((m_ij.mul(&ki), i)));
            out.push(syz);
        }
    }
    Ok(out)
}

/// Module Buchberger with tracking. Returns the basis and, for each basis
/// element, its coefficients with respect to the input generators.
pub fn module_groebner(order: &ModuleOrder, gens: &[ModVec]) -> (Vec<ModVec>, Vec<Vec<Polynomial>>) {
    let ring = order.ring().clone();
    let f = ring.field().clone();
    let ng = gens.len();
    let mut basis: Vec<ModVec> = Vec::new();
    let mut track: Vec<Vec<Polynomial>> = Vec::new();
    for (g, v) in gens.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        basis.push(v.clone());
        let mut t = vec![Polynomial::zero(&ring); ng];
        t[g] = Polynomial::one(&ring);
        track.push(t);
    }
    let mut queue: Vec<(u32, usize, usize)> = Vec::new();
    let push_pairs = |queue: &mut Vec<(u32, usize, usize)>, basis: &[ModVec], j: usize| {
        let (kj, cj, _) = *basis[j].lead().expect("nonzero");
        for (i, b) in basis.iter().enumerate().take(j) {
            let (ki, ci, _) = *b.lead().expect("nonzero");
            if ci == cj {
                queue.push((ki.lcm(&kj).degree(), i, j));
            }
        }
    };
    for j in 0..basis.len() {
        push_pairs(&mut queue, &basis, j);
    }
    while !queue.is_empty() {
        let at = (0..queue.len()).min_by_key(|&k| queue[k]).expect("nonempty");
        let (_, i, j) = queue.swap_remove(at);
        let (ki, _, ci) = *basis[i].lead().expect("nonzero");
        let (kj, _, cj) = *basis[j].lead().expect("nonzero");
        let l = ki.lcm(&kj);
        let (ai, aj) = (f.inv(ci).expect("nonzero"), f.neg(f.inv(cj).expect("nonzero")));
        let (mi, mj) = (ki.div_of(&l), kj.div_of(&l));
        let s = ModVec::zero().add_scaled(order, ai, &mi, &basis[i]).add_scaled(order, aj, &mj, &basis[j]);
        let div = divide(order, &s, &basis);
        if div.remainder.is_zero() {
            continue;
        }
        let mut t: Vec<Polynomial> = (0..ng)
            .map(|g| track[i][g].mul_term(&mi, ai).add_scaled(aj, &mj, &track[j][g]))
            .collect();
        for &(k, l, c) in &div.quotient {
            let mono = basis[l].lead().expect("nonzero").0.div_of(&k);
            for g in 0..ng {
                t[g] = t[g].add_scaled(f.neg(c), &mono, &track[l][g]);
            }
        }
        basis.push(div.remainder);
        track.push(t);
        push_pairs(&mut queue, &basis, basis.len() - 1);
    }
    (basis, track)
}
