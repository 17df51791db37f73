//! Normal forms, Buchberger's algorithm and Hilbert functions.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::poly::{merge_scaled, Monomial, Polynomial, Ring, Term};

pub const HILBERT_DEGREE_CAP: u32 = 20;

/// Full reduction: the highest remaining term is reduced first, by the first
/// element of `basis` whose leading monomial divides it.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let divisors: Vec<(Monomial, Elem, &Polynomial)> = basis
        .iter()
        .filter_map(|g| g.lead().map(|&(m, c)| (m, field.inv(c).expect("nonzero lead"), g)))
        .collect();
    let mut p: Vec<Term> = f.terms().to_vec();
    let mut start = 0;
    let mut rem = Vec::new();
    while start < p.len() {
        let (m, c) = p[start];
        match divisors.iter().find(|(lm, _, _)| lm.divides(&m)) {
            Some(&(lm, linv, g)) => {
                let coef = field.neg(field.mul(c, linv));
                p = merge_scaled(&ring, &p[start..], coef, &lm.div_of(&m), g.terms());
                start = 0;
            }
            None => {
                rem.push((m, c));
                start += 1;
            }
        }
    }
    Polynomial::from_sorted(&ring, rem)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.field();
    let (fm, fc) = *f.lead().expect("nonzero");
    let (gm, gc) = *g.lead().expect("nonzero");
    let l = fm.lcm(&gm);
    let a = f.mul_term(&fm.div_of(&l), field.inv(fc).expect("nonzero"));
    a.add_scaled(field.neg(field.inv(gc).expect("nonzero")), &gm.div_of(&l), g)
}

/// Reduced Gröbner basis, sorted by increasing leading monomial.
pub fn groebner_basis(gens: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut queue: Vec<(u32, usize, usize)> = Vec::new();
    let lm = |b: &Vec<Polynomial>, i: usize| b[i].lead_monomial().expect("nonzero");
    for j in 0..basis.len() {
        for i in 0..j {
            let l = lm(&basis, i).lcm(&lm(&basis, j));
            queue.push((l.degree(), i, j));
            pending.insert((i, j));
        }
    }
    while !queue.is_empty() {
        let pos = (0..queue.len()).min_by_key(|&k| queue[k]).expect("nonempty");
        let (_, i, j) = queue.swap_remove(pos);
        pending.remove(&(i, j));
        let (mi, mj) = (lm(&basis, i), lm(&basis, j));
        if mi.coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis, k).divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let h = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        let n = basis.len();
        let hm = h.lead_monomial().expect("nonzero");
        basis.push(h);
        for k in 0..n {
            queue.push((lm(&basis, k).lcm(&hm).degree(), k, n));
            pending.insert((k, n));
        }
    }
    reduce_basis(&ring, basis)
}

fn reduce_basis(ring: &Ring, basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let m = g.lead_monomial().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hm = h.lead_monomial().expect("nonzero");
            k != i && hm.divides(&m) && (hm != m || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Polynomial> =
                minimal.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, g)| g.clone()).collect();
            normal_form(&minimal[i], &others).monic()
        })
        .collect();
    reduced.sort_by(|a, b| ring.cmp(&a.lead_monomial().unwrap(), &b.lead_monomial().unwrap()));
    reduced
}

/// Ideal with a lazily computed reduced Gröbner basis.
#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(Error::IncompatibleFields("generator from another ring".into()));
        }
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| groebner_basis(&self.gens))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self.groebner()).is_zero()
    }

    pub fn is_proper(&self) -> bool {
        !self.groebner().iter().any(|g| g.is_constant())
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.groebner().iter().map(|g| g.lead_monomial().expect("nonzero")).collect()
    }

    /// dim_k (R/I)_t by counting standard monomials.
    pub fn hilbert_function(&self, t: u32) -> Result<u64> {
        if !self.is_homogeneous() {
            return Err(Error::NonHomogeneous);
        }
        if t > HILBERT_DEGREE_CAP {
            return Err(Error::SizeCap(format!("Hilbert function degree {t} > {HILBERT_DEGREE_CAP}")));
        }
        let leads = self.lead_monomials();
        Ok(self
            .ring
            .monomials_of_degree(t)
            .iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .count() as u64)
    }
}

pub fn ideal_contains(i: &Ideal, f: &Polynomial) -> bool {
    i.contains(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::rng::SeededRng;

    fn ring(p: u32, n: usize) -> Ring {
        Ring::grevlex(&Field::prime(p).unwrap(), n).unwrap()
    }

    fn parse(r: &Ring, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(2, 2);
        let x = parse(&r, "x0");
        assert!(normal_form(&parse(&r, "x0^2"), &[x.clone()]).is_zero());
        assert_eq!(normal_form(&parse(&r, "x0+x1"), &[x]), parse(&r, "x1"));
    }

    #[test]
    fn basic_bases() {
        let r = ring(3, 2);
        let g = groebner_basis(&[parse(&r, "x0 - x1"), parse(&r, "x1^2")]);
        assert_eq!(g, vec![parse(&r, "x0 - x1"), parse(&r, "x1^2")]);
        let r3 = ring(2, 3);
        let g = groebner_basis(&[parse(&r3, "x0*x1"), parse(&r3, "x0*x1*x2"), parse(&r3, "x2^2")]);
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn random_bases_have_reducing_s_pairs() {
        let r = ring(2, 3);
        let f = r.field().clone();
        let mut rng = SeededRng::new(99);
        let monos: Vec<Monomial> = (0..=2).flat_map(|d| r.monomials_of_degree(d)).collect();
        for _ in 0..50 {
            let ngens = 1 + rng.below(3) as usize;
            let gens: Vec<Polynomial> = (0..ngens)
                .map(|_| {
                    let t = monos.iter().map(|&m| (m, f.random(&mut rng))).collect();
                    Polynomial::from_terms(&r, t)
                })
                .collect();
            let g = groebner_basis(&gens);
            for a in 0..g.len() {
                for b in a + 1..g.len() {
                    assert!(normal_form(&s_polynomial(&g[a], &g[b]), &g).is_zero());
                }
            }
            let ideal = Ideal::new(&r, g.clone()).unwrap();
            for gen in &gens {
                assert!(ideal.contains(gen));
            }
            // idempotent
            assert_eq!(groebner_basis(&g), g);
        }
    }

    #[test]
    fn hilbert_of_koszul() {
        let r = ring(2, 3);
        let i = Ideal::new(&r, vec![parse(&r, "x0"), parse(&r, "x1")]).unwrap();
        for t in 0..5 {
            assert_eq!(i.hilbert_function(t).unwrap(), 1);
        }
        let nh = Ideal::new(&r, vec![parse(&r, "x0 + x1^2")]).unwrap();
        assert_eq!(nh.hilbert_function(2), Err(Error::NonHomogeneous));
        assert!(!i.contains(&Polynomial::one(&r)));
    }
}
