//! Degeneracy loci of Lagrangians against the fiber family, interpolation
//! of their equations, Stanley-Reisner ideals and the numerical invariants
//! (Euler characteristics, Hilbert polynomials, Chern degrees, the
//! Pfaffian criterion).

use std::sync::Arc;

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::{binomial, contraction_matrix, ExteriorBasis, ExteriorVector, MultiIndex};
use crate::field::{Elem, Embedding, Field};
use crate::groebner::Ideal;
use crate::linalg::{Gf2RowSpace, Matrix};
use crate::poly::{Monomial, Polynomial, Ring};
use crate::quadspace::{
    intersection_dim, witt_classify, witt_classify_integer, IntegerGram, Lagrangian, QuadraticSpace,
};
use crate::rng::SeededRng;

/// Largest extension degree accepted by point enumeration.
pub const MAX_ENUM_DEGREE: u32 = 4;

/// Point of projective space, first nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    field: Field,
    coords: Vec<Elem>,
}

impl ProjPoint {
    pub fn new(field: &Field, coords: &[Elem]) -> Result<ProjPoint> {
        let lead = coords
            .iter()
            .position(|&c| c != 0)
            .ok_or_else(|| Error::DimensionMismatch("zero vector is not a projective point".into()))?;
        if coords.iter().any(|&c| c as u64 >= field.order()) {
            return Err(Error::InvalidField("coordinate outside the field".into()));
        }
        let inv = field.inv(coords[lead])?;
        let coords = coords.iter().map(|&c| field.mul(c, inv)).collect();
        Ok(ProjPoint { field: field.clone(), coords })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn dim_v(&self) -> usize {
        self.coords.len()
    }

    /// The same point over an extension field.
    pub fn embed(&self, emb: &Embedding) -> ProjPoint {
        ProjPoint { field: emb.target().clone(), coords: self.coords.iter().map(|&c| emb.apply(c)).collect() }
    }

    pub fn to_json(&self) -> Value {
        json!(self.coords.iter().map(|&c| self.field.format(c)).collect::<Vec<_>>())
    }
}

/// Fiber of Ω^m(m) at ξ inside Λ^m V, dim V = 2m: the forms killed by
/// contraction with ξ (coordinates dual to the points of P(V)).
pub fn fiber_lagrangian(xi: &ProjPoint, m: usize) -> Result<Lagrangian> {
    if xi.dim_v() != 2 * m {
        return Err(Error::DimensionMismatch(format!("point in dimension {}, expected {}", xi.dim_v(), 2 * m)));
    }
    let space = Arc::new(QuadraticSpace::divided_square(&xi.field, m)?);
    fiber_lagrangian_in(&space, xi, m)
}

fn fiber_lagrangian_in(space: &Arc<QuadraticSpace>, xi: &ProjPoint, m: usize) -> Result<Lagrangian> {
    let v = ExteriorVector::new(&xi.field, 2 * m, 1, xi.coords.clone())?;
    Lagrangian::new(space.clone(), &contraction_matrix(&v, m)?.kernel())
}

/// The Lagrangian with the same basis over an extension field.
pub fn extend_lagrangian(w: &Lagrangian, target: &Field) -> Result<Lagrangian> {
    let base = w.space().field();
    if base == target {
        return Ok(w.clone());
    }
    let emb = base.embedding_into(target)?;
    let b = w.basis();
    let basis = Matrix::from_fn(target, b.rows(), b.cols(), |i, j| emb.apply(b.get(i, j)));
    let m = (1..=4).find(|&m| binomial(2 * m, m) == b.rows()).ok_or_else(|| {
        Error::DimensionMismatch("Lagrangian is not in a middle exterior power".into())
    })?;
    Lagrangian::new(Arc::new(QuadraticSpace::divided_square(target, m)?), &basis)
}

/// dim(W_ξ ∩ W) and whether ξ lies on the degeneracy locus (dim >= 3).
pub fn locus_membership(xi: &ProjPoint, w: &Lagrangian) -> Result<(usize, bool)> {
    let w = extend_lagrangian(w, &xi.field)?;
    let m = (1..=4).find(|&m| 2 * m == xi.dim_v()).ok_or_else(|| Error::DimensionMismatch("dim V".into()))?;
    let fiber = fiber_lagrangian_in(w.space(), xi, m)?;
    let d = intersection_dim(&fiber, &w)?;
    if d % 2 == 0 {
        return Err(Error::OddParityViolation(d));
    }
    Ok((d, d >= 3))
}

/// Arithmetic tables for GF(2^k), k <= 8.
struct Gf2k {
    bits: u32,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl Gf2k {
    fn new(f: &Field) -> Option<Gf2k> {
        if f.characteristic() != 2 || f.degree() > 8 {
            return None;
        }
        let q = f.order() as usize;
        let bits = f.degree();
        let mut mul = vec![0u8; q * q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                mul[(a << bits) | b] = f.mul(a as Elem, b as Elem) as u8;
            }
            if a > 0 {
                inv[a] = f.inv(a as Elem).expect("nonzero") as u8;
            }
        }
        Some(Gf2k { bits, mul, inv })
    }

    #[inline]
    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[((a as usize) << self.bits) | b as usize]
    }

    /// Rank of a row-major matrix, stopping once it reaches `cap`.
    fn rank(&self, m: &mut [u8], rows: usize, cols: usize, cap: usize) -> usize {
        let mut r = 0;
        for c in 0..cols {
            if r == rows || r >= cap {
                break;
            }
            let Some(p) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.inv[m[r * cols + c] as usize];
            for i in r + 1..rows {
                let f = m[i * cols + c];
                if f != 0 {
                    let f = self.mul(f, inv);
                    for j in c..cols {
                        let x = m[r * cols + j];
                        m[i * cols + j] ^= self.mul(f, x);
                    }
                }
            }
            r += 1;
        }
        r
    }
}

/// Fast intersection-dimension test for one W over a fixed field of
/// characteristic 2: dim(W_ξ ∩ W) = dim W - rank(w ↦ ι_ξ w).
struct LocusScanner {
    field: Field,
    tables: Option<Gf2k>,
    wdim: usize,
    out_dim: usize,
    /// ι_{e_i} w_j, one (row-major) matrix per coordinate
    blocks: Vec<Vec<Elem>>,
    /// small sketches L (ι_{e_i} W) R used as a quick full-rank filter
    sketches: Vec<Vec<u8>>,
    sketch: usize,
}

impl LocusScanner {
    fn new(w: &Lagrangian, target: &Field) -> Result<LocusScanner> {
        let w = extend_lagrangian(w, target)?;
        let basis = w.basis();
        let n = (1..=4).find(|&m| binomial(2 * m, m) == basis.rows()).expect("middle power") * 2;
        let m = n / 2;
        let wdim = basis.cols();
        let out_dim = binomial(n, m - 1);
        let mut blocks: Vec<Vec<Elem>> = Vec::with_capacity(n);
        for i in 0..n {
            let e = ExteriorVector::monomial(target, n, &[i])?;
            let mm = contraction_matrix(&e, m)?;
            let prod = mm.mul(basis)?;
            blocks.push((0..out_dim).flat_map(|r| prod.row(r).to_vec()).collect());
        }
        let tables = Gf2k::new(target);
        let sketch = wdim.saturating_sub(2).min(out_dim);
        let mut sketches = Vec::new();
        if tables.is_some() && sketch > 0 {
            let mut rng = SeededRng::new(0x5ca7);
            let l = Matrix::from_fn(target, sketch, out_dim, |_, _| target.random(&mut rng));
            let r = Matrix::from_fn(target, wdim, sketch, |_, _| target.random(&mut rng));
            for b in &blocks {
                let bm = Matrix::from_fn(target, out_dim, wdim, |i, j| b[i * wdim + j]);
                let s = l.mul(&bm)?.mul(&r)?;
                sketches.push((0..sketch).flat_map(|i| s.row(i).iter().map(|&x| x as u8).collect::<Vec<_>>()).collect());
            }
        }
        Ok(LocusScanner { field: target.clone(), tables, wdim, out_dim, blocks, sketches, sketch })
    }

    /// dim(W_ξ ∩ W) if it is at least 3, otherwise None.
    fn member_dim(&self, xi: &[Elem]) -> Option<usize> {
        match &self.tables {
            Some(t) => {
                if !self.sketches.is_empty() {
                    let k = self.sketch;
                    let mut s = vec![0u8; k * k];
                    for (i, &x) in xi.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (a, &b) in s.iter_mut().zip(&self.sketches[i]) {
                            *a ^= t.mul(x as u8, b);
                        }
                    }
                    if t.rank(&mut s, k, k, k) == k {
                        return None;
                    }
                }
                let (r, c) = (self.out_dim, self.wdim);
                let mut m = vec![0u8; r * c];
                for (i, &x) in xi.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (a, &b) in m.iter_mut().zip(&self.blocks[i]) {
                        *a ^= t.mul(x as u8, b as u8);
                    }
                }
                let rank = t.rank(&mut m, r, c, c);
                (c - rank >= 3).then_some(c - rank)
            }
            None => {
                let f = &self.field;
                let m = Matrix::from_fn(f, self.out_dim, self.wdim, |a, b| {
                    xi.iter().enumerate().fold(0, |acc, (i, &x)| f.add(acc, f.mul(x, self.blocks[i][a * self.wdim + b])))
                });
                let d = self.wdim - m.rank();
                (d >= 3).then_some(d)
            }
        }
    }
}

/// All points of P(V) over GF(2^k) on the degeneracy locus of W, in
/// lexicographic order of their normalized coordinates.
pub fn enumerate_locus(w: &Lagrangian, k: u32) -> Result<Vec<ProjPoint>> {
    if k > MAX_ENUM_DEGREE {
        return Err(Error::SizeCap(format!("point enumeration over GF(2^{k}) (at most 2^{MAX_ENUM_DEGREE})")));
    }
    let base = w.space().field();
    if base.characteristic() != 2 || k % base.degree() != 0 {
        return Err(Error::IncompatibleFields(format!("{base} does not embed in GF(2^{k})")));
    }
    let target = Field::gf2k(k)?;
    let scanner = LocusScanner::new(w, &target)?;
    let n = (1..=4).find(|&m| binomial(2 * m, m) == w.basis().rows()).expect("middle power") * 2;
    let q = target.order() as Elem;
    let mut out = Vec::new();
    let mut xi = vec![0 as Elem; n];
    for lead in (0..n).rev() {
        xi.iter_mut().for_each(|x| *x = 0);
        xi[lead] = 1;
        let tail = n - lead - 1;
        let total = (q as u64).pow(tail as u32);
        for code in 0..total {
            let mut c = code;
            for t in (0..tail).rev() {
                xi[lead + 1 + t] = (c % q as u64) as Elem;
                c /= q as u64;
            }
            if scanner.member_dim(&xi).is_some() {
                out.push(ProjPoint { field: target.clone(), coords: xi.clone() });
            }
        }
    }
    Ok(out)
}

/// Up to `count` distinct points of the locus over GF(2^k), k <= 8, found by
/// scanning seeded random 3-planes of P(V).
pub fn sample_locus_points(w: &Lagrangian, k: u32, count: usize, seed: u64) -> Result<Vec<ProjPoint>> {
    if k > 8 {
        return Err(Error::SizeCap(format!("sampling over GF(2^{k})")));
    }
    let target = Field::gf2k(k)?;
    let scanner = LocusScanner::new(w, &target)?;
    let n = (1..=4).find(|&m| binomial(2 * m, m) == w.space().dim()).expect("middle power") * 2;
    let q = target.order();
    let mut rng = SeededRng::new(seed);
    let mut out: Vec<ProjPoint> = Vec::new();
    for _ in 0..1024 {
        let b = Matrix::from_fn(&target, 4, n, |_, _| target.random(&mut rng));
        if b.rank() < 4 {
            continue;
        }
        for code in 1..q.pow(4) {
            let c: Vec<Elem> = (0..4).map(|i| ((code / q.pow(3 - i)) % q) as Elem).collect();
            if c.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            let xi: Vec<Elem> = (0..n)
                .map(|j| (0..4).fold(0, |acc, i| target.add(acc, target.mul(c[i], b.get(i, j)))))
                .collect();
            if scanner.member_dim(&xi).is_some() {
                let p = ProjPoint::new(&target, &xi)?;
                if !out.contains(&p) {
                    out.push(p);
                    if out.len() == count {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Coordinates of extension elements over a subfield, in the basis 1, β, β², ...
/// with β the generator of the extension.
struct SubfieldCoords {
    table: Vec<Vec<Elem>>,
}

impl SubfieldCoords {
    fn new(base: &Field, ext: &Field) -> Result<SubfieldCoords> {
        let emb = base.embedding_into(ext)?;
        let r = (ext.degree() / base.degree()) as usize;
        let beta = ext.generator();
        let powers: Vec<Elem> = (0..r).map(|i| ext.pow(beta, i as u64)).collect();
        let qb = base.order() as usize;
        let mut table = vec![Vec::new(); ext.order() as usize];
        for code in 0..qb.pow(r as u32) {
            let mut c = code;
            let mut digits = Vec::with_capacity(r);
            let mut z = 0;
            for p in &powers {
                let d = (c % qb) as Elem;
                c /= qb;
                z = ext.add(z, ext.mul(emb.apply(d), *p));
                digits.push(d);
            }
            if !table[z as usize].is_empty() {
                return Err(Error::Internal("subfield basis is not independent".into()));
            }
            table[z as usize] = digits;
        }
        Ok(SubfieldCoords { table })
    }
}

/// Forms of the given degree over `ring`'s field vanishing at every point;
/// each point over an extension contributes one condition per subfield
/// coordinate. The basis is in reduced echelon form.
pub fn forms_vanishing_on(ring: &Ring, points: &[ProjPoint], degree: u32) -> Result<Vec<Polynomial>> {
    let base = ring.field().clone();
    let monos = ring.monomials_of_degree(degree);
    let nm = monos.len();
    let mut ext_fields: Vec<(Field, SubfieldCoords)> = Vec::new();
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    let mut gf2 = base.is_gf2().then(|| Gf2RowSpace::new(nm));
    for pt in points {
        let ext = &pt.field;
        if !ext_fields.iter().any(|(f, _)| f == ext) {
            ext_fields.push((ext.clone(), SubfieldCoords::new(&base, ext)?));
        }
        let coords = &ext_fields.iter().find(|(f, _)| f == ext).expect("inserted").1;
        let maxe = degree as usize;
        let powers: Vec<Vec<Elem>> =
            pt.coords.iter().map(|&x| (0..=maxe).map(|e| ext.pow(x, e as u64)).collect()).collect();
        let values: Vec<&Vec<Elem>> = monos
            .iter()
            .map(|m| {
                let v = (0..ring.nvars()).fold(1, |acc, i| ext.mul(acc, powers[i][m.exp(i) as usize]));
                &coords.table[v as usize]
            })
            .collect();
        let r = values.first().map_or(0, |v| v.len());
        for comp in 0..r {
            let row: Vec<Elem> = values.iter().map(|v| v[comp]).collect();
            match gf2.as_mut() {
                Some(space) => {
                    let bits: Vec<usize> = (0..nm).filter(|&j| row[j] != 0).collect();
                    space.insert_bits(&bits);
                }
                None => rows.push(row),
            }
        }
    }
    let kernel = match gf2 {
        Some(space) => space.kernel(&base),
        None if rows.is_empty() => Matrix::identity(&base, nm),
        None => Matrix::from_rows(&base, &rows)?.kernel(),
    };
    Ok((0..kernel.cols())
        .map(|j| Polynomial::from_terms(ring, monos.iter().enumerate().map(|(i, &m)| (m, kernel.get(i, j))).collect()))
        .collect())
}

#[derive(Clone, Debug)]
pub struct InterpolationStage {
    pub k: u32,
    pub points: usize,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug)]
pub struct Interpolation {
    pub forms: Vec<Polynomial>,
    pub stages: Vec<InterpolationStage>,
    /// Points of the last stage.
    pub census: Vec<ProjPoint>,
}

/// Cubics through the locus of W in P^5, over the base field GF(2^k0),
/// k0 in {1, 2}. Extensions GF(2^k) for k = k0, 2k0, ... are scanned until
/// the kernel dimension repeats (and is at most 12) or GF(16) has been used.
pub fn interpolate_cubics(w: &Lagrangian) -> Result<Interpolation> {
    if w.space().dim() != 20 {
        return Err(Error::DimensionMismatch("cubic interpolation needs a Lagrangian in Λ³ of a 6-space".into()));
    }
    interpolate_locus_forms(w, 3, 10, 12)
}

/// Forms of the given degree through the locus of W, with the same
/// extension schedule as [`interpolate_cubics`]; `expected` is the required
/// final dimension and `stable_cap` the largest dimension accepted as stable.
pub fn interpolate_locus_forms(w: &Lagrangian, degree: u32, expected: usize, stable_cap: usize) -> Result<Interpolation> {
    let base = w.space().field().clone();
    let k0 = base.degree();
    if base.characteristic() != 2 || k0 > 2 {
        return Err(Error::IncompatibleFields(format!("interpolation needs GF(2) or GF(4), got {base}")));
    }
    let n = (1..=4).find(|&m| binomial(2 * m, m) == w.space().dim()).expect("middle power") * 2;
    let ring = Ring::grevlex(&base, n)?;
    let mut stages: Vec<InterpolationStage> = Vec::new();
    let mut k = k0;
    let (forms, census) = loop {
        let census = enumerate_locus(w, k)?;
        let forms = forms_vanishing_on(&ring, &census, degree)?;
        let dim = forms.len();
        let repeated = stages.last().is_some_and(|s| s.kernel_dim == dim) && dim <= stable_cap;
        stages.push(InterpolationStage { k, points: census.len(), kernel_dim: dim });
        if repeated || 2 * k > MAX_ENUM_DEGREE {
            break (forms, census);
        }
        k *= 2;
    };
    if forms.len() != expected {
        return Err(Error::DimensionMismatch(format!(
            "{} forms of degree {degree} through the locus, expected {expected}",
            forms.len()
        )));
    }
    Ok(Interpolation { forms, stages, census })
}

/// Ideal of the simplicial complex with the given facets on vertices
/// 0..nvars-1: generated by the minimal non-faces.
pub fn stanley_reisner_ideal(ring: &Ring, facets: &[MultiIndex]) -> Result<Ideal> {
    let n = ring.nvars();
    if facets.iter().any(|f| f.indices().iter().any(|&i| i >= n)) {
        return Err(Error::DimensionMismatch("facet vertex outside the ring".into()));
    }
    let masks: Vec<u32> = facets.iter().map(|f| f.mask() as u32).collect();
    let is_face = |s: u32| masks.iter().any(|&f| s & f == s);
    let mut gens = Vec::new();
    for s in 1u32..(1 << n) {
        if is_face(s) {
            continue;
        }
        let minimal = (0..n).filter(|&i| s >> i & 1 == 1).all(|i| is_face(s & !(1 << i)));
        if minimal {
            let e: Vec<u32> = (0..n).map(|i| s >> i & 1).collect();
            gens.push(Polynomial::term(ring, Monomial::from_exps(&e), 1));
        }
    }
    Ideal::new(ring, gens)
}

/// Facets of the six-vertex triangulation of the real projective plane.
pub const REISNER_FACETS: [[usize; 3]; 10] = [
    [0, 1, 3],
    [0, 1, 4],
    [0, 2, 3],
    [0, 2, 5],
    [0, 4, 5],
    [1, 2, 4],
    [1, 2, 5],
    [1, 3, 5],
    [2, 3, 4],
    [3, 4, 5],
];

pub fn reisner_facets() -> Vec<MultiIndex> {
    REISNER_FACETS.iter().map(|f| MultiIndex::new(f, 6).expect("valid")).collect()
}

/// Span of the ten facet monomials in Λ³ GF(2)^6.
pub fn reisner_lagrangian() -> Result<Lagrangian> {
    let f = Field::gf2();
    let basis = ExteriorBasis::new(6, 3);
    let cols: Vec<Vec<Elem>> = reisner_facets()
        .iter()
        .map(|fa| {
            let mut v = vec![0; basis.len()];
            v[basis.index_of(fa.mask()).expect("basis element")] = 1;
            v
        })
        .collect();
    let space = Arc::new(QuadraticSpace::divided_square(&f, 3)?);
    Lagrangian::new(space, &Matrix::from_columns(&f, basis.len(), &cols)?)
}

/// Rank of the Jacobian matrix of `gens` at ξ.
pub fn jacobian_rank(gens: &[Polynomial], xi: &ProjPoint) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Ok(0);
    };
    let ring = first.ring();
    let emb = ring.field().embedding_into(&xi.field)?;
    if gens.iter().any(|g| g.eval_embedded(&emb, &xi.coords) != 0) {
        return Err(Error::PointNotOnLocus);
    }
    let n = ring.nvars();
    let m = Matrix::from_fn(&xi.field, gens.len(), n, |i, j| gens[i].derivative(j).eval_embedded(&emb, &xi.coords));
    Ok(m.rank())
}

/// True when no nonzero quadric vanishes on the points.
pub fn quadric_check(ring: &Ring, points: &[ProjPoint]) -> Result<bool> {
    Ok(forms_vanishing_on(ring, points, 2)?.is_empty())
}

/// Value at x of the binomial polynomial C(x, k).
pub fn binomial_poly(x: i128, k: u32) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k as i128 {
        num *= x - i;
        den *= i + 1;
    }
    num / den
}

/// χ(O(s)) on P^n.
pub fn euler_char_line(n: u32, s: i64) -> i128 {
    binomial_poly(s as i128 + n as i128, n)
}

/// χ(Ω^p(t)) on P^n via the truncated Koszul complex.
pub fn euler_char_omega(n: u32, p: u32, t: i64) -> i128 {
    (0..=p)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * binomial_poly(n as i128 + 1, p - j) * euler_char_line(n, t - p as i64 + j as i64)
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermKind {
    Trivial,
    Omega(u32),
}

/// rank · χ(kind(t + twist)) contributes to the Euler characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShapeTerm {
    pub twist: i64,
    pub rank: i64,
    pub kind: TermKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionShape {
    pub terms: Vec<ShapeTerm>,
}

impl ResolutionShape {
    /// Codimension-3 locus in P^5 cut out by ten cubics.
    pub fn p5() -> ResolutionShape {
        ResolutionShape {
            terms: vec![
                ShapeTerm { twist: 0, rank: 1, kind: TermKind::Trivial },
                ShapeTerm { twist: -3, rank: -10, kind: TermKind::Trivial },
                ShapeTerm { twist: 0, rank: 1, kind: TermKind::Omega(3) },
                ShapeTerm { twist: -6, rank: -1, kind: TermKind::Trivial },
            ],
        }
    }

    /// Codimension-3 locus in P^7 attached to Ω^4(4).
    pub fn p7() -> ResolutionShape {
        ResolutionShape {
            terms: vec![
                ShapeTerm { twist: 0, rank: 1, kind: TermKind::Trivial },
                ShapeTerm { twist: -10, rank: -35, kind: TermKind::Trivial },
                ShapeTerm { twist: -6, rank: 1, kind: TermKind::Omega(4) },
                ShapeTerm { twist: -20, rank: -1, kind: TermKind::Trivial },
            ],
        }
    }

    /// A point in P^3 resolved by the Koszul complex.
    pub fn point_p3() -> ResolutionShape {
        let t = |twist, rank| ShapeTerm { twist, rank, kind: TermKind::Trivial };
        ResolutionShape { terms: vec![t(0, 1), t(-1, -3), t(-2, 3), t(-3, -1)] }
    }

    pub fn euler_char(&self, n: u32, t: i64) -> i128 {
        self.terms
            .iter()
            .map(|term| {
                let s = t + term.twist;
                let chi = match term.kind {
                    TermKind::Trivial => euler_char_line(n, s),
                    TermKind::Omega(p) => euler_char_omega(n, p, s),
                };
                term.rank as i128 * chi
            })
            .sum()
    }
}

pub type Rational = Ratio<i128>;

/// Integer-valued polynomial in t with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    /// Coefficients of t^0, t^1, ...
    pub coeffs: Vec<Rational>,
}

impl HilbertPolynomial {
    pub fn eval(&self, t: i64) -> Rational {
        self.coeffs.iter().rev().fold(Rational::from_integer(0), |acc, c| acc * Rational::from_integer(t as i128) + c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != Rational::from_integer(0)).unwrap_or(0)
    }

    /// Coefficients a_k with P(t) = Σ a_k C(t+k-1, k), highest k first.
    pub fn binomial_coeffs(&self) -> Vec<i128> {
        let d = self.degree();
        // finite differences: Δ C(t+k-1, k) = C(t+k-2, k-1) with Δf(t) = f(t) - f(t-1)
        let mut vals: Vec<Rational> = (0..=d as i64).map(|t| self.eval(t)).collect();
        let mut out = vec![0i128; d + 1];
        for k in (0..=d).rev() {
            // after k differences the value is the constant a_k
            let mut diffs = vals.clone();
            for _ in 0..k {
                diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
            }
            let a = diffs[0];
            out[k] = a.to_integer();
            for (t, v) in vals.iter_mut().enumerate() {
                *v -= a * Rational::from_integer(binomial_poly(t as i128 + k as i128 - 1, k as u32));
            }
        }
        out.reverse();
        out
    }

    pub fn leading(&self) -> Rational {
        self.coeffs[self.degree()]
    }

    pub fn to_json(&self) -> Value {
        json!(self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

/// Lagrange interpolation of t ↦ χ at n+2 integer points.
pub fn hilbert_polynomial_from_shape(shape: &ResolutionShape, n: u32) -> HilbertPolynomial {
    let pts: Vec<(i128, i128)> = (0..=n as i64 + 1).map(|t| (t as i128, shape.euler_char(n, t))).collect();
    interpolate(&pts)
}

pub fn interpolate(pts: &[(i128, i128)]) -> HilbertPolynomial {
    let k = pts.len();
    let zero = Rational::from_integer(0);
    let mut coeffs = vec![zero; k];
    for (i, &(xi, yi)) in pts.iter().enumerate() {
        // basis polynomial Π_{j≠i} (t - xj)/(xi - xj)
        let mut basis = vec![Rational::from_integer(1)];
        let mut den = Rational::from_integer(1);
        for (j, &(xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![zero; basis.len() + 1];
            for (e, c) in basis.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= c * Rational::from_integer(xj);
            }
            basis = next;
            den *= Rational::from_integer(xi - xj);
        }
        for (e, c) in basis.iter().enumerate() {
            coeffs[e] += c * Rational::from_integer(yi) / den;
        }
    }
    while coeffs.len() > 1 && *coeffs.last().expect("nonempty") == zero {
        coeffs.pop();
    }
    HilbertPolynomial { coeffs }
}

/// Truncated power series in h, modulo h^(n+1).
fn series_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if i + j < out.len() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn series_inv(a: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len()];
    out[0] = 1;
    for i in 1..a.len() {
        out[i] = -(1..=i).map(|j| a[j] * out[i - j]).sum::<i128>();
    }
    out
}

/// Chern classes of F(d) from those of F (rank r).
fn twist(c: &[i128], r: i128, d: i128) -> Vec<i128> {
    (0..c.len())
        .map(|i| {
            (0..=i)
                .filter(|&j| r - j as i128 >= 0)
                .map(|j| binomial_poly(r - j as i128, (i - j) as u32) * d.pow((i - j) as u32) * c[j])
                .sum()
        })
        .collect()
}

/// Total Chern class of Ω^p(p) on P^n.
pub fn chern_omega(n: u32, p: u32) -> Vec<i128> {
    let len = n as usize + 1;
    let mut c = vec![0i128; len];
    c[0] = 1;
    for q in 1..=p {
        // 0 -> Ω^q(q) -> Λ^q ⊗ O -> Ω^{q-1}(q) -> 0
        let prev_rank = binomial_poly(n as i128, q - 1);
        c = series_inv(&twist(&c, prev_rank, 1));
    }
    c
}

/// Degree of the codimension-3 degeneracy locus attached to E = (Ω^p(p))^{⊕copies}
/// on P^n: (c1 c2 - 2 c3)/4 of E*.
pub fn chern_degree(n: u32, p: u32, copies: u32) -> Result<i128> {
    if n < 3 || p > n {
        return Err(Error::DimensionMismatch(format!("Ω^{p} on P^{n}")));
    }
    let base = chern_omega(n, p);
    let mut c = vec![0i128; n as usize + 1];
    c[0] = 1;
    for _ in 0..copies {
        c = series_mul(&c, &base);
    }
    let dual: Vec<i128> = c.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x } else { -x }).collect();
    let v = dual[1] * dual[2] - 2 * dual[3];
    if v % 4 != 0 {
        return Err(Error::NotDivisibleBy4(v));
    }
    Ok(v / 4)
}

/// The middle cohomology data for the Pfaffian criterion.
#[derive(Clone, Debug)]
pub enum Middle {
    /// Only the dimension is known.
    Dimension(usize),
    /// A quadratic space over a finite field.
    Form(QuadraticSpace),
    /// A real symmetric form given by an integer Gram matrix.
    Real(IntegerGram),
    /// The complexification of an integer Gram matrix.
    Complex(IntegerGram),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PfaffianDecision {
    Pfaffian(String),
    NonPfaffian(String),
}

impl PfaffianDecision {
    pub fn is_pfaffian(&self) -> bool {
        matches!(self, PfaffianDecision::Pfaffian(_))
    }

    pub fn reason(&self) -> &str {
        match self {
            PfaffianDecision::Pfaffian(r) | PfaffianDecision::NonPfaffian(r) => r,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "decision": if self.is_pfaffian() { "Pfaffian" } else { "NonPfaffian" },
            "reason": self.reason(),
        })
    }
}

/// Pfaffian criterion for a subcanonical Z of dimension n with ω_Z = O_Z(ℓ).
/// `characteristic` is 0 for real or complex ground fields.
pub fn pfaffian_decision(n: u32, ell: i64, characteristic: u32, middle: &Middle) -> Result<PfaffianDecision> {
    use PfaffianDecision::*;
    if n == 0 {
        return Err(Error::DimensionMismatch("n must be positive".into()));
    }
    if n % 2 == 1 || ell % 2 != 0 {
        return Ok(Pfaffian("clause (i): n or ell is odd".into()));
    }
    if n % 4 == 2 && characteristic != 2 {
        return Ok(Pfaffian("clause (ii): n = 2 mod 4 and characteristic is not 2".into()));
    }
    let (dim, lagrangian) = match middle {
        Middle::Dimension(d) => (*d, None),
        Middle::Form(q) => (q.dim(), Some(q.dim() % 2 == 0 && witt_classify(q)?.hyperbolic)),
        Middle::Real(g) => (g.dim(), Some(g.dim() % 2 == 0 && witt_classify_integer(g)?.hyperbolic)),
        Middle::Complex(g) => {
            let (_, _, zero) = g.inertia();
            (g.dim(), Some(g.dim() % 2 == 0 && zero == 0))
        }
    };
    if dim % 2 == 1 {
        return Ok(NonPfaffian("clause (c): middle cohomology is odd-dimensional".into()));
    }
    match lagrangian {
        Some(true) => Ok(Pfaffian("clause (iii): middle cohomology is even-dimensional with a Lagrangian subspace".into())),
        Some(false) => Ok(NonPfaffian("clause (d): middle cohomology has no Lagrangian subspace".into())),
        None => Err(Error::Undecidable("even-dimensional middle cohomology needs its form".into())),
    }
}
