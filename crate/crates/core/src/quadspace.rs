//! Quadratic spaces over finite fields, Lagrangian subspaces and Witt classes.

use std::sync::Arc;

use num_rational::Ratio;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exterior::{binomial, divided_square_terms, ExteriorBasis};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::rng::SeededRng;

/// Label of the divided-square space on Λ³ of a 6-dimensional space.
pub const LAMBDA3_LABEL: &str = "lambda3-div-square-gf2k";

#[derive(Clone, Debug)]
pub struct QuadraticSpace {
    field: Field,
    dim: usize,
    /// Nonzero upper-triangular coefficients (i <= j, q_ij), sorted.
    q: Vec<(usize, usize, Elem)>,
    gram: Matrix,
    nondegenerate: bool,
    label: Option<String>,
}

impl PartialEq for QuadraticSpace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.q == other.q
    }
}

impl QuadraticSpace {
    /// Builds a space from upper-triangular entries; repeated entries add up.
    pub fn from_q_table(field: &Field, dim: usize, entries: &[(usize, usize, Elem)]) -> Result<Self> {
        let mut table: std::collections::BTreeMap<(usize, usize), Elem> = Default::default();
        for &(i, j, c) in entries {
            if i >= dim || j >= dim {
                return Err(Error::DimensionMismatch(format!("entry ({i},{j}) outside dimension {dim}")));
            }
            let key = if i <= j { (i, j) } else { (j, i) };
            let e = table.entry(key).or_insert(0);
            *e = field.add(*e, c);
        }
        let q: Vec<(usize, usize, Elem)> =
            table.into_iter().filter(|&(_, c)| c != 0).map(|((i, j), c)| (i, j, c)).collect();
        let mut gram = Matrix::zeros(field, dim, dim);
        for &(i, j, c) in &q {
            if i == j {
                gram.set(i, i, field.add(c, c));
            } else {
                gram.set(i, j, c);
                gram.set(j, i, c);
            }
        }
        let nondegenerate = gram.rank() == dim;
        Ok(QuadraticSpace { field: field.clone(), dim, q, gram, nondegenerate, label: None })
    }

    /// Hyperbolic normal form q = Σ x_i x_{n+i}.
    pub fn hyperbolic(field: &Field, n: usize) -> Result<Self> {
        let entries: Vec<_> = (0..n).map(|i| (i, n + i, 1)).collect();
        QuadraticSpace::from_q_table(field, 2 * n, &entries)
    }

    /// The divided square on Λ^m V with dim V = 2m.
    pub fn divided_square(field: &Field, m: usize) -> Result<Self> {
        let terms = divided_square_terms(field, m)?;
        let mut s = QuadraticSpace::from_q_table(field, binomial(2 * m, m), &terms)?;
        if m == 3 && field.characteristic() == 2 {
            s.label = Some(LAMBDA3_LABEL.into());
        }
        Ok(s)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Half the dimension.
    pub fn half_dim(&self) -> usize {
        self.dim / 2
    }

    pub fn q_entries(&self) -> &[(usize, usize, Elem)] {
        &self.q
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn eval(&self, v: &[Elem]) -> Elem {
        let f = &self.field;
        self.q.iter().fold(0, |acc, &(i, j, c)| f.add(acc, f.mul(c, f.mul(v[i], v[j]))))
    }

    pub fn polar(&self, u: &[Elem], v: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = 0;
        for &(i, j, c) in &self.q {
            let t = if i == j {
                f.mul(f.add(c, c), f.mul(u[i], v[i]))
            } else {
                f.mul(c, f.add(f.mul(u[i], v[j]), f.mul(u[j], v[i])))
            };
            acc = f.add(acc, t);
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        match &self.label {
            Some(l) => json!(l),
            None => json!({
                "dim": self.dim,
                "q": self.q.iter().map(|&(i, j, c)| json!([i, j, self.field.format(c)])).collect::<Vec<_>>(),
            }),
        }
    }
}

/// True iff the columns of `s` span an n-dimensional totally singular subspace.
pub fn is_lagrangian(s: &Matrix, space: &QuadraticSpace) -> bool {
    if s.rows() != space.dim || space.dim % 2 != 0 || s.rank() != space.dim / 2 {
        return false;
    }
    let cols: Vec<Vec<Elem>> = (0..s.cols()).map(|j| s.column(j)).collect();
    for (a, u) in cols.iter().enumerate() {
        if space.eval(u) != 0 {
            return false;
        }
        for v in &cols[a + 1..] {
            if space.polar(u, v) != 0 {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct Lagrangian {
    space: Arc<QuadraticSpace>,
    basis: Matrix,
}

impl PartialEq for Lagrangian {
    fn eq(&self, other: &Self) -> bool {
        *self.space == *other.space && self.basis == other.basis
    }
}

impl Lagrangian {
    /// Validates and stores the subspace with its reduced column echelon basis.
    pub fn new(space: Arc<QuadraticSpace>, basis: &Matrix) -> Result<Lagrangian> {
        if basis.field() != space.field() {
            return Err(Error::IncompatibleFields("basis and space fields differ".into()));
        }
        if !is_lagrangian(basis, &space) {
            return Err(Error::NotLagrangian(format!(
                "{} columns of rank {} in a space of dimension {}",
                basis.cols(),
                basis.rank(),
                space.dim
            )));
        }
        Ok(Lagrangian { basis: basis.column_basis(), space })
    }

    pub fn space(&self) -> &Arc<QuadraticSpace> {
        &self.space
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = self.space.field();
        let cols: Vec<Vec<String>> = (0..self.basis.cols())
            .map(|j| self.basis.column(j).iter().map(|&c| f.format(c)).collect())
            .collect();
        json!({ "space": self.space.to_json(), "field": f.spec(), "basis": cols })
    }
}

fn same_space(l: &Lagrangian, m: &Lagrangian) -> Result<()> {
    if !Arc::ptr_eq(&l.space, &m.space) && *l.space != *m.space {
        return Err(Error::IncompatibleFields("Lagrangians live in different spaces".into()));
    }
    Ok(())
}

pub fn intersection_dim(l: &Lagrangian, m: &Lagrangian) -> Result<usize> {
    same_space(l, m)?;
    Ok(l.dim() + m.dim() - l.basis.hstack(&m.basis)?.rank())
}

pub fn family_parity(l: &Lagrangian, reference: &Lagrangian) -> Result<usize> {
    Ok(intersection_dim(l, reference)? % 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Same,
    Opposite,
}

/// Samples a Lagrangian from the affine chart of subspaces transverse to `comp`.
///
/// With R = basis(ref) and C' the basis of `comp` dual to R under b, the output
/// is spanned by r_i + Σ_j A_ji c'_j for a random alternating matrix A. For the
/// opposite family the pair (r_1, c'_1) is swapped first. Entries of A are
/// drawn row-major over i < j.
pub fn random_lagrangian(reference: &Lagrangian, comp: &Lagrangian, family: Family, seed: u64) -> Result<Lagrangian> {
    same_space(reference, comp)?;
    let space = &reference.space;
    let f = space.field().clone();
    let n = reference.dim();
    let r = reference.basis.clone();
    let c = comp.basis.clone();
    if r.hstack(&c)?.rank() != space.dim {
        return Err(Error::NotComplementary);
    }
    let b = r.transpose().mul(space.gram())?.mul(&c)?;
    let binv = b.inverse().map_err(|_| Error::NotComplementary)?;
    let mut cd = c.mul(&binv)?;
    let mut r = r;
    if family == Family::Opposite {
        for i in 0..space.dim {
            let (x, y) = (r.get(i, 0), cd.get(i, 0));
            r.set(i, 0, y);
            cd.set(i, 0, x);
        }
    }
    let mut rng = SeededRng::new(seed);
    let mut a = Matrix::zeros(&f, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = f.random(&mut rng);
            a.set(i, j, x);
            a.set(j, i, f.neg(x));
        }
    }
    let basis = r.add(&cd.mul(&a)?)?;
    Lagrangian::new(space.clone(), &basis)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittClass {
    pub rank: usize,
    pub witt_index: usize,
    pub hyperbolic: bool,
    /// Trace of the Arf invariant (characteristic 2 only).
    pub arf: Option<Elem>,
    /// (positive, negative) counts in integer-signature mode.
    pub signature: Option<(usize, usize)>,
}

pub fn witt_classify(space: &QuadraticSpace) -> Result<WittClass> {
    let f = space.field();
    if f.characteristic() == 2 {
        if space.dim % 2 == 1 {
            return Err(Error::UnsupportedShape("odd-dimensional form in characteristic 2".into()));
        }
        if !space.nondegenerate {
            return Err(Error::DegenerateForm);
        }
        let arf = arf_trace(space);
        let n = space.dim / 2;
        let hyperbolic = arf == 0;
        return Ok(WittClass {
            rank: space.dim,
            witt_index: if hyperbolic { n } else { n - 1 },
            hyperbolic,
            arf: Some(arf),
            signature: None,
        });
    }
    if !space.nondegenerate {
        return Err(Error::DegenerateForm);
    }
    let index = odd_witt_index(space.gram())?;
    Ok(WittClass {
        rank: space.dim,
        witt_index: index,
        hyperbolic: 2 * index == space.dim,
        arf: None,
        signature: None,
    })
}

/// Arf invariant via a symplectic basis, pushed to GF(2) by the absolute trace.
fn arf_trace(space: &QuadraticSpace) -> Elem {
    let f = space.field();
    let mut rest: Vec<Vec<Elem>> = (0..space.dim)
        .map(|i| {
            let mut v = vec![0; space.dim];
            v[i] = 1;
            v
        })
        .collect();
    let mut arf = 0;
    while let Some(e) = rest.first().cloned() {
        rest.remove(0);
        let Some(pos) = rest.iter().position(|v| space.polar(&e, v) != 0) else {
            unreachable!("nondegenerate alternating form");
        };
        let g = rest.remove(pos);
        let s = f.inv(space.polar(&e, &g)).expect("nonzero");
        let fv: Vec<Elem> = g.iter().map(|&x| f.mul(x, s)).collect();
        arf = f.add(arf, f.mul(space.eval(&e), space.eval(&fv)));
        for v in rest.iter_mut() {
            let a = space.polar(v, &fv);
            let b = space.polar(v, &e);
            for k in 0..v.len() {
                v[k] = f.add(v[k], f.add(f.mul(a, e[k]), f.mul(b, fv[k])));
            }
        }
    }
    f.trace(arf)
}

fn bilinear(g: &Matrix, u: &[Elem], v: &[Elem]) -> Elem {
    let f = g.field();
    let gv = g.mul_vec(v).expect("dimension");
    u.iter().zip(&gv).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// Orthogonal basis of a nondegenerate symmetric form in odd characteristic.
fn diagonalize(g: &Matrix) -> Vec<(Vec<Elem>, Elem)> {
    let f = g.field();
    let n = g.rows();
    let mut rest: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let pick = match rest.iter().position(|v| bilinear(g, v, v) != 0) {
            Some(p) => rest.remove(p),
            None => {
                // all remaining vectors isotropic: some pair has b ≠ 0, use their sum
                let mut found = None;
                'outer: for i in 0..rest.len() {
                    for j in i + 1..rest.len() {
                        if bilinear(g, &rest[i], &rest[j]) != 0 {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else { break };
                let s: Vec<Elem> = rest[i].iter().zip(&rest[j]).map(|(&a, &b)| f.add(a, b)).collect();
                rest.remove(i);
                s
            }
        };
        let a = bilinear(g, &pick, &pick);
        let ainv = f.inv(a).expect("anisotropic pick");
        for v in rest.iter_mut() {
            let c = f.mul(bilinear(g, v, &pick), ainv);
            for k in 0..n {
                v[k] = f.sub(v[k], f.mul(c, pick[k]));
            }
        }
        out.push((pick, a));
    }
    out
}

/// Isotropic vector (as coefficients) of a1 x² + a2 y² + a3 z² in odd characteristic.
fn isotropic_ternary(f: &Field, a: [Elem; 3]) -> [Elem; 3] {
    // a1 x² + a2 y² = -a3: scan x, test whether (-a3 - a1 x²)/a2 is a square
    let a2inv = f.inv(a[1]).expect("nonzero");
    for x in f.elements() {
        let rhs = f.mul(f.sub(f.neg(a[2]), f.mul(a[0], f.mul(x, x))), a2inv);
        if let Some(y) = f.sqrt(rhs) {
            return [x, y, 1];
        }
    }
    unreachable!("ternary forms over finite fields are isotropic")
}

fn odd_witt_index(g: &Matrix) -> Result<usize> {
    let f = g.field().clone();
    let n = g.rows();
    let diag = diagonalize(g);
    if diag.len() != n {
        return Err(Error::DegenerateForm);
    }
    let mut entries: Vec<Elem> = diag.iter().map(|d| d.1).collect();
    let mut index = 0;
    while entries.len() >= 3 {
        let a = [entries[0], entries[1], entries[2]];
        let v = isotropic_ternary(&f, a);
        let gm = Matrix::from_fn(&f, 3, 3, |i, j| if i == j { a[i] } else { 0 });
        debug_assert_eq!(bilinear(&gm, &v, &v), 0);
        // hyperbolic partner and the orthogonal complement of the plane
        let w = (0..3)
            .map(|k| {
                let mut e = vec![0; 3];
                e[k] = 1;
                e
            })
            .find(|e| bilinear(&gm, &v, e) != 0)
            .expect("nondegenerate");
        let rows = Matrix::from_rows(&f, &[gm.mul_vec(&v)?, gm.mul_vec(&w)?])?;
        let u = rows.kernel().column(0);
        let a_new = bilinear(&gm, &u, &u);
        entries.drain(0..3);
        entries.insert(0, a_new);
        index += 1;
    }
    if entries.len() == 2 {
        let t = f.neg(f.mul(entries[0], entries[1]));
        if f.is_square(t) {
            index += 1;
        }
    }
    Ok(index)
}

/// Symmetric integer Gram matrix, classified by signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerGram {
    rows: Vec<Vec<i64>>,
}

impl IntegerGram {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<IntegerGram> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("Gram matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::DimensionMismatch("Gram matrix must be symmetric".into()));
                }
            }
        }
        Ok(IntegerGram { rows })
    }

    pub fn diagonal(d: &[i64]) -> IntegerGram {
        let n = d.len();
        IntegerGram {
            rows: (0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// (positive, negative, zero) inertia by exact symmetric elimination.
    pub fn inertia(&self) -> (usize, usize, usize) {
        let n = self.dim();
        let mut a: Vec<Vec<Ratio<i128>>> =
            self.rows.iter().map(|r| r.iter().map(|&x| Ratio::from_integer(x as i128)).collect()).collect();
        let zero = Ratio::from_integer(0);
        let (mut pos, mut neg) = (0, 0);
        let mut k = 0;
        let mut size = n;
        while k < size {
            if a[k][k] == zero {
                if let Some(j) = (k + 1..size).find(|&j| a[j][j] != zero) {
                    a.swap(k, j);
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..size).find(|&j| a[k][j] != zero) {
                    // e_k <- e_k + e_j makes the pivot 2 a_kj
                    for c in 0..size {
                        let t = a[j][c];
                        a[k][c] += t;
                    }
                    for r in 0..size {
                        let t = a[r][j];
                        a[r][k] += t;
                    }
                } else {
                    // row k is zero: move it to the end
                    a.swap(k, size - 1);
                    for row in a.iter_mut() {
                        row.swap(k, size - 1);
                    }
                    size -= 1;
                    continue;
                }
            }
            let p = a[k][k];
            if p > zero {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..size {
                let factor = a[i][k] / p;
                if factor == zero {
                    continue;
                }
                for j in k..size {
                    let t = a[k][j];
                    a[i][j] -= factor * t;
                }
            }
            for i in k + 1..size {
                a[k][i] = zero;
                a[i][k] = zero;
            }
            k += 1;
        }
        (pos, neg, n - pos - neg)
    }
}

pub fn witt_classify_integer(g: &IntegerGram) -> Result<WittClass> {
    let (p, q, z) = g.inertia();
    if z > 0 {
        return Err(Error::DegenerateForm);
    }
    Ok(WittClass {
        rank: p + q,
        witt_index: p.min(q),
        hyperbolic: p == q,
        arf: None,
        signature: Some((p, q)),
    })
}

/// Quadratic form on E ⊗ Λ^m V, Q(Σ e_i⊗u_i) = Σ b_ii Q(u_i) + Σ_{i<j} b_ij b(u_i,u_j).
pub fn tensor_form(gram: &Matrix, m: usize) -> Result<QuadraticSpace> {
    let d = gram.rows();
    let n = binomial(2 * m, m);
    if gram.cols() != d {
        return Err(Error::DimensionMismatch("Gram matrix must be square".into()));
    }
    if d == 0 || n * d > 210 {
        return Err(Error::SizeCap(format!("E of dimension {d} on Λ^{m}: {} coordinates", n * d)));
    }
    let f = gram.field();
    for i in 0..d {
        for j in 0..d {
            if gram.get(i, j) != gram.get(j, i) {
                return Err(Error::DimensionMismatch("Gram matrix must be symmetric".into()));
            }
        }
    }
    if gram.rank() < d {
        return Err(Error::DegenerateForm);
    }
    let square = divided_square_terms(f, m)?;
    let basis = ExteriorBasis::new(2 * m, m);
    let mut entries = Vec::new();
    for i in 0..d {
        let bii = gram.get(i, i);
        for &(a, b, s) in &square {
            entries.push((i * n + a, i * n + b, f.mul(bii, s)));
        }
        for j in i + 1..d {
            let bij = gram.get(i, j);
            if bij == 0 {
                continue;
            }
            // b(u, v) = Σ_I ε(I, I^c) u_I v_{I^c}
            for a in 0..n {
                let c = basis.complement(a).expect("middle degree");
                let mask = basis.mask(a);
                let odd = f.characteristic() != 2 && crate::exterior::shuffle_sign_odd(mask, basis.mask(c));
                let s = if odd { f.neg(1) } else { 1 };
                entries.push((i * n + a, j * n + c, f.mul(bij, s)));
            }
        }
    }
    QuadraticSpace::from_q_table(f, n * d, &entries)
}

/// E ⊗ L inside the tensor space, for L in the divided-square space on Λ^m V.
pub fn tensor_lagrangian(space: Arc<QuadraticSpace>, l: &Lagrangian, d: usize) -> Result<Lagrangian> {
    let n = l.space.dim;
    if space.dim != n * d {
        return Err(Error::DimensionMismatch("tensor dimensions".into()));
    }
    let k = l.dim();
    let basis = Matrix::from_fn(space.field(), n * d, k * d, |row, col| {
        let (bi, r) = (row / n, row % n);
        let (bj, c) = (col / k, col % k);
        if bi == bj {
            l.basis.get(r, c)
        } else {
            0
        }
    });
    Lagrangian::new(space, &basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::ExteriorVector;

    fn span_of_monomials(space: &Arc<QuadraticSpace>, m: usize, pred: impl Fn(u8) -> bool) -> Matrix {
        let basis = ExteriorBasis::new(2 * m, m);
        let cols: Vec<Vec<Elem>> = (0..basis.len())
            .filter(|&i| pred(basis.mask(i)))
            .map(|i| {
                let mut v = vec![0; basis.len()];
                v[i] = 1;
                v
            })
            .collect();
        Matrix::from_columns(space.field(), basis.len(), &cols).unwrap()
    }

    /// Witt index by exhaustive search for totally singular subspaces.
    fn brute_witt_index(space: &QuadraticSpace) -> usize {
        let f = space.field();
        let n = space.dim();
        let q = f.order() as usize;
        let vectors: Vec<Vec<Elem>> = (1..q.pow(n as u32))
            .map(|mut c| {
                (0..n)
                    .map(|_| {
                        let d = (c % q) as Elem;
                        c /= q;
                        d
                    })
                    .collect()
            })
            .filter(|v: &Vec<Elem>| space.eval(v) == 0)
            .collect();
        fn extend(space: &QuadraticSpace, chosen: &mut Vec<Vec<Elem>>, cands: &[Vec<Elem>], best: &mut usize) {
            *best = (*best).max(chosen.len());
            for (i, v) in cands.iter().enumerate() {
                if chosen.iter().all(|u| space.polar(u, v) == 0) {
                    let mut m = chosen.clone();
                    m.push(v.clone());
                    let mat = Matrix::from_columns(space.field(), space.dim(), &m).unwrap();
                    if mat.rank() == m.len() {
                        chosen.push(v.clone());
                        extend(space, chosen, &cands[i + 1..], best);
                        chosen.pop();
                    }
                }
            }
        }
        let mut best = 0;
        extend(space, &mut Vec::new(), &vectors, &mut best);
        best
    }

    #[test]
    fn hyperbolic_examples() {
        let f = Field::prime(5).unwrap();
        let h = QuadraticSpace::hyperbolic(&f, 3).unwrap();
        let x = Matrix::from_fn(&f, 6, 3, |i, j| (i == j) as Elem);
        assert!(is_lagrangian(&x, &h));
        let bad = Matrix::from_fn(&f, 6, 3, |i, j| ((j == 0 && i == 0) || (j == 1 && i == 3) || (j == 2 && i == 1)) as Elem);
        assert!(!is_lagrangian(&bad, &h));
        let c = witt_classify(&h).unwrap();
        assert_eq!(c.witt_index, 3);
        assert!(c.hyperbolic);
        let f2 = Field::gf2k(2).unwrap();
        let c = witt_classify(&QuadraticSpace::hyperbolic(&f2, 4).unwrap()).unwrap();
        assert!(c.hyperbolic);
        assert_eq!(c.arf, Some(0));
    }

    #[test]
    fn anisotropic_plane_over_gf3() {
        let f = Field::prime(3).unwrap();
        let s = QuadraticSpace::from_q_table(&f, 2, &[(0, 0, 1), (1, 1, 1)]).unwrap();
        let c = witt_classify(&s).unwrap();
        assert_eq!(c.witt_index, 0);
        assert!(!c.hyperbolic);
        assert_eq!(brute_witt_index(&s), 0);
    }

    #[test]
    fn char2_special_cases() {
        let f = Field::gf2();
        let odd = QuadraticSpace::from_q_table(&f, 3, &[(0, 1, 1), (2, 2, 1)]).unwrap();
        assert!(matches!(witt_classify(&odd), Err(Error::UnsupportedShape(_))));
        let degenerate = QuadraticSpace::from_q_table(&f, 2, &[(0, 0, 1)]).unwrap();
        assert_eq!(witt_classify(&degenerate), Err(Error::DegenerateForm));
        // x² + xy + y² is anisotropic over GF(2)
        let an = QuadraticSpace::from_q_table(&f, 2, &[(0, 0, 1), (0, 1, 1), (1, 1, 1)]).unwrap();
        let c = witt_classify(&an).unwrap();
        assert!(!c.hyperbolic);
        assert_eq!(c.arf, Some(1));
        // but becomes hyperbolic over GF(4)
        let f4 = Field::gf2k(2).unwrap();
        let an4 = QuadraticSpace::from_q_table(&f4, 2, &[(0, 0, 1), (0, 1, 1), (1, 1, 1)]).unwrap();
        assert!(witt_classify(&an4).unwrap().hyperbolic);
    }

    #[test]
    fn witt_index_matches_brute_force() {
        let mut rng = SeededRng::new(17);
        for (p, dim) in [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (2, 2), (2, 4)] {
            let f = Field::prime(p).unwrap();
            let mut tested = 0;
            while tested < 6 {
                let mut entries = Vec::new();
                for i in 0..dim {
                    for j in i..dim {
                        entries.push((i, j, f.random(&mut rng)));
                    }
                }
                let s = QuadraticSpace::from_q_table(&f, dim, &entries).unwrap();
                if !s.is_nondegenerate() {
                    continue;
                }
                assert_eq!(witt_classify(&s).unwrap().witt_index, brute_witt_index(&s), "{entries:?}");
                tested += 1;
            }
        }
    }

    #[test]
    fn hyperbolic_plus_anisotropic_blocks() {
        let f = Field::prime(3).unwrap();
        // H ⟂ (x² + y²) in dimension 4, and H ⟂ <1> in dimension 3
        let s = QuadraticSpace::from_q_table(&f, 4, &[(0, 1, 1), (2, 2, 1), (3, 3, 1)]).unwrap();
        assert_eq!(witt_classify(&s).unwrap().witt_index, 1);
        assert_eq!(brute_witt_index(&s), 1);
        let s = QuadraticSpace::from_q_table(&f, 3, &[(0, 1, 1), (2, 2, 1)]).unwrap();
        assert_eq!(witt_classify(&s).unwrap().witt_index, 1);
    }

    #[test]
    fn integer_signatures() {
        let c = witt_classify_integer(&IntegerGram::diagonal(&[2, 2])).unwrap();
        assert_eq!(c.signature, Some((2, 0)));
        assert!(!c.hyperbolic);
        let h = IntegerGram::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let c = witt_classify_integer(&h).unwrap();
        assert_eq!(c.signature, Some((1, 1)));
        assert!(c.hyperbolic);
        let g = IntegerGram::new(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(witt_classify_integer(&g), Err(Error::DegenerateForm));
        let g = IntegerGram::new(vec![vec![1, 2, 3], vec![2, 1, 4], vec![3, 4, 1]]).unwrap();
        let (p, q, z) = g.inertia();
        assert_eq!((p, q, z), (1, 2, 0));
    }

    #[test]
    fn gram_matches_polarization() {
        let f = Field::prime(5).unwrap();
        let s = QuadraticSpace::from_q_table(&f, 3, &[(0, 0, 2), (0, 2, 3), (1, 2, 1), (1, 1, 4)]).unwrap();
        let e = |i: usize| {
            let mut v = vec![0; 3];
            v[i] = 1;
            v
        };
        for i in 0..3 {
            for j in 0..3 {
                let sum: Vec<Elem> = e(i).iter().zip(&e(j)).map(|(&a, &b)| f.add(a, b)).collect();
                let pol = f.sub(f.sub(s.eval(&sum), s.eval(&e(i))), s.eval(&e(j)));
                assert_eq!(s.gram().get(i, j), pol);
            }
        }
    }

    #[test]
    fn lambda3_fibers_and_chart() {
        let f = Field::gf2();
        let space = Arc::new(QuadraticSpace::divided_square(&f, 3).unwrap());
        let w0 = Lagrangian::new(space.clone(), &span_of_monomials(&space, 3, |m| m & 1 != 0)).unwrap();
        let w1 = Lagrangian::new(space.clone(), &span_of_monomials(&space, 3, |m| m & 2 != 0)).unwrap();
        let comp = Lagrangian::new(space.clone(), &span_of_monomials(&space, 3, |m| m & 1 == 0)).unwrap();
        assert_eq!(intersection_dim(&w0, &w0).unwrap(), 10);
        assert_eq!(intersection_dim(&w0, &w1).unwrap(), 4);
        assert_eq!(family_parity(&w1, &w0).unwrap(), 0);
        assert_eq!(random_lagrangian(&w0, &w0, Family::Same, 1), Err(Error::NotComplementary));
        for seed in 0..100 {
            let l = random_lagrangian(&w0, &comp, Family::Opposite, seed).unwrap();
            assert!(is_lagrangian(l.basis(), &space));
            assert_eq!(family_parity(&l, &w0).unwrap(), 1);
            let l = random_lagrangian(&w0, &comp, Family::Same, seed).unwrap();
            assert_eq!(family_parity(&l, &w0).unwrap(), 0);
        }
        let a = random_lagrangian(&w0, &comp, Family::Opposite, 7).unwrap();
        let b = random_lagrangian(&w0, &comp, Family::Opposite, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn same_family_samples_are_mutually_even() {
        let f = Field::gf2k(2).unwrap();
        let space = Arc::new(QuadraticSpace::divided_square(&f, 3).unwrap());
        let w0 = Lagrangian::new(space.clone(), &span_of_monomials(&space, 3, |m| m & 1 != 0)).unwrap();
        let comp = Lagrangian::new(space.clone(), &span_of_monomials(&space, 3, |m| m & 1 == 0)).unwrap();
        let samples: Vec<_> =
            (0..20).map(|s| random_lagrangian(&w0, &comp, Family::Same, s).unwrap()).collect();
        for a in &samples {
            for b in &samples {
                assert_eq!(intersection_dim(a, b).unwrap() % 2, 0);
            }
        }
    }

    #[test]
    fn tensor_form_examples() {
        let f3 = Field::prime(3).unwrap();
        let one = Matrix::identity(&f3, 1);
        let t = tensor_form(&one, 4).unwrap();
        assert_eq!(t, QuadraticSpace::divided_square(&f3, 4).unwrap());
        let id2 = Matrix::identity(&f3, 2);
        let t = Arc::new(tensor_form(&id2, 4).unwrap());
        assert!(t.is_nondegenerate());
        let q = Arc::new(QuadraticSpace::divided_square(&f3, 4).unwrap());
        let l = Lagrangian::new(q.clone(), &span_of_monomials(&q, 4, |m| m & 1 != 0)).unwrap();
        assert!(tensor_lagrangian(t, &l, 2).is_ok());
        assert!(matches!(tensor_form(&Matrix::identity(&f3, 4), 4), Err(Error::SizeCap(_))));
        // Q on the tensor space agrees with the defining formula
        let g = Matrix::from_rows(&f3, &[vec![1, 2], vec![2, 2]]).unwrap();
        let t = tensor_form(&g, 4).unwrap();
        let mut rng = SeededRng::new(4);
        for _ in 0..20 {
            let u: Vec<Elem> = (0..70).map(|_| f3.random(&mut rng)).collect();
            let v: Vec<Elem> = (0..70).map(|_| f3.random(&mut rng)).collect();
            let eu = ExteriorVector::new(&f3, 8, 4, u.clone()).unwrap();
            let ev = ExteriorVector::new(&f3, 8, 4, v.clone()).unwrap();
            let expect = f3.add(
                f3.add(
                    crate::exterior::divided_square(&eu).unwrap(),
                    f3.mul(2, crate::exterior::divided_square(&ev).unwrap()),
                ),
                f3.mul(2, crate::exterior::assoc_bilinear(&eu, &ev).unwrap()),
            );
            let uv: Vec<Elem> = u.into_iter().chain(v).collect();
            assert_eq!(t.eval(&uv), expect);
        }
    }
}
