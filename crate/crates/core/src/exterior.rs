//! Exterior powers of a vector space of dimension at most 8.
//!
//! A multi-index is stored as a bitmask; the basis of Λ^k V is the list of
//! k-subsets in lexicographic order of their increasing tuples.

use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldSpec};
use crate::linalg::{Gf2RowSpace, Matrix};

pub const MAX_DIM: usize = 8;

/// Strictly increasing tuple of indices in `0..dim_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(indices: &[usize], dim_v: usize) -> Result<MultiIndex> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= dim_v) {
            return Err(Error::DimensionMismatch(format!("invalid multi-index {indices:?}")));
        }
        Ok(MultiIndex(indices.to_vec()))
    }

    pub fn from_mask(mask: u8) -> MultiIndex {
        MultiIndex((0..8).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn mask(&self) -> u8 {
        self.0.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Lexicographically ordered basis of Λ^k V.
#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    dim: usize,
    degree: usize,
    masks: Vec<u8>,
    index: Vec<u16>,
}

const ABSENT: u16 = u16::MAX;

impl ExteriorBasis {
    pub fn new(dim: usize, degree: usize) -> ExteriorBasis {
        assert!(dim <= MAX_DIM && degree <= dim);
        let mut masks = Vec::new();
        fn rec(start: usize, left: usize, dim: usize, mask: u8, out: &mut Vec<u8>) {
            if left == 0 {
                out.push(mask);
                return;
            }
            for i in start..=dim - left {
                rec(i + 1, left - 1, dim, mask | 1 << i, out);
            }
        }
        rec(0, degree, dim, 0, &mut masks);
        let mut index = vec![ABSENT; 256];
        for (i, &m) in masks.iter().enumerate() {
            index[m as usize] = i as u16;
        }
        ExteriorBasis { dim, degree, masks, index }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, i: usize) -> u8 {
        self.masks[i]
    }

    pub fn masks(&self) -> &[u8] {
        &self.masks
    }

    pub fn index_of(&self, mask: u8) -> Option<usize> {
        match self.index[mask as usize] {
            ABSENT => None,
            i => Some(i as usize),
        }
    }

    pub fn multi_index(&self, i: usize) -> MultiIndex {
        MultiIndex::from_mask(self.masks[i])
    }

    /// Basis index of the complementary multi-index.
    pub fn complement(&self, i: usize) -> Option<usize> {
        let full = if self.dim == 8 { 0xff } else { (1u8 << self.dim) - 1 };
        ExteriorBasis::new(self.dim, self.dim - self.degree).index_of(full & !self.masks[i])
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// True when e_a ∧ e_b = -e_{a|b} (odd number of inversions); a, b disjoint.
#[inline]
pub fn shuffle_sign_odd(a: u8, b: u8) -> bool {
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inv += (a as u32 >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    inv & 1 == 1
}

fn signed(field: &Field, x: Elem, odd: bool) -> Elem {
    if odd {
        field.neg(x)
    } else {
        x
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorVector {
    field: Field,
    dim_v: usize,
    degree: usize,
    coeffs: Vec<Elem>,
}

#[derive(Serialize, Deserialize)]
struct ExteriorVectorJson {
    dim_v: usize,
    degree: usize,
    field: FieldSpec,
    coeffs: Vec<String>,
}

impl ExteriorVector {
    pub fn new(field: &Field, dim_v: usize, degree: usize, coeffs: Vec<Elem>) -> Result<Self> {
        if dim_v > MAX_DIM {
            return Err(Error::DimensionMismatch(format!("dim V = {dim_v} exceeds {MAX_DIM}")));
        }
        if degree > dim_v {
            return Err(Error::DegreeOverflow(degree, dim_v));
        }
        if coeffs.len() != binomial(dim_v, degree) {
            return Err(Error::DimensionMismatch("coefficient count".into()));
        }
        if coeffs.iter().any(|&c| c as u64 >= field.order()) {
            return Err(Error::InvalidField("coefficient outside the field".into()));
        }
        Ok(ExteriorVector { field: field.clone(), dim_v, degree, coeffs })
    }

    pub fn zero(field: &Field, dim_v: usize, degree: usize) -> Result<Self> {
        ExteriorVector::new(field, dim_v, degree, vec![0; binomial(dim_v, degree)])
    }

    /// The monomial e_{i1...ik}.
    pub fn monomial(field: &Field, dim_v: usize, indices: &[usize]) -> Result<Self> {
        let mi = MultiIndex::new(indices, dim_v)?;
        let mut v = ExteriorVector::zero(field, dim_v, indices.len())?;
        let basis = ExteriorBasis::new(dim_v, indices.len());
        let i = basis.index_of(mi.mask()).expect("valid multi-index");
        v.coeffs[i] = 1;
        Ok(v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn basis(&self) -> ExteriorBasis {
        ExteriorBasis::new(self.dim_v, self.degree)
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Elem {
        self.basis().index_of(idx.mask()).map_or(0, |i| self.coeffs[i])
    }

    fn compatible(&self, other: &ExteriorVector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::IncompatibleFields(format!("{} vs {}", self.field, other.field)));
        }
        if self.dim_v != other.dim_v {
            return Err(Error::DimensionMismatch("different ambient dimensions".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ExteriorVector) -> Result<ExteriorVector> {
        self.compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch("different degrees".into()));
        }
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(ExteriorVector { coeffs, ..self.clone() })
    }

    pub fn sub(&self, other: &ExteriorVector) -> Result<ExteriorVector> {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: Elem) -> ExteriorVector {
        let f = &self.field;
        ExteriorVector { coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn wedge(&self, other: &ExteriorVector) -> Result<ExteriorVector> {
        self.compatible(other)?;
        let deg = self.degree + other.degree;
        if deg > self.dim_v {
            return Err(Error::DegreeOverflow(deg, self.dim_v));
        }
        let f = &self.field;
        let (ba, bb) = (self.basis(), other.basis());
        let out_basis = ExteriorBasis::new(self.dim_v, deg);
        let char2 = f.characteristic() == 2;
        let mut out = vec![0; out_basis.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let ma = ba.mask(i);
            for (j, &b) in other.coeffs.iter().enumerate() {
                let mb = bb.mask(j);
                if b == 0 || ma & mb != 0 {
                    continue;
                }
                let k = out_basis.index_of(ma | mb).expect("degree matches");
                let mut t = f.mul(a, b);
                if !char2 {
                    t = signed(f, t, shuffle_sign_odd(ma, mb));
                }
                out[k] = f.add(out[k], t);
            }
        }
        Ok(ExteriorVector { field: f.clone(), dim_v: self.dim_v, degree: deg, coeffs: out })
    }

    /// Coefficient of e_{01...} under the fixed orientation of Λ^{dim V} V.
    pub fn orientation_value(&self) -> Result<Elem> {
        if self.degree != self.dim_v {
            return Err(Error::DimensionMismatch("not a top-degree vector".into()));
        }
        Ok(self.coeffs[0])
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = ExteriorVectorJson {
            dim_v: self.dim_v,
            degree: self.degree,
            field: self.field.spec(),
            coeffs: self.coeffs.iter().map(|&c| self.field.format(c)).collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ExteriorVector> {
        let j: ExteriorVectorJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let field = Field::from_spec(j.field)?;
        let coeffs = j.coeffs.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>()?;
        ExteriorVector::new(&field, j.dim_v, j.degree, coeffs)
    }
}

fn check_middle(u: &ExteriorVector) -> Result<()> {
    let m = u.degree;
    if u.dim_v != 2 * m {
        return Err(Error::DimensionMismatch(format!("degree {m} is not half of dim V = {}", u.dim_v)));
    }
    let p = u.field.characteristic();
    if m % 2 == 1 && p != 2 {
        return Err(Error::OddDegreeWrongCharacteristic(p));
    }
    Ok(())
}

/// Sparse upper-triangular table of the divided square on Λ^m V, dim V = 2m:
/// entries (index(I), index(I^c), ε(I, I^c)) for the multi-indices I containing 0.
pub fn divided_square_terms(field: &Field, m: usize) -> Result<Vec<(usize, usize, Elem)>> {
    let p = field.characteristic();
    if m % 2 == 1 && p != 2 {
        return Err(Error::OddDegreeWrongCharacteristic(p));
    }
    let dim = 2 * m;
    if dim > MAX_DIM || m == 0 {
        return Err(Error::DimensionMismatch(format!("dim V = {dim}")));
    }
    let basis = ExteriorBasis::new(dim, m);
    let full = if dim == 8 { 0xffu8 } else { (1u8 << dim) - 1 };
    let mut terms = Vec::new();
    for (i, &mask) in basis.masks().iter().enumerate() {
        if mask & 1 == 0 {
            continue;
        }
        let c = full & !mask;
        let j = basis.index_of(c).expect("complement has degree m");
        terms.push((i, j, signed(field, 1, p != 2 && shuffle_sign_odd(mask, c))));
    }
    Ok(terms)
}

/// Q(u) = Σ_{I<J disjoint} ε(I,J) u_I u_J.
pub fn divided_square(u: &ExteriorVector) -> Result<Elem> {
    check_middle(u)?;
    let f = &u.field;
    let terms = divided_square_terms(f, u.degree)?;
    Ok(terms.iter().fold(0, |acc, &(i, j, s)| {
        f.add(acc, f.mul(s, f.mul(u.coeffs[i], u.coeffs[j])))
    }))
}

/// b(u, v) = orientation of u ∧ v.
pub fn assoc_bilinear(u: &ExteriorVector, v: &ExteriorVector) -> Result<Elem> {
    check_middle(u)?;
    check_middle(v)?;
    u.compatible(v)?;
    if u.degree != v.degree {
        return Err(Error::DimensionMismatch("different degrees".into()));
    }
    u.wedge(v)?.orientation_value()
}

/// Matrix of α ↦ ξ ∧ α from Λ^k V to Λ^{k+deg ξ} V.
pub fn mult_matrix(xi: &ExteriorVector, k: usize) -> Result<Matrix> {
    let dim = xi.dim_v;
    let out_deg = k + xi.degree;
    if out_deg > dim {
        return Err(Error::DegreeOverflow(out_deg, dim));
    }
    let src = ExteriorBasis::new(dim, k);
    let mut columns = Vec::with_capacity(src.len());
    for j in 0..src.len() {
        let e = ExteriorVector::monomial(&xi.field, dim, src.multi_index(j).indices())?;
        columns.push(xi.wedge(&e)?.coeffs);
    }
    Matrix::from_columns(&xi.field, binomial(dim, out_deg), &columns)
}

/// Matrix of the contraction α ↦ ι_ξ α from Λ^k V to Λ^{k-1} V, for ξ of
/// degree 1 read in the dual basis.
pub fn contraction_matrix(xi: &ExteriorVector, k: usize) -> Result<Matrix> {
    let dim = xi.dim_v;
    if xi.degree != 1 {
        return Err(Error::DimensionMismatch("contraction needs a degree-1 vector".into()));
    }
    if k == 0 || k > dim {
        return Err(Error::DegreeOverflow(k, dim));
    }
    let f = &xi.field;
    let src = ExteriorBasis::new(dim, k);
    let tgt = ExteriorBasis::new(dim, k - 1);
    let mut out = Matrix::zeros(f, tgt.len(), src.len());
    for j in 0..src.len() {
        let mask = src.mask(j);
        for i in 0..dim {
            if mask >> i & 1 == 0 || xi.coeffs[i] == 0 {
                continue;
            }
            let below = (mask & ((1u8 << i) - 1)).count_ones();
            let row = tgt.index_of(mask & !(1 << i)).expect("basis element");
            out.set(row, j, signed(f, xi.coeffs[i], below % 2 == 1));
        }
    }
    Ok(out)
}

/// Induced matrix Λ^m g on Λ^m V: entry (I, J) is the minor det g[I, J].
pub fn induced_matrix(g: &Matrix, m: usize) -> Result<Matrix> {
    let n = g.rows();
    if g.cols() != n || n > MAX_DIM || m > n {
        return Err(Error::DimensionMismatch("induced matrix needs a square matrix".into()));
    }
    let basis = ExteriorBasis::new(n, m);
    let idx: Vec<Vec<usize>> = (0..basis.len()).map(|i| basis.multi_index(i).indices().to_vec()).collect();
    let mut out = Matrix::zeros(g.field(), basis.len(), basis.len());
    for (a, ia) in idx.iter().enumerate() {
        let rows = g.select_rows(ia);
        for (b, ib) in idx.iter().enumerate() {
            out.set(a, b, rows.select_columns(ib).det()?);
        }
    }
    Ok(out)
}

/// Coefficients of a quadratic form on an N-dimensional space, indexed by
/// pairs i <= j in row-major upper-triangular order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticCoeffs {
    n: usize,
    coeffs: Vec<Elem>,
}

impl QuadraticCoeffs {
    pub fn position(n: usize, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * n - i * (i + 1) / 2 + j
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.coeffs[QuadraticCoeffs::position(self.n, i, j)]
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub m: usize,
    pub unknowns: usize,
    pub conditions: usize,
    pub kernel_dim: usize,
    pub generator: Option<QuadraticCoeffs>,
    /// Whether the generator equals the divided square's coefficient vector.
    pub matches_divided_square: bool,
}

impl UniquenessReport {
    /// Generator coefficient at the pair (I, J) of multi-indices.
    pub fn generator_at(&self, i: &MultiIndex, j: &MultiIndex) -> Option<Elem> {
        let basis = ExteriorBasis::new(2 * self.m, self.m);
        let a = basis.index_of(i.mask())?;
        let b = basis.index_of(j.mask())?;
        self.generator.as_ref().map(|g| g.get(a, b))
    }
}

/// Quadratic forms on Λ^m V over GF(2) vanishing on every decomposable x ∧ w
/// with x ∈ V, w ∈ Λ^{m-1} V.
///
/// A form q(x ∧ w) has degree at most 2 in the coordinates of x and of w, so
/// over GF(2) it vanishes identically iff it vanishes for x and w of weight
/// at most two. Conditions are therefore taken over x in {e_i, e_i + e_j} and
/// w in {e_A, e_A + e_B}.
pub fn divided_square_uniqueness(m: usize) -> Result<UniquenessReport> {
    if !(1..=4).contains(&m) {
        return Err(Error::UnsupportedShape(format!("m = {m}")));
    }
    let dim = 2 * m;
    let top = ExteriorBasis::new(dim, m);
    let low = ExteriorBasis::new(dim, m - 1);
    let n = top.len();
    let unknowns = n * (n + 1) / 2;

    let mut xs: Vec<Vec<u8>> = (0..dim).map(|i| vec![1u8 << i]).collect();
    for i in 0..dim {
        for j in i + 1..dim {
            xs.push(vec![1 << i, 1 << j]);
        }
    }
    let mut ws: Vec<Vec<u8>> = low.masks().iter().map(|&a| vec![a]).collect();
    for a in 0..low.len() {
        for b in a + 1..low.len() {
            ws.push(vec![low.mask(a), low.mask(b)]);
        }
    }

    let mut seen: HashSet<u128> = HashSet::new();
    let mut space = Gf2RowSpace::new(unknowns);
    let mut conditions = 0;
    for x in &xs {
        for w in &ws {
            let mut v: u128 = 0;
            for &xi in x {
                for &wa in w {
                    if xi & wa == 0 {
                        v ^= 1u128 << top.index_of(xi | wa).expect("degree m");
                    }
                }
            }
            if v == 0 || !seen.insert(v) {
                continue;
            }
            conditions += 1;
            let support: Vec<usize> = (0..n).filter(|&i| v >> i & 1 == 1).collect();
            let mut bits = Vec::with_capacity(support.len() * (support.len() + 1) / 2);
            for (a, &s) in support.iter().enumerate() {
                for &t in &support[a..] {
                    bits.push(QuadraticCoeffs::position(n, s, t));
                }
            }
            space.insert_bits(&bits);
        }
    }

    let f2 = Field::gf2();
    let kernel = space.kernel(&f2);
    let kernel_dim = kernel.cols();
    let generator = (kernel_dim == 1).then(|| QuadraticCoeffs { n, coeffs: kernel.column(0) });
    let mut expected = vec![0; unknowns];
    for (i, j, _) in divided_square_terms(&f2, m)? {
        expected[QuadraticCoeffs::position(n, i, j)] = 1;
    }
    let matches_divided_square = generator.as_ref().is_some_and(|g| g.coeffs == expected);
    Ok(UniquenessReport { m, unknowns, conditions, kernel_dim, generator, matches_divided_square })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;

    fn mono(f: &Field, dim: usize, idx: &[usize]) -> ExteriorVector {
        ExteriorVector::monomial(f, dim, idx).unwrap()
    }

    fn random_vec(f: &Field, dim: usize, deg: usize, rng: &mut SeededRng) -> ExteriorVector {
        let c = (0..binomial(dim, deg)).map(|_| f.random(rng)).collect();
        ExteriorVector::new(f, dim, deg, c).unwrap()
    }

    #[test]
    fn basis_order_is_lexicographic() {
        let b = ExteriorBasis::new(6, 3);
        assert_eq!(b.len(), 20);
        assert_eq!(b.multi_index(0).indices(), &[0, 1, 2]);
        assert_eq!(b.multi_index(1).indices(), &[0, 1, 3]);
        assert_eq!(b.multi_index(19).indices(), &[3, 4, 5]);
    }

    #[test]
    fn wedge_examples() {
        let f = Field::prime(5).unwrap();
        let w = mono(&f, 4, &[0, 1]).wedge(&mono(&f, 4, &[2, 3])).unwrap();
        assert_eq!(w, mono(&f, 4, &[0, 1, 2, 3]));
        assert!(mono(&f, 4, &[0, 1]).wedge(&mono(&f, 4, &[1, 2])).unwrap().is_zero());
        let g = Field::gf2();
        let w = mono(&g, 6, &[0, 1, 3]).wedge(&mono(&g, 6, &[2, 4, 5])).unwrap();
        assert_eq!(w, mono(&g, 6, &[0, 1, 2, 3, 4, 5]));
        // the same shuffle is odd: sign shows up in odd characteristic
        let w = mono(&f, 6, &[0, 1, 3]).wedge(&mono(&f, 6, &[2, 4, 5])).unwrap();
        assert_eq!(w.coeffs()[0], 4);
        assert_eq!(
            mono(&f, 4, &[0, 1, 2]).wedge(&mono(&f, 4, &[0, 1])),
            Err(Error::DegreeOverflow(5, 4))
        );
    }

    #[test]
    fn divided_square_examples() {
        let f = Field::gf2();
        assert_eq!(divided_square(&mono(&f, 6, &[0, 1, 3])).unwrap(), 0);
        let u = mono(&f, 6, &[0, 1, 3]).add(&mono(&f, 6, &[2, 4, 5])).unwrap();
        assert_eq!(divided_square(&u).unwrap(), 1);
        for p in [2, 3, 5] {
            let f = Field::prime(p).unwrap();
            let u = mono(&f, 8, &[0, 1, 2, 3]).add(&mono(&f, 8, &[4, 5, 6, 7])).unwrap();
            assert_eq!(divided_square(&u).unwrap(), 1);
            let b = assoc_bilinear(&mono(&f, 8, &[0, 1, 2, 3]), &mono(&f, 8, &[4, 5, 6, 7])).unwrap();
            assert_eq!(b, 1);
        }
        let f3 = Field::prime(3).unwrap();
        assert_eq!(
            divided_square(&mono(&f3, 6, &[0, 1, 2])),
            Err(Error::OddDegreeWrongCharacteristic(3))
        );
    }

    #[test]
    fn bilinear_examples() {
        let f = Field::gf2();
        assert_eq!(assoc_bilinear(&mono(&f, 6, &[0, 1, 3]), &mono(&f, 6, &[2, 4, 5])).unwrap(), 1);
        assert_eq!(assoc_bilinear(&mono(&f, 6, &[0, 1, 3]), &mono(&f, 6, &[0, 1, 3])).unwrap(), 0);
    }

    #[test]
    fn polarization_identity() {
        let mut rng = SeededRng::new(11);
        for (f, m) in [(Field::gf2k(3).unwrap(), 3), (Field::prime(7).unwrap(), 4), (Field::gf2k(2).unwrap(), 4)] {
            for _ in 0..500 / 3 + 1 {
                let u = random_vec(&f, 2 * m, m, &mut rng);
                let v = random_vec(&f, 2 * m, m, &mut rng);
                let lhs = assoc_bilinear(&u, &v).unwrap();
                let q = |x: &ExteriorVector| divided_square(x).unwrap();
                let rhs = f.sub(f.sub(q(&u.add(&v).unwrap()), q(&u)), q(&v));
                assert_eq!(lhs, rhs);
                let c = f.random(&mut rng);
                assert_eq!(q(&u.scale(c)), f.mul(f.mul(c, c), q(&u)));
            }
        }
    }

    #[test]
    fn wedge_associative_and_graded_commutative() {
        let mut rng = SeededRng::new(5);
        let f = Field::prime(5).unwrap();
        for t in 0..500 {
            let (a, b, c) = (1 + t % 2, 1 + t % 3, 1 + (t / 3) % 2);
            let u = random_vec(&f, 7, a, &mut rng);
            let v = random_vec(&f, 7, b, &mut rng);
            let w = random_vec(&f, 7, c, &mut rng);
            let l = u.wedge(&v).unwrap().wedge(&w).unwrap();
            let r = u.wedge(&v.wedge(&w).unwrap()).unwrap();
            assert_eq!(l, r);
            let uv = u.wedge(&v).unwrap();
            let vu = v.wedge(&u).unwrap();
            let sign = if (a * b) % 2 == 1 { f.neg(1) } else { 1 };
            assert_eq!(uv, vu.scale(sign));
        }
    }

    #[test]
    fn mult_matrix_ranks() {
        let f = Field::gf2k(4).unwrap();
        let e0 = mono(&f, 6, &[0]);
        let m = mult_matrix(&e0, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (20, 15));
        assert_eq!(m.rank(), 10);
        assert!(mult_matrix(&ExteriorVector::zero(&f, 6, 1).unwrap(), 2).unwrap().is_zero());
        let mut rng = SeededRng::new(3);
        for _ in 0..20 {
            let xi = random_vec(&f, 6, 1, &mut rng);
            if xi.is_zero() {
                continue;
            }
            let m = mult_matrix(&xi, 2).unwrap();
            assert_eq!(m.rank(), 10);
            assert_eq!(m.kernel().cols(), 5);
        }
    }

    #[test]
    fn fiber_is_isotropic() {
        let f = Field::gf2k(2).unwrap();
        let mut rng = SeededRng::new(8);
        for _ in 0..100 {
            let xi = random_vec(&f, 6, 1, &mut rng);
            if xi.is_zero() {
                continue;
            }
            let m = mult_matrix(&xi, 2).unwrap();
            for _ in 0..5 {
                let c: Vec<Elem> = (0..15).map(|_| f.random(&mut rng)).collect();
                let v = ExteriorVector::new(&f, 6, 3, m.mul_vec(&c).unwrap()).unwrap();
                assert_eq!(divided_square(&v).unwrap(), 0);
            }
        }
    }

    #[test]
    fn determinant_scaling_law() {
        let mut rng = SeededRng::new(21);
        for (k, m) in [(2, 3), (3, 4), (1, 3)] {
            let f = Field::gf2k(k).unwrap();
            let mut done = 0;
            while done < 30 {
                let g = Matrix::from_fn(&f, 2 * m, 2 * m, |_, _| f.random(&mut rng));
                let d = g.det().unwrap();
                if d == 0 {
                    continue;
                }
                let lg = induced_matrix(&g, m).unwrap();
                let u = random_vec(&f, 2 * m, m, &mut rng);
                let gu = ExteriorVector::new(&f, 2 * m, m, lg.mul_vec(u.coeffs()).unwrap()).unwrap();
                assert_eq!(divided_square(&gu).unwrap(), f.mul(d, divided_square(&u).unwrap()));
                done += 1;
            }
        }
    }

    #[test]
    fn uniqueness_m3() {
        let r = divided_square_uniqueness(3).unwrap();
        assert_eq!(r.unknowns, 210);
        assert_eq!(r.kernel_dim, 1);
        assert!(r.matches_divided_square);
        let a = MultiIndex::new(&[0, 1, 3], 6).unwrap();
        let b = MultiIndex::new(&[2, 4, 5], 6).unwrap();
        let c = MultiIndex::new(&[0, 2, 4], 6).unwrap();
        assert_eq!(r.generator_at(&a, &b), Some(1));
        assert_eq!(r.generator_at(&a, &c), Some(0));
    }

    #[test]
    fn quadratic_positions_are_dense() {
        let n = 7;
        let mut seen = vec![false; n * (n + 1) / 2];
        for i in 0..n {
            for j in i..n {
                let p = QuadraticCoeffs::position(n, i, j);
                assert!(!seen[p]);
                seen[p] = true;
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }

    #[test]
    fn json_roundtrip() {
        let f = Field::gf2k(2).unwrap();
        let mut rng = SeededRng::new(1);
        let u = random_vec(&f, 6, 3, &mut rng);
        assert_eq!(ExteriorVector::from_json(&u.to_json()).unwrap(), u);
    }
}
