//! Graded free resolutions: Schreyer frames, minimization, Betti tables and
//! lifting of chain maps.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::groebner::Ideal;
use crate::linalg::{BitMatrix, Matrix};
use crate::module::{divide, module_groebner, schreyer_syzygies, sort_for_schreyer, ModVec, ModuleOrder};
use crate::poly::{Monomial, Polynomial, Ring};

type PolyMatrix = Vec<Vec<Polynomial>>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedFreeModule {
    degrees: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(degrees: Vec<i64>) -> GradedFreeModule {
        GradedFreeModule { degrees }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Every degree multiplied by `p`.
    pub fn scaled(&self, p: i64) -> GradedFreeModule {
        GradedFreeModule { degrees: self.degrees.iter().map(|d| d * p).collect() }
    }
}

/// Homogeneous map between graded free modules; `entries[i][j]` is the
/// coefficient of target generator i in the image of source generator j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    ring: Ring,
    source: GradedFreeModule,
    target: GradedFreeModule,
    entries: PolyMatrix,
}

impl GradedMap {
    pub fn new(ring: &Ring, source: GradedFreeModule, target: GradedFreeModule, entries: PolyMatrix) -> Result<Self> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::DimensionMismatch("map entries vs module ranks".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.ring() != ring {
                    return Err(Error::IncompatibleFields("entry from another ring".into()));
                }
                if e.is_zero() {
                    continue;
                }
                let want = source.degrees[j] - target.degrees[i];
                if !e.is_homogeneous() || e.degree().map(|d| d as i64) != Some(want) {
                    return Err(Error::NonHomogeneous);
                }
            }
        }
        Ok(GradedMap { ring: ring.clone(), source, target, entries })
    }

    /// Map R^n -> target given by columns; source degrees are inferred, so
    /// every column must be nonzero.
    pub fn from_columns(ring: &Ring, target: GradedFreeModule, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        let mut degrees = Vec::with_capacity(columns.len());
        for col in &columns {
            let (i, e) = col
                .iter()
                .enumerate()
                .find(|(_, e)| !e.is_zero())
                .ok_or_else(|| Error::DimensionMismatch("zero column has no degree".into()))?;
            degrees.push(e.degree().expect("nonzero") as i64 + target.degrees[i]);
        }
        let entries = (0..target.rank()).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        GradedMap::new(ring, GradedFreeModule::new(degrees), target, entries)
    }

    pub fn identity(ring: &Ring, module: &GradedFreeModule) -> GradedMap {
        let n = module.rank();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Polynomial::one(ring) } else { Polynomial::zero(ring) }).collect())
            .collect();
        GradedMap { ring: ring.clone(), source: module.clone(), target: module.clone(), entries }
    }

    pub fn zero(ring: &Ring, source: GradedFreeModule, target: GradedFreeModule) -> GradedMap {
        let entries = vec![vec![Polynomial::zero(ring); source.rank()]; target.rank()];
        GradedMap { ring: ring.clone(), source, target, entries }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &PolyMatrix {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    /// Position of the first nonzero constant entry in row-major order.
    pub fn unit_entry(&self) -> Option<(usize, usize)> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() && e.is_constant() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// self ∘ other.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch("composition of incompatible maps".into()));
        }
        Ok(GradedMap {
            ring: self.ring.clone(),
            source: other.source.clone(),
            target: self.target.clone(),
            entries: mat_mul(&self.ring, &self.entries, &other.entries, self.source.rank(), other.source.rank()),
        })
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("sum of maps with different shapes".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            .collect();
        Ok(GradedMap { ring: self.ring.clone(), source: self.source.clone(), target: self.target.clone(), entries })
    }

    /// Applies `f` to every entry; the caller supplies the new degrees.
    pub fn map_entries(
        &self,
        source: GradedFreeModule,
        target: GradedFreeModule,
        f: impl Fn(&Polynomial) -> Polynomial,
    ) -> Result<GradedMap> {
        let entries = self.entries.iter().map(|r| r.iter().map(&f).collect()).collect();
        GradedMap::new(&self.ring, source, target, entries)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = self.entries.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
        json!({"source": self.source.degrees, "target": self.target.degrees, "entries": rows})
    }
}

fn mat_mul(ring: &Ring, a: &PolyMatrix, b: &PolyMatrix, inner: usize, cols: usize) -> PolyMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Polynomial::zero(ring);
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = acc.add(&row[k].mul(&b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn mat_vec(ring: &Ring, a: &PolyMatrix, v: &[Polynomial]) -> Vec<Polynomial> {
    a.iter()
        .map(|row| {
            let mut acc = Polynomial::zero(ring);
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.add(&x.mul(y));
                }
            }
            acc
        })
        .collect()
}

/// Schreyer frame: `levels[k]` (k >= 1) are the generators of F_k written in
/// F_{k-1} under `orders[k-1]`; `orders[k]` is the induced order on F_k.
#[derive(Debug)]
struct Frame {
    orders: Vec<ModuleOrder>,
    levels: Vec<Vec<ModVec>>,
}

/// Data needed to lift maps into a minimized frame: inclusion and projection
/// chain maps between the minimal complex and the frame.
#[derive(Debug)]
struct Lifter {
    frame: Frame,
    incl: Vec<PolyMatrix>,
    proj: Vec<PolyMatrix>,
}

/// Chain complex F_0 <- F_1 <- ... of graded free modules.
#[derive(Clone, Debug)]
pub struct Complex {
    ring: Ring,
    modules: Vec<GradedFreeModule>,
    maps: Vec<GradedMap>,
    lifter: Option<Arc<Lifter>>,
}

impl Complex {
    /// Complex from differentials d_1, d_2, ...
    pub fn new(ring: &Ring, maps: Vec<GradedMap>) -> Result<Complex> {
        if maps.is_empty() {
            return Err(Error::DimensionMismatch("complex needs at least one map".into()));
        }
        for w in maps.windows(2) {
            if w[0].source != w[1].target {
                return Err(Error::DimensionMismatch("consecutive maps do not match".into()));
            }
        }
        let mut modules = vec![maps[0].target.clone()];
        modules.extend(maps.iter().map(|m| m.source.clone()));
        Ok(Complex { ring: ring.clone(), modules, maps, lifter: None })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Number of differentials.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn module(&self, i: usize) -> &GradedFreeModule {
        &self.modules[i]
    }

    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    /// d_i : F_i -> F_{i-1}, for 1 <= i <= length.
    pub fn differential(&self, i: usize) -> &GradedMap {
        &self.maps[i - 1]
    }

    pub fn differentials(&self) -> &[GradedMap] {
        &self.maps
    }

    /// True when every composite d_i ∘ d_{i+1} vanishes.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].compose(&w[1]).map(|c| c.is_zero()).unwrap_or(false))
    }

    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.unit_entry().is_none())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "modules": self.modules.iter().map(|m| m.degrees.clone()).collect::<Vec<_>>(),
            "differentials": self.maps.iter().map(|m| m.to_json()["entries"].clone()).collect::<Vec<_>>(),
        })
    }
}

/// One step of Schreyer's algorithm: a map whose image is the kernel of `m`.
/// The output need not be minimal.
pub fn syzygy_step(m: &GradedMap) -> Result<GradedMap> {
    let ring = m.ring().clone();
    let order = ModuleOrder::top(&ring, m.target.rank());
    let cols: Vec<ModVec> = (0..m.source.rank()).map(|j| ModVec::from_polys(&order, &m.column(j))).collect();
    let (basis, track) = module_groebner(&order, &cols);
    let mut out: Vec<Vec<Polynomial>> = Vec::new();
    if !basis.is_empty() {
        let next = order.induced(&basis);
        let expand = |coeffs: &[Polynomial]| -> Vec<Polynomial> {
            (0..cols.len())
                .map(|g| {
                    let mut acc = Polynomial::zero(&ring);
                    for (c, t) in coeffs.iter().zip(&track) {
                        if !c.is_zero() && !t[g].is_zero() {
                            acc = acc.add(&c.mul(&t[g]));
                        }
                    }
                    acc
                })
                .collect()
        };
        for s in schreyer_syzygies(&order, &basis, &next)? {
            out.push(expand(&s.to_polys(&next)));
        }
        for (j, col) in cols.iter().enumerate() {
            let div = divide(&order, col, &basis);
            let q = quotient_polys(&ring, &next, &div.quotient);
            let mut v = expand(&q);
            v[j] = Polynomial::one(&ring).sub(&v[j]);
            for (g, e) in v.iter_mut().enumerate() {
                if g != j {
                    *e = e.neg();
                }
            }
            out.push(v);
        }
    } else {
        for j in 0..cols.len() {
            let mut v = vec![Polynomial::zero(&ring); cols.len()];
            v[j] = Polynomial::one(&ring);
            out.push(v);
        }
    }
    let mut seen = Vec::new();
    out.retain(|v| {
        let keep = v.iter().any(|e| !e.is_zero()) && !seen.contains(v);
        if keep {
            seen.push(v.clone());
        }
        keep
    });
    if out.is_empty() {
        return Ok(GradedMap::zero(&ring, GradedFreeModule::default(), m.source.clone()));
    }
    GradedMap::from_columns(&ring, m.source.clone(), out)
}

fn quotient_polys(ring: &Ring, next: &ModuleOrder, quotient: &[(Monomial, usize, Elem)]) -> Vec<Polynomial> {
    let mut parts: Vec<Vec<(Monomial, Elem)>> = vec![Vec::new(); next.rank()];
    for &(k, l, c) in quotient {
        parts[l].push((next.weight(l).div_of(&k), c));
    }
    parts.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect()
}

fn build_frame(ideal: &Ideal) -> Result<Frame> {
    let ring = ideal.ring();
    let order0 = ModuleOrder::top(ring, 1);
    let mut level1: Vec<ModVec> = ideal.groebner().iter().map(|g| ModVec::from_polys(&order0, &[g.clone()])).collect();
    if level1.is_empty() {
        return Err(Error::DimensionMismatch("zero ideal has no resolution".into()));
    }
    sort_for_schreyer(&order0, &mut level1, 0);
    let order1 = order0.induced(&level1);
    let mut frame = Frame { orders: vec![order0, order1], levels: vec![Vec::new(), level1] };
    let n = ring.nvars();
    for k in 1..=n + 1 {
        let mut syz = schreyer_syzygies(&frame.orders[k - 1], &frame.levels[k], &frame.orders[k])?;
        if syz.is_empty() {
            break;
        }
        sort_for_schreyer(&frame.orders[k], &mut syz, k);
        let next = frame.orders[k].induced(&syz);
        frame.levels.push(syz);
        frame.orders.push(next);
    }
    Ok(frame)
}

fn identity_matrix(ring: &Ring, n: usize) -> PolyMatrix {
    (0..n).map(|i| (0..n).map(|j| Polynomial::constant(ring, (i == j) as Elem)).collect()).collect()
}

fn remove_col(m: &mut PolyMatrix, c: usize) {
    for row in m.iter_mut() {
        row.remove(c);
    }
}

/// Minimal free resolution of R/I, obtained by minimizing a Schreyer frame.
pub fn minimal_free_resolution(ideal: &Ideal, max_length: usize) -> Result<Complex> {
    if !ideal.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    if !ideal.is_proper() {
        return Err(Error::DimensionMismatch("unit ideal".into()));
    }
    let ring = ideal.ring().clone();
    let field = ring.field().clone();
    let frame = build_frame(ideal)?;
    let top = frame.levels.len() - 1;
    let mut degrees: Vec<Vec<i64>> = (0..=top)
        .map(|k| (0..frame.orders[k].rank()).map(|l| frame.orders[k].weight(l).degree() as i64).collect())
        .collect();
    // d[k] : F_k -> F_{k-1}; d[0] unused
    let mut d: Vec<PolyMatrix> = vec![Vec::new()];
    for k in 1..=top {
        let cols: Vec<Vec<Polynomial>> = frame.levels[k].iter().map(|v| v.to_polys(&frame.orders[k - 1])).collect();
        let rows = frame.orders[k - 1].rank();
        d.push((0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect());
    }
    let mut incl: Vec<PolyMatrix> = (0..=top).map(|k| identity_matrix(&ring, frame.orders[k].rank())).collect();
    let mut proj = incl.clone();
    for k in 1..=top {
        while let Some((r, c)) = find_unit(&d[k]) {
            let u_inv = field.inv(d[k][r][c].lead_coeff()).expect("unit");
            let col_c: Vec<Polynomial> = d[k].iter().map(|row| row[c].clone()).collect();
            let row_r: Vec<Polynomial> = d[k][r].iter().map(|e| e.scale(u_inv)).collect();
            for (i, row) in d[k].iter_mut().enumerate() {
                if i == r || col_c[i].is_zero() {
                    continue;
                }
                for (j, e) in row.iter_mut().enumerate() {
                    if j != c && !row_r[j].is_zero() {
                        *e = e.sub(&col_c[i].mul(&row_r[j]));
                    }
                }
            }
            d[k].remove(r);
            remove_col(&mut d[k], c);
            if k >= 2 {
                remove_col(&mut d[k - 1], r);
            }
            if k < top {
                d[k + 1].remove(c);
            }
            // inclusion of the new F_k basis e_j - (d[r][j]/u) e_c
            for row in incl[k].iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let ec = row[c].clone();
                for (j, e) in row.iter_mut().enumerate() {
                    if j != c && !row_r[j].is_zero() {
                        *e = e.sub(&row_r[j].mul(&ec));
                    }
                }
            }
            remove_col(&mut incl[k], c);
            proj[k].remove(c);
            remove_col(&mut incl[k - 1], r);
            let prow = proj[k - 1][r].clone();
            for (i, row) in proj[k - 1].iter_mut().enumerate() {
                if i == r || col_c[i].is_zero() {
                    continue;
                }
                let factor = col_c[i].scale(u_inv);
                for (e, pe) in row.iter_mut().zip(&prow) {
                    if !pe.is_zero() {
                        *e = e.sub(&factor.mul(pe));
                    }
                }
            }
            proj[k - 1].remove(r);
            degrees[k].remove(c);
            degrees[k - 1].remove(r);
        }
    }
    let mut len = top;
    while len > 0 && degrees[len].is_empty() {
        len -= 1;
    }
    let len = len.min(max_length).max(1);
    let mut maps = Vec::with_capacity(len);
    for k in 1..=len {
        let source = GradedFreeModule::new(degrees.get(k).cloned().unwrap_or_default());
        let target = GradedFreeModule::new(degrees[k - 1].clone());
        let entries = if k <= top { d[k].clone() } else { vec![Vec::new(); target.rank()] };
        maps.push(GradedMap::new(&ring, source, target, entries)?);
    }
    let mut c = Complex::new(&ring, maps)?;
    c.lifter = Some(Arc::new(Lifter { frame, incl, proj }));
    Ok(c)
}

fn find_unit(m: &PolyMatrix) -> Option<(usize, usize)> {
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if !e.is_zero() && e.is_constant() {
                return Some((i, j));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub d: i64,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct BettiTable {
    pub entries: Vec<BettiEntry>,
}

impl BettiTable {
    pub fn from_complex_unchecked(c: &Complex) -> BettiTable {
        let mut counts: HashMap<(usize, i64), usize> = HashMap::new();
        for (i, m) in c.modules.iter().enumerate() {
            for &deg in &m.degrees {
                *counts.entry((i, deg)).or_default() += 1;
            }
        }
        let mut entries: Vec<BettiEntry> = counts.into_iter().map(|((i, d), rank)| BettiEntry { i, d, rank }).collect();
        entries.sort_by_key(|e| (e.i, e.d));
        BettiTable { entries }
    }

    pub fn from_entries(list: &[(usize, i64, usize)]) -> BettiTable {
        let mut entries: Vec<BettiEntry> =
            list.iter().filter(|e| e.2 > 0).map(|&(i, d, rank)| BettiEntry { i, d, rank }).collect();
        entries.sort_by_key(|e| (e.i, e.d));
        BettiTable { entries }
    }

    pub fn get(&self, i: usize, d: i64) -> usize {
        self.entries.iter().find(|e| e.i == i && e.d == d).map_or(0, |e| e.rank)
    }

    /// Total rank in each homological degree.
    pub fn totals(&self) -> Vec<usize> {
        let len = self.entries.iter().map(|e| e.i).max().map_or(0, |m| m + 1);
        let mut t = vec![0; len];
        for e in &self.entries {
            t[e.i] += e.rank;
        }
        t
    }

    pub fn length(&self) -> usize {
        self.entries.iter().map(|e| e.i).max().unwrap_or(0)
    }

    /// Alternating sum Σ (-1)^i β_{i,d} dim R_{t-d} for a ring in `nvars` variables.
    pub fn euler_hilbert(&self, nvars: usize, t: i64) -> i64 {
        self.entries
            .iter()
            .map(|e| {
                let s = t - e.d;
                let dim = if s < 0 { 0 } else { binom_i64(s + nvars as i64 - 1, nvars as i64 - 1) };
                let sign = if e.i % 2 == 0 { 1 } else { -1 };
                sign * e.rank as i64 * dim
            })
            .sum()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

fn binom_i64(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn betti_table(c: &Complex) -> Result<BettiTable> {
    for (i, m) in c.maps.iter().enumerate() {
        if m.unit_entry().is_some() {
            return Err(Error::NonMinimalComplex(i + 1));
        }
    }
    Ok(BettiTable::from_complex_unchecked(c))
}

/// Lifts `phi0 : source.F_0 -> target.F_0` to a chain map. Columns are
/// solved by division against the target's Schreyer frame when available,
/// otherwise by the dense linear solver.
pub fn lift_chain_map(target: &Complex, source: &Complex, phi0: &GradedMap) -> Result<Vec<GradedMap>> {
    let Some(lifter) = target.lifter.clone() else {
        return lift_chain_map_dense(target, source, phi0);
    };
    let ring = target.ring.clone();
    check_phi0(target, source, phi0)?;
    let mut phis = vec![phi0.clone()];
    for i in 1..=source.length() {
        let y = phis[i - 1].compose(source.differential(i))?;
        let src = source.module(i).clone();
        if i > target.length() {
            if !y.is_zero() {
                return Err(Error::NotLiftable(format!("level {i} beyond the target's length")));
            }
            phis.push(GradedMap::zero(&ring, src, GradedFreeModule::default()));
            continue;
        }
        let order = &lifter.frame.orders[i - 1];
        let next = &lifter.frame.orders[i];
        let divisors = &lifter.frame.levels[i];
        let mut cols = Vec::with_capacity(src.rank());
        for j in 0..src.rank() {
            let yf = mat_vec(&ring, &lifter.incl[i - 1], &y.column(j));
            let div = divide(order, &ModVec::from_polys(order, &yf), divisors);
            if !div.remainder.is_zero() {
                return Err(Error::NotLiftable(format!("level {i}, column {j} is not in the image")));
            }
            let q = quotient_polys(&ring, next, &div.quotient);
            cols.push(mat_vec(&ring, &lifter.proj[i], &q));
        }
        let tgt = target.module(i).clone();
        let entries = (0..tgt.rank()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        phis.push(GradedMap::new(&ring, src, tgt, entries)?);
    }
    Ok(phis)
}

fn check_phi0(target: &Complex, source: &Complex, phi0: &GradedMap) -> Result<()> {
    if phi0.source() != source.module(0) || phi0.target() != target.module(0) {
        return Err(Error::DimensionMismatch("phi0 does not connect the augmentation modules".into()));
    }
    Ok(())
}

/// Reference lift: every column is found by solving the linear system of
/// its coefficients degree by degree. Free variables are set to zero.
pub fn lift_chain_map_dense(target: &Complex, source: &Complex, phi0: &GradedMap) -> Result<Vec<GradedMap>> {
    let ring = target.ring.clone();
    check_phi0(target, source, phi0)?;
    let mut phis = vec![phi0.clone()];
    for i in 1..=source.length() {
        let y = phis[i - 1].compose(source.differential(i))?;
        let src = source.module(i).clone();
        if i > target.length() {
            if !y.is_zero() {
                return Err(Error::NotLiftable(format!("level {i} beyond the target's length")));
            }
            phis.push(GradedMap::zero(&ring, src, GradedFreeModule::default()));
            continue;
        }
        let d = target.differential(i);
        let mut cols = Vec::with_capacity(src.rank());
        for j in 0..src.rank() {
            cols.push(solve_homogeneous(d, src.degrees[j], &y.column(j))?);
        }
        let tgt = target.module(i).clone();
        let entries = (0..tgt.rank()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        phis.push(GradedMap::new(&ring, src, tgt, entries)?);
    }
    Ok(phis)
}

/// Solves d x = y for x homogeneous of degree `deg` (as an element of d's source).
fn solve_homogeneous(d: &GradedMap, deg: i64, y: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let ring = d.ring();
    let field = ring.field().clone();
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for (j, &a) in d.source.degrees.iter().enumerate() {
        if deg >= a {
            unknowns.extend(ring.monomials_of_degree((deg - a) as u32).into_iter().map(|m| (j, m)));
        }
    }
    let mut eq_index: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut index = |r: usize, m: Monomial| {
        let n = eq_index.len();
        *eq_index.entry((r, m)).or_insert(n)
    };
    let mut columns: Vec<Vec<(usize, Elem)>> = Vec::with_capacity(unknowns.len());
    for &(j, m) in &unknowns {
        let mut col = Vec::new();
        for r in 0..d.target.rank() {
            for &(t, c) in d.entries[r][j].terms() {
                col.push((index(r, t.mul(&m)), c));
            }
        }
        columns.push(col);
    }
    let mut rhs = Vec::new();
    for (r, p) in y.iter().enumerate() {
        for &(t, c) in p.terms() {
            rhs.push((index(r, t), c));
        }
    }
    let nrows = eq_index.len();
    let sol = solve_sparse(&field, nrows, &columns, &rhs)
        .ok_or_else(|| Error::NotLiftable("linear system has no solution".into()))?;
    let mut parts: Vec<Vec<(Monomial, Elem)>> = vec![Vec::new(); d.source.rank()];
    for (&(j, m), &v) in unknowns.iter().zip(&sol) {
        if v != 0 {
            parts[j].push((m, v));
        }
    }
    Ok(parts.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect())
}

fn solve_sparse(field: &Field, nrows: usize, columns: &[Vec<(usize, Elem)>], rhs: &[(usize, Elem)]) -> Option<Vec<Elem>> {
    let n = columns.len();
    if field.is_gf2() {
        let mut b = BitMatrix::new(nrows, n + 1);
        for (j, col) in columns.iter().enumerate() {
            for &(i, c) in col {
                if c & 1 == 1 {
                    b.toggle(i, j);
                }
            }
        }
        for &(i, c) in rhs {
            if c & 1 == 1 {
                b.toggle(i, n);
            }
        }
        let piv = b.rref();
        if piv.last() == Some(&n) {
            return None;
        }
        let mut x = vec![0; n];
        for (r, &pc) in piv.iter().enumerate() {
            x[pc] = b.get(r, n) as Elem;
        }
        return Some(x);
    }
    let mut a = Matrix::zeros(field, nrows, n);
    for (j, col) in columns.iter().enumerate() {
        for &(i, c) in col {
            let v = field.add(a.get(i, j), c);
            a.set(i, j, v);
        }
    }
    let mut b = Matrix::zeros(field, nrows, 1);
    for &(i, c) in rhs {
        let v = field.add(b.get(i, 0), c);
        b.set(i, 0, v);
    }
    a.solve(&b).ok().map(|x| x.column(0))
}
