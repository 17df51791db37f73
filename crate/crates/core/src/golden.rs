//! Named numerical checks with their expected values.

use serde_json::{json, Value};

use crate::error::Result;
use crate::exterior::divided_square_uniqueness;
use crate::field::Field;
use crate::frobenius::HASSE_TEMPLATE;
use crate::groebner::Ideal;
use crate::loci::{
    chern_degree, hilbert_polynomial_from_shape, interpolate_locus_forms, pfaffian_decision, reisner_facets,
    stanley_reisner_ideal, Middle, PfaffianDecision, ResolutionShape,
};
use crate::pipeline::run_reisner;
use crate::poly::{Polynomial, Ring};
use crate::quadspace::IntegerGram;
use crate::resolution::{betti_table, minimal_free_resolution, BettiTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Fast,
    Heavy,
}

/// Expected values. Tests override single fields to make sure a wrong
/// value is reported under the right name.
#[derive(Clone, Debug)]
pub struct Expectations {
    pub uniqueness_kernel_m3: usize,
    pub uniqueness_kernel_m4: usize,
    pub chern_p5: i128,
    pub chern_p7: i128,
    pub chern_p7_d2: i128,
    pub chern_p7_d3: i128,
    /// Coefficients in the basis C(t+k-1, k), highest k first.
    pub hilbert_p7: Vec<i128>,
    /// Coefficients of 1, t, t².
    pub hilbert_p5: Vec<i128>,
    pub reisner_hasse: String,
    pub char3_totals: Vec<usize>,
    pub p7_generators: usize,
}

impl Default for Expectations {
    fn default() -> Self {
        Expectations {
            uniqueness_kernel_m3: 1,
            uniqueness_kernel_m4: 1,
            chern_p5: 10,
            chern_p7: 336,
            chern_p7_d2: 2672,
            chern_p7_d3: 9008,
            hilbert_p7: vec![336, -2520, 9814, -25571, 49549],
            hilbert_p5: vec![1, 0, 5],
            reisner_hasse: "1".into(),
            char3_totals: vec![1, 10, 15, 6],
            p7_generators: 35,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl GoldenCheck {
    fn compare<T: PartialEq + std::fmt::Debug>(name: &'static str, got: Result<T>, want: &T) -> GoldenCheck {
        match got {
            Ok(g) => GoldenCheck { name, passed: g == *want, detail: format!("got {g:?}, expected {want:?}") },
            Err(e) => GoldenCheck { name, passed: false, detail: format!("error: {e}") },
        }
    }
}

pub fn report_json(checks: &[GoldenCheck]) -> Value {
    json!({
        "passed": checks.iter().all(|c| c.passed),
        "checks": checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        "version": env!("CARGO_PKG_VERSION"),
    })
}

pub fn reisner_ideal(field: &Field) -> Result<Ideal> {
    let ring = Ring::grevlex(field, 6)?;
    stanley_reisner_ideal(&ring, &reisner_facets())
}

fn sorted_strings(polys: &[Polynomial]) -> Vec<String> {
    let mut v: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
    v.sort();
    v
}

/// Facts checked on a Reisner run; the shape of each is also asserted by
/// the acceptance suite.
fn reisner_check(e: &Expectations) -> GoldenCheck {
    let name = "reisner_pipeline";
    let result = (|| -> Result<(bool, String)> {
        let run = run_reisner()?;
        let sr = reisner_ideal(&Field::gf2())?;
        let cubics_ok = sorted_strings(&run.cubics) == sorted_strings(sr.gens());
        let betti_ok = run.hasse.betti == BettiTable::from_entries(&HASSE_TEMPLATE);
        let hasse_ok = run.hasse.hasse_str == e.reisner_hasse;
        let pf_ok = !run.pfaffian.is_pfaffian();
        Ok((
            cubics_ok && betti_ok && hasse_ok && pf_ok,
            format!("cubics {cubics_ok}, betti {betti_ok}, hasse {}, {}", run.hasse.hasse_str, run.pfaffian.reason()),
        ))
    })();
    match result {
        Ok((passed, detail)) => GoldenCheck { name, passed, detail },
        Err(err) => GoldenCheck { name, passed: false, detail: format!("error: {err}") },
    }
}

/// The four documented inputs and their verdicts.
pub fn pfaffian_table() -> Result<Vec<(String, PfaffianDecision)>> {
    let g = IntegerGram::diagonal(&[1, 1]);
    Ok(vec![
        ("surface, char 2, h1 = 1".into(), pfaffian_decision(2, 0, 2, &Middle::Dimension(1))?),
        ("threefold".into(), pfaffian_decision(3, 0, 2, &Middle::Dimension(2))?),
        ("real fourfold, ell = 32".into(), pfaffian_decision(4, 32, 0, &Middle::Real(g.clone()))?),
        ("complexified fourfold, ell = 32".into(), pfaffian_decision(4, 32, 0, &Middle::Complex(g))?),
    ])
}

fn pfaffian_check() -> GoldenCheck {
    let want = [(false, "(c)"), (true, "(i)"), (false, "(d)"), (true, "(iii)")];
    match pfaffian_table() {
        Ok(rows) => {
            let passed = rows
                .iter()
                .zip(want)
                .all(|((_, d), (pf, clause))| d.is_pfaffian() == pf && d.reason().contains(clause));
            let detail = rows.iter().map(|(l, d)| format!("{l}: {}", d.reason())).collect::<Vec<_>>().join("; ");
            GoldenCheck { name: "pfaffian_table", passed, detail }
        }
        Err(e) => GoldenCheck { name: "pfaffian_table", passed: false, detail: format!("error: {e}") },
    }
}

fn char3_check(e: &Expectations) -> GoldenCheck {
    let got = (|| {
        let ideal = reisner_ideal(&Field::prime(3)?)?;
        let c = minimal_free_resolution(&ideal, 6)?;
        Ok(betti_table(&c)?.totals())
    })();
    GoldenCheck::compare("char3_betti", got, &e.char3_totals)
}

/// Degree-10 forms through a seeded P⁷ locus; hours of enumeration.
fn p7_check(e: &Expectations) -> GoldenCheck {
    let got = (|| {
        let w = seeded_p7_lagrangian(1)?;
        Ok(interpolate_locus_forms(&w, 10, e.p7_generators, 64)?.forms.len())
    })();
    GoldenCheck::compare("p7_decic_interpolation", got, &e.p7_generators)
}

/// Seeded Lagrangian in Λ⁴ GF(2)⁸ in the same family as the fibers.
pub fn seeded_p7_lagrangian(seed: u64) -> Result<crate::quadspace::Lagrangian> {
    use crate::exterior::ExteriorBasis;
    use crate::linalg::Matrix;
    use crate::loci::{fiber_lagrangian, ProjPoint};
    use crate::quadspace::{random_lagrangian, Family, Lagrangian};
    let f = Field::gf2();
    let e0 = ProjPoint::new(&f, &[1, 0, 0, 0, 0, 0, 0, 0])?;
    let reference = fiber_lagrangian(&e0, 4)?;
    let basis = ExteriorBasis::new(8, 4);
    let cols: Vec<Vec<u32>> = (0..basis.len())
        .filter(|&i| basis.mask(i) & 1 == 1)
        .map(|i| (0..basis.len()).map(|j| (i == j) as u32).collect())
        .collect();
    let comp = Lagrangian::new(reference.space().clone(), &Matrix::from_columns(&f, basis.len(), &cols)?)?;
    random_lagrangian(&reference, &comp, Family::Same, seed)
}

pub fn run_golden(tier: Tier, e: &Expectations) -> Vec<GoldenCheck> {
    let mut out = vec![
        GoldenCheck::compare(
            "divided_square_uniqueness_m3",
            divided_square_uniqueness(3).map(|r| r.kernel_dim),
            &e.uniqueness_kernel_m3,
        ),
        GoldenCheck::compare(
            "divided_square_uniqueness_m4",
            divided_square_uniqueness(4).map(|r| r.kernel_dim),
            &e.uniqueness_kernel_m4,
        ),
        GoldenCheck::compare("chern_p5_10", chern_degree(5, 3, 1), &e.chern_p5),
        GoldenCheck::compare("chern_p7_336", chern_degree(7, 4, 1), &e.chern_p7),
        GoldenCheck::compare("chern_p7_d2_2672", chern_degree(7, 4, 2), &e.chern_p7_d2),
        GoldenCheck::compare("chern_p7_d3_9008", chern_degree(7, 4, 3), &e.chern_p7_d3),
        GoldenCheck::compare(
            "hilbert_p7_poly",
            Ok(hilbert_polynomial_from_shape(&ResolutionShape::p7(), 7).binomial_coeffs()),
            &e.hilbert_p7,
        ),
        GoldenCheck::compare(
            "hilbert_p5_poly",
            Ok(hilbert_polynomial_from_shape(&ResolutionShape::p5(), 5)
                .coeffs
                .iter()
                .map(|c| if c.is_integer() { c.to_integer() } else { i128::MIN })
                .collect::<Vec<_>>()),
            &e.hilbert_p5,
        ),
        degree_triangle("degree_triangle_p5", 5, ResolutionShape::p5(), chern_degree(5, 3, 1)),
        degree_triangle("degree_triangle_p7", 7, ResolutionShape::p7(), chern_degree(7, 4, 1)),
        reisner_check(e),
        pfaffian_check(),
        char3_check(e),
    ];
    if tier == Tier::Heavy {
        out.push(p7_check(e));
    }
    out
}

/// The Chern degree equals dim! times the leading Hilbert coefficient.
fn degree_triangle(name: &'static str, n: u32, shape: ResolutionShape, chern: Result<i128>) -> GoldenCheck {
    let hp = hilbert_polynomial_from_shape(&shape, n);
    let d = hp.degree() as i128;
    let fact: i128 = (1..=d).product();
    let from_hilbert = hp.leading() * crate::loci::Rational::from_integer(fact);
    let got = chern.map(|c| crate::loci::Rational::from_integer(c) == from_hilbert);
    GoldenCheck::compare(name, got, &true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_tier_passes() {
        let checks = run_golden(Tier::Fast, &Expectations::default());
        for c in &checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert_eq!(report_json(&checks)["passed"], true);
    }

    #[test]
    fn tampered_value_is_named() {
        let e = Expectations { chern_p7: 337, ..Expectations::default() };
        let checks = run_golden(Tier::Fast, &e);
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert_eq!(failed, vec!["chern_p7_336"]);
    }

    #[test]
    fn p7_lagrangian_is_in_the_fiber_family() {
        let w = seeded_p7_lagrangian(1).unwrap();
        let xi = crate::loci::ProjPoint::new(&Field::gf2(), &[0, 1, 1, 0, 1, 0, 0, 1]).unwrap();
        let (d, _) = crate::loci::locus_membership(&xi, &w).unwrap();
        assert_eq!(d % 2, 1);
    }
}
