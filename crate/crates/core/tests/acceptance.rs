//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! with its runtime and fails if the check or its time budget is missed.

use std::sync::Arc;
use std::time::{Duration, Instant};

use lagrangia::exterior::{divided_square, divided_square_uniqueness, induced_matrix, ExteriorVector};
use lagrangia::frobenius::{frobenius_lift, hasse_coefficient, hasse_invariant, HASSE_TEMPLATE};
use lagrangia::golden::{pfaffian_table, reisner_ideal};
use lagrangia::groebner::Ideal;
use lagrangia::loci::{
    chern_degree, fiber_lagrangian, hilbert_polynomial_from_shape, locus_membership, reisner_lagrangian,
    ProjPoint, ResolutionShape,
};
use lagrangia::pipeline::{enriques_hilbert_polynomial, run_construct, run_reisner, run_survey, JACOBIAN_SAMPLES};
use lagrangia::poly::{Polynomial, Ring};
use lagrangia::quadspace::{intersection_dim, random_lagrangian, Family, Lagrangian, QuadraticSpace};
use lagrangia::resolution::{betti_table, minimal_free_resolution, BettiTable, GradedFreeModule, GradedMap};
use lagrangia::rng::SeededRng;
use lagrangia::{Elem, Field, Matrix};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn report(id: u32, title: &str, budget: Duration, f: impl FnOnce() -> Check) {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let outcome = result.and_then(|detail| {
        if elapsed <= budget {
            Ok(detail)
        } else {
            Err(format!("took {elapsed:.1?}, budget {budget:?}"))
        }
    });
    match &outcome {
        Ok(d) => println!("criterion {id} PASS [{elapsed:.1?}] {title}: {d}"),
        Err(e) => println!("criterion {id} FAIL [{elapsed:.1?}] {title}: {e}"),
    }
    if let Err(e) = outcome {
        panic!("criterion {id} failed: {e}");
    }
}

fn sorted(polys: &[Polynomial]) -> Vec<String> {
    let mut v: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
    v.sort();
    v
}

fn template() -> BettiTable {
    BettiTable::from_entries(&HASSE_TEMPLATE)
}

#[test]
fn criterion_1_reisner_pipeline() {
    report(1, "Reisner pipeline", Duration::from_secs(60), || {
        let run = run_reisner().map_err(|e| e.to_string())?;
        let sr = reisner_ideal(&Field::gf2()).map_err(|e| e.to_string())?;
        ensure(sorted(&run.cubics) == sorted(sr.gens()), "cubics differ from the non-face monomials")?;
        ensure(run.hasse.betti == template(), format!("Betti table {:?}", run.hasse.betti))?;
        ensure(run.hasse.hasse == 1, format!("Hasse {}", run.hasse.hasse_str))?;
        ensure(!run.pfaffian.is_pfaffian(), "decision is Pfaffian")?;
        Ok(format!("10 non-face cubics, Betti 1;10;15;6+1;1, hasse 1, {}", run.pfaffian.reason()))
    });
}

#[test]
fn criterion_2_characteristic_dependence() {
    report(2, "characteristic dependence", Duration::from_secs(60), || {
        let ideal = reisner_ideal(&Field::prime(3).unwrap()).map_err(|e| e.to_string())?;
        let c = minimal_free_resolution(&ideal, 6).map_err(|e| e.to_string())?;
        let b = betti_table(&c).map_err(|e| e.to_string())?;
        ensure(b.length() == 3, format!("length {}", b.length()))?;
        ensure(b.totals() == vec![1, 10, 15, 6], format!("totals {:?}", b.totals()))?;
        Ok("GF(3): length 3, Betti (1,10,15,6)".into())
    });
}

#[test]
fn criterion_3_random_fano_models() {
    report(3, "random Fano models", Duration::from_secs(600), || {
        let f = Field::gf2();
        let target = enriques_hilbert_polynomial();
        let mut smooth = Vec::new();
        let mut skipped = Vec::new();
        for seed in 0..400u64 {
            if smooth.len() == 20 {
                break;
            }
            let run = match run_construct(&f, seed) {
                Ok(r) => r,
                Err(e) => {
                    skipped.push(format!("{seed}: {e}"));
                    continue;
                }
            };
            ensure(run.cubics.len() == 10, format!("seed {seed}: {} cubics", run.cubics.len()))?;
            ensure(run.hilbert_function == [1, 6, 21, 46], format!("seed {seed}: {:?}", run.hilbert_function))?;
            ensure(run.quadric_free, format!("seed {seed}: quadric"))?;
            ensure(run.hasse.betti == template(), format!("seed {seed}: Betti {:?}", run.hasse.betti))?;
            if run.degenerate {
                skipped.push(format!("{seed}: singular sample"));
                continue;
            }
            ensure(run.hilbert == target, format!("seed {seed}: Hilbert polynomial {:?}", run.hilbert))?;
            ensure(
                run.jacobian_samples.len() >= JACOBIAN_SAMPLES && run.jacobian_samples.iter().all(|s| s.rank == 3),
                format!("seed {seed}: Jacobian samples"),
            )?;
            smooth.push(seed);
        }
        ensure(smooth.len() == 20, format!("only {} smooth runs", smooth.len()))?;
        Ok(format!("20 smooth runs (seeds {smooth:?}), {} seeds skipped", skipped.len()))
    });
}

#[test]
fn criterion_4_both_enriques_types() {
    report(4, "both Enriques types", Duration::from_secs(1800), || {
        let s = run_survey(&Field::gf2(), 200).map_err(|e| e.to_string())?;
        ensure(s.mu2() > 0 && s.alpha2() > 0, format!("mu2 {}, alpha2 {}", s.mu2(), s.alpha2()))?;
        Ok(format!("mu2 {}, alpha2 {}, degenerate {}, failed {}", s.mu2(), s.alpha2(), s.degenerate(), s.failed()))
    });
}

#[test]
fn criterion_5_degree_and_hilbert_numbers() {
    report(5, "degree and Hilbert golden numbers", Duration::from_secs(5), || {
        let got = [chern_degree(5, 3, 1), chern_degree(7, 4, 1), chern_degree(7, 4, 2), chern_degree(7, 4, 3)]
            .into_iter()
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        ensure(got == vec![10, 336, 2672, 9008], format!("degrees {got:?}"))?;
        let hp = hilbert_polynomial_from_shape(&ResolutionShape::p7(), 7).binomial_coeffs();
        ensure(hp == vec![336, -2520, 9814, -25571, 49549], format!("P7 Hilbert {hp:?}"))?;
        Ok("10, 336, 2672, 9008; 336,-2520,9814,-25571,49549".into())
    });
}

#[test]
fn criterion_6_divided_square() {
    report(6, "divided-square suite", Duration::from_secs(60), || {
        let mut rng = SeededRng::new(6);
        let mut done = 0;
        let cases = [(Field::gf2(), 3usize), (Field::gf2k(2).unwrap(), 3), (Field::gf2k(2).unwrap(), 4)];
        while done < 200 {
            let (f, m) = &cases[done % cases.len()];
            let n = 2 * m;
            let g = Matrix::from_fn(f, n, n, |_, _| f.random(&mut rng));
            let d = g.det().map_err(|e| e.to_string())?;
            if d == 0 {
                continue;
            }
            let lg = induced_matrix(&g, *m).map_err(|e| e.to_string())?;
            let len = lg.rows();
            let u: Vec<Elem> = (0..len).map(|_| f.random(&mut rng)).collect();
            let u = ExteriorVector::new(f, n, *m, u).map_err(|e| e.to_string())?;
            let gu = ExteriorVector::new(f, n, *m, lg.mul_vec(u.coeffs()).unwrap()).unwrap();
            let lhs = divided_square(&gu).map_err(|e| e.to_string())?;
            let rhs = f.mul(d, divided_square(&u).map_err(|e| e.to_string())?);
            ensure(lhs == rhs, "Q(g u) != det(g) Q(u)")?;
            done += 1;
        }
        for m in [3, 4] {
            let r = divided_square_uniqueness(m).map_err(|e| e.to_string())?;
            ensure(r.kernel_dim == 1, format!("m = {m}: kernel {}", r.kernel_dim))?;
        }
        Ok("200 substitutions obey Q(gu) = det(g) Q(u); uniqueness kernels 1, 1".into())
    });
}

fn monomial_span(space: &Arc<QuadraticSpace>, keep: impl Fn(u8) -> bool) -> Lagrangian {
    let b = lagrangia::exterior::ExteriorBasis::new(6, 3);
    let cols: Vec<Vec<Elem>> = (0..b.len())
        .filter(|&i| keep(b.mask(i)))
        .map(|i| (0..b.len()).map(|j| (i == j) as Elem).collect())
        .collect();
    Lagrangian::new(space.clone(), &Matrix::from_columns(space.field(), b.len(), &cols).unwrap()).unwrap()
}

fn random_point(f: &Field, rng: &mut SeededRng) -> ProjPoint {
    loop {
        let c: Vec<Elem> = (0..6).map(|_| f.random(rng)).collect();
        if let Ok(p) = ProjPoint::new(f, &c) {
            return p;
        }
    }
}

#[test]
fn criterion_7_parity_laws() {
    report(7, "parity laws", Duration::from_secs(60), || {
        let f = Field::gf2k(2).unwrap();
        let space = Arc::new(QuadraticSpace::divided_square(&f, 3).unwrap());
        let reference = monomial_span(&space, |m| m & 1 == 0);
        let comp = monomial_span(&space, |m| m & 1 != 0);
        let mut rng = SeededRng::new(7);
        // pairs of sampled Lagrangians: same family even, opposite odd
        for s in 0..500u64 {
            let a_family = if s % 2 == 0 { Family::Same } else { Family::Opposite };
            let b_family = if s % 3 == 0 { Family::Same } else { Family::Opposite };
            let a = random_lagrangian(&reference, &comp, a_family, 2 * s).unwrap();
            let b = random_lagrangian(&reference, &comp, b_family, 2 * s + 1).unwrap();
            let d = intersection_dim(&a, &b).unwrap();
            ensure(d % 2 == (a_family != b_family) as usize, format!("sample {s}: dim {d}"))?;
        }
        let fibers: Vec<Lagrangian> = (0..30)
            .map(|_| {
                let fl = fiber_lagrangian(&random_point(&f, &mut rng), 3).unwrap();
                Lagrangian::new(space.clone(), fl.basis()).unwrap()
            })
            .collect();
        for a in &fibers {
            for b in &fibers {
                ensure(intersection_dim(a, b).unwrap() % 2 == 0, "fibers of different families")?;
            }
        }
        let reisner = reisner_lagrangian().unwrap();
        let g2 = Field::gf2();
        for code in 1u32..64 {
            let c: Vec<Elem> = (0..6).map(|i| code >> (5 - i) & 1).collect();
            let (d, _) = locus_membership(&ProjPoint::new(&g2, &c).unwrap(), &reisner).map_err(|e| e.to_string())?;
            ensure(d % 2 == 1, "Reisner W even against a fiber")?;
        }
        Ok("500 pairs, 30 fibers, 63 Reisner fibers".into())
    });
}

#[test]
fn criterion_8_pfaffian_table() {
    report(8, "Pfaffian decision table", Duration::from_secs(1), || {
        let rows = pfaffian_table().map_err(|e| e.to_string())?;
        let want = [(false, "(c)"), (true, "(i)"), (false, "(d)"), (true, "(iii)")];
        for ((label, d), (pf, clause)) in rows.iter().zip(want) {
            ensure(d.is_pfaffian() == pf && d.reason().contains(clause), format!("{label}: {}", d.reason()))?;
        }
        Ok("NonPfaffian (c), Pfaffian (i), NonPfaffian (d), Pfaffian (iii)".into())
    });
}

fn random_map(ring: &Ring, source: &GradedFreeModule, target: &GradedFreeModule, rng: &mut SeededRng) -> GradedMap {
    let f = ring.field();
    let entries = target
        .degrees()
        .iter()
        .map(|&t| {
            source
                .degrees()
                .iter()
                .map(|&s| {
                    if s < t {
                        return Polynomial::zero(ring);
                    }
                    let terms = ring.monomials_of_degree((s - t) as u32).into_iter().map(|m| (m, f.random(rng))).collect();
                    Polynomial::from_terms(ring, terms)
                })
                .collect()
        })
        .collect();
    GradedMap::new(ring, source.clone(), target.clone(), entries).unwrap()
}

#[test]
fn criterion_9_hasse_robustness() {
    report(9, "Hasse robustness", Duration::from_secs(300), || {
        let ideal = reisner_ideal(&Field::gf2()).map_err(|e| e.to_string())?;
        let (c, fc, phis) = frobenius_lift(&ideal).map_err(|e| e.to_string())?;
        let ring = ideal.ring().clone();
        let len = c.length();
        let base = hasse_coefficient(phis[len].entry(0, 0));
        let mut rng = SeededRng::new(9);
        for _ in 0..20 {
            let h: Vec<GradedMap> = (0..len).map(|i| random_map(&ring, fc.module(i), c.module(i + 1), &mut rng)).collect();
            let mut top = phis[len].add(&h[len - 1].compose(fc.differential(len)).unwrap()).unwrap();
            if len < c.length() {
                top = top.add(&c.differential(len + 1).compose(&h[len]).unwrap()).unwrap();
            }
            ensure(hasse_coefficient(top.entry(0, 0)) == base, "homotopy changed the coefficient")?;
        }
        for _ in 0..20 {
            let mut gens = ideal.gens().to_vec();
            for i in (1..gens.len()).rev() {
                gens.swap(i, rng.below(i as u64 + 1) as usize);
            }
            let h = hasse_invariant(&Ideal::new(&ring, gens).unwrap()).map_err(|e| e.to_string())?;
            ensure(h.hasse == base, "permutation changed the coefficient")?;
        }
        Ok(format!("coefficient {base} after 20 homotopies and 20 permutations"))
    });
}
