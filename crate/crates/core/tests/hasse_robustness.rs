use lagrangia::frobenius::{frobenius_complex, frobenius_lift, hasse_coefficient, hasse_invariant};
use lagrangia::golden::reisner_ideal;
use lagrangia::groebner::Ideal;
use lagrangia::poly::{Polynomial, Ring};
use lagrangia::resolution::{
    lift_chain_map, lift_chain_map_dense, minimal_free_resolution, Complex, GradedFreeModule, GradedMap,
};
use lagrangia::rng::SeededRng;
use lagrangia::{Field, Matrix};

fn random_form(ring: &Ring, degree: i64, rng: &mut SeededRng) -> Polynomial {
    if degree < 0 {
        return Polynomial::zero(ring);
    }
    let f = ring.field();
    let terms = ring.monomials_of_degree(degree as u32).into_iter().map(|m| (m, f.random(rng))).collect();
    Polynomial::from_terms(ring, terms)
}

fn random_map(ring: &Ring, source: &GradedFreeModule, target: &GradedFreeModule, rng: &mut SeededRng) -> GradedMap {
    let entries = target
        .degrees()
        .iter()
        .map(|&t| source.degrees().iter().map(|&s| random_form(ring, s - t, rng)).collect())
        .collect();
    GradedMap::new(ring, source.clone(), target.clone(), entries).unwrap()
}

fn is_chain_map(target: &Complex, source: &Complex, phis: &[GradedMap]) -> bool {
    (1..phis.len()).all(|i| {
        let lhs = target.differential(i).compose(&phis[i]).unwrap();
        let rhs = phis[i - 1].compose(source.differential(i)).unwrap();
        lhs.entries() == rhs.entries()
    })
}

#[test]
fn frame_lift_is_a_chain_map_and_agrees_with_the_dense_oracle() {
    let ideal = reisner_ideal(&Field::gf2()).unwrap();
    let (c, fc, phis) = frobenius_lift(&ideal).unwrap();
    assert!(is_chain_map(&c, &fc, &phis));
    let dense = lift_chain_map_dense(&c, &fc, &phis[0]).unwrap();
    assert!(is_chain_map(&c, &fc, &dense));
    assert_eq!(hasse_coefficient(phis[4].entry(0, 0)), hasse_coefficient(dense[4].entry(0, 0)));
    assert_eq!(hasse_coefficient(dense[4].entry(0, 0)), 1);
}

#[test]
fn homotopy_perturbations_keep_the_coefficient() {
    let ideal = reisner_ideal(&Field::gf2()).unwrap();
    let (c, fc, phis) = frobenius_lift(&ideal).unwrap();
    let ring = ideal.ring().clone();
    let len = c.length();
    let mut rng = SeededRng::new(2024);
    for _ in 0..20 {
        // h_i : F(C)_i -> C_{i+1}
        let h: Vec<GradedMap> =
            (0..len).map(|i| random_map(&ring, fc.module(i), c.module(i + 1), &mut rng)).collect();
        let perturbed: Vec<GradedMap> = (0..=len)
            .map(|i| {
                let mut m = phis[i].clone();
                if i < len {
                    m = m.add(&c.differential(i + 1).compose(&h[i]).unwrap()).unwrap();
                }
                if i > 0 {
                    m = m.add(&h[i - 1].compose(fc.differential(i)).unwrap()).unwrap();
                }
                m
            })
            .collect();
        assert!(is_chain_map(&c, &fc, &perturbed));
        assert_eq!(hasse_coefficient(perturbed[len].entry(0, 0)), 1);
    }
}

#[test]
fn generator_permutations_keep_the_coefficient() {
    let ideal = reisner_ideal(&Field::gf2()).unwrap();
    let mut rng = SeededRng::new(77);
    let base = hasse_invariant(&ideal).unwrap();
    for _ in 0..20 {
        let mut gens = ideal.gens().to_vec();
        for i in (1..gens.len()).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            gens.swap(i, j);
        }
        let h = hasse_invariant(&Ideal::new(ideal.ring(), gens).unwrap()).unwrap();
        assert_eq!(h.hasse, base.hasse);
        assert_eq!(h.betti, base.betti);
    }
}

#[test]
fn unimodular_substitutions_keep_the_coefficient() {
    let f = Field::gf2();
    let ideal = reisner_ideal(&f).unwrap();
    let mut rng = SeededRng::new(5);
    let mut done = 0;
    while done < 10 {
        let g = Matrix::from_fn(&f, 6, 6, |_, _| f.random(&mut rng));
        if g.det().unwrap() != 1 {
            continue;
        }
        let gens = ideal.gens().iter().map(|p| p.substitute_linear(&g).unwrap()).collect();
        let h = hasse_invariant(&Ideal::new(ideal.ring(), gens).unwrap()).unwrap();
        assert_eq!(h.hasse, 1);
        done += 1;
    }
}

#[test]
fn lifting_the_identity_of_a_complex_to_itself() {
    let ideal = reisner_ideal(&Field::gf2()).unwrap();
    let c = minimal_free_resolution(&ideal, 6).unwrap();
    let id = GradedMap::identity(ideal.ring(), c.module(0));
    let phis = lift_chain_map(&c, &c, &id).unwrap();
    assert!(is_chain_map(&c, &c, &phis));
    let fc = frobenius_complex(&c).unwrap();
    assert!(fc.is_complex());
}
