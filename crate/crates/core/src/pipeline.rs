//! End-to-end runs: Lagrangian → locus census → cubics → resolution →
//! Hasse invariant, plus seeded constructions and surveys.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::ExteriorBasis;
use crate::field::{Elem, Field};
use crate::frobenius::{hasse_invariant, EnriquesClass, HasseResult};
use crate::groebner::Ideal;
use crate::linalg::Matrix;
use crate::loci::{
    fiber_lagrangian, interpolate, interpolate_cubics, jacobian_rank, pfaffian_decision, quadric_check,
    reisner_lagrangian, HilbertPolynomial, InterpolationStage, Middle, PfaffianDecision, ProjPoint,
};
use crate::poly::{Polynomial, Ring};
use crate::quadspace::{random_lagrangian, Family, Lagrangian, QuadraticSpace};
use crate::rng::SeededRng;

pub const JACOBIAN_SAMPLES: usize = 50;
pub const EXPECTED_HILBERT_FUNCTION: [u64; 4] = [1, 6, 21, 46];

/// Field names accepted on the command line.
pub fn field_by_name(name: &str) -> Result<Field> {
    match name {
        "gf2" => Ok(Field::gf2()),
        "gf4" => Field::gf2k(2),
        _ => Err(Error::InvalidField(format!("unknown field {name:?}, expected gf2 or gf4"))),
    }
}

pub fn field_name(f: &Field) -> String {
    format!("gf{}", f.order())
}

/// 5t² + 1.
pub fn enriques_hilbert_polynomial() -> HilbertPolynomial {
    interpolate(&[(0, 1), (1, 6), (2, 21)])
}

#[derive(Clone, Debug)]
pub struct JacobianSample {
    pub point: ProjPoint,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct LocusRun {
    pub seed: Option<u64>,
    pub w: Lagrangian,
    pub stages: Vec<InterpolationStage>,
    pub cubics: Vec<Polynomial>,
    pub hilbert_function: Vec<u64>,
    pub hilbert: HilbertPolynomial,
    pub hasse: HasseResult,
    pub quadric_free: bool,
    pub jacobian_samples: Vec<JacobianSample>,
    pub pfaffian: PfaffianDecision,
    pub degenerate: bool,
}

impl LocusRun {
    pub fn class(&self) -> EnriquesClass {
        self.hasse.class
    }

    pub fn to_json(&self) -> Value {
        let field = self.w.space().field();
        let census: serde_json::Map<String, Value> =
            self.stages.iter().map(|s| (format!("gf{}", 1u64 << s.k), json!(s.points))).collect();
        let mut moduli = vec![field.clone()];
        for s in &self.stages {
            let f = Field::gf2k(s.k).expect("canonical");
            if !moduli.contains(&f) {
                moduli.push(f);
            }
        }
        json!({
            "ambient": "P5",
            "seed": self.seed,
            "field": field_name(field),
            "w_basis": self.w.to_json(),
            "census": census,
            "cubics": self.cubics.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "betti": self.hasse.betti.to_json(),
            "hilbert": self.hilbert.to_json(),
            "hilbert_function": self.hilbert_function,
            "hasse": self.hasse.to_json(),
            "class": self.class().to_string(),
            "degenerate": self.degenerate,
            "quadric_free": self.quadric_free,
            "jacobian_samples": self.jacobian_samples.iter()
                .map(|s| json!({"point": s.point.to_json(), "rank": s.rank}))
                .collect::<Vec<_>>(),
            "pfaffian": self.pfaffian.to_json(),
            "version": env!("CARGO_PKG_VERSION"),
            "moduli": moduli.iter().map(|f| json!({
                "p": f.characteristic(),
                "k": f.degree(),
                "modulus": f.modulus(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Hilbert polynomial read off the Betti table well past the regularity.
pub fn hilbert_polynomial_of(betti: &crate::resolution::BettiTable, nvars: usize) -> HilbertPolynomial {
    let start = betti.entries.iter().map(|e| e.d).max().unwrap_or(0) + 1;
    let pts: Vec<(i128, i128)> = (start..=start + nvars as i64)
        .map(|t| (t as i128, betti.euler_hilbert(nvars, t) as i128))
        .collect();
    interpolate(&pts)
}

/// Runs the full pipeline on W. Shape violations on the interpolated ideal
/// (cubic count, Hilbert function, Betti template) are errors; singular
/// Jacobian samples and a wrong Hilbert polynomial only set `degenerate`.
pub fn run_pipeline(w: &Lagrangian, seed: Option<u64>) -> Result<LocusRun> {
    let field = w.space().field().clone();
    let interp = interpolate_cubics(w)?;
    let ring = Ring::grevlex(&field, 6)?;
    let ideal = Ideal::new(&ring, interp.forms.clone())?;
    let hilbert_function = (0..4).map(|t| ideal.hilbert_function(t)).collect::<Result<Vec<_>>>()?;
    if hilbert_function != EXPECTED_HILBERT_FUNCTION {
        return Err(Error::DimensionMismatch(format!("Hilbert function {hilbert_function:?}")));
    }
    let mut hasse = hasse_invariant(&ideal)?;
    let hilbert = hilbert_polynomial_of(&hasse.betti, 6);
    let quadric_free = quadric_check(&ring, &interp.census)?;
    let mut rng = SeededRng::new(seed.unwrap_or(0) ^ 0x6a09_e667);
    let mut picks: Vec<usize> = Vec::new();
    let total = interp.census.len();
    while picks.len() < JACOBIAN_SAMPLES.min(total) {
        let i = rng.below(total as u64) as usize;
        if !picks.contains(&i) {
            picks.push(i);
        }
    }
    let jacobian_samples = picks
        .iter()
        .map(|&i| {
            let point = interp.census[i].clone();
            jacobian_rank(&interp.forms, &point).map(|rank| JacobianSample { point, rank })
        })
        .collect::<Result<Vec<_>>>()?;
    let degenerate = hilbert != enriques_hilbert_polynomial() || jacobian_samples.iter().any(|s| s.rank < 3);
    hasse.degenerate = degenerate;
    // ω = O and h⁰ = h² = 1, so h¹(O) = 2 - χ(O).
    let chi = hilbert.eval(0).to_integer();
    let h1 = usize::try_from(2 - chi).map_err(|_| Error::DimensionMismatch(format!("χ(O) = {chi}")))?;
    let pfaffian = pfaffian_decision(2, 0, field.characteristic(), &Middle::Dimension(h1))?;
    Ok(LocusRun {
        seed,
        w: w.clone(),
        stages: interp.stages,
        cubics: interp.forms,
        hilbert_function,
        hilbert,
        hasse,
        quadric_free,
        jacobian_samples,
        pfaffian,
        degenerate,
    })
}

pub fn run_reisner() -> Result<LocusRun> {
    run_pipeline(&reisner_lagrangian()?, None)
}

/// Span of the monomials e_F with 0 ∈ F: complementary to the fiber at e₀.
fn fiber_complement(space: &Arc<QuadraticSpace>) -> Result<Lagrangian> {
    let f = space.field();
    let basis = ExteriorBasis::new(6, 3);
    let cols: Vec<Vec<Elem>> = (0..basis.len())
        .filter(|&i| basis.mask(i) & 1 == 1)
        .map(|i| {
            let mut v = vec![0; basis.len()];
            v[i] = 1;
            v
        })
        .collect();
    Lagrangian::new(space.clone(), &Matrix::from_columns(f, basis.len(), &cols)?)
}

/// Seeded Lagrangian in the family opposite to the fibers.
pub fn seeded_lagrangian(field: &Field, seed: u64) -> Result<Lagrangian> {
    let e0 = ProjPoint::new(field, &[1, 0, 0, 0, 0, 0])?;
    let reference = fiber_lagrangian(&e0, 3)?;
    let comp = fiber_complement(reference.space())?;
    random_lagrangian(&reference, &comp, Family::Opposite, seed)
}

pub fn run_construct(field: &Field, seed: u64) -> Result<LocusRun> {
    let w = seeded_lagrangian(field, seed)?;
    let run = run_pipeline(&w, Some(seed))?;
    if !run.quadric_free {
        return Err(Error::DimensionMismatch("census lies on a quadric".into()));
    }
    Ok(run)
}

#[derive(Clone, Debug)]
pub enum SurveyOutcome {
    Classified(EnriquesClass),
    Degenerate(EnriquesClass),
    Failed(String),
}

#[derive(Clone, Debug, Default)]
pub struct Survey {
    pub field: Option<Field>,
    pub outcomes: Vec<(u64, SurveyOutcome)>,
}

impl Survey {
    pub fn count(&self, f: impl Fn(&SurveyOutcome) -> bool) -> usize {
        self.outcomes.iter().filter(|(_, o)| f(o)).count()
    }

    pub fn mu2(&self) -> usize {
        self.count(|o| matches!(o, SurveyOutcome::Classified(EnriquesClass::Mu2)))
    }

    pub fn alpha2(&self) -> usize {
        self.count(|o| matches!(o, SurveyOutcome::Classified(EnriquesClass::Alpha2)))
    }

    pub fn degenerate(&self) -> usize {
        self.count(|o| matches!(o, SurveyOutcome::Degenerate(_)))
    }

    pub fn failed(&self) -> usize {
        self.count(|o| matches!(o, SurveyOutcome::Failed(_)))
    }

    pub fn to_json(&self) -> Value {
        let classified = self.mu2() + self.alpha2();
        let samples: Vec<Value> = self
            .outcomes
            .iter()
            .map(|(seed, o)| match o {
                SurveyOutcome::Classified(c) => json!({"seed": seed, "class": c.to_string(), "degenerate": false}),
                SurveyOutcome::Degenerate(c) => json!({"seed": seed, "class": c.to_string(), "degenerate": true}),
                SurveyOutcome::Failed(e) => json!({"seed": seed, "error": e}),
            })
            .collect();
        json!({
            "field": self.field.as_ref().map(field_name),
            "count": self.outcomes.len(),
            "mu2": self.mu2(),
            "alpha2": self.alpha2(),
            "degenerate": self.degenerate(),
            "failed": self.failed(),
            "alpha2_fraction": if classified == 0 { Value::Null } else { json!(self.alpha2() as f64 / classified as f64) },
            "samples": samples,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

pub fn classify(field: &Field, seed: u64) -> SurveyOutcome {
    match run_construct(field, seed) {
        Ok(run) if run.degenerate => SurveyOutcome::Degenerate(run.class()),
        Ok(run) => SurveyOutcome::Classified(run.class()),
        Err(e) => SurveyOutcome::Failed(e.to_string()),
    }
}

/// Classifies seeds 0..count, spread over the available cores; the result
/// is ordered by seed.
pub fn run_survey(field: &Field, count: u64) -> Result<Survey> {
    if count > 10_000 {
        return Err(Error::SizeCap(format!("survey of {count} samples (at most 10000)")));
    }
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(count.max(1) as usize);
    let mut outcomes: Vec<(u64, SurveyOutcome)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                s.spawn(move || {
                    (t as u64..count).step_by(threads).map(|seed| (seed, classify(field, seed))).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("survey worker")).collect()
    });
    outcomes.sort_by_key(|(seed, _)| *seed);
    Ok(Survey { field: Some(field.clone()), outcomes })
}
