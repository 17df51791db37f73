//! Frobenius pullback of ideals and resolutions, and the Hasse invariant
//! read off a lift of R/F(I) -> R/I.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::groebner::Ideal;
use crate::poly::{Monomial, Polynomial};
use crate::resolution::{betti_table, lift_chain_map, minimal_free_resolution, BettiTable, Complex, GradedMap};

/// Betti table every Hasse computation must match: 1; 10; 15; 6+1; 1.
pub const HASSE_TEMPLATE: [(usize, i64, usize); 6] = [(0, 0, 1), (1, 3, 10), (2, 4, 15), (3, 5, 6), (3, 6, 1), (4, 6, 1)];

/// Ideal generated by the p-th powers of the generators. Fields here are
/// finite, so the characteristic is always positive.
pub fn frobenius_ideal(ideal: &Ideal) -> Result<Ideal> {
    if ideal.ring().field().characteristic() == 0 {
        return Err(Error::CharZero);
    }
    Ideal::new(ideal.ring(), ideal.gens().iter().map(|g| g.frobenius()).collect())
}

/// Entrywise Frobenius of a complex, with all degrees multiplied by p.
pub fn frobenius_complex(c: &Complex) -> Result<Complex> {
    let p = c.ring().field().characteristic();
    if p == 0 {
        return Err(Error::CharZero);
    }
    let maps = c
        .differentials()
        .iter()
        .map(|d| d.map_entries(d.source().scaled(p as i64), d.target().scaled(p as i64), |e| e.frobenius()))
        .collect::<Result<Vec<_>>>()?;
    Complex::new(c.ring(), maps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnriquesClass {
    Mu2,
    Alpha2,
}

impl fmt::Display for EnriquesClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnriquesClass::Mu2 => "mu2",
            EnriquesClass::Alpha2 => "alpha2",
        })
    }
}

#[derive(Clone, Debug)]
pub struct HasseResult {
    pub hasse: Elem,
    pub hasse_str: String,
    pub class: EnriquesClass,
    /// Final component of the lift, R(-ps) -> R(-s).
    pub g_poly: Polynomial,
    pub degenerate: bool,
    /// Set when p != 2: the coefficient of (x0...x5)^(p-1) is used by analogy.
    pub extrapolated: bool,
    pub betti: BettiTable,
    pub frobenius_betti: BettiTable,
}

impl HasseResult {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "hasse": self.hasse_str,
            "class": self.class.to_string(),
            "g_poly": self.g_poly.to_string(),
            "degenerate": self.degenerate,
        });
        if self.extrapolated {
            v["convention"] = json!("extrapolated");
        }
        v
    }
}

/// Checks the 1;10;15;6+1;1 template on a ring in six variables.
pub fn check_hasse_shape(ideal: &Ideal, betti: &BettiTable) -> Result<()> {
    if ideal.ring().nvars() != 6 {
        return Err(Error::WrongShape(format!("{} variables, expected 6", ideal.ring().nvars())));
    }
    if *betti != BettiTable::from_entries(&HASSE_TEMPLATE) {
        let e: Vec<String> = betti.entries.iter().map(|e| format!("b{},{}={}", e.i, e.d, e.rank)).collect();
        return Err(Error::WrongShape(e.join(" ")));
    }
    Ok(())
}

/// Lifts the identity R -> R along the resolutions of R/F(I) and R/I and
/// returns all components of the chain map.
pub fn frobenius_lift(ideal: &Ideal) -> Result<(Complex, Complex, Vec<GradedMap>)> {
    let n = ideal.ring().nvars();
    let c = minimal_free_resolution(ideal, n)?;
    let fc = frobenius_complex(&c)?;
    let phi0 = GradedMap::identity(ideal.ring(), c.module(0));
    let phis = lift_chain_map(&c, &fc, &phi0)?;
    Ok((c, fc, phis))
}

/// Coefficient of (x0 ... x5)^(p-1) in the last lift component.
pub fn hasse_coefficient(g: &Polynomial) -> Elem {
    let p = g.field().characteristic();
    let n = g.ring().nvars();
    g.coefficient(&Monomial::from_exps(&vec![p - 1; n]))
}

pub fn hasse_invariant(ideal: &Ideal) -> Result<HasseResult> {
    let (c, fc, phis) = frobenius_lift(ideal)?;
    let betti = betti_table(&c)?;
    check_hasse_shape(ideal, &betti)?;
    let g = phis[4].entry(0, 0).clone();
    let field = ideal.ring().field();
    let h = hasse_coefficient(&g);
    Ok(HasseResult {
        hasse: h,
        hasse_str: field.format(h),
        class: if h != 0 { EnriquesClass::Mu2 } else { EnriquesClass::Alpha2 },
        g_poly: g,
        degenerate: false,
        extrapolated: field.characteristic() != 2,
        betti,
        frobenius_betti: BettiTable::from_complex_unchecked(&fc),
    })
}
