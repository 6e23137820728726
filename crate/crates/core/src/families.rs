//! Constructors and verifiers for the known deep-hole families, the
//! zero-set equivalence underlying them, and an exhaustive census over
//! normalized words.

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::grs::{default_budget, GrsCode, Word};
use crate::poly::Poly;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

/// A member of one of the constructive deep-hole families.
#[derive(Clone, Debug)]
pub enum FamilyWordSpec {
    /// a*x^k + tail, a != 0.
    DegreeK { a: Fe, tail: Poly },
    /// a*(x-b)^{q-2} + tail, a != 0, b outside the evaluation set.
    GeneralizedB { a: Fe, b: Fe, tail: Poly },
    /// a*x^{q-3} + tail over even characteristic, q > 4, k = q-4,
    /// D = F_q^* or F_q^* minus {1}.
    EvenChar { a: Fe, tail: Poly },
}

fn check_tail(code: &GrsCode, tail: &Poly) -> Result<()> {
    if tail.field() != code.field() {
        return Err(Error::FieldMismatch);
    }
    if tail.degree().is_some_and(|d| d > code.k() - 1) {
        return Err(Error::SpecViolation(format!(
            "tail degree {:?} exceeds k-1",
            tail.degree()
        )));
    }
    Ok(())
}

fn check_spec(code: &GrsCode, spec: &FamilyWordSpec) -> Result<()> {
    let field = code.field();
    let q = field.q();
    match spec {
        FamilyWordSpec::DegreeK { a, tail } => {
            if *a == 0 {
                return Err(Error::SpecViolation("leading coefficient a = 0".into()));
            }
            check_tail(code, tail)
        }
        FamilyWordSpec::GeneralizedB { a, b, tail } => {
            if *a == 0 {
                return Err(Error::SpecViolation("leading coefficient a = 0".into()));
            }
            if code.points().contains(b) {
                return Err(Error::SpecViolation(format!("b = {b} lies in D")));
            }
            check_tail(code, tail)
        }
        FamilyWordSpec::EvenChar { a, tail } => {
            if field.p() != 2 {
                return Err(Error::SpecViolation("even characteristic required".into()));
            }
            if q <= 4 {
                return Err(Error::SpecViolation("q > 4 required".into()));
            }
            if code.k() as u64 != q - 4 {
                return Err(Error::SpecViolation(format!(
                    "k = {} but the family needs k = q-4 = {}",
                    code.k(),
                    q - 4
                )));
            }
            let star: Vec<Fe> = field.units().collect();
            let star_m1: Vec<Fe> = field.units().filter(|&x| x != 1).collect();
            if code.points() != star && code.points() != star_m1 {
                return Err(Error::SpecViolation(
                    "evaluation set must be F_q^* or F_q^* minus {1}".into(),
                ));
            }
            if *a == 0 {
                return Err(Error::SpecViolation("leading coefficient a = 0".into()));
            }
            check_tail(code, tail)
        }
    }
}

/// The defining polynomial of a family word.
pub fn family_poly(code: &GrsCode, spec: &FamilyWordSpec) -> Result<Poly> {
    check_spec(code, spec)?;
    let field = code.field().clone();
    let q = field.q();
    Ok(match spec {
        FamilyWordSpec::DegreeK { a, tail } => {
            Poly::monomial(field, *a, code.k()).add(tail)
        }
        FamilyWordSpec::GeneralizedB { a, b, tail } => {
            let lin = Poly::new(field.clone(), vec![field.neg(*b), 1]);
            lin.pow(q - 2).scale(*a).add(tail)
        }
        FamilyWordSpec::EvenChar { a, tail } => {
            Poly::monomial(field, *a, (q - 3) as usize).add(tail)
        }
    })
}

pub fn construct_family_word(code: &GrsCode, spec: &FamilyWordSpec) -> Result<Word> {
    code.word_from_poly(&family_poly(code, spec)?)
}

/// Zero-set equivalence of (x-b)^{q-2} - g and 1 - (x-b)g on a set
/// avoiding b. The contract is that this always holds.
pub fn keylem_equivalence(
    field: &Arc<Field>,
    b: Fe,
    g: &Poly,
    d_set: &[Fe],
) -> Result<bool> {
    if d_set.contains(&b) {
        return Err(Error::EvaluationSetContainsB);
    }
    let q = field.q();
    let lin = Poly::new(field.clone(), vec![field.neg(b), 1]);
    let lhs = lin.pow(q - 2).sub(g);
    let rhs = Poly::constant(field.clone(), 1).sub(&lin.mul(g));
    let z1: Vec<Fe> = d_set.iter().copied().filter(|&x| lhs.eval(x) == 0).collect();
    let z2: Vec<Fe> = d_set.iter().copied().filter(|&x| rhs.eval(x) == 0).collect();
    Ok(z1 == z2)
}

/// The degree-(k-1) polynomial g_S such that (x-b)^{q-2} - g_S vanishes
/// exactly on the k-subset S of D. Built in coordinates shifted so b = 0,
/// then shifted back.
pub fn witness_g_s(code: &GrsCode, s: &[Fe], b: Fe) -> Result<Poly> {
    if s.len() != code.k() {
        return Err(Error::SubsetSizeMismatch {
            expected: code.k(),
            got: s.len(),
        });
    }
    if code.points().contains(&b) {
        return Err(Error::EvaluationSetContainsB);
    }
    let field = code.field().clone();
    // shift to y = x - b; all shifted points are nonzero since b is
    // outside D
    let shifted: Vec<Fe> = s.iter().map(|&g| field.sub(g, b)).collect();
    let mut a_s = 1u64;
    for &g in &shifted {
        a_s = field.mul(a_s, field.inv(g)?);
    }
    if code.k() % 2 == 1 {
        a_s = field.neg(a_s);
    }
    let prod = Poly::from_roots(field.clone(), shifted.iter().copied());
    let numer = Poly::constant(field.clone(), 1).sub(&prod.scale(a_s));
    // numerator has zero constant term, so division by y is dropping it
    assert_eq!(numer.coeff(0), 0);
    let g_shifted = Poly::new(field.clone(), numer.coeffs()[1..].to_vec());
    // back to x: g(x) = g_shifted(x - b)
    Ok(g_shifted.shift(field.neg(b)))
}

/// True iff the constructed family word attains distance n - k. The
/// contract is that this holds whenever the spec preconditions do.
pub fn verify_family(code: &GrsCode, spec: &FamilyWordSpec) -> Result<bool> {
    let w = construct_family_word(code, spec)?;
    Ok(code.error_distance(&w)?.distance == code.n() - code.k())
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub degree: usize,
    /// Coefficients low-to-high of the class representative.
    pub coeffs: Vec<Fe>,
    pub distance: usize,
    pub is_deep_hole: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeSummary {
    pub degree: usize,
    pub representatives: u64,
    pub deep_holes: u64,
    /// distance -> number of representatives attaining it
    pub distance_histogram: Vec<(usize, u64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanCensus {
    pub rows: Vec<ScanRow>,
    pub summary: Vec<DegreeSummary>,
}

/// Exhaustive deep-hole census over normalized words: monic f with zero
/// coefficients below degree k, one representative per scaling/translation
/// class, for each degree in [deg_lo, deg_hi].
pub fn scan_deep_holes(code: &GrsCode, deg_lo: usize, deg_hi: usize) -> Result<ScanCensus> {
    let (k, n) = (code.k(), code.n());
    if !(k <= deg_lo && deg_lo <= deg_hi && deg_hi < n) {
        return Err(Error::DegreeOutOfRange(format!(
            "need k <= deg_lo <= deg_hi <= n-1, got [{deg_lo}, {deg_hi}]"
        )));
    }
    let field = code.field().clone();
    let q = field.q();
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for degree in deg_lo..=deg_hi {
        let free = degree - k; // free coefficients at degrees k..degree
        let count = (0..free).try_fold(1u64, |acc, _| acc.checked_mul(q));
        let count = count.filter(|&c| c <= default_budget()).ok_or_else(|| {
            Error::BudgetExceeded(format!("q^{free} representatives at degree {degree}"))
        })?;
        let reps: Vec<Vec<Fe>> = (0..count)
            .map(|idx| {
                let mut coeffs = vec![0u64; degree + 1];
                coeffs[degree] = 1;
                let mut e = idx;
                for d in 0..free {
                    coeffs[k + d] = e % q;
                    e /= q;
                }
                coeffs
            })
            .collect();
        let deg_rows: Vec<ScanRow> = reps
            .par_iter()
            .map(|coeffs| {
                let p = Poly::new(field.clone(), coeffs.clone());
                let w = code.word_from_poly(&p).expect("same field");
                let d = code.error_distance(&w).expect("within budget").distance;
                ScanRow {
                    degree,
                    coeffs: coeffs.clone(),
                    distance: d,
                    is_deep_hole: d == n - k,
                }
            })
            .collect();
        let mut hist: Vec<(usize, u64)> = Vec::new();
        let mut deep = 0u64;
        for row in &deg_rows {
            if row.is_deep_hole {
                deep += 1;
            }
            match hist.iter_mut().find(|(d, _)| *d == row.distance) {
                Some((_, c)) => *c += 1,
                None => hist.push((row.distance, 1)),
            }
        }
        hist.sort();
        summary.push(DegreeSummary {
            degree,
            representatives: count,
            deep_holes: deep,
            distance_histogram: hist,
        });
        rows.extend(deg_rows);
    }
    Ok(ScanCensus { rows, summary })
}
