//! Generalized Reed-Solomon codes: words, error distance with two
//! independent engines, and the degree-based distance bounds.
//!
//! The primary engine scans k-subsets of the evaluation set: any codeword
//! agreeing with a word on at least k points is determined by k of them,
//! and the lower degree bound guarantees a best agreement of at least k,
//! so the scan is exact. The second engine enumerates all q^k codewords
//! and serves as an independent oracle.

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::Poly;
use crate::subsets::{binomial, Combinations};
use once_cell::sync::OnceCell;
use rayon::prelude::*;
use std::sync::Arc;

/// Default interpolation / codeword budget for the distance engines,
/// overridable via the `DEEPHOLE_BUDGET` environment variable.
pub fn default_budget() -> u64 {
    std::env::var("DEEPHOLE_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1_000_000)
}

pub struct GrsCode {
    field: Arc<Field>,
    points: Vec<Fe>,
    k: usize,
    codeword_cache: OnceCell<Vec<Vec<Fe>>>,
}

#[derive(Clone, Debug)]
pub struct Word {
    values: Vec<Fe>,
    /// Unique interpolant of degree <= n-1 agreeing with `values` on D.
    interp: Poly,
    /// Set when the defining polynomial had degree >= n and was reduced.
    reduced: bool,
}

#[derive(Clone, Debug)]
pub struct DistanceReport {
    pub distance: usize,
    /// Codeword polynomial (degree <= k-1) attaining the distance.
    pub witness: Poly,
    /// Points of D where the word and the witness agree, in D order.
    pub agreement_set: Vec<Fe>,
}

impl GrsCode {
    pub fn new(field: Arc<Field>, points: Vec<Fe>, k: usize) -> Result<GrsCode> {
        let n = points.len();
        if !(1 <= k && k < n && n as u64 <= field.q()) {
            return Err(Error::InvalidInput(format!(
                "need 1 <= k < n <= q, got k={k}, n={n}, q={}",
                field.q()
            )));
        }
        for &x in &points {
            if !field.contains(x) {
                return Err(Error::FieldMismatch);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if points[i] == points[j] {
                    return Err(Error::InvalidInput(format!(
                        "evaluation set repeats {}",
                        points[i]
                    )));
                }
            }
        }
        Ok(GrsCode {
            field,
            points,
            k,
            codeword_cache: OnceCell::new(),
        })
    }

    /// Evaluation-set spec: `full`, `star`, `star-minus-1`, or
    /// `list:<enc>,<enc>,...`.
    pub fn parse_set(field: &Field, spec: &str) -> Result<Vec<Fe>> {
        match spec {
            "full" => Ok(field.elements().collect()),
            "star" => Ok(field.units().collect()),
            "star-minus-1" => Ok(field.units().filter(|&x| x != 1).collect()),
            _ => {
                let body = spec.strip_prefix("list:").ok_or_else(|| {
                    Error::InvalidInput(format!("bad evaluation-set spec `{spec}`"))
                })?;
                let pts = body
                    .split(',')
                    .map(|c| c.trim().parse::<u64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::InvalidInput(format!("bad evaluation set `{spec}`")))?;
                if pts.iter().any(|&x| !field.contains(x)) {
                    return Err(Error::InvalidInput("evaluation point out of field".into()));
                }
                Ok(pts)
            }
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn points(&self) -> &[Fe] {
        &self.points
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// The word of evaluations of f on D. Polynomials of degree >= n are
    /// reduced modulo prod (x - a) implicitly by re-interpolation, flagged.
    pub fn word_from_poly(&self, f: &Poly) -> Result<Word> {
        if f.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let values: Vec<Fe> = self.points.iter().map(|&x| f.eval(x)).collect();
        let n = self.n();
        let high = f.degree().is_some_and(|d| d > n - 1);
        let interp = if high {
            let pts: Vec<(Fe, Fe)> = self.points.iter().copied().zip(values.iter().copied()).collect();
            Poly::interpolate(self.field.clone(), &pts)?
        } else {
            f.clone()
        };
        Ok(Word {
            values,
            interp,
            reduced: high,
        })
    }

    pub fn word_from_values(&self, values: Vec<Fe>) -> Result<Word> {
        if values.len() != self.n() {
            return Err(Error::InvalidInput("wrong word length".into()));
        }
        let pts: Vec<(Fe, Fe)> = self.points.iter().copied().zip(values.iter().copied()).collect();
        let interp = Poly::interpolate(self.field.clone(), &pts)?;
        Ok(Word {
            values,
            interp,
            reduced: false,
        })
    }

    /// Degree-based distance bounds (n - deg f, n - k) for k <= deg f <= n-1.
    pub fn degree_bounds(&self, f: &Poly) -> Result<(usize, usize)> {
        let deg = match f.degree() {
            Some(d) if self.k <= d && d < self.n() => d,
            _ => {
                return Err(Error::DegreeOutOfRange(format!(
                    "need k <= deg f <= n-1, got deg {:?}",
                    f.degree()
                )))
            }
        };
        Ok((self.n() - deg, self.n() - self.k))
    }

    /// Exact error distance by the k-subset interpolation scan.
    pub fn error_distance(&self, u: &Word) -> Result<DistanceReport> {
        self.error_distance_budgeted(u, default_budget())
    }

    pub fn error_distance_budgeted(&self, u: &Word, budget: u64) -> Result<DistanceReport> {
        let n = self.n();
        let k = self.k;
        if u.interp.degree().is_none_or(|d| d < k) {
            return Ok(DistanceReport {
                distance: 0,
                witness: u.interp.clone(),
                agreement_set: self.points.clone(),
            });
        }
        if binomial(n as u64, k as u64) > budget as u128 {
            return Err(Error::BudgetExceeded(format!(
                "C({n},{k}) interpolations exceed budget {budget}"
            )));
        }
        let combos: Vec<Vec<usize>> = Combinations::new(n, k).collect();
        // Each subset is an independent pure computation; the reduction
        // keys on (agreement, lex rank), so worker count never changes
        // the reported witness.
        let best = combos
            .par_iter()
            .enumerate()
            .map(|(rank, subset)| {
                let pts: Vec<(Fe, Fe)> = subset
                    .iter()
                    .map(|&i| (self.points[i], u.values[i]))
                    .collect();
                let h = Poly::interpolate(self.field.clone(), &pts)
                    .expect("distinct nodes by construction");
                let agree = self
                    .points
                    .iter()
                    .zip(&u.values)
                    .filter(|&(&x, &v)| h.eval(x) == v)
                    .count();
                (agree, std::cmp::Reverse(rank), h)
            })
            .reduce_with(|a, b| if (b.0, b.1) > (a.0, a.1) { b } else { a })
            .expect("at least one k-subset");
        let witness = best.2;
        let agreement_set: Vec<Fe> = self
            .points
            .iter()
            .zip(&u.values)
            .filter(|&(&x, &v)| witness.eval(x) == v)
            .map(|(&x, _)| x)
            .collect();
        Ok(DistanceReport {
            distance: n - best.0,
            witness,
            agreement_set,
        })
    }

    fn codewords(&self, budget: u64) -> Result<&Vec<Vec<Fe>>> {
        let size = (0..self.k).try_fold(1u64, |acc, _| acc.checked_mul(self.field.q()));
        match size {
            Some(s) if s <= budget => {}
            _ => {
                return Err(Error::BudgetExceeded(format!(
                    "q^k codewords exceed budget {budget}"
                )))
            }
        }
        Ok(self.codeword_cache.get_or_init(|| {
            let q = self.field.q();
            let mut out = Vec::new();
            let mut coeffs = vec![0u64; self.k];
            loop {
                let p = Poly::new(self.field.clone(), coeffs.clone());
                out.push(self.points.iter().map(|&x| p.eval(x)).collect());
                // base-q odometer, low digit fastest
                let mut i = 0;
                loop {
                    if i == self.k {
                        return out;
                    }
                    coeffs[i] += 1;
                    if coeffs[i] < q {
                        break;
                    }
                    coeffs[i] = 0;
                    i += 1;
                }
            }
        }))
    }

    /// Independent oracle: minimum Hamming distance over all q^k codewords.
    pub fn error_distance_bruteforce(&self, u: &Word, budget: u64) -> Result<DistanceReport> {
        let words = self.codewords(budget)?;
        let mut best = usize::MAX;
        let mut best_idx = 0;
        for (idx, cw) in words.iter().enumerate() {
            let d = cw
                .iter()
                .zip(&u.values)
                .filter(|&(a, b)| a != b)
                .count();
            if d < best {
                best = d;
                best_idx = idx;
            }
        }
        // rebuild the witness polynomial from its enumeration index
        let q = self.field.q();
        let mut coeffs = vec![0u64; self.k];
        let mut e = best_idx as u64;
        for c in coeffs.iter_mut() {
            *c = e % q;
            e /= q;
        }
        let witness = Poly::new(self.field.clone(), coeffs);
        let agreement_set = self
            .points
            .iter()
            .zip(&u.values)
            .filter(|&(&x, &v)| witness.eval(x) == v)
            .map(|(&x, _)| x)
            .collect();
        Ok(DistanceReport {
            distance: best,
            witness,
            agreement_set,
        })
    }

    /// True iff the word attains the covering-radius bound n - k.
    pub fn is_deep_hole(&self, u: &Word) -> Result<bool> {
        Ok(self.error_distance(u)?.distance == self.n() - self.k)
    }
}

impl Word {
    pub fn values(&self) -> &[Fe] {
        &self.values
    }
    pub fn interp(&self) -> &Poly {
        &self.interp
    }
    pub fn was_reduced(&self) -> bool {
        self.reduced
    }
    pub fn is_codeword(&self, code: &GrsCode) -> bool {
        self.interp.degree().is_none_or(|d| d < code.k())
    }
}
