//! Exact computation of the subset-sum census N(t,b,D) — the number of
//! t-subsets of D summing to b — by exhaustive enumeration and by the
//! explicit closed formulas for D = F_q^* and D = F_q^* minus {1}, plus
//! the degree-(k+1) deep-hole criterion it controls.

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::grs::GrsCode;
use crate::subsets::{binomial, Combinations};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::Arc;

/// Default subset-visit budget for brute counting, overridable via the
/// `DEEPHOLE_CENSUS_BUDGET` environment variable.
pub fn default_census_budget() -> u64 {
    std::env::var("DEEPHOLE_CENSUS_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(100_000_000)
}

#[derive(Clone, Debug)]
pub struct CensusQuery {
    pub field: Arc<Field>,
    pub d_set: Vec<Fe>,
    pub t: usize,
    pub b: Fe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMethod {
    Brute,
    FormulaFullStar,
    FormulaStarMinusOne,
}

#[derive(Clone, Debug)]
pub struct CensusRecord {
    pub t: usize,
    pub b: Fe,
    pub count: BigUint,
    pub method: CensusMethod,
}

impl CensusQuery {
    pub fn new(field: Arc<Field>, d_set: Vec<Fe>, t: usize, b: Fe) -> Result<CensusQuery> {
        if t > d_set.len() {
            return Err(Error::RangeViolation(format!(
                "t = {t} exceeds |D| = {}",
                d_set.len()
            )));
        }
        if !field.contains(b) || d_set.iter().any(|&x| !field.contains(x)) {
            return Err(Error::FieldMismatch);
        }
        Ok(CensusQuery { field, d_set, t, b })
    }
}

const MITM_THRESHOLD: usize = 12;

/// Exact count by lexicographic subset enumeration, switching to a
/// meet-in-the-middle split when t and |D|-t both exceed 12.
pub fn count_bruteforce(query: &CensusQuery, budget: u64) -> Result<CensusRecord> {
    let n = query.d_set.len();
    let t = query.t;
    let f = &query.field;
    let count: BigUint = if t > MITM_THRESHOLD && n - t > MITM_THRESHOLD {
        let half = n / 2;
        if 1u128 << (half + 1) > budget as u128 {
            return Err(Error::BudgetExceeded(format!(
                "meet-in-the-middle over 2^{half} half-subsets"
            )));
        }
        let left = &query.d_set[..half];
        let right = &query.d_set[half..];
        // size -> (sum -> count) per half
        let tab = |part: &[Fe]| -> Vec<HashMap<Fe, u128>> {
            let mut maps: Vec<HashMap<Fe, u128>> = vec![HashMap::new(); part.len() + 1];
            for mask in 0u64..(1u64 << part.len()) {
                let mut s = 0u64;
                let size = mask.count_ones() as usize;
                for (i, &x) in part.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        s = f.add(s, x);
                    }
                }
                *maps[size].entry(s).or_insert(0) += 1;
            }
            maps
        };
        let (lt, rt) = (tab(left), tab(right));
        let mut acc = BigUint::zero();
        for (t1, left_sums) in lt.iter().enumerate().take(t.min(left.len()) + 1) {
            let t2 = t - t1;
            if t2 > right.len() {
                continue;
            }
            for (&s1, &c1) in left_sums {
                let need = f.sub(query.b, s1);
                if let Some(&c2) = rt[t2].get(&need) {
                    acc += BigUint::from(c1) * BigUint::from(c2);
                }
            }
        }
        acc
    } else {
        if binomial(n as u64, t as u64) > budget as u128 {
            return Err(Error::BudgetExceeded(format!(
                "C({n},{t}) subset visits exceed budget {budget}"
            )));
        }
        let mut acc: u64 = 0;
        for combo in Combinations::new(n, t) {
            let mut s = 0u64;
            for &i in &combo {
                s = f.add(s, query.d_set[i]);
            }
            if s == query.b {
                acc += 1;
            }
        }
        BigUint::from(acc)
    };
    Ok(CensusRecord {
        t,
        b: query.b,
        count,
        method: CensusMethod::Brute,
    })
}

/// Binomial coefficient with integer (possibly negative) upper index and
/// the convention binom(n, 0) = 1.
fn binom_int(n: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n) - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

fn sign(e: u64) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn rational_to_count(r: BigRational) -> Result<BigUint> {
    if !r.is_integer() {
        return Err(Error::NonIntegerResult);
    }
    let n = r.to_integer();
    if n.is_negative() {
        return Err(Error::NonIntegerResult);
    }
    Ok(n.to_biguint().expect("nonnegative"))
}

/// Closed formula for N(t, 0, F_q^*).
pub fn formula_full_star(field: &Field, t: usize) -> Result<CensusRecord> {
    let (q, p) = (field.q(), field.p());
    if t as u64 > q - 1 {
        return Err(Error::RangeViolation(format!("t = {t} exceeds q-1")));
    }
    let t64 = t as u64;
    let big_q = || BigRational::from(BigInt::from(q));
    let term1 = BigRational::from(binom_int((q - 1) as i64, t64)) / big_q();
    let term2 = BigRational::from(
        sign(t64 + t64 / p) * BigInt::from(q - 1) * binom_int((q / p - 1) as i64, t64 / p),
    ) / big_q();
    let count = rational_to_count(term1 + term2)?;
    Ok(CensusRecord {
        t,
        b: 0,
        count,
        method: CensusMethod::FormulaFullStar,
    })
}

/// Closed formula for N(t, b, F_q^* minus {1}), restricted to prime q
/// where residue arithmetic on b and t is unambiguous.
pub fn formula_star_minus_one(field: &Field, t: usize, b: Fe) -> Result<CensusRecord> {
    if field.m() != 1 {
        return Err(Error::NonPrimeField);
    }
    let q = field.q();
    let p = field.p();
    if t as u64 > q - 2 {
        return Err(Error::RangeViolation(format!("t = {t} exceeds q-2")));
    }
    let t64 = t as u64;
    let fl = t64 / p;
    let t_res = t64 % p; // least nonnegative residue of t mod p
    let qp2 = q as i64 / p as i64 - 2; // equals -1 when q = p
    let qp1 = (q / p - 1) as i64;
    // R_t carries an extra (-1)^t on top of (-1)^{floor(t/p)}: without it
    // the total is non-integral already at q=5, t=1 (cross-checked brute).
    let r_t = -BigInt::from(p) * sign(t64 + fl) * binom_int(qp2, fl)
        + BigInt::from(p - 1 - t_res) * sign(t64 + fl) * binom_int(qp1, fl);
    // second argument of M is t - b, computed on residues mod p
    let b2 = (t_res + p - b % p) % p;
    let delta = if b2 > t_res { BigInt::one() } else { BigInt::zero() };
    let m_tb = -sign(fl) * binom_int(qp2, fl) + delta * sign(fl) * binom_int(qp1, fl);
    let big_q = BigRational::from(BigInt::from(q));
    let total = BigRational::from(binom_int((q - 2) as i64, t64)) / big_q.clone()
        + BigRational::from(r_t) / big_q
        - BigRational::from(sign(t64) * m_tb);
    let count = rational_to_count(total)?;
    Ok(CensusRecord {
        t,
        b,
        count,
        method: CensusMethod::FormulaStarMinusOne,
    })
}

/// Degree-(k+1) criterion: f = x^{k+1} - b x^k + tail defines a deep hole
/// iff no (k+1)-subset of D sums to b.
pub fn deephole_criterion_deg_k_plus_1(code: &GrsCode, b: Fe) -> Result<bool> {
    let t = code.k() + 1;
    if t > code.n() {
        return Err(Error::RangeViolation("k+1 exceeds |D|".into()));
    }
    let query = CensusQuery::new(
        code.field().clone(),
        code.points().to_vec(),
        t,
        b,
    )?;
    let rec = count_bruteforce(&query, default_census_budget())?;
    Ok(rec.count.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn star_query(spec: &str, t: usize, b: Fe) -> CensusQuery {
        let f = Arc::new(Field::parse(spec).unwrap());
        let d: Vec<Fe> = f.units().collect();
        CensusQuery::new(f, d, t, b).unwrap()
    }

    #[test]
    fn brute_examples() {
        // t=1 counts membership
        let q = star_query("q=7", 1, 3);
        assert_eq!(count_bruteforce(&q, 1000).unwrap().count, BigUint::from(1u32));
        let f = q.field.clone();
        let q0 = CensusQuery::new(f.clone(), q.d_set.clone(), 1, 0).unwrap();
        assert_eq!(count_bruteforce(&q0, 1000).unwrap().count, BigUint::zero());
        // GF(7), t=3, b=0: subsets {1,2,4} and {3,5,6}
        let q3 = star_query("q=7", 3, 0);
        assert_eq!(count_bruteforce(&q3, 1000).unwrap().count, BigUint::from(2u32));
        // GF(8), t=5, b=0: none
        let q8 = star_query("q=2^3", 5, 0);
        assert_eq!(count_bruteforce(&q8, 1000).unwrap().count, BigUint::zero());
        assert!(matches!(
            count_bruteforce(&q3, 1),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn formula_full_star_examples() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(formula_full_star(&f7, 3).unwrap().count, BigUint::from(2u32));
        let f8 = Field::parse("q=2^3").unwrap();
        assert_eq!(formula_full_star(&f8, 5).unwrap().count, BigUint::zero());
        let f5 = Field::prime(5).unwrap();
        assert_eq!(formula_full_star(&f5, 0).unwrap().count, BigUint::one());
    }

    #[test]
    fn formula_star_minus_one_examples() {
        let f7 = Field::prime(7).unwrap();
        // q=7, t=2, b=0: {2,5} and {3,4}
        assert_eq!(
            formula_star_minus_one(&f7, 2, 0).unwrap().count,
            BigUint::from(2u32)
        );
        assert_eq!(
            formula_star_minus_one(&f7, 0, 0).unwrap().count,
            BigUint::one()
        );
        let f9 = Field::parse("q=3^2").unwrap();
        assert!(matches!(
            formula_star_minus_one(&f9, 2, 0),
            Err(Error::NonPrimeField)
        ));
    }

    #[test]
    fn formulas_match_bruteforce() {
        for spec in ["q=2^2", "q=5", "q=7", "q=2^3", "q=3^2", "q=11", "q=13"] {
            let f = Arc::new(Field::parse(spec).unwrap());
            let d: Vec<Fe> = f.units().collect();
            for t in 0..=d.len() {
                let query = CensusQuery::new(f.clone(), d.clone(), t, 0).unwrap();
                let brute = count_bruteforce(&query, 1 << 20).unwrap().count;
                let formula = formula_full_star(&f, t).unwrap().count;
                assert_eq!(brute, formula, "{spec} t={t}");
            }
        }
        for spec in ["q=5", "q=7", "q=11", "q=13"] {
            let f = Arc::new(Field::parse(spec).unwrap());
            let d: Vec<Fe> = f.units().filter(|&x| x != 1).collect();
            for t in 0..=d.len() {
                for b in f.elements() {
                    let query = CensusQuery::new(f.clone(), d.clone(), t, b).unwrap();
                    let brute = count_bruteforce(&query, 1 << 20).unwrap().count;
                    let formula = formula_star_minus_one(&f, t, b).unwrap().count;
                    assert_eq!(brute, formula, "{spec} t={t} b={b}");
                }
            }
        }
    }

    #[test]
    fn row_sum_and_complement_symmetry() {
        for spec in ["q=5", "q=7", "q=2^3", "q=3^2", "q=11"] {
            let f = Arc::new(Field::parse(spec).unwrap());
            let d: Vec<Fe> = f.units().collect();
            let sigma = d.iter().fold(0, |acc, &x| f.add(acc, x));
            for t in 0..=d.len() {
                let mut row = BigUint::zero();
                for b in f.elements() {
                    let query = CensusQuery::new(f.clone(), d.clone(), t, b).unwrap();
                    let c = count_bruteforce(&query, 1 << 20).unwrap().count;
                    row += c.clone();
                    // complement symmetry
                    let cq = CensusQuery::new(
                        f.clone(),
                        d.clone(),
                        d.len() - t,
                        f.sub(sigma, b),
                    )
                    .unwrap();
                    assert_eq!(c, count_bruteforce(&cq, 1 << 20).unwrap().count);
                }
                assert_eq!(
                    row,
                    BigUint::from(binomial(d.len() as u64, t as u64))
                );
            }
        }
    }

    #[test]
    fn meet_in_the_middle_agrees_with_formula() {
        // |D| = 30 with t = 13 or 15 forces the split path
        let f = Arc::new(Field::prime(31).unwrap());
        let d: Vec<Fe> = f.units().collect();
        for t in [13usize, 15] {
            let query = CensusQuery::new(f.clone(), d.clone(), t, 0).unwrap();
            let mitm = count_bruteforce(&query, default_census_budget())
                .unwrap()
                .count;
            assert_eq!(mitm, formula_full_star(&f, t).unwrap().count);
        }
    }

    #[test]
    fn criterion_examples() {
        // GF(8), star, k=4: N(5,0)=0 so x^5 is a deep hole
        let f8 = Arc::new(Field::parse("q=2^3").unwrap());
        let d8: Vec<Fe> = f8.units().collect();
        let c8 = GrsCode::new(f8.clone(), d8, 4).unwrap();
        assert!(deephole_criterion_deg_k_plus_1(&c8, 0).unwrap());
        let w = c8
            .word_from_poly(&Poly::monomial(f8, 1, 5))
            .unwrap();
        assert_eq!(c8.error_distance(&w).unwrap().distance, 3);
        // GF(7), star, k=2: N(3,0)=2 so not a deep hole
        let f7 = Arc::new(Field::prime(7).unwrap());
        let d7: Vec<Fe> = f7.units().collect();
        let c7 = GrsCode::new(f7.clone(), d7, 2).unwrap();
        assert!(!deephole_criterion_deg_k_plus_1(&c7, 0).unwrap());
        let w7 = c7.word_from_poly(&Poly::monomial(f7, 1, 3)).unwrap();
        assert_eq!(c7.error_distance(&w7).unwrap().distance, 3);
        // k+1 = |D|: the whole set is the only candidate
        let f5 = Arc::new(Field::prime(5).unwrap());
        let d5: Vec<Fe> = f5.units().collect();
        let c5 = GrsCode::new(f5.clone(), d5.clone(), 3).unwrap();
        let sigma = d5.iter().fold(0, |acc, &x| f5.add(acc, x));
        assert!(!deephole_criterion_deg_k_plus_1(&c5, sigma).unwrap());
    }

    #[test]
    fn criterion_agrees_with_distance_engine() {
        for (spec, ks) in [
            ("q=5", vec![2usize]),
            ("q=7", vec![2, 3]),
            ("q=2^3", vec![2, 4]),
            ("q=3^2", vec![3]),
        ] {
            let f = Arc::new(Field::parse(spec).unwrap());
            let d: Vec<Fe> = f.units().collect();
            for k in ks {
                let code = GrsCode::new(f.clone(), d.clone(), k).unwrap();
                for b in f.elements() {
                    let crit = deephole_criterion_deg_k_plus_1(&code, b).unwrap();
                    // word of x^{k+1} - b x^k
                    let p = Poly::monomial(f.clone(), 1, k + 1)
                        .sub(&Poly::monomial(f.clone(), b, k));
                    let w = code.word_from_poly(&p).unwrap();
                    assert_eq!(crit, code.is_deep_hole(&w).unwrap(), "{spec} k={k} b={b}");
                }
            }
        }
    }
}
