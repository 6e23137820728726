//! Exact arithmetic in GF(p^m) for small prime p, with canonical element
//! encoding and the quadratic character.
//!
//! Elements are carried as their canonical integer encoding
//! `enc(x) = sum c_i * p^i` of the coefficient vector `(c_0, ..., c_{m-1})`,
//! a bijection onto `[0, q)` with `enc(0) = 0` and `enc(1) = 1`.

use crate::error::{Error, Result};
use once_cell::sync::OnceCell;
use std::fmt;

/// Canonical integer encoding of a field element, in `[0, q)`.
pub type Fe = u64;

/// A finite field GF(p^m). Immutable after construction; all operations are
/// pure, so values are safe to share across workers.
pub struct Field {
    p: u64,
    m: u32,
    q: u64,
    /// Modulus coefficients low-to-high, length m+1, monic. Empty for m = 1.
    modulus: Vec<u64>,
    /// Full multiplication table for extension fields with small q.
    mul_tab: Option<Vec<Fe>>,
    sqrt_tab: OnceCell<Vec<Option<Fe>>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{}) mod {:?}", self.p, self.m, self.modulus)
        }
    }
}

const MUL_TABLE_LIMIT: u64 = 512;
const MAX_PRIME: u64 = 1 << 16;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---- polynomial helpers over GF(p), coefficients low-to-high ------------

fn gfp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` divided by monic-normalizable `b` over GF(p).
fn gfp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    gfp_trim(&mut r);
    let mut b = b.to_vec();
    gfp_trim(&mut b);
    assert!(!b.is_empty());
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let c = (r[r.len() - 1] * lead_inv) % p;
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let idx = shift + j;
                r[idx] = (r[idx] + p - (c * bj) % p) % p;
            }
        }
        r.pop();
        gfp_trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is a small prime; exponentiation is plenty fast here
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Irreducibility over GF(p) of a monic polynomial of degree m: no monic
/// divisor of degree in [1, m/2]. For m <= 3 this reduces to a root check.
fn is_irreducible(digits: &[u64], p: u64, m: u32) -> Result<bool> {
    let half = (m / 2) as usize;
    for d in 1..=half {
        let count = p.checked_pow(d as u32).filter(|&c| c <= 1_000_000);
        let count = count.ok_or_else(|| {
            Error::InvalidInput("irreducibility search space too large".into())
        })?;
        for enc in 0..count {
            let mut div = vec![0u64; d + 1];
            let mut e = enc;
            for c in div.iter_mut().take(d) {
                *c = e % p;
                e /= p;
            }
            div[d] = 1;
            if gfp_rem(digits, &div, p).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lexicographically least monic irreducible of degree m over GF(p), by
/// ascending enc of the coefficient tail.
fn default_modulus(p: u64, m: u32) -> Result<Vec<u64>> {
    let count = p
        .checked_pow(m)
        .ok_or_else(|| Error::InvalidInput("field too large".into()))?;
    for enc in 0..count {
        let mut digits = vec![0u64; m as usize + 1];
        let mut e = enc;
        for c in digits.iter_mut().take(m as usize) {
            *c = e % p;
            e /= p;
        }
        digits[m as usize] = 1;
        if is_irreducible(&digits, p, m)? {
            return Ok(digits);
        }
    }
    Err(Error::BadModulus)
}

impl Field {
    /// Prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        Self::new(p, 1, None)
    }

    /// Extension field GF(p^m) with the default (lexicographically least)
    /// irreducible modulus.
    pub fn extension(p: u64, m: u32) -> Result<Field> {
        Self::new(p, m, None)
    }

    /// Build a field, verifying primality of p and monic irreducibility of
    /// the modulus eagerly.
    pub fn new(p: u64, m: u32, modulus: Option<Vec<u64>>) -> Result<Field> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidInput("m must be positive".into()));
        }
        let q = p
            .checked_pow(m)
            .ok_or_else(|| Error::InvalidInput("field too large".into()))?;
        let modulus = if m == 1 {
            if modulus.is_some() {
                return Err(Error::InvalidInput("prime field takes no modulus".into()));
            }
            Vec::new()
        } else {
            let digits = match modulus {
                Some(d) => d,
                None => default_modulus(p, m)?,
            };
            if digits.len() != m as usize + 1
                || digits[m as usize] != 1
                || digits.iter().any(|&c| c >= p)
                || !is_irreducible(&digits, p, m)?
            {
                return Err(Error::BadModulus);
            }
            digits
        };
        let mut field = Field {
            p,
            m,
            q,
            modulus,
            mul_tab: None,
            sqrt_tab: OnceCell::new(),
        };
        if m > 1 && q <= MUL_TABLE_LIMIT {
            let mut tab = vec![0u64; (q * q) as usize];
            for a in 0..q {
                for b in a..q {
                    let v = field.mul_raw(a, b);
                    tab[(a * q + b) as usize] = v;
                    tab[(b * q + a) as usize] = v;
                }
            }
            field.mul_tab = Some(tab);
        }
        Ok(field)
    }

    /// Parse a field specification string: `q=<p>` or
    /// `q=<p>^<m>[:mod=<c0>,<c1>,...,<cm>]` (coefficients low-to-high).
    /// The `q=` prefix is optional.
    pub fn parse(spec: &str) -> Result<Field> {
        let s = spec.strip_prefix("q=").unwrap_or(spec);
        let (base, modstr) = match s.split_once(":mod=") {
            Some((b, m)) => (b, Some(m)),
            None => (s, None),
        };
        let (p, m) = match base.split_once('^') {
            Some((p, m)) => (
                p.parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bad field spec `{spec}`")))?,
                m.parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("bad field spec `{spec}`")))?,
            ),
            None => (
                base.parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bad field spec `{spec}`")))?,
                1,
            ),
        };
        let modulus = match modstr {
            Some(ms) => Some(
                ms.split(',')
                    .map(|c| c.trim().parse::<u64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::InvalidInput(format!("bad modulus in `{spec}`")))?,
            ),
            None => None,
        };
        Field::new(p, m, modulus)
    }

    /// Canonical spec string that parses back to this field.
    pub fn spec_string(&self) -> String {
        if self.m == 1 {
            format!("q={}", self.p)
        } else {
            let mods: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            format!("q={}^{}:mod={}", self.p, self.m, mods.join(","))
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn contains(&self, x: Fe) -> bool {
        x < self.q
    }

    fn check(&self, x: Fe) -> Result<Fe> {
        if x < self.q {
            Ok(x)
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// All q elements in increasing enc order, starting at 0.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.q
    }

    /// Nonzero elements in increasing enc order.
    pub fn units(&self) -> impl Iterator<Item = Fe> {
        1..self.q
    }

    fn digits(&self, x: Fe) -> Vec<u64> {
        let mut d = vec![0u64; self.m as usize];
        let mut e = x;
        for c in d.iter_mut() {
            *c = e % self.p;
            e /= self.p;
        }
        d
    }

    fn enc(&self, digits: &[u64]) -> Fe {
        let mut acc = 0u64;
        for &c in digits.iter().rev() {
            acc = acc * self.p + c;
        }
        acc
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        debug_assert!(a < self.q && b < self.q);
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.enc(&sum)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        debug_assert!(a < self.q);
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        let da = self.digits(a);
        let neg: Vec<u64> = da.iter().map(|&x| (self.p - x) % self.p).collect();
        self.enc(&neg)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    fn mul_raw(&self, a: Fe, b: Fe) -> Fe {
        if self.m == 1 {
            return a * b % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let m = self.m as usize;
        let mut conv = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                conv[i + j] = (conv[i + j] + x * y) % self.p;
            }
        }
        // reduce x^i (i >= m) via x^m = -(modulus tail)
        for i in (m..conv.len()).rev() {
            let c = conv[i];
            if c == 0 {
                continue;
            }
            conv[i] = 0;
            for j in 0..m {
                let sub = (c * self.modulus[j]) % self.p;
                conv[i - m + j] = (conv[i - m + j] + self.p - sub) % self.p;
            }
        }
        conv.truncate(m);
        self.enc(&conv)
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        debug_assert!(a < self.q && b < self.q);
        match &self.mul_tab {
            Some(tab) => tab[(a * self.q + b) as usize],
            None => self.mul_raw(a, b),
        }
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        debug_assert!(a < self.q);
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// a / b.
    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Smallest canonical image of an integer (handy for prime fields and
    /// literal constants like 2, 3 in characteristic-p formulas).
    pub fn from_int(&self, n: i64) -> Fe {
        let p = self.p as i64;
        let r = ((n % p) + p) % p;
        r as u64
    }

    /// The quadratic character: 0 on 0, +1 on nonzero squares, -1 otherwise.
    pub fn quadratic_character(&self, x: Fe) -> Result<i64> {
        if self.p == 2 {
            return Err(Error::OddCharRequired);
        }
        self.check(x)?;
        if x == 0 {
            return Ok(0);
        }
        if self.pow(x, (self.q - 1) / 2) == 1 {
            Ok(1)
        } else {
            Ok(-1)
        }
    }

    fn sqrt_table(&self) -> &Vec<Option<Fe>> {
        self.sqrt_tab.get_or_init(|| {
            let mut tab = vec![None; self.q as usize];
            // descending fill leaves the lex-least root
            for y in (0..self.q).rev() {
                tab[self.mul(y, y) as usize] = Some(y);
            }
            tab
        })
    }

    /// Some y with y^2 = x, if one exists (lex-least by enc).
    pub fn sqrt(&self, x: Fe) -> Option<Fe> {
        self.sqrt_table()[x as usize]
    }

    /// True when x is a square, counting 0 as a square.
    pub fn is_square(&self, x: Fe) -> bool {
        self.sqrt_table()[x as usize].is_some()
    }
}
