//! Dense univariate polynomial algebra over a [`Field`]: evaluation,
//! Lagrange interpolation, products from roots, and root location on a
//! fixed point set.
//!
//! Canonical form (no trailing zero coefficients) is enforced on every
//! constructor and arithmetic result, so equality is plain coefficient
//! comparison. The zero polynomial has an empty coefficient vector and
//! `degree() == None`, ordered below every integer degree.

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Arc<Field>,
    /// Coefficients low-to-high; empty means the zero polynomial.
    coeffs: Vec<Fe>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Poly {
    pub fn new(field: Arc<Field>, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|&c| field.contains(c)));
        Poly { field, coeffs }
    }

    pub fn zero(field: Arc<Field>) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: Arc<Field>, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    /// c * x^d.
    pub fn monomial(field: Arc<Field>, c: Fe, d: usize) -> Poly {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c;
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Fe {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None encodes the degree of the zero polynomial ("-infinity").
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.same_field(other).expect("mixed-field polynomials");
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.same_field(other).expect("mixed-field polynomials");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(self.field.clone(), 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// f(x + c), by Horner in the shifted variable.
    pub fn shift(&self, c: Fe) -> Poly {
        let x_plus_c = Poly::new(self.field.clone(), vec![c, 1]);
        let mut acc = Poly::zero(self.field.clone());
        for &coef in self.coeffs.iter().rev() {
            acc = acc
                .mul(&x_plus_c)
                .add(&Poly::constant(self.field.clone(), coef));
        }
        acc
    }

    /// Unique interpolant of degree <= #points - 1 through distinct nodes.
    pub fn interpolate(field: Arc<Field>, points: &[(Fe, Fe)]) -> Result<Poly> {
        if points.is_empty() {
            return Err(Error::InvalidInput("no interpolation points".into()));
        }
        for (i, (xi, _)) in points.iter().enumerate() {
            for (xj, _) in points.iter().skip(i + 1) {
                if xi == xj {
                    return Err(Error::DuplicateNode(*xi));
                }
            }
        }
        let f = &field;
        // master product, then one synthetic division per node
        let master = Poly::from_roots(field.clone(), points.iter().map(|&(x, _)| x));
        let mut acc = Poly::zero(field.clone());
        for &(xi, yi) in points {
            if yi == 0 {
                continue;
            }
            // q = master / (x - xi)
            let mc = master.coeffs();
            let n = mc.len() - 1;
            let mut q = vec![0u64; n];
            let mut carry = mc[n];
            for d in (0..n).rev() {
                q[d] = carry;
                carry = f.add(mc[d], f.mul(carry, xi));
            }
            let qp = Poly::new(field.clone(), q);
            let denom = qp.eval(xi);
            let c = f.mul(yi, f.inv(denom)?);
            acc = acc.add(&qp.scale(c));
        }
        Ok(acc)
    }

    /// Monic polynomial with exactly the given roots (with multiplicity).
    pub fn from_roots(field: Arc<Field>, roots: impl IntoIterator<Item = Fe>) -> Poly {
        let mut acc = Poly::constant(field.clone(), 1);
        for r in roots {
            let lin = Poly::new(field.clone(), vec![field.neg(r), 1]);
            acc = acc.mul(&lin);
        }
        acc
    }

    /// Zeros of a nonzero polynomial among the points of D, in D's order.
    pub fn zeros_on_set(&self, d_set: &[Fe]) -> Result<Vec<Fe>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(d_set.iter().copied().filter(|&x| self.eval(x) == 0).collect())
    }

    /// Comma-separated enc values low-to-high, e.g. `6,0,0,1` for x^3+6.
    pub fn parse(field: Arc<Field>, text: &str) -> Result<Poly> {
        let coeffs = text
            .split(',')
            .map(|c| c.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidInput(format!("bad polynomial `{text}`")))?;
        if coeffs.iter().any(|&c| !field.contains(c)) {
            return Err(Error::InvalidInput(format!(
                "coefficient out of range in `{text}`"
            )));
        }
        Ok(Poly::new(field, coeffs))
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}
