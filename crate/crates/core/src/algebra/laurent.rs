//! Sparse Laurent polynomials in h_1, …, h_n over the ground field.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

/// A finitely supported map from exponent vectors to nonzero scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    field: Field,
    arity: usize,
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl LaurentPoly {
    pub fn zero(field: &Field, arity: usize) -> Self {
        LaurentPoly {
            field: field.clone(),
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Field, arity: usize) -> Self {
        Self::constant(field, arity, field.one())
    }

    pub fn constant(field: &Field, arity: usize, c: Scalar) -> Self {
        Self::monomial(field, vec![0; arity], c)
    }

    pub fn monomial(field: &Field, exp: Vec<i64>, c: Scalar) -> Self {
        let mut p = Self::zero(field, exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// h_i (0-based index).
    pub fn var(field: &Field, arity: usize, i: usize) -> Self {
        let mut exp = vec![0; arity];
        exp[i] = 1;
        Self::monomial(field, exp, field.one())
    }

    /// Builds from (exponent, coefficient) pairs, summing duplicates.
    pub fn from_terms(
        field: &Field,
        arity: usize,
        terms: impl IntoIterator<Item = (Vec<i64>, Scalar)>,
    ) -> Self {
        let mut p = Self::zero(field, arity);
        for (exp, c) in terms {
            assert_eq!(exp.len(), arity, "exponent vector length mismatch");
            p.add_term(exp, c);
        }
        p
    }

    fn add_term(&mut self, exp: Vec<i64>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i64]) -> Option<&Scalar> {
        self.terms.get(exp)
    }

    /// `Some((c, exp))` when the polynomial is the single term c·h^exp.
    pub fn as_monomial(&self) -> Option<(&Scalar, &Vec<i64>)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(e, c)| (c, e))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field, self.arity);
        }
        LaurentPoly {
            field: self.field.clone(),
            arity: self.arity,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies every monomial by h^shift.
    pub fn shift_exponents(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            field: self.field.clone(),
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Rescales each monomial h^a by `factor(a)`.
    pub fn map_coefficients(&self, mut factor: impl FnMut(&[i64]) -> Scalar) -> Self {
        let mut out = Self::zero(&self.field, self.arity);
        for (e, c) in &self.terms {
            let v = c * &factor(e);
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    /// Substitutes h_i ↦ c_i·h^{v_i} where every image is a monomial in an
    /// `arity`-variable ring.
    pub fn substitute_monomials(&self, arity: usize, images: &[(Scalar, Vec<i64>)]) -> Result<Self> {
        assert_eq!(images.len(), self.arity, "one image per variable");
        let mut out = Self::zero(&self.field, arity);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exp = vec![0i64; arity];
            for (a, (ci, vi)) in e.iter().zip(images) {
                if *a == 0 {
                    continue;
                }
                coeff = coeff * ci.pow(*a)?;
                for (slot, v) in exp.iter_mut().zip(vi) {
                    *slot += a * v;
                }
            }
            out.add_term(exp, coeff);
        }
        Ok(out)
    }

    /// Embeds into `arity` variables, sending variable k to position `positions[k]`.
    pub fn embed(&self, arity: usize, positions: &[usize]) -> Self {
        let mut out = Self::zero(&self.field, arity);
        for (e, c) in &self.terms {
            let mut exp = vec![0i64; arity];
            for (a, &p) in e.iter().zip(positions) {
                exp[p] += a;
            }
            out.add_term(exp, c.clone());
        }
        out
    }

    /// Restricts to a univariate polynomial in variable `j` after dividing by
    /// h^offset; fails if any monomial disagrees with `offset` off `j`.
    pub fn restrict_to_variable(&self, j: usize, offset: &[i64]) -> Option<LaurentPoly> {
        let mut out = Self::zero(&self.field, 1);
        for (e, c) in &self.terms {
            for (k, (a, o)) in e.iter().zip(offset).enumerate() {
                if k != j && a != o {
                    return None;
                }
            }
            out.terms.insert(vec![e[j] - offset[j]], c.clone());
        }
        Some(out)
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            return self.inverse()?.pow(-exp);
        }
        let mut result = Self::one(&self.field, self.arity);
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Inverse of a monomial; other polynomials are not units.
    pub fn inverse(&self) -> Result<Self> {
        let (c, e) = self.as_monomial().ok_or(Error::DivisionByZero)?;
        Ok(Self::monomial(
            &self.field,
            e.iter().map(|x| -x).collect(),
            c.inv()?,
        ))
    }

    /// Exact division of univariate Laurent polynomials; `None` if the
    /// quotient is not a Laurent polynomial.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<Option<LaurentPoly>> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(_) = divisor.as_monomial() {
            return Ok(Some(self * &divisor.inverse()?));
        }
        assert_eq!(self.arity, 1, "exact division is univariate");
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        let dmin = divisor.terms.keys().next().unwrap()[0];
        let dmax = divisor.terms.keys().next_back().unwrap()[0];
        let lead_inv = divisor.terms.values().next_back().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.field, 1);
        while let Some((top, c)) = rem.terms.iter().next_back().map(|(e, c)| (e[0], c.clone())) {
            let lowest = rem.terms.keys().next().unwrap()[0];
            // Remaining span is shorter than the divisor: not exact.
            if top - lowest < dmax - dmin {
                return Ok(None);
            }
            let k = top - dmax;
            let coef = &c * &lead_inv;
            let step = divisor.shift_exponents(&[k]).scale(&coef);
            rem = &rem - &step;
            quot.add_term(vec![k], coef);
        }
        Ok(Some(quot))
    }

    fn check(&self, other: &LaurentPoly) {
        assert!(
            self.arity == other.arity && self.field == other.field,
            "Laurent polynomials from different rings"
        );
    }

    fn add_impl(&self, other: &LaurentPoly) -> LaurentPoly {
        self.check(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn neg_impl(&self) -> LaurentPoly {
        LaurentPoly {
            field: self.field.clone(),
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    fn mul_impl(&self, other: &LaurentPoly) -> LaurentPoly {
        self.check(other);
        let mut out = Self::zero(&self.field, self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, c1 * c2);
            }
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_impl(rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_impl(&rhs.neg_impl())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_impl()
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.arity == 1 {
            return f.write_str(&crate::literal::format_laurent(self));
        }
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("({c})*h^{e:?}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
