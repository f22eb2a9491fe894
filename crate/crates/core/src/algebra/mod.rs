//! The algebras A(n, d, q̲): n commuting copies of k[h^{±1}](σ, h^d − 1)
//! with σ_i(h_i) = q_i h_i and q_i = q^{c_i}.

mod element;
mod laurent;
pub mod relations;

use std::sync::Arc;

pub use element::{generators, sigma_action, straighten, Generators, GwaElement};
pub use laurent::LaurentPoly;

use crate::error::{Error, Result};
use crate::scalars::{Field, FieldConfig, Scalar};

/// Plain-data description of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraConfig {
    pub n: usize,
    pub d: u32,
    pub field: FieldConfig,
    pub c: Vec<i64>,
}

#[derive(Debug)]
struct AlgebraInner {
    config: AlgebraConfig,
    field: Field,
}

/// Shared handle to a validated algebra.
#[derive(Clone, Debug)]
pub struct Algebra(Arc<AlgebraInner>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.config == other.0.config
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Validates `c_i ≠ 0` and `q_i^d ≠ 1` for every factor.
    pub fn new(field: &Field, d: u32, c: Vec<i64>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::InvalidConfig("need at least one tensor factor".into()));
        }
        if d == 0 {
            return Err(Error::InvalidConfig("d must be >= 1".into()));
        }
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                return Err(Error::InvalidConfig(format!("c_{} = 0", i + 1)));
            }
            if field.is_one_of_power(ci * d as i64) {
                return Err(Error::InvalidConfig(format!(
                    "q_{}^d = 1 (c_{} = {ci}, d = {d})",
                    i + 1,
                    i + 1
                )));
            }
        }
        let config = AlgebraConfig {
            n: c.len(),
            d,
            field: field.config(),
            c,
        };
        Ok(Algebra(Arc::new(AlgebraInner {
            config,
            field: field.clone(),
        })))
    }

    pub fn from_config(config: &AlgebraConfig) -> Result<Self> {
        if config.c.len() != config.n {
            return Err(Error::InvalidConfig(format!(
                "n = {} but {} entries in c",
                config.n,
                config.c.len()
            )));
        }
        let field = Field::new(config.field)?;
        Self::new(&field, config.d, config.c.clone())
    }

    /// Builds the algebra and verifies every defining relation as an
    /// element identity.
    pub fn new_checked(field: &Field, d: u32, c: Vec<i64>) -> Result<Self> {
        let a = Self::new(field, d, c)?;
        let failures = relations::self_test(&a);
        if !failures.is_empty() {
            return Err(Error::InvalidConfig(format!(
                "defining relations fail: {}",
                failures.join(", ")
            )));
        }
        Ok(a)
    }

    pub fn config(&self) -> &AlgebraConfig {
        &self.0.config
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn n(&self) -> usize {
        self.0.config.n
    }

    pub fn d(&self) -> u32 {
        self.0.config.d
    }

    pub fn c(&self) -> &[i64] {
        &self.0.config.c
    }

    /// q_i (0-based).
    pub fn q_i(&self, i: usize) -> Scalar {
        self.field().q_power(self.c()[i])
    }

    /// q_i^k.
    pub fn q_i_pow(&self, i: usize, k: i64) -> Scalar {
        self.field().q_power(self.c()[i] * k)
    }

    /// a_d(λ·h_i) = λ^d h_i^d − 1 as an n-variable Laurent polynomial.
    pub fn a_d(&self, i: usize, lambda: &Scalar) -> LaurentPoly {
        let field = self.field();
        let mut exp = vec![0; self.n()];
        exp[i] = self.d() as i64;
        let lead = lambda.pow(self.d() as i64).expect("nonnegative power");
        &LaurentPoly::monomial(field, exp, lead) - &LaurentPoly::one(field, self.n())
    }

    /// a_d(q_i^k h_i).
    pub fn a_d_shifted(&self, i: usize, k: i64) -> LaurentPoly {
        self.a_d(i, &self.q_i_pow(i, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_parameters() {
        let t = Field::transcendental(1).unwrap();
        assert!(Algebra::new(&t, 1, vec![0]).is_err());
        assert!(Algebra::new(&t, 0, vec![1]).is_err());
        assert!(Algebra::new(&t, 1, vec![]).is_err());
        let r = Field::root_of_unity(6, 1).unwrap();
        // q^3 = -1, so q^6 = 1: d = 6 is forbidden but d = 2 is fine.
        assert!(Algebra::new(&r, 6, vec![1]).is_err());
        assert!(Algebra::new(&r, 2, vec![1]).is_ok());
        assert!(Algebra::new(&r, 2, vec![3]).is_err());
    }
}
