//! The quantum torus T_q̲ = ⊗_i k⟨u_i^{±1}, v_i^{±1}⟩/(u_i v_i = q_i v_i u_i)
//! and the two embeddings of A(n, d, q̲) into it.
//!
//! φ' only respects the relations when read in the opposite torus
//! u_i v_i = q_i^{-1} v_i u_i, so each element records which of the two it
//! lives in.
//!
//! Elements are kept with every u-monomial to the left of every
//! v-monomial. Units of the torus are exactly its nonzero monomials, which
//! gives an independent check on [`GwaElement::recognize_unit`].

use std::collections::BTreeMap;

use crate::algebra::{Algebra, GwaElement};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

type Key = (Vec<i64>, Vec<i64>);

/// u_i v_i = q_i v_i u_i, or its opposite u_i v_i = q_i^{-1} v_i u_i.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Standard,
    Opposite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    algebra: Algebra,
    orientation: Orientation,
    terms: BTreeMap<Key, Scalar>,
}

impl TorusElement {
    pub fn zero(algebra: &Algebra) -> Self {
        TorusElement {
            algebra: algebra.clone(),
            orientation: Orientation::Standard,
            terms: BTreeMap::new(),
        }
    }

    /// The same terms read in the other torus.
    pub fn in_torus(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    fn same_torus(&self, other: &TorusElement) -> Result<()> {
        if self.algebra != other.algebra || self.orientation != other.orientation {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// c·u^a v^b.
    pub fn monomial(algebra: &Algebra, u: Vec<i64>, v: Vec<i64>, c: Scalar) -> Self {
        let mut t = Self::zero(algebra);
        t.add_term((u, v), c);
        t
    }

    pub fn one(algebra: &Algebra) -> Self {
        let n = algebra.n();
        Self::monomial(algebra, vec![0; n], vec![0; n], algebra.field().one())
    }

    fn unit_vec(n: usize, i: usize, k: i64) -> Vec<i64> {
        let mut v = vec![0; n];
        v[i] = k;
        v
    }

    pub fn u(algebra: &Algebra, i: usize, k: i64) -> Self {
        let n = algebra.n();
        Self::monomial(algebra, Self::unit_vec(n, i, k), vec![0; n], algebra.field().one())
    }

    pub fn v(algebra: &Algebra, i: usize, k: i64) -> Self {
        let n = algebra.n();
        Self::monomial(algebra, vec![0; n], Self::unit_vec(n, i, k), algebra.field().one())
    }

    fn add_term(&mut self, key: Key, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &TorusElement) -> Result<TorusElement> {
        self.same_torus(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> TorusElement {
        let mut out = Self::zero(&self.algebra).in_torus(self.orientation);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out
    }

    /// Product in u-left normal form: v_i^b u_i^a = q_i^{-ab} u_i^a v_i^b
    /// (q_i^{ab} in the opposite torus).
    pub fn mul(&self, other: &TorusElement) -> Result<TorusElement> {
        self.same_torus(other)?;
        let sign = match self.orientation {
            Orientation::Standard => 1,
            Orientation::Opposite => -1,
        };
        let c: Vec<i64> = self.algebra.c().iter().map(|ci| sign * ci).collect();
        let field = self.algebra.field();
        let mut out = Self::zero(&self.algebra).in_torus(self.orientation);
        for ((u1, v1), c1) in &self.terms {
            for ((u2, v2), c2) in &other.terms {
                let twist: i64 = v1.iter().zip(u2).zip(&c).map(|((b, a), ci)| -b * a * ci).sum();
                let u: Vec<i64> = u1.iter().zip(u2).map(|(x, y)| x + y).collect();
                let v: Vec<i64> = v1.iter().zip(v2).map(|(x, y)| x + y).collect();
                out.add_term((u, v), &(c1 * c2) * &field.q_power(twist));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> TorusElement {
        let mut acc = Self::one(&self.algebra).in_torus(self.orientation);
        for _ in 0..k {
            acc = acc.mul(self).expect("same algebra");
        }
        acc
    }
}

/// a_d(v_i) = v_i^d − 1.
fn a_d_v(algebra: &Algebra, i: usize, o: Orientation) -> TorusElement {
    TorusElement::v(algebra, i, algebra.d() as i64)
        .in_torus(o)
        .add(&TorusElement::one(algebra).in_torus(o).scale(&-algebra.field().one()))
        .expect("same algebra")
}

#[derive(Clone, Copy)]
enum Embedding {
    Phi,
    PhiPrime,
}

fn embed(a: &GwaElement, which: Embedding) -> TorusElement {
    let algebra = a.algebra();
    let n = algebra.n();
    let o = match which {
        Embedding::Phi => Orientation::Standard,
        Embedding::PhiPrime => Orientation::Opposite,
    };
    let u = |i, k| TorusElement::u(algebra, i, k).in_torus(o);
    let x_img: Vec<TorusElement> = (0..n)
        .map(|i| match which {
            Embedding::Phi => u(i, 1),
            Embedding::PhiPrime => u(i, -1).mul(&a_d_v(algebra, i, o)).unwrap(),
        })
        .collect();
    let y_img: Vec<TorusElement> = (0..n)
        .map(|i| match which {
            Embedding::Phi => a_d_v(algebra, i, o).mul(&u(i, -1)).unwrap(),
            Embedding::PhiPrime => u(i, 1),
        })
        .collect();
    let mut out = TorusElement::zero(algebra).in_torus(o);
    for (grade, f) in a.components() {
        // h ↦ v in both embeddings.
        let mut coeff = TorusElement::zero(algebra).in_torus(o);
        for (e, c) in f.terms() {
            coeff.add_term((vec![0; n], e.clone()), c.clone());
        }
        let mut term = coeff;
        for (i, &k) in grade.iter().enumerate() {
            let factor = if k >= 0 {
                x_img[i].pow(k as u32)
            } else {
                y_img[i].pow((-k) as u32)
            };
            term = term.mul(&factor).unwrap();
        }
        out = out.add(&term).unwrap();
    }
    out
}

/// φ: x_i ↦ u_i, y_i ↦ a_d(v_i) u_i^{-1}, h_i ↦ v_i.
pub fn embed_phi(a: &GwaElement) -> TorusElement {
    embed(a, Embedding::Phi)
}

/// φ': x_i ↦ u_i^{-1} a_d(v_i), y_i ↦ u_i, h_i ↦ v_i, into the opposite torus.
pub fn embed_phi_prime(a: &GwaElement) -> TorusElement {
    embed(a, Embedding::PhiPrime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LaurentPoly;
    use crate::scalars::Field;

    fn alg(n: usize) -> Algebra {
        Algebra::new(&Field::transcendental(1).unwrap(), 1, vec![1; n]).unwrap()
    }

    #[test]
    fn v_u_reorders_with_q_inverse() {
        let a = alg(1);
        let vu = TorusElement::v(&a, 0, 1).mul(&TorusElement::u(&a, 0, 1)).unwrap();
        assert_eq!(vu, TorusElement::monomial(&a, vec![1], vec![1], a.field().q_power(-1)));
        let uv = TorusElement::u(&a, 0, 1).mul(&TorusElement::v(&a, 0, 1)).unwrap();
        assert_eq!(uv, TorusElement::monomial(&a, vec![1], vec![1], a.field().one()));
    }

    #[test]
    fn distinct_factors_commute() {
        let a = alg(2);
        let u1 = TorusElement::u(&a, 0, 1);
        let v2 = TorusElement::v(&a, 1, 1);
        assert_eq!(u1.mul(&v2).unwrap(), v2.mul(&u1).unwrap());
    }

    #[test]
    fn phi_respects_yx() {
        let a = alg(1);
        let yx = &GwaElement::y(&a, 0) * &GwaElement::x(&a, 0);
        assert_eq!(embed_phi(&yx), a_d_v(&a, 0, Orientation::Standard));
        assert_eq!(embed_phi(&GwaElement::one(&a)), TorusElement::one(&a));
    }

    #[test]
    fn phi_prime_of_xy() {
        let a = alg(1);
        let f = a.field();
        let xy = &GwaElement::x(&a, 0) * &GwaElement::y(&a, 0);
        // a_d(q v) = q v - 1 for d = 1
        let o = Orientation::Opposite;
        let expected = TorusElement::monomial(&a, vec![0], vec![1], f.q())
            .in_torus(o)
            .add(&TorusElement::one(&a).in_torus(o).scale(&-f.one()))
            .unwrap();
        assert_eq!(embed_phi_prime(&xy), expected);
        let h = GwaElement::from_laurent(&a, LaurentPoly::var(f, 1, 0));
        assert_eq!(embed_phi_prime(&h), TorusElement::v(&a, 0, 1).in_torus(o));
    }

    #[test]
    fn phi_prime_respects_x_h() {
        let a = alg(1);
        let (x, h) = (GwaElement::x(&a, 0), GwaElement::h(&a, 0));
        let lhs = embed_phi_prime(&(&x * &h));
        let rhs = embed_phi_prime(&x).mul(&embed_phi_prime(&h)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
