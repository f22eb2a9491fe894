//! Elements of A(n, d, q̲) in Z^n-graded normal form: Σ_k f_k(h)·w_k with
//! every coefficient written on the left of w_k = w_{k_1}(1)…w_{k_n}(n).

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use super::{Algebra, LaurentPoly};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwaElement {
    algebra: Algebra,
    components: BTreeMap<Vec<i64>, LaurentPoly>,
}

/// σ^k on a coefficient: h_i ↦ q_i^{k_i} h_i.
pub fn sigma_action(f: &LaurentPoly, k: &[i64], algebra: &Algebra) -> LaurentPoly {
    if k.iter().all(|&x| x == 0) {
        return f.clone();
    }
    let c = algebra.c();
    let field = algebra.field();
    f.map_coefficients(|a| {
        let e: i64 = a.iter().zip(k).zip(c).map(|((ai, ki), ci)| ai * ki * ci).sum();
        field.q_power(e)
    })
}

/// The left coefficient c(h_i) with w_k(i)·w_s(i) = c(h_i)·w_{k+s}(i).
pub fn straighten(i: usize, k: i64, s: i64, algebra: &Algebra) -> LaurentPoly {
    let field = algebra.field();
    let n = algebra.n();
    let mut c = LaurentPoly::one(field, n);
    if k > 0 && s < 0 {
        let t = k.min(-s);
        for l in (k - t + 1)..=k {
            c = &c * &algebra.a_d_shifted(i, l);
        }
    } else if k < 0 && s > 0 {
        let t = (-k).min(s);
        for j in (-k - t)..(-k) {
            c = &c * &algebra.a_d_shifted(i, -j);
        }
    }
    c
}

/// The generators h_i, h_i^{-1}, x_i, y_i of an algebra (0-based).
#[derive(Clone, Debug)]
pub struct Generators {
    pub h: Vec<GwaElement>,
    pub h_inv: Vec<GwaElement>,
    pub x: Vec<GwaElement>,
    pub y: Vec<GwaElement>,
}

pub fn generators(algebra: &Algebra) -> Generators {
    let n = algebra.n();
    Generators {
        h: (0..n).map(|i| GwaElement::h(algebra, i)).collect(),
        h_inv: (0..n).map(|i| GwaElement::h_inv(algebra, i)).collect(),
        x: (0..n).map(|i| GwaElement::x(algebra, i)).collect(),
        y: (0..n).map(|i| GwaElement::y(algebra, i)).collect(),
    }
}

impl GwaElement {
    pub fn zero(algebra: &Algebra) -> Self {
        GwaElement {
            algebra: algebra.clone(),
            components: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &Algebra) -> Self {
        Self::from_laurent(algebra, LaurentPoly::one(algebra.field(), algebra.n()))
    }

    pub fn scalar(algebra: &Algebra, c: Scalar) -> Self {
        Self::from_laurent(algebra, LaurentPoly::constant(algebra.field(), algebra.n(), c))
    }

    /// A degree-zero element.
    pub fn from_laurent(algebra: &Algebra, f: LaurentPoly) -> Self {
        Self::homogeneous(algebra, vec![0; algebra.n()], f)
    }

    /// f·w_grade.
    pub fn homogeneous(algebra: &Algebra, grade: Vec<i64>, f: LaurentPoly) -> Self {
        assert_eq!(grade.len(), algebra.n());
        assert_eq!(f.arity(), algebra.n());
        let mut components = BTreeMap::new();
        if !f.is_zero() {
            components.insert(grade, f);
        }
        GwaElement {
            algebra: algebra.clone(),
            components,
        }
    }

    /// Builds an element from (grade, left coefficient) pairs, summing repeats.
    pub fn from_components(
        algebra: &Algebra,
        parts: impl IntoIterator<Item = (Vec<i64>, LaurentPoly)>,
    ) -> Self {
        let mut out = Self::zero(algebra);
        for (g, f) in parts {
            out.add_component(g, f);
        }
        out
    }

    fn add_component(&mut self, grade: Vec<i64>, f: LaurentPoly) {
        if f.is_zero() {
            return;
        }
        match self.components.entry(grade) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &f;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn h(algebra: &Algebra, i: usize) -> Self {
        Self::from_laurent(algebra, LaurentPoly::var(algebra.field(), algebra.n(), i))
    }

    pub fn h_inv(algebra: &Algebra, i: usize) -> Self {
        let mut exp = vec![0; algebra.n()];
        exp[i] = -1;
        Self::from_laurent(
            algebra,
            LaurentPoly::monomial(algebra.field(), exp, algebra.field().one()),
        )
    }

    /// The basis monomial w_grade with coefficient 1.
    pub fn w(algebra: &Algebra, grade: Vec<i64>) -> Self {
        Self::homogeneous(algebra, grade, LaurentPoly::one(algebra.field(), algebra.n()))
    }

    pub fn x(algebra: &Algebra, i: usize) -> Self {
        let mut g = vec![0; algebra.n()];
        g[i] = 1;
        Self::w(algebra, g)
    }

    pub fn y(algebra: &Algebra, i: usize) -> Self {
        let mut g = vec![0; algebra.n()];
        g[i] = -1;
        Self::w(algebra, g)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.components.len() == 1
            && self
                .components
                .iter()
                .next()
                .is_some_and(|(g, f)| g.iter().all(|&x| x == 0) && f.is_one())
    }

    /// Components in lexicographic grade order.
    pub fn components(&self) -> impl Iterator<Item = (&Vec<i64>, &LaurentPoly)> {
        self.components.iter()
    }

    pub fn component(&self, grade: &[i64]) -> Option<&LaurentPoly> {
        self.components.get(grade)
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// `Some((grade, coefficient))` for a nonzero homogeneous element.
    pub fn as_homogeneous(&self) -> Option<(&Vec<i64>, &LaurentPoly)> {
        if self.components.len() == 1 {
            self.components.iter().next()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_components(
            &self.algebra,
            self.components.iter().map(|(g, f)| (g.clone(), f.scale(c))),
        )
    }

    /// Applies σ^shift to every left coefficient.
    pub fn sigma_coefficients(&self, shift: &[i64]) -> Self {
        Self::from_components(
            &self.algebra,
            self.components
                .iter()
                .map(|(g, f)| (g.clone(), sigma_action(f, shift, &self.algebra))),
        )
    }

    fn same_algebra(&self, other: &GwaElement) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn checked_add(&self, other: &GwaElement) -> Result<GwaElement> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (g, f) in &other.components {
            out.add_component(g.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &GwaElement) -> Result<GwaElement> {
        self.checked_add(&-other)
    }

    /// Bilinear product: (f·w_k)(g·w_s) = f·σ^k(g)·∏_i straighten(i, k_i, s_i)·w_{k+s}.
    pub fn checked_mul(&self, other: &GwaElement) -> Result<GwaElement> {
        self.same_algebra(other)?;
        let algebra = &self.algebra;
        let n = algebra.n();
        let mut cache: HashMap<(usize, i64, i64), LaurentPoly> = HashMap::new();
        let mut out = Self::zero(algebra);
        for (k, f) in &self.components {
            for (s, g) in &other.components {
                let mut coeff = f * &sigma_action(g, k, algebra);
                for i in 0..n {
                    if (k[i] > 0 && s[i] < 0) || (k[i] < 0 && s[i] > 0) {
                        let c = cache
                            .entry((i, k[i], s[i]))
                            .or_insert_with(|| straighten(i, k[i], s[i], algebra));
                        coeff = &coeff * c;
                    }
                }
                let grade: Vec<i64> = k.iter().zip(s).map(|(a, b)| a + b).collect();
                out.add_component(grade, coeff);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> GwaElement {
        let mut result = Self::one(&self.algebra);
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    /// Unit recognizer: `Some((γ, m))` iff the element is γ·h^m.
    pub fn recognize_unit(&self) -> Option<(Scalar, Vec<i64>)> {
        let (grade, f) = self.as_homogeneous()?;
        if grade.iter().any(|&x| x != 0) {
            return None;
        }
        let (c, e) = f.as_monomial()?;
        Some((c.clone(), e.clone()))
    }

    /// Inverse of a unit γ·h^m.
    pub fn unit_inverse(&self) -> Option<GwaElement> {
        let (c, e) = self.recognize_unit()?;
        let inv = c.inv().ok()?;
        Some(Self::from_laurent(
            &self.algebra,
            LaurentPoly::monomial(self.algebra.field(), e.iter().map(|x| -x).collect(), inv),
        ))
    }
}

impl Add for &GwaElement {
    type Output = GwaElement;
    fn add(self, rhs: &GwaElement) -> GwaElement {
        self.checked_add(rhs).expect("elements of the same algebra")
    }
}

impl Sub for &GwaElement {
    type Output = GwaElement;
    fn sub(self, rhs: &GwaElement) -> GwaElement {
        self.checked_sub(rhs).expect("elements of the same algebra")
    }
}

impl Mul for &GwaElement {
    type Output = GwaElement;
    fn mul(self, rhs: &GwaElement) -> GwaElement {
        self.checked_mul(rhs).expect("elements of the same algebra")
    }
}

impl Neg for &GwaElement {
    type Output = GwaElement;
    fn neg(self) -> GwaElement {
        GwaElement {
            algebra: self.algebra.clone(),
            components: self.components.iter().map(|(g, f)| (g.clone(), -f)).collect(),
        }
    }
}

impl std::fmt::Display for GwaElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(g, p)| format!("[{p}]*w{g:?}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;

    fn a1(d: u32) -> Algebra {
        Algebra::new(&Field::transcendental(1).unwrap(), d, vec![1]).unwrap()
    }

    fn hpoly(a: &Algebra, terms: &[(i64, Scalar)]) -> LaurentPoly {
        LaurentPoly::from_terms(a.field(), 1, terms.iter().map(|(k, c)| (vec![*k], c.clone())))
    }

    #[test]
    fn generator_normal_forms() {
        let a = a1(1);
        let x = GwaElement::x(&a, 0);
        assert_eq!(x.as_homogeneous().unwrap().0, &vec![1]);
        let y = GwaElement::y(&Algebra::new(a.field(), 3, vec![1]).unwrap(), 0);
        assert_eq!(y.as_homogeneous().unwrap().0, &vec![-1]);
        let a2 = Algebra::new(a.field(), 2, vec![1, 1]).unwrap();
        let hinv = GwaElement::h_inv(&a2, 1);
        let (g, f) = hinv.as_homogeneous().unwrap();
        assert_eq!(g, &vec![0, 0]);
        assert_eq!(f.as_monomial().unwrap().1, &vec![0, -1]);
    }

    #[test]
    fn sigma_examples() {
        let a = a1(1);
        let f = a.field();
        let h = hpoly(&a, &[(1, f.one())]);
        assert_eq!(sigma_action(&h, &[1], &a), hpoly(&a, &[(1, f.q())]));
        let h3 = hpoly(&a, &[(3, f.one())]);
        assert_eq!(sigma_action(&h3, &[-2], &a), hpoly(&a, &[(3, f.q_power(-6))]));
        assert_eq!(sigma_action(&h3, &[0], &a), h3);
    }

    #[test]
    fn straighten_examples() {
        let a = a1(2);
        let f = a.field();
        let one = f.one();
        let ad = |k: i64| a.a_d_shifted(0, k);
        assert_eq!(straighten(0, -1, 1, &a), hpoly(&a, &[(2, one.clone()), (0, -&one)]));
        assert_eq!(straighten(0, 1, -1, &a), ad(1));
        assert_eq!(straighten(0, 2, -1, &a), ad(2));
        assert_eq!(straighten(0, -3, 2, &a), &ad(-1) * &ad(-2));
        assert!(straighten(0, 2, 3, &a).is_one());
        assert!(straighten(0, -2, -3, &a).is_one());
    }

    #[test]
    fn defining_products() {
        let a = a1(1);
        let f = a.field();
        let x = GwaElement::x(&a, 0);
        let y = GwaElement::y(&a, 0);
        let h = GwaElement::h(&a, 0);
        let yx = &y * &x;
        assert_eq!(
            yx,
            GwaElement::from_laurent(&a, hpoly(&a, &[(1, f.one()), (0, f.from_int(-1))]))
        );
        let xh = &x * &h;
        assert_eq!(xh, GwaElement::homogeneous(&a, vec![1], hpoly(&a, &[(1, f.q())])));
        assert_ne!(&x * &y, yx);
    }

    #[test]
    fn xxy_in_d2() {
        let a = a1(2);
        let f = a.field();
        let x = GwaElement::x(&a, 0);
        let y = GwaElement::y(&a, 0);
        let r = &(&x * &x) * &y;
        assert_eq!(
            r,
            GwaElement::homogeneous(&a, vec![1], hpoly(&a, &[(2, f.q_power(4)), (0, f.from_int(-1))]))
        );
    }

    #[test]
    fn cross_factor_commutation() {
        let t = Field::transcendental(1).unwrap();
        let a = Algebra::new(&t, 2, vec![1, 1]).unwrap();
        let x1 = GwaElement::x(&a, 0);
        let y2 = GwaElement::y(&a, 1);
        assert_eq!(&x1 * &y2, GwaElement::w(&a, vec![1, -1]));
        assert_eq!(&x1 * &y2, &y2 * &x1);
    }

    #[test]
    fn additive_identities() {
        let a = a1(1);
        let x = GwaElement::x(&a, 0);
        assert_eq!(&x + &GwaElement::zero(&a), x);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn recognize_units() {
        let t = Field::transcendental(1).unwrap();
        let a = Algebra::new(&t, 1, vec![1, 1]).unwrap();
        let u = GwaElement::from_laurent(
            &a,
            LaurentPoly::monomial(&t, vec![2, -1], t.from_int(5)),
        );
        assert_eq!(u.recognize_unit(), Some((t.from_int(5), vec![2, -1])));
        assert!((&u * &u.unit_inverse().unwrap()).is_one());
        let h1p1 = &GwaElement::h(&a, 0) + &GwaElement::one(&a);
        assert_eq!(h1p1.recognize_unit(), None);
        assert_eq!(GwaElement::x(&a, 0).recognize_unit(), None);
    }

    #[test]
    fn mismatch_is_reported() {
        let a = a1(1);
        let b = a1(2);
        assert_eq!(
            GwaElement::x(&a, 0).checked_mul(&GwaElement::x(&b, 0)),
            Err(Error::AlgebraMismatch)
        );
    }
}
