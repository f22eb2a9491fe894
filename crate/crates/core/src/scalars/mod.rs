//! The ground field: Q(ζ_L)(q) with q transcendental, or Q(ζ_L) with
//! q = ζ_L^e a root of unity.
//!
//! Transcendental scalars are stored as `q^shift · num / den` where `num`
//! and `den` are coprime polynomials in q over Q(ζ_L) with nonzero
//! constant terms and `den` monic. That representation is unique, so
//! equality is structural. In root-of-unity mode every scalar collapses to
//! a single [`CycloElem`] (stored as a constant numerator).

pub mod cyclo;
pub mod qpoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, Integer};

pub use cyclo::{cyclotomic_polynomial, totient, CycloElem, Cyclotomic};
use qpoly::Poly;

use crate::error::{Error, Result};

/// Whether q is a formal variable or a concrete root of unity ζ_L^e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Transcendental,
    RootOfUnity { e: u32 },
}

/// Cyclotomic order and deformation mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldConfig {
    pub order: u32,
    pub mode: Mode,
}

impl FieldConfig {
    pub fn transcendental(order: u32) -> Self {
        FieldConfig {
            order,
            mode: Mode::Transcendental,
        }
    }

    pub fn root_of_unity(order: u32, e: i64) -> Self {
        let e = if order == 0 {
            0
        } else {
            e.rem_euclid(order as i64) as u32
        };
        FieldConfig {
            order,
            mode: Mode::RootOfUnity { e },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::InvalidConfig("cyclotomic order L must be >= 1".into()));
        }
        if let Mode::RootOfUnity { e } = self.mode {
            if e % self.order == 0 {
                return Err(Error::InvalidConfig(format!(
                    "q = z^{e} is 1 in Q(z_{})",
                    self.order
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug)]
struct FieldInner {
    config: FieldConfig,
    cyclo: Cyclotomic,
}

/// Shared handle to a ground field. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.config == other.0.config
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(config: FieldConfig) -> Result<Self> {
        config.validate()?;
        Ok(Field(Arc::new(FieldInner {
            config,
            cyclo: Cyclotomic::new(config.order)?,
        })))
    }

    pub fn transcendental(order: u32) -> Result<Self> {
        Self::new(FieldConfig::transcendental(order))
    }

    pub fn root_of_unity(order: u32, e: i64) -> Result<Self> {
        Self::new(FieldConfig::root_of_unity(order, e))
    }

    pub fn config(&self) -> FieldConfig {
        self.0.config
    }

    pub fn cyclotomic(&self) -> &Cyclotomic {
        &self.0.cyclo
    }

    pub fn is_transcendental(&self) -> bool {
        self.0.config.mode == Mode::Transcendental
    }

    fn raw(&self, shift: i64, num: Poly, den: Poly) -> Scalar {
        Scalar {
            field: self.clone(),
            shift,
            num,
            den,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.raw(0, Vec::new(), vec![self.0.cyclo.one()])
    }

    pub fn one(&self) -> Scalar {
        self.cyclo(self.0.cyclo.one())
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.cyclo(self.0.cyclo.from_int(n))
    }

    pub fn from_rational(&self, r: BigRational) -> Scalar {
        self.cyclo(self.0.cyclo.from_rational(r))
    }

    pub fn from_ratio(&self, n: i64, d: i64) -> Scalar {
        self.from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn cyclo(&self, c: CycloElem) -> Scalar {
        if c.is_zero() {
            return self.zero();
        }
        self.raw(0, vec![c], vec![self.0.cyclo.one()])
    }

    /// ζ_L^k.
    pub fn zeta_power(&self, k: i64) -> Scalar {
        self.cyclo(self.0.cyclo.zeta_pow(k))
    }

    pub fn q(&self) -> Scalar {
        self.q_power(1)
    }

    /// q^c, reduced through ζ_L^{ec mod L} in root-of-unity mode.
    pub fn q_power(&self, c: i64) -> Scalar {
        match self.0.config.mode {
            Mode::Transcendental => self.raw(c, vec![self.0.cyclo.one()], vec![self.0.cyclo.one()]),
            Mode::RootOfUnity { e } => self.zeta_power(e as i64 * c),
        }
    }

    /// Decides q^c = 1.
    pub fn is_one_of_power(&self, c: i64) -> bool {
        match self.0.config.mode {
            Mode::Transcendental => c == 0,
            Mode::RootOfUnity { e } => (e as i64 * c).rem_euclid(self.0.config.order as i64) == 0,
        }
    }

    /// Multiplicative order of q^c, or `None` when it is infinite.
    pub fn order_of_q_power(&self, c: i64) -> Option<u64> {
        match self.0.config.mode {
            Mode::Transcendental => (c == 0).then_some(1),
            Mode::RootOfUnity { e } => {
                let l = self.0.config.order as i64;
                let k = (e as i64 * c).rem_euclid(l);
                Some((l / k.gcd(&l)) as u64)
            }
        }
    }

    /// Builds `q^shift · num / den` and brings it to canonical form.
    pub fn fraction(&self, shift: i64, num: Poly, den: Poly) -> Result<Scalar> {
        normalize(self, shift, num, den)
    }
}

/// An element of the ground field in canonical form.
#[derive(Clone, Debug)]
pub struct Scalar {
    field: Field,
    shift: i64,
    num: Poly,
    den: Poly,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.shift == other.shift
            && self.num == other.num
            && self.den == other.den
    }
}

impl Eq for Scalar {}

fn normalize(field: &Field, mut shift: i64, mut num: Poly, mut den: Poly) -> Result<Scalar> {
    let ctx = field.cyclotomic();
    qpoly::trim(&mut num);
    qpoly::trim(&mut den);
    if den.is_empty() {
        return Err(Error::DivisionByZero);
    }
    if num.is_empty() {
        return Ok(field.zero());
    }
    if !field.is_transcendental() {
        // Only constants exist in root mode.
        if num.len() != 1 || den.len() != 1 || shift != 0 {
            return Err(Error::InvalidConfig(
                "polynomial in q in root-of-unity mode".into(),
            ));
        }
        let c = ctx.mul(&num[0], &ctx.inv(&den[0])?);
        return Ok(field.cyclo(c));
    }
    let vn = qpoly::valuation(&num).unwrap();
    let vd = qpoly::valuation(&den).unwrap();
    shift += vn as i64 - vd as i64;
    num.drain(..vn);
    den.drain(..vd);
    if den.len() > 1 && num.len() > 1 {
        let g = qpoly::gcd(ctx, &num, &den)?;
        if g.len() > 1 {
            num = qpoly::divrem(ctx, &num, &g)?.0;
            den = qpoly::divrem(ctx, &den, &g)?.0;
        }
    }
    let (den, factor) = qpoly::make_monic(ctx, &den)?;
    let num = qpoly::scale(ctx, &num, &factor);
    Ok(field.raw(shift, num, den))
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.den.len() == 1 && self.num.len() == 1 && self.num[0] == self.field.cyclotomic().one()
    }

    /// Full numerator polynomial in q (the q^shift factor folded in when
    /// nonnegative).
    pub fn numerator(&self) -> Poly {
        if self.shift > 0 {
            qpoly::shift_up(self.field.cyclotomic(), &self.num, self.shift as usize)
        } else {
            self.num.clone()
        }
    }

    /// Full monic denominator polynomial in q.
    pub fn denominator(&self) -> Poly {
        if self.shift < 0 && !self.is_zero() {
            qpoly::shift_up(self.field.cyclotomic(), &self.den, (-self.shift) as usize)
        } else {
            self.den.clone()
        }
    }

    /// The q-adic shift and reduced numerator/denominator parts.
    pub fn parts(&self) -> (i64, &Poly, &Poly) {
        (self.shift, &self.num, &self.den)
    }

    /// The scalar as a single cyclotomic number, when it has no q content.
    pub fn as_cyclo(&self) -> Option<CycloElem> {
        let ctx = self.field.cyclotomic();
        if self.is_zero() {
            return Some(ctx.zero());
        }
        (self.shift == 0 && self.num.len() == 1 && self.den.len() == 1).then(|| self.num[0].clone())
    }

    /// Re-normalizes the stored representation (identity on canonical values).
    pub fn renormalized(&self) -> Scalar {
        normalize(&self.field, self.shift, self.num.clone(), self.den.clone())
            .expect("stored scalar has nonzero denominator")
    }

    fn check_field(&self, other: &Scalar) {
        assert!(
            self.field == other.field,
            "scalar arithmetic across different fields"
        );
    }

    pub fn add_ref(&self, other: &Scalar) -> Scalar {
        self.check_field(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let ctx = self.field.cyclotomic();
        let base = self.shift.min(other.shift);
        let a = qpoly::shift_up(ctx, &self.num, (self.shift - base) as usize);
        let b = qpoly::shift_up(ctx, &other.num, (other.shift - base) as usize);
        let (num, den) = if self.den == other.den {
            (qpoly::add(ctx, &a, &b), self.den.clone())
        } else {
            (
                qpoly::add(ctx, &qpoly::mul(ctx, &a, &other.den), &qpoly::mul(ctx, &b, &self.den)),
                qpoly::mul(ctx, &self.den, &other.den),
            )
        };
        normalize(&self.field, base, num, den).expect("nonzero denominator")
    }

    pub fn neg_ref(&self) -> Scalar {
        let ctx = self.field.cyclotomic();
        self.field.raw(self.shift, qpoly::neg(ctx, &self.num), self.den.clone())
    }

    pub fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Scalar) -> Scalar {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return self.field.zero();
        }
        let ctx = self.field.cyclotomic();
        if !self.field.is_transcendental() {
            return self.field.cyclo(ctx.mul(&self.num[0], &other.num[0]));
        }
        // Cross-cancel so the product is already coprime.
        let (n1, d2) = cancel(ctx, &self.num, &other.den);
        let (n2, d1) = cancel(ctx, &other.num, &self.den);
        self.field.raw(
            self.shift + other.shift,
            qpoly::mul(ctx, &n1, &n2),
            qpoly::mul(ctx, &d1, &d2),
        )
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = self.field.cyclotomic();
        let (den, factor) = qpoly::make_monic(ctx, &self.num)?;
        let num = qpoly::scale(ctx, &self.den, &factor);
        Ok(self.field.raw(-self.shift, num, den))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut result = self.field.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_ref(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_ref(&b);
            }
        }
        Ok(result)
    }

    /// True for scalars of the form c·q^k with c cyclotomic.
    pub fn is_q_monomial(&self) -> bool {
        self.num.len() == 1 && self.den.len() == 1
    }
}

fn cancel(ctx: &Cyclotomic, num: &Poly, den: &Poly) -> (Poly, Poly) {
    if num.len() > 1 && den.len() > 1 {
        let g = qpoly::gcd(ctx, num, den).expect("nonzero polynomials");
        if g.len() > 1 {
            return (
                qpoly::divrem(ctx, num, &g).unwrap().0,
                qpoly::divrem(ctx, den, &g).unwrap().0,
            );
        }
    }
    (num.clone(), den.clone())
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$inner(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::literal::format_scalar(self))
    }
}
