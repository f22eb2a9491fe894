//! Cyclotomic number fields Q(ζ_L) with elements stored as fixed-width
//! coefficient vectors in the power basis 1, ζ, …, ζ^{φ(L)-1}.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial over Q, lowest degree first, no trailing zeros.
pub type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut out: QPoly = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero `b`.
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem: QPoly = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = BigRational::one() / b.last().unwrap();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let coef = rem.last().unwrap() * &lead_inv;
        for (j, c) in b.iter().enumerate() {
            rem[shift + j] -= &coef * c;
        }
        quot[shift] = coef;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// The L-th cyclotomic polynomial Φ_L, lowest degree first.
///
/// Computed by dividing x^L − 1 by Φ_d for every proper divisor d of L.
pub fn cyclotomic_polynomial(order: u32) -> QPoly {
    assert!(order >= 1, "cyclotomic order must be positive");
    let mut num: QPoly = vec![BigRational::zero(); order as usize + 1];
    num[0] = -BigRational::one();
    num[order as usize] = BigRational::one();
    for d in 1..order {
        if order % d == 0 {
            let (q, r) = poly_divrem(&num, &cyclotomic_polynomial(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| num::integer::gcd(*k, n) == 1).count() as u32
}

/// An element of Q(ζ_L): `coeffs[j]` multiplies ζ^j.
///
/// The vector always has exactly φ(L) entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElem {
    pub coeffs: Vec<BigRational>,
}

impl CycloElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when the element is a rational number (no ζ content).
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }
}

/// Arithmetic context for Q(ζ_L).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    /// Monic Φ_L.
    modulus: QPoly,
    degree: usize,
    zeta_powers: Vec<CycloElem>,
}

impl Cyclotomic {
    pub fn new(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidConfig("cyclotomic order must be >= 1".into()));
        }
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let mut ctx = Cyclotomic {
            order,
            modulus,
            degree,
            zeta_powers: Vec::new(),
        };
        let mut powers = Vec::with_capacity(order as usize);
        for k in 0..order as usize {
            let mut raw = vec![BigRational::zero(); k + 1];
            raw[k] = BigRational::one();
            powers.push(ctx.reduce(raw));
        }
        ctx.zeta_powers = powers;
        Ok(ctx)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    fn reduce(&self, mut raw: QPoly) -> CycloElem {
        trim(&mut raw);
        if raw.len() > self.degree {
            raw = poly_divrem(&raw, &self.modulus).1;
        }
        raw.resize(self.degree, BigRational::zero());
        CycloElem { coeffs: raw }
    }

    fn to_poly(&self, a: &CycloElem) -> QPoly {
        let mut p = a.coeffs.clone();
        trim(&mut p);
        p
    }

    pub fn zero(&self) -> CycloElem {
        CycloElem {
            coeffs: vec![BigRational::zero(); self.degree],
        }
    }

    pub fn one(&self) -> CycloElem {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, r: BigRational) -> CycloElem {
        let mut coeffs = vec![BigRational::zero(); self.degree];
        coeffs[0] = r;
        CycloElem { coeffs }
    }

    pub fn from_int(&self, n: i64) -> CycloElem {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// ζ_L^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> CycloElem {
        let idx = k.rem_euclid(self.order as i64) as usize;
        self.zeta_powers[idx].clone()
    }

    /// Builds an element from arbitrary-length power-basis coefficients.
    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> CycloElem {
        self.reduce(coeffs)
    }

    pub fn add(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        CycloElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        CycloElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &CycloElem) -> CycloElem {
        CycloElem {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        if self.degree == 1 {
            return CycloElem {
                coeffs: vec![&a.coeffs[0] * &b.coeffs[0]],
            };
        }
        if a.is_rational() {
            return self.scale(b, &a.coeffs[0]);
        }
        if b.is_rational() {
            return self.scale(a, &b.coeffs[0]);
        }
        self.reduce(poly_mul(&a.coeffs, &b.coeffs))
    }

    pub fn scale(&self, a: &CycloElem, r: &BigRational) -> CycloElem {
        CycloElem {
            coeffs: a.coeffs.iter().map(|x| x * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against Φ_L.
    pub fn inv(&self, a: &CycloElem) -> Result<CycloElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if a.is_rational() {
            return Ok(self.from_rational(BigRational::one() / &a.coeffs[0]));
        }
        // Invariant: s_i * a ≡ r_i (mod Φ).
        let mut r0 = self.modulus.clone();
        let mut r1 = self.to_poly(a);
        let mut s0: QPoly = Vec::new();
        let mut s1: QPoly = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant because Φ is irreducible.
        debug_assert_eq!(r1.len(), 1);
        let c = BigRational::one() / &r1[0];
        let s: QPoly = s1.iter().map(|x| x * &c).collect();
        Ok(self.reduce(s))
    }

    pub fn pow(&self, a: &CycloElem, exp: u64) -> CycloElem {
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    /// Sign of the leading nonzero coefficient, used only for display.
    pub fn leading_sign_negative(&self, a: &CycloElem) -> bool {
        a.coeffs
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative())
    }
}
