//! Dense univariate polynomials in q over Q(ζ_L).

use super::cyclo::{CycloElem, Cyclotomic};
use crate::error::{Error, Result};

/// Lowest degree first; empty means zero; no trailing zero coefficients.
pub type Poly = Vec<CycloElem>;

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &Poly) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add(ctx: &Cyclotomic, a: &Poly, b: &Poly) -> Poly {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    for i in 0..a.len().max(b.len()) {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => ctx.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(&mut out);
    out
}

pub fn neg(ctx: &Cyclotomic, a: &Poly) -> Poly {
    a.iter().map(|c| ctx.neg(c)).collect()
}

pub fn mul(ctx: &Cyclotomic, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

pub fn scale(ctx: &Cyclotomic, a: &Poly, c: &CycloElem) -> Poly {
    let mut out: Poly = a.iter().map(|x| ctx.mul(x, c)).collect();
    trim(&mut out);
    out
}

/// Multiplies by q^k.
pub fn shift_up(ctx: &Cyclotomic, a: &Poly, k: usize) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); k];
    out.extend(a.iter().cloned());
    out
}

/// Index of the lowest nonzero coefficient.
pub fn valuation(a: &Poly) -> Option<usize> {
    a.iter().position(|c| !c.is_zero())
}

pub fn divrem(ctx: &Cyclotomic, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    if b.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let mut rem = a.clone();
    trim(&mut rem);
    if rem.len() < b.len() {
        return Ok((Vec::new(), rem));
    }
    let lead_inv = ctx.inv(b.last().unwrap())?;
    let mut quot = vec![ctx.zero(); rem.len() - b.len() + 1];
    while !rem.is_empty() && rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let coef = ctx.mul(rem.last().unwrap(), &lead_inv);
        for (j, c) in b.iter().enumerate() {
            rem[shift + j] = ctx.sub(&rem[shift + j], &ctx.mul(&coef, c));
        }
        quot[shift] = coef;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    Ok((quot, rem))
}

/// Scales `a` so its leading coefficient is 1; returns the factor used.
pub fn make_monic(ctx: &Cyclotomic, a: &Poly) -> Result<(Poly, CycloElem)> {
    let lc = a.last().ok_or(Error::DivisionByZero)?;
    let inv = ctx.inv(lc)?;
    Ok((scale(ctx, a, &inv), inv))
}

/// Monic gcd by the Euclidean algorithm.
pub fn gcd(ctx: &Cyclotomic, a: &Poly, b: &Poly) -> Result<Poly> {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = divrem(ctx, &x, &y)?.1;
        x = std::mem::replace(&mut y, r);
    }
    if x.is_empty() {
        return Ok(x);
    }
    Ok(make_monic(ctx, &x)?.0)
}
