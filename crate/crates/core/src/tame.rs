//! Tame automorphisms: per-factor automorphisms, permutations of factors and
//! unit twists, and the decomposition of automorphisms into them.

use crate::algebra::{sigma_action, Algebra, LaurentPoly};
use crate::dixmier::{composite_units, invert, is_automorphism_form};
use crate::error::{Error, Result};
use crate::homs::{compose, HomData};
use crate::scalars::Scalar;

/// ψ(h) = γ h^{(−1)^τ}, ψ(x) = u z, ψ(y) = z' u' on one factor, with
/// (z, z') = (x, y) for τ = 0 and (y, x) for τ = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleFactorAut {
    pub tau: u8,
    pub gamma: Scalar,
    pub u: LaurentPoly,
    pub uprime: LaurentPoly,
}

/// A unit c·h^e of A(n, d, q̲).
pub type Unit = (Scalar, Vec<i64>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TameGenerator {
    /// Acts on factor `j` (0-based) only.
    Factor { j: usize, g: SingleFactorAut },
    /// h_i ↦ h_{w(i)}, x_i ↦ x_{w(i)}, y_i ↦ y_{w(i)}.
    Perm { w: Vec<usize> },
    /// x_i ↦ u_i x_i, y_i ↦ y_i u_i^{-1}.
    UnitTwist { u: Vec<Unit> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Factor,
    Perm,
    UnitTwist,
}

impl TameGenerator {
    pub fn kind(&self) -> GeneratorKind {
        match self {
            TameGenerator::Factor { .. } => GeneratorKind::Factor,
            TameGenerator::Perm { .. } => GeneratorKind::Perm,
            TameGenerator::UnitTwist { .. } => GeneratorKind::UnitTwist,
        }
    }

    /// The inverse, as a generator of the same family.
    pub fn inverse(&self, algebra: &Algebra) -> Result<TameGenerator> {
        let inv = invert(&generator_to_hom(self, algebra)?)?;
        recognize_as(&inv, self.kind()).ok_or_else(|| {
            Error::InvariantViolation("inverse left the generator family".into())
        })
    }
}

fn violation(msg: String) -> Error {
    Error::InvariantViolation(msg)
}

fn check_factor(algebra: &Algebra, j: usize, g: &SingleFactorAut) -> Result<()> {
    let field = algebra.field();
    let d = algebra.d() as i64;
    if j >= algebra.n() {
        return Err(violation(format!("factor {} out of range", j + 1)));
    }
    if g.tau > 1 {
        return Err(violation(format!("tau = {} is not 0 or 1", g.tau)));
    }
    if g.u.arity() != 1 || g.uprime.arity() != 1 || !g.u.is_monomial() || !g.uprime.is_monomial()
    {
        return Err(violation("u and u' must be univariate monomials".into()));
    }
    let tau = g.tau as i64;
    let expected_uu = LaurentPoly::monomial(field, vec![-d * tau], field.from_int(-1).pow(tau)?);
    if &g.u * &g.uprime != expected_uu {
        return Err(violation("u·u' ≠ (−h^{-d})^τ".into()));
    }
    if g.gamma.pow(d)? != algebra.q_i_pow(j, -d * tau) {
        return Err(violation("γ^d ≠ q^{−τd}".into()));
    }
    Ok(())
}

fn check_perm(algebra: &Algebra, w: &[usize]) -> Result<()> {
    let n = algebra.n();
    let mut seen = vec![false; n];
    if w.len() != n || w.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
        return Err(violation(format!("{w:?} is not a permutation of {n} factors")));
    }
    for (i, &wi) in w.iter().enumerate() {
        if !algebra.field().is_one_of_power(algebra.c()[wi] - algebra.c()[i]) {
            return Err(violation(format!("q_{} ≠ q_{}", wi + 1, i + 1)));
        }
    }
    Ok(())
}

/// u_i σ_i(u_l) = u_l σ_l(u_i) for all i ≠ l.
pub fn units_compatible(algebra: &Algebra, u: &[Unit]) -> bool {
    let n = algebra.n();
    let field = algebra.field();
    let polys: Vec<LaurentPoly> = u
        .iter()
        .map(|(c, e)| LaurentPoly::monomial(field, e.clone(), c.clone()))
        .collect();
    let unit_vec = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    (0..n).all(|i| {
        (i + 1..n).all(|l| {
            &polys[i] * &sigma_action(&polys[l], &unit_vec(i), algebra)
                == &polys[l] * &sigma_action(&polys[i], &unit_vec(l), algebra)
        })
    })
}

/// The unit-twist bundle without the compatibility check.
pub fn unit_twist_bundle_unchecked(algebra: &Algebra, u: &[Unit]) -> Result<HomData> {
    let n = algebra.n();
    if u.len() != n || u.iter().any(|(c, e)| e.len() != n || c.is_zero()) {
        return Err(violation(format!("expected {n} nonzero units in {n} variables")));
    }
    let field = algebra.field();
    let mut data = HomData::identity(algebra);
    for (i, (c, e)) in u.iter().enumerate() {
        let mut off = e.clone();
        off[i] = 0;
        data.t[i] = off;
        data.p[i] = LaurentPoly::monomial(field, vec![e[i]], c.clone());
        data.pprime[i] = data.p[i].inverse()?;
    }
    Ok(data)
}

pub fn generator_to_hom(gen: &TameGenerator, algebra: &Algebra) -> Result<HomData> {
    let mut data = HomData::identity(algebra);
    match gen {
        TameGenerator::Factor { j, g } => {
            check_factor(algebra, *j, g)?;
            data.tau[*j] = g.tau;
            data.m[*j] = 1 - 2 * g.tau as i64;
            data.gamma[*j] = g.gamma.clone();
            data.p[*j] = g.u.clone();
            data.pprime[*j] = g.uprime.clone();
        }
        TameGenerator::Perm { w } => {
            check_perm(algebra, w)?;
            data.w = w.clone();
        }
        TameGenerator::UnitTwist { u } => {
            data = unit_twist_bundle_unchecked(algebra, u)?;
            if !units_compatible(algebra, u) {
                return Err(violation("units violate u_i σ_i(u_l) = u_l σ_l(u_i)".into()));
            }
        }
    }
    Ok(data)
}

/// Composes left to right: the first generator is applied first.
pub fn compose_chain(gens: &[TameGenerator], algebra: &Algebra) -> Result<HomData> {
    let mut acc = HomData::identity(algebra);
    for g in gens {
        acc = compose(&acc, &generator_to_hom(g, algebra)?)?;
    }
    Ok(acc)
}

fn is_identity_factor(g: &SingleFactorAut) -> bool {
    g.tau == 0 && g.gamma.is_one() && g.u.is_one() && g.uprime.is_one()
}

/// Writes an automorphism as [Perm, Factors ascending, UnitTwist], with
/// trivial generators omitted, so that `compose_chain` returns it exactly.
pub fn decompose(data: &HomData) -> Result<Vec<TameGenerator>> {
    let algebra = &data.source;
    if data.source != data.target {
        return Err(Error::NotAutomorphism("source and target differ".into()));
    }
    if !is_automorphism_form(data).map_err(|e| Error::NotAutomorphism(e.to_string()))? {
        return Err(Error::NotAutomorphism("not of automorphism form".into()));
    }
    if algebra.c().iter().any(|&c| !algebra.field().is_one_of_power(c - algebra.c()[0])) {
        return Err(Error::UnsupportedConfig("decomposition needs q_1 = … = q_n".into()));
    }
    let n = algebra.n();
    let field = algebra.field();
    let units = composite_units(data)?;
    let mut factors = vec![None; n];
    let mut twist: Vec<Unit> = vec![(field.one(), vec![0; n]); n];
    for i in 0..n {
        let j = data.w[i];
        let tau = data.tau[i];
        if data.m[i] != 1 - 2 * tau as i64 {
            return Err(Error::UnsupportedConfig(format!(
                "m_{} = {} with tau = {tau} is outside the per-factor family",
                i + 1,
                data.m[i]
            )));
        }
        let e = &units[i].0;
        // The result is ξ_V ∘ F ∘ χ_w. On x_i it gives u_j V_j x_j (τ = 0)
        // or u_j σ_j^{-1}(V_j^{-1}) y_j (τ = 1), which must equal e_i z_j.
        let (g, v) = if tau == 0 {
            let one = LaurentPoly::one(field, 1);
            let g = SingleFactorAut {
                tau,
                gamma: data.gamma[i].clone(),
                u: one.clone(),
                uprime: one,
            };
            (g, e.clone())
        } else {
            let g = SingleFactorAut {
                tau,
                gamma: data.gamma[i].clone(),
                u: data.p[i].clone(),
                uprime: data.pprime[i].clone(),
            };
            let u = g.u.embed(n, &[j]);
            let mut shift = vec![0; n];
            shift[j] = 1;
            (g, sigma_action(&(&u * &e.inverse()?), &shift, algebra))
        };
        let (c, exp) = v.as_monomial().expect("automorphism units are monomials");
        twist[j] = (c.clone(), exp.clone());
        factors[j] = Some(g);
    }
    let mut chain = Vec::new();
    if data.w.iter().enumerate().any(|(i, &wi)| i != wi) {
        chain.push(TameGenerator::Perm { w: data.w.clone() });
    }
    for (j, g) in factors.into_iter().enumerate() {
        let g = g.expect("w is a bijection");
        if !is_identity_factor(&g) {
            chain.push(TameGenerator::Factor { j, g });
        }
    }
    if twist.iter().any(|(c, e)| !c.is_one() || e.iter().any(|&x| x != 0)) {
        chain.push(TameGenerator::UnitTwist { u: twist });
    }
    Ok(chain)
}

/// Reads a bundle back as a single generator of the given family.
pub fn recognize_as(data: &HomData, kind: GeneratorKind) -> Option<TameGenerator> {
    let algebra = &data.source;
    if data.source != data.target {
        return None;
    }
    let data = data.canonicalize().ok()?;
    let n = algebra.n();
    let id = HomData::identity(algebra);
    let trivial_at = |i: usize| {
        data.w[i] == i
            && data.tau[i] == 0
            && data.m[i] == 1
            && data.gamma[i].is_one()
            && data.p[i].is_one()
            && data.pprime[i].is_one()
            && data.t[i].iter().all(|&x| x == 0)
    };
    let gen = match kind {
        GeneratorKind::Perm => {
            let candidate = TameGenerator::Perm { w: data.w.clone() };
            let unit_free = HomData {
                w: data.w.clone(),
                ..id
            };
            (unit_free == data).then_some(candidate)?
        }
        GeneratorKind::Factor => {
            let moved: Vec<usize> = (0..n).filter(|&i| !trivial_at(i)).collect();
            let j = match moved.as_slice() {
                [] => 0,
                [j] => *j,
                _ => return None,
            };
            if data.w[j] != j || data.t[j].iter().any(|&x| x != 0) {
                return None;
            }
            TameGenerator::Factor {
                j,
                g: SingleFactorAut {
                    tau: data.tau[j],
                    gamma: data.gamma[j].clone(),
                    u: data.p[j].clone(),
                    uprime: data.pprime[j].clone(),
                },
            }
        }
        GeneratorKind::UnitTwist => {
            if (0..n).any(|i| {
                data.w[i] != i || data.tau[i] != 0 || data.m[i] != 1 || !data.gamma[i].is_one()
            }) {
                return None;
            }
            let u = (0..n)
                .map(|i| {
                    let (c, e) = data.p[i].as_monomial()?;
                    let mut exp = data.t[i].clone();
                    exp[i] = e[0];
                    Some((c.clone(), exp))
                })
                .collect::<Option<Vec<Unit>>>()?;
            TameGenerator::UnitTwist { u }
        }
    };
    (generator_to_hom(&gen, algebra).ok()?.canonicalize().ok()? == data).then_some(gen)
}

/// The first family that matches, trying Perm, Factor, UnitTwist in order.
pub fn recognize(data: &HomData) -> Option<TameGenerator> {
    [GeneratorKind::Perm, GeneratorKind::Factor, GeneratorKind::UnitTwist]
        .into_iter()
        .find_map(|k| recognize_as(data, k))
}
