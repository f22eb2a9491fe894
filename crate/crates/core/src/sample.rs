//! Random fields, algebras, elements, words and parameter bundles for
//! property tests and the `selftest` command.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Algebra, GwaElement, LaurentPoly};
use crate::homs::{Equation, HomData};
use crate::oracle::{Letter, LetterKind};
use crate::scalars::{Field, Scalar};
use crate::tame::{SingleFactorAut, TameGenerator, Unit};

/// Transcendental with L ∈ {1, 2, 3, 4}.
pub fn transcendental_field(rng: &mut impl Rng) -> Field {
    Field::transcendental(*[1, 2, 3, 4].choose(rng).unwrap()).unwrap()
}

/// q = ζ_L^e of multiplicative order at least 4.
pub fn root_field(rng: &mut impl Rng) -> Field {
    loop {
        let l = *[5u32, 7, 8, 9, 12].choose(rng).unwrap();
        let e = rng.gen_range(1..l as i64);
        let f = Field::root_of_unity(l, e).unwrap();
        if f.order_of_q_power(1).unwrap() >= 4 {
            return f;
        }
    }
}

pub fn field(rng: &mut impl Rng, root: bool) -> Field {
    if root {
        root_field(rng)
    } else {
        transcendental_field(rng)
    }
}

/// c_i ∈ {1, −1, 2}, all equal when `equal`, with q_i^d ≠ 1.
pub fn algebra(rng: &mut impl Rng, field: &Field, n: usize, d: u32, equal: bool) -> Algebra {
    loop {
        let first = *[1i64, -1, 2].choose(rng).unwrap();
        let c: Vec<i64> = (0..n)
            .map(|_| if equal { first } else { *[1i64, -1, 2].choose(rng).unwrap() })
            .collect();
        if let Ok(a) = Algebra::new(field, d, c) {
            return a;
        }
    }
}

/// A small nonzero scalar: ±a/b, possibly times q^k, ζ^k, or (1 + q).
pub fn scalar(rng: &mut impl Rng, field: &Field) -> Scalar {
    let a = *[1i64, -1, 2, -2, 3].choose(rng).unwrap();
    let b = rng.gen_range(1..=3);
    let mut s = field.from_ratio(a, b);
    match rng.gen_range(0..5) {
        0 => s = &s * &field.q_power(rng.gen_range(-2..=2)),
        1 => s = &s * &field.zeta_power(rng.gen_range(0..field.config().order as i64)),
        2 => {
            let t = &field.one() + &field.q();
            if !t.is_zero() {
                s = &s * &t;
            }
        }
        _ => {}
    }
    s
}

pub fn laurent(rng: &mut impl Rng, field: &Field, arity: usize, terms: usize, span: i64) -> LaurentPoly {
    LaurentPoly::from_terms(
        field,
        arity,
        (0..terms)
            .map(|_| {
                let e: Vec<i64> = (0..arity).map(|_| rng.gen_range(-span..=span)).collect();
                (e, scalar(rng, field))
            })
            .collect::<Vec<_>>(),
    )
}

/// Up to `max_terms` components with grades in [−2, 2]^n.
pub fn element(rng: &mut impl Rng, algebra: &Algebra, max_terms: usize) -> GwaElement {
    let n = algebra.n();
    let k = rng.gen_range(0..=max_terms);
    GwaElement::from_components(
        algebra,
        (0..k)
            .map(|_| {
                let g: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
                let terms = rng.gen_range(1..=2);
                (g, laurent(rng, algebra.field(), n, terms, 2))
            })
            .collect::<Vec<_>>(),
    )
}

/// Homogeneous element f·w_g with f nonzero.
pub fn homogeneous(rng: &mut impl Rng, algebra: &Algebra) -> GwaElement {
    let n = algebra.n();
    let g: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
    let terms = rng.gen_range(1..=2);
    GwaElement::homogeneous(algebra, g, laurent(rng, algebra.field(), n, terms, 2))
}

pub fn word(rng: &mut impl Rng, n: usize, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    let kinds = [LetterKind::H, LetterKind::HInv, LetterKind::X, LetterKind::Y];
    (0..len)
        .map(|_| Letter::new(rng.gen_range(0..n), *kinds.choose(rng).unwrap()))
        .collect()
}

/// The element a word denotes, by multiplying generators left to right.
pub fn word_product(algebra: &Algebra, letters: &[Letter]) -> GwaElement {
    letters.iter().fold(GwaElement::one(algebra), |acc, l| {
        let g = match l.kind {
            LetterKind::H => GwaElement::h(algebra, l.factor),
            LetterKind::HInv => GwaElement::h_inv(algebra, l.factor),
            LetterKind::X => GwaElement::x(algebra, l.factor),
            LetterKind::Y => GwaElement::y(algebra, l.factor),
        };
        &acc * &g
    })
}

/// ρ with ρ^d = 1: ζ_L^k for L | kd, possibly negated when d is even.
fn dth_root_of_one(rng: &mut impl Rng, field: &Field, d: u32) -> Scalar {
    let l = field.config().order as i64;
    let step = l / gcd(l, d as i64);
    let mut rho = field.zeta_power(step * rng.gen_range(0..l));
    if d % 2 == 0 && rng.gen_bool(0.5) {
        rho = -rho;
    }
    rho
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn sign(tau: u8) -> i64 {
    1 - 2 * tau as i64
}

/// Solves E2–E4 for the given (w, τ, m); E1 must already hold for `source`.
pub fn complete_bundle(
    rng: &mut impl Rng,
    source: &Algebra,
    target: &Algebra,
    w: Vec<usize>,
    tau: Vec<u8>,
    m: Vec<i64>,
    monomial_p: bool,
) -> HomData {
    let field = target.field();
    let (r, n) = (source.n(), target.n());
    let d = target.d();
    let ct = target.c();
    let mut data = HomData::identity(target);
    data.source = source.clone();
    data.w = w;
    data.tau = tau;
    data.m = m;
    data.gamma.clear();
    data.b.clear();
    data.p.clear();
    data.pprime.clear();
    data.t = (0..r).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    for i in 0..r {
        for l in (i + 1)..r {
            let (wi, wl) = (data.w[i], data.w[l]);
            let k = rng.gen_range(-1..=1);
            data.t[l][wi] = k * ct[wl] * sign(data.tau[l]);
            data.t[i][wl] = k * ct[wi] * sign(data.tau[i]);
        }
    }
    for i in 0..r {
        let tau = data.tau[i] as i64;
        let gamma = &dth_root_of_one(rng, field, d) * &source.q_i_pow(i, -tau);
        let lambda = &source.q_i(i) * &gamma;
        let rhs = &LaurentPoly::monomial(field, vec![d as i64 * data.m[i]], lambda.pow(d as i64).unwrap())
            - &LaurentPoly::one(field, 1);
        let q_shift = target.q_i_pow(data.w[i], 1 - tau);
        let ad = &LaurentPoly::monomial(field, vec![d as i64], q_shift.pow(d as i64).unwrap())
            - &LaurentPoly::one(field, 1);
        let quotient = rhs
            .div_exact(&ad)
            .unwrap()
            .expect("E1 and E4 make a_d(q^{1-τ}h) divide the right side");
        let mono = LaurentPoly::monomial(field, vec![rng.gen_range(-2..=2)], scalar(rng, field));
        let (p, pp) = if monomial_p || rng.gen_bool(0.5) {
            let pp = quotient.div_exact(&mono).unwrap().unwrap();
            (mono, pp)
        } else {
            (&quotient * &mono, mono.inverse().unwrap())
        };
        data.gamma.push(gamma);
        data.b.push(scalar(rng, field));
        data.p.push(p);
        data.pprime.push(pp);
    }
    data
}

/// A random valid bundle into `target` from r ≤ n factors, |m_i| ≤ 2.
pub fn valid_bundle(rng: &mut impl Rng, target: &Algebra, r: usize) -> HomData {
    let n = target.n();
    assert!(r <= n);
    let field = target.field();
    loop {
        let mut slots: Vec<usize> = (0..n).collect();
        slots.shuffle(rng);
        let w: Vec<usize> = slots[..r].to_vec();
        let tau: Vec<u8> = (0..r).map(|_| rng.gen_range(0..=1)).collect();
        let m: Vec<i64> = (0..r).map(|_| *[1i64, -1, 2, -2].choose(rng).unwrap()).collect();
        let c: Vec<i64> = (0..r).map(|i| sign(tau[i]) * m[i] * target.c()[w[i]]).collect();
        let Ok(source) = Algebra::new(field, target.d(), c) else {
            continue;
        };
        return complete_bundle(rng, &source, target, w, tau, m, false);
    }
}

/// A random automorphism-form bundle of `algebra`.
pub fn automorphism_bundle(rng: &mut impl Rng, algebra: &Algebra) -> HomData {
    let n = algebra.n();
    let c = algebra.c();
    let field = algebra.field();
    let w = loop {
        let mut w: Vec<usize> = (0..n).collect();
        w.shuffle(rng);
        if (0..n).all(|i| c[w[i]].abs() == c[i].abs()) {
            break w;
        }
    };
    let tau: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
    let m: Vec<i64> = (0..n).map(|i| sign(tau[i]) * c[i] / c[w[i]]).collect();
    debug_assert!((0..n).all(|i| field.is_one_of_power(c[w[i]] * sign(tau[i]) * m[i] - c[i])));
    complete_bundle(rng, algebra, algebra, w, tau, m, true)
}

/// A valid bundle changed so that exactly `eq` fails, or `None` when no
/// such perturbation is available for this bundle.
pub fn single_violation(rng: &mut impl Rng, data: &HomData, eq: Equation) -> Option<HomData> {
    let mut out = data.clone();
    let field = data.target.field();
    let r = data.r();
    match eq {
        Equation::E1 => {
            // Shift c̃_i by δ with q^δ ≠ 1 = q^{δd}: q̃_i moves but q̃_i^d does not.
            let o = field.order_of_q_power(1)? as i64;
            let g = gcd(o, data.target.d() as i64);
            if g == 1 {
                return None;
            }
            let i = rng.gen_range(0..r);
            let mut c = data.source.c().to_vec();
            c[i] += o / g;
            out.source = Algebra::new(field, data.source.d(), c).ok()?;
        }
        Equation::E2 => {
            if r < 2 {
                return None;
            }
            let i = rng.gen_range(0..r - 1);
            let l = rng.gen_range(i + 1..r);
            let wi = data.w[i];
            out.t[l][wi] += 1;
        }
        Equation::E3 => {
            let i = rng.gen_range(0..r);
            out.pprime[i] = if rng.gen_bool(0.5) {
                out.pprime[i].scale(&field.from_int(2))
            } else {
                &out.pprime[i] * &LaurentPoly::var(field, 1, 0)
            };
        }
        Equation::E4 => return e4_only_violation(rng, data, 64),
    }
    let report = out.validate().ok()?;
    (report.failed_equations() == vec![eq]).then_some(out)
}

/// Tries `attempts` perturbations of γ_i (re-solving p'_i from E3 where the
/// division is exact) and returns one where E4 alone fails. E1 and E3
/// together force γ_i^d = q̃_i^{−τ_i d}, so this is expected to find nothing.
pub fn e4_only_violation(rng: &mut impl Rng, data: &HomData, attempts: usize) -> Option<HomData> {
    let field = data.target.field();
    let d = data.target.d() as i64;
    for _ in 0..attempts {
        let i = rng.gen_range(0..data.r());
        let factor = match rng.gen_range(0..4) {
            0 => field.zeta_power(rng.gen_range(1..=field.config().order as i64)),
            1 => field.q_power(rng.gen_range(-2..=2)),
            2 => field.from_int(-1),
            _ => scalar(rng, field),
        };
        let mut out = data.clone();
        out.gamma[i] = &out.gamma[i] * &factor;
        let tau = out.tau[i] as i64;
        let lambda = &out.source.q_i(i) * &out.gamma[i];
        let rhs = &LaurentPoly::monomial(field, vec![d * out.m[i]], lambda.pow(d).unwrap())
            - &LaurentPoly::one(field, 1);
        let q_shift = out.target.q_i_pow(out.w[i], 1 - tau);
        let lhs_fixed = &out.p[i]
            * &(&LaurentPoly::monomial(field, vec![d], q_shift.pow(d).unwrap())
                - &LaurentPoly::one(field, 1));
        if let Ok(Some(pp)) = rhs.div_exact(&lhs_fixed) {
            out.pprime[i] = pp;
        }
        if let Ok(report) = out.validate() {
            if report.failed_equations() == vec![Equation::E4] {
                return Some(out);
            }
        }
    }
    None
}

pub fn single_factor_aut(rng: &mut impl Rng, algebra: &Algebra, j: usize) -> SingleFactorAut {
    let field = algebra.field();
    let d = algebra.d();
    let tau: u8 = rng.gen_range(0..=1);
    let gamma = &dth_root_of_one(rng, field, d) * &algebra.q_i_pow(j, -(tau as i64));
    let u = LaurentPoly::monomial(field, vec![rng.gen_range(-2..=2)], scalar(rng, field));
    let target = LaurentPoly::monomial(
        field,
        vec![-(d as i64) * tau as i64],
        field.from_int(-1).pow(tau as i64).unwrap(),
    );
    let uprime = &target * &u.inverse().unwrap();
    SingleFactorAut {
        tau,
        gamma,
        u,
        uprime,
    }
}

/// Units satisfying u_i σ_i(u_l) = u_l σ_l(u_i).
pub fn compatible_units(rng: &mut impl Rng, algebra: &Algebra) -> Vec<Unit> {
    let n = algebra.n();
    let c = algebra.c();
    let mut exps: Vec<Vec<i64>> = (0..n).map(|_| vec![0; n]).collect();
    for (i, row) in exps.iter_mut().enumerate() {
        row[i] = rng.gen_range(-2..=2);
    }
    for i in 0..n {
        for l in (i + 1)..n {
            let k = rng.gen_range(-1..=1);
            exps[l][i] = k * c[l];
            exps[i][l] = k * c[i];
        }
    }
    exps.into_iter().map(|e| (scalar(rng, algebra.field()), e)).collect()
}

/// Up to four generators; Perm only moves factors with equal q_i.
pub fn chain(rng: &mut impl Rng, algebra: &Algebra) -> Vec<TameGenerator> {
    let n = algebra.n();
    let len = rng.gen_range(0..=4);
    (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => {
                let w = loop {
                    let mut w: Vec<usize> = (0..n).collect();
                    w.shuffle(rng);
                    if (0..n).all(|i| algebra.c()[w[i]] == algebra.c()[i]) {
                        break w;
                    }
                };
                TameGenerator::Perm { w }
            }
            1 => {
                let j = rng.gen_range(0..n);
                TameGenerator::Factor {
                    j,
                    g: single_factor_aut(rng, algebra, j),
                }
            }
            _ => TameGenerator::UnitTwist {
                u: compatible_units(rng, algebra),
            },
        })
        .collect()
}
