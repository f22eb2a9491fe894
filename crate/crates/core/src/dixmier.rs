//! Endomorphisms of A(n, d, q̲): the automorphism criterion, inverses, and
//! non-invertible endomorphisms at roots of unity.

use crate::algebra::{Algebra, AlgebraConfig, GwaElement, LaurentPoly};
use crate::error::{Error, Result};
use crate::homs::{extract_hom_data, GeneratorImages, HomData};

/// e_i = p_i b_i h^{t_i} and e'_i = p'_i b_i^{-1} h^{-t_i}, the coefficients
/// with ψ(x̃_i) = e_i z_i and ψ(ỹ_i) = z'_i e'_i.
pub fn composite_units(data: &HomData) -> Result<Vec<(LaurentPoly, LaurentPoly)>> {
    data.check_structure()?;
    let target = &data.target;
    let field = target.field();
    let n = target.n();
    (0..data.r())
        .map(|i| {
            let mono = LaurentPoly::monomial(field, data.t[i].clone(), data.b[i].clone());
            let pos = [data.w[i]];
            let e = &data.p[i].embed(n, &pos) * &mono;
            let e2 = &data.pprime[i].embed(n, &pos) * &mono.inverse()?;
            Ok((e, e2))
        })
        .collect()
}

/// w bijective, |m_i| = 1, p_i and p'_i monomials. Requires a valid bundle.
pub fn is_automorphism_form(data: &HomData) -> Result<bool> {
    let report = data.validate()?;
    if !report.passed() {
        return Err(Error::InvalidData(report.to_string()));
    }
    Ok(data.r() == data.target.n()
        && data.m.iter().all(|m| m.abs() == 1)
        && data.p.iter().all(|p| p.is_monomial())
        && data.pprime.iter().all(|p| p.is_monomial()))
}

/// The inverse automorphism, in canonical form.
pub fn invert(data: &HomData) -> Result<HomData> {
    if !is_automorphism_form(data)? {
        return Err(Error::NotInvertible(
            "w is not a bijection or some m_i is not ±1".into(),
        ));
    }
    // φ: target → source with φ∘ψ = id.
    let (src, tgt) = (&data.source, &data.target);
    let n = tgt.n();
    let field = src.field();
    let mut h_subst = vec![(field.one(), vec![0; n]); n];
    for i in 0..n {
        // ψ(h̃_i) = γ_i h_{w(i)}^{m_i} with m_i = ±1, so h_{w(i)} = (γ_i^{-1} ψ(h̃_i))^{m_i}.
        let m = data.m[i];
        let mut e = vec![0; n];
        e[i] = m;
        h_subst[data.w[i]] = (data.gamma[i].pow(-m)?, e);
    }
    let phi_unit = |f: &LaurentPoly| -> Result<GwaElement> {
        let img = f.substitute_monomials(n, &h_subst)?;
        Ok(GwaElement::from_laurent(src, img.inverse()?))
    };
    let empty = || vec![GwaElement::zero(src); n];
    let mut images = GeneratorImages {
        h: empty(),
        h_inv: empty(),
        x: empty(),
        y: empty(),
    };
    for (j, (c, e)) in h_subst.iter().enumerate() {
        let mono = LaurentPoly::monomial(field, e.clone(), c.clone());
        images.h_inv[j] = GwaElement::from_laurent(src, mono.inverse()?);
        images.h[j] = GwaElement::from_laurent(src, mono);
    }
    for (i, (e, e2)) in composite_units(data)?.iter().enumerate() {
        let wi = data.w[i];
        // φ(z_i) = φ(e_i)^{-1} x̃_i and φ(z'_i) = ỹ_i φ(e'_i)^{-1}.
        let z = phi_unit(e)?.checked_mul(&GwaElement::x(src, i))?;
        let z2 = GwaElement::y(src, i).checked_mul(&phi_unit(e2)?)?;
        if data.tau[i] == 0 {
            images.x[wi] = z;
            images.y[wi] = z2;
        } else {
            images.y[wi] = z;
            images.x[wi] = z2;
        }
    }
    extract_hom_data(&images, tgt, src)
}

/// The endomorphism ψ(h_i) = h_i^{t+1}, ψ(x_i) = U(h_i) x_i, ψ(y_i) = y_i
/// with U(h) = Σ_{l=0}^{t} q_i^{ld} h^{dl} and t the order of q_i; identity
/// on every other factor. `i` is 0-based.
pub fn root_counterexample(config: &AlgebraConfig, i: usize) -> Result<HomData> {
    let algebra = Algebra::from_config(config)?;
    if i >= algebra.n() {
        return Err(Error::PreconditionFailed(format!(
            "factor {} out of range 1..={}",
            i + 1,
            algebra.n()
        )));
    }
    let field = algebra.field();
    let order = field.order_of_q_power(algebra.c()[i]).ok_or_else(|| {
        Error::PreconditionFailed("q is not a root of unity (transcendental mode)".into())
    })?;
    if order < 2 {
        return Err(Error::PreconditionFailed(format!("q_{} = 1", i + 1)));
    }
    let t = order as i64;
    let d = algebra.d() as i64;
    let u = LaurentPoly::from_terms(
        field,
        1,
        (0..=t).map(|l| (vec![d * l], algebra.q_i_pow(i, l * d))),
    );
    let mut data = HomData::identity(&algebra);
    data.m[i] = t + 1;
    data.p[i] = u;
    Ok(data)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSearch {
    pub candidates: usize,
    /// (w, m) of a left inverse on the h-generators, if any.
    pub found: Option<(Vec<usize>, Vec<i64>)>,
}

/// Searches every (w, m) with w a permutation and 0 < |m_i| ≤ bound for g
/// with g∘ψ = id on the h-generators, a necessary condition for any inverse.
pub fn bounded_inverse_search(data: &HomData, bound: i64) -> Result<InverseSearch> {
    data.check_structure()?;
    let n = data.target.n();
    let r = data.r();
    let mut out = InverseSearch {
        candidates: 0,
        found: None,
    };
    let ms: Vec<i64> = (-bound..=bound).filter(|&m| m != 0).collect();
    for perm in permutations(n) {
        let mut idx = vec![0usize; n];
        loop {
            out.candidates += 1;
            let m: Vec<i64> = idx.iter().map(|&k| ms[k]).collect();
            // g(ψ(h̃_i)) ∝ h_{perm(w(i))}^{m_g(w(i))·m_i}
            let ok = r == n
                && (0..r).all(|i| perm[data.w[i]] == i && m[data.w[i]] * data.m[i] == 1);
            if ok && out.found.is_none() {
                out.found = Some((perm.clone(), m));
            }
            if !advance(&mut idx, ms.len()) {
                break;
            }
        }
    }
    Ok(out)
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for slot in idx.iter_mut() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homs::compose;
    use crate::scalars::{Field, FieldConfig};

    fn flip(a: &Algebra) -> HomData {
        let f = a.field();
        HomData {
            tau: vec![1],
            m: vec![-1],
            gamma: vec![f.q_power(-1)],
            p: vec![LaurentPoly::monomial(f, vec![-1], f.from_int(-1))],
            ..HomData::identity(a)
        }
    }

    #[test]
    fn flip_inverse() {
        let a = Algebra::new(&Field::transcendental(1).unwrap(), 1, vec![1]).unwrap();
        let f = flip(&a);
        assert!(is_automorphism_form(&f).unwrap());
        let g = invert(&f).unwrap();
        let h_img = g.build_images().unwrap().h[0].clone();
        let expected = LaurentPoly::monomial(a.field(), vec![-1], a.field().q_power(-1));
        assert_eq!(h_img, GwaElement::from_laurent(&a, expected));
        let id = HomData::identity(&a);
        assert_eq!(compose(&f, &g).unwrap(), id);
        assert_eq!(compose(&g, &f).unwrap(), id);
    }

    #[test]
    fn transposition_is_an_involution() {
        let a = Algebra::new(&Field::transcendental(1).unwrap(), 1, vec![1, 1]).unwrap();
        let chi = HomData {
            w: vec![1, 0],
            ..HomData::identity(&a)
        };
        assert_eq!(invert(&chi).unwrap(), chi);
        assert_eq!(invert(&HomData::identity(&a)).unwrap(), HomData::identity(&a));
    }

    #[test]
    fn unit_identity_for_flip() {
        let a = Algebra::new(&Field::transcendental(1).unwrap(), 1, vec![1]).unwrap();
        let f = a.field();
        let (e, e2) = composite_units(&flip(&a)).unwrap().remove(0);
        // (−1)^τ h^{−dτ} with τ = 1, d = 1
        assert_eq!(&e * &e2, LaurentPoly::monomial(f, vec![-1], f.from_int(-1)));
    }

    #[test]
    fn counterexample_small_cases() {
        let cfg = |n: usize, d: u32, l: u32, e: i64| AlgebraConfig {
            n,
            d,
            field: FieldConfig::root_of_unity(l, e),
            c: vec![1; n],
        };
        let c1 = root_counterexample(&cfg(1, 1, 3, 1), 0).unwrap();
        assert_eq!(c1.m, vec![4]);
        assert_eq!(c1.p[0].len(), 4);
        assert!(c1.validate().unwrap().passed());
        assert!(!is_automorphism_form(&c1).unwrap());
        assert!(bounded_inverse_search(&c1, 4).unwrap().found.is_none());

        let c2 = root_counterexample(&cfg(1, 2, 5, 2), 0).unwrap();
        assert_eq!(c2.m, vec![6]);
        assert!(c2.validate().unwrap().passed());

        let c3 = root_counterexample(&cfg(2, 1, 3, 1), 1).unwrap();
        assert_eq!(c3.m, vec![1, 4]);
        assert!(c3.check_relations().unwrap());

        let t = AlgebraConfig {
            n: 1,
            d: 1,
            field: FieldConfig::transcendental(1),
            c: vec![1],
        };
        assert!(matches!(root_counterexample(&t, 0), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn search_finds_inverse_of_automorphism() {
        let a = Algebra::new(&Field::transcendental(1).unwrap(), 1, vec![1]).unwrap();
        let s = bounded_inverse_search(&flip(&a), 2).unwrap();
        assert_eq!(s.found, Some((vec![0], vec![-1])));
        assert_eq!(s.candidates, 4);
    }
}
