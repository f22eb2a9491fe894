//! Homomorphisms Ã(r, d, q̲̃) → A(n, d, q̲) given by parameter bundles.
//!
//! A bundle (w, τ, m, γ, b, t, p, p') determines
//!
//! - ψ(h̃_i) = γ_i h_{w(i)}^{m_i}
//! - ψ(x̃_i) = p_i(h_{w(i)}) b_i h^{t_i} x_{w(i)}^{1−τ_i} y_{w(i)}^{τ_i}
//! - ψ(ỹ_i) = x_{w(i)}^{τ_i} y_{w(i)}^{1−τ_i} p'_i(h_{w(i)}) b_i^{-1} h^{−t_i}
//!
//! and is a homomorphism exactly when the four equations checked by
//! [`HomData::validate`] hold. Indices are 0-based here and 1-based in
//! every user-facing message.

use std::fmt;

use crate::algebra::relations::{self, Gen};
use crate::algebra::{sigma_action, Algebra, GwaElement, LaurentPoly};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomData {
    pub source: Algebra,
    pub target: Algebra,
    pub w: Vec<usize>,
    pub tau: Vec<u8>,
    pub m: Vec<i64>,
    pub gamma: Vec<Scalar>,
    pub b: Vec<Scalar>,
    /// r × n.
    pub t: Vec<Vec<i64>>,
    /// Univariate, in h_{w(i)}.
    pub p: Vec<LaurentPoly>,
    pub pprime: Vec<LaurentPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Equation {
    E1,
    E2,
    E3,
    E4,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub equation: Equation,
    pub i: usize,
    /// Second index, for E2 only.
    pub l: Option<usize>,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} failed at i={}", self.equation, self.i + 1)?;
        if let Some(l) = self.l {
            write!(f, ", l={}", l + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed_equations(&self) -> Vec<Equation> {
        let mut eqs: Vec<Equation> = self.failures.iter().map(|f| f.equation).collect();
        eqs.sort();
        eqs.dedup();
        eqs
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.failures.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Images of h̃_i, h̃_i^{-1}, x̃_i, ỹ_i in the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImages {
    pub h: Vec<GwaElement>,
    pub h_inv: Vec<GwaElement>,
    pub x: Vec<GwaElement>,
    pub y: Vec<GwaElement>,
}

impl GeneratorImages {
    pub fn image(&self, g: Gen) -> GwaElement {
        match g {
            Gen::H(i) => self.h[i].clone(),
            Gen::HInv(i) => self.h_inv[i].clone(),
            Gen::X(i) => self.x[i].clone(),
            Gen::Y(i) => self.y[i].clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// The images as a homomorphism applied to `a` (which must live in `source`).
    pub fn apply(&self, source: &Algebra, a: &GwaElement) -> Result<GwaElement> {
        if a.algebra() != source || self.len() != source.n() {
            return Err(Error::AlgebraMismatch);
        }
        let target = self.h.first().map(|e| e.algebra().clone()).ok_or(Error::AlgebraMismatch)?;
        let mut subst = Vec::with_capacity(source.n());
        for (i, img) in self.h.iter().enumerate() {
            let (c, e) = img.recognize_unit().ok_or_else(|| {
                Error::InvalidData(format!("image of h{} is not a unit monomial", i + 1))
            })?;
            subst.push((c, e));
        }
        let mut out = GwaElement::zero(&target);
        for (grade, f) in a.components() {
            let coeff = f.substitute_monomials(target.n(), &subst)?;
            let mut term = GwaElement::from_laurent(&target, coeff);
            for (i, &k) in grade.iter().enumerate() {
                let base = if k >= 0 { &self.x[i] } else { &self.y[i] };
                term = term.checked_mul(&base.pow(k.unsigned_abs() as u32))?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }
}

fn univariate_a_d(algebra: &Algebra, lambda: &Scalar, m: i64) -> LaurentPoly {
    let field = algebra.field();
    let d = algebra.d() as i64;
    &LaurentPoly::monomial(field, vec![d * m], lambda.pow(d).expect("nonnegative"))
        - &LaurentPoly::one(field, 1)
}

fn sign(tau: u8) -> i64 {
    1 - 2 * tau as i64
}

impl HomData {
    pub fn r(&self) -> usize {
        self.source.n()
    }

    /// w = id, τ = 0, m = 1, γ = b = 1, t = 0, p = p' = 1.
    pub fn identity(algebra: &Algebra) -> HomData {
        let n = algebra.n();
        let field = algebra.field();
        HomData {
            source: algebra.clone(),
            target: algebra.clone(),
            w: (0..n).collect(),
            tau: vec![0; n],
            m: vec![1; n],
            gamma: vec![field.one(); n],
            b: vec![field.one(); n],
            t: vec![vec![0; n]; n],
            p: vec![LaurentPoly::one(field, 1); n],
            pprime: vec![LaurentPoly::one(field, 1); n],
        }
    }

    /// Lengths, ranges, injectivity of w, matching d and field.
    pub fn check_structure(&self) -> Result<()> {
        let s = |msg: String| Err(Error::Structural(msg));
        let (r, n) = (self.source.n(), self.target.n());
        if self.source.d() != self.target.d() {
            return s(format!(
                "source d = {} but target d = {}",
                self.source.d(),
                self.target.d()
            ));
        }
        if self.source.config().field != self.target.config().field {
            return s("source and target use different ground fields".into());
        }
        if r > n {
            return s(format!("no injection from {r} source factors into {n} target factors"));
        }
        let lens = [
            ("w", self.w.len()),
            ("tau", self.tau.len()),
            ("m", self.m.len()),
            ("gamma", self.gamma.len()),
            ("b", self.b.len()),
            ("t", self.t.len()),
            ("p", self.p.len()),
            ("pprime", self.pprime.len()),
        ];
        for (name, len) in lens {
            if len != r {
                return s(format!("{name} has length {len}, expected {r}"));
            }
        }
        let mut seen = vec![false; n];
        for (i, &wi) in self.w.iter().enumerate() {
            if wi >= n {
                return s(format!("w({}) = {} is out of range 1..={n}", i + 1, wi + 1));
            }
            if seen[wi] {
                return s(format!("w is not injective: {} is hit twice", wi + 1));
            }
            seen[wi] = true;
        }
        for i in 0..r {
            let idx = i + 1;
            if self.tau[i] > 1 {
                return s(format!("tau_{idx} = {} is not 0 or 1", self.tau[i]));
            }
            if self.m[i] == 0 {
                return s(format!("m_{idx} = 0"));
            }
            if self.gamma[i].is_zero() {
                return s(format!("gamma_{idx} = 0"));
            }
            if self.b[i].is_zero() {
                return s(format!("b_{idx} = 0"));
            }
            if self.t[i].len() != n {
                return s(format!("row {idx} of t has length {}, expected {n}", self.t[i].len()));
            }
            if self.p[i].arity() != 1 || self.pprime[i].arity() != 1 {
                return s(format!("p_{idx} and p'_{idx} must be univariate"));
            }
        }
        Ok(())
    }

    /// Checks E1–E4; structural problems are errors, not failures.
    pub fn validate(&self) -> Result<ValidationReport> {
        self.check_structure()?;
        let field = self.target.field();
        let (cs, ct) = (self.source.c(), self.target.c());
        let d = self.target.d() as i64;
        let r = self.r();
        let mut failures = Vec::new();
        for i in 0..r {
            let wi = self.w[i];
            if !field.is_one_of_power(ct[wi] * sign(self.tau[i]) * self.m[i] - cs[i]) {
                failures.push(Failure { equation: Equation::E1, i, l: None });
            }
        }
        for i in 0..r {
            for l in (i + 1)..r {
                let (wi, wl) = (self.w[i], self.w[l]);
                let e = ct[wi] * self.t[l][wi] * sign(self.tau[i])
                    - ct[wl] * self.t[i][wl] * sign(self.tau[l]);
                if !field.is_one_of_power(e) {
                    failures.push(Failure { equation: Equation::E2, i, l: Some(l) });
                }
            }
        }
        for i in 0..r {
            let wi = self.w[i];
            let q_shift = self.target.q_i_pow(wi, 1 - self.tau[i] as i64);
            let lhs = &(&self.p[i] * &self.pprime[i]) * &univariate_a_d(&self.target, &q_shift, 1);
            let lambda = &self.source.q_i(i) * &self.gamma[i];
            let rhs = univariate_a_d(&self.target, &lambda, self.m[i]);
            if lhs != rhs {
                failures.push(Failure { equation: Equation::E3, i, l: None });
            }
        }
        for i in 0..r {
            let lhs = self.gamma[i].pow(d)?;
            let rhs = self.source.q_i_pow(i, -(self.tau[i] as i64) * d);
            if lhs != rhs {
                failures.push(Failure { equation: Equation::E4, i, l: None });
            }
        }
        Ok(ValidationReport { failures })
    }

    pub fn is_valid(&self) -> Result<bool> {
        Ok(self.validate()?.passed())
    }

    /// Generator images from the bundle formulas, without checking E1–E4.
    pub fn images_unchecked(&self) -> Result<GeneratorImages> {
        self.check_structure()?;
        let target = &self.target;
        let n = target.n();
        let field = target.field();
        let mut out = GeneratorImages {
            h: Vec::new(),
            h_inv: Vec::new(),
            x: Vec::new(),
            y: Vec::new(),
        };
        for i in 0..self.r() {
            let wi = self.w[i];
            let mut e = vec![0; n];
            e[wi] = self.m[i];
            let neg: Vec<i64> = e.iter().map(|x| -x).collect();
            out.h.push(GwaElement::from_laurent(
                target,
                LaurentPoly::monomial(field, e, self.gamma[i].clone()),
            ));
            out.h_inv.push(GwaElement::from_laurent(
                target,
                LaurentPoly::monomial(field, neg, self.gamma[i].inv()?),
            ));
            let positions = [wi];
            let p = self.p[i].embed(n, &positions);
            let pp = self.pprime[i].embed(n, &positions);
            let t_mono = LaurentPoly::monomial(field, self.t[i].clone(), self.b[i].clone());
            let t_inv = t_mono.inverse()?;
            let (xg, yg) = if self.tau[i] == 0 {
                (GwaElement::x(target, wi), GwaElement::y(target, wi))
            } else {
                (GwaElement::y(target, wi), GwaElement::x(target, wi))
            };
            out.x.push(GwaElement::from_laurent(target, &p * &t_mono).checked_mul(&xg)?);
            out.y.push(yg.checked_mul(&GwaElement::from_laurent(target, &pp * &t_inv))?);
        }
        Ok(out)
    }

    /// Generator images of a bundle that passes validation.
    pub fn build_images(&self) -> Result<GeneratorImages> {
        let report = self.validate()?;
        if !report.passed() {
            return Err(Error::InvalidData(report.to_string()));
        }
        self.images_unchecked()
    }

    pub fn apply(&self, a: &GwaElement) -> Result<GwaElement> {
        if a.algebra() != &self.source {
            return Err(Error::AlgebraMismatch);
        }
        self.build_images()?.apply(&self.source, a)
    }

    /// Names of source relations whose images fail in the target; works on
    /// bundles that violate E1–E4.
    pub fn relation_failures(&self) -> Result<Vec<String>> {
        let images = self.images_unchecked()?;
        Ok(relations::failing_relations(
            &relations::defining_relations(&self.source),
            &self.target,
            |g| images.image(g),
        ))
    }

    pub fn check_relations(&self) -> Result<bool> {
        Ok(self.relation_failures()?.is_empty())
    }

    /// Canonical representative with b = 1 and t_{i,w(i)} = 0.
    pub fn canonicalize(&self) -> Result<HomData> {
        extract_hom_data(&self.images_unchecked()?, &self.source, &self.target)
    }

    pub fn is_canonical(&self) -> bool {
        self.b.iter().all(|b| b.is_one())
            && self.w.iter().enumerate().all(|(i, &wi)| self.t[i].get(wi) == Some(&0))
    }
}

/// The bundle of g∘f (f applied first).
pub fn compose(f: &HomData, g: &HomData) -> Result<HomData> {
    if f.target != g.source {
        return Err(Error::ConfigMismatch(
            "target of the first map is not the source of the second".into(),
        ));
    }
    let fi = f.build_images()?;
    let gi = g.build_images()?;
    let through = |v: &[GwaElement]| -> Result<Vec<GwaElement>> {
        v.iter().map(|e| gi.apply(&g.source, e)).collect()
    };
    let images = GeneratorImages {
        h: through(&fi.h)?,
        h_inv: through(&fi.h_inv)?,
        x: through(&fi.x)?,
        y: through(&fi.y)?,
    };
    extract_hom_data(&images, &f.source, &g.target).map_err(|e| match e {
        Error::NotClassifiedForm(msg) => Error::ExtractionFailure(msg),
        other => other,
    })
}

fn not_classified(msg: String) -> Error {
    Error::NotClassifiedForm(msg)
}

/// Reads a canonical bundle back off generator images.
pub fn extract_hom_data(
    images: &GeneratorImages,
    source: &Algebra,
    target: &Algebra,
) -> Result<HomData> {
    let r = source.n();
    let n = target.n();
    if images.h.len() != r || images.h_inv.len() != r || images.x.len() != r || images.y.len() != r
    {
        return Err(Error::Structural(format!("expected images for {r} source factors")));
    }
    let field = target.field();
    let mut data = HomData {
        source: source.clone(),
        target: target.clone(),
        w: Vec::new(),
        tau: Vec::new(),
        m: Vec::new(),
        gamma: Vec::new(),
        b: vec![field.one(); r],
        t: Vec::new(),
        p: Vec::new(),
        pprime: Vec::new(),
    };
    for i in 0..r {
        let idx = i + 1;
        for e in [&images.h[i], &images.h_inv[i], &images.x[i], &images.y[i]] {
            if e.algebra() != target {
                return Err(Error::AlgebraMismatch);
            }
        }
        let (gamma, e) = images.h[i]
            .recognize_unit()
            .ok_or_else(|| not_classified(format!("image of h{idx} is not a unit monomial")))?;
        let support: Vec<usize> = (0..n).filter(|&j| e[j] != 0).collect();
        if support.len() != 1 {
            return Err(not_classified(format!(
                "image of h{idx} is not a power of a single h_j"
            )));
        }
        let wi = support[0];
        if !(&images.h[i] * &images.h_inv[i]).is_one() {
            return Err(not_classified(format!("images of h{idx} and h{idx}^-1 are not inverse")));
        }

        let (xgrade, xcoeff) = images.x[i]
            .as_homogeneous()
            .ok_or_else(|| not_classified(format!("image of x{idx} is not homogeneous")))?;
        let tau = grade_direction(xgrade, wi)
            .ok_or_else(|| not_classified(format!("image of x{idx} has grade {xgrade:?}")))?;
        let mut t_row = off_axis_exponents(xcoeff, wi)
            .ok_or_else(|| not_classified(format!("coefficient of x{idx} image is not p(h_{})·monomial", wi + 1)))?;
        t_row[wi] = 0;
        let p = xcoeff.restrict_to_variable(wi, &t_row).expect("checked above");

        let (ygrade, ycoeff) = images.y[i]
            .as_homogeneous()
            .ok_or_else(|| not_classified(format!("image of y{idx} is not homogeneous")))?;
        if grade_direction(ygrade, wi) != Some(1 - tau) {
            return Err(not_classified(format!("image of y{idx} has grade {ygrade:?}")));
        }
        // ψ(ỹ) = w_g·r(h) with r on the right; its left coefficient is σ^g(r).
        let back: Vec<i64> = ygrade.iter().map(|x| -x).collect();
        let right = sigma_action(ycoeff, &back, target);
        let neg_t: Vec<i64> = t_row.iter().map(|x| -x).collect();
        let pprime = right.restrict_to_variable(wi, &neg_t).ok_or_else(|| {
            not_classified(format!("coefficient of y{idx} image does not match that of x{idx}"))
        })?;

        data.w.push(wi);
        data.tau.push(tau);
        data.m.push(e[wi]);
        data.gamma.push(gamma);
        data.t.push(t_row);
        data.p.push(p);
        data.pprime.push(pprime);
    }
    data.check_structure().map_err(|e| match e {
        Error::Structural(msg) => not_classified(msg),
        other => other,
    })?;
    if &data.images_unchecked()? != images {
        return Err(not_classified("images are not reproduced by the extracted bundle".into()));
    }
    Ok(data)
}

/// 0 if grade = +e_j, 1 if grade = −e_j.
fn grade_direction(grade: &[i64], j: usize) -> Option<u8> {
    if grade.iter().enumerate().any(|(k, &g)| k != j && g != 0) {
        return None;
    }
    match grade[j] {
        1 => Some(0),
        -1 => Some(1),
        _ => None,
    }
}

/// The common exponent vector off axis `j`, if all monomials share it.
fn off_axis_exponents(f: &LaurentPoly, j: usize) -> Option<Vec<i64>> {
    let mut common: Option<Vec<i64>> = None;
    for (e, _) in f.terms() {
        let mut off = e.clone();
        off[j] = 0;
        match &common {
            None => common = Some(off),
            Some(c) if *c == off => {}
            Some(_) => return None,
        }
    }
    common
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;

    fn a1(d: u32) -> Algebra {
        Algebra::new(&Field::transcendental(1).unwrap(), d, vec![1]).unwrap()
    }

    fn hpoly(a: &Algebra, terms: &[(i64, i64)]) -> LaurentPoly {
        let f = a.field();
        LaurentPoly::from_terms(f, 1, terms.iter().map(|&(k, c)| (vec![k], f.from_int(c))))
    }

    fn flip(a: &Algebra) -> HomData {
        let f = a.field();
        HomData {
            tau: vec![1],
            m: vec![-1],
            gamma: vec![f.q_power(-1)],
            p: vec![hpoly(a, &[(-1, -1)])],
            ..HomData::identity(a)
        }
    }

    #[test]
    fn identity_and_flip_validate() {
        let a = a1(1);
        assert!(HomData::identity(&a).validate().unwrap().passed());
        assert!(flip(&a).validate().unwrap().passed());
        let bad = HomData {
            gamma: vec![a.field().one()],
            ..flip(&a)
        };
        let report = bad.validate().unwrap();
        // E3 breaks too: its right side becomes q·h^{-1} − 1.
        assert_eq!(report.failed_equations(), vec![Equation::E3, Equation::E4]);
        assert_eq!(report.to_string(), "E3 failed at i=1; E4 failed at i=1");
    }

    #[test]
    fn flip_images() {
        let a = a1(1);
        let im = flip(&a).build_images().unwrap();
        let neg_hinv = GwaElement::from_laurent(&a, hpoly(&a, &[(-1, -1)]));
        assert_eq!(im.x[0], &neg_hinv * &GwaElement::y(&a, 0));
        assert_eq!(im.y[0], GwaElement::x(&a, 0));
    }

    #[test]
    fn flip_applied_to_yx() {
        let a = a1(1);
        let f = a.field();
        let yx = &GwaElement::y(&a, 0) * &GwaElement::x(&a, 0);
        let got = flip(&a).apply(&yx).unwrap();
        let expected = GwaElement::from_laurent(
            &a,
            LaurentPoly::from_terms(f, 1, [(vec![-1], f.q_power(-1)), (vec![0], f.from_int(-1))]),
        );
        assert_eq!(got, expected);
        assert!(flip(&a).apply(&GwaElement::zero(&a)).unwrap().is_zero());
    }

    #[test]
    fn scaling_in_d2() {
        let a = a1(2);
        let f = a.field();
        let b = f.from_ratio(3, 7);
        let data = HomData {
            b: vec![b.clone()],
            ..HomData::identity(&a)
        };
        let im = data.build_images().unwrap();
        assert_eq!(im.x[0], GwaElement::x(&a, 0).scale(&b));
    }

    #[test]
    fn breaking_e3_breaks_relations() {
        let a = a1(1);
        let data = HomData {
            pprime: vec![hpoly(&a, &[(1, 1)])],
            ..flip(&a)
        };
        assert!(!data.check_relations().unwrap());
        assert!(flip(&a).check_relations().unwrap());
        assert!(HomData::identity(&a).check_relations().unwrap());
    }

    #[test]
    fn flip_squared_fixes_h() {
        let a = a1(1);
        let sq = compose(&flip(&a), &flip(&a)).unwrap();
        assert_eq!(sq.tau, vec![0]);
        assert_eq!(sq.m, vec![1]);
        assert!(sq.gamma[0].is_one());
        let x = GwaElement::x(&a, 0);
        let twice = flip(&a).apply(&flip(&a).apply(&x).unwrap()).unwrap();
        assert_eq!(sq.apply(&x).unwrap(), twice);
        assert_eq!(compose(&HomData::identity(&a), &flip(&a)).unwrap(), flip(&a));
    }

    #[test]
    fn extraction_round_trip_and_rejection() {
        let a = a1(1);
        let data = flip(&a);
        let im = data.build_images().unwrap();
        let back = extract_hom_data(&im, &a, &a).unwrap();
        assert_eq!(back, data);
        assert_eq!(back.build_images().unwrap(), im);

        let mut bad = im.clone();
        bad.h[0] = &GwaElement::h(&a, 0) + &GwaElement::one(&a);
        assert!(matches!(
            extract_hom_data(&bad, &a, &a),
            Err(Error::NotClassifiedForm(_))
        ));
    }

    #[test]
    fn canonical_form_moves_t_and_b_into_p() {
        let t = Field::transcendental(1).unwrap();
        let a = Algebra::new(&t, 1, vec![1, 2]).unwrap();
        let f = a.field();
        let data = HomData {
            b: vec![f.from_int(5), f.one()],
            t: vec![vec![3, 0], vec![0, 0]],
            ..HomData::identity(&a)
        };
        // E2 for (1,2): c_1 t_{2,1} = c_2 t_{1,2} = 0 holds.
        assert!(data.validate().unwrap().passed());
        let canon = data.canonicalize().unwrap();
        assert!(canon.is_canonical());
        assert_eq!(canon.build_images().unwrap(), data.build_images().unwrap());
        assert_eq!(canon.canonicalize().unwrap(), canon);
    }

    #[test]
    fn structural_errors() {
        let t = Field::transcendental(1).unwrap();
        let big = Algebra::new(&t, 1, vec![1, 1]).unwrap();
        let small = Algebra::new(&t, 1, vec![1]).unwrap();
        let mut data = HomData::identity(&big);
        data.target = small.clone();
        data.t = vec![vec![0]; 2];
        assert!(matches!(data.validate(), Err(Error::Structural(_))));
        let mut dup = HomData::identity(&big);
        dup.w = vec![0, 0];
        assert!(matches!(dup.validate(), Err(Error::Structural(_))));
        let other_d = Algebra::new(&t, 2, vec![1]).unwrap();
        let mut dm = HomData::identity(&small);
        dm.target = other_d;
        assert!(matches!(dm.validate(), Err(Error::Structural(_))));
    }
}
