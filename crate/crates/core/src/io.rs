//! JSON file formats for algebras, homomorphism bundles, elements and
//! generator chains. Factor indices are 1-based in files.
//!
//! Serialization is canonical (fixed field order, sorted components), so
//! equal values always produce identical bytes.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraConfig, GwaElement, LaurentPoly};
use crate::error::{Error, Result};
use crate::homs::HomData;
use crate::literal::{format_laurent, format_scalar, parse_laurent, parse_scalar};
use crate::scalars::{Field, FieldConfig, Mode, Scalar};
use crate::tame::{SingleFactorAut, TameGenerator, Unit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeTag {
    Transcendental,
    RootOfUnity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub n: usize,
    pub d: u32,
    #[serde(rename = "L")]
    pub l: u32,
    pub mode: ModeTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    pub c: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomFile {
    pub source: AlgebraFile,
    pub target: AlgebraFile,
    pub w: Vec<usize>,
    pub tau: Vec<u8>,
    pub m: Vec<i64>,
    pub gamma: Vec<String>,
    pub b: Vec<String>,
    pub t: Vec<Vec<i64>>,
    pub p: Vec<String>,
    pub pprime: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub exp: Vec<i64>,
    pub scalar: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentFile {
    pub grade: Vec<i64>,
    pub coeff: Vec<TermFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorFile {
    Perm {
        w: Vec<usize>,
    },
    Factor {
        j: usize,
        tau: u8,
        gamma: String,
        u: String,
        uprime: String,
    },
    UnitTwist {
        u: Vec<TermFile>,
    },
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn in_field<T>(what: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { position, message } => Error::Parse {
            position,
            message: format!("{what}: {message}"),
        },
        other => other,
    })
}

fn scalar(field: &Field, what: &str, text: &str) -> Result<Scalar> {
    in_field(what, parse_scalar(field, text))
}

fn laurent(field: &Field, what: &str, text: &str) -> Result<LaurentPoly> {
    in_field(what, parse_laurent(field, text))
}

fn one_based(what: &str, k: usize, n: usize) -> Result<usize> {
    if k == 0 || k > n {
        return Err(Error::Structural(format!("{what} = {k} is out of range 1..={n}")));
    }
    Ok(k - 1)
}

impl AlgebraFile {
    pub fn from_config(c: &AlgebraConfig) -> Self {
        let (mode, e) = match c.field.mode {
            Mode::Transcendental => (ModeTag::Transcendental, None),
            Mode::RootOfUnity { e } => (ModeTag::RootOfUnity, Some(e as i64)),
        };
        AlgebraFile {
            n: c.n,
            d: c.d,
            l: c.field.order,
            mode,
            e,
            c: c.c.clone(),
        }
    }

    pub fn to_config(&self) -> Result<AlgebraConfig> {
        let field = match (self.mode, self.e) {
            (ModeTag::Transcendental, None) => FieldConfig::transcendental(self.l),
            (ModeTag::Transcendental, Some(_)) => {
                return Err(Error::InvalidConfig("e is only meaningful in root_of_unity mode".into()))
            }
            (ModeTag::RootOfUnity, Some(e)) => {
                if self.l == 0 {
                    return Err(Error::InvalidConfig("cyclotomic order L must be >= 1".into()));
                }
                FieldConfig::root_of_unity(self.l, e)
            }
            (ModeTag::RootOfUnity, None) => {
                return Err(Error::InvalidConfig("root_of_unity mode needs e".into()))
            }
        };
        Ok(AlgebraConfig {
            n: self.n,
            d: self.d,
            field,
            c: self.c.clone(),
        })
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        Algebra::from_config(&self.to_config()?)
    }
}

pub fn parse_algebra(text: &str) -> Result<Algebra> {
    from_json::<AlgebraFile>(text)?.to_algebra()
}

pub fn serialize_algebra(a: &Algebra) -> String {
    to_json(&AlgebraFile::from_config(a.config()))
}

impl HomFile {
    pub fn from_data(h: &HomData) -> Self {
        HomFile {
            source: AlgebraFile::from_config(h.source.config()),
            target: AlgebraFile::from_config(h.target.config()),
            w: h.w.iter().map(|x| x + 1).collect(),
            tau: h.tau.clone(),
            m: h.m.clone(),
            gamma: h.gamma.iter().map(format_scalar).collect(),
            b: h.b.iter().map(format_scalar).collect(),
            t: h.t.clone(),
            p: h.p.iter().map(format_laurent).collect(),
            pprime: h.pprime.iter().map(format_laurent).collect(),
        }
    }

    /// Builds the bundle; structure is checked but E1–E4 are not.
    pub fn to_data(&self) -> Result<HomData> {
        let source = self.source.to_algebra()?;
        let target = self.target.to_algebra()?;
        if source.config().field != target.config().field {
            return Err(Error::Structural("source and target use different ground fields".into()));
        }
        let field = target.field().clone();
        let list = |name: &str, v: &[String], f: &dyn Fn(&str, &str) -> Result<Scalar>| {
            v.iter()
                .enumerate()
                .map(|(i, s)| f(&format!("{name}[{}]", i + 1), s))
                .collect::<Result<Vec<_>>>()
        };
        let polys = |name: &str, v: &[String]| {
            v.iter()
                .enumerate()
                .map(|(i, s)| laurent(&field, &format!("{name}[{}]", i + 1), s))
                .collect::<Result<Vec<_>>>()
        };
        let sc = |what: &str, s: &str| scalar(&field, what, s);
        let data = HomData {
            w: self
                .w
                .iter()
                .map(|&k| one_based("w entry", k, target.n()))
                .collect::<Result<_>>()?,
            tau: self.tau.clone(),
            m: self.m.clone(),
            gamma: list("gamma", &self.gamma, &sc)?,
            b: list("b", &self.b, &sc)?,
            t: self.t.clone(),
            p: polys("p", &self.p)?,
            pprime: polys("pprime", &self.pprime)?,
            source,
            target,
        };
        data.check_structure()?;
        Ok(data)
    }
}

pub fn parse_hom(text: &str) -> Result<HomData> {
    from_json::<HomFile>(text)?.to_data()
}

pub fn serialize_hom(h: &HomData) -> String {
    to_json(&HomFile::from_data(h))
}

pub fn element_to_file(a: &GwaElement) -> Vec<ComponentFile> {
    a.components()
        .map(|(g, f)| ComponentFile {
            grade: g.clone(),
            coeff: f
                .terms()
                .map(|(e, c)| TermFile {
                    exp: e.clone(),
                    scalar: format_scalar(c),
                })
                .collect(),
        })
        .collect()
}

pub fn element_from_file(algebra: &Algebra, parts: &[ComponentFile]) -> Result<GwaElement> {
    let n = algebra.n();
    let field = algebra.field();
    let mut out = Vec::new();
    for (k, comp) in parts.iter().enumerate() {
        if comp.grade.len() != n {
            return Err(Error::Structural(format!(
                "component {} has a grade of length {}, expected {n}",
                k + 1,
                comp.grade.len()
            )));
        }
        let mut terms = Vec::new();
        for (j, t) in comp.coeff.iter().enumerate() {
            if t.exp.len() != n {
                return Err(Error::Structural(format!(
                    "component {}, term {} has an exponent of length {}, expected {n}",
                    k + 1,
                    j + 1,
                    t.exp.len()
                )));
            }
            let what = format!("component {}, term {}", k + 1, j + 1);
            terms.push((t.exp.clone(), scalar(field, &what, &t.scalar)?));
        }
        out.push((comp.grade.clone(), LaurentPoly::from_terms(field, n, terms)));
    }
    Ok(GwaElement::from_components(algebra, out))
}

pub fn parse_element(algebra: &Algebra, text: &str) -> Result<GwaElement> {
    element_from_file(algebra, &from_json::<Vec<ComponentFile>>(text)?)
}

pub fn serialize_element(a: &GwaElement) -> String {
    to_json(&element_to_file(a))
}

fn unit_to_file((c, e): &Unit) -> TermFile {
    TermFile {
        exp: e.clone(),
        scalar: format_scalar(c),
    }
}

pub fn generator_to_file(g: &TameGenerator) -> GeneratorFile {
    match g {
        TameGenerator::Perm { w } => GeneratorFile::Perm {
            w: w.iter().map(|x| x + 1).collect(),
        },
        TameGenerator::Factor { j, g } => GeneratorFile::Factor {
            j: j + 1,
            tau: g.tau,
            gamma: format_scalar(&g.gamma),
            u: format_laurent(&g.u),
            uprime: format_laurent(&g.uprime),
        },
        TameGenerator::UnitTwist { u } => GeneratorFile::UnitTwist {
            u: u.iter().map(unit_to_file).collect(),
        },
    }
}

/// Converts a record; generator invariants are checked when the chain is used.
pub fn generator_from_file(algebra: &Algebra, g: &GeneratorFile) -> Result<TameGenerator> {
    let n = algebra.n();
    let field = algebra.field();
    Ok(match g {
        GeneratorFile::Perm { w } => TameGenerator::Perm {
            w: w.iter().map(|&k| one_based("perm entry", k, n)).collect::<Result<_>>()?,
        },
        GeneratorFile::Factor {
            j,
            tau,
            gamma,
            u,
            uprime,
        } => TameGenerator::Factor {
            j: one_based("factor index j", *j, n)?,
            g: SingleFactorAut {
                tau: *tau,
                gamma: scalar(field, "gamma", gamma)?,
                u: laurent(field, "u", u)?,
                uprime: laurent(field, "uprime", uprime)?,
            },
        },
        GeneratorFile::UnitTwist { u } => TameGenerator::UnitTwist {
            u: u
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    if t.exp.len() != n {
                        return Err(Error::Structural(format!(
                            "unit {} has an exponent of length {}, expected {n}",
                            i + 1,
                            t.exp.len()
                        )));
                    }
                    Ok((scalar(field, &format!("unit {}", i + 1), &t.scalar)?, t.exp.clone()))
                })
                .collect::<Result<_>>()?,
        },
    })
}

pub fn parse_chain(algebra: &Algebra, text: &str) -> Result<Vec<TameGenerator>> {
    from_json::<Vec<GeneratorFile>>(text)?
        .iter()
        .map(|g| generator_from_file(algebra, g))
        .collect()
}

pub fn serialize_chain(chain: &[TameGenerator]) -> String {
    to_json(&chain.iter().map(generator_to_file).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    const IDENTITY: &str = r#"{
      "source": {"n": 1, "d": 1, "L": 1, "mode": "transcendental", "c": [1]},
      "target": {"n": 1, "d": 1, "L": 1, "mode": "transcendental", "c": [1]},
      "w": [1], "tau": [0], "m": [1], "gamma": ["1"], "b": ["1"],
      "t": [[0]], "p": ["1"], "pprime": ["1"]
    }"#;

    #[test]
    fn identity_file_parses() {
        let h = parse_hom(IDENTITY).unwrap();
        assert_eq!(h, HomData::identity(&h.source));
        assert_eq!(parse_hom(&serialize_hom(&h)).unwrap(), h);
    }

    #[test]
    fn flip_round_trips_as_text() {
        let h = parse_hom(
            &IDENTITY
                .replace(r#""tau": [0]"#, r#""tau": [1]"#)
                .replace(r#""m": [1]"#, r#""m": [-1]"#)
                .replace(r#""gamma": ["1"]"#, r#""gamma": ["q^-1"]"#)
                .replace(r#""p": ["1"]"#, r#""p": ["-h^-1"]"#),
        )
        .unwrap();
        assert!(h.validate().unwrap().passed());
        let text = serialize_hom(&h);
        assert_eq!(serialize_hom(&parse_hom(&text).unwrap()), text);
    }

    #[test]
    fn errors_carry_locations() {
        match parse_hom("{\n  \"source\": ]") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let bad = IDENTITY.replace(r#""gamma": ["1"]"#, r#""gamma": ["q + * 2"]"#);
        match parse_hom(&bad) {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 4);
                assert!(message.starts_with("gamma[1]"));
            }
            other => panic!("{other:?}"),
        }
        let zero_w = IDENTITY.replace(r#""w": [1]"#, r#""w": [0]"#);
        assert!(matches!(parse_hom(&zero_w), Err(Error::Structural(_))));
    }

    #[test]
    fn root_mode_algebra() {
        let a = parse_algebra(r#"{"n":2,"d":2,"L":5,"mode":"root_of_unity","e":2,"c":[1,1]}"#).unwrap();
        assert!(!a.field().is_transcendental());
        assert_eq!(parse_algebra(&serialize_algebra(&a)).unwrap(), a);
        assert!(parse_algebra(r#"{"n":1,"d":1,"L":3,"mode":"root_of_unity","c":[1]}"#).is_err());
    }

    #[test]
    fn element_and_chain_round_trip() {
        let a = parse_algebra(r#"{"n":2,"d":1,"L":1,"mode":"transcendental","c":[1,1]}"#).unwrap();
        let x = &GwaElement::x(&a, 0) * &GwaElement::y(&a, 1);
        let e = &(&x * &GwaElement::h(&a, 1)) + &GwaElement::scalar(&a, a.field().from_ratio(-3, 2));
        let text = serialize_element(&e);
        assert_eq!(parse_element(&a, &text).unwrap(), e);

        let f = a.field();
        let chain = vec![
            TameGenerator::Perm { w: vec![1, 0] },
            TameGenerator::UnitTwist {
                u: vec![(f.q(), vec![1, 0]), (f.one(), vec![0, 0])],
            },
        ];
        let text = serialize_chain(&chain);
        assert!(text.contains("\"kind\": \"unit_twist\""));
        assert_eq!(parse_chain(&a, &text).unwrap(), chain);
    }
}
