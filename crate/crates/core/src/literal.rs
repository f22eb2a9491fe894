//! Text literals for scalars and univariate Laurent polynomials.
//!
//! ```text
//! scalar   := poly | poly "/" poly
//! poly     := ["+"|"-"] term (("+"|"-") term)*
//! term     := [rational] ("*"? atom)*
//! atom     := "q" ["^" integer] | "z" ["^" integer] | "h" ["^" integer] | "(" scalar ")"
//! rational := integer ["/" positive-integer]
//! ```
//!
//! `z` is ζ_L and `h` is only accepted in Laurent literals. Whitespace is
//! ignored. The printers emit the canonical form that the parser reads
//! back to an identical value.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

#[derive(Clone, Debug)]
enum Expr {
    Rational(BigRational),
    Q(i64),
    Z(i64),
    H(i64),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let start = self.pos;
        let n = self.digits()?;
        let n = i64::try_from(&n).or_else(|_| {
            self.pos = start;
            self.err("exponent out of range")
        })?;
        Ok(if neg { -n } else { n })
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat(b'^') {
            if self.eat(b'(') {
                let e = self.integer()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            } else {
                self.integer()
            }
        } else {
            Ok(1)
        }
    }

    fn parse_all(mut self) -> Result<Expr> {
        let e = self.scalar()?;
        if self.peek().is_some() {
            return self.err(format!("unexpected character '{}'", self.src[self.pos] as char));
        }
        Ok(e)
    }

    fn scalar(&mut self) -> Result<Expr> {
        let num = self.poly()?;
        if self.eat(b'/') {
            let den = self.poly()?;
            return Ok(Expr::Div(Box::new(num), Box::new(den)));
        }
        Ok(num)
    }

    fn poly(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            terms.push((neg, self.term()?));
            neg = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(Expr::Sum(terms))
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(b'q' | b'z' | b'h' | b'('))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = Vec::new();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let n = self.digits()?;
            let save = self.pos;
            let mut r = BigRational::from_integer(n);
            if self.eat(b'/') && self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let d = self.digits()?;
                if d.is_zero() {
                    return self.err("zero denominator in rational");
                }
                r /= BigRational::from_integer(d);
            } else {
                self.pos = save;
            }
            factors.push(Expr::Rational(r));
        }
        loop {
            let save = self.pos;
            self.skip_ws();
            let star_pos = self.pos;
            let star = self.eat(b'*');
            if !self.starts_atom() {
                if star {
                    self.pos = star_pos;
                    return self.err("expected atom after '*'");
                }
                self.pos = save;
                break;
            }
            factors.push(self.atom()?);
        }
        if factors.is_empty() {
            return self.err("expected a term");
        }
        Ok(Expr::Product(factors))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(Expr::Q(self.exponent()?))
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(Expr::Z(self.exponent()?))
            }
            Some(b'h') => {
                self.pos += 1;
                Ok(Expr::H(self.exponent()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.scalar()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            _ => self.err("expected atom"),
        }
    }
}

fn eval_scalar(field: &Field, e: &Expr) -> std::result::Result<Scalar, String> {
    Ok(match e {
        Expr::Rational(r) => field.from_rational(r.clone()),
        Expr::Q(k) => field.q_power(*k),
        Expr::Z(k) => field.zeta_power(*k),
        Expr::H(_) => return Err("'h' is not allowed in a scalar literal".into()),
        Expr::Sum(terms) => {
            let mut acc = field.zero();
            for (neg, t) in terms {
                let v = eval_scalar(field, t)?;
                acc = if *neg { acc - v } else { acc + v };
            }
            acc
        }
        Expr::Product(fs) => {
            let mut acc = field.one();
            for f in fs {
                acc = acc * eval_scalar(field, f)?;
            }
            acc
        }
        Expr::Div(a, b) => {
            let num = eval_scalar(field, a)?;
            let den = eval_scalar(field, b)?;
            num.div(&den).map_err(|_| "division by zero".to_string())?
        }
    })
}

fn eval_laurent(field: &Field, e: &Expr) -> std::result::Result<LaurentPoly, String> {
    Ok(match e {
        Expr::H(k) => LaurentPoly::monomial(field, vec![*k], field.one()),
        Expr::Sum(terms) => {
            let mut acc = LaurentPoly::zero(field, 1);
            for (neg, t) in terms {
                let v = eval_laurent(field, t)?;
                acc = if *neg { &acc - &v } else { &acc + &v };
            }
            acc
        }
        Expr::Product(fs) => {
            let mut acc = LaurentPoly::one(field, 1);
            for f in fs {
                acc = &acc * &eval_laurent(field, f)?;
            }
            acc
        }
        Expr::Div(a, b) => {
            let num = eval_laurent(field, a)?;
            let den = eval_laurent(field, b)?;
            let (coeff, exp) = den
                .as_monomial()
                .ok_or_else(|| "Laurent literal may only divide by a monomial".to_string())?;
            let inv = coeff.inv().map_err(|_| "division by zero".to_string())?;
            let inv_mono = LaurentPoly::monomial(field, exp.iter().map(|x| -x).collect(), inv);
            &num * &inv_mono
        }
        other => LaurentPoly::constant(field, 1, eval_scalar(field, other)?),
    })
}

fn with_position<T>(text: &str, r: std::result::Result<T, String>) -> Result<T> {
    r.map_err(|message| Error::Parse {
        position: text.len(),
        message,
    })
}

/// Parses a scalar literal in `field`.
pub fn parse_scalar(field: &Field, text: &str) -> Result<Scalar> {
    let expr = Parser::new(text).parse_all()?;
    with_position(text, eval_scalar(field, &expr))
}

/// Parses a Laurent literal in the single variable `h`.
pub fn parse_laurent(field: &Field, text: &str) -> Result<LaurentPoly> {
    let expr = Parser::new(text).parse_all()?;
    with_position(text, eval_laurent(field, &expr))
}

/// Signed terms of a polynomial, each as (negative, body-without-sign).
fn poly_terms(field: &Field, coeffs: &[crate::scalars::CycloElem], q_shift: i64) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        for (j, r) in c.coeffs.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let mut atoms = Vec::new();
            if j > 0 {
                atoms.push(if j == 1 { "z".to_string() } else { format!("z^{j}") });
            }
            let qe = k as i64 + q_shift;
            if field.is_transcendental() && qe != 0 {
                atoms.push(if qe == 1 { "q".to_string() } else { format!("q^{qe}") });
            }
            let mag = r.abs();
            let mut body = String::new();
            if !mag.is_one() || atoms.is_empty() {
                body.push_str(&mag.to_string());
            }
            for a in atoms {
                if !body.is_empty() {
                    body.push('*');
                }
                body.push_str(&a);
            }
            out.push((r.is_negative(), body));
        }
    }
    out
}

fn join_terms(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(body);
    }
    s
}

fn scalar_terms(s: &Scalar) -> (Vec<(bool, String)>, Option<String>) {
    let field = s.field();
    let (shift, num, den) = s.parts();
    let terms = poly_terms(field, num, shift);
    let den_str = (den.len() > 1).then(|| join_terms(&poly_terms(field, den, 0)));
    (terms, den_str)
}

/// Canonical scalar literal.
pub fn format_scalar(s: &Scalar) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let (terms, den) = scalar_terms(s);
    match den {
        None => join_terms(&terms),
        Some(d) => format!("({})/({})", join_terms(&terms), d),
    }
}

/// Canonical literal for a univariate Laurent polynomial in `h`.
pub fn format_laurent(p: &LaurentPoly) -> String {
    assert_eq!(p.arity(), 1, "Laurent literals are univariate");
    let mut terms: Vec<(bool, String)> = Vec::new();
    for (exp, coeff) in p.terms() {
        let k = exp[0];
        let h_atom = match k {
            0 => None,
            1 => Some("h".to_string()),
            _ => Some(format!("h^{k}")),
        };
        let (sterms, den) = scalar_terms(coeff);
        if sterms.len() == 1 && den.is_none() {
            let (neg, body) = &sterms[0];
            let body = match h_atom {
                None => body.clone(),
                Some(h) if body == "1" => h,
                Some(h) => format!("{body}*{h}"),
            };
            terms.push((*neg, body));
        } else {
            let inner = format_scalar(coeff);
            terms.push((
                false,
                match h_atom {
                    None => format!("({inner})"),
                    Some(h) => format!("({inner})*{h}"),
                },
            ));
        }
    }
    join_terms(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trans() -> Field {
        Field::transcendental(3).unwrap()
    }

    #[test]
    fn parses_basic_scalars() {
        let f = trans();
        assert_eq!(parse_scalar(&f, "q^2 - 1").unwrap(), f.q_power(2) - f.one());
        assert_eq!(parse_scalar(&f, "1/2").unwrap(), f.from_ratio(1, 2));
        assert_eq!(parse_scalar(&f, "3/4 q^-1").unwrap(), f.from_ratio(3, 4) * f.q_power(-1));
        assert_eq!(parse_scalar(&f, "z*z*z").unwrap(), f.one());
        assert_eq!(
            parse_scalar(&f, "(q+1)/(q^2-1)").unwrap(),
            (f.q() - f.one()).inv().unwrap()
        );
        assert_eq!(parse_scalar(&f, "q/2").unwrap(), f.q() * f.from_ratio(1, 2));
    }

    #[test]
    fn reports_position() {
        let f = trans();
        match parse_scalar(&f, "q + * 2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_scalar(&f, "q^").is_err());
        assert!(parse_scalar(&f, "1/0").is_err());
        assert!(parse_scalar(&f, "h").is_err());
        assert!(parse_scalar(&f, "(q").is_err());
    }

    #[test]
    fn scalar_format_round_trips() {
        let f = trans();
        let samples = [
            f.zero(),
            f.one(),
            -f.q_power(-3),
            f.from_ratio(-7, 3) * f.zeta_power(1) + f.q(),
            (f.q_power(2) - f.one()).inv().unwrap() * f.zeta_power(2),
            (f.q() + f.from_int(2)).div(&(f.q_power(3) + f.zeta_power(1))).unwrap(),
        ];
        for s in samples {
            let text = format_scalar(&s);
            assert_eq!(parse_scalar(&f, &text).unwrap(), s, "{text}");
        }
    }

    #[test]
    fn laurent_round_trips() {
        let f = trans();
        let p = parse_laurent(&f, "-q^-1*h^-1 + ((q+1)/(q-1))*h^2 + 3").unwrap();
        let text = format_laurent(&p);
        assert_eq!(parse_laurent(&f, &text).unwrap(), p, "{text}");
        assert_eq!(format_laurent(&parse_laurent(&f, "-h^-1").unwrap()), "-h^-1");
        assert!(parse_laurent(&f, "1/(h+1)").is_err());
        assert_eq!(
            parse_laurent(&f, "(h^2 - 1)/h").unwrap(),
            parse_laurent(&f, "h - h^-1").unwrap()
        );
    }

    #[test]
    fn root_mode_prints_only_zeta() {
        let f = Field::root_of_unity(5, 2).unwrap();
        let s = f.q_power(1) + f.from_int(1);
        let text = format_scalar(&s);
        assert!(!text.contains('q'), "{text}");
        assert_eq!(parse_scalar(&f, &text).unwrap(), s);
    }
}
