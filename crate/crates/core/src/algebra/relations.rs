//! The defining relations of A(n, d, q̲) as data, so they can be checked
//! under any assignment of generator images.

use super::{Algebra, GwaElement};
use crate::scalars::Scalar;

/// A generator symbol (0-based factor index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    H(usize),
    HInv(usize),
    X(usize),
    Y(usize),
}

/// Σ c·(word) with words over generator symbols.
pub type Expr = Vec<(Scalar, Vec<Gen>)>;

#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

fn word(field_one: &Scalar, w: Vec<Gen>) -> Expr {
    vec![(field_one.clone(), w)]
}

/// a_d(λ·H_i) = λ^d H_i^d − 1.
fn a_d_expr(algebra: &Algebra, i: usize, lambda: &Scalar) -> Expr {
    let field = algebra.field();
    vec![
        (
            lambda.pow(algebra.d() as i64).expect("nonnegative"),
            vec![Gen::H(i); algebra.d() as usize],
        ),
        (-field.one(), Vec::new()),
    ]
}

/// Every single-factor relation and every cross-factor commutation.
pub fn defining_relations(algebra: &Algebra) -> Vec<Relation> {
    let field = algebra.field();
    let one = field.one();
    let n = algebra.n();
    let mut out = Vec::new();
    for i in 0..n {
        let qi = algebra.q_i(i);
        let idx = i + 1;
        out.push(Relation {
            name: format!("x{idx} h{idx} = q{idx} h{idx} x{idx}"),
            lhs: word(&one, vec![Gen::X(i), Gen::H(i)]),
            rhs: vec![(qi.clone(), vec![Gen::H(i), Gen::X(i)])],
        });
        out.push(Relation {
            name: format!("y{idx} h{idx} = q{idx}^-1 h{idx} y{idx}"),
            lhs: word(&one, vec![Gen::Y(i), Gen::H(i)]),
            rhs: vec![(qi.inv().expect("q_i nonzero"), vec![Gen::H(i), Gen::Y(i)])],
        });
        out.push(Relation {
            name: format!("x{idx} y{idx} = a_d(q{idx} h{idx})"),
            lhs: word(&one, vec![Gen::X(i), Gen::Y(i)]),
            rhs: a_d_expr(algebra, i, &qi),
        });
        out.push(Relation {
            name: format!("y{idx} x{idx} = a_d(h{idx})"),
            lhs: word(&one, vec![Gen::Y(i), Gen::X(i)]),
            rhs: a_d_expr(algebra, i, &one),
        });
        out.push(Relation {
            name: format!("h{idx} h{idx}^-1 = 1"),
            lhs: word(&one, vec![Gen::H(i), Gen::HInv(i)]),
            rhs: word(&one, Vec::new()),
        });
        out.push(Relation {
            name: format!("h{idx}^-1 h{idx} = 1"),
            lhs: word(&one, vec![Gen::HInv(i), Gen::H(i)]),
            rhs: word(&one, Vec::new()),
        });
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (i + 1, j + 1);
            let pairs = [
                (Gen::H(i), Gen::H(j), format!("h{a} h{b} = h{b} h{a}")),
                (Gen::H(i), Gen::X(j), format!("h{a} x{b} = x{b} h{a}")),
                (Gen::H(i), Gen::Y(j), format!("h{a} y{b} = y{b} h{a}")),
                (Gen::X(i), Gen::X(j), format!("x{a} x{b} = x{b} x{a}")),
                (Gen::X(i), Gen::Y(j), format!("x{a} y{b} = y{b} x{a}")),
                (Gen::Y(i), Gen::Y(j), format!("y{a} y{b} = y{b} y{a}")),
            ];
            for (g1, g2, name) in pairs {
                // Symmetric pairs are listed once.
                if matches!((g1, g2), (Gen::H(_), Gen::H(_)) | (Gen::X(_), Gen::X(_)) | (Gen::Y(_), Gen::Y(_)))
                    && i > j
                {
                    continue;
                }
                out.push(Relation {
                    name,
                    lhs: word(&one, vec![g1, g2]),
                    rhs: word(&one, vec![g2, g1]),
                });
            }
        }
    }
    out
}

/// Evaluates a relation side in `target` with generator images from `image`.
pub fn evaluate(expr: &Expr, target: &Algebra, image: &impl Fn(Gen) -> GwaElement) -> GwaElement {
    let mut acc = GwaElement::zero(target);
    for (c, w) in expr {
        let mut term = GwaElement::scalar(target, c.clone());
        for g in w {
            term = &term * &image(*g);
        }
        acc = &acc + &term;
    }
    acc
}

/// Names of relations that fail under the given images.
pub fn failing_relations(
    relations: &[Relation],
    target: &Algebra,
    image: impl Fn(Gen) -> GwaElement,
) -> Vec<String> {
    relations
        .iter()
        .filter(|r| evaluate(&r.lhs, target, &image) != evaluate(&r.rhs, target, &image))
        .map(|r| r.name.clone())
        .collect()
}

/// Checks every defining relation on the algebra's own generators.
pub fn self_test(algebra: &Algebra) -> Vec<String> {
    let gens = super::generators(algebra);
    failing_relations(&defining_relations(algebra), algebra, |g| match g {
        Gen::H(i) => gens.h[i].clone(),
        Gen::HInv(i) => gens.h_inv[i].clone(),
        Gen::X(i) => gens.x[i].clone(),
        Gen::Y(i) => gens.y[i].clone(),
    })
}
