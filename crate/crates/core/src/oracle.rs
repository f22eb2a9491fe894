//! A deliberately naive free-word rewriting engine for A(n, d, q̲).
//!
//! Words over {h_i, H_i = h_i^{-1}, x_i, y_i} are rewritten one adjacent
//! pair at a time with the presentation's relations oriented as rules,
//! until no rule applies. The resulting words are read off into graded
//! normal form. Nothing here calls into the element multiplication of
//! [`crate::algebra`]; only the final read-off uses its constructors.

use std::collections::BTreeMap;

use rand::Rng;

use crate::algebra::{Algebra, GwaElement, LaurentPoly};
use crate::scalars::Scalar;

/// Letter classes in their sorted order within a factor: h < H < x < y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LetterKind {
    H,
    HInv,
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub factor: usize,
    pub kind: LetterKind,
}

impl Letter {
    pub fn new(factor: usize, kind: LetterKind) -> Self {
        Letter { factor, kind }
    }
}

/// A scalar times a word.
#[derive(Clone, Debug)]
pub struct FreeWord {
    pub coeff: Scalar,
    pub letters: Vec<Letter>,
}

/// Which reducible position to rewrite next.
pub enum Strategy<'a, R: Rng> {
    Leftmost,
    Random(&'a mut R),
}

/// Result of rewriting one adjacent pair: replacement fragments with scalars.
fn rewrite_pair(algebra: &Algebra, a: Letter, b: Letter) -> Option<Vec<(Scalar, Vec<Letter>)>> {
    use LetterKind::*;
    let field = algebra.field();
    if a.factor != b.factor {
        return (a.factor > b.factor).then(|| vec![(field.one(), vec![b, a])]);
    }
    let i = a.factor;
    let q = || algebra.q_i(i);
    let q_inv = || algebra.q_i_pow(i, -1);
    let l = |k| Letter::new(i, k);
    let a_d = |lambda: Scalar| {
        vec![
            (
                lambda.pow(algebra.d() as i64).unwrap(),
                vec![l(H); algebra.d() as usize],
            ),
            (-field.one(), Vec::new()),
        ]
    };
    Some(match (a.kind, b.kind) {
        (H, HInv) | (HInv, H) => vec![(field.one(), Vec::new())],
        (X, H) => vec![(q(), vec![l(H), l(X)])],
        (X, HInv) => vec![(q_inv(), vec![l(HInv), l(X)])],
        (Y, H) => vec![(q_inv(), vec![l(H), l(Y)])],
        (Y, HInv) => vec![(q(), vec![l(HInv), l(Y)])],
        (X, Y) => a_d(q()),
        (Y, X) => a_d(field.one()),
        _ => return None,
    })
}

fn reducible_positions(algebra: &Algebra, w: &[Letter]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&p| rewrite_pair(algebra, w[p], w[p + 1]).is_some())
        .collect()
}

/// Rewrites a formal sum of words to normal form.
pub fn rewrite_with<R: Rng>(
    words: &[FreeWord],
    algebra: &Algebra,
    mut strategy: Strategy<'_, R>,
) -> GwaElement {
    let field = algebra.field();
    let mut pending: Vec<FreeWord> = words.to_vec();
    let mut irreducible: BTreeMap<Vec<Letter>, Scalar> = BTreeMap::new();
    while let Some(word) = pending.pop() {
        if word.coeff.is_zero() {
            continue;
        }
        let positions = reducible_positions(algebra, &word.letters);
        if positions.is_empty() {
            let slot = irreducible.entry(word.letters).or_insert_with(|| field.zero());
            *slot = &*slot + &word.coeff;
            continue;
        }
        let p = match &mut strategy {
            Strategy::Leftmost => positions[0],
            Strategy::Random(rng) => positions[rng.gen_range(0..positions.len())],
        };
        let replacement = rewrite_pair(algebra, word.letters[p], word.letters[p + 1]).unwrap();
        for (c, frag) in replacement {
            let mut letters = word.letters[..p].to_vec();
            letters.extend(frag);
            letters.extend_from_slice(&word.letters[p + 2..]);
            pending.push(FreeWord {
                coeff: &word.coeff * &c,
                letters,
            });
        }
    }
    read_off(algebra, irreducible)
}

/// Leftmost-first rewriting.
pub fn rewrite_to_normal_form(words: &[FreeWord], algebra: &Algebra) -> GwaElement {
    rewrite_with::<rand::rngs::ThreadRng>(words, algebra, Strategy::Leftmost)
}

fn read_off(algebra: &Algebra, words: BTreeMap<Vec<Letter>, Scalar>) -> GwaElement {
    let n = algebra.n();
    let field = algebra.field();
    let mut parts = Vec::new();
    for (letters, c) in words {
        let mut exp = vec![0i64; n];
        let mut grade = vec![0i64; n];
        for l in letters {
            match l.kind {
                LetterKind::H => exp[l.factor] += 1,
                LetterKind::HInv => exp[l.factor] -= 1,
                LetterKind::X => grade[l.factor] += 1,
                LetterKind::Y => grade[l.factor] -= 1,
            }
        }
        parts.push((grade, LaurentPoly::monomial(field, exp, c)));
    }
    GwaElement::from_components(algebra, parts)
}

/// Parses a space-separated word such as `"y1 x1 H2"`; the factor index may
/// be omitted when n = 1.
pub fn parse_word(text: &str) -> Option<Vec<Letter>> {
    text.split_whitespace()
        .map(|tok| {
            let mut chars = tok.chars();
            let kind = match chars.next()? {
                'h' => LetterKind::H,
                'H' => LetterKind::HInv,
                'x' => LetterKind::X,
                'y' => LetterKind::Y,
                _ => return None,
            };
            let rest: String = chars.collect();
            let factor = if rest.is_empty() {
                0
            } else {
                rest.parse::<usize>().ok()?.checked_sub(1)?
            };
            Some(Letter::new(factor, kind))
        })
        .collect()
}
