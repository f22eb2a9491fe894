//! Reduced-count property checks behind `qwa selftest`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::relations::self_test;
use crate::algebra::{Algebra, GwaElement};
use crate::dixmier::{bounded_inverse_search, invert, is_automorphism_form, root_counterexample};
use crate::homs::{compose, Equation, HomData};
use crate::io;
use crate::oracle::{rewrite_to_normal_form, FreeWord};
use crate::sample;
use crate::scalars::{Field, FieldConfig};
use crate::tame::{compose_chain, decompose};
use crate::torus::{embed_phi, embed_phi_prime};
use crate::algebra::AlgebraConfig;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, failures: usize, total: usize) -> Check {
    Check {
        name,
        passed: failures == 0,
        detail: format!("{}/{} ok", total - failures, total),
    }
}

fn relations(_: &mut StdRng, _: usize) -> Check {
    let mut total = 0;
    let mut bad = 0;
    let fields = [Field::transcendental(1).unwrap(), Field::root_of_unity(7, 1).unwrap()];
    for f in &fields {
        for n in 1..=3 {
            for d in 1..=3 {
                let a = Algebra::new(f, d, vec![1; n]).unwrap();
                total += 1;
                bad += usize::from(!self_test(&a).is_empty());
            }
        }
    }
    check("defining relations", bad, total)
}

fn oracle(rng: &mut StdRng, count: usize) -> Check {
    let mut bad = 0;
    for k in 0..count {
        let f = sample::field(rng, k % 2 == 1);
        let a = sample::algebra(rng, &f, 2, 2, false);
        let w = sample::word(rng, 2, 6);
        let words = [FreeWord { coeff: f.one(), letters: w.clone() }];
        bad += usize::from(rewrite_to_normal_form(&words, &a) != sample::word_product(&a, &w));
    }
    check("oracle agreement", bad, count)
}

fn torus(rng: &mut StdRng, count: usize) -> Check {
    let mut bad = 0;
    for k in 0..count {
        let f = sample::field(rng, k % 2 == 1);
        let a = sample::algebra(rng, &f, 1 + k % 2, 1 + (k % 2) as u32, false);
        let x = sample::element(rng, &a, 2);
        let y = sample::element(rng, &a, 2);
        let xy = &x * &y;
        let ok = embed_phi(&xy) == embed_phi(&x).mul(&embed_phi(&y)).unwrap()
            && embed_phi_prime(&xy) == embed_phi_prime(&x).mul(&embed_phi_prime(&y)).unwrap();
        bad += usize::from(!ok);
    }
    check("torus embeddings", bad, count)
}

fn bundles(rng: &mut StdRng, count: usize) -> Check {
    let mut bad = 0;
    let mut total = 0;
    for k in 0..count {
        let f = sample::field(rng, k % 2 == 1);
        let n = rng.gen_range(1..=3);
        let d = rng.gen_range(1..=3);
        let a = sample::algebra(rng, &f, n, d, false);
        let r = rng.gen_range(1..=n);
        let data = sample::valid_bundle(rng, &a, r);
        total += 1;
        bad += usize::from(!data.check_relations().unwrap_or(false));
        for eq in [Equation::E2, Equation::E3] {
            if let Some(v) = sample::single_violation(rng, &data, eq) {
                total += 1;
                bad += usize::from(v.check_relations().unwrap_or(true));
            }
        }
    }
    check("bundle soundness and necessity", bad, total)
}

fn inverses(rng: &mut StdRng, count: usize) -> Check {
    let mut bad = 0;
    for k in 0..count {
        let f = sample::transcendental_field(rng);
        let a = sample::algebra(rng, &f, 1 + k % 3, 1 + (k % 3) as u32, false);
        let data = sample::automorphism_bundle(rng, &a);
        let id = HomData::identity(&a);
        let ok = invert(&data)
            .map(|g| {
                compose(&data, &g).ok() == Some(id.clone()) && compose(&g, &data).ok() == Some(id)
            })
            .unwrap_or(false);
        bad += usize::from(!ok);
    }
    check("inverses", bad, count)
}

fn counterexamples(_: &mut StdRng, _: usize) -> Check {
    let cases = [(1, 1, 3, 1), (2, 1, 3, 1), (1, 2, 5, 2)];
    let mut bad = 0;
    for (n, d, l, e) in cases {
        let cfg = AlgebraConfig {
            n,
            d,
            field: FieldConfig::root_of_unity(l, e),
            c: vec![1; n],
        };
        let ok = root_counterexample(&cfg, n - 1)
            .map(|h| {
                let bound = h.m[n - 1];
                h.validate().map(|r| r.passed()).unwrap_or(false)
                    && h.check_relations().unwrap_or(false)
                    && !is_automorphism_form(&h).unwrap_or(true)
                    && bounded_inverse_search(&h, bound).map(|s| s.found.is_none()).unwrap_or(false)
            })
            .unwrap_or(false);
        bad += usize::from(!ok);
    }
    check("root-of-unity endomorphisms", bad, cases.len())
}

fn decompositions(rng: &mut StdRng, count: usize) -> Check {
    let mut bad = 0;
    for k in 0..count {
        let f = sample::transcendental_field(rng);
        let n = 1 + k % 3;
        let a = sample::algebra(rng, &f, n, 1 + (k % 3) as u32, true);
        let data = sample::automorphism_bundle(rng, &a);
        let ok = decompose(&data)
            .map(|chain| {
                chain.len() <= n + 2
                    && compose_chain(&chain, &a).ok() == data.canonicalize().ok()
            })
            .unwrap_or(false);
        bad += usize::from(!ok);
    }
    check("tame decompositions", bad, count)
}

fn round_trips(rng: &mut StdRng, count: usize) -> Check {
    let mut bad = 0;
    for k in 0..count {
        let f = sample::field(rng, k % 2 == 1);
        let a = sample::algebra(rng, &f, 1 + k % 3, 1 + (k % 2) as u32, true);
        let h = sample::valid_bundle(rng, &a, a.n());
        let e: GwaElement = sample::element(rng, &a, 3);
        let c = sample::chain(rng, &a);
        let ok = io::parse_hom(&io::serialize_hom(&h)).ok() == Some(h)
            && io::parse_element(&a, &io::serialize_element(&e)).ok() == Some(e)
            && io::parse_chain(&a, &io::serialize_chain(&c)).ok() == Some(c);
        bad += usize::from(!ok);
    }
    check("serialization round-trips", bad, count)
}

/// Runs every check with `count` random cases each.
pub fn run(seed: u64, count: usize) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(seed);
    type Suite = fn(&mut StdRng, usize) -> Check;
    let suites: [Suite; 8] = [
        relations,
        oracle,
        torus,
        bundles,
        inverses,
        counterexamples,
        decompositions,
        round_trips,
    ];
    suites.iter().map(|s| s(&mut rng, count)).collect()
}
