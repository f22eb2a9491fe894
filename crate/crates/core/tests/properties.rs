use proptest::prelude::*;
use qwa::algebra::{Algebra, GwaElement};
use qwa::homs::{compose, extract_hom_data};
use qwa::literal::{format_laurent, format_scalar, parse_laurent, parse_scalar};
use qwa::sample;
use qwa::scalars::Field;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn setup(seed: u64, root: bool, equal: bool) -> (StdRng, Field, Algebra) {
    let mut rng = StdRng::seed_from_u64(seed);
    let f = sample::field(&mut rng, root);
    let n = 1 + (seed % 3) as usize;
    let d = 1 + (seed / 3 % 3) as u32;
    let a = sample::algebra(&mut rng, &f, n, d, equal);
    (rng, f, a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(seed in any::<u64>(), root in any::<bool>()) {
        let (mut rng, f, _) = setup(seed, root, false);
        let (a, b, c) = (sample::scalar(&mut rng, &f), sample::scalar(&mut rng, &f), sample::scalar(&mut rng, &f));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn literals_round_trip(seed in any::<u64>(), root in any::<bool>()) {
        let (mut rng, f, _) = setup(seed, root, false);
        let s = sample::scalar(&mut rng, &f);
        prop_assert_eq!(parse_scalar(&f, &format_scalar(&s)).unwrap(), s);
        let p = sample::laurent(&mut rng, &f, 1, 4, 3);
        let text = format_laurent(&p);
        prop_assert_eq!(parse_laurent(&f, &text).unwrap(), p);
    }

    #[test]
    fn ring_laws(seed in any::<u64>(), root in any::<bool>()) {
        let (mut rng, _, a) = setup(seed, root, false);
        let (x, y, z) = (sample::element(&mut rng, &a, 3), sample::element(&mut rng, &a, 3), sample::element(&mut rng, &a, 3));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        let one = GwaElement::one(&a);
        prop_assert_eq!(&x * &one, x.clone());
        prop_assert_eq!(&one * &x, x);
    }

    #[test]
    fn grades_add(seed in any::<u64>(), root in any::<bool>()) {
        let (mut rng, _, a) = setup(seed, root, false);
        let x = sample::homogeneous(&mut rng, &a);
        let y = sample::homogeneous(&mut rng, &a);
        let xy = &x * &y;
        let (gx, _) = x.as_homogeneous().unwrap();
        let (gy, _) = y.as_homogeneous().unwrap();
        let sum: Vec<i64> = gx.iter().zip(gy).map(|(p, q)| p + q).collect();
        prop_assert!(xy.is_zero() || xy.as_homogeneous().is_some_and(|(g, _)| *g == sum));
    }

    #[test]
    fn valid_bundles_are_homomorphisms(seed in any::<u64>(), root in any::<bool>()) {
        let (mut rng, _, a) = setup(seed, root, false);
        let r = 1 + (seed as usize / 9) % a.n();
        let h = sample::valid_bundle(&mut rng, &a, r);
        prop_assert!(h.check_relations().unwrap());
        let x = sample::element(&mut rng, &h.source, 3);
        let y = sample::element(&mut rng, &h.source, 3);
        prop_assert_eq!(h.apply(&(&x * &y)).unwrap(), &h.apply(&x).unwrap() * &h.apply(&y).unwrap());
        prop_assert_eq!(h.apply(&(&x + &y)).unwrap(), &h.apply(&x).unwrap() + &h.apply(&y).unwrap());
    }

    #[test]
    fn compose_is_functorial(seed in any::<u64>(), root in any::<bool>()) {
        let (mut rng, _, a) = setup(seed, root, false);
        let f = sample::valid_bundle(&mut rng, &a, a.n());
        let g = sample::automorphism_bundle(&mut rng, &a);
        let gf = compose(&f, &g).unwrap();
        prop_assert!(gf.is_valid().unwrap());
        let x = sample::element(&mut rng, &f.source, 3);
        prop_assert_eq!(gf.apply(&x).unwrap(), g.apply(&f.apply(&x).unwrap()).unwrap());
    }

    #[test]
    fn extraction_is_a_fixpoint(seed in any::<u64>(), root in any::<bool>()) {
        let (mut rng, _, a) = setup(seed, root, false);
        let h = sample::valid_bundle(&mut rng, &a, a.n());
        let images = h.build_images().unwrap();
        let back = extract_hom_data(&images, &h.source, &h.target).unwrap();
        prop_assert!(back.is_canonical());
        prop_assert_eq!(&back, &h.canonicalize().unwrap());
        prop_assert_eq!(back.build_images().unwrap(), images);
    }
}
