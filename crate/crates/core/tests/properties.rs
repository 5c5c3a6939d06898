//! Algebraic invariants over randomly generated inputs.

mod common;

use common::*;
use mfsing::mf::{compose, cone, hom_differential, hom_space_dimension, null_homotopy, HomElement, MatrixFactorization};
use mfsing::module::{lift, Lift, Over};
use mfsing::ring::{divide, groebner_basis, MonomialOrder, Poly, Ring};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring(lex: bool) -> std::sync::Arc<Ring> {
    let order = if lex { MonomialOrder::Lex } else { MonomialOrder::Grevlex };
    Ring::new(101, &["x", "y", "z"], order).unwrap()
}

fn polys(seed: u64, lex: bool, n: usize) -> Vec<Poly> {
    let r = ring(lex);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_poly(&r, &mut rng, 3, 4)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(seed in any::<u64>(), lex in any::<bool>()) {
        let p = polys(seed, lex, 3);
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert!((a - a).is_zero());
    }

    #[test]
    fn printed_polynomials_parse_back(seed in any::<u64>(), lex in any::<bool>()) {
        let r = ring(lex);
        for f in polys(seed, lex, 4) {
            prop_assert_eq!(r.parse(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn division_reassembles(seed in any::<u64>(), lex in any::<bool>()) {
        let p = polys(seed, lex, 4);
        let divisors: Vec<Poly> = p[1..].iter().filter(|d| !d.is_zero()).cloned().collect();
        prop_assume!(!divisors.is_empty());
        let (q, r) = divide(&p[0], &divisors).unwrap();
        let mut acc = r;
        for (qi, di) in q.iter().zip(&divisors) {
            acc = &acc + &(qi * di);
        }
        prop_assert_eq!(acc, p[0].clone());
    }

    #[test]
    fn ideal_multiples_reduce_to_zero(seed in any::<u64>(), lex in any::<bool>()) {
        let p = polys(seed, lex, 5);
        let gb = groebner_basis(&ring(lex), &p[..2]).unwrap();
        let f = &(&p[2] * &p[0]) + &(&p[3] * &p[1]);
        prop_assert!(gb.contains(&f));
        prop_assert!(gb.reduce(&p[4]) == gb.reduce(&gb.reduce(&p[4])));
    }

    #[test]
    fn shift_is_an_involution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_mf(&mut rng);
        prop_assert_eq!(e.shift().shift(), e.clone());
        let ctx = e.context();
        prop_assert!(MatrixFactorization::new(ctx, e.shift().e1().clone(), e.shift().e0().clone()).is_ok());
    }

    #[test]
    fn hom_differential_squares_to_zero(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_mf(&mut rng);
        let fam = base_objects().iter().position(|f| f[0].context() == e.context()).unwrap();
        let f = random_mf_in(&mut rng, fam);
        let ring = e.context().ring();
        let h = HomElement::odd(
            random_matrix(ring, &mut rng, f.rank(), e.rank(), 2, 3),
            random_matrix(ring, &mut rng, f.rank(), e.rank(), 2, 3),
        );
        let dh = hom_differential(&h, &e, &f).unwrap();
        prop_assert!(hom_differential(&dh, &e, &f).unwrap().is_zero());
    }

    #[test]
    fn lift_recovers_consistent_systems(seed in any::<u64>(), over_r in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_mf(&mut rng);
        let ctx = e.context();
        let over = if over_r { Over::R } else { Over::S };
        let x = random_matrix(ctx.ring(), &mut rng, e.rank(), 2, 2, 2);
        let b = e.e1().checked_mul(&x).unwrap();
        match lift(ctx, e.e1(), &b, over).unwrap() {
            Lift::Solution(y) => {
                let diff = &e.e1().checked_mul(&y).unwrap().checked_sub(&b).unwrap();
                let ok = match over {
                    Over::S => diff.is_zero(),
                    Over::R => diff.entries().iter().all(|f| mfsing::module::vanishes_mod_w(ctx, f)),
                };
                prop_assert!(ok);
            }
            Lift::NoSolution { .. } => prop_assert!(false, "consistent system reported unsolvable"),
        }
    }
}

fn random_pair(seed: u64) -> (MatrixFactorization, MatrixFactorization, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fam = rand::Rng::gen_range(&mut rng, 0..base_objects().len());
    let e = random_mf_in(&mut rng, fam);
    let f = random_mf_in(&mut rng, fam);
    (e, f, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cone_maps_form_a_triangle(seed in any::<u64>()) {
        let (e, f, mut rng) = random_pair(seed);
        let p = random_morphism(&mut rng, &e, &f);
        let c = cone(&p).unwrap();
        let qp = compose(&p, &c.q).unwrap();
        prop_assert!(null_homotopy(&qp).unwrap().is_null());
        prop_assert!(compose(&c.q, &c.r).unwrap().is_zero());
    }

    #[test]
    fn hom_dimension_is_shift_invariant(seed in any::<u64>()) {
        let (e, f, _) = random_pair(seed);
        prop_assert_eq!(
            hom_space_dimension(&e, &f).unwrap(),
            hom_space_dimension(&e.shift(), &f.shift()).unwrap()
        );
    }
}
