mod common;

use l2betti::builders::{fox_complex, mapping_torus, product_with_interval, surface, MonodromySpec};
use l2betti::chain::{betti, euler_char, relative_to_cells, twisted_betti, validate_complex, BettiVector};
use l2betti::covers::{approximate, check_multiplicativity, cyclic_quotient, QuotientSchedule};
use l2betti::group_ring::{fox_derivative, Cocycle, FiniteQuotient, FpGroup, GroupRingElement, Specialization, Word};
use l2betti::io::{from_text, to_text, Document};
use l2betti::sutured::{duality_check, product_certificate, ProductCertificateInput};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use common::{cyclic_cover_betti, det, q, surface_relator};

fn surface_params() -> impl Strategy<Value = (usize, usize)> {
    (0usize..3, 0usize..3).prop_filter("sphere excluded", |&(g, b)| g + b > 0)
}

fn cocycle_for(x: &l2betti::chain::EquivariantComplex, coeffs: &[i64]) -> Option<Cocycle> {
    let basis = x.group().cocycle_basis();
    let mut v = vec![0i64; x.group().generator_count()];
    for (c, b) in coeffs.iter().zip(&basis) {
        for (vi, bi) in v.iter_mut().zip(b.values()) {
            *vi += c * bi;
        }
    }
    let phi = Cocycle::new(v);
    (!phi.is_zero()).then_some(phi)
}

fn euler(b: &BettiVector) -> i64 {
    b.euler()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cover_euler_is_degree_times_euler((g, b) in surface_params(), k in 1usize..10, coeffs in prop::collection::vec(-2i64..3, 6)) {
        let x = surface(g, b).unwrap();
        if let Some(phi) = cocycle_for(&x, &coeffs) {
            let quot = cyclic_quotient(&phi, k).unwrap();
            let bv = betti(&x, &Specialization::Quotient(quot)).unwrap();
            prop_assert_eq!(euler(&bv), k as i64 * euler_char(&x));
            prop_assert_eq!(euler(&twisted_betti(&x, &phi).unwrap()), euler_char(&x));
        }
    }

    #[test]
    fn relative_euler_is_additive((g, b) in (0usize..3, 1usize..3), k in 1usize..6, coeffs in prop::collection::vec(-2i64..3, 6)) {
        let f = product_with_interval(&surface(g, b).unwrap()).unwrap();
        let x = &f.space;
        let a = f.r_minus();
        let pair = relative_to_cells(x, &a).unwrap();
        let sub = x.restrict(&a).unwrap();
        prop_assert_eq!(euler_char(x), euler_char(&sub) + euler_char(&pair));
        let Some(phi) = cocycle_for(x, &coeffs) else { return Ok(()) };
        let s = Specialization::Quotient(cyclic_quotient(&phi, k).unwrap());
        let (bx, ba, bp) = (betti(x, &s).unwrap(), betti(&sub, &s).unwrap(), betti(&pair, &s).unwrap());
        prop_assert_eq!(euler(&bx), euler(&ba) + euler(&bp));
        for p in 0..4 {
            prop_assert!(bx.get(p) <= ba.get(p) + bp.get(p));
        }
    }

    #[test]
    fn certificate_constant_term_is_det(n in 1usize..5, seed in prop::collection::vec(-3i64..4, 50)) {
        let a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * n + j]).collect()).collect();
        let b: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[25 + i * n + j]).collect()).collect();
        let det_a = det(a.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect());
        let rep = product_certificate(&ProductCertificateInput::from_i64(vec![(a, b)])).unwrap();
        prop_assert_eq!(rep.determinants[0].coefficient(0), det_a.clone());
        if !det_a.is_zero() {
            prop_assert!(rep.certified);
        }
    }

    #[test]
    fn builders_validate_under_twists_and_quotients((g, b) in surface_params(), k in 1usize..7, coeffs in prop::collection::vec(-2i64..3, 6)) {
        let f = surface(g, b).unwrap();
        let prod = product_with_interval(&f).unwrap().space;
        let mut spaces = vec![f.clone(), prod];
        if b == 0 || b == 1 {
            if let Ok((m, _)) = mapping_torus(&f, &MonodromySpec::identity(f.group().generator_count())) {
                spaces.push(m);
            }
        }
        for x in &spaces {
            prop_assert!(validate_complex(x, &Specialization::Augmentation).unwrap().valid);
            if let Some(phi) = cocycle_for(x, &coeffs) {
                prop_assert!(validate_complex(x, &Specialization::Twist(phi.clone())).unwrap().valid);
                let quot = cyclic_quotient(&phi, k).unwrap();
                prop_assert!(validate_complex(x, &Specialization::Quotient(quot)).unwrap().valid);
            }
        }
    }

    #[test]
    fn free_group_quotients_validate(perms in prop::collection::vec(Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(), 2)) {
        let x = fox_complex(&FpGroup::free(2)).unwrap();
        let quot = FiniteQuotient::new(5, perms).unwrap();
        let bv = betti(&x, &Specialization::Quotient(quot.clone())).unwrap();
        prop_assert_eq!(euler(&bv), 5 * euler_char(&x));
        prop_assert_eq!(bv.get(0), quot.orbit_count());
    }

    #[test]
    fn genus_two_covers_match_brute_force(k in 1usize..9, phi in prop::collection::vec(-2i64..3, 4)) {
        prop_assume!(phi.iter().any(|&v| v != 0));
        let x = surface(2, 0).unwrap();
        let cocycle = Cocycle::new(phi.clone());
        let sched = QuotientSchedule::cyclic(&cocycle, &[k]).unwrap();
        let seq = approximate(&x, &sched).unwrap();
        let oracle = cyclic_cover_betti(4, &[surface_relator(2)], &phi, k);
        prop_assert_eq!(&seq.items[0].betti.unnormalized, &oracle);
    }

    #[test]
    fn nested_covers_agree(k in 1usize..4, m in 1usize..4, phi in prop::collection::vec(-2i64..3, 2)) {
        prop_assume!(phi.iter().any(|&v| v != 0));
        let x = surface(1, 0).unwrap();
        let cocycle = Cocycle::new(phi);
        prop_assume!(cocycle.is_primitive());
        let coarse = cyclic_quotient(&cocycle, k).unwrap();
        let fine = cyclic_quotient(&cocycle, k * m).unwrap();
        let rep = check_multiplicativity(&x, &coarse, &fine).unwrap();
        prop_assert!(rep.equal && rep.euler_scales);
    }

    #[test]
    fn fox_derivatives_match_hand_expansion(word in prop::collection::vec(prop_oneof![-3i32..0, 1i32..4], 0..12), g in 1i32..4) {
        let lib = fox_derivative(&Word::new(word.clone()), g as usize);
        let hand = GroupRingElement::from_terms(
            common::fox(&word, g).into_iter().map(|(c, w)| (BigInt::from(c), Word::new(w).reduced())),
        );
        prop_assert_eq!(lib, hand);
    }

    #[test]
    fn products_satisfy_duality((g, b) in surface_params(), coeffs in prop::collection::vec(-2i64..3, 6)) {
        let sc = product_with_interval(&surface(g, b).unwrap()).unwrap();
        prop_assert!(duality_check(&sc, &Specialization::Augmentation).unwrap().holds);
        if let Some(phi) = cocycle_for(&sc.space, &coeffs) {
            let rep = duality_check(&sc, &Specialization::Twist(phi)).unwrap();
            prop_assert!(rep.holds);
            prop_assert!(rep.minus.is_zero());
        }
    }

    #[test]
    fn documents_round_trip((g, b) in surface_params(), coeffs in prop::collection::vec(-2i64..3, 6), k in 1usize..5) {
        let x = surface(g, b).unwrap();
        let mut doc = Document::new(x.clone());
        if let Some(phi) = cocycle_for(&x, &coeffs) {
            doc = doc.with_quotient("q", cyclic_quotient(&phi, k).unwrap());
            doc = doc.with_cocycle("phi", phi.values().to_vec());
        }
        let text = to_text(&doc);
        let back = from_text(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(to_text(&back), text);
    }
}
