mod common;

use common::*;
use knotforge::fourmanifold::{
    double_xk, p_framed_handlebody, saeki_check, sg_k, sg_plain, total_defect, GenusValue, IntersectionForm,
    SurfaceComponent, SurfaceConfig,
};
use knotforge::laurent::{rat, LaurentPoly};
use knotforge::skein::{jones_bracket_oracle, SkeinEngine};
use knotforge::{parse_pd, PDDiagram};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn braid() -> impl Strategy<Value = PDDiagram> {
    (1usize..=4, prop::collection::vec((0usize..3, any::<bool>()), 0..=9)).prop_map(|(s, w)| {
        let word: Vec<(usize, bool)> = if s == 1 { Vec::new() } else { w.into_iter().map(|(i, p)| (i % (s - 1), p)).collect() };
        braid_closure(s, &word)
    })
}

fn knot() -> impl Strategy<Value = PDDiagram> {
    braid().prop_filter("knots only", |d| d.component_count() == 1)
}

/// `V(−1)` for an integral Jones polynomial.
fn at_minus_one(v: &LaurentPoly) -> BigRational {
    v.terms()
        .map(|(doubled, c)| if (doubled / 2) % 2 == 0 { c.clone() } else { -c.clone() })
        .fold(BigRational::zero(), |a, b| a + b)
}

/// `∇(2i)` for a knot's Conway polynomial (even powers only).
fn conway_at_2i(c: &LaurentPoly) -> BigRational {
    c.terms()
        .map(|(doubled, q)| {
            let j = doubled / 4;
            q * BigRational::from_integer(BigInt::from(-4).pow(j as u32))
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

fn every_component_passes_under(d: &PDDiagram) -> bool {
    d.runs()
        .iter()
        .all(|&(lo, hi)| d.crossings().iter().any(|c| (lo..=hi).contains(&c.labels[0])))
}

#[test]
fn braid_generator_sanity() {
    let trefoil = braid_closure(2, &[(0, true); 3]);
    let e = SkeinEngine::new(24);
    assert_eq!(e.conway(&trefoil).unwrap(), LaurentPoly::from_int_terms(&[(1, 0), (1, 2)]));
    assert_eq!(knot_determinant(&trefoil), BigInt::from(3));
    let fig8 = braid_closure(3, &[(0, true), (1, false), (0, true), (1, false)]);
    assert_eq!(e.conway(&fig8).unwrap(), LaurentPoly::from_int_terms(&[(1, 0), (-1, 2)]));
    assert_eq!(knot_determinant(&fig8), BigInt::from(5));
    assert_eq!(braid_closure(3, &[]).component_count(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn switch_and_smooth_keep_diagrams_valid(d in braid(), pick in any::<prop::sample::Index>()) {
        prop_assume!(d.crossing_count() > 0);
        let i = pick.index(d.crossing_count());
        let s = d.switch_crossing(i).unwrap();
        prop_assert_eq!(parse_pd(&s.render()).unwrap().crossing_count(), d.crossing_count());
        prop_assert_eq!(s.writhe(), d.writhe() - 2 * d.crossing_sign(i).unwrap() as i64);
        // a component left with only over-passes has no recorded direction
        if every_component_passes_under(&s) {
            prop_assert_eq!(s.switch_crossing(i).unwrap().canonical_key(), d.canonical_key());
        }
        let z = d.smooth_crossing(i).unwrap();
        prop_assert_eq!(z.crossing_count() + 1, d.crossing_count());
        prop_assert!(parse_pd(&z.render()).is_ok());
        let diff = z.component_count() as i64 - d.component_count() as i64;
        prop_assert!(diff.abs() == 1);
    }

    #[test]
    fn engine_matches_bracket_oracle(d in braid()) {
        let e = SkeinEngine::new(24);
        prop_assert_eq!(e.jones(&d).unwrap(), jones_bracket_oracle(&d).unwrap());
    }

    #[test]
    fn skein_relations_at_any_crossing(d in braid(), pick in any::<prop::sample::Index>()) {
        prop_assume!(d.crossing_count() > 0);
        let e = SkeinEngine::new(24);
        let i = pick.index(d.crossing_count());
        let (plus, minus) = if d.crossing_sign(i).unwrap() > 0 {
            (d.clone(), d.switch_crossing(i).unwrap())
        } else {
            (d.switch_crossing(i).unwrap(), d.clone())
        };
        let zero = d.smooth_crossing(i).unwrap();
        let lhs = &e.conway(&plus).unwrap() - &e.conway(&minus).unwrap();
        prop_assert_eq!(lhs, -(&LaurentPoly::var_pow(1) * &e.conway(&zero).unwrap()));
        let t = LaurentPoly::var_pow(1);
        let lhs = &(&t * &e.jones(&plus).unwrap()) - &(&LaurentPoly::var_pow(-1) * &e.jones(&minus).unwrap());
        let delta = &LaurentPoly::half_pow(1) - &LaurentPoly::half_pow(-1);
        prop_assert_eq!(lhs, &delta * &e.jones(&zero).unwrap());
    }

    #[test]
    fn reidemeister_and_relabelling_invariance(d in braid(), shifts in prop::collection::vec(0u32..20, 4)) {
        let e = SkeinEngine::new(24);
        let (c, v) = (e.conway(&d).unwrap(), e.jones(&d).unwrap());
        let r1 = d.reduce_r1();
        prop_assert_eq!(&e.conway(&r1).unwrap(), &c);
        prop_assert_eq!(&e.jones(&r1).unwrap(), &v);
        let r = d.relabel_runs(&shifts);
        prop_assert_eq!(r.canonical_key(), d.canonical_key());
        prop_assert_eq!(&e.jones(&r).unwrap(), &v);
        prop_assert_eq!(e.jones(&d.mirror()).unwrap(), v.mirror());
    }

    #[test]
    fn knot_determinant_matches_polynomials(d in knot()) {
        let e = SkeinEngine::new(24);
        let det = BigRational::from_integer(knot_determinant(&d));
        prop_assert_eq!(conway_at_2i(&e.conway(&d).unwrap()).abs(), det.clone());
        prop_assert_eq!(at_minus_one(&e.jones(&d).unwrap()).abs(), det);
    }

    #[test]
    fn knot_moments_are_integral(d in knot()) {
        let e = SkeinEngine::new(24);
        let v = e.jones(&d).unwrap();
        prop_assert_eq!(v.eval_at_one(), rat(1));
        prop_assert!(v.moment(1).is_zero());
        let a2 = e.conway(&d).unwrap().coeff(2);
        prop_assert_eq!(v.moment(2), a2 * rat(-6));
    }

    #[test]
    fn signature_matches_descartes_count(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = random_symmetric(&mut rng, 8);
        let f = IntersectionForm::new(m.clone()).unwrap();
        prop_assert_eq!(f.signature(), signature_oracle(&m));
    }

    #[test]
    fn sg_order_statistic_is_min_of_max(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cat = random_catalog(&mut rng, 12);
        let mut prev = GenusValue::Finite(0);
        for k in 1..=13 {
            let v = sg_k(&cat, k).unwrap();
            prop_assert_eq!(v, sg_brute(&cat, k));
            prop_assert!(prev <= v);
            prev = v;
        }
        let plain = cat.maps.iter().map(|m| cat.admissible_genera(m).last().map_or(GenusValue::Infinite, |&g| GenusValue::Finite(g))).min().unwrap_or(GenusValue::Infinite);
        prop_assert_eq!(sg_plain(&cat), plain);
    }

    #[test]
    fn degree_is_even_for_orientable_singular_sets(
        p in (-6i64..=6).prop_filter("nonzero", |p| *p != 0),
        s0 in prop::collection::vec((0u32..4, -3i64..=3), 0..4),
        s1 in prop::collection::vec(0u32..4, 0..4),
    ) {
        let x = p_framed_handlebody(p).unwrap();
        let sigma0 = SurfaceConfig::new(s0.iter().map(|&(g, k)| SurfaceComponent::multiple(g, k)).collect());
        let sigma1 = SurfaceConfig::new(s1.iter().map(|&g| SurfaceComponent::new(g, vec![0])).collect());
        let t = total_defect(&x, &sigma0, &sigma1).unwrap();
        prop_assert_eq!(t.d.rem_euclid(2), 0);
    }

    #[test]
    fn double_passes_for_every_genus(g in 0u32..200) {
        let (m, f0, f1) = double_xk(g);
        prop_assert!(saeki_check(&m, &f0, &f1).unwrap().passed());
    }
}
