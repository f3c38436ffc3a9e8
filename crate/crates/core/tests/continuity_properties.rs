//! Corpus invariants of the continuity classifier, each checked against a
//! computation that does not go through the classifier's own skeleton.

use iesds::continuity::generate::random_function;
use iesds::continuity::{
    check_transfer_closed_duality, classify, upper_contour, Affine, PointSet1D, Qualifier, SymbolicFn1D,
};
use iesds::rational::{rat, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn function(seed: u64) -> SymbolicFn1D {
    random_function(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn grid(f: &SymbolicFn1D, step: Rational) -> Vec<Rational> {
    let (lo, hi) = f.domain();
    let mut out = vec![lo.clone()];
    while out.last().unwrap() < hi {
        let next = out.last().unwrap() + &step;
        out.push(next);
    }
    out
}

/// Upper limit of `f` at `x` from either side, read off the pieces: every
/// branch of a piece that contains points arbitrarily close to `x` (other
/// than `x`) contributes its value at `x`.
fn upper_limit(f: &SymbolicFn1D, x: &Rational) -> Option<Rational> {
    f.pieces()
        .iter()
        .filter(|p| p.lo < p.hi && ((p.lo <= *x && *x < p.hi) || (p.lo < *x && *x <= p.hi)))
        .flat_map(|p| p.rule.branches().into_iter().map(|(a, _)| a.at(x)))
        .max()
}

/// The supremum from piece ends and isolated values.
fn sup_oracle(f: &SymbolicFn1D) -> Rational {
    let mut best: Option<Rational> = None;
    let mut offer = |v: Rational| {
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
    };
    for p in f.pieces() {
        for (a, q) in p.rule.branches() {
            if p.lo == p.hi {
                if q != Qualifier::IrrationalsOnly && !f.overrides().contains_key(&p.lo) {
                    offer(a.at(&p.lo));
                }
            } else {
                offer(a.at(&p.lo));
                offer(a.at(&p.hi));
            }
        }
    }
    for v in f.overrides().values() {
        offer(v.clone());
    }
    best.unwrap()
}

fn flags(f: &SymbolicFn1D) -> (bool, bool, bool, bool, bool, Rational) {
    let r = classify(f);
    (r.usc, r.transfer_uc, r.transfer_wuc, r.attains_max, r.property_m, r.sup)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn weierstrass_equivalence(seed in any::<u64>()) {
        let f = function(seed);
        let r = classify(&f);
        prop_assert_eq!(r.transfer_wuc, r.attains_max);
        prop_assert_eq!(!r.argmax.is_empty(), r.attains_max);
        prop_assert_eq!(!upper_contour(&f, &r.sup).is_empty(), r.attains_max);
    }

    #[test]
    fn continuity_hierarchy(seed in any::<u64>()) {
        let r = classify(&function(seed));
        prop_assert!(!r.usc || r.transfer_uc);
        prop_assert!(!r.transfer_uc || r.transfer_wuc);
        prop_assert!(r.property_m);
    }

    #[test]
    fn contours_shrink_as_the_level_rises(seed in any::<u64>()) {
        let f = function(seed);
        let mut levels: Vec<Rational> = grid(&f, rat(1, 4)).iter().map(|x| f.at(x).unwrap()).collect();
        levels.sort();
        levels.dedup();
        for w in levels.windows(2) {
            prop_assert!(upper_contour(&f, &w[1]).is_subset(&upper_contour(&f, &w[0])));
        }
    }

    #[test]
    fn usc_means_closed_contours(seed in any::<u64>()) {
        let f = function(seed);
        let r = classify(&f);
        let mut all_closed = true;
        for x in grid(&f, rat(1, 8)) {
            let level = f.at(&x).unwrap();
            for c in [level.clone(), level - rat(1, 3)] {
                all_closed &= upper_contour(&f, &c).is_closed();
            }
        }
        if r.usc {
            prop_assert!(all_closed);
        }
    }

    #[test]
    fn usc_violations_match_pointwise_upper_limits(seed in any::<u64>()) {
        let f = function(seed);
        let r = classify(&f);
        for x in grid(&f, rat(1, 8)) {
            let fx = f.at(&x).unwrap();
            let violated = upper_limit(&f, &x).is_some_and(|l| l > fx);
            prop_assert_eq!(r.usc_violations.contains(&x), violated, "x = {}", x);
        }
    }

    #[test]
    fn supremum_matches_piece_ends_and_bounds_samples(seed in any::<u64>()) {
        let f = function(seed);
        let r = classify(&f);
        prop_assert_eq!(&r.sup, &sup_oracle(&f));
        for x in grid(&f, rat(1, 32)) {
            prop_assert!(f.at(&x).unwrap() <= r.sup);
        }
        if let Some(x) = r.argmax.first_rational() {
            prop_assert_eq!(f.at(&x).unwrap(), r.sup);
        }
    }

    #[test]
    fn reflection_preserves_every_flag(seed in any::<u64>()) {
        let f = function(seed);
        prop_assert_eq!(flags(&f), flags(&f.reflect()));
        prop_assert_eq!(f.reflect().reflect(), f);
    }

    #[test]
    fn duality_and_intersection_identity(seed in any::<u64>()) {
        let f = function(seed);
        let d = check_transfer_closed_duality(&f);
        prop_assert!(d.holds);
        prop_assert_eq!(d.transfer_closed_valued, classify(&f).transfer_uc);
        prop_assert_eq!(d.intersection_identity, d.transfer_closed_valued);
        prop_assert!(d.intersection.is_subset(&d.closure_intersection));
    }

    #[test]
    fn file_format_round_trips(seed in any::<u64>()) {
        let f = function(seed);
        let back: SymbolicFn1D = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn affine_functions_are_continuous() {
    for (slope, intercept) in [(rat(1, 2), rat(0, 1)), (rat(-3, 1), rat(2, 1)), (rat(0, 1), rat(7, 4))] {
        let f = SymbolicFn1D::affine(rat(0, 1), rat(2, 1), slope.clone(), intercept.clone()).unwrap();
        let r = classify(&f);
        assert!(r.usc && r.transfer_uc && r.transfer_wuc && r.attains_max);
        let a = Affine::new(slope, intercept);
        assert_eq!(r.sup, a.at(&rat(0, 1)).max(a.at(&rat(2, 1))));
        assert!(check_transfer_closed_duality(&f).holds);
    }
}

#[test]
fn irrational_plateau_is_an_argmax_without_rationals() {
    let f: SymbolicFn1D = "domain: 0 1\npiece: [0,1] split 0 0 / 0 1\n".parse().unwrap();
    let r = classify(&f);
    assert_eq!(r.argmax, "[0,1]∖Q".parse::<PointSet1D>().unwrap());
    assert!(r.attains_max && r.transfer_wuc);
    assert_eq!(r.argmax.first_rational(), None);
}
