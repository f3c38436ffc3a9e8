//! Campaigns over random functions on intervals.

use super::generate::instance_rng;
use super::Tally;
use crate::continuity::generate::random_function;
use crate::continuity::{check_transfer_closed_duality, classify, upper_contour, SymbolicFn1D};
use crate::rational::{rat, Rational};

/// Rational sample points `lo + j/16` of the domain.
fn grid(f: &SymbolicFn1D) -> Vec<Rational> {
    let (lo, hi) = f.domain();
    let mut out = Vec::new();
    let mut x = lo.clone();
    while x <= *hi {
        out.push(x.clone());
        x += &rat(1, 16);
    }
    out
}

pub(super) fn theorem1(seed: u64, budget: usize) -> Tally {
    let mut tally = Tally::default();
    for k in 0..budget {
        let f = random_function(&mut instance_rng(seed, 1, k));
        let r = classify(&f);
        // attainment read off the top contour, not the per-piece scan
        // classify uses
        let attained = !upper_contour(&f, &r.sup).is_empty();
        let sampled_max = grid(&f).iter().map(|x| f.at(x).unwrap()).max().unwrap();
        let argmax_value_ok = match r.argmax.first_rational() {
            Some(x) => f.at(&x).unwrap() == r.sup,
            None => true,
        };
        let ok = r.transfer_wuc == attained
            && r.attains_max == attained
            && r.argmax.is_empty() != attained
            && sampled_max <= r.sup
            && argmax_value_ok;
        tally.check(
            ok,
            k,
            || {
                format!(
                    "transfer_wuc={} attains_max={} top contour nonempty={attained} sup={} sampled max={sampled_max} argmax={}",
                    r.transfer_wuc, r.attains_max, r.sup, r.argmax
                )
            },
            || f.to_string(),
        );
    }
    tally
}

pub(super) fn remark2(seed: u64, budget: usize) -> Tally {
    let mut tally = Tally::default();
    for k in 0..budget {
        let f = random_function(&mut instance_rng(seed, 1, k));
        let d = check_transfer_closed_duality(&f);
        let uc = classify(&f).transfer_uc;
        let ok = d.transfer_closed_valued == d.transfer_uc
            && d.transfer_uc == uc
            && d.intersection_identity == d.transfer_closed_valued;
        tally.check(
            ok,
            k,
            || {
                format!(
                    "transfer_closed_valued={} transfer_uc={} (classify {uc}) closure intersection {} vs intersection {}",
                    d.transfer_closed_valued, d.transfer_uc, d.closure_intersection, d.intersection
                )
            },
            || f.to_string(),
        );
    }
    tally.note("the set identity is checked as an equivalence with transfer closed-valuedness");
    tally
}
