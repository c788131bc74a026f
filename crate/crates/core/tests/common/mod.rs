#![allow(dead_code)]

use osshift::{AdjacentShiftFamily, Family, PowerMaxFamily, ShiftPair, TwoSpacingFamily};
use proptest::prelude::*;

pub fn shifts() -> impl Strategy<Value = ShiftPair> {
    let mult = prop_oneof![1 => Just(0.0), 4 => 0.05f64..3.0];
    (mult.clone(), mult)
        .prop_filter("(a,b) ≠ (0,0)", |(a, b)| *a > 0.0 || *b > 0.0)
        .prop_map(|(a, b)| ShiftPair::new(a, b).unwrap())
}

pub fn family() -> impl Strategy<Value = Family> {
    let logc = -3.0f64..3.0;
    let adjacent = (2u32..=12, shifts(), logc.clone()).prop_flat_map(|(n, s, logc)| {
        (1..n).prop_map(move |k| Family::from(AdjacentShiftFamily::new(n, k, s, logc).unwrap()))
    });
    let two = (3u32..=12, shifts(), logc.clone()).prop_flat_map(|(n, s, logc)| {
        (1..=n - 2).prop_map(move |k| Family::from(TwoSpacingFamily::new(n, k, s, logc).unwrap()))
    });
    let power = (0.2f64..4.0, 0.2f64..4.0, shifts(), logc)
        .prop_map(|(al, be, s, logc)| Family::from(PowerMaxFamily::new(al, be, s, logc).unwrap()));
    prop_oneof![adjacent, two, power]
}

/// `count` equally spaced points covering `[lo, hi]`.
pub fn grid(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
}

use osshift::{RelationKind, RelationSpec};

/// One family per relation kind, each paired with the relation it satisfies.
pub fn representatives() -> Vec<(&'static str, Family, RelationSpec)> {
    let s = ShiftPair::new(1.0, 1.0).unwrap();
    let corollary = PowerMaxFamily::corollary(3, s, 0.0).unwrap();
    vec![
        ("adjacent", AdjacentShiftFamily::new(3, 1, s, 0.0).unwrap().into(), None),
        ("two_spacing", TwoSpacingFamily::new(4, 1, s, 0.0).unwrap().into(), None),
        ("power_max", PowerMaxFamily::new(2.0, 3.0, s, 0.0).unwrap().into(), None),
        ("corollary_max", corollary.into(), Some(RelationKind::CorollaryMax { n: 3 })),
    ]
    .into_iter()
    .map(|(name, fam, kind): (_, Family, Option<RelationKind>)| {
        let rel = match kind {
            Some(kind) => RelationSpec::new(kind, fam.shifts()).unwrap(),
            None => RelationSpec::matching(&fam),
        };
        (name, fam, rel)
    })
    .collect()
}

/// The family with its `b` multiplier scaled by `factor`; the relation is left alone.
pub fn perturbed(fam: &Family, factor: f64) -> Family {
    let s = fam.shifts();
    fam.with_shifts(ShiftPair::new(s.a(), s.b() * factor).unwrap())
}

/// One-sample KS distance of `xs` against the continuous CDF `cdf`.
pub fn ks_one_sample(xs: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_unstable_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}
