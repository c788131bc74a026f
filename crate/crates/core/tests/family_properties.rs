mod common;

use common::{family, grid, shifts};
use osshift::verifier::integrated_identity_residual;
use osshift::{AdjacentShiftFamily, Family, PowerMaxFamily, QuantileModel, RandomStream, RankSpec, TwoSpacingFamily};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn quantile_is_strictly_increasing(fam in family(), u in 1e-4f64..0.999, gap in 1e-5f64..0.5) {
        let v = (u + gap).min(0.9999);
        prop_assume!(v > u);
        prop_assert!(fam.quantile(u).unwrap() < fam.quantile(v).unwrap());
    }

    #[test]
    fn derivative_matches_central_difference(fam in family()) {
        let h = 1e-6;
        for u in grid(1e-3, 1.0 - 1e-3, 1000) {
            let fd = (fam.quantile(u + h).unwrap() - fam.quantile(u - h).unwrap()) / (2.0 * h);
            let an = fam.quantile_deriv(u).unwrap();
            prop_assert!(an > 0.0);
            // roundoff of the difference quotient matters only where Q' nearly vanishes
            let q = fam.quantile(u).unwrap().abs().max(1.0);
            let bound = 1e-6 * an + 4.0 * f64::EPSILON * q / h;
            if fam.shifts().a() > 0.0 && fam.shifts().b() > 0.0 {
                prop_assert!((fd - an).abs() <= 1e-6 * an, "u={} analytic={} fd={}", u, an, fd);
            } else {
                prop_assert!((fd - an).abs() <= bound, "u={} analytic={} fd={}", u, an, fd);
            }
        }
    }

    #[test]
    fn cdf_inverts_quantile(fam in family()) {
        let (a, b) = (fam.shifts().a(), fam.shifts().b());
        prop_assume!(a > 0.0 && b > 0.0);
        for u in grid(1e-6, 1.0 - 1e-6, 200) {
            let back = fam.cdf(fam.quantile(u).unwrap());
            prop_assert!((back - u).abs() <= 1e-10, "u={} back={}", u, back);
        }
    }

    // With a or b zero some families have Q' → 0 at an endpoint, where one ulp in t spans
    // more than 1e-10 in u. The inversion still has to be as good as the floats allow.
    #[test]
    fn cdf_inverts_quantile_up_to_conditioning(fam in family()) {
        for u in grid(1e-6, 1.0 - 1e-6, 200) {
            let t = fam.quantile(u).unwrap();
            let ulp = f64::EPSILON * t.abs().max(f64::MIN_POSITIVE);
            let bound = 1e-10f64.max(8.0 * ulp / fam.quantile_deriv(u).unwrap());
            let back = fam.cdf(t);
            prop_assert!((back - u).abs() <= bound, "u={} back={} bound={}", u, back, bound);
        }
    }

    #[test]
    fn location_equivariance(fam in family(), delta in -5.0f64..5.0, seed in any::<u64>()) {
        let moved = fam.with_logc(fam.logc() + delta);
        for u in grid(0.01, 0.99, 25) {
            let q0 = fam.quantile(u).unwrap();
            let q1 = moved.quantile(u).unwrap();
            prop_assert!((q1 - q0 - delta).abs() <= 1e-12 * (1.0 + q0.abs() + delta.abs()));
            let p0 = fam.pdf(q0);
            let p1 = moved.pdf(q0 + delta);
            prop_assert!((p1 - p0).abs() <= 1e-8 * p0.max(1e-300), "pdf {} vs {}", p0, p1);
        }
        let s0 = fam.support();
        let s1 = moved.support();
        prop_assert!(s1.lower == s0.lower + delta || (s1.lower - s0.lower - delta).abs() < 1e-12);
        prop_assert!(s1.upper == s0.upper + delta || (s1.upper - s0.upper - delta).abs() < 1e-12);

        let rank = RankSpec::new(1, 1).unwrap();
        let x0 = osshift::orderstats::sample_order_stat(&fam, rank, 50, &mut RandomStream::new(seed, 0)).unwrap();
        let x1 = osshift::orderstats::sample_order_stat(&moved, rank, 50, &mut RandomStream::new(seed, 0)).unwrap();
        for (a, b) in x0.iter().zip(&x1) {
            prop_assert!((b - a - delta).abs() <= 1e-12 * (1.0 + a.abs() + delta.abs()));
        }
    }

    #[test]
    fn corollary_reduces_to_max_relation_form(n in 2u32..=30, s in shifts(), logc in -3.0f64..3.0, u in 1e-6f64..0.999_999) {
        let fam = PowerMaxFamily::corollary(n, s, logc).unwrap();
        let (a, b) = (s.a(), s.b());
        let d = (b + f64::from(n) * a) / f64::from(n - 1);
        prop_assert_eq!(fam.d(), d);
        let direct = logc + b * u.ln() - d * (-u.powf(f64::from(n - 1))).ln_1p();
        let q = fam.quantile(u).unwrap();
        prop_assert!((q - direct).abs() <= 1e-14 * (1.0 + q.abs()));
    }

    #[test]
    fn beta_substitution_identity(
        alpha in 0.2f64..4.0, beta in 0.2f64..4.0, s in shifts(), logc in -3.0f64..3.0, u in 1e-6f64..0.999_999
    ) {
        let fam = PowerMaxFamily::new(alpha, beta, s, logc).unwrap();
        let (a, b) = (s.a(), s.b());
        // β = 1 quantile with exponents bα/β and (a+b)α/β + a
        let h_inv = |v: f64| logc + b * alpha / beta * v.ln() - ((a + b) * alpha / beta + a) * (-v).ln_1p();
        let q = fam.quantile(u).unwrap();
        prop_assert!((q - h_inv(u.powf(beta))).abs() <= 1e-12 * (1.0 + q.abs()), "{} vs {}", q, h_inv(u.powf(beta)));
    }

    #[test]
    fn two_spacing_derivative_forms_agree(n in 3u32..=14, s in shifts(), u in 1e-4f64..0.9999, pick in 0u32..100) {
        let k = 1 + pick % (n - 2);
        let fam = TwoSpacingFamily::new(n, k, s, 0.0).unwrap();
        let r = fam.quantile_deriv_rational(u);
        let p = fam.quantile_deriv_partial_fractions(u);
        prop_assert!((r - p).abs() <= 1e-12 * r.max(1.0), "n={} k={} {} vs {}", n, k, r, p);
    }

    #[test]
    fn adjacent_integrated_identity(n in 2u32..=10, s in shifts(), logc in -3.0f64..3.0, pick in 0u32..100) {
        let k = 1 + pick % (n - 1);
        let fam = AdjacentShiftFamily::new(n, k, s, logc).unwrap();
        for u in grid(1e-3, 1.0 - 1e-3, 200) {
            let t = fam.quantile(u).unwrap();
            let r = integrated_identity_residual(&fam, t);
            prop_assert!(r.abs() <= 1e-10, "t={} residual={}", t, r);
        }
    }
}

#[test]
fn family_serde_round_trip() {
    let fam: Family = TwoSpacingFamily::new(5, 2, osshift::ShiftPair::new(0.5, 2.0).unwrap(), 0.3)
        .unwrap()
        .into();
    let text = serde_json::to_string(&fam).unwrap();
    let back: Family = serde_json::from_str(&text).unwrap();
    assert_eq!(fam, back);
}
