use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ALPHA: f64 = 0.001;

/// Outcome of a two-sample Kolmogorov-Smirnov test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KsReport {
    pub statistic: f64,
    pub threshold: f64,
    pub alpha: f64,
    pub n_left: usize,
    pub n_right: usize,
    /// `statistic < threshold`
    pub pass: bool,
    pub seed: Option<u64>,
}

impl KsReport {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Asymptotic coefficient `c(α) = sqrt(−ln(α/2)/2)`.
pub fn ks_critical_coefficient(alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt()
}

/// Supremum distance between the empirical CDFs of the two samples.
pub fn ks_statistic(left: &[f64], right: &[f64]) -> Result<f64> {
    if left.is_empty() {
        return Err(Error::EmptySample("left"));
    }
    if right.is_empty() {
        return Err(Error::EmptySample("right"));
    }
    let mut xs = left.to_vec();
    let mut ys = right.to_vec();
    xs.sort_unstable_by(f64::total_cmp);
    ys.sort_unstable_by(f64::total_cmp);
    let (m, n) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0_f64;
    while i < xs.len() && j < ys.len() {
        let x = if xs[i].total_cmp(&ys[j]).is_le() { xs[i] } else { ys[j] };
        // step past every copy of x on both sides before comparing
        while i < xs.len() && xs[i].total_cmp(&x).is_le() {
            i += 1;
        }
        while j < ys.len() && ys[j].total_cmp(&x).is_le() {
            j += 1;
        }
        d = d.max((i as f64 / m - j as f64 / n).abs());
    }
    Ok(d)
}

/// Two-sample KS test at level `alpha` with the asymptotic critical value
/// `c(α)·sqrt((m+n)/(m·n))`.
pub fn ks_two_sample(left: &[f64], right: &[f64], alpha: f64) -> Result<KsReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha must be in (0,1), got {alpha}")));
    }
    let statistic = ks_statistic(left, right)?;
    let (m, n) = (left.len() as f64, right.len() as f64);
    let threshold = ks_critical_coefficient(alpha) * ((m + n) / (m * n)).sqrt();
    Ok(KsReport {
        statistic,
        threshold,
        alpha,
        n_left: left.len(),
        n_right: right.len(),
        pass: statistic < threshold,
        seed: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute force: evaluate both ECDFs at every pooled point.
    fn brute_force(left: &[f64], right: &[f64]) -> f64 {
        let ecdf = |s: &[f64], t: f64| s.iter().filter(|&&v| v <= t).count() as f64 / s.len() as f64;
        left.iter()
            .chain(right)
            .map(|&t| (ecdf(left, t) - ecdf(right, t)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn identical_samples() {
        let xs = [0.3, 1.0, -2.0, 5.5];
        let r = ks_two_sample(&xs, &xs, DEFAULT_ALPHA).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!(r.pass);
    }

    #[test]
    fn disjoint_samples() {
        let left: Vec<f64> = (0..100).map(f64::from).collect();
        let right: Vec<f64> = (200..300).map(f64::from).collect();
        let r = ks_two_sample(&left, &right, DEFAULT_ALPHA).unwrap();
        assert_eq!(r.statistic, 1.0);
        assert!(!r.pass);
    }

    #[test]
    fn hand_enumerated() {
        assert_eq!(ks_statistic(&[1.0, 2.0], &[1.5, 2.5]).unwrap(), 0.5);
    }

    #[test]
    fn threshold_formula() {
        let c = ks_critical_coefficient(0.001);
        assert!((c - 1.949_5).abs() < 1e-4, "c = {c}");
        let r = ks_two_sample(&vec![0.0; 100_000], &vec![0.0; 100_000], 0.001).unwrap();
        assert!((r.threshold - c * (2.0e-5_f64).sqrt()).abs() < 1e-15);
        assert!((r.threshold - 0.00872).abs() < 1e-5);
    }

    #[test]
    fn errors() {
        assert_eq!(ks_statistic(&[], &[1.0]), Err(Error::EmptySample("left")));
        assert_eq!(ks_statistic(&[1.0], &[]), Err(Error::EmptySample("right")));
        assert!(ks_two_sample(&[1.0], &[1.0], 0.0).is_err());
        assert!(ks_two_sample(&[1.0], &[1.0], 1.0).is_err());
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            left in prop::collection::vec(-5i32..5, 1..40),
            right in prop::collection::vec(-5i32..5, 1..40),
        ) {
            // small integer range forces many ties
            let l: Vec<f64> = left.iter().map(|&v| f64::from(v) * 0.5).collect();
            let r: Vec<f64> = right.iter().map(|&v| f64::from(v) * 0.5).collect();
            let d = ks_statistic(&l, &r).unwrap();
            prop_assert!((d - brute_force(&l, &r)).abs() < 1e-15);
            prop_assert!((d - ks_statistic(&r, &l).unwrap()).abs() < 1e-15);
        }
    }
}
