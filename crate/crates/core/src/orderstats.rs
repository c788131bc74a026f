//! Order-statistic distribution functions in probability scale and
//! sampling of order statistics by sorting uniforms.
//!
//! With `u = F(t)`, the CDF of `X_{i,n}` is the binomial tail
//! `Σ_{j=i}^{n} C(n,j) u^j (1−u)^{n−j}` and its `u`-derivative is
//! `n·C(n−1,i−1)·u^{i−1}(1−u)^{n−i}`.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{check_open_unit, Error, Result};
use crate::family::QuantileModel;
use crate::montecarlo::{draw_cap, RandomStream};

/// Above this sample size binomial coefficients go through log-gamma.
const EXACT_BINOMIAL_MAX_N: u32 = 60;

/// Rank `i` of an order statistic in a sample of size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankSpec {
    i: u32,
    n: u32,
}

impl RankSpec {
    pub fn new(i: u32, n: u32) -> Result<Self> {
        if i < 1 || i > n {
            return Err(Error::InvalidParameter(format!(
                "rank must satisfy 1 ≤ i ≤ n, got i={i}, n={n}"
            )));
        }
        Ok(RankSpec { i, n })
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    debug_assert!(k <= n);
    if n <= EXACT_BINOMIAL_MAX_N {
        let k = k.min(n - k);
        let mut c: u128 = 1;
        for j in 0..k {
            c = c * u128::from(n - j) / u128::from(j + 1);
        }
        c as f64
    } else {
        ln_binomial(n, k).exp()
    }
}

fn ln_binomial(n: u32, k: u32) -> f64 {
    let (n, k) = (f64::from(n), f64::from(k));
    ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)
}

/// Binomial term `C(n,j) u^j (1−u)^{n−j}`.
pub fn binomial_term(u: f64, j: u32, n: u32) -> f64 {
    if n <= EXACT_BINOMIAL_MAX_N {
        binomial(n, j) * u.powi(j as i32) * (1.0 - u).powi((n - j) as i32)
    } else if u == 0.0 {
        if j == 0 { 1.0 } else { 0.0 }
    } else if u == 1.0 {
        if j == n { 1.0 } else { 0.0 }
    } else {
        (ln_binomial(n, j) + f64::from(j) * u.ln() + f64::from(n - j) * (-u).ln_1p()).exp()
    }
}

pub(crate) fn os_cdf_unchecked(u: f64, rank: RankSpec) -> f64 {
    (rank.i..=rank.n).map(|j| binomial_term(u, j, rank.n)).sum()
}

pub(crate) fn os_cdf_deriv_unchecked(u: f64, rank: RankSpec) -> f64 {
    let (i, n) = (rank.i, rank.n);
    f64::from(n) * binomial_term(u, i - 1, n - 1)
}

/// `P(X_{i,n} ≤ t)` as a function of `u = F(t)`.
pub fn os_cdf(u: f64, rank: RankSpec) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!("u = {u} is not in [0,1]")));
    }
    Ok(os_cdf_unchecked(u, rank))
}

/// `d/du` of [`os_cdf`].
pub fn os_cdf_deriv_u(u: f64, rank: RankSpec) -> Result<f64> {
    check_open_unit(u)?;
    Ok(os_cdf_deriv_unchecked(u, rank))
}

/// `u^γ`, the CDF of a variable distributed as `F^γ` in probability scale.
/// The maximum of independent `F^α` and `F^β` variables is `F^{α+β}`.
pub fn power_cdf(u: f64, gamma: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!("u = {u} is not in [0,1]")));
    }
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::Domain(format!("gamma must be positive, got {gamma}")));
    }
    Ok(u.powf(gamma))
}

pub(crate) fn check_draws(count: usize, per_draw: u64) -> Result<()> {
    let requested = count as u128 * u128::from(per_draw);
    let cap = draw_cap();
    if requested > u128::from(cap) {
        return Err(Error::Resource { requested, cap });
    }
    Ok(())
}

pub(crate) fn fill_uniform_order_stat(
    rank: RankSpec,
    count: usize,
    stream: &mut RandomStream,
    out: &mut Vec<f64>,
) {
    let n = rank.n as usize;
    let idx = rank.i as usize - 1;
    let mut buf = vec![0.0_f64; n];
    out.reserve(count);
    for _ in 0..count {
        for slot in buf.iter_mut() {
            *slot = stream.next_open01();
        }
        buf.sort_unstable_by(f64::total_cmp);
        out.push(buf[idx]);
    }
}

/// `count` independent draws of the `i`-th smallest of `n` uniforms on
/// `(0,1)`, read sequentially from `stream`.
pub fn sample_uniform_order_stat(
    rank: RankSpec,
    count: usize,
    stream: &mut RandomStream,
) -> Result<Vec<f64>> {
    check_draws(count, u64::from(rank.n))?;
    let mut out = Vec::new();
    fill_uniform_order_stat(rank, count, stream, &mut out);
    Ok(out)
}

/// Draws of `X_{i,n}` by inverse transform of uniform order statistics.
pub fn sample_order_stat<M: QuantileModel + ?Sized>(
    model: &M,
    rank: RankSpec,
    count: usize,
    stream: &mut RandomStream,
) -> Result<Vec<f64>> {
    let mut u = sample_uniform_order_stat(rank, count, stream)?;
    for v in u.iter_mut() {
        *v = model.quantile_unchecked(*v);
    }
    Ok(u)
}
