//! Deterministic verification of the characterizations.
//!
//! The central check is the first-order condition `b·G' + a·H' = G − H`
//! relating the CDFs `G`, `H` of the two unshifted sides, which holds if and
//! only if `Z₁ + a·ξ₁ =d Z₂ − b·ξ₂`. Everything is evaluated in probability
//! scale `u = F(t)`: `G(t) = g(u)` and `G'(t) = g'(u)/Q'(u)`, so no numeric
//! differentiation enters a pass/fail decision.

mod convolution;
mod quadrature;
mod remarks;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{
    AdjacentShiftFamily, Family, PowerMaxFamily, QuantileModel, ShiftPair, TwoSpacingFamily, WConstant,
};
use crate::montecarlo::{RelationKind, RelationSpec};

pub use convolution::{convolution_check, convolution_sides, DEFAULT_CONVOLUTION_TOLERANCE, DEFAULT_QUAD_TOLERANCE};
pub use quadrature::adaptive_simpson;
pub use remarks::{remark_closed_form, remark_suite, Remark, RemarkCase, REMARK_TOLERANCE};

pub const DEFAULT_ODE_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_EPSILON: f64 = 1e-6;
pub const DEFAULT_GRID_SIZE: usize = 1000;

/// Worst absolute residual of an identity over a set of evaluation points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub max_abs_residual: f64,
    /// Probability level at which the maximum was attained.
    pub argmax_u: f64,
    pub grid_size: usize,
    pub epsilon: f64,
    pub tolerance: f64,
    /// `max_abs_residual ≤ tolerance`
    pub pass: bool,
}

impl ResidualReport {
    pub(crate) fn from_residuals<I>(points: I, grid_size: usize, epsilon: f64, tolerance: f64) -> Self
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut worst = 0.0_f64;
        let mut argmax = f64::NAN;
        for (u, r) in points {
            // NaN counts as an unbounded residual
            let r = if r.is_nan() { f64::INFINITY } else { r.abs() };
            if r > worst || argmax.is_nan() {
                worst = r;
                argmax = u;
            }
        }
        ResidualReport {
            max_abs_residual: worst,
            argmax_u: argmax,
            grid_size,
            epsilon,
            tolerance,
            pass: worst <= tolerance,
        }
    }

    /// The same measurement judged against another tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.pass = self.max_abs_residual <= tolerance;
        self
    }
}

/// Residual of `b·G'(t) + a·H'(t) − (G(t) − H(t))` for the relation's shifts,
/// at `grid_size` equally spaced `u` in `[ε, 1−ε]`.
pub fn ode_residual<M: QuantileModel + ?Sized>(
    rel: &RelationSpec,
    model: &M,
    grid_size: usize,
    epsilon: f64,
) -> Result<ResidualReport> {
    if grid_size < 2 {
        return Err(Error::Domain(format!("grid size must be at least 2, got {grid_size}")));
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::Domain(format!("epsilon must be in (0, 0.5), got {epsilon}")));
    }
    rel.check_model(model)?;
    let (a, b) = (rel.shifts().a(), rel.shifts().b());
    let step = (1.0 - 2.0 * epsilon) / (grid_size - 1) as f64;
    let points = (0..grid_size).map(|i| {
        let u = if i == grid_size - 1 {
            1.0 - epsilon
        } else {
            epsilon + i as f64 * step
        };
        let dq = model.quantile_deriv_unchecked(u);
        let g_prime = rel.left_cdf_deriv(u) / dq;
        let h_prime = rel.right_cdf_deriv(u) / dq;
        let r = b * g_prime + a * h_prime - (rel.left_cdf(u) - rel.right_cdf(u));
        (u, r)
    });
    Ok(ResidualReport::from_residuals(points, grid_size, epsilon, DEFAULT_ODE_TOLERANCE))
}

/// ODE residuals of the two-spacing family built with `W` constant
/// `n−2k−1` (first) and `n−2k+1` (second), under the matching relation.
/// Only the first is expected to pass.
///
/// For `n = 2k+1` the first variant is the linear branch and the second the
/// logarithmic branch with slope 2. Fails with a domain error when
/// `n−2k+1 = 0`.
pub fn typo_probe(
    n: u32,
    k: u32,
    shifts: ShiftPair,
    grid_size: usize,
) -> Result<(ResidualReport, ResidualReport)> {
    let rel = RelationSpec::new(RelationKind::TwoSpacing { n, k }, shifts)?;
    let minus = TwoSpacingFamily::with_w_constant(n, k, shifts, 0.0, WConstant::ProofConsistent)?;
    let plus = TwoSpacingFamily::with_w_constant(n, k, shifts, 0.0, WConstant::Printed)?;
    Ok((
        ode_residual(&rel, &minus, grid_size, DEFAULT_EPSILON)?,
        ode_residual(&rel, &plus, grid_size, DEFAULT_EPSILON)?,
    ))
}

/// Shift pairs exercised by the parameter sweep.
pub const SWEEP_SHIFTS: [(f64, f64); 4] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (0.5, 2.0)];
/// `α` and `β` values exercised by the parameter sweep.
pub const SWEEP_POWERS: [f64; 4] = [0.5, 1.0, 2.0, 3.0];
/// Largest sample size in the parameter sweep.
pub const SWEEP_MAX_N: u32 = 8;

/// Every (family, matching relation) pair of the parameter sweep: all valid
/// `k` for `n ≤ 8` in the two order-statistic families, every `α, β` pair in
/// the power family, and the max relation for `2 ≤ n ≤ 8`, each under every
/// shift pair in [`SWEEP_SHIFTS`].
pub fn sweep_cases() -> Vec<(Family, RelationSpec)> {
    let mut out = Vec::new();
    for (a, b) in SWEEP_SHIFTS {
        let s = ShiftPair::new(a, b).expect("sweep shifts are valid");
        for n in 2..=SWEEP_MAX_N {
            for k in 1..n {
                let f: Family = AdjacentShiftFamily::new(n, k, s, 0.0).expect("valid").into();
                out.push((f.clone(), RelationSpec::matching(&f)));
            }
        }
        for n in 3..=SWEEP_MAX_N {
            for k in 1..=n - 2 {
                let f: Family = TwoSpacingFamily::new(n, k, s, 0.0).expect("valid").into();
                out.push((f.clone(), RelationSpec::matching(&f)));
            }
        }
        for alpha in SWEEP_POWERS {
            for beta in SWEEP_POWERS {
                let f: Family = PowerMaxFamily::new(alpha, beta, s, 0.0).expect("valid").into();
                out.push((f.clone(), RelationSpec::matching(&f)));
            }
        }
        for n in 2..=SWEEP_MAX_N {
            let f: Family = PowerMaxFamily::corollary(n, s, 0.0).expect("valid").into();
            let rel = RelationSpec::new(RelationKind::CorollaryMax { n }, s).expect("valid");
            out.push((f, rel));
        }
    }
    out
}

/// `log{F^{bk}(t)·(1−F(t))^{−a(n−k)}} − (t − logc)`, which vanishes
/// identically for the adjacent family.
pub fn integrated_identity_residual(fam: &AdjacentShiftFamily, t: f64) -> f64 {
    let f = fam.cdf(t);
    fam.lower_exponent() * f.ln() - fam.upper_exponent() * (-f).ln_1p() - (t - fam.logc())
}
