use serde::{Deserialize, Serialize};

use super::{check_logc, QuantileModel, ShiftPair, Structure, Support};
use crate::error::{Error, Result};

/// Which constant multiplies `u` inside the logarithmic correction term
/// `W(u) = d·log(k+1 + m·u)/m` when `n ≠ 2k+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum WConstant {
    /// `m = n−2k−1`, the antiderivative of the quantile derivative.
    #[default]
    ProofConsistent,
    /// `m = n−2k+1`, applied in the logarithmic branch for every `(n, k)`.
    /// Kept only as a negative control: with this constant the family does
    /// not satisfy the characterizing relation.
    Printed,
}

/// Family characterized by `X_{k,n} + a·ξ₁ =d X_{k+2,n} − b·ξ₂`:
///
/// `Q(u) = logc + b·k·log(u) − a·(n−k−1)·log(1−u) − W(u)`
///
/// where `W(u) = (a+b)·k·u` for `n = 2k+1` and `d·log(k+1+m·u)/m` otherwise,
/// with `d = b·k·(n−k) + a·(n−k−1)·(k+1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoSpacingFamily {
    pub(crate) n: u32,
    pub(crate) k: u32,
    pub(crate) shifts: ShiftPair,
    pub(crate) logc: f64,
    #[serde(default)]
    pub(crate) w_constant: WConstant,
}

impl TwoSpacingFamily {
    pub fn new(n: u32, k: u32, shifts: ShiftPair, logc: f64) -> Result<Self> {
        Self::with_w_constant(n, k, shifts, logc, WConstant::ProofConsistent)
    }

    pub fn with_w_constant(
        n: u32,
        k: u32,
        shifts: ShiftPair,
        logc: f64,
        w_constant: WConstant,
    ) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("n must be at least 3, got {n}")));
        }
        if k < 1 || k > n - 2 {
            return Err(Error::InvalidParameter(format!(
                "k must satisfy 1 ≤ k ≤ n−2 = {}, got {k}",
                n - 2
            )));
        }
        check_logc(logc)?;
        let fam = TwoSpacingFamily {
            n,
            k,
            shifts,
            logc,
            w_constant,
        };
        if !fam.is_linear_branch() && fam.log_slope() == 0.0 {
            return Err(Error::Domain(format!(
                "W constant n−2k+1 vanishes for n={n}, k={k}"
            )));
        }
        Ok(fam)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn shifts(&self) -> ShiftPair {
        self.shifts
    }

    pub fn logc(&self) -> f64 {
        self.logc
    }

    pub fn w_constant(&self) -> WConstant {
        self.w_constant
    }

    /// `d = b·k·(n−k) + a·(n−k−1)·(k+1)`.
    pub fn d(&self) -> f64 {
        let (n, k) = (f64::from(self.n), f64::from(self.k));
        self.shifts.b() * k * (n - k) + self.shifts.a() * (n - k - 1.0) * (k + 1.0)
    }

    /// `n = 2k+1` with the proof-consistent constant: the order statistics
    /// straddle the median and `W` is linear, the `m → 0` limit of the
    /// logarithmic branch. The printed constant never takes this branch.
    pub fn is_linear_branch(&self) -> bool {
        self.w_constant == WConstant::ProofConsistent && self.n == 2 * self.k + 1
    }

    /// Slope `m` of the logarithm's argument `k+1 + m·u`.
    pub fn log_slope(&self) -> f64 {
        let (n, k) = (i64::from(self.n), i64::from(self.k));
        match self.w_constant {
            WConstant::ProofConsistent => (n - 2 * k - 1) as f64,
            WConstant::Printed => (n - 2 * k + 1) as f64,
        }
    }

    fn w(&self, u: f64) -> f64 {
        let k = f64::from(self.k);
        if self.is_linear_branch() {
            (self.shifts.a() + self.shifts.b()) * k * u
        } else {
            let m = self.log_slope();
            self.d() * (k + 1.0 + m * u).ln() / m
        }
    }

    fn lower_exponent(&self) -> f64 {
        self.shifts.b() * f64::from(self.k)
    }

    fn upper_exponent(&self) -> f64 {
        self.shifts.a() * f64::from(self.n - self.k - 1)
    }

    /// `Q'(u)` as the single rational function
    /// `[a(n−k−1)(n−k)u² + bk(k+1)(1−u)²] / [u(1−u)(k+1+(n−2k−1)u)]`.
    ///
    /// Always uses `n−2k−1`, regardless of the configured [`WConstant`].
    pub fn quantile_deriv_rational(&self, u: f64) -> f64 {
        let (n, k) = (f64::from(self.n), f64::from(self.k));
        let (a, b) = (self.shifts.a(), self.shifts.b());
        let num = a * (n - k - 1.0) * (n - k) * u * u + b * k * (k + 1.0) * (1.0 - u) * (1.0 - u);
        let den = u * (1.0 - u) * (k + 1.0 + (n - 2.0 * k - 1.0) * u);
        num / den
    }

    /// `Q'(u)` in partial fractions: `a(n−k−1)/(1−u) + bk/u − d/(k+1+m·u)`
    /// when `n ≠ 2k+1`, and `ak/(1−u) + bk/u − (a+b)k` otherwise, with `m`
    /// taken from the configured [`WConstant`].
    pub fn quantile_deriv_partial_fractions(&self, u: f64) -> f64 {
        let k = f64::from(self.k);
        let head = self.upper_exponent() / (1.0 - u) + self.lower_exponent() / u;
        if self.is_linear_branch() {
            head - (self.shifts.a() + self.shifts.b()) * k
        } else {
            head - self.d() / (k + 1.0 + self.log_slope() * u)
        }
    }
}

impl QuantileModel for TwoSpacingFamily {
    fn quantile_unchecked(&self, u: f64) -> f64 {
        self.logc + self.lower_exponent() * u.ln() - self.upper_exponent() * (-u).ln_1p() - self.w(u)
    }

    fn quantile_deriv_unchecked(&self, u: f64) -> f64 {
        match self.w_constant {
            WConstant::ProofConsistent => self.quantile_deriv_rational(u),
            WConstant::Printed => self.quantile_deriv_partial_fractions(u),
        }
    }

    fn support(&self) -> Support {
        Support {
            lower: if self.shifts.b() == 0.0 {
                self.logc - self.w(0.0)
            } else {
                f64::NEG_INFINITY
            },
            upper: if self.shifts.a() == 0.0 {
                self.logc - self.w(1.0)
            } else {
                f64::INFINITY
            },
        }
    }

    fn structure(&self) -> Option<Structure> {
        Some(Structure::TwoSpacing {
            n: self.n,
            k: self.k,
        })
    }
}
