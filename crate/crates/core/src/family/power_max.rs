use serde::{Deserialize, Serialize};

use super::{check_logc, QuantileModel, ShiftPair, Structure, Support};
use crate::error::{Error, Result};

/// Family characterized in the `F^α` scheme by
/// `Y₁ + a·ξ₁ =d max{Y₁, Y₂} − b·ξ₂`, where `Y₁ ~ F^α` and `Y₂ ~ F^β`:
///
/// `Q(u) = logc + b·α·log(u) − d·log(1−u^β)`, `d = [a(α+β) + b·α]/β`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerMaxFamily {
    pub(crate) alpha: f64,
    pub(crate) beta: f64,
    pub(crate) shifts: ShiftPair,
    pub(crate) logc: f64,
}

impl PowerMaxFamily {
    pub fn new(alpha: f64, beta: f64, shifts: ShiftPair, logc: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
        }
        check_logc(logc)?;
        Ok(PowerMaxFamily {
            alpha,
            beta,
            shifts,
            logc,
        })
    }

    /// The `α = 1`, `β = n−1` member, characterized by
    /// `X + a·ξ₁ =d X_{n,n} − b·ξ₂`.
    pub fn corollary(n: u32, shifts: ShiftPair, logc: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("n must be at least 2, got {n}")));
        }
        Self::new(1.0, f64::from(n - 1), shifts, logc)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn shifts(&self) -> ShiftPair {
        self.shifts
    }

    pub fn logc(&self) -> f64 {
        self.logc
    }

    /// `d = [a(α+β) + b·α]/β`.
    pub fn d(&self) -> f64 {
        (self.shifts.a() * (self.alpha + self.beta) + self.shifts.b() * self.alpha) / self.beta
    }
}

impl QuantileModel for PowerMaxFamily {
    fn quantile_unchecked(&self, u: f64) -> f64 {
        self.logc + self.shifts.b() * self.alpha * u.ln() - self.d() * (-u.powf(self.beta)).ln_1p()
    }

    fn quantile_deriv_unchecked(&self, u: f64) -> f64 {
        let ub = u.powf(self.beta);
        self.shifts.b() * self.alpha / u + self.d() * self.beta * ub / u / (1.0 - ub)
    }

    fn support(&self) -> Support {
        // d > 0 always, so the upper end is unbounded.
        Support {
            lower: if self.shifts.b() == 0.0 {
                self.logc
            } else {
                f64::NEG_INFINITY
            },
            upper: f64::INFINITY,
        }
    }

    fn structure(&self) -> Option<Structure> {
        Some(Structure::PowerMax {
            alpha: self.alpha,
            beta: self.beta,
        })
    }
}
