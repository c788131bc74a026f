use serde::{Deserialize, Serialize};

use super::{check_logc, QuantileModel, ShiftPair, Structure, Support};
use crate::error::{Error, Result};

/// Family characterized by `X_{k,n} + a·ξ₁ =d X_{k+1,n} − b·ξ₂`:
///
/// `Q(u) = logc + b·k·log(u) − a·(n−k)·log(1−u)`.
///
/// `b = 0` gives a shifted unit exponential when `a·(n−k) = 1`, `a = 0`
/// its reflection, and `b·k = a·(n−k)` a logistic law with scale `b·k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjacentShiftFamily {
    pub(crate) n: u32,
    pub(crate) k: u32,
    pub(crate) shifts: ShiftPair,
    pub(crate) logc: f64,
}

impl AdjacentShiftFamily {
    pub fn new(n: u32, k: u32, shifts: ShiftPair, logc: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
        }
        if k < 1 || k > n - 1 {
            return Err(Error::InvalidParameter(format!(
                "k must satisfy 1 ≤ k ≤ n−1 = {}, got {k}",
                n - 1
            )));
        }
        check_logc(logc)?;
        Ok(AdjacentShiftFamily { n, k, shifts, logc })
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

    /// Exponent of `u` inside the logarithm, `b·k`.
    pub fn lower_exponent(&self) -> f64 {
        self.shifts.b() * f64::from(self.k)
    }

    /// Exponent of `(1−u)^{-1}` inside the logarithm, `a·(n−k)`.
    pub fn upper_exponent(&self) -> f64 {
        self.shifts.a() * f64::from(self.n - self.k)
    }
}

impl QuantileModel for AdjacentShiftFamily {
    fn quantile_unchecked(&self, u: f64) -> f64 {
        self.logc + self.lower_exponent() * u.ln() - self.upper_exponent() * (-u).ln_1p()
    }

    fn quantile_deriv_unchecked(&self, u: f64) -> f64 {
        self.lower_exponent() / u + self.upper_exponent() / (1.0 - u)
    }

    fn support(&self) -> Support {
        Support {
            lower: if self.shifts.b() == 0.0 {
                self.logc
            } else {
                f64::NEG_INFINITY
            },
            upper: if self.shifts.a() == 0.0 {
                self.logc
            } else {
                f64::INFINITY
            },
        }
    }

    fn structure(&self) -> Option<Structure> {
        Some(Structure::Adjacent {
            n: self.n,
            k: self.k,
        })
    }
}
