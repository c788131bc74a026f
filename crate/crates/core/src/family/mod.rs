//! The three characterized families, each given by an explicit quantile
//! function `Q` on `(0,1)` with a closed-form derivative.
//!
//! All families are parametrized by `logc`, the logarithm of the positive
//! multiplicative constant `c` in `Q(u) = log{c · ...}`; `logc` acts as a
//! location parameter.

mod adjacent;
mod power_max;
mod two_spacing;

use serde::{Deserialize, Serialize};

use crate::error::{check_open_unit, Error, Result};

pub use adjacent::AdjacentShiftFamily;
pub use power_max::PowerMaxFamily;
pub use two_spacing::{TwoSpacingFamily, WConstant};

/// Guaranteed absolute accuracy in `u` of CDF inversion. Bisection keeps
/// going past it until the bracket can no longer be split.
pub const CDF_TOLERANCE: f64 = 1e-12;
/// Iteration cap for CDF inversion.
pub const CDF_MAX_ITER: usize = 200;

/// Nonnegative multipliers `(a, b)` of the exponential shifts: `a` scales the
/// shift added to the lower side, `b` the shift subtracted from the upper side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftPair {
    a: f64,
    b: f64,
}

impl ShiftPair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a < 0.0 || b < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "shift multipliers must be finite and nonnegative (a≥0, b≥0), got a={a}, b={b}"
            )));
        }
        if a == 0.0 && b == 0.0 {
            return Err(Error::InvalidParameter(
                "shift multipliers must satisfy (a,b)≠(0,0), got a=0, b=0".to_string(),
            ));
        }
        Ok(ShiftPair { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Closure of the range of `Q`: `lower = Q(0+)`, `upper = Q(1-)`, either of
/// which may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Support {
    pub lower: f64,
    pub upper: f64,
}

impl Support {
    pub fn is_interior(&self, t: f64) -> bool {
        t > self.lower && t < self.upper
    }

    pub fn shifted(&self, delta: f64) -> Support {
        Support {
            lower: self.lower + delta,
            upper: self.upper + delta,
        }
    }
}

/// Structural parameters of a family, used to match a family against the
/// relation that characterizes it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Structure {
    Adjacent { n: u32, k: u32 },
    TwoSpacing { n: u32, k: u32 },
    PowerMax { alpha: f64, beta: f64 },
}

/// A continuous distribution described through a strictly increasing
/// quantile function.
pub trait QuantileModel: Send + Sync {
    /// `Q(u)` without checking that `u` lies in `(0,1)`.
    fn quantile_unchecked(&self, u: f64) -> f64;

    /// `Q'(u)` without checking that `u` lies in `(0,1)`.
    fn quantile_deriv_unchecked(&self, u: f64) -> f64;

    fn support(&self) -> Support;

    /// Structural parameters when the model is one of the characterized
    /// families; `None` for arbitrary models.
    fn structure(&self) -> Option<Structure> {
        None
    }

    fn quantile(&self, u: f64) -> Result<f64> {
        check_open_unit(u)?;
        Ok(self.quantile_unchecked(u))
    }

    fn quantile_deriv(&self, u: f64) -> Result<f64> {
        check_open_unit(u)?;
        Ok(self.quantile_deriv_unchecked(u))
    }

    /// `F(t)`, obtained by bisection of `Q(u) = t` over `u`.
    fn cdf(&self, t: f64) -> f64 {
        invert_quantile(|u| self.quantile_unchecked(u), self.support(), t)
    }

    /// `F'(t) = 1 / Q'(F(t))` inside the support, zero outside.
    fn pdf(&self, t: f64) -> f64 {
        if !self.support().is_interior(t) {
            return 0.0;
        }
        let u = self.cdf(t);
        if u <= 0.0 || u >= 1.0 {
            return 0.0;
        }
        1.0 / self.quantile_deriv_unchecked(u)
    }
}

/// Solves `quantile(u) = t` for `u` by bisection, which stays robust where
/// `Q'` diverges at the endpoints. At most [`CDF_MAX_ITER`] halvings; the
/// bracket is always narrower than [`CDF_TOLERANCE`] on return.
pub fn invert_quantile<F>(quantile: F, support: Support, t: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    if t.is_nan() {
        return f64::NAN;
    }
    if t <= support.lower {
        return 0.0;
    }
    if t >= support.upper {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..CDF_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if quantile(mid) < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Any of the three characterized families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Adjacent(AdjacentShiftFamily),
    TwoSpacing(TwoSpacingFamily),
    PowerMax(PowerMaxFamily),
}

impl Family {
    pub fn shifts(&self) -> ShiftPair {
        match self {
            Family::Adjacent(f) => f.shifts(),
            Family::TwoSpacing(f) => f.shifts(),
            Family::PowerMax(f) => f.shifts(),
        }
    }

    pub fn logc(&self) -> f64 {
        match self {
            Family::Adjacent(f) => f.logc(),
            Family::TwoSpacing(f) => f.logc(),
            Family::PowerMax(f) => f.logc(),
        }
    }

    /// The same family with different shift multipliers in its exponents.
    pub fn with_shifts(&self, shifts: ShiftPair) -> Family {
        let mut out = self.clone();
        match &mut out {
            Family::Adjacent(f) => f.shifts = shifts,
            Family::TwoSpacing(f) => f.shifts = shifts,
            Family::PowerMax(f) => f.shifts = shifts,
        }
        out
    }

    pub fn with_logc(&self, logc: f64) -> Family {
        let mut out = self.clone();
        match &mut out {
            Family::Adjacent(f) => f.logc = logc,
            Family::TwoSpacing(f) => f.logc = logc,
            Family::PowerMax(f) => f.logc = logc,
        }
        out
    }

    fn inner(&self) -> &dyn QuantileModel {
        match self {
            Family::Adjacent(f) => f,
            Family::TwoSpacing(f) => f,
            Family::PowerMax(f) => f,
        }
    }
}

impl From<AdjacentShiftFamily> for Family {
    fn from(f: AdjacentShiftFamily) -> Self {
        Family::Adjacent(f)
    }
}

impl From<TwoSpacingFamily> for Family {
    fn from(f: TwoSpacingFamily) -> Self {
        Family::TwoSpacing(f)
    }
}

impl From<PowerMaxFamily> for Family {
    fn from(f: PowerMaxFamily) -> Self {
        Family::PowerMax(f)
    }
}

impl QuantileModel for Family {
    fn quantile_unchecked(&self, u: f64) -> f64 {
        self.inner().quantile_unchecked(u)
    }

    fn quantile_deriv_unchecked(&self, u: f64) -> f64 {
        self.inner().quantile_deriv_unchecked(u)
    }

    fn support(&self) -> Support {
        self.inner().support()
    }

    fn structure(&self) -> Option<Structure> {
        self.inner().structure()
    }
}

pub(crate) fn check_logc(logc: f64) -> Result<()> {
    if logc.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("logc must be finite, got {logc}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_pair_rejects_zero_pair() {
        let err = ShiftPair::new(0.0, 0.0).unwrap_err();
        assert!(err.to_string().contains("(a,b)≠(0,0)"));
    }

    #[test]
    fn shift_pair_rejects_negative_and_nan() {
        assert!(ShiftPair::new(-1.0, 1.0).is_err());
        assert!(ShiftPair::new(1.0, -0.5).is_err());
        assert!(ShiftPair::new(f64::NAN, 1.0).is_err());
        assert!(ShiftPair::new(1.0, f64::INFINITY).is_err());
        assert!(ShiftPair::new(0.0, 1.0).is_ok());
    }

    #[test]
    fn inversion_saturates_outside_support() {
        let s = Support {
            lower: 0.0,
            upper: f64::INFINITY,
        };
        let q = |u: f64| -(-u).ln_1p();
        assert_eq!(invert_quantile(q, s, -1.0), 0.0);
        assert_eq!(invert_quantile(q, s, 0.0), 0.0);
        assert!(invert_quantile(q, s, f64::NAN).is_nan());
        let u = invert_quantile(q, s, 2.0);
        assert!((u - (1.0 - (-2.0_f64).exp())).abs() < 1e-12);
    }
}
