//! Closed-form CDFs of notable members of the families, used as oracles for
//! the numerically inverted `Family::cdf`.

use serde::{Deserialize, Serialize};

use super::ResidualReport;
use crate::error::{Error, Result};
use crate::family::{AdjacentShiftFamily, Family, PowerMaxFamily, QuantileModel, ShiftPair};

pub const REMARK_TOLERANCE: f64 = 1e-9;
const REMARK_POINTS: usize = 100;

/// A closed-form distribution function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "remark", rename_all = "snake_case")]
pub enum Remark {
    /// `1 − e^{−(t−c)}` for `t ≥ c`.
    Exponential { location: f64 },
    /// `e^{t−c}` for `t ≤ c`.
    ReflectedExponential { location: f64 },
    /// `c₁/(c₁ + e^{−t/s})`.
    Logistic { c1: f64, scale: f64 },
    /// `1/(1 + c₂·e^{−t/k})`.
    SymmetricLogistic { k: f64, c2: f64 },
    /// `(1 − e^{−β(t−c)/(α+β)})^{1/β}` for `t ≥ c`.
    PowerExponential { location: f64, alpha: f64, beta: f64 },
    /// Type I generalized logistic `(c₂/(c₂ + e^{−t}))^{1/β}`.
    GeneralizedLogistic { c2: f64, beta: f64 },
    /// `(1 + e^{−(n−1)(t−c)})^{−1/(n−1)}`, the law with `X =d X_{n,n} − ξ`.
    MaxMinusExponential { location: f64, n: f64 },
}

/// Value of the closed-form CDF at `t`.
pub fn remark_closed_form(remark: &Remark, t: f64) -> f64 {
    match *remark {
        Remark::Exponential { location } => {
            if t <= location {
                0.0
            } else {
                -(-(t - location)).exp_m1()
            }
        }
        Remark::ReflectedExponential { location } => {
            if t >= location {
                1.0
            } else {
                (t - location).exp()
            }
        }
        Remark::Logistic { c1, scale } => c1 / (c1 + (-t / scale).exp()),
        Remark::SymmetricLogistic { k, c2 } => 1.0 / (1.0 + c2 * (-t / k).exp()),
        Remark::PowerExponential { location, alpha, beta } => {
            if t <= location {
                0.0
            } else {
                (-(-beta * (t - location) / (alpha + beta)).exp_m1()).powf(beta.recip())
            }
        }
        Remark::GeneralizedLogistic { c2, beta } => (c2 / (c2 + (-t).exp())).powf(beta.recip()),
        Remark::MaxMinusExponential { location, n } => {
            (1.0 + (-(n - 1.0) * (t - location)).exp()).powf(-(n - 1.0).recip())
        }
    }
}

/// A family member paired with its closed-form CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct RemarkCase {
    pub id: &'static str,
    pub family: Family,
    pub remark: Remark,
}

impl RemarkCase {
    /// Compares `family.cdf` with the closed form at 100 interior points
    /// `t = Q(u)`, `u = 0.005, 0.015, ..., 0.995`.
    pub fn check(&self) -> ResidualReport {
        let points = (0..REMARK_POINTS).map(|i| {
            let u = (i as f64 + 0.5) / REMARK_POINTS as f64;
            let t = self.family.quantile_unchecked(u);
            (u, self.family.cdf(t) - remark_closed_form(&self.remark, t))
        });
        ResidualReport::from_residuals(points, REMARK_POINTS, 0.5 / REMARK_POINTS as f64, REMARK_TOLERANCE)
    }

    pub fn lookup(id: &str) -> Result<RemarkCase> {
        remark_suite()
            .into_iter()
            .find(|c| c.id == id)
            .ok_or_else(|| Error::Domain(format!("unknown remark id {id:?}")))
    }
}

fn adjacent(n: u32, k: u32, a: f64, b: f64, logc: f64) -> Family {
    let s = ShiftPair::new(a, b).expect("valid shifts");
    AdjacentShiftFamily::new(n, k, s, logc).expect("valid family").into()
}

fn power(alpha: f64, beta: f64, a: f64, b: f64, logc: f64) -> Family {
    let s = ShiftPair::new(a, b).expect("valid shifts");
    PowerMaxFamily::new(alpha, beta, s, logc).expect("valid family").into()
}

fn corollary(n: u32, a: f64, b: f64, logc: f64) -> Family {
    let s = ShiftPair::new(a, b).expect("valid shifts");
    PowerMaxFamily::corollary(n, s, logc).expect("valid family").into()
}

/// Every special case with a known closed form.
pub fn remark_suite() -> Vec<RemarkCase> {
    vec![
        RemarkCase {
            id: "t1-i",
            family: adjacent(5, 3, 0.5, 0.0, 0.3),
            remark: Remark::Exponential { location: 0.3 },
        },
        // a = 1/(n−k), b = 0: X_{k,n} + ξ/(n−k) =d X_{k+1,n}
        RemarkCase {
            id: "t1-exponential-spacing",
            family: adjacent(6, 2, 0.25, 0.0, -0.4),
            remark: Remark::Exponential { location: -0.4 },
        },
        RemarkCase {
            id: "t1-ii",
            family: adjacent(3, 1, 0.0, 1.0, -0.2),
            remark: Remark::ReflectedExponential { location: -0.2 },
        },
        RemarkCase {
            id: "t1-iii",
            family: adjacent(3, 1, 0.5, 1.0, 0.7),
            remark: Remark::Logistic {
                c1: (-0.7_f64).exp(),
                scale: 1.0,
            },
        },
        // b·k = a·(n−k) = 3: logistic with scale 3
        RemarkCase {
            id: "t1-iii-scaled",
            family: adjacent(5, 2, 1.0, 1.5, 0.4),
            remark: Remark::Logistic {
                c1: (-0.4_f64 / 3.0).exp(),
                scale: 3.0,
            },
        },
        RemarkCase {
            id: "t1-iv",
            family: adjacent(4, 2, 1.0, 1.0, 0.6),
            remark: Remark::SymmetricLogistic {
                k: 2.0,
                c2: (0.6_f64 / 2.0).exp(),
            },
        },
        RemarkCase {
            id: "t3-i",
            family: power(2.0, 3.0, 1.0, 0.0, 0.1),
            remark: Remark::PowerExponential {
                location: 0.1,
                alpha: 2.0,
                beta: 3.0,
            },
        },
        // b·α = β and d = 1 force a = 0
        RemarkCase {
            id: "t3-ii",
            family: power(2.0, 3.0, 0.0, 1.5, -0.3),
            remark: Remark::GeneralizedLogistic {
                c2: 0.3_f64.exp(),
                beta: 3.0,
            },
        },
        // X + ξ =d X_{n,n}
        RemarkCase {
            id: "max-plus",
            family: corollary(4, 1.0, 0.0, 0.2),
            remark: Remark::PowerExponential {
                location: 0.2,
                alpha: 1.0,
                beta: 3.0,
            },
        },
        // X =d X_{n,n} − ξ
        RemarkCase {
            id: "max-minus",
            family: corollary(4, 0.0, 1.0, 0.2),
            remark: Remark::MaxMinusExponential { location: 0.2, n: 4.0 },
        },
        // X =d X_{2,2} − ξ: standard logistic
        RemarkCase {
            id: "max-minus-logistic",
            family: corollary(2, 0.0, 1.0, 0.0),
            remark: Remark::Logistic { c1: 1.0, scale: 1.0 },
        },
    ]
}
