use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{Family, QuantileModel, ShiftPair, Structure};
use crate::orderstats::{os_cdf_deriv_unchecked, os_cdf_unchecked, RankSpec};

/// Which pair of variables the relation compares.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RelationKind {
    /// `X_{k,n} + a·ξ₁ =d X_{k+1,n} − b·ξ₂`
    Adjacent { n: u32, k: u32 },
    /// `X_{k,n} + a·ξ₁ =d X_{k+2,n} − b·ξ₂`
    TwoSpacing { n: u32, k: u32 },
    /// `Y₁ + a·ξ₁ =d max{Y₁, Y₂} − b·ξ₂` with `Y₁ ~ F^α`, `Y₂ ~ F^β`
    PowerMax { alpha: f64, beta: f64 },
    /// `X + a·ξ₁ =d X_{n,n} − b·ξ₂`
    CorollaryMax { n: u32 },
}

/// A characterizing relation: the compared variables and the shift
/// multipliers applied to them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelationSpec {
    kind: RelationKind,
    shifts: ShiftPair,
}

impl RelationSpec {
    pub fn new(kind: RelationKind, shifts: ShiftPair) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match kind {
            RelationKind::Adjacent { n, k } => {
                if n < 2 || k < 1 || k > n - 1 {
                    return bad(format!("adjacent relation needs 1 ≤ k ≤ n−1, got n={n}, k={k}"));
                }
            }
            RelationKind::TwoSpacing { n, k } => {
                if n < 3 || k < 1 || k > n - 2 {
                    return bad(format!("two-spacing relation needs 1 ≤ k ≤ n−2, got n={n}, k={k}"));
                }
            }
            RelationKind::PowerMax { alpha, beta } => {
                if !(alpha.is_finite() && alpha > 0.0 && beta.is_finite() && beta > 0.0) {
                    return bad(format!("power-max relation needs α>0, β>0, got α={alpha}, β={beta}"));
                }
            }
            RelationKind::CorollaryMax { n } => {
                if n < 2 {
                    return bad(format!("max relation needs n ≥ 2, got n={n}"));
                }
            }
        }
        Ok(RelationSpec { kind, shifts })
    }

    /// The relation characterizing `family`, with the family's own shifts.
    pub fn matching(family: &Family) -> Self {
        let kind = match family {
            Family::Adjacent(f) => RelationKind::Adjacent { n: f.n(), k: f.k() },
            Family::TwoSpacing(f) => RelationKind::TwoSpacing { n: f.n(), k: f.k() },
            Family::PowerMax(f) => RelationKind::PowerMax {
                alpha: f.alpha(),
                beta: f.beta(),
            },
        };
        RelationSpec {
            kind,
            shifts: family.shifts(),
        }
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn shifts(&self) -> ShiftPair {
        self.shifts
    }

    pub fn with_shifts(&self, shifts: ShiftPair) -> Self {
        RelationSpec {
            kind: self.kind,
            shifts,
        }
    }

    /// Structure of the family this relation characterizes.
    pub fn structure(&self) -> Structure {
        match self.kind {
            RelationKind::Adjacent { n, k } => Structure::Adjacent { n, k },
            RelationKind::TwoSpacing { n, k } => Structure::TwoSpacing { n, k },
            RelationKind::PowerMax { alpha, beta } => Structure::PowerMax { alpha, beta },
            RelationKind::CorollaryMax { n } => Structure::PowerMax {
                alpha: 1.0,
                beta: f64::from(n - 1),
            },
        }
    }

    /// Rejects a model whose declared structure differs from the relation's.
    /// Only the structure is compared; the shifts may differ.
    pub fn check_model<M: QuantileModel + ?Sized>(&self, model: &M) -> Result<()> {
        match model.structure() {
            Some(s) if s != self.structure() => Err(Error::ParameterMismatch(format!(
                "relation expects {:?}, model is {:?}",
                self.structure(),
                s
            ))),
            _ => Ok(()),
        }
    }

    fn ranks(&self) -> Option<(RankSpec, RankSpec)> {
        let mk = |i, n| RankSpec::new(i, n).expect("validated rank");
        match self.kind {
            RelationKind::Adjacent { n, k } => Some((mk(k, n), mk(k + 1, n))),
            RelationKind::TwoSpacing { n, k } => Some((mk(k, n), mk(k + 2, n))),
            RelationKind::CorollaryMax { n } => Some((mk(1, 1), mk(n, n))),
            RelationKind::PowerMax { .. } => None,
        }
    }

    fn powers(&self) -> (f64, f64) {
        match self.kind {
            RelationKind::PowerMax { alpha, beta } => (alpha, alpha + beta),
            _ => unreachable!("only power-max relations use powers"),
        }
    }

    /// CDF of the unshifted left variable at `u = F(t)`.
    pub fn left_cdf(&self, u: f64) -> f64 {
        match self.ranks() {
            Some((l, _)) => os_cdf_unchecked(u, l),
            None => u.powf(self.powers().0),
        }
    }

    /// CDF of the unshifted right variable at `u = F(t)`.
    pub fn right_cdf(&self, u: f64) -> f64 {
        match self.ranks() {
            Some((_, r)) => os_cdf_unchecked(u, r),
            None => u.powf(self.powers().1),
        }
    }

    /// `d/du` of [`Self::left_cdf`].
    pub fn left_cdf_deriv(&self, u: f64) -> f64 {
        match self.ranks() {
            Some((l, _)) => os_cdf_deriv_unchecked(u, l),
            None => {
                let g = self.powers().0;
                g * u.powf(g - 1.0)
            }
        }
    }

    /// `d/du` of [`Self::right_cdf`].
    pub fn right_cdf_deriv(&self, u: f64) -> f64 {
        match self.ranks() {
            Some((_, r)) => os_cdf_deriv_unchecked(u, r),
            None => {
                let g = self.powers().1;
                g * u.powf(g - 1.0)
            }
        }
    }

    pub(crate) fn left_rank(&self) -> Option<RankSpec> {
        self.ranks().map(|(l, _)| l)
    }

    pub(crate) fn right_rank(&self) -> Option<RankSpec> {
        self.ranks().map(|(_, r)| r)
    }
}
