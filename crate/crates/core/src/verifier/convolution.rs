use super::{adaptive_simpson, ResidualReport};
use crate::error::{Error, Result};
use crate::family::QuantileModel;
use crate::montecarlo::RelationSpec;

pub const DEFAULT_QUAD_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_CONVOLUTION_TOLERANCE: f64 = 1e-7;

/// `P(Z₁ + a·ξ₁ ≤ x)` and `P(Z₂ − b·ξ₂ ≤ x)`.
///
/// The left side `(1/a)∫_{−∞}^{x} G(v) e^{(v−x)/a} dv = E[G(x − a·ξ)]`
/// becomes `∫₀¹ G(x + a·ln w) dw` with `w = e^{−ξ}` (the exponential's own
/// probability scale), and the right side `∫₀¹ H(x − b·ln w) dw`. Both
/// integrands are bounded, so infinite tails need no truncation.
pub fn convolution_sides<M: QuantileModel + ?Sized>(
    rel: &RelationSpec,
    model: &M,
    x: f64,
    quad_tolerance: f64,
) -> (f64, f64) {
    let (a, b) = (rel.shifts().a(), rel.shifts().b());
    let left = adaptive_simpson(
        |w| rel.left_cdf(model.cdf(x + a * w.ln())),
        0.0,
        1.0,
        quad_tolerance,
    );
    let right = adaptive_simpson(
        |w| rel.right_cdf(model.cdf(x - b * w.ln())),
        0.0,
        1.0,
        quad_tolerance,
    );
    (left, right)
}

/// Maximum difference between the two sides of the convolution identity
/// over `x_points`. Requires `a > 0` and `b > 0`.
pub fn convolution_check<M: QuantileModel + ?Sized>(
    rel: &RelationSpec,
    model: &M,
    x_points: &[f64],
    quad_tolerance: f64,
) -> Result<ResidualReport> {
    if rel.shifts().a() == 0.0 || rel.shifts().b() == 0.0 {
        return Err(Error::Unsupported(
            "convolution identity needs a > 0 and b > 0".to_string(),
        ));
    }
    if quad_tolerance.is_nan() || quad_tolerance <= 0.0 {
        return Err(Error::Domain(format!(
            "quadrature tolerance must be positive, got {quad_tolerance}"
        )));
    }
    if x_points.is_empty() {
        return Err(Error::Domain("no evaluation points".to_string()));
    }
    rel.check_model(model)?;
    let support = model.support();
    if let Some(x) = x_points.iter().find(|&&x| !support.is_interior(x)) {
        return Err(Error::Domain(format!("x = {x} is not inside the support")));
    }
    let points = x_points.iter().map(|&x| {
        let (l, r) = convolution_sides(rel, model, x, quad_tolerance);
        (model.cdf(x), l - r)
    });
    Ok(ResidualReport::from_residuals(
        points,
        x_points.len(),
        0.0,
        DEFAULT_CONVOLUTION_TOLERANCE,
    ))
}
