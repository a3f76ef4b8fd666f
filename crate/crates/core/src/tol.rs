//! Numerical tolerances shared by every module.

use std::sync::OnceLock;

/// Default comparison tolerance for all linear algebra.
pub const DEFAULT_TAU: f64 = 1e-9;

/// Maximum residual accepted when rounding a quantity that must be an integer.
pub const INTEGER_RESIDUAL: f64 = 1e-6;

/// Relative tolerance for grouping proportional rows and clustering eigenvalues.
pub const PROPORTIONAL: f64 = 1e-6;

/// Environment variable that overrides [`DEFAULT_TAU`].
pub const TAU_ENV: &str = "ANYON_TOL";

static TAU: OnceLock<f64> = OnceLock::new();

/// Comparison tolerance, read once from `ANYON_TOL` if it parses as a positive float.
pub fn tau() -> f64 {
    *TAU.get_or_init(|| {
        std::env::var(TAU_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t > 0.0)
            .unwrap_or(DEFAULT_TAU)
    })
}

/// Rounds `x` to the nearest integer if it lies within [`INTEGER_RESIDUAL`].
pub fn round_integer(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() <= INTEGER_RESIDUAL).then_some(r as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_rejects_large_residuals() {
        assert_eq!(round_integer(2.0 + 1e-8), Some(2));
        assert_eq!(round_integer(-1.0 - 1e-7), Some(-1));
        assert_eq!(round_integer(0.5), None);
        assert_eq!(round_integer(3.00001), None);
    }
}
