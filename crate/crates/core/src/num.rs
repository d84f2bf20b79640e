//! Shared numeric tolerances and comparison helpers.

/// Relative tolerance for downstream equality tests.
pub const REL_TOL: f64 = 1e-9;
/// Absolute tolerance floor.
pub const ABS_TOL: f64 = 1e-12;

/// `a == b` up to the crate-wide relative/absolute tolerances.
pub fn approx_eq(a: f64, b: f64) -> bool {
    approx_eq_tol(a, b, REL_TOL, ABS_TOL)
}

pub fn approx_eq_tol(a: f64, b: f64, rel: f64, abs: f64) -> bool {
    let diff = (a - b).abs();
    diff <= abs || diff <= rel * a.abs().max(b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approx_eq_scales() {
        assert!(approx_eq(1.0, 1.0 + 1e-13));
        assert!(approx_eq(1e6, 1e6 * (1.0 + 1e-10)));
        assert!(!approx_eq(1.0, 1.0 + 1e-6));
    }
}
