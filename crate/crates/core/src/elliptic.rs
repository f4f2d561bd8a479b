//! Complete elliptic integrals K(m) and E(m) by the arithmetic-geometric
//! mean, with their modulus derivatives.
//!
//! The argument m is the elliptic modular parameter (often written k^2).
//! Quadrature is deliberately not used here; the test suite checks the
//! AGM values against an independent quadrature oracle.

use crate::error::{Error, Result};

/// Modular parameter restricted to [0, 1), the common domain of K and E.
///
/// m = 1 is the logarithmic singularity of K and is rejected, including
/// anything within 1e-12 of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus(f64);

impl EllipticModulus {
    pub fn new(m: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&m) || m >= 1.0 - 1e-12 {
            return Err(Error::Domain(format!(
                "elliptic modular parameter must lie in [0, 1 - 1e-12], got {m}"
            )));
        }
        Ok(Self(m))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// One AGM pass producing K(m) and E(m) together. Caller checks the domain.
pub(crate) fn agm_k_e(m: f64) -> (f64, f64) {
    let mut a = 1.0f64;
    let mut b = (1.0 - m).sqrt();
    let mut sum = 0.5 * m; // 2^(n-1) c_n^2 at n = 0, c_0^2 = m
    let mut pow2 = 0.5;
    for _ in 0..32 {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let c = 0.5 * (a - b);
        let next_a = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next_a;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    let k = std::f64::consts::FRAC_PI_2 / a;
    (k, k * (1.0 - sum))
}

/// Complete elliptic integral of the first kind, K(m).
pub fn complete_elliptic_k(m: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&m) || m >= 1.0 - 1e-12 {
        return Err(Error::Domain(format!(
            "K(m) requires 0 <= m < 1 (strictly below 1 - 1e-12), got {m}"
        )));
    }
    Ok(agm_k_e(m).0)
}

/// Complete elliptic integral of the second kind, E(m).
pub fn complete_elliptic_e(m: f64) -> Result<f64> {
    if m == 1.0 {
        return Ok(1.0);
    }
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::Domain(format!("E(m) requires 0 <= m <= 1, got {m}")));
    }
    Ok(agm_k_e(m).1)
}

/// dK/dm and dE/dm at 0 < m < 1:
///
///   dK/dm = (E - (1-m) K) / (2 m (1-m)),    dE/dm = (E - K) / (2 m).
///
/// Both are 0/0 at m = 0; the endpoint is rejected rather than
/// regularized.
pub fn elliptic_derivatives(m: f64) -> Result<(f64, f64)> {
    if m <= 0.0 || m >= 1.0 {
        return Err(Error::Domain(format!(
            "elliptic derivatives need 0 < m < 1, got {m}"
        )));
    }
    let k = complete_elliptic_k(m)?;
    let e = complete_elliptic_e(m)?;
    Ok(((e - (1.0 - m) * k) / (2.0 * m * (1.0 - m)), (e - k) / (2.0 * m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

    /// Quadrature oracle for K and E: adaptive Simpson on the defining
    /// integrals over [0, pi/2].
    fn quad_k(m: f64) -> f64 {
        simpson_adaptive(&|t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2)
    }

    fn quad_e(m: f64) -> f64 {
        simpson_adaptive(&|t: f64| (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2)
    }

    fn simpson_adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
        fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, m: f64, b: f64) -> f64 {
            (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
        }
        fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let l = simpson(f, a, 0.5 * (a + m), m);
            let r = simpson(f, m, 0.5 * (m + b), b);
            if depth == 0 || (l + r - whole).abs() <= 15.0 * tol {
                l + r + (l + r - whole) / 15.0
            } else {
                let half = (tol / 2.0).max(1e-17);
                rec(f, a, m, l, half, depth - 1) + rec(f, m, b, r, half, depth - 1)
            }
        }
        let m = 0.5 * (a + b);
        rec(f, a, b, simpson(f, a, m, b), 1e-14, 18)
    }

    #[test]
    fn degenerate_endpoints() {
        assert!((complete_elliptic_k(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!((complete_elliptic_e(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(complete_elliptic_e(1.0).unwrap(), 1.0);
        assert!(matches!(
            complete_elliptic_k(1.0),
            Err(crate::error::Error::Domain(_))
        ));
        assert!(matches!(
            complete_elliptic_k(1.0 - 1e-13),
            Err(crate::error::Error::Domain(_))
        ));
        assert!(matches!(
            complete_elliptic_k(-0.1),
            Err(crate::error::Error::Domain(_))
        ));
        assert!(matches!(
            complete_elliptic_e(1.1),
            Err(crate::error::Error::Domain(_))
        ));
    }

    #[test]
    fn quadrature_oracle_at_half() {
        let k = complete_elliptic_k(0.5).unwrap();
        let e = complete_elliptic_e(0.5).unwrap();
        assert!((k - quad_k(0.5)).abs() <= 1e-12 * k);
        assert!((e - quad_e(0.5)).abs() <= 1e-12 * e);
    }

    #[test]
    fn quadrature_oracle_grid() {
        for &m in &[0.05, 0.2, 0.35, 0.65, 0.8, 0.95, 0.999] {
            let k = complete_elliptic_k(m).unwrap();
            let e = complete_elliptic_e(m).unwrap();
            assert!((k - quad_k(m)).abs() <= 1e-12 * k, "K({m})");
            assert!((e - quad_e(m)).abs() <= 1e-12 * e, "E({m})");
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let m = 0.5;
        let h = 1e-6;
        let fd_k = (complete_elliptic_k(m + h).unwrap() - complete_elliptic_k(m - h).unwrap())
            / (2.0 * h);
        let (dk, _) = elliptic_derivatives(m).unwrap();
        assert!((dk - fd_k).abs() < 1e-7, "{dk} vs {fd_k}");
    }

    #[test]
    fn de_dm_is_definitional_composition() {
        let m = 0.25;
        let (_, de) = elliptic_derivatives(m).unwrap();
        let e = complete_elliptic_e(m).unwrap();
        let k = complete_elliptic_k(m).unwrap();
        assert_eq!(de, (e - k) / 0.5);
    }

    #[test]
    fn de_dm_limit_near_zero() {
        // E(m) = pi/2 (1 - m/4 - ...) so dE/dm -> -pi/8
        let (_, de) = elliptic_derivatives(1e-8).unwrap();
        assert!((de + std::f64::consts::PI / 8.0).abs() < 1e-6);
    }

    #[test]
    fn derivative_endpoints_rejected() {
        assert!(elliptic_derivatives(0.0).is_err());
        assert!(elliptic_derivatives(1.0).is_err());
    }

    proptest! {
        /// Legendre relation: E(m)K(1-m) + E(1-m)K(m) - K(m)K(1-m) = pi/2.
        #[test]
        fn legendre_relation(m in 1e-6f64..0.999999) {
            let k = complete_elliptic_k(m).unwrap();
            let kc = complete_elliptic_k(1.0 - m).unwrap();
            let e = complete_elliptic_e(m).unwrap();
            let ec = complete_elliptic_e(1.0 - m).unwrap();
            prop_assert!((e * kc + ec * k - k * kc - FRAC_PI_2).abs() <= 1e-12);
        }

        #[test]
        fn dk_dm_finite_difference(m in 0.01f64..0.99) {
            let h = 1e-6;
            let fd = (complete_elliptic_k(m + h).unwrap() - complete_elliptic_k(m - h).unwrap()) / (2.0 * h);
            let (dk, _) = elliptic_derivatives(m).unwrap();
            prop_assert!((dk - fd).abs() <= 1e-7 * (1.0 + dk.abs()));
        }
    }
}
