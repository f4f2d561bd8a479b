//! Fourier expansion of (1 + x cos phi)^nu and Laplace coefficients,
//! routed through the elliptic reduction whenever the exponent's degree
//! classification permits.

use crate::error::{Error, Result};
use crate::gamma::{gamma, near_integer, recip_gamma};
use crate::hyp2f1::oracle_legendre;
use crate::index::{Classification, FunctionKind, LegendreIndex};
use crate::transform::eval_fractional;

/// Specification of one Fourier coefficient of (1 + x cos phi)^nu.
#[derive(Debug, Clone, Copy)]
pub struct FourierSpec {
    pub nu: f64,
    pub m: i64,
    /// Expansion parameter, strictly inside (0, 1); x = tanh xi.
    pub x: f64,
}

impl FourierSpec {
    pub fn new(nu: f64, m: i64, x: f64) -> Result<Self> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Domain(format!(
                "expansion parameter must lie in (0, 1), got {x}"
            )));
        }
        if let Some(n) = near_integer(nu, 1e-12) {
            if n < 0 {
                return Err(Error::Pole(format!(
                    "exponent nu = {n} has Gamma(nu + 1) at a pole"
                )));
            }
        }
        Ok(Self { nu, m, x })
    }
}

fn legendre_p_any(nu: f64, m: i64, z: f64) -> Result<f64> {
    let idx = LegendreIndex::new(nu, m as f64)?;
    if matches!(idx.classification(), Classification::General) {
        Ok(oracle_legendre(FunctionKind::LegendreP, &idx, z)?.value)
    } else {
        match eval_fractional(FunctionKind::LegendreP, &idx, z) {
            Ok(form) => Ok(form.value()),
            // out-of-budget shifts fall back to the series route
            Err(Error::Stability(_)) => {
                Ok(oracle_legendre(FunctionKind::LegendreP, &idx, z)?.value)
            }
            Err(e) => Err(e),
        }
    }
}

/// Coefficient of e^(i m phi) in the expansion of (1 + x cos phi)^nu:
///
///   c_m = (1 - x^2)^(nu/2) Gamma(nu + 1) / Gamma(nu + m + 1)
///           * P_nu^m(1 / sqrt(1 - x^2)).
///
/// When Gamma(nu + m + 1) sits at a pole (integer nu with m < -nu) the
/// coefficient vanishes identically and 0 is returned.
pub fn fourier_coefficient(spec: &FourierSpec) -> Result<f64> {
    let FourierSpec { nu, m, x } = *spec;
    let rg = recip_gamma(nu + m as f64 + 1.0);
    if rg == 0.0 {
        return Ok(0.0);
    }
    // integer exponents truncate: orders beyond the degree contribute 0
    if let Some(n) = near_integer(nu, 1e-12) {
        if m.abs() > n {
            return Ok(0.0);
        }
    }
    let z = 1.0 / (1.0 - x * x).sqrt();
    let p = legendre_p_any(nu, m, z)?;
    crate::error::ensure_finite(
        (1.0 - x * x).powf(nu / 2.0) * gamma(nu + 1.0)? * rg * p,
        "fourier coefficient",
    )
}

/// Laplace coefficient b_s^(m)(alpha) under the convention
///
///   b_s^(m)(alpha) = (1/pi) Int_0^{2 pi} cos(m phi)
///                       (1 + alpha^2 - 2 alpha cos phi)^(-s) d phi,
///
/// evaluated by factoring (1 + alpha^2)^(-s) (1 + x cos phi)^(-s) with
/// x = -2 alpha / (1 + alpha^2); the negative x maps to positive x by
/// phi -> phi + pi, contributing (-1)^m.
pub fn laplace_coefficient(s: f64, m: i64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if !(s > 0.0) {
        return Err(Error::Domain(format!("s must be positive, got {s}")));
    }
    if m < 0 {
        return Err(Error::Domain(format!("harmonic index must be >= 0, got {m}")));
    }
    let x = 2.0 * alpha / (1.0 + alpha * alpha);
    let spec = FourierSpec::new(-s, m, x)?;
    let c = fourier_coefficient(&spec)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(2.0 * sign * (1.0 + alpha * alpha).powf(-s) * c)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Quadrature oracle: the coefficient integrals have smooth periodic
    /// integrands, so the doubling trapezoid rule converges fast.
    pub(crate) fn trapezoid_fourier<F: Fn(f64) -> f64>(f: F) -> f64 {
        let mut n = 64usize;
        let mut prev = f64::NAN;
        loop {
            let h = 2.0 * std::f64::consts::PI / n as f64;
            let sum: f64 = (0..n).map(|i| f(i as f64 * h)).sum::<f64>() * h;
            if (sum - prev).abs() < 1e-13 * (1.0 + sum.abs()) || n > 1 << 22 {
                return sum;
            }
            prev = sum;
            n *= 2;
        }
    }

    fn coeff_by_quadrature(nu: f64, m: i64, x: f64) -> f64 {
        trapezoid_fourier(|phi| {
            (1.0 + x * phi.cos()).powf(nu) * (m as f64 * phi).cos()
        }) / (2.0 * std::f64::consts::PI)
    }

    #[test]
    fn binomial_cases_are_exact() {
        // (1 + 0.5 cos phi): constant term 1, first harmonic 1/4
        let c0 = fourier_coefficient(&FourierSpec::new(1.0, 0, 0.5).unwrap()).unwrap();
        assert!((c0 - 1.0).abs() < 1e-12);
        let c1 = fourier_coefficient(&FourierSpec::new(1.0, 1, 0.5).unwrap()).unwrap();
        assert!((c1 - 0.25).abs() < 1e-12);
        // truncation beyond the degree
        let c2 = fourier_coefficient(&FourierSpec::new(1.0, 2, 0.5).unwrap()).unwrap();
        assert_eq!(c2, 0.0);
        let cm3 = fourier_coefficient(&FourierSpec::new(1.0, -3, 0.5).unwrap()).unwrap();
        assert_eq!(cm3, 0.0);
    }

    #[test]
    fn quadrature_oracle_fractional_case() {
        let c = fourier_coefficient(&FourierSpec::new(-0.25, 2, 0.6).unwrap()).unwrap();
        let q = coeff_by_quadrature(-0.25, 2, 0.6);
        assert!((c - q).abs() <= 1e-8 * (1.0 + q.abs()), "{c} vs {q}");
    }

    #[test]
    fn conjugate_symmetry() {
        for &(nu, m, x) in &[(-0.25, 3i64, 0.5), (0.75, 2, 0.3), (-1.0 / 6.0, 1, 0.7)] {
            let cp = fourier_coefficient(&FourierSpec::new(nu, m, x).unwrap()).unwrap();
            let cm = fourier_coefficient(&FourierSpec::new(nu, -m, x).unwrap()).unwrap();
            assert!(
                (cp - cm).abs() <= 1e-10 * (1.0 + cp.abs()),
                "nu={nu} m={m}: {cp} vs {cm}"
            );
        }
    }

    #[test]
    fn laplace_limit_and_quadrature() {
        // m = 0, alpha -> 0: the defining integral tends to 2 pi / pi = 2
        let b = laplace_coefficient(0.5, 0, 1e-6).unwrap();
        assert!((b - 2.0).abs() < 1e-5, "{b}");

        for &(s, m, alpha, tol) in &[
            (0.5, 0i64, 0.4, 1e-9),
            (1.5, 2, 0.3, 1e-8),
            (0.25, 1, 0.5, 1e-8),
        ] {
            let b = laplace_coefficient(s, m, alpha).unwrap();
            let q = trapezoid_fourier(|phi| {
                (m as f64 * phi).cos()
                    * (1.0 + alpha * alpha - 2.0 * alpha * phi.cos()).powf(-s)
            }) / std::f64::consts::PI;
            assert!((b - q).abs() <= tol * (1.0 + q.abs()), "s={s} m={m}: {b} vs {q}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(laplace_coefficient(0.5, 0, 1.2).is_err());
        assert!(laplace_coefficient(-0.5, 0, 0.4).is_err());
        assert!(FourierSpec::new(-2.0, 0, 0.5).is_err());
        assert!(FourierSpec::new(0.5, 0, 1.5).is_err());
    }
}
