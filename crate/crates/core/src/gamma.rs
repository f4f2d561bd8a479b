//! Gamma function and argument-reduced circular phases.
//!
//! The gamma function uses the Lanczos rational approximation with
//! g = 607/128 (15 coefficients) and the reflection formula below 1/2,
//! which keeps the relative error near machine precision over the
//! supported range [-170, 170].

use crate::error::{Error, Result};

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
const LANCZOS_G: f64 = 4.742_187_5; // 607/128

const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_189e-5,
    4.652_362_892_704_858e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_049e-4,
    2.174_396_181_152_126e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_275e-5,
    -2.619_083_840_158_141e-5,
    3.689_918_265_953_162e-6,
];

/// sin(pi x) with exact argument reduction at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let f = x - n;
    let s = (std::f64::consts::PI * f).sin();
    if (n as i64) & 1 == 0 {
        s
    } else {
        -s
    }
}

/// cos(pi x) with exact argument reduction at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    // cos(pi x) = sin(pi (x + 1/2))
    sin_pi(x + 0.5)
}

pub(crate) fn near_integer(x: f64, tol: f64) -> Option<i64> {
    let n = x.round();
    if (x - n).abs() <= tol && n.abs() < 9.0e15 {
        Some(n as i64)
    } else {
        None
    }
}

fn lanczos_series(z: f64) -> f64 {
    let mut acc = LANCZOS_COEF[0];
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    acc
}

/// Gamma for x >= 0.5 (no poles on this side).
fn gamma_positive(x: f64) -> f64 {
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // t^(z+1/2) e^-t split into two powers to stay in range near x = 170
    let half = 0.5 * (z + 0.5);
    SQRT_2PI * t.powf(half) * (-t).exp() * t.powf(half) * lanczos_series(z)
}

/// Gamma function.
///
/// Rejects arguments within 1e-12 of a non-positive integer.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma of non-finite argument {x}")));
    }
    if x < 0.5 {
        if let Some(n) = near_integer(x, 1e-12) {
            if n <= 0 {
                return Err(Error::Pole(format!("gamma pole at non-positive integer {n} (x = {x})")));
            }
        }
        // reflection: gamma(x) = pi / (sin(pi x) gamma(1 - x))
        let denom = sin_pi(x) * gamma_positive(1.0 - x);
        crate::error::ensure_finite(std::f64::consts::PI / denom, "gamma (reflected)")
    } else {
        crate::error::ensure_finite(gamma_positive(x), "gamma")
    }
}

/// Reciprocal gamma, entire in the argument: returns 0 at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if x >= 0.5 {
        1.0 / gamma_positive(x)
    } else {
        sin_pi(x) * gamma_positive(1.0 - x) / std::f64::consts::PI
    }
}

/// gamma(a) / gamma(b), both off poles.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    Ok(gamma(a)? * recip_gamma(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SQRT_PI: f64 = 1.772_453_850_905_516;

    #[test]
    fn exact_small_values() {
        assert!((gamma(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma(0.5).unwrap() - SQRT_PI).abs() < 1e-14);
        assert!((gamma(5.0).unwrap() - 24.0).abs() < 24.0 * 1e-14);
        // gamma(-1.5) = 4 sqrt(pi) / 3
        assert!((gamma(-1.5).unwrap() - 4.0 * SQRT_PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn pole_rejection() {
        assert!(matches!(gamma(0.0), Err(crate::error::Error::Pole(_))));
        assert!(matches!(gamma(-3.0), Err(crate::error::Error::Pole(_))));
        assert!(matches!(gamma(-7.0 + 5e-13), Err(crate::error::Error::Pole(_))));
        assert!(gamma(-7.0 + 1e-9).is_ok());
    }

    /// Independent oracle: adaptive Simpson quadrature of the defining
    /// integral, with the t = u^4 substitution near zero so the
    /// integrand is smooth.
    fn gamma_quadrature(x: f64) -> f64 {
        // int_0^1 t^{x-1} e^-t dt with t = u^4:   int_0^1 4 u^{4x-1} e^{-u^4} du
        let f1 = |u: f64| 4.0 * u.powf(4.0 * x - 1.0) * (-u.powi(4)).exp();
        // int_1^60 t^{x-1} e^-t dt
        let f2 = |t: f64| t.powf(x - 1.0) * (-t).exp();
        adaptive_simpson(&f1, 0.0, 1.0, 1e-14, 18) + adaptive_simpson(&f2, 1.0, 60.0, 1e-14, 18)
    }

    fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, m: f64, b: f64) -> f64 {
            (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
        }
        fn rec<F: Fn(f64) -> f64>(
            f: &F,
            a: f64,
            b: f64,
            whole: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let left = simpson(f, a, 0.5 * (a + m), m);
            let right = simpson(f, m, 0.5 * (m + b), b);
            if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                let half = (tol / 2.0).max(1e-17);
                rec(f, a, m, left, half, depth - 1) + rec(f, m, b, right, half, depth - 1)
            }
        }
        let m = 0.5 * (a + b);
        rec(f, a, b, simpson(f, a, m, b), tol, depth)
    }

    #[test]
    fn quadrature_oracle_at_five_fourths() {
        let x = 1.25;
        let q = gamma_quadrature(x);
        let g = gamma(x).unwrap();
        assert!(
            (g - q).abs() <= 1e-12 * q.abs(),
            "gamma(5/4) = {g}, quadrature gives {q}"
        );
    }

    #[test]
    fn quadrature_oracle_grid() {
        for &x in &[0.75, 1.5, 2.25, 3.8, 6.1] {
            let q = gamma_quadrature(x);
            let g = gamma(x).unwrap();
            assert!((g - q).abs() <= 1e-12 * q.abs(), "x={x}: {g} vs {q}");
        }
    }

    #[test]
    fn large_argument_range() {
        // gamma(170) against Stirling with correction series (independent route)
        let x: f64 = 170.0;
        let stirling = (2.0 * std::f64::consts::PI / x).sqrt()
            * (x / std::f64::consts::E).powf(x)
            * (1.0 + 1.0 / (12.0 * x) + 1.0 / (288.0 * x * x) - 139.0 / (51840.0 * x * x * x));
        let g = gamma(x).unwrap();
        assert!(g.is_finite());
        assert!((g - stirling).abs() < 1e-8 * g, "{g} vs {stirling}");
        assert!(gamma(-170.25).unwrap().is_finite());
    }

    proptest! {
        /// Duplication: gamma(2x) = 2^(2x-1) gamma(x) gamma(x+1/2) / sqrt(pi).
        #[test]
        fn duplication_formula(x in 0.01f64..20.0) {
            let lhs = gamma(2.0 * x).unwrap();
            let rhs = (2.0f64).powf(2.0 * x - 1.0) * gamma(x).unwrap() * gamma(x + 0.5).unwrap() / SQRT_PI;
            prop_assert!((lhs - rhs).abs() <= 1e-11 * lhs.abs().max(rhs.abs()));
        }

        /// Reflection: gamma(x) gamma(1-x) = pi / sin(pi x).
        #[test]
        fn reflection_formula(x in 0.05f64..0.95) {
            let lhs = gamma(x).unwrap() * gamma(1.0 - x).unwrap();
            let rhs = std::f64::consts::PI / sin_pi(x);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs());
        }
    }

    #[test]
    fn duplication_on_fixed_grid() {
        // 100 sampled points across (0, 20)
        for i in 1..=100 {
            let x = 0.07 + 0.199 * i as f64;
            let lhs = gamma(2.0 * x).unwrap();
            let rhs =
                (2.0f64).powf(2.0 * x - 1.0) * gamma(x).unwrap() * gamma(x + 0.5).unwrap() / SQRT_PI;
            assert!(
                (lhs - rhs).abs() <= 1e-11 * lhs.abs().max(rhs.abs()),
                "x = {x}"
            );
        }
    }

    #[test]
    fn recip_gamma_vanishes_at_poles() {
        assert_eq!(recip_gamma(0.0), 0.0);
        assert_eq!(recip_gamma(-4.0), 0.0);
        assert!((recip_gamma(3.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn phase_functions_are_exact_at_lattice_points() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(sin_pi(-7.0), 0.0);
        assert_eq!(cos_pi(0.5), 0.0);
        assert_eq!(cos_pi(-2.5), 0.0);
        assert_eq!(sin_pi(0.5), 1.0);
        assert_eq!(sin_pi(1.5), -1.0);
        assert_eq!(cos_pi(1.0), -1.0);
    }
}
