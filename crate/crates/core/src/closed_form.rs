//! Purely algebraic special values: the three radical closed forms at
//! (nu, mu) = (-1/6, -1/4) and (-1/4, -1/3), the half-integer-order
//! algebraic form, and the radical expression for the octahedral
//! hypergeometric point 2F1(1/6, 5/6; 5/4; x).

use crate::error::{Error, Result};
use crate::gamma::gamma;

/// Cardano auxiliary A = (sqrt(-2x) + sqrt(-2(x-1)))^2 / 2 for x <= 0;
/// equals 1 at x = 0 and grows with -x.
pub fn cardano_aux(x: f64) -> Result<f64> {
    if x > 0.0 {
        return Err(Error::Domain(format!("auxiliary defined for x <= 0, got {x}")));
    }
    Ok(((-2.0 * x).sqrt() + (-2.0 * (x - 1.0)).sqrt()).powi(2) / 2.0)
}

fn quartic_root_checked(bracket: f64, what: &str) -> Result<f64> {
    if bracket < 0.0 {
        // the bracket is provably nonnegative on the stated domains, so
        // a negative radicand indicates a bug
        return Err(Error::Internal(format!(
            "negative radicand {bracket} in {what}"
        )));
    }
    Ok(bracket.powf(0.25))
}

/// Ferrers P at (-1/6, -1/4):
/// 3^(3/4) / Gamma(5/4) (sin theta)^(-1/4)
///   [cos(theta/3) - sqrt(sin theta / (3 sin(theta/3)))]^(1/4).
pub fn ferrers_p_m16_m14(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::Domain(format!("theta must lie in (0, pi), got {theta}")));
    }
    let bracket = (theta / 3.0).cos() - (theta.sin() / (3.0 * (theta / 3.0).sin())).sqrt();
    let root = quartic_root_checked(bracket, "Ferrers closed form")?;
    Ok(3.0f64.powf(0.75) / gamma(1.25)? * theta.sin().powf(-0.25) * root)
}

/// Legendre P at (-1/6, -1/4):
/// 3^(3/4) / Gamma(5/4) (sinh xi)^(-1/4)
///   [-cosh(xi/3) + sqrt(sinh xi / (3 sinh(xi/3)))]^(1/4).
pub fn legendre_p_m16_m14(xi: f64) -> Result<f64> {
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(Error::Domain(format!("xi must be positive, got {xi}")));
    }
    let bracket = -(xi / 3.0).cosh() + (xi.sinh() / (3.0 * (xi / 3.0).sinh())).sqrt();
    let root = quartic_root_checked(bracket, "Legendre closed form")?;
    Ok(3.0f64.powf(0.75) / gamma(1.25)? * xi.sinh().powf(-0.25) * root)
}

/// The constant prefactor of the Qhat closed form, computed from both
/// of its equivalent expressions
///   3^(3/4) sqrt(pi/2) Gamma(5/12) / Gamma(5/4)
///   = 2^(3/4) 3^(9/8) Gamma(2/3) sqrt(sqrt 3 - 1),
/// which must agree to 1e-12.
pub fn thm_constant() -> Result<f64> {
    let c1 = 3.0f64.powf(0.75) * (std::f64::consts::PI / 2.0).sqrt() * gamma(5.0 / 12.0)?
        / gamma(1.25)?;
    let c2 = 2.0f64.powf(0.75)
        * 3.0f64.powf(1.125)
        * gamma(2.0 / 3.0)?
        * (3.0f64.sqrt() - 1.0).sqrt();
    if (c1 - c2).abs() > 1e-12 * c1.abs() {
        return Err(Error::Internal(format!(
            "the two expressions for the constant disagree: {c1} vs {c2}"
        )));
    }
    Ok(c1)
}

/// Qhat at (-1/4, -1/3) with argument coth xi:
/// C (sinh xi)^(1/4) [-cosh(xi/3) + sqrt(sinh xi / (3 sinh(xi/3)))]^(1/4).
pub fn qhat_m14_m13(xi: f64) -> Result<f64> {
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(Error::Domain(format!("xi must be positive, got {xi}")));
    }
    let bracket = -(xi / 3.0).cosh() + (xi.sinh() / (3.0 * (xi / 3.0).sinh())).sqrt();
    let root = quartic_root_checked(bracket, "Qhat closed form")?;
    Ok(thm_constant()? * xi.sinh().powf(0.25) * root)
}

/// Qhat at (-1/4, -1/2), algebraic in the argument:
/// 4 sqrt(pi/2) [(z^2 - 1)^(-1) (z - sqrt(z^2 - 1))]^(1/4).
pub fn qhat_m14_m12(z: f64) -> Result<f64> {
    if !(z > 1.0 && z.is_finite()) {
        return Err(Error::Domain(format!("argument must exceed 1, got {z}")));
    }
    let inner = (z - (z * z - 1.0).sqrt()) / (z * z - 1.0);
    Ok(4.0 * (std::f64::consts::PI / 2.0).sqrt() * inner.powf(0.25))
}

/// Radical form of 2F1(1/6, 5/6; 5/4; x) on x <= 0:
/// 3^(3/4) (-2x)^(-1/4)
///   [-(A^(1/3) + A^(-1/3))/2 + sqrt((1 + A^(2/3) + A^(-2/3))/3)]^(1/4),
/// with A the Cardano auxiliary; all roots are positive real roots of
/// positive radicands on this branch. Returns 1 at x = 0 by continuity.
pub fn octahedral_2f1(x: f64) -> Result<f64> {
    if x > 0.0 {
        return Err(Error::Domain(format!(
            "radical branch is only evaluated for x <= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    let a = cardano_aux(x)?;
    let a3 = a.powf(1.0 / 3.0);
    let bracket = -(a3 + 1.0 / a3) / 2.0 + ((1.0 + a3 * a3 + 1.0 / (a3 * a3)) / 3.0).sqrt();
    let root = quartic_root_checked(bracket, "octahedral closed form")?;
    Ok(3.0f64.powf(0.75) * (-2.0 * x).powf(-0.25) * root)
}
