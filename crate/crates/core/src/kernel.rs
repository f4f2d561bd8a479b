//! Elliptic-integral evaluation kernel: half-odd-integer degrees with
//! integer orders as combinations a K(m0) + b E(m0), closed under the
//! first-order ladder recurrences in degree and order.
//!
//! Every state is carried as a pair (value, derivative) with respect to
//! the trigonometric evaluation angle (xi with cosh xi = z on the
//! Legendre side, theta with cos theta = x on the Ferrers side). A
//! ladder step is then a 2x2 linear map on that pair: the produced
//! value is first-order in (F, F'), and its own derivative closes
//! through the second-order differential equation
//!
//!   u'' = -coth(xi) u' + [nu(nu+1) + mu^2/sinh^2(xi)] u      (xi form)
//!   u'' = -cot(theta) u' + [mu^2/sin^2(theta) - nu(nu+1)] u  (theta form)
//!
//! so second derivatives never appear explicitly.

use crate::dual::DualScalar;
use crate::elliptic::{agm_k_e, EllipticModulus};
use crate::error::{Error, Result};
use crate::gamma::{cos_pi, gamma, near_integer, sin_pi};
use crate::index::{FunctionKind, LegendreIndex};

/// Shift budget per index; larger chains are refused rather than run
/// into recurrence instability.
pub const SHIFT_BUDGET: i64 = 12;

/// A value a K(m0) + b E(m0) at a fixed modular parameter, with the
/// coefficient duals carrying the derivative with respect to the
/// evaluation angle: value = coef_k.v K + coef_e.v E and
/// d(value)/d(angle) = coef_k.d K + coef_e.d E.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticCombination {
    pub modulus: EllipticModulus,
    pub coef_k: DualScalar,
    pub coef_e: DualScalar,
}

impl EllipticCombination {
    pub fn value(&self) -> f64 {
        let (k, e) = agm_k_e(self.modulus.get());
        self.coef_k.v * k + self.coef_e.v * e
    }

    pub fn derivative(&self) -> f64 {
        let (k, e) = agm_k_e(self.modulus.get());
        self.coef_k.d * k + self.coef_e.d * e
    }

    /// The (value, derivative) pair as a dual scalar.
    pub fn state(&self) -> DualScalar {
        let (k, e) = agm_k_e(self.modulus.get());
        DualScalar::new(
            self.coef_k.v * k + self.coef_e.v * e,
            self.coef_k.d * k + self.coef_e.d * e,
        )
    }

    pub(crate) fn apply(&self, st: &Linear2) -> EllipticCombination {
        EllipticCombination {
            modulus: self.modulus,
            coef_k: st.apply(self.coef_k),
            coef_e: st.apply(self.coef_e),
        }
    }

    pub(crate) fn scale(&self, c: f64) -> EllipticCombination {
        EllipticCombination {
            modulus: self.modulus,
            coef_k: self.coef_k * c,
            coef_e: self.coef_e * c,
        }
    }

    /// Linear recombination of value and derivative channels:
    /// new value = cv * value + cd * derivative (per K/E coefficient),
    /// new derivative likewise with (dv, dd).
    pub(crate) fn remap(&self, cv: f64, cd: f64, dv: f64, dd: f64) -> EllipticCombination {
        let m = |x: DualScalar| DualScalar::new(cv * x.v + cd * x.d, dv * x.v + dd * x.d);
        EllipticCombination {
            modulus: self.modulus,
            coef_k: m(self.coef_k),
            coef_e: m(self.coef_e),
        }
    }
}

/// Evaluation angle: the parameter the dual derivatives refer to.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Angle {
    /// z = cosh(xi), xi > 0.
    Hyperbolic(f64),
    /// x = cos(theta), 0 < theta < pi.
    Circular(f64),
}

impl Angle {
    pub(crate) fn for_kind(kind: FunctionKind, point: f64) -> Result<Angle> {
        kind.check_point(point)?;
        if kind.is_legendre_domain() {
            Ok(Angle::Hyperbolic(point.acosh()))
        } else {
            Ok(Angle::Circular(point.acos()))
        }
    }

    /// coth(xi) or cot(theta).
    fn cotangent(self) -> f64 {
        match self {
            Angle::Hyperbolic(xi) => 1.0 / xi.tanh(),
            Angle::Circular(th) => 1.0 / th.tan(),
        }
    }

    /// d/d(angle) of the cotangent above.
    fn cotangent_deriv(self) -> f64 {
        match self {
            Angle::Hyperbolic(xi) => -1.0 / (xi.sinh() * xi.sinh()),
            Angle::Circular(th) => -1.0 / (th.sin() * th.sin()),
        }
    }

    fn sin_like(self) -> f64 {
        match self {
            Angle::Hyperbolic(xi) => xi.sinh(),
            Angle::Circular(th) => th.sin(),
        }
    }

    fn cos_like(self) -> f64 {
        match self {
            Angle::Hyperbolic(xi) => xi.cosh(),
            Angle::Circular(th) => th.cos(),
        }
    }

    /// d/d(angle) of cos_like: sinh(xi) or -sin(theta).
    fn cos_like_deriv(self) -> f64 {
        match self {
            Angle::Hyperbolic(xi) => xi.sinh(),
            Angle::Circular(th) => -th.sin(),
        }
    }

    /// ODE closure u'' = p u' + q u at index (nu, mu).
    fn ode_coeffs(self, nu: f64, mu: f64) -> (f64, f64) {
        let s = self.sin_like();
        match self {
            Angle::Hyperbolic(_) => (-self.cotangent(), nu * (nu + 1.0) + mu * mu / (s * s)),
            Angle::Circular(_) => (-self.cotangent(), mu * mu / (s * s) - nu * (nu + 1.0)),
        }
    }
}

/// One ladder step as a linear map on the (value, derivative) pair:
/// out_v = (t v + s d) / den,  out_d = (t2 v + s2 d) / den.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Linear2 {
    t: f64,
    s: f64,
    t2: f64,
    s2: f64,
    den: f64,
}

impl Linear2 {
    fn from_operator(t: f64, s: f64, dt: f64, ds: f64, den: f64, ode: (f64, f64)) -> Self {
        let (p, q) = ode;
        Linear2 {
            t,
            s,
            t2: dt + s * q,
            s2: t + ds + s * p,
            den,
        }
    }

    pub(crate) fn apply(&self, x: DualScalar) -> DualScalar {
        DualScalar::new(
            (self.t * x.v + self.s * x.d) / self.den,
            (self.t2 * x.v + self.s2 * x.d) / self.den,
        )
    }
}

/// Order shift mu -> mu + dir at fixed degree.
pub(crate) fn order_step(
    kind: FunctionKind,
    nu: f64,
    mu: f64,
    dir: i8,
    angle: Angle,
) -> Result<Linear2> {
    let ct = angle.cotangent();
    let dct = angle.cotangent_deriv();
    let ode = angle.ode_coeffs(nu, mu);
    // sign convention of the raising/lowering relation
    let kind_sign = match kind {
        FunctionKind::LegendreP => 1.0,
        FunctionKind::LegendreQhat => -1.0,
        FunctionKind::FerrersP | FunctionKind::FerrersQ => f64::from(dir),
        _ => {
            return Err(Error::UnsupportedIndex(format!(
                "{} does not support ladder recurrences directly",
                kind.name()
            )))
        }
    };
    let den = match dir {
        1 => kind_sign, // C+ = 1
        -1 => {
            let c_minus = (nu + 0.5) * (nu + 0.5) - (mu - 0.5) * (mu - 0.5);
            if c_minus.abs() < 1e-12 {
                return Err(Error::SingularLadder(format!(
                    "order lowering constant vanishes at (nu, mu) = ({nu}, {mu})"
                )));
            }
            kind_sign * c_minus
        }
        _ => return Err(Error::Domain("ladder direction must be +-1".into())),
    };
    let sg = f64::from(dir);
    // (D -+ mu ct) F: t = -dir * mu * ct
    Ok(Linear2::from_operator(-sg * mu * ct, 1.0, -sg * mu * dct, 0.0, den, ode))
}

/// Degree shift nu -> nu + dir at fixed order.
pub(crate) fn degree_step(
    kind: FunctionKind,
    nu: f64,
    mu: f64,
    dir: i8,
    angle: Angle,
) -> Result<Linear2> {
    if matches!(kind, FunctionKind::FerrersPbar | FunctionKind::LegendrePtilde) {
        return Err(Error::UnsupportedIndex(format!(
            "{} does not support ladder recurrences directly",
            kind.name()
        )));
    }
    let sl = angle.sin_like();
    let cl = angle.cos_like();
    let dcl = angle.cos_like_deriv();
    let ode = angle.ode_coeffs(nu, mu);
    let (t, dt, den) = match dir {
        1 => {
            let den = mu - nu - 1.0;
            (-(nu + 1.0) * cl, -(nu + 1.0) * dcl, den)
        }
        -1 => {
            let den = nu + mu;
            (nu * cl, nu * dcl, den)
        }
        _ => return Err(Error::Domain("ladder direction must be +-1".into())),
    };
    if den.abs() < 1e-12 {
        return Err(Error::SingularLadder(format!(
            "degree shift constant vanishes at (nu, mu) = ({nu}, {mu}), direction {dir}"
        )));
    }
    // s = -sin_like, s' = -cos_like'... note d(sinh)/dxi = cosh, d(sin)/dth = cos
    let ds = match angle {
        Angle::Hyperbolic(xi) => -xi.cosh(),
        Angle::Circular(th) => -th.cos(),
    };
    Ok(Linear2::from_operator(t, -sl, dt, ds, den, ode))
}

/// Ladder in the order on a generic (value, derivative) state.
///
/// The state can come from any evaluator; only its consistency with the
/// differential equation at the given index is assumed.
pub fn ladder_order(
    kind: FunctionKind,
    state: (DualScalar, LegendreIndex),
    dir: i8,
    point: f64,
) -> Result<(DualScalar, LegendreIndex)> {
    let (val, idx) = state;
    let angle = Angle::for_kind(kind, point)?;
    let st = order_step(kind, idx.nu(), idx.mu(), dir, angle)?;
    let new_idx = LegendreIndex::for_kind(kind, idx.nu(), idx.mu() + f64::from(dir))?;
    Ok((st.apply(val), new_idx))
}

/// Ladder in the degree on a generic (value, derivative) state.
pub fn ladder_degree(
    kind: FunctionKind,
    state: (DualScalar, LegendreIndex),
    dir: i8,
    point: f64,
) -> Result<(DualScalar, LegendreIndex)> {
    let (val, idx) = state;
    let angle = Angle::for_kind(kind, point)?;
    let st = degree_step(kind, idx.nu(), idx.mu(), dir, angle)?;
    let new_idx = LegendreIndex::for_kind(kind, idx.nu() + f64::from(dir), idx.mu())?;
    Ok((st.apply(val), new_idx))
}

/// Combination V = f(angle) * K(m(angle)) re-expressed with the K', E'
/// substitution so the derivative channel stays in the (K, E) basis at
/// the same modulus.
fn prefactor_times_k(f: DualScalar, m: DualScalar) -> Result<EllipticCombination> {
    let modulus = EllipticModulus::new(m.v)?;
    let coef_k = DualScalar::new(f.v, f.d - f.v * m.d / (2.0 * m.v));
    let coef_e = DualScalar::new(0.0, f.v * m.d / (2.0 * m.v * (1.0 - m.v)));
    Ok(EllipticCombination { modulus, coef_k, coef_e })
}

/// The four degree -1/2, order 0 base representations:
///
///   P_{-1/2}(cosh xi)      = (2/pi) sech(xi/2) K(tanh^2(xi/2))
///   Qhat_{-1/2}(cosh xi)   = 2 e^(-xi/2) K(e^(-2 xi))
///   P_{-1/2}(cos theta)    = (2/pi) K(sin^2(theta/2))        [Ferrers]
///   Q_{-1/2}(cos theta)    = K(cos^2(theta/2))               [Ferrers]
///
/// with the coefficient duals carrying d/dxi resp. d/dtheta.
pub fn base_half_degree(kind: FunctionKind, point: f64) -> Result<EllipticCombination> {
    let angle = Angle::for_kind(kind, point)?;
    match (kind, angle) {
        (FunctionKind::LegendreP, Angle::Hyperbolic(xi)) => {
            let t = DualScalar::variable(xi);
            let half = t * 0.5;
            let m = half.tanh() * half.tanh();
            let f = std::f64::consts::FRAC_2_PI * half.cosh().recip();
            prefactor_times_k(f, m)
        }
        (FunctionKind::LegendreQhat, Angle::Hyperbolic(xi)) => {
            let t = DualScalar::variable(xi);
            let m = (-(t * 2.0)).exp();
            let f = 2.0 * (-(t * 0.5)).exp();
            prefactor_times_k(f, m)
        }
        (FunctionKind::FerrersP, Angle::Circular(th)) => {
            let t = DualScalar::variable(th);
            let half = t * 0.5;
            let m = half.sin() * half.sin();
            let f = DualScalar::constant(std::f64::consts::FRAC_2_PI);
            prefactor_times_k(f, m)
        }
        (FunctionKind::FerrersQ, Angle::Circular(th)) => {
            let t = DualScalar::variable(th);
            let half = t * 0.5;
            let m = half.cos() * half.cos();
            prefactor_times_k(DualScalar::constant(1.0), m)
        }
        _ => Err(Error::UnsupportedIndex(format!(
            "no half-degree base case for {}",
            kind.name()
        ))),
    }
}

fn half_odd_steps(nu: f64) -> Result<i64> {
    near_integer(nu + 0.5, 1e-12).ok_or_else(|| {
        Error::UnsupportedIndex(format!("degree {nu} is not a half-odd integer"))
    })
}

/// Classical evaluation: nu half-odd, mu = m integer, via the base case
/// at (-1/2, 0) followed by order ladders (at nu = -1/2, where the
/// lowering constant cannot vanish for integer orders) and then degree
/// ladders.
pub fn eval_classical(
    kind: FunctionKind,
    idx: &LegendreIndex,
    point: f64,
) -> Result<EllipticCombination> {
    let n = half_odd_steps(idx.nu())?;
    let m = idx
        .integer_order()
        .ok_or_else(|| Error::UnsupportedIndex(format!("order {} is not an integer", idx.mu())))?;
    if n.abs() > SHIFT_BUDGET || m.abs() > SHIFT_BUDGET {
        return Err(Error::Stability(format!(
            "requested shifts ({n} in degree, {m} in order) exceed the budget of {SHIFT_BUDGET}"
        )));
    }
    let angle = Angle::for_kind(kind, point)?;
    let mut ec = base_half_degree(kind, point)?;
    let mut mu = 0.0f64;
    let dir = if m >= 0 { 1i8 } else { -1i8 };
    for _ in 0..m.abs() {
        let st = order_step(kind, -0.5, mu, dir, angle)?;
        ec = ec.apply(&st);
        mu += f64::from(dir);
    }
    let mut nu = -0.5f64;
    let dir = if n >= 0 { 1i8 } else { -1i8 };
    for _ in 0..n.abs() {
        let st = degree_step(kind, nu, mu, dir, angle)?;
        ec = ec.apply(&st);
        nu += f64::from(dir);
    }
    Ok(ec)
}

/// Anything that can produce plain values of the six function kinds;
/// implemented by the series oracle and by the transform engine.
pub trait LegendreEvaluator {
    fn eval(&self, kind: FunctionKind, idx: &LegendreIndex, x: f64) -> Result<f64>;
}

/// First Ferrers function at the negated argument.
///
/// The reflected form P(-x) is the production path; the combination
///   cos((nu+mu) pi) P(x) - (2/pi) sin((nu+mu) pi) Q(x)
/// is evaluated as a self-check and must agree to 1e-9.
pub fn aux_barp<E: LegendreEvaluator>(
    eval: &E,
    idx: &LegendreIndex,
    x: f64,
) -> Result<f64> {
    FunctionKind::FerrersPbar.check_point(x)?;
    let reflected = eval.eval(FunctionKind::FerrersP, idx, -x)?;
    let p = eval.eval(FunctionKind::FerrersP, idx, x)?;
    let q = eval.eval(FunctionKind::FerrersQ, idx, x)?;
    let s = idx.nu() + idx.mu();
    let combined = cos_pi(s) * p - std::f64::consts::FRAC_2_PI * sin_pi(s) * q;
    if (reflected - combined).abs() > 1e-9 * (1.0 + reflected.abs()) {
        return Err(Error::Internal(format!(
            "auxiliary Ferrers routes disagree: {reflected} vs {combined}"
        )));
    }
    Ok(reflected)
}

/// Second-kind companion combination on the Legendre side:
///   cos(nu pi) P - (2/pi) sin((nu+mu) pi) Qhat.
///
/// This is the left-side combination the Legendre-argument
/// transformation identities pair with a Ferrers Q right side.
pub fn aux_tildep<E: LegendreEvaluator>(
    eval: &E,
    idx: &LegendreIndex,
    x: f64,
) -> Result<f64> {
    FunctionKind::LegendrePtilde.check_point(x)?;
    let p = eval.eval(FunctionKind::LegendreP, idx, x)?;
    let q = eval.eval(FunctionKind::LegendreQhat, idx, x)?;
    Ok(cos_pi(idx.nu()) * p - std::f64::consts::FRAC_2_PI * sin_pi(idx.nu() + idx.mu()) * q)
}

/// Degree reflection nu -> -nu - 1 for the second-kind functions.
///
/// Inputs are values at the source index: `second_kind` is Qhat (or
/// Ferrers Q) at (nu, mu), and `companion_p` is P at (nu, -mu) for the
/// Legendre direction, or Ferrers P at (nu, mu) for the Ferrers one.
pub fn reflect_degree(
    kind: FunctionKind,
    idx: &LegendreIndex,
    _point: f64,
    second_kind: f64,
    companion_p: f64,
) -> Result<f64> {
    let (nu, mu) = (idx.nu(), idx.mu());
    match kind {
        FunctionKind::LegendreQhat => {
            let c = cos_pi(nu);
            if c == 0.0 {
                // half-odd degree: reflection is the identity map
                return Ok(second_kind);
            }
            let g1 = gamma(nu + mu + 1.0)?;
            let g2 = gamma(mu - nu)?;
            Ok(second_kind + c * g1 * g2 * companion_p)
        }
        FunctionKind::FerrersQ => {
            let den = sin_pi(nu - mu);
            if den.abs() < 1e-8 {
                return Err(Error::DegenerateReflection(format!(
                    "sin((nu - mu) pi) vanishes at (nu, mu) = ({nu}, {mu})"
                )));
            }
            Ok((sin_pi(nu + mu) * second_kind
                - std::f64::consts::PI * cos_pi(nu) * cos_pi(mu) * companion_p)
                / den)
        }
        _ => Err(Error::UnsupportedIndex(format!(
            "degree reflection applies to second-kind functions, not {}",
            kind.name()
        ))),
    }
}

/// Gamma-free helper for the Legendre reflection when cos(nu pi) = 0 is
/// not exactly representable: consumers should prefer `reflect_degree`.
pub(crate) fn qhat_reflection_coefficient(nu: f64, mu: f64) -> Result<f64> {
    let c = cos_pi(nu);
    if c == 0.0 {
        return Ok(0.0);
    }
    Ok(c * gamma(nu + mu + 1.0)? * gamma(mu - nu)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp2f1::{oracle_legendre, OracleEvaluator};

    fn idx(nu: f64, mu: f64) -> LegendreIndex {
        LegendreIndex::new(nu, mu).unwrap()
    }

    #[test]
    fn base_cases_match_fundamental_representations() {
        // Ferrers P at theta = pi/2: (2/pi) K(1/2)
        let ec = base_half_degree(FunctionKind::FerrersP, 0.0).unwrap();
        assert!((ec.modulus.get() - 0.5).abs() < 1e-15);
        assert!((ec.coef_k.v - std::f64::consts::FRAC_2_PI).abs() < 1e-15);
        assert_eq!(ec.coef_e.v, 0.0);

        // Ferrers Q at theta = pi/2: K(1/2)
        let ec = base_half_degree(FunctionKind::FerrersQ, 0.0).unwrap();
        let want = crate::elliptic::complete_elliptic_k(0.5).unwrap();
        assert!((ec.value() - want).abs() < 1e-14);

        // Legendre P at xi -> 0: value -> 1
        let ec = base_half_degree(FunctionKind::LegendreP, 1.0 + 1e-12).unwrap();
        assert!((ec.value() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn base_derivatives_match_finite_differences() {
        for kind in [
            FunctionKind::LegendreP,
            FunctionKind::LegendreQhat,
            FunctionKind::FerrersP,
            FunctionKind::FerrersQ,
        ] {
            let (a, h) = (0.9f64, 1e-6);
            let pt = |ang: f64| {
                if kind.is_legendre_domain() {
                    ang.cosh()
                } else {
                    ang.cos()
                }
            };
            let v = |ang: f64| base_half_degree(kind, pt(ang)).unwrap().value();
            let ec = base_half_degree(kind, pt(a)).unwrap();
            let fd = (v(a + h) - v(a - h)) / (2.0 * h);
            assert!(
                (ec.derivative() - fd).abs() < 1e-7 * (1.0 + fd.abs()),
                "{kind:?}: {} vs {fd}",
                ec.derivative()
            );
        }
    }

    #[test]
    fn order_ladder_up_matches_derivative_at_base() {
        // Ferrers, direction +1 from (-1/2, 0) at theta = pi/2: the raised
        // value equals D_theta of the base state there.
        let ec = base_half_degree(FunctionKind::FerrersP, 0.0).unwrap();
        let (raised, nidx) = ladder_order(
            FunctionKind::FerrersP,
            (ec.state(), idx(-0.5, 0.0)),
            1,
            0.0,
        )
        .unwrap();
        assert_eq!(nidx.mu(), 1.0);
        let h = 1e-6;
        let v = |th: f64| {
            base_half_degree(FunctionKind::FerrersP, th.cos())
                .unwrap()
                .value()
        };
        let fd = (v(std::f64::consts::FRAC_PI_2 + h) - v(std::f64::consts::FRAC_PI_2 - h))
            / (2.0 * h);
        assert!((raised.v - fd).abs() < 1e-7, "{} vs {fd}", raised.v);
    }

    #[test]
    fn ladder_roundtrips_return_original() {
        let point = 0.4f64;
        let ec = base_half_degree(FunctionKind::FerrersQ, point).unwrap();
        let s0 = ec.state();
        let i0 = idx(-0.5, 0.0);
        // order +1 then -1
        let (s1, i1) = ladder_order(FunctionKind::FerrersQ, (s0, i0), 1, point).unwrap();
        let (s2, _) = ladder_order(FunctionKind::FerrersQ, (s1, i1), -1, point).unwrap();
        assert!((s2.v - s0.v).abs() < 1e-10 * (1.0 + s0.v.abs()));
        assert!((s2.d - s0.d).abs() < 1e-10 * (1.0 + s0.d.abs()));
        // degree +1 then -1
        let (s1, i1) = ladder_degree(FunctionKind::FerrersQ, (s0, i0), 1, point).unwrap();
        let (s2, _) = ladder_degree(FunctionKind::FerrersQ, (s1, i1), -1, point).unwrap();
        assert!((s2.v - s0.v).abs() < 1e-10 * (1.0 + s0.v.abs()));
    }

    #[test]
    fn classical_values_match_oracle() {
        let cases: &[(FunctionKind, f64, f64, f64)] = &[
            (FunctionKind::LegendreP, 0.5, -1.0, 1.0f64.cosh()),
            (FunctionKind::LegendreP, -0.5, 1.0, 2.0),
            (FunctionKind::LegendreQhat, 1.5, 1.0, 1.7),
            (FunctionKind::FerrersP, 2.5, -2.0, 0.3),
            (FunctionKind::FerrersQ, 1.5, 2.0, -0.2),
            (FunctionKind::FerrersQ, -0.5, 0.0, 0.6),
        ];
        for &(kind, nu, mu, pt) in cases {
            let ec = eval_classical(kind, &idx(nu, mu), pt).unwrap();
            let want = oracle_legendre(kind, &idx(nu, mu), pt).unwrap();
            let tol = if want.reduced_precision { 1e-6 } else { 1e-9 };
            assert!(
                (ec.value() - want.value).abs() <= tol * (1.0 + want.value.abs()),
                "{kind:?} ({nu}, {mu}) at {pt}: {} vs {}",
                ec.value(),
                want.value
            );
        }
    }

    #[test]
    fn classical_qhat_integer_order_against_extrapolated_route() {
        let ec = eval_classical(FunctionKind::LegendreQhat, &idx(2.5, 2.0), 3.0).unwrap();
        let extr = crate::hyp2f1::qhat_order_extrapolated(2.5, 2.0, 3.0).unwrap();
        assert!((ec.value() - extr).abs() <= 1e-6 * (1.0 + extr.abs()));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            eval_classical(FunctionKind::LegendreP, &idx(13.5, 0.0), 2.0),
            Err(Error::Stability(_))
        ));
        assert!(matches!(
            eval_classical(FunctionKind::FerrersP, &idx(0.5, 13.0), 0.5),
            Err(Error::Stability(_))
        ));
    }

    #[test]
    fn combination_value_reproducible_from_fields() {
        let ec = eval_classical(FunctionKind::FerrersP, &idx(1.5, -1.0), 0.25).unwrap();
        let (k, e) = crate::elliptic::agm_k_e(ec.modulus.get());
        let recomposed = ec.coef_k.v * k + ec.coef_e.v * e;
        assert_eq!(recomposed, ec.value());
    }

    #[test]
    fn aux_barp_routes_agree() {
        let ev = OracleEvaluator;
        // integer phase degeneracy: nu + mu even integer
        let v = aux_barp(&ev, &idx(1.0, 1.0), 0.3).unwrap();
        let direct = oracle_legendre(FunctionKind::FerrersP, &idx(1.0, 1.0), -0.3)
            .unwrap()
            .value;
        assert_eq!(v, direct);
        let v = aux_barp(&ev, &idx(-0.5, 0.0), 0.2).unwrap();
        assert!(v.is_finite());
        let v = aux_barp(&ev, &idx(-0.25, 0.0), 0.5).unwrap();
        let want = oracle_legendre(FunctionKind::FerrersP, &idx(-0.25, 0.0), -0.5)
            .unwrap()
            .value;
        assert!((v - want).abs() < 1e-12);
    }

    #[test]
    fn aux_tildep_integer_phase() {
        let ev = OracleEvaluator;
        // nu + mu integer: the Qhat term drops, leaving +- P
        let v = aux_tildep(&ev, &idx(2.0, -1.0), 1.5).unwrap();
        let p = oracle_legendre(FunctionKind::LegendreP, &idx(2.0, -1.0), 1.5)
            .unwrap()
            .value;
        assert!((v.abs() - p.abs()).abs() < 1e-12);
    }

    #[test]
    fn degree_reflection_against_oracle() {
        // Qhat_{-3/4} from Qhat_{-1/4} at z = 2
        let i = idx(-0.25, 0.0);
        let q = oracle_legendre(FunctionKind::LegendreQhat, &i, 2.0).unwrap().value;
        let p = oracle_legendre(FunctionKind::LegendreP, &i, 2.0).unwrap().value;
        let got = reflect_degree(FunctionKind::LegendreQhat, &i, 2.0, q, p).unwrap();
        let want = oracle_legendre(FunctionKind::LegendreQhat, &idx(-0.75, 0.0), 2.0)
            .unwrap()
            .value;
        assert!((got - want).abs() <= 1e-9 * (1.0 + want.abs()), "{got} vs {want}");

        // half-odd degree: reflection is the identity
        let i = idx(-0.5, 0.0);
        let q = oracle_legendre(FunctionKind::LegendreQhat, &i, 2.0).unwrap().value;
        let got = reflect_degree(FunctionKind::LegendreQhat, &i, 2.0, q, 123.0).unwrap();
        assert_eq!(got, q);

        // Ferrers Q_{-5/6} from Q_{-1/6} at x = 0.3
        let i = idx(-1.0 / 6.0, 0.0);
        let q = oracle_legendre(FunctionKind::FerrersQ, &i, 0.3).unwrap().value;
        let p = oracle_legendre(FunctionKind::FerrersP, &i, 0.3).unwrap().value;
        let got = reflect_degree(FunctionKind::FerrersQ, &i, 0.3, q, p).unwrap();
        let want = oracle_legendre(FunctionKind::FerrersQ, &idx(-5.0 / 6.0, 0.0), 0.3)
            .unwrap()
            .value;
        assert!((got - want).abs() <= 1e-8 * (1.0 + want.abs()), "{got} vs {want}");
    }
}
