//! Static atlas of the algebraic L-R curves behind the transformation
//! identities: rational parametrizations with derivatives, prefactor
//! functions, implicit polynomials, monotone interval tables and
//! symmetry actions.

use crate::dual::DualScalar;
use crate::error::{Error, Result};
use serde_json::json;

/// The ten curves. The primed/unprimed pairs carry the signature-r
/// identities; M, W2, W4 the homographic and Whipple-type ones; X the
/// isolated order-transformation curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveId {
    C3,
    C3p,
    C4,
    C4p,
    C6,
    C6p,
    M,
    W2,
    W4,
    X,
}

pub const ALL_CURVES: [CurveId; 10] = [
    CurveId::C3,
    CurveId::C3p,
    CurveId::C4,
    CurveId::C4p,
    CurveId::C6,
    CurveId::C6p,
    CurveId::M,
    CurveId::W2,
    CurveId::W4,
    CurveId::X,
];

impl CurveId {
    pub fn name(self) -> &'static str {
        match self {
            CurveId::C3 => "C3",
            CurveId::C3p => "C3'",
            CurveId::C4 => "C4",
            CurveId::C4p => "C4'",
            CurveId::C6 => "C6",
            CurveId::C6p => "C6'",
            CurveId::M => "M",
            CurveId::W2 => "W2",
            CurveId::W4 => "W4",
            CurveId::X => "X",
        }
    }

    pub fn parse(s: &str) -> Option<CurveId> {
        ALL_CURVES.iter().copied().find(|c| c.name().eq_ignore_ascii_case(s))
    }
}

/// A parametrized point: argument maps with d/dp, and the prefactor
/// where its radicand is positive (the rows the identities use).
///
/// `l_comp` and `r_comp` hold (1 - L, 1 + L) and (1 - R, 1 + R) in
/// cancellation-free form; near the branch contacts these carry far more
/// precision than re-deriving them from the rounded values.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub l: DualScalar,
    pub r: DualScalar,
    pub a: Option<DualScalar>,
    pub l_comp: (f64, f64),
    pub r_comp: (f64, f64),
}

/// One monotone row of the interval table: open p-interval with the
/// L and R limits at its ends (infinities allowed).
#[derive(Debug, Clone, Copy)]
pub struct IntervalRow {
    pub p_lo: f64,
    pub p_hi: f64,
    pub l: (f64, f64),
    pub r: (f64, f64),
}

/// A declared curve automorphism: a homography of p together with the
/// induced action on (L, R).
pub struct Symmetry {
    pub name: &'static str,
    pub p_map: fn(f64) -> f64,
    pub lr_action: fn(f64, f64) -> (f64, f64),
}

const SQRT3: f64 = 1.732_050_807_568_877_2;
/// (5 sqrt(5) - 11) / 2 and (5 sqrt(5) + 11) / 2, the finite branch
/// points of the X parametrization.
pub const X_BREAK_NEG: f64 = 0.090_169_943_749_474_22;
pub const X_BREAK_POS: f64 = 11.090_169_943_749_474;
const INF: f64 = f64::INFINITY;

fn d(p: f64) -> DualScalar {
    DualScalar::variable(p)
}

fn sqrt_opt(radicand: DualScalar) -> Option<DualScalar> {
    if radicand.v > 0.0 && radicand.is_finite() {
        Some(radicand.sqrt())
    } else {
        None
    }
}

/// Parametrized point of a curve, with d/dp carried in the duals.
pub fn curve_point(id: CurveId, p: f64) -> Result<CurvePoint> {
    if !p.is_finite() {
        return Err(Error::Domain(format!("curve parameter must be finite, got {p}")));
    }
    let t = d(p);
    let pt = match id {
        CurveId::C4 => {
            if p == 0.0 {
                return singular(id, p);
            }
            let l = t * t * 2.0 - 1.0;
            point(
                l,
                t.recip(),
                sqrt_opt(t.recip()),
                (2.0 * (1.0 - p) * (1.0 + p), 2.0 * p * p),
                ((p - 1.0) / p, (p + 1.0) / p),
            )
        }
        CurveId::C4p => {
            if p == 0.0 || p == -1.0 {
                return singular(id, p);
            }
            let l = 1.0 - 2.0 * ((t - 1.0) / (t + 1.0)).powi(2);
            let r = 2.0 * t.recip() - 1.0;
            let pp1 = (p + 1.0) * (p + 1.0);
            point(
                l,
                r,
                sqrt_opt((t + 1.0) / (t * 2.0)),
                (2.0 * (p - 1.0) * (p - 1.0) / pp1, 8.0 * p / pp1),
                (2.0 * (p - 1.0) / p, 2.0 / p),
            )
        }
        CurveId::C6 => {
            if p == 0.0 || p.abs() == SQRT3 {
                return singular(id, p);
            }
            let p2 = t * t;
            let (l, lc) = sextic_l(p2, t);
            let r = (p2 + 3.0) / (t * 4.0);
            point(
                l,
                r,
                sqrt_opt((3.0 - p2) / (t * 2.0)),
                lc,
                (
                    -(p - 1.0) * (p - 3.0) / (4.0 * p),
                    (p + 1.0) * (p + 3.0) / (4.0 * p),
                ),
            )
        }
        CurveId::C6p => {
            if p == 0.0 {
                return singular(id, p);
            }
            let p2 = t * t;
            let (l, lc) = sextic_l_primed(p2, t);
            let r = (3.0 - p2) / (t * 2.0);
            point(
                l,
                r,
                sqrt_opt((p2 + 3.0) / (t * 4.0)),
                lc,
                (
                    (p - 1.0) * (p + 3.0) / (2.0 * p),
                    (3.0 - p) * (p + 1.0) / (2.0 * p),
                ),
            )
        }
        CurveId::C3 => {
            if p == 0.0 || p.abs() == SQRT3 {
                return singular(id, p);
            }
            let p2 = t * t;
            let (l, lc) = sextic_l(p2, t);
            let (r, rc) = cubic_r(t);
            point(l, r, sqrt_opt((3.0 - p2).powi(2) / (t.powi(3) * 4.0)), lc, rc)
        }
        CurveId::C3p => {
            if p == 0.0 {
                return singular(id, p);
            }
            let p2 = t * t;
            let (l, lc) = sextic_l_primed(p2, t);
            let (r, rc) = cubic_r(t);
            point(l, r, sqrt_opt((p2 + 3.0).powi(2) / (t.powi(3) * 16.0)), lc, rc)
        }
        CurveId::M => {
            if p == 0.0 {
                return singular(id, p);
            }
            point(
                t * 2.0 - 1.0,
                2.0 * t.recip() - 1.0,
                sqrt_opt(t.recip()),
                (2.0 * (1.0 - p), 2.0 * p),
                (2.0 * (p - 1.0) / p, 2.0 / p),
            )
        }
        CurveId::W2 => {
            if p == 0.0 || p.abs() == 1.0 {
                return singular(id, p);
            }
            let p2 = t * t;
            let l = if p > 0.0 {
                (t - 1.0) * (t - 1.0) / (t * 2.0) + 1.0
            } else {
                (t + 1.0) * (t + 1.0) / (t * 2.0) - 1.0
            };
            let q = p * p - 1.0;
            point(
                l,
                (p2 + 1.0) / (p2 - 1.0),
                sqrt_opt(t * 2.0 / (p2 - 1.0)),
                (-(p - 1.0) * (p - 1.0) / (2.0 * p), (p + 1.0) * (p + 1.0) / (2.0 * p)),
                (-2.0 / q, 2.0 * p * p / q),
            )
        }
        CurveId::W4 => {
            if p == 0.0 || p.abs() == 1.0 {
                return singular(id, p);
            }
            let p2 = t * t;
            let p4 = p2 * p2;
            let den = 4.0 * p * (p * p + 1.0);
            let l = if p > 0.0 {
                (t - 1.0).powi(4) / (t * 4.0 * (p2 + 1.0)) + 1.0
            } else {
                (t + 1.0).powi(4) / (t * 4.0 * (p2 + 1.0)) - 1.0
            };
            let q4 = p.powi(4) - 1.0;
            point(
                l,
                (p4 + 1.0) / (p4 - 1.0),
                sqrt_opt(t * 2.0 / (p2 - 1.0)),
                (-(p - 1.0).powi(4) / den, (p + 1.0).powi(4) / den),
                (-2.0 / q4, 2.0 * p.powi(4) / q4),
            )
        }
        CurveId::X => {
            let p2 = t * t;
            let den = 1.0 + t * 11.0 - p2;
            if den.v == 0.0 {
                return singular(id, p);
            }
            let l = (1.0 - p2) / (1.0 + p2);
            // two equivalent forms; the one with the smaller correction
            // keeps the nearby branch endpoint cancellation-free
            let r1 = t * 2.0 * (t + 2.0).powi(5) / ((1.0 + p2) * den * den); // 1 - R
            let r2 = 2.0 * (1.0 - t * 2.0).powi(5) / ((1.0 + p2) * den * den); // R + 1
            let r = if r2.v.abs() < r1.v.abs() { r2 - 1.0 } else { 1.0 - r1 };
            point(
                l,
                r,
                sqrt_opt((t + 2.0) * (1.0 - t * 2.0) / (den * 2.0)),
                (2.0 * p * p / (1.0 + p * p), 2.0 / (1.0 + p * p)),
                (r1.v, r2.v),
            )
        }
    };
    let pt = pt?;
    if !pt.l.is_finite() || !pt.r.is_finite() {
        return singular(id, p);
    }
    Ok(pt)
}

fn point(
    l: DualScalar,
    r: DualScalar,
    a: Option<DualScalar>,
    l_comp: (f64, f64),
    r_comp: (f64, f64),
) -> Result<CurvePoint> {
    Ok(CurvePoint { l, r, a, l_comp, r_comp })
}

/// L of the signature-6/3 unprimed curves through whichever of its two
/// displayed forms keeps the distance to the nearer of +-1 free of
/// cancellation.
fn sextic_l(p2: DualScalar, t: DualScalar) -> (DualScalar, (f64, f64)) {
    let r1 = 54.0 * (p2 - 1.0) / (p2 - 3.0).powi(3); // 1 - L
    let r2 = 2.0 * t.powi(4) * (p2 - 9.0) / (p2 - 3.0).powi(3); // L + 1
    let l = if r2.v.abs() < r1.v.abs() { r2 - 1.0 } else { 1.0 - r1 };
    (l, (r1.v, r2.v))
}

/// Same for the primed curves.
fn sextic_l_primed(p2: DualScalar, t: DualScalar) -> (DualScalar, (f64, f64)) {
    let r1 = 54.0 * (p2 - 1.0).powi(2) / (p2 + 3.0).powi(3);
    let r2 = 2.0 * t.powi(2) * (p2 - 9.0).powi(2) / (p2 + 3.0).powi(3);
    let l = if r2.v.abs() < r1.v.abs() { r2 - 1.0 } else { 1.0 - r1 };
    (l, (r1.v, r2.v))
}

/// R of the signature-3 curves through whichever sign form is stable.
fn cubic_r(t: DualScalar) -> (DualScalar, (f64, f64)) {
    let r1 = (t - 1.0) * (t + 3.0).powi(3) / (t.powi(3) * 8.0); // 1 - R
    let r2 = (t + 1.0) * (3.0 - t).powi(3) / (t.powi(3) * 8.0); // R + 1
    let r = if r2.v.abs() < r1.v.abs() { r2 - 1.0 } else { 1.0 - r1 };
    (r, (r1.v, r2.v))
}

fn singular(id: CurveId, p: f64) -> Result<CurvePoint> {
    Err(Error::Domain(format!(
        "curve {} is singular at p = {p}",
        id.name()
    )))
}

/// Value of the implicit polynomial at (L, R); zero on the curve.
pub fn implicit_residual(id: CurveId, l: f64, r: f64) -> Result<f64> {
    let l2 = l * l;
    let r2 = r * r;
    Ok(match id {
        CurveId::C4 => l * r2 + (r2 - 2.0),
        CurveId::C4p => (l - 1.0) * (r + 3.0) * (r + 3.0) + 2.0 * (r - 1.0) * (r - 1.0),
        CurveId::C6 => (l2 - 1.0) * (4.0 * r2 - 3.0).powi(3) + 27.0 * (r2 - 1.0),
        CurveId::C6p => (l2 - 1.0) * (r2 + 3.0).powi(3) + 27.0 * (r2 - 1.0) * (r2 - 1.0),
        CurveId::C3 => {
            27.0 * (4.0 * l - 5.0).powi(3) * (r2 - 1.0)
                - 4.0 * (l - 1.0) * (l + 1.0).powi(3) * (4.0 * r2 - 3.0).powi(3)
        }
        CurveId::C3p => {
            27.0 * (4.0 * l - 5.0).powi(3) * (r2 - 1.0) * (r2 - 1.0)
                - 4.0 * (l - 1.0) * (l + 1.0).powi(3) * (r2 + 3.0).powi(3)
        }
        CurveId::M => (l + 1.0) * (r + 1.0) - 4.0,
        CurveId::W2 => (l2 - 1.0) * (r2 - 1.0) - 1.0,
        CurveId::W4 => 16.0 * (l2 - 1.0) * (r2 - 1.0) * (4.0 * l2 + 4.0 * r2 - 5.0) - 1.0,
        CurveId::X => {
            return Err(Error::UnsupportedCurve(
                "X (parametrization only; no implicit polynomial)".into(),
            ))
        }
    })
}

/// Monomial mass of the implicit polynomial at (L, R): the same
/// expression evaluated with every sign made positive, an exact sum of
/// the absolute monomial values. Residuals are meaningful relative to
/// this, not to the (possibly cancelling) top-level pieces.
pub fn implicit_scale(id: CurveId, l: f64, r: f64) -> Result<f64> {
    let l = l.abs();
    let r = r.abs();
    let l2 = l * l;
    let r2 = r * r;
    let v = match id {
        CurveId::C4 => l * r2 + r2 + 2.0,
        CurveId::C4p => (l + 1.0) * (r + 3.0) * (r + 3.0) + 2.0 * (r + 1.0) * (r + 1.0),
        CurveId::C6 => (l2 + 1.0) * (4.0 * r2 + 3.0).powi(3) + 27.0 * (r2 + 1.0),
        CurveId::C6p => (l2 + 1.0) * (r2 + 3.0).powi(3) + 27.0 * (r2 + 1.0) * (r2 + 1.0),
        CurveId::C3 => {
            27.0 * (4.0 * l + 5.0).powi(3) * (r2 + 1.0)
                + 4.0 * (l + 1.0).powi(4) * (4.0 * r2 + 3.0).powi(3)
        }
        CurveId::C3p => {
            27.0 * (4.0 * l + 5.0).powi(3) * (r2 + 1.0) * (r2 + 1.0)
                + 4.0 * (l + 1.0).powi(4) * (r2 + 3.0).powi(3)
        }
        CurveId::M => (l + 1.0) * (r + 1.0) + 4.0,
        CurveId::W2 => (l2 + 1.0) * (r2 + 1.0) + 1.0,
        CurveId::W4 => 16.0 * (l2 + 1.0) * (r2 + 1.0) * (4.0 * l2 + 4.0 * r2 + 5.0) + 1.0,
        CurveId::X => {
            return Err(Error::UnsupportedCurve(
                "X (parametrization only; no implicit polynomial)".into(),
            ))
        }
    };
    Ok(v)
}

fn implicit_terms(id: CurveId, l: f64, r: f64) -> Result<(f64, f64)> {
    let l2 = l * l;
    let r2 = r * r;
    let (terms, value): (Vec<f64>, f64) = match id {
        CurveId::C4 => {
            let t = [l * r2, r2, -2.0];
            (t.to_vec(), t.iter().sum())
        }
        CurveId::C4p => {
            let t = [(l - 1.0) * (r + 3.0) * (r + 3.0), 2.0 * (r - 1.0) * (r - 1.0)];
            (t.to_vec(), t.iter().sum())
        }
        CurveId::C6 => {
            let t = [(l2 - 1.0) * (4.0 * r2 - 3.0).powi(3), 27.0 * (r2 - 1.0)];
            (t.to_vec(), t.iter().sum())
        }
        CurveId::C6p => {
            let t = [(l2 - 1.0) * (r2 + 3.0).powi(3), 27.0 * (r2 - 1.0) * (r2 - 1.0)];
            (t.to_vec(), t.iter().sum())
        }
        CurveId::C3 => {
            let t = [
                27.0 * (4.0 * l - 5.0).powi(3) * (r2 - 1.0),
                -4.0 * (l - 1.0) * (l + 1.0).powi(3) * (4.0 * r2 - 3.0).powi(3),
            ];
            (t.to_vec(), t.iter().sum())
        }
        CurveId::C3p => {
            let t = [
                27.0 * (4.0 * l - 5.0).powi(3) * (r2 - 1.0) * (r2 - 1.0),
                -4.0 * (l - 1.0) * (l + 1.0).powi(3) * (r2 + 3.0).powi(3),
            ];
            (t.to_vec(), t.iter().sum())
        }
        CurveId::M => {
            let t = [(l + 1.0) * (r + 1.0), -4.0];
            (t.to_vec(), t.iter().sum())
        }
        CurveId::W2 => {
            let t = [(l2 - 1.0) * (r2 - 1.0), -1.0];
            (t.to_vec(), t.iter().sum())
        }
        CurveId::W4 => {
            let t = [
                16.0 * (l2 - 1.0) * (r2 - 1.0) * (4.0 * l2 + 4.0 * r2 - 5.0),
                -1.0,
            ];
            (t.to_vec(), t.iter().sum())
        }
        CurveId::X => {
            return Err(Error::UnsupportedCurve(
                "X (parametrization only; no implicit polynomial)".into(),
            ))
        }
    };
    let scale = terms.iter().fold(1.0f64, |m, t| m.max(t.abs()));
    Ok((value, scale))
}

/// Monotone interval rows (the tables of breakpoints and limits).
pub fn interval_rows(id: CurveId) -> &'static [IntervalRow] {
    const C4: &[IntervalRow] = &[
        IntervalRow { p_lo: -INF, p_hi: -1.0, l: (INF, 1.0), r: (0.0, -1.0) },
        IntervalRow { p_lo: -1.0, p_hi: 0.0, l: (1.0, -1.0), r: (-1.0, -INF) },
        IntervalRow { p_lo: 0.0, p_hi: 1.0, l: (-1.0, 1.0), r: (INF, 1.0) },
        IntervalRow { p_lo: 1.0, p_hi: INF, l: (1.0, INF), r: (1.0, 0.0) },
    ];
    const C4P: &[IntervalRow] = &[
        IntervalRow { p_lo: -INF, p_hi: -1.0, l: (-1.0, -INF), r: (-1.0, -3.0) },
        IntervalRow { p_lo: -1.0, p_hi: 0.0, l: (-INF, -1.0), r: (-3.0, -INF) },
        IntervalRow { p_lo: 0.0, p_hi: 1.0, l: (-1.0, 1.0), r: (INF, 1.0) },
        IntervalRow { p_lo: 1.0, p_hi: INF, l: (1.0, -1.0), r: (1.0, -1.0) },
    ];
    const C6: &[IntervalRow] = &[
        IntervalRow { p_lo: -INF, p_hi: -3.0, l: (1.0, -1.0), r: (-INF, -1.0) },
        IntervalRow { p_lo: -3.0, p_hi: -SQRT3, l: (-1.0, -INF), r: (-1.0, -0.866_025_403_784_438_6) },
        IntervalRow { p_lo: -SQRT3, p_hi: -1.0, l: (INF, 1.0), r: (-0.866_025_403_784_438_6, -1.0) },
        IntervalRow { p_lo: -1.0, p_hi: 0.0, l: (1.0, -1.0), r: (-1.0, -INF) },
        IntervalRow { p_lo: 0.0, p_hi: 1.0, l: (-1.0, 1.0), r: (INF, 1.0) },
        IntervalRow { p_lo: 1.0, p_hi: SQRT3, l: (1.0, INF), r: (1.0, 0.866_025_403_784_438_6) },
        IntervalRow { p_lo: SQRT3, p_hi: 3.0, l: (-INF, -1.0), r: (0.866_025_403_784_438_6, 1.0) },
        IntervalRow { p_lo: 3.0, p_hi: INF, l: (-1.0, 1.0), r: (1.0, INF) },
    ];
    const C6P: &[IntervalRow] = &[
        IntervalRow { p_lo: -INF, p_hi: -3.0, l: (1.0, -1.0), r: (INF, 1.0) },
        IntervalRow { p_lo: -3.0, p_hi: -1.0, l: (-1.0, 1.0), r: (1.0, -1.0) },
        IntervalRow { p_lo: -1.0, p_hi: 0.0, l: (1.0, -1.0), r: (-1.0, -INF) },
        IntervalRow { p_lo: 0.0, p_hi: 1.0, l: (-1.0, 1.0), r: (INF, 1.0) },
        IntervalRow { p_lo: 1.0, p_hi: 3.0, l: (1.0, -1.0), r: (1.0, -1.0) },
        IntervalRow { p_lo: 3.0, p_hi: INF, l: (-1.0, 1.0), r: (-1.0, -INF) },
    ];
    const C3: &[IntervalRow] = &[
        IntervalRow { p_lo: -INF, p_hi: -3.0, l: (1.0, -1.0), r: (INF, 1.0) },
        IntervalRow { p_lo: -3.0, p_hi: -SQRT3, l: (-1.0, -INF), r: (1.0, 0.866_025_403_784_438_6) },
        IntervalRow { p_lo: -SQRT3, p_hi: -1.0, l: (INF, 1.0), r: (0.866_025_403_784_438_6, -1.0) },
        IntervalRow { p_lo: -1.0, p_hi: 0.0, l: (1.0, -1.0), r: (-1.0, -INF) },
        IntervalRow { p_lo: 0.0, p_hi: 1.0, l: (-1.0, 1.0), r: (INF, 1.0) },
        IntervalRow { p_lo: 1.0, p_hi: SQRT3, l: (1.0, INF), r: (1.0, -0.866_025_403_784_438_6) },
        IntervalRow { p_lo: SQRT3, p_hi: 3.0, l: (-INF, -1.0), r: (-0.866_025_403_784_438_6, -1.0) },
        IntervalRow { p_lo: 3.0, p_hi: INF, l: (-1.0, 1.0), r: (-1.0, -INF) },
    ];
    const M: &[IntervalRow] = &[
        IntervalRow { p_lo: -INF, p_hi: -1.0, l: (-INF, -3.0), r: (-1.0, -3.0) },
        IntervalRow { p_lo: -1.0, p_hi: 0.0, l: (-3.0, -1.0), r: (-3.0, -INF) },
        IntervalRow { p_lo: 0.0, p_hi: 1.0, l: (-1.0, 1.0), r: (INF, 1.0) },
        IntervalRow { p_lo: 1.0, p_hi: INF, l: (1.0, INF), r: (1.0, -1.0) },
    ];
    const W: &[IntervalRow] = &[
        IntervalRow { p_lo: -INF, p_hi: -1.0, l: (-INF, -1.0), r: (1.0, INF) },
        IntervalRow { p_lo: -1.0, p_hi: 0.0, l: (-1.0, -INF), r: (-INF, -1.0) },
        IntervalRow { p_lo: 0.0, p_hi: 1.0, l: (INF, 1.0), r: (-1.0, -INF) },
        IntervalRow { p_lo: 1.0, p_hi: INF, l: (1.0, INF), r: (INF, 1.0) },
    ];
    const X: &[IntervalRow] = &[
        IntervalRow { p_lo: -INF, p_hi: -2.0, l: (-1.0, -0.6), r: (-1.0, 1.0) },
        IntervalRow { p_lo: -2.0, p_hi: -X_BREAK_NEG, l: (-0.6, 0.983_869_910_099_907_3), r: (1.0, INF) },
        IntervalRow { p_lo: -X_BREAK_NEG, p_hi: 0.0, l: (0.983_869_910_099_907_3, 1.0), r: (INF, 1.0) },
        IntervalRow { p_lo: 0.0, p_hi: 0.5, l: (1.0, 0.6), r: (1.0, -1.0) },
        IntervalRow { p_lo: 0.5, p_hi: X_BREAK_POS, l: (0.6, -0.983_869_910_099_907_3), r: (-1.0, -INF) },
        IntervalRow { p_lo: X_BREAK_POS, p_hi: INF, l: (-0.983_869_910_099_907_3, -1.0), r: (-INF, -1.0) },
    ];
    match id {
        CurveId::C4 => C4,
        CurveId::C4p => C4P,
        CurveId::C6 => C6,
        CurveId::C6p => C6P,
        CurveId::C3 => C3,
        CurveId::C3p => C6P, // same breakpoint table as C6'
        CurveId::M => M,
        CurveId::W2 | CurveId::W4 => W,
        CurveId::X => X,
    }
}

/// Basepoint where the prefactor equals one.
pub fn basepoint(id: CurveId) -> f64 {
    match id {
        CurveId::W2 | CurveId::W4 => 1.0 + std::f64::consts::SQRT_2,
        CurveId::X => 0.0,
        _ => 1.0,
    }
}

/// Declared symmetries with verified (L, R) actions.
pub fn symmetries(id: CurveId) -> Vec<Symmetry> {
    fn neg(p: f64) -> f64 {
        -p
    }
    fn inv(p: f64) -> f64 {
        1.0 / p
    }
    fn three_over(p: f64) -> f64 {
        3.0 / p
    }
    fn neg_three_over(p: f64) -> f64 {
        -3.0 / p
    }
    fn cayley(p: f64) -> f64 {
        (p + 1.0) / (p - 1.0)
    }
    fn neg_inv(p: f64) -> f64 {
        -1.0 / p
    }
    fn act_rneg(l: f64, r: f64) -> (f64, f64) {
        (l, -r)
    }
    fn act_lneg(l: f64, r: f64) -> (f64, f64) {
        (-l, r)
    }
    fn act_swap(l: f64, r: f64) -> (f64, f64) {
        (r, l)
    }
    fn act_bothneg(l: f64, r: f64) -> (f64, f64) {
        (-l, -r)
    }
    fn act_c4p(l: f64, r: f64) -> (f64, f64) {
        (l, 4.0 / (r + 1.0) - 1.0)
    }
    match id {
        CurveId::C4 => vec![Symmetry { name: "p -> -p", p_map: neg, lr_action: act_rneg }],
        CurveId::C4p => vec![Symmetry { name: "p -> 1/p", p_map: inv, lr_action: act_c4p }],
        CurveId::C6 => vec![
            Symmetry { name: "p -> 3/p", p_map: three_over, lr_action: act_lneg },
            Symmetry { name: "p -> -p", p_map: neg, lr_action: act_rneg },
        ],
        CurveId::C6p => vec![
            Symmetry { name: "p -> -3/p", p_map: neg_three_over, lr_action: act_lneg },
            Symmetry { name: "p -> -p", p_map: neg, lr_action: act_rneg },
        ],
        CurveId::C3 | CurveId::C3p => {
            vec![Symmetry { name: "p -> -p", p_map: neg, lr_action: act_rneg }]
        }
        CurveId::M => vec![Symmetry { name: "p -> 1/p", p_map: inv, lr_action: act_swap }],
        CurveId::W2 | CurveId::W4 => vec![
            Symmetry { name: "p -> (p+1)/(p-1)", p_map: cayley, lr_action: act_swap },
            Symmetry { name: "p -> -p", p_map: neg, lr_action: act_lneg },
            Symmetry { name: "p -> 1/p", p_map: inv, lr_action: act_rneg },
        ],
        CurveId::X => vec![Symmetry { name: "p -> -1/p", p_map: neg_inv, lr_action: act_bothneg }],
    }
}

fn bisect_on_row<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    target: f64,
    increasing: bool,
) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let v = f(mid);
        let below = if increasing { v < target } else { v > target };
        if below {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Map an identity's trigonometric parameter (xi on hyperbolic rows,
/// theta on circular ones) to the curve parameter p of that identity's
/// interval row, using the closed-form inversion where one exists and
/// bracketed bisection otherwise.
pub fn trig_parameter(id: CurveId, label: &str, angle: f64) -> Result<f64> {
    let base = label.split('(').next().unwrap_or(label);
    let variant = label
        .rsplit('(')
        .next()
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or("");
    let hyperbolic = matches!(
        (base, variant),
        ("I4" | "I6" | "I3" | "M", "i" | "i-bar") | ("W2" | "W4", _)
    );
    if hyperbolic {
        if !(angle > 0.0 && angle.is_finite()) {
            return Err(Error::Domain(format!("xi must be positive, got {angle}")));
        }
    } else {
        let hi = match (base, variant) {
            ("X", "i") => (4.0f64 / 3.0).atan(),
            ("X", "ii") => (2.0f64 / 11.0).atan(),
            _ => std::f64::consts::PI,
        };
        if !(angle > 0.0 && angle < hi) {
            return Err(Error::Domain(format!(
                "theta must lie in (0, {hi}), got {angle}"
            )));
        }
    }
    let xi = angle;
    let th = angle;
    match (base, variant) {
        ("I4", "i" | "i-bar") => Ok((xi / 2.0).cosh()),
        ("I4", "ii" | "ii-bar") => Ok((th / 2.0).cos()),
        ("I4'", "i" | "i-bar") => {
            let s = (th / 2.0).sin();
            Ok((1.0 + s) / (1.0 - s))
        }
        ("I4'", "ii" | "ii-bar") => {
            let s = (th / 2.0).sin();
            Ok((1.0 - s) / (1.0 + s))
        }
        ("I6", "i" | "i-bar") => {
            let r = (3.0 * (xi / 3.0).sinh() / xi.sinh()).sqrt() * (xi / 3.0).cosh();
            Ok(2.0 * r - (4.0 * r * r - 3.0).sqrt())
        }
        ("I6", "ii" | "ii-bar") => {
            let r = (3.0 * (th / 3.0).sin() / th.sin()).sqrt() * (th / 3.0).cos();
            Ok(2.0 * r - (4.0 * r * r - 3.0).sqrt())
        }
        ("I6'", "i" | "i-bar") => {
            let r = 1.0 - 2.0 * (th / 3.0).sin() / (std::f64::consts::FRAC_PI_6 - th / 3.0).cos();
            Ok(-r + (r * r + 3.0).sqrt())
        }
        ("I6'", "ii" | "ii-bar") => {
            let r = 1.0 + 2.0 * (th / 3.0).sin() / (std::f64::consts::FRAC_PI_6 + th / 3.0).cos();
            Ok(-r + (r * r + 3.0).sqrt())
        }
        ("I3", "i" | "i-bar") => bisect_on_row(
            |p| curve_point(CurveId::C3, p).map(|c| c.l.v).unwrap_or(f64::MAX),
            1.0 + 1e-15,
            SQRT3 - 1e-15,
            xi.cosh(),
            true,
        ),
        ("I3", "ii" | "ii-bar") => bisect_on_row(
            |p| curve_point(CurveId::C3, p).map(|c| c.l.v).unwrap_or(-1.0),
            1e-15,
            1.0,
            th.cos(),
            true,
        ),
        ("I3'", "i" | "i-bar") => bisect_on_row(
            |p| curve_point(CurveId::C3p, p).map(|c| c.l.v).unwrap_or(-1.0),
            1.0,
            3.0,
            th.cos(),
            false,
        ),
        ("I3'", "ii" | "ii-bar") => bisect_on_row(
            |p| curve_point(CurveId::C3p, p).map(|c| c.l.v).unwrap_or(-1.0),
            1e-15,
            1.0,
            th.cos(),
            true,
        ),
        ("M", "i" | "i-bar") => Ok((1.0 + xi.cosh()) / 2.0),
        ("M", "ii" | "ii-bar") => Ok((1.0 + th.cos()) / 2.0),
        ("W2", "i" | "i-bar") => Ok(xi.exp()),
        ("W4", "i" | "i-bar") => Ok(1.0 / (xi / 4.0).tanh()),
        ("X", "i") => Ok((th / 2.0).tan()),
        ("X", "ii") => Ok(-(th / 2.0).tan()),
        _ => Err(Error::Domain(format!("unknown identity label {label}"))),
    }
    .and_then(|p| {
        // the stated curve must reproduce the requested argument
        // (cosh xi, or coth xi on the quartic Whipple curve)
        let want = if base == "W4" {
            1.0 / xi.tanh()
        } else if hyperbolic {
            xi.cosh()
        } else {
            th.cos()
        };
        let got = curve_point(id, p)?.l.v;
        if (got - want).abs() > 1e-10 * (1.0 + want.abs()) {
            return Err(Error::Internal(format!(
                "trig parameter inversion drifted: L(p) = {got}, expected {want}"
            )));
        }
        Ok(p)
    })
}

/// Registry dump used by the CLI `table` command.
pub fn registry_json(filter: Option<CurveId>) -> serde_json::Value {
    let dump = |id: CurveId| {
        let (l_str, r_str, a_str, implicit): (&str, &str, &str, Option<&str>) = match id {
            CurveId::C4 => ("-1 + 2 p^2", "1/p", "sqrt(1/p)", Some("L R^2 + (R^2 - 2) = 0")),
            CurveId::C4p => (
                "1 - 2 (p-1)^2/(p+1)^2",
                "-1 + 2/p",
                "sqrt((1+p)/(2p))",
                Some("(L - 1)(R + 3)^2 + 2 (R - 1)^2 = 0"),
            ),
            CurveId::C6 => (
                "1 - 54 (p^2-1)/(p^2-3)^3",
                "(3 + p^2)/(4p)",
                "sqrt((3 - p^2)/(2p))",
                Some("(L^2 - 1)(4 R^2 - 3)^3 + 27 (R^2 - 1) = 0"),
            ),
            CurveId::C6p => (
                "1 - 54 (p^2-1)^2/(p^2+3)^3",
                "(3 - p^2)/(2p)",
                "sqrt((3 + p^2)/(4p))",
                Some("(L^2 - 1)(R^2 + 3)^3 + 27 (R^2 - 1)^2 = 0"),
            ),
            CurveId::C3 => (
                "1 - 54 (p^2-1)/(p^2-3)^3",
                "1 - (p-1)(3+p)^3/(8 p^3)",
                "(3 - p^2)/(2 p^(3/2))",
                Some("27 (4L - 5)^3 (R^2 - 1) - 4 (L - 1)(L + 1)^3 (4 R^2 - 3)^3 = 0"),
            ),
            CurveId::C3p => (
                "1 - 54 (p^2-1)^2/(p^2+3)^3",
                "1 - (p-1)(3+p)^3/(8 p^3)",
                "(3 + p^2)/(4 p^(3/2))",
                Some("27 (4L - 5)^3 (R^2 - 1)^2 - 4 (L - 1)(L + 1)^3 (R^2 + 3)^3 = 0"),
            ),
            CurveId::M => ("-1 + 2p", "-1 + 2/p", "sqrt(1/p)", Some("(L + 1)(R + 1) - 4 = 0")),
            CurveId::W2 => (
                "(p^2 + 1)/(2p)",
                "(p^2 + 1)/(p^2 - 1)",
                "sqrt(2p/(p^2 - 1))",
                Some("(L^2 - 1)(R^2 - 1) - 1 = 0"),
            ),
            CurveId::W4 => (
                "(p^4 + 6 p^2 + 1)/(4 p (p^2 + 1))",
                "(p^4 + 1)/(p^4 - 1)",
                "sqrt(2p/(p^2 - 1))",
                Some("16 (L^2 - 1)(R^2 - 1)(4 L^2 + 4 R^2 - 5) - 1 = 0"),
            ),
            CurveId::X => (
                "(1 - p^2)/(1 + p^2)",
                "1 - 2 p (2 + p)^5 / ((1 + p^2)(1 + 11p - p^2)^2)",
                "sqrt((2 + p)(1 - 2p)/(2 (1 + 11p - p^2)))",
                None,
            ),
        };
        json!({
            "id": id.name(),
            "L": l_str,
            "R": r_str,
            "A": a_str,
            "implicit": implicit,
            "basepoint_p": basepoint(id),
            "symmetries": symmetries(id).iter().map(|s| s.name).collect::<Vec<_>>(),
            "rows": interval_rows(id).iter().map(|row| json!({
                "p": [row.p_lo, row.p_hi],
                "L": [row.l.0, row.l.1],
                "R": [row.r.0, row.r.1],
            })).collect::<Vec<_>>(),
        })
    };
    match filter {
        Some(id) => dump(id),
        None => json!(ALL_CURVES.iter().map(|&id| dump(id)).collect::<Vec<_>>()),
    }
}
