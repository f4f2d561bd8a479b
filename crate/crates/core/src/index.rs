//! Function kinds and the (degree, order) index with its classification.

use crate::error::{Error, Result};
use crate::gamma::near_integer;

/// The six supported function families.
///
/// Legendre kinds are defined on (1, inf), Ferrers kinds on (-1, 1).
/// `FerrersPbar` is the first Ferrers kind evaluated at the negated
/// argument; `LegendrePtilde` is the second-kind companion combination
/// used on Legendre-side transformation left sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    LegendreP,
    LegendreQhat,
    FerrersP,
    FerrersQ,
    FerrersPbar,
    LegendrePtilde,
}

impl FunctionKind {
    pub fn is_legendre_domain(self) -> bool {
        matches!(
            self,
            FunctionKind::LegendreP | FunctionKind::LegendreQhat | FunctionKind::LegendrePtilde
        )
    }

    /// Second-kind functions carry the Gamma(nu + mu + 1) normalization.
    pub fn is_second_kind(self) -> bool {
        matches!(self, FunctionKind::LegendreQhat | FunctionKind::FerrersQ)
    }

    pub fn check_point(self, x: f64) -> Result<()> {
        let ok = if self.is_legendre_domain() {
            x > 1.0
        } else {
            (-1.0..1.0).contains(&x) && x > -1.0
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{self:?} is defined on {} but was evaluated at {x}",
                if self.is_legendre_domain() { "(1, inf)" } else { "(-1, 1)" }
            )))
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::LegendreP => "legendre-p",
            FunctionKind::LegendreQhat => "legendre-qhat",
            FunctionKind::FerrersP => "ferrers-p",
            FunctionKind::FerrersQ => "ferrers-q",
            FunctionKind::FerrersPbar => "ferrers-pbar",
            FunctionKind::LegendrePtilde => "legendre-ptilde",
        }
    }
}

/// Degree/order classification with respect to the elliptic-route
/// signatures: half-odd degrees are `Classical`, degrees an integer
/// away from +-1/r (r = 3, 4, 6) are `Fractional`, everything else is
/// `General`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// nu = n - 1/2 for integer n.
    Classical { n: i64 },
    /// nu = n + sign/r with r in {3, 4, 6}, sign = +-1.
    Fractional { r: u8, n: i64, sign: i8 },
    General,
}

const RATIONAL_TOL: f64 = 1e-12;

/// Degree and order of a Legendre/Ferrers function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreIndex {
    nu: f64,
    mu: f64,
}

impl LegendreIndex {
    pub fn new(nu: f64, mu: f64) -> Result<Self> {
        if !nu.is_finite() || !mu.is_finite() {
            return Err(Error::Domain(format!("non-finite index ({nu}, {mu})")));
        }
        Ok(Self { nu, mu })
    }

    /// Constructor that enforces the second-kind normalization rule:
    /// for Q-like kinds, nu + mu must not be a negative integer.
    pub fn for_kind(kind: FunctionKind, nu: f64, mu: f64) -> Result<Self> {
        let idx = Self::new(nu, mu)?;
        if kind.is_second_kind() {
            if let Some(n) = near_integer(nu + mu, RATIONAL_TOL) {
                if n < 0 {
                    return Err(Error::UnsupportedIndex(format!(
                        "{}: nu + mu = {} is a negative integer; the normalization is undefined there",
                        kind.name(),
                        nu + mu
                    )));
                }
            }
        }
        Ok(idx)
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn integer_order(&self) -> Option<i64> {
        near_integer(self.mu, RATIONAL_TOL)
    }

    /// Classify the degree from the reduced denominator of its
    /// fractional part (resolved over a common denominator of 12).
    pub fn classification(&self) -> Classification {
        let twelve = self.nu * 12.0;
        let Some(k) = near_integer(twelve, RATIONAL_TOL * 12.0) else {
            return Classification::General;
        };
        let res = k.rem_euclid(12);
        let base = (k - res) / 12; // floor(nu) as integer multiple
        match res {
            6 => Classification::Classical { n: base + 1 }, // nu = (base+1) - 1/2
            3 => Classification::Fractional { r: 4, n: base, sign: 1 }, // base + 1/4
            9 => Classification::Fractional { r: 4, n: base + 1, sign: -1 }, // (base+1) - 1/4
            4 => Classification::Fractional { r: 3, n: base, sign: 1 },
            8 => Classification::Fractional { r: 3, n: base + 1, sign: -1 },
            2 => Classification::Fractional { r: 6, n: base, sign: 1 },
            10 => Classification::Fractional { r: 6, n: base + 1, sign: -1 },
            _ => Classification::General, // integers (0) and twelfths
        }
    }

    /// True when the elliptic route applies: degree in Z +- 1/r
    /// (r = 2, 3, 4, 6) and integer order.
    pub fn elliptic_reducible(&self) -> bool {
        self.integer_order().is_some()
            && !matches!(self.classification(), Classification::General)
    }
}

/// Build an index from an exact rational degree (used by the CLI so the
/// classification never depends on float sniffing).
pub fn index_from_rational(
    kind: FunctionKind,
    nu_num: i64,
    nu_den: i64,
    mu_num: i64,
    mu_den: i64,
) -> Result<LegendreIndex> {
    if nu_den == 0 || mu_den == 0 {
        return Err(Error::Domain("rational index with zero denominator".into()));
    }
    let g1 = gcd(nu_num.unsigned_abs(), nu_den.unsigned_abs());
    let den = (nu_den.unsigned_abs() / g1) as i64;
    if ![1, 2, 3, 4, 6].contains(&den) {
        // Still a valid index, just not elliptic-reducible.
    }
    LegendreIndex::for_kind(
        kind,
        nu_num as f64 / nu_den as f64,
        mu_num as f64 / mu_den as f64,
    )
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_covers_all_signatures() {
        let c = |nu: f64| LegendreIndex::new(nu, 0.0).unwrap().classification();
        assert_eq!(c(-0.5), Classification::Classical { n: 0 });
        assert_eq!(c(2.5), Classification::Classical { n: 3 });
        assert_eq!(c(-0.25), Classification::Fractional { r: 4, n: 0, sign: -1 });
        assert_eq!(c(0.25), Classification::Fractional { r: 4, n: 0, sign: 1 });
        assert_eq!(c(-1.0 / 3.0), Classification::Fractional { r: 3, n: 0, sign: -1 });
        assert_eq!(c(2.0 + 1.0 / 3.0), Classification::Fractional { r: 3, n: 2, sign: 1 });
        assert_eq!(c(-1.0 / 6.0), Classification::Fractional { r: 6, n: 0, sign: -1 });
        assert_eq!(c(-3.0 - 1.0 / 6.0), Classification::Fractional { r: 6, n: -3, sign: -1 });
        assert_eq!(c(5.0 / 6.0), Classification::Fractional { r: 6, n: 1, sign: -1 });
        assert_eq!(c(1.0), Classification::General);
        assert_eq!(c(0.3), Classification::General);
        assert_eq!(c(1.0 / 12.0), Classification::General);
    }

    #[test]
    fn second_kind_normalization_guard() {
        assert!(LegendreIndex::for_kind(FunctionKind::LegendreQhat, -1.5, -0.5).is_err());
        // the half-order family at negative half-odd degrees is rejected
        // too (defined only by a limiting argument)
        assert!(LegendreIndex::for_kind(FunctionKind::LegendreQhat, -1.5, 0.5).is_err());
        assert!(LegendreIndex::for_kind(FunctionKind::LegendreQhat, -1.5, 2.5).is_ok());
        assert!(LegendreIndex::for_kind(FunctionKind::LegendreQhat, 0.5, -0.5).is_ok());
        assert!(LegendreIndex::for_kind(FunctionKind::FerrersQ, -2.0, 1.0).is_err());
        assert!(LegendreIndex::for_kind(FunctionKind::LegendreP, -1.5, -0.5).is_ok());
    }

    #[test]
    fn domain_checks() {
        assert!(FunctionKind::LegendreP.check_point(1.5).is_ok());
        assert!(FunctionKind::LegendreP.check_point(0.5).is_err());
        assert!(FunctionKind::FerrersP.check_point(0.5).is_ok());
        assert!(FunctionKind::FerrersP.check_point(-1.0).is_err());
        assert!(FunctionKind::FerrersQ.check_point(1.2).is_err());
    }
}
