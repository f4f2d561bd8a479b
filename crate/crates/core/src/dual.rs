use std::ops::{Add, Div, Mul, Neg, Sub};

/// First-order dual number: a value `v` together with the derivative `d`
/// of that value with respect to one declared evaluation parameter.
///
/// Arithmetic propagates derivatives by the product/chain rules, so a
/// computation built from these carries its own first derivative along.
/// Only first order is tracked; second derivatives are obtained elsewhere
/// by closing against the relevant differential equation, never by
/// nesting duals.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualScalar {
    pub v: f64,
    pub d: f64,
}

impl DualScalar {
    pub const fn new(v: f64, d: f64) -> Self {
        Self { v, d }
    }

    /// A constant: derivative zero.
    pub const fn constant(v: f64) -> Self {
        Self { v, d: 0.0 }
    }

    /// The evaluation parameter itself: derivative one.
    pub const fn variable(v: f64) -> Self {
        Self { v, d: 1.0 }
    }

    pub fn is_finite(self) -> bool {
        self.v.is_finite() && self.d.is_finite()
    }

    pub fn recip(self) -> Self {
        Self::new(1.0 / self.v, -self.d / (self.v * self.v))
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        Self::new(s, self.d / (2.0 * s))
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        Self::new(e, self.d * e)
    }

    pub fn ln(self) -> Self {
        Self::new(self.v.ln(), self.d / self.v)
    }

    /// Real power with constant exponent.
    pub fn powf(self, e: f64) -> Self {
        let p = self.v.powf(e);
        Self::new(p, e * self.v.powf(e - 1.0) * self.d)
    }

    pub fn powi(self, n: i32) -> Self {
        let p = self.v.powi(n);
        Self::new(p, f64::from(n) * self.v.powi(n - 1) * self.d)
    }

    pub fn sin(self) -> Self {
        Self::new(self.v.sin(), self.d * self.v.cos())
    }

    pub fn cos(self) -> Self {
        Self::new(self.v.cos(), -self.d * self.v.sin())
    }

    pub fn tan(self) -> Self {
        let c = self.v.cos();
        Self::new(self.v.tan(), self.d / (c * c))
    }

    pub fn sinh(self) -> Self {
        Self::new(self.v.sinh(), self.d * self.v.cosh())
    }

    pub fn cosh(self) -> Self {
        Self::new(self.v.cosh(), self.d * self.v.sinh())
    }

    pub fn tanh(self) -> Self {
        let c = self.v.cosh();
        Self::new(self.v.tanh(), self.d / (c * c))
    }
}

impl Add for DualScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.v + o.v, self.d + o.d)
    }
}

impl Sub for DualScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.v - o.v, self.d - o.d)
    }
}

impl Mul for DualScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.v * o.v, self.d * o.v + self.v * o.d)
    }
}

impl Div for DualScalar {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Self::new(self.v / o.v, (self.d * o.v - self.v * o.d) / (o.v * o.v))
    }
}

impl Neg for DualScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.v, -self.d)
    }
}

impl Add<f64> for DualScalar {
    type Output = Self;
    fn add(self, o: f64) -> Self {
        Self::new(self.v + o, self.d)
    }
}

impl Sub<f64> for DualScalar {
    type Output = Self;
    fn sub(self, o: f64) -> Self {
        Self::new(self.v - o, self.d)
    }
}

impl Mul<f64> for DualScalar {
    type Output = Self;
    fn mul(self, o: f64) -> Self {
        Self::new(self.v * o, self.d * o)
    }
}

impl Div<f64> for DualScalar {
    type Output = Self;
    fn div(self, o: f64) -> Self {
        Self::new(self.v / o, self.d / o)
    }
}

impl Mul<DualScalar> for f64 {
    type Output = DualScalar;
    fn mul(self, o: DualScalar) -> DualScalar {
        DualScalar::new(self * o.v, self * o.d)
    }
}

impl Sub<DualScalar> for f64 {
    type Output = DualScalar;
    fn sub(self, o: DualScalar) -> DualScalar {
        DualScalar::new(self - o.v, -o.d)
    }
}

impl Add<DualScalar> for f64 {
    type Output = DualScalar;
    fn add(self, o: DualScalar) -> DualScalar {
        DualScalar::new(self + o.v, o.d)
    }
}

impl Div<DualScalar> for f64 {
    type Output = DualScalar;
    fn div(self, o: DualScalar) -> DualScalar {
        DualScalar::constant(self) / o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fd<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
        let h = 1e-7;
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn product_rule_is_exact_in_fp() {
        let x = DualScalar::new(1.3, 0.7);
        let y = DualScalar::new(-0.4, 2.1);
        let p = x * y;
        assert_eq!(p.d, x.d * y.v + x.v * y.d);
    }

    #[test]
    fn composed_elementary_chain_matches_finite_differences() {
        // f(t) = exp(sin t) / sqrt(1 + t^2)
        let f = |t: f64| t.sin().exp() / (1.0 + t * t).sqrt();
        for &t in &[0.1, 0.5, 1.2, 2.7] {
            let x = DualScalar::variable(t);
            let y = x.sin().exp() / (1.0 + x * x).sqrt();
            assert!((y.v - f(t)).abs() < 1e-14);
            assert!(
                (y.d - fd(f, t)).abs() < 1e-6 * (1.0 + y.d.abs()),
                "t={t}: {} vs fd {}",
                y.d,
                fd(f, t)
            );
        }
    }

    proptest! {
        #[test]
        fn chain_rule_property(t in 0.05f64..2.5) {
            // g(t) = tanh(cosh t) + ln(1 + exp(-t))
            let g = |t: f64| t.cosh().tanh() + (1.0 + (-t).exp()).ln();
            let x = DualScalar::variable(t);
            let y = x.cosh().tanh() + (1.0 + (-x).exp()).ln();
            prop_assert!((y.v - g(t)).abs() < 1e-13);
            prop_assert!((y.d - fd(g, t)).abs() < 1e-6 * (1.0 + y.d.abs()));
        }
    }
}
