//! Forward-mode first-order jets in the four holonomic coordinates.

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

/// A point `(u1, u2, u3, u4)` of the coordinate chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub u: [f64; 4],
}

impl Point {
    pub fn new(u: [f64; 4]) -> Self {
        Point { u }
    }

    /// Coordinate `u^k`, `k` in 1..=4.
    pub fn coord(&self, k: usize) -> f64 {
        assert!((1..=4).contains(&k), "coordinate index {k} outside 1..=4");
        self.u[k - 1]
    }

    pub fn is_finite(&self) -> bool {
        self.u.iter().all(|x| x.is_finite())
    }

    /// Same point with `u^k` shifted by `h`.
    pub fn shifted(&self, k: usize, h: f64) -> Point {
        let mut u = self.u;
        u[k - 1] += h;
        Point { u }
    }
}

/// Value plus the four partials `∂/∂u^1 .. ∂/∂u^4`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Jet1 {
    pub value: f64,
    pub partials: [f64; 4],
}

impl Jet1 {
    pub const fn constant(value: f64) -> Self {
        Jet1 { value, partials: [0.0; 4] }
    }

    pub const fn zero() -> Self {
        Self::constant(0.0)
    }

    pub const fn one() -> Self {
        Self::constant(1.0)
    }

    /// Partial derivative along `u^k`, `k` in 1..=4.
    pub fn d(&self, k: usize) -> f64 {
        self.partials[k - 1]
    }

    fn chain(self, value: f64, slope: f64) -> Self {
        let mut partials = self.partials;
        for p in &mut partials {
            *p *= slope;
        }
        Jet1 { value, partials }
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain(e, e)
    }

    pub fn sin(self) -> Self {
        self.chain(self.value.sin(), self.value.cos())
    }

    pub fn cos(self) -> Self {
        self.chain(self.value.cos(), -self.value.sin())
    }

    pub fn ln_abs(self) -> Result<Self, CoreError> {
        if self.value == 0.0 {
            return Err(CoreError::Domain("logarithm of zero jet".into()));
        }
        Ok(self.chain(self.value.abs().ln(), 1.0 / self.value))
    }

    /// Division that reports a zero denominator instead of producing infinities.
    pub fn checked_div(self, rhs: Jet1) -> Result<Self, CoreError> {
        if rhs.value == 0.0 {
            return Err(CoreError::Domain("division by a jet with zero value".into()));
        }
        Ok(self / rhs)
    }

    pub fn scale(self, s: f64) -> Self {
        self.chain(self.value * s, s)
    }
}

/// Independent-variable jet for coordinate `k` (1..=4) at `p`.
pub fn jet_lift(p: &Point, k: usize) -> Jet1 {
    let mut partials = [0.0; 4];
    partials[k - 1] = 1.0;
    Jet1 { value: p.coord(k), partials }
}

/// All four coordinate jets at `p`.
pub fn lift_all(p: &Point) -> [Jet1; 4] {
    [jet_lift(p, 1), jet_lift(p, 2), jet_lift(p, 3), jet_lift(p, 4)]
}

impl Add for Jet1 {
    type Output = Jet1;
    fn add(self, rhs: Jet1) -> Jet1 {
        let mut partials = self.partials;
        for (p, q) in partials.iter_mut().zip(rhs.partials) {
            *p += q;
        }
        Jet1 { value: self.value + rhs.value, partials }
    }
}

impl Sub for Jet1 {
    type Output = Jet1;
    fn sub(self, rhs: Jet1) -> Jet1 {
        self + (-rhs)
    }
}

impl Neg for Jet1 {
    type Output = Jet1;
    fn neg(self) -> Jet1 {
        self.scale(-1.0)
    }
}

impl Mul for Jet1 {
    type Output = Jet1;
    fn mul(self, rhs: Jet1) -> Jet1 {
        let mut partials = [0.0; 4];
        for (k, p) in partials.iter_mut().enumerate() {
            *p = self.value * rhs.partials[k] + rhs.value * self.partials[k];
        }
        Jet1 { value: self.value * rhs.value, partials }
    }
}

impl Div for Jet1 {
    type Output = Jet1;
    fn div(self, rhs: Jet1) -> Jet1 {
        let inv = 1.0 / rhs.value;
        let value = self.value * inv;
        let mut partials = [0.0; 4];
        for (k, p) in partials.iter_mut().enumerate() {
            *p = (self.partials[k] - value * rhs.partials[k]) * inv;
        }
        Jet1 { value, partials }
    }
}

impl Add<f64> for Jet1 {
    type Output = Jet1;
    fn add(self, rhs: f64) -> Jet1 {
        Jet1 { value: self.value + rhs, partials: self.partials }
    }
}

impl Sub<f64> for Jet1 {
    type Output = Jet1;
    fn sub(self, rhs: f64) -> Jet1 {
        self + (-rhs)
    }
}

impl Mul<f64> for Jet1 {
    type Output = Jet1;
    fn mul(self, rhs: f64) -> Jet1 {
        self.scale(rhs)
    }
}

impl Mul<Jet1> for f64 {
    type Output = Jet1;
    fn mul(self, rhs: Jet1) -> Jet1 {
        rhs.scale(self)
    }
}

impl Add<Jet1> for f64 {
    type Output = Jet1;
    fn add(self, rhs: Jet1) -> Jet1 {
        rhs + self
    }
}

impl Sub<Jet1> for f64 {
    type Output = Jet1;
    fn sub(self, rhs: Jet1) -> Jet1 {
        -rhs + self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn lift_examples() {
        let j = jet_lift(&Point::new([1.0, 0.0, 0.0, 2.0]), 4);
        assert_eq!(j.value, 2.0);
        assert_eq!(j.partials, [0.0, 0.0, 0.0, 1.0]);

        let e = jet_lift(&Point::new([0.0; 4]), 1).exp();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.partials, [1.0, 0.0, 0.0, 0.0]);

        let s = jet_lift(&Point::new([0.0, 0.0, 0.0, FRAC_PI_2]), 4).sin();
        assert_eq!(s.value, 1.0);
        assert!(s.partials.iter().all(|p| p.abs() < 1e-16));
    }

    #[test]
    fn exp_chain_rule() {
        let j = Jet1 { value: 0.0, partials: [0.0, 0.0, 0.0, 2.0] }.exp();
        assert_eq!(j.value, 1.0);
        assert_eq!(j.partials, [0.0, 0.0, 0.0, 2.0]);
    }

    #[test]
    fn exp_2u4_matches_central_difference() {
        let p = Point::new([0.0, 0.0, 0.0, 0.3]);
        let j = (2.0 * jet_lift(&p, 4)).exp();
        let h = 1e-6;
        let fd = ((2.0 * (0.3f64 + h)).exp() - (2.0 * (0.3f64 - h)).exp()) / (2.0 * h);
        assert!((j.d(4) - fd).abs() <= 1e-8 * fd.abs());
        assert!((j.d(4) - 2.0 * 0.6f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn division_by_zero_is_domain_error() {
        assert!(Jet1::one().checked_div(Jet1::zero()).is_err());
        assert!(Jet1::zero().ln_abs().is_err());
    }

    fn jet() -> impl Strategy<Value = Jet1> {
        (-2.0..2.0f64, prop::array::uniform4(-2.0..2.0f64)).prop_map(|(value, partials)| Jet1 { value, partials })
    }

    proptest! {
        #[test]
        fn leibniz_rule(a in jet(), b in jet()) {
            let c = a * b;
            for k in 0..4 {
                let want = a.value * b.partials[k] + b.value * a.partials[k];
                prop_assert!((c.partials[k] - want).abs() <= 1e-15 * (1.0 + want.abs()));
            }
        }

        #[test]
        fn pythagorean_identity(a in jet()) {
            let s = a.sin();
            let c = a.cos();
            let one = s * s + c * c;
            prop_assert!((one.value - 1.0).abs() < 1e-15);
            for p in one.partials {
                prop_assert!(p.abs() < 1e-14);
            }
        }

        #[test]
        fn elementary_ops_match_finite_differences(
            u in prop::array::uniform4(-1.0..1.0f64),
            op in 0usize..7,
        ) {
            let f = |x: [Jet1; 4]| -> Jet1 {
                let (a, b) = (x[0] * x[1] + x[2], x[3] - x[0] * 0.5);
                match op {
                    0 => a + b,
                    1 => a - b,
                    2 => a * b,
                    3 => a / (b * b + 1.5),
                    4 => a.exp(),
                    5 => b.sin(),
                    _ => a.cos(),
                }
            };
            let p = Point::new(u);
            let j = f(lift_all(&p));
            let h = 1e-6;
            for k in 1..=4 {
                let plus = f(lift_all(&p.shifted(k, h))).value;
                let minus = f(lift_all(&p.shifted(k, -h))).value;
                let fd = (plus - minus) / (2.0 * h);
                prop_assert!((j.d(k) - fd).abs() <= 1e-6 * (1.0 + fd.abs()));
            }
        }
    }
}
