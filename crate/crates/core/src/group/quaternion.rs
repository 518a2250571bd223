//! Exact unit quaternions with coordinates in `Q(√2, √5)`.
//!
//! Used to close the binary polyhedral groups without any floating tolerance.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};

/// `a + b√2 + c√5 + d√10` with rational coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Biquadratic(pub [Rational64; 4]);

impl Biquadratic {
    pub fn rational(r: Rational64) -> Self {
        Self([r, Rational64::zero(), Rational64::zero(), Rational64::zero()])
    }

    pub fn int(v: i64) -> Self {
        Self::rational(Rational64::from_integer(v))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(Rational64::new(n, d))
    }

    pub fn sqrt2() -> Self {
        let z = Rational64::zero();
        Self([z, Rational64::one(), z, z])
    }

    pub fn sqrt5() -> Self {
        let z = Rational64::zero();
        Self([z, z, Rational64::one(), z])
    }

    pub fn scale(self, r: Rational64) -> Self {
        Self(self.0.map(|c| c * r))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_f64(self) -> f64 {
        let f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        f(self.0[0]) + f(self.0[1]) * 2f64.sqrt() + f(self.0[2]) * 5f64.sqrt() + f(self.0[3]) * 10f64.sqrt()
    }
}

impl Add for Biquadratic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
            self.0[3] + rhs.0[3],
        ])
    }
}

impl Neg for Biquadratic {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

impl Sub for Biquadratic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for Biquadratic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = rhs.0;
        let r = Rational64::from_integer;
        // √2√2 = 2, √5√5 = 5, √10√10 = 10, √2√5 = √10, √2√10 = 2√5, √5√10 = 5√2
        Self([
            a0 * b0 + r(2) * a1 * b1 + r(5) * a2 * b2 + r(10) * a3 * b3,
            a0 * b1 + a1 * b0 + r(5) * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + r(2) * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ])
    }
}

/// `w + x·i + y·j + z·k`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub w: Biquadratic,
    pub x: Biquadratic,
    pub y: Biquadratic,
    pub z: Biquadratic,
}

impl Quaternion {
    pub fn new(w: Biquadratic, x: Biquadratic, y: Biquadratic, z: Biquadratic) -> Self {
        Self { w, x, y, z }
    }

    pub fn one() -> Self {
        let z = Biquadratic::int(0);
        Self::new(Biquadratic::int(1), z, z, z)
    }

    pub fn norm_squared(&self) -> Biquadratic {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn label(&self) -> String {
        format!(
            "({:.4}, {:.4}, {:.4}, {:.4})",
            self.w.to_f64(),
            self.x.to_f64(),
            self.y.to_f64(),
            self.z.to_f64()
        )
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let l = self;
        Self {
            w: l.w * r.w - l.x * r.x - l.y * r.y - l.z * r.z,
            x: l.w * r.x + l.x * r.w + l.y * r.z - l.z * r.y,
            y: l.w * r.y - l.x * r.z + l.y * r.w + l.z * r.x,
            z: l.w * r.z + l.x * r.y - l.y * r.x + l.z * r.w,
        }
    }
}
