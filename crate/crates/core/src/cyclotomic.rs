//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(n)-1}` with rational
//! coefficients, i.e. as polynomials reduced modulo the `n`-th cyclotomic
//! polynomial `Φ_n`. The representation is canonical, so an element is a
//! rational number exactly when every non-constant coefficient is zero.
//!
//! Values living in different fields are combined by lifting both operands to
//! `Q(ζ_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (lowest degree first) of the monic cyclotomic polynomial `Φ_n`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = exact_monic_div(&num, &div);
        }
    }
    let p = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, Arc::clone(&p));
    p
}

fn exact_monic_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (dd..=nd).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// An element of the cyclotomic field `Q(ζ_n)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let deg = cyclotomic_polynomial(order).len() - 1;
        Self {
            order,
            coeffs: vec![BigRational::zero(); deg],
        }
    }

    pub fn from_rational(order: u32, value: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = value;
        z
    }

    pub fn from_integer(order: u32, value: impl Into<BigInt>) -> Self {
        Self::from_rational(order, BigRational::from_integer(value.into()))
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, 1)
    }

    /// `ζ_n^k`, with `k` taken modulo `n`.
    pub fn zeta_power(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        Self::from_raw(order, raw)
    }

    /// Builds an element from an arbitrary polynomial in `ζ_n`, reducing it.
    pub fn from_raw(order: u32, raw: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        let n = order as usize;
        // x^n = 1 first, keeps the long division short
        let mut folded = vec![BigRational::zero(); n.max(deg)];
        for (i, c) in raw.into_iter().enumerate() {
            if !c.is_zero() {
                folded[i % n] += c;
            }
        }
        for i in (deg..folded.len()).rev() {
            if folded[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut folded[i]);
            for (j, pj) in phi.iter().enumerate().take(deg) {
                if !pj.is_zero() {
                    let t = &c * BigRational::from_integer(pj.clone());
                    folded[i - deg + j] -= t;
                }
            }
        }
        folded.truncate(deg);
        Self {
            order,
            coeffs: folded,
        }
    }

    /// Order `n` of the ambient field `Q(ζ_n)`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational number, when all irrational parts cancel.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// `true` when every power-basis coordinate is an integer.
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Lifts into `Q(ζ_m)`; `m` must be a multiple of the current order.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.order), "cannot lift Q(z{}) into Q(z{})", self.order, m);
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut raw = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Self::from_raw(m, raw)
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.order.lcm(&b.order);
        (a.lift(m), b.lift(m))
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k` (`k` coprime to `n`).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order as i64;
        let mut raw = vec![BigRational::zero(); self.order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (i as i64 * k).rem_euclid(n) as usize;
            raw[e] += c;
        }
        Self::from_raw(self.order, raw)
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        let n = self.order as i64;
        let mut acc = Self::one(self.order);
        for k in 1..=n {
            if k.gcd(&n) == 1 {
                acc = &acc * &self.galois(k);
            }
        }
        acc.to_rational().expect("field norm is rational")
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.order as i64;
        let mut others = Self::one(self.order);
        for k in 2..=n {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (self * &others).to_rational()?;
        Some(others.scale(&(BigRational::one() / norm)))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Numerical value with `ζ_n = exp(2πi/n)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / n;
                Complex64::from_polar(1.0, theta) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// Coefficients rendered as strings (`"3"`, `"-1/2"`).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::aligned(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order != rhs.order {
            let (a, b) = Cyclotomic::aligned(self, rhs);
            return &a + &b;
        }
        Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.order == rhs.order {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order != rhs.order {
            let (a, b) = Cyclotomic::aligned(self, rhs);
            return &a * &b;
        }
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut raw = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Cyclotomic::from_raw(self.order, raw)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "z{}^{}", self.order, i)?,
                _ => write!(f, "{mag}*z{}^{}", self.order, i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Dense square matrix over a cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    dim: usize,
    entries: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        let order = rows
            .iter()
            .flatten()
            .map(Cyclotomic::order)
            .fold(1u32, |a, b| a.lcm(&b));
        let entries = rows.into_iter().flatten().map(|e| e.lift(order)).collect();
        Self { dim, entries }
    }

    pub fn identity(dim: usize, order: u32) -> Self {
        let mut entries = vec![Cyclotomic::zero(order); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Cyclotomic::one(order);
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &Cyclotomic {
        &self.entries[r * self.dim + c]
    }

    pub fn lift(&self, order: u32) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.lift(order)).collect(),
        }
    }

    /// Largest field order among the entries.
    pub fn field_order(&self) -> u32 {
        self.entries
            .iter()
            .map(Cyclotomic::order)
            .fold(1u32, |a, b| a.lcm(&b))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let order = self.field_order().lcm(&rhs.field_order());
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = Cyclotomic::zero(order);
                for k in 0..n {
                    let a = self.get(r, k);
                    let b = rhs.get(k, c);
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Self { dim: n, entries }
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(self.get(c, r).conj());
            }
        }
        Self { dim: n, entries }
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.field_order());
        for i in 0..self.dim {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| {
                let e = self.get(r, c);
                if r == c {
                    e.to_rational().is_some_and(|v| v.is_one())
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Determinant of the submatrix selecting `rows` and `cols`, by cofactor
    /// expansion. Intended for the small dimensions used by representations.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Cyclotomic {
        assert_eq!(rows.len(), cols.len());
        let order = self.field_order();
        if rows.is_empty() {
            return Cyclotomic::one(order);
        }
        if rows.len() == 1 {
            return self.get(rows[0], cols[0]).clone();
        }
        let r0 = rows[0];
        let rest = &rows[1..];
        let mut acc = Cyclotomic::zero(order);
        for (j, &c) in cols.iter().enumerate() {
            let e = self.get(r0, c);
            if e.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &c)| c)
                .collect();
            let term = e * &self.minor(rest, &sub_cols);
            if j % 2 == 0 {
                acc += &term;
            } else {
                acc += &(-term);
            }
        }
        acc
    }

    pub fn det(&self) -> Cyclotomic {
        let idx: Vec<usize> = (0..self.dim).collect();
        self.minor(&idx, &idx)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.entries.iter().map(Cyclotomic::to_complex).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: u32, v: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n, v)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let p = |n| {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| c.to_i64().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(p(1), vec![-1, 1]);
        assert_eq!(p(2), vec![1, 1]);
        assert_eq!(p(3), vec![1, 1, 1]);
        assert_eq!(p(4), vec![1, 0, 1]);
        assert_eq!(p(6), vec![1, -1, 1]);
        assert_eq!(p(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(12), 4);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..=12u32 {
            let mut acc = Cyclotomic::zero(n);
            for k in 0..n {
                acc += &Cyclotomic::zeta_power(n, k as i64);
            }
            assert!(acc.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn one_plus_omega_is_minus_omega_squared() {
        let w = Cyclotomic::zeta_power(3, 1);
        let lhs = &int(3, 1) + &w;
        let rhs = -Cyclotomic::zeta_power(3, 2);
        assert_eq!(lhs, rhs);
        assert!(lhs.to_rational().is_none());
        assert!((lhs.to_complex() - Complex64::new(0.5, 3f64.sqrt() / 2.0)).norm() < 1e-12);
    }

    #[test]
    fn lifting_preserves_values() {
        let i = Cyclotomic::zeta_power(4, 1);
        let lifted = i.lift(12);
        assert_eq!(lifted, Cyclotomic::zeta_power(12, 3));
        assert_eq!(i, lifted);
        let sum = &i + &Cyclotomic::zeta_power(3, 1);
        assert_eq!(sum.order(), 12);
    }

    #[test]
    fn conj_and_norm() {
        let a = &int(5, 2) + &Cyclotomic::zeta_power(5, 1);
        let prod = &a * &a.conj();
        assert!(prod.to_complex().im.abs() < 1e-12);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, int(5, 1));
        // N(1 + i) = 2
        let b = &int(4, 1) + &Cyclotomic::zeta_power(4, 1);
        assert_eq!(b.norm(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn determinant_and_minors() {
        let w = Cyclotomic::zeta_power(3, 1);
        let m = CycMatrix::from_rows(vec![
            vec![w.clone(), int(1, 0)],
            vec![int(1, 0), w.conj()],
        ]);
        assert_eq!(m.det(), int(3, 1));
        assert!(m.mul(&m.conj_transpose()).is_identity());
    }
}
