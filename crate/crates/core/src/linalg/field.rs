//! Scalar fields the matrix kernel works over.
//!
//! Two instances exist: exact rationals (`BigRational`) and double-precision
//! complex numbers. Exact mode compares literally; complex mode compares with
//! a fixed absolute tolerance of [`COMPLEX_TOLERANCE`].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Entry-wise comparison tolerance for complex-mode matrices.
pub const COMPLEX_TOLERANCE: f64 = 1e-9;

pub trait Field: Clone + Debug + PartialEq + Zero + One + Send + Sync + 'static {
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Self;
    /// Literal equality in exact mode, tolerance-based in complex mode.
    fn approx_eq(&self, rhs: &Self) -> bool;
    /// Magnitude of the difference, used for max-entry defects.
    fn distance(&self, rhs: &Self) -> f64;
    /// Serialized components: `["p/q"]` for rationals, `[re, im]` for complex.
    fn report_parts(&self) -> Vec<String>;
    fn is_exact() -> bool;
    /// |x| embedded back into the field (the modulus, for complex numbers).
    fn abs_value(&self) -> Self;

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// Integer power; negative exponents go through the reciprocal.
    fn powi(&self, exp: &BigInt) -> Option<Self> {
        let mut base = if exp.is_negative() {
            self.inv()?
        } else {
            self.clone()
        };
        let mut e = exp.abs();
        let mut acc = Self::one();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if (&e % &two).is_one() {
                acc = acc.times(&base);
            }
            e /= &two;
            if !e.is_zero() {
                base = base.times(&base);
            }
        }
        Some(acc)
    }
}

impl Field for Rational {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn approx_eq(&self, rhs: &Self) -> bool {
        self == rhs
    }
    fn distance(&self, rhs: &Self) -> f64 {
        (self - rhs).abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn report_parts(&self) -> Vec<String> {
        vec![format_rational(self)]
    }
    fn is_exact() -> bool {
        true
    }
    fn abs_value(&self) -> Self {
        self.abs()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl Field for Complex64 {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn approx_eq(&self, rhs: &Self) -> bool {
        (self.re - rhs.re).abs() <= COMPLEX_TOLERANCE && (self.im - rhs.im).abs() <= COMPLEX_TOLERANCE
    }
    fn distance(&self, rhs: &Self) -> f64 {
        (self - rhs).norm()
    }
    fn report_parts(&self) -> Vec<String> {
        vec![format_decimal(self.re), format_decimal(self.im)]
    }
    fn is_exact() -> bool {
        false
    }
    fn abs_value(&self) -> Self {
        Complex64::new(self.norm(), 0.0)
    }
}

/// Always `p/q`, including integers (`-1/1`).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// 12 significant digits in scientific notation.
pub fn format_decimal(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.11e}", x)
}

/// Parses `p/q`, `p`, or a decimal-free integer; denominators must be nonzero.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
