//! Scalar types: exact rationals, multiprecision floats, and complex pairs.
//!
//! `Rat` is an arbitrary-precision rational for the exact channel, `Bf` a
//! multiprecision real float at the global working precision, and `Cx` a
//! complex number built from two `Bf` components (kept in-crate because the
//! float backend is built without a complex layer).
//!
//! The [`Scalar`] trait is the small field interface the generic linear
//! algebra is written against.

use std::cmp::Ordering;
use std::fmt;

use rug::ops::{CompleteRound, Pow};
use rug::{Float, Rational};

use crate::precision;

// ---------------------------------------------------------------------------
// Rat
// ---------------------------------------------------------------------------

/// Exact rational scalar.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(pub Rational);

impl Rat {
    pub fn zero() -> Self {
        Rat(Rational::new())
    }

    pub fn one() -> Self {
        Rat(Rational::from(1))
    }

    pub fn from_int<T: Into<i64>>(v: T) -> Self {
        Rat(Rational::from(v.into()))
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Rat(Rational::from((num, den)))
    }

    /// Parses `"p"` or `"p/q"`.
    pub fn parse(s: &str) -> Option<Self> {
        Rational::from_str_radix(s.trim(), 10).ok().map(Rat)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.clone().abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.clone().recip())
    }

    pub fn pow_u(&self, e: u32) -> Self {
        Rat(self.0.clone().pow(e))
    }

    pub fn signum(&self) -> i32 {
        self.0.cmp0() as i32
    }

    pub fn factorial(n: u32) -> Self {
        let mut acc = Rational::from(1);
        for k in 2..=n as i64 {
            acc *= k;
        }
        Rat(acc)
    }

    pub fn binomial(n: u32, k: u32) -> Self {
        if k > n {
            return Rat::zero();
        }
        let k = k.min(n - k);
        let mut acc = Rational::from(1);
        for i in 0..k {
            acc *= (n - i) as i64;
            acc /= (i + 1) as i64;
        }
        Rat(acc)
    }

    pub fn to_bf(&self) -> Bf {
        Bf(Float::with_val(precision::bits(), &self.0))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// ---------------------------------------------------------------------------
// Bf
// ---------------------------------------------------------------------------

/// Multiprecision real float at the global working precision.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Bf(pub Float);

impl std::default::Default for Bf {
    fn default() -> Self {
        Bf::zero()
    }
}

impl Bf {
    pub fn zero() -> Self {
        Bf(Float::new(precision::bits()))
    }

    pub fn one() -> Self {
        Bf(Float::with_val(precision::bits(), 1))
    }

    pub fn from_int<T: Into<i64>>(v: T) -> Self {
        Bf(Float::with_val(precision::bits(), v.into()))
    }

    pub fn from_f64(v: f64) -> Self {
        Bf(Float::with_val(precision::bits(), v))
    }

    pub fn from_rat(r: &Rat) -> Self {
        r.to_bf()
    }

    /// Parses a decimal literal at the working precision.
    pub fn parse(s: &str) -> Option<Self> {
        Float::parse(s)
            .ok()
            .map(|incomplete| Bf(incomplete.complete(precision::bits())))
    }

    pub fn pi() -> Self {
        Bf(Float::with_val(precision::bits(), rug::float::Constant::Pi))
    }

    pub fn ln2() -> Self {
        Bf(Float::with_val(precision::bits(), rug::float::Constant::Log2))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn abs(&self) -> Self {
        Bf(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Self {
        Bf(self.0.clone().sqrt())
    }

    pub fn exp(&self) -> Self {
        Bf(self.0.clone().exp())
    }

    pub fn ln(&self) -> Self {
        Bf(self.0.clone().ln())
    }

    pub fn atan2(&self, x: &Bf) -> Self {
        Bf(self.0.clone().atan2(&x.0))
    }

    pub fn recip(&self) -> Self {
        Bf(Float::with_val(precision::bits(), 1) / &self.0)
    }

    pub fn powi(&self, e: i64) -> Self {
        if e < 0 {
            self.powi(-e).recip()
        } else {
            Bf(self.0.clone().pow(e as u64 as u32))
        }
    }

    /// Real power through exp/ln; requires a positive base.
    pub fn powf(&self, e: &Bf) -> Self {
        assert!(self.0.is_sign_positive() && !self.is_zero(), "powf needs a positive base");
        (self.ln() * e).exp()
    }

    /// Upper incomplete gamma Γ(a, self).
    pub fn gamma_inc_upper(&self, a: &Bf) -> Self {
        Bf(a.0.clone().gamma_inc(&self.0))
    }

    /// Exponential integral E₁(x) = Γ(0, x) for x > 0.
    pub fn e1(&self) -> Self {
        assert!(self.0.is_sign_positive() && !self.is_zero(), "E1 needs x > 0");
        self.gamma_inc_upper(&Bf::zero())
    }

    /// Exponential integral Ei(x).
    pub fn eint(&self) -> Self {
        Bf(self.0.clone().eint())
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_sign_positive() {
            1
        } else {
            -1
        }
    }

    pub fn min(&self, other: &Bf) -> Bf {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn max(&self, other: &Bf) -> Bf {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}

impl fmt::Debug for Bf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6e}", self.0.to_f64())
    }
}

impl fmt::Display for Bf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// ---------------------------------------------------------------------------
// Cx
// ---------------------------------------------------------------------------

/// Complex scalar over `Bf`.
#[derive(Clone, PartialEq, Default)]
pub struct Cx {
    pub re: Bf,
    pub im: Bf,
}

impl Cx {
    pub fn new(re: Bf, im: Bf) -> Self {
        Cx { re, im }
    }

    pub fn zero() -> Self {
        Cx { re: Bf::zero(), im: Bf::zero() }
    }

    pub fn one() -> Self {
        Cx { re: Bf::one(), im: Bf::zero() }
    }

    pub fn i() -> Self {
        Cx { re: Bf::zero(), im: Bf::one() }
    }

    pub fn from_real(re: Bf) -> Self {
        Cx { re, im: Bf::zero() }
    }

    pub fn from_f64s(re: f64, im: f64) -> Self {
        Cx { re: Bf::from_f64(re), im: Bf::from_f64(im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Cx { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Bf {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Bf {
        self.norm_sqr().sqrt()
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "reciprocal of complex zero");
        Cx { re: &self.re / &n, im: -&(&self.im / &n) }
    }

    /// Principal branch logarithm.
    pub fn ln(&self) -> Self {
        let half = Bf::from_f64(0.5);
        Cx {
            re: self.norm_sqr().ln() * &half,
            im: self.im.atan2(&self.re),
        }
    }

    pub fn scale(&self, s: &Bf) -> Self {
        Cx { re: &self.re * s, im: &self.im * s }
    }

    pub fn powi(&self, e: i64) -> Self {
        if e < 0 {
            return self.powi(-e).recip();
        }
        let mut base = self.clone();
        let mut acc = Cx::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.re, self.im)
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

// ---------------------------------------------------------------------------
// Operator plumbing
// ---------------------------------------------------------------------------

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident) => {
        impl std::ops::$trait for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty(self.0.$method(rhs.0))
            }
        }
        impl std::ops::$trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $ty(self.0.$method(&rhs.0))
            }
        }
        impl std::ops::$trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty(self.0.clone().$method(rhs.0))
            }
        }
        impl std::ops::$trait<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $ty(self.0.clone().$method(&rhs.0))
            }
        }
    };
}

macro_rules! forward_assign {
    ($ty:ident, $trait:ident, $method:ident) => {
        impl std::ops::$trait for $ty {
            fn $method(&mut self, rhs: $ty) {
                self.0.$method(rhs.0);
            }
        }
        impl std::ops::$trait<&$ty> for $ty {
            fn $method(&mut self, rhs: &$ty) {
                self.0.$method(&rhs.0);
            }
        }
    };
}

forward_binop!(Rat, Add, add);
forward_binop!(Rat, Sub, sub);
forward_binop!(Rat, Mul, mul);
forward_binop!(Rat, Div, div);
forward_assign!(Rat, AddAssign, add_assign);
forward_assign!(Rat, SubAssign, sub_assign);
forward_assign!(Rat, MulAssign, mul_assign);
forward_assign!(Rat, DivAssign, div_assign);
forward_binop!(Bf, Add, add);
forward_binop!(Bf, Sub, sub);
forward_binop!(Bf, Mul, mul);
forward_binop!(Bf, Div, div);
forward_assign!(Bf, AddAssign, add_assign);
forward_assign!(Bf, SubAssign, sub_assign);
forward_assign!(Bf, MulAssign, mul_assign);
forward_assign!(Bf, DivAssign, div_assign);

impl std::ops::Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl std::ops::Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0.clone())
    }
}

impl std::ops::Neg for Bf {
    type Output = Bf;
    fn neg(self) -> Bf {
        Bf(-self.0)
    }
}

impl std::ops::Neg for &Bf {
    type Output = Bf;
    fn neg(self) -> Bf {
        Bf(-self.0.clone())
    }
}

macro_rules! cx_binop {
    ($trait:ident, $method:ident, $build:expr) => {
        impl std::ops::$trait<&Cx> for &Cx {
            type Output = Cx;
            fn $method(self, rhs: &Cx) -> Cx {
                let f: fn(&Cx, &Cx) -> Cx = $build;
                f(self, rhs)
            }
        }
        impl std::ops::$trait<Cx> for Cx {
            type Output = Cx;
            fn $method(self, rhs: Cx) -> Cx {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&Cx> for Cx {
            type Output = Cx;
            fn $method(self, rhs: &Cx) -> Cx {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$trait<Cx> for &Cx {
            type Output = Cx;
            fn $method(self, rhs: Cx) -> Cx {
                self.$method(&rhs)
            }
        }
    };
}

cx_binop!(Add, add, |a, b| Cx { re: &a.re + &b.re, im: &a.im + &b.im });
cx_binop!(Sub, sub, |a, b| Cx { re: &a.re - &b.re, im: &a.im - &b.im });
cx_binop!(Mul, mul, |a, b| Cx {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});
cx_binop!(Div, div, |a, b| {
    let n = b.norm_sqr();
    assert!(!n.is_zero(), "complex division by zero");
    Cx {
        re: (&a.re * &b.re + &a.im * &b.im) / &n,
        im: (&a.im * &b.re - &a.re * &b.im) / &n,
    }
});

impl std::ops::Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx { re: -self.re, im: -self.im }
    }
}

impl std::ops::Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx { re: -&self.re, im: -&self.im }
    }
}

impl std::ops::AddAssign<&Cx> for Cx {
    fn add_assign(&mut self, rhs: &Cx) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl std::ops::AddAssign<Cx> for Cx {
    fn add_assign(&mut self, rhs: Cx) {
        *self += &rhs;
    }
}

impl std::ops::SubAssign<&Cx> for Cx {
    fn sub_assign(&mut self, rhs: &Cx) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

// ---------------------------------------------------------------------------
// Scalar trait
// ---------------------------------------------------------------------------

/// Minimal field interface for the generic dense linear algebra.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn s_zero() -> Self;
    fn s_one() -> Self;
    fn s_from_i64(v: i64) -> Self;
    fn s_add(&self, o: &Self) -> Self;
    fn s_sub(&self, o: &Self) -> Self;
    fn s_mul(&self, o: &Self) -> Self;
    fn s_div(&self, o: &Self) -> Self;
    fn s_neg(&self) -> Self;
    fn s_is_zero(&self) -> bool;
    /// Compares magnitudes; used for pivot selection.
    fn s_abs_cmp(&self, o: &Self) -> Ordering;
    fn s_to_f64(&self) -> f64;
}

impl Scalar for Rat {
    fn s_zero() -> Self {
        Rat::zero()
    }
    fn s_one() -> Self {
        Rat::one()
    }
    fn s_from_i64(v: i64) -> Self {
        Rat::from_int(v)
    }
    fn s_add(&self, o: &Self) -> Self {
        self + o
    }
    fn s_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn s_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn s_div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "rational division by zero");
        self / o
    }
    fn s_neg(&self) -> Self {
        -self
    }
    fn s_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn s_abs_cmp(&self, o: &Self) -> Ordering {
        self.0.cmp_abs(&o.0)
    }
    fn s_to_f64(&self) -> f64 {
        self.to_f64()
    }
}

impl Scalar for Bf {
    fn s_zero() -> Self {
        Bf::zero()
    }
    fn s_one() -> Self {
        Bf::one()
    }
    fn s_from_i64(v: i64) -> Self {
        Bf::from_int(v)
    }
    fn s_add(&self, o: &Self) -> Self {
        self + o
    }
    fn s_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn s_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn s_div(&self, o: &Self) -> Self {
        self / o
    }
    fn s_neg(&self) -> Self {
        -self
    }
    fn s_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn s_abs_cmp(&self, o: &Self) -> Ordering {
        self.0.cmp_abs(&o.0).unwrap_or(Ordering::Equal)
    }
    fn s_to_f64(&self) -> f64 {
        self.to_f64()
    }
}

impl Scalar for Cx {
    fn s_zero() -> Self {
        Cx::zero()
    }
    fn s_one() -> Self {
        Cx::one()
    }
    fn s_from_i64(v: i64) -> Self {
        Cx::from_real(Bf::from_int(v))
    }
    fn s_add(&self, o: &Self) -> Self {
        self + o
    }
    fn s_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn s_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn s_div(&self, o: &Self) -> Self {
        self / o
    }
    fn s_neg(&self) -> Self {
        -self
    }
    fn s_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn s_abs_cmp(&self, o: &Self) -> Ordering {
        self.norm_sqr()
            .0
            .partial_cmp(&o.norm_sqr().0)
            .unwrap_or(Ordering::Equal)
    }
    fn s_to_f64(&self) -> f64 {
        self.abs().to_f64()
    }
}

impl Scalar for f64 {
    fn s_zero() -> Self {
        0.0
    }
    fn s_one() -> Self {
        1.0
    }
    fn s_from_i64(v: i64) -> Self {
        v as f64
    }
    fn s_add(&self, o: &Self) -> Self {
        self + o
    }
    fn s_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn s_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn s_div(&self, o: &Self) -> Self {
        self / o
    }
    fn s_neg(&self) -> Self {
        -self
    }
    fn s_is_zero(&self) -> bool {
        *self == 0.0
    }
    fn s_abs_cmp(&self, o: &Self) -> Ordering {
        self.abs().partial_cmp(&o.abs()).unwrap_or(Ordering::Equal)
    }
    fn s_to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for num_complex::Complex64 {
    fn s_zero() -> Self {
        Self::new(0.0, 0.0)
    }
    fn s_one() -> Self {
        Self::new(1.0, 0.0)
    }
    fn s_from_i64(v: i64) -> Self {
        Self::new(v as f64, 0.0)
    }
    fn s_add(&self, o: &Self) -> Self {
        self + o
    }
    fn s_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn s_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn s_div(&self, o: &Self) -> Self {
        self / o
    }
    fn s_neg(&self) -> Self {
        -self
    }
    fn s_is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn s_abs_cmp(&self, o: &Self) -> Ordering {
        self.norm_sqr()
            .partial_cmp(&o.norm_sqr())
            .unwrap_or(Ordering::Equal)
    }
    fn s_to_f64(&self) -> f64 {
        self.norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_basics() {
        let a = Rat::new(1, 2);
        let b = Rat::new(1, 3);
        assert_eq!(&a + &b, Rat::new(5, 6));
        assert_eq!(&a * &b, Rat::new(1, 6));
        assert_eq!(Rat::parse("7/3"), Some(Rat::new(7, 3)));
        assert_eq!(Rat::factorial(5), Rat::from_int(120));
        assert_eq!(Rat::binomial(8, 3), Rat::from_int(56));
    }

    #[test]
    fn float_special_functions() {
        // E1(1) = 0.2193839343955203... (classical value)
        let e1 = Bf::from_int(1).e1();
        assert!((e1.to_f64() - 0.219_383_934_395_520_3).abs() < 1e-15);
        let pi = Bf::pi();
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn complex_arithmetic() {
        let z = Cx::from_f64s(1.0, 2.0);
        let w = Cx::from_f64s(3.0, -1.0);
        let p = &z * &w;
        assert!((p.re.to_f64() - 5.0).abs() < 1e-14);
        assert!((p.im.to_f64() - 5.0).abs() < 1e-14);
        let q = &p / &w;
        assert!((q.re.to_f64() - 1.0).abs() < 1e-14);
        assert!((q.im.to_f64() - 2.0).abs() < 1e-14);
        let l = Cx::from_f64s(0.0, 1.0).ln();
        assert!(l.re.to_f64().abs() < 1e-14);
        assert!((l.im.to_f64() - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
    }
}
