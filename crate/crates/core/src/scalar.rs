//! Complex scalars in two flavours: exact complex rationals and `f64` pairs.
//!
//! Mixing the two promotes to `Float`. Constants such as `Scalar::one()` are
//! exact, so they combine with either backend.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => write!(f, "exact"),
            Backend::Float => write!(f, "float"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_num: f64,
    pub eps_psd: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps_num: 1e-9, eps_psd: 1e-8 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(ComplexRational),
    Float(Complex64),
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => self.to_c64() == other.to_c64(),
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::from_i64(0)
    }

    pub fn one() -> Self {
        Scalar::from_i64(1)
    }

    pub fn i() -> Self {
        Scalar::Exact(ComplexRational { re: BigRational::zero(), im: BigRational::one() })
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::Exact(ComplexRational { re: BigRational::from_integer(n.into()), im: BigRational::zero() })
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Exact(ComplexRational { re: BigRational::new(n.into(), d.into()), im: BigRational::zero() })
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Exact(ComplexRational { re: r, im: BigRational::zero() })
    }

    pub fn complex_rational(re: BigRational, im: BigRational) -> Self {
        Scalar::Exact(ComplexRational { re, im })
    }

    pub fn float(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Float(_) => Backend::Float,
        }
    }

    /// Converts to the requested backend. Float to Exact is refused.
    pub fn to_backend(&self, backend: Backend) -> Result<Scalar> {
        match (self, backend) {
            (Scalar::Exact(_), Backend::Exact) | (Scalar::Float(_), Backend::Float) => Ok(self.clone()),
            (Scalar::Exact(c), Backend::Float) => Ok(Scalar::Float(c.to_c64())),
            (Scalar::Float(z), Backend::Exact) => {
                Err(Error::BackendMismatch(format!("float value {z} used with the exact backend")))
            }
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(c) => c.to_c64(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn re_f64(&self) -> f64 {
        self.to_c64().re
    }

    pub fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(c) => Scalar::Exact(ComplexRational { re: c.re.clone(), im: -c.im.clone() }),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.re.is_zero() && c.im.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    /// Zero test used when pruning polynomial terms: float roundoff far below
    /// any comparison tolerance is dropped.
    pub fn is_prunable(&self) -> bool {
        match self {
            Scalar::Exact(_) => self.is_zero(),
            Scalar::Float(z) => z.norm() < 1e-14,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.re.is_one() && c.im.is_zero(),
            Scalar::Float(z) => z.re == 1.0 && z.im == 0.0,
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.im.is_zero(),
            Scalar::Float(z) => z.im == 0.0,
        }
    }

    /// Negligible at tolerance: exact zero, or |x| <= eps_num.
    pub fn is_negligible(&self, tol: &Tolerance) -> bool {
        match self {
            Scalar::Exact(_) => self.is_zero(),
            Scalar::Float(z) => z.norm() <= tol.eps_num,
        }
    }

    /// Equality: exact for two exact values, otherwise
    /// |x-y| <= eps_num * max(1, |x|, |y|).
    pub fn close(&self, other: &Scalar, tol: &Tolerance) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => {
                let (x, y) = (self.to_c64(), other.to_c64());
                (x - y).norm() <= tol.eps_num * 1f64.max(x.norm()).max(y.norm())
            }
        }
    }

    /// |x - y| as a float, for reporting.
    pub fn distance(&self, other: &Scalar) -> f64 {
        (self - other).abs()
    }

    /// Compares real parts. Exact values compare exactly.
    pub fn cmp_re(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.re.cmp(&b.re),
            _ => self.re_f64().partial_cmp(&other.re_f64()).unwrap_or(Ordering::Equal),
        }
    }

    /// Sign of the real part; exact for the exact backend.
    pub fn re_sign(&self) -> Ordering {
        self.cmp_re(&Scalar::zero())
    }

    pub fn try_inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Exact(c) => {
                let n = &c.re * &c.re + &c.im * &c.im;
                Scalar::Exact(ComplexRational { re: &c.re / &n, im: -(&c.im / &n) })
            }
            Scalar::Float(z) => Scalar::Float(z.inv()),
        })
    }

    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("inverse of zero scalar")
    }

    pub fn powi(&self, n: i64) -> Scalar {
        let mut base = if n < 0 { self.inv() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Rational power of a positive real scalar. Exact values stay exact when
    /// the root is rational, otherwise `IrrationalPower`.
    pub fn pow_rational(&self, p: &Rational64) -> Result<Scalar> {
        if p.is_zero() {
            return Ok(Scalar::one());
        }
        if p.is_integer() {
            return Ok(self.powi(*p.numer()));
        }
        match self {
            Scalar::Float(z) => {
                if z.im != 0.0 || z.re <= 0.0 {
                    return Err(Error::IrrationalPower(format!("{self}^({p}) of a non-positive scalar")));
                }
                Ok(Scalar::float(z.re.powf(p.to_f64().unwrap_or(f64::NAN)), 0.0))
            }
            Scalar::Exact(c) => {
                if !c.im.is_zero() || !c.re.is_positive() {
                    return Err(Error::IrrationalPower(format!("{self}^({p}) of a non-positive scalar")));
                }
                let q = *p.denom() as u32;
                let root = |n: &BigInt| -> Option<BigInt> {
                    let r = n.nth_root(q);
                    (r.pow(q) == *n).then_some(r)
                };
                match (root(c.re.numer()), root(c.re.denom())) {
                    (Some(a), Some(b)) => Ok(Scalar::from_rational(BigRational::new(a, b)).powi(*p.numer())),
                    _ => Err(Error::IrrationalPower(format!("{self}^({p})"))),
                }
            }
        }
    }

    /// Parses a literal such as `3/4`, `-1/2+2i`, `i` or (float only) `0.25`.
    pub fn parse(text: &str, backend: Backend) -> Result<Scalar> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar literal".into()));
        }
        let bytes = s.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let (re_txt, im_txt) = if let Some(body) = s.strip_suffix('i') {
            match split {
                Some(k) => (&s[..k], Some(&body[k..])),
                None => ("", Some(body)),
            }
        } else {
            (s.as_str(), None)
        };
        let re = if re_txt.is_empty() { Scalar::zero() } else { parse_real(re_txt, backend, text)? };
        let im = match im_txt {
            None => Scalar::zero(),
            Some("") | Some("+") => Scalar::one(),
            Some("-") => Scalar::from_i64(-1),
            Some(t) => parse_real(t, backend, text)?,
        };
        let z = &re + &(&im * &Scalar::i());
        z.to_backend(backend)
    }
}

fn parse_real(t: &str, backend: Backend, whole: &str) -> Result<Scalar> {
    let bad = || Error::Parse(format!("malformed scalar literal `{whole}`"));
    let t = t.strip_prefix('+').unwrap_or(t);
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Scalar::from_rational(BigRational::new(n, d)));
    }
    if let Ok(n) = t.parse::<BigInt>() {
        return Ok(Scalar::from_rational(BigRational::from_integer(n)));
    }
    if !t.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '-' | '+')) {
        return Err(bad());
    }
    let v: f64 = t.parse().map_err(|_| bad())?;
    match backend {
        Backend::Exact => Err(Error::BackendMismatch(format!("`{whole}` is not a rational literal"))),
        Backend::Float => Ok(Scalar::float(v, 0.0)),
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im, re_zero, im_zero, im_neg, im_unit) = match self {
            Scalar::Exact(c) => (
                fmt_rat(&c.re),
                fmt_rat(&c.im.abs()),
                c.re.is_zero(),
                c.im.is_zero(),
                c.im.is_negative(),
                c.im.abs().is_one(),
            ),
            Scalar::Float(z) => (
                fmt_float(z.re),
                fmt_float(z.im.abs()),
                z.re == 0.0,
                z.im == 0.0,
                z.im.is_sign_negative() && z.im != 0.0,
                z.im.abs() == 1.0,
            ),
        };
        if im_zero {
            return write!(f, "{re}");
        }
        let mag = if im_unit { String::new() } else { im };
        let sign = if im_neg { "-" } else if re_zero { "" } else { "+" };
        if re_zero {
            write!(f, "{sign}{mag}i")
        } else {
            write!(f, "{re}{sign}{mag}i")
        }
    }
}

fn promote(a: &Scalar, b: &Scalar) -> (Complex64, Complex64) {
    (a.to_c64(), b.to_c64())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                Scalar::Exact(ComplexRational { re: &a.re + &b.re, im: &a.im + &b.im })
            }
            _ => {
                let (x, y) = promote(self, rhs);
                Scalar::Float(x + y)
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                Scalar::Exact(ComplexRational { re: &a.re - &b.re, im: &a.im - &b.im })
            }
            _ => {
                let (x, y) = promote(self, rhs);
                Scalar::Float(x - y)
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                if a.im.is_zero() && b.im.is_zero() {
                    return Scalar::Exact(ComplexRational { re: &a.re * &b.re, im: BigRational::zero() });
                }
                Scalar::Exact(ComplexRational {
                    re: &a.re * &b.re - &a.im * &b.im,
                    im: &a.re * &b.im + &a.im * &b.re,
                })
            }
            _ => {
                let (x, y) = promote(self, rhs);
                Scalar::Float(x * y)
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(c) => Scalar::Exact(ComplexRational { re: -c.re.clone(), im: -c.im.clone() }),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (&mut *self, rhs) {
            a.re += &b.re;
            a.im += &b.im;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (&mut *self, rhs) {
            a.re -= &b.re;
            a.im -= &b.im;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ex(s: &str) -> Scalar {
        Scalar::parse(s, Backend::Exact).unwrap()
    }

    #[test]
    fn parses_literals() {
        assert_eq!(ex("1"), Scalar::one());
        assert_eq!(ex("-1/2+2i"), Scalar::complex_rational(BigRational::new((-1).into(), 2.into()), BigRational::from_integer(2.into())));
        assert_eq!(ex("-i"), -Scalar::i());
        assert_eq!(ex("3-i"), Scalar::from_i64(3) - Scalar::i());
        assert_eq!(ex("1/2i"), Scalar::ratio(1, 2) * Scalar::i());
        assert!(matches!(Scalar::parse("0.1", Backend::Exact), Err(Error::BackendMismatch(_))));
        assert!(matches!(Scalar::parse("1/0", Backend::Exact), Err(Error::Parse(_))));
        assert!(matches!(Scalar::parse("x", Backend::Float), Err(Error::Parse(_))));
        let f = Scalar::parse("0.25-1e-3i", Backend::Float).unwrap();
        assert_eq!(f.to_c64(), Complex64::new(0.25, -1e-3));
    }

    #[test]
    fn display_roundtrips() {
        for s in ["0", "1", "-3/4", "i", "-i", "-1/2+2i", "5-2/3i", "2/7i"] {
            assert_eq!(ex(s).to_string(), s);
        }
        for s in ["0.25", "-1.5+0.125i", "0.1-i"] {
            let x = Scalar::parse(s, Backend::Float).unwrap();
            assert_eq!(Scalar::parse(&x.to_string(), Backend::Float).unwrap(), x);
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(ex("2i").conj(), ex("-2i"));
        assert_eq!(ex("3/4").conj(), ex("3/4"));
        assert_eq!(ex("-1/2+2i").conj().conj(), ex("-1/2+2i"));
    }

    #[test]
    fn rational_powers() {
        let p = |n, d| Rational64::new(n, d);
        assert_eq!(ex("4").pow_rational(&p(1, 2)).unwrap(), ex("2"));
        assert_eq!(ex("1/4").pow_rational(&p(-3, 2)).unwrap(), ex("8"));
        assert!(matches!(ex("2").pow_rational(&p(1, 2)), Err(Error::IrrationalPower(_))));
        let f = Scalar::float(2.0, 0.0).pow_rational(&p(1, 2)).unwrap();
        assert!((f.re_f64() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mixing_promotes_to_float() {
        let x = &Scalar::float(0.5, 0.0) + &Scalar::one();
        assert_eq!(x.backend(), Backend::Float);
        assert_eq!(x.to_c64(), Complex64::new(1.5, 0.0));
    }

    fn exact_scalar() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| {
            Scalar::complex_rational(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
        })
    }

    #[derive(Clone, Debug)]
    enum Expr {
        Leaf(i64, i64, i64),
        Add(Box<Expr>, Box<Expr>),
        Mul(Box<Expr>, Box<Expr>),
        Sub(Box<Expr>, Box<Expr>),
    }

    fn expr() -> impl Strategy<Value = Expr> {
        let leaf = (-5i64..6, 1i64..5, -3i64..4).prop_map(|(a, b, c)| Expr::Leaf(a, b, c));
        leaf.prop_recursive(20, 64, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            ]
        })
    }

    fn eval(e: &Expr, backend: Backend) -> Scalar {
        match e {
            Expr::Leaf(a, b, c) => {
                let x = Scalar::ratio(*a, *b) + Scalar::from_i64(*c) * Scalar::i();
                x.to_backend(backend).unwrap()
            }
            Expr::Add(a, b) => eval(a, backend) + eval(b, backend),
            Expr::Sub(a, b) => eval(a, backend) - eval(b, backend),
            Expr::Mul(a, b) => eval(a, backend) * eval(b, backend),
        }
    }

    proptest! {
        #[test]
        fn conj_is_multiplicative(x in exact_scalar(), y in exact_scalar()) {
            let lhs = (&x * &y).conj();
            prop_assert_eq!(&lhs, &(y.conj() * x.conj()));
            prop_assert_eq!(&lhs, &(x.conj() * y.conj()));
            prop_assert_eq!(x.conj().conj(), x);
        }

        #[test]
        fn field_axioms_exact(x in exact_scalar(), y in exact_scalar(), z in exact_scalar()) {
            prop_assert_eq!(&(&x * &(&y + &z)), &(&x * &y + &x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv(), Scalar::one());
            }
        }

        #[test]
        fn float_tracks_exact(e in expr()) {
            let tol = Tolerance::default();
            let a = eval(&e, Backend::Exact);
            let b = eval(&e, Backend::Float);
            prop_assert!(a.close(&b, &tol), "{} vs {}", a, b);
        }
    }
}
