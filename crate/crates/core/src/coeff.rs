//! Exact rational and Gaussian-rational scalars.
//!
//! Every coefficient in the kernel is an element of Q(i) stored as a pair of
//! reduced [`BigRational`]s. Canonical form is maintained eagerly so that
//! structural equality is value equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact factorial as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    BigRational::from_integer(acc)
}

fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gq {
    pub re: Rational,
    pub im: Rational,
}

impl Gq {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gq { re, im }
    }

    pub fn zero() -> Self {
        Gq::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Gq::new(Rational::one(), Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Gq::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Gq::new(rat_int(n), Rational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Gq::new(rat(n, d), Rational::zero())
    }

    pub fn real(r: Rational) -> Self {
        Gq::new(r, Rational::zero())
    }

    pub fn imag(r: Rational) -> Self {
        Gq::new(Rational::zero(), r)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gq::new(self.re.clone(), -self.im.clone())
    }

    /// `conj(x) * x`, always a non-negative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Gq::new(&self.re * r, &self.im * r)
    }

    pub fn mul_i(&self) -> Self {
        Gq::new(-self.im.clone(), self.re.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Gq::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn div(&self, rhs: &Gq) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Default for Gq {
    fn default() -> Self {
        Gq::zero()
    }
}

impl From<Rational> for Gq {
    fn from(r: Rational) -> Self {
        Gq::real(r)
    }
}

impl From<i64> for Gq {
    fn from(n: i64) -> Self {
        Gq::from_int(n)
    }
}

impl<'a> Add<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn add(self, rhs: &Gq) -> Gq {
        Gq::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for Gq {
    type Output = Gq;
    fn add(self, rhs: Gq) -> Gq {
        Gq::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign<&Gq> for Gq {
    fn add_assign(&mut self, rhs: &Gq) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Gq> for Gq {
    fn sub_assign(&mut self, rhs: &Gq) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Sub<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn sub(self, rhs: &Gq) -> Gq {
        Gq::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for Gq {
    type Output = Gq;
    fn sub(self, rhs: Gq) -> Gq {
        Gq::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<'a> Mul<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn mul(self, rhs: &Gq) -> Gq {
        Gq::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for Gq {
    type Output = Gq;
    fn mul(self, rhs: Gq) -> Gq {
        &self * &rhs
    }
}

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re, -self.im)
    }
}

impl Neg for &Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re.clone(), -self.im.clone())
    }
}

/// Arithmetic entry point mirroring the four field operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn gq_arith(op: ArithOp, x: &Gq, y: &Gq) -> Result<Gq> {
    match op {
        ArithOp::Add => Ok(x + y),
        ArithOp::Sub => Ok(x - y),
        ArithOp::Mul => Ok(x * y),
        ArithOp::Div => x.div(y),
    }
}

impl fmt::Display for Gq {
    /// `p/q`, `r/s*i` or `p/q+r/s*i`; zero prints as `0/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "" } else { "+" };
                write!(
                    f,
                    "{}{}{}*i",
                    fmt_rational(&self.re),
                    sign,
                    fmt_rational(&self.im)
                )
            }
        }
    }
}

impl fmt::Debug for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n = BigInt::from_str(n.trim()).ok()?;
    let d = BigInt::from_str(d.trim()).ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Splits `text` into signed summands at top-level `+`/`-` signs that are
/// not the leading sign of a summand.
fn split_summands(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut cur = String::new();
    for (idx, ch) in text.char_indices() {
        if (ch == '+' || ch == '-') && idx > 0 && !cur.trim().is_empty() {
            let prev = cur.trim_end().chars().last();
            if prev != Some('/') && prev != Some('*') {
                parts.push(std::mem::take(&mut cur));
            }
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        parts.push(cur);
    }
    parts
}

impl FromStr for Gq {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid coefficient '{text}'"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = Gq::zero();
        let mut seen_re = false;
        let mut seen_im = false;
        for part in split_summands(&compact) {
            let (neg, body) = match part.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, part.strip_prefix('+').unwrap_or(&part)),
            };
            let (is_im, body) = if let Some(b) = body.strip_suffix("*i") {
                (true, b)
            } else if let Some(b) = body.strip_suffix('i') {
                (true, if b.is_empty() { "1" } else { b })
            } else {
                (false, body)
            };
            let mut r = parse_rational(body).ok_or_else(bad)?;
            if neg {
                r = -r;
            }
            if is_im {
                if seen_im {
                    return Err(bad());
                }
                seen_im = true;
                out.im = r;
            } else {
                if seen_re || seen_im {
                    return Err(bad());
                }
                seen_re = true;
                out.re = r;
            }
        }
        Ok(out)
    }
}
