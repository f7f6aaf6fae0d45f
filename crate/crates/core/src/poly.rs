//! Polynomials in `z1, z1~, z2, z2~` with an integer power of `|z|^2`.
//!
//! Two canonical forms are used. The *ambient* form rewrites
//! `z2 z2~ -> |z|^2 - z1 z1~` and keeps the radial power, which is an exact
//! identity on `C^2 \ {0}`. The *S3 normal form* additionally sets `|z| = 1`,
//! so every monomial has `s = 0` and `min(c, d) = 0`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::coeff::{rat, Gq, Rational};
use crate::error::{Error, Result};

/// `z1^a z1~^b z2^c z2~^d |z|^(2s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub s: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        a: 0,
        b: 0,
        c: 0,
        d: 0,
        s: 0,
    };

    pub fn new(a: u32, b: u32, c: u32, d: u32, s: i32) -> Self {
        Monomial { a, b, c, d, s }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b + self.c + self.d
    }

    pub fn checked_mul(&self, o: &Monomial) -> Option<Monomial> {
        Some(Monomial {
            a: self.a.checked_add(o.a)?,
            b: self.b.checked_add(o.b)?,
            c: self.c.checked_add(o.c)?,
            d: self.d.checked_add(o.d)?,
            s: self.s.checked_add(o.s)?,
        })
    }

    pub fn conj(&self) -> Monomial {
        Monomial::new(self.b, self.a, self.d, self.c, self.s)
    }

    pub fn is_normal(&self) -> bool {
        self.s == 0 && self.c.min(self.d) == 0
    }

    /// Eigenvalue of `theta = nu - nubar`.
    pub fn charge(&self) -> i64 {
        self.a as i64 - self.b as i64 + self.c as i64 - self.d as i64
    }

    /// Exponent list in the fixed order `(z1, z1~, z2, z2~, |z|^2)`.
    pub fn exponents(&self) -> [i64; 5] {
        [
            self.a as i64,
            self.b as i64,
            self.c as i64,
            self.d as i64,
            self.s as i64,
        ]
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Gq>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Partial {
    Z1,
    Z1Bar,
    Z2,
    Z2Bar,
}

/// First-order operators acting on [`Poly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldOp {
    Dz1,
    Dz1Bar,
    Dz2,
    Dz2Bar,
    EPlus,
    EMinus,
    Theta,
    Theta0,
    Theta1,
    Theta2,
    Nu,
    NuBar,
    NRad,
}

impl FieldOp {
    pub const ALL: [FieldOp; 13] = [
        FieldOp::Dz1,
        FieldOp::Dz1Bar,
        FieldOp::Dz2,
        FieldOp::Dz2Bar,
        FieldOp::EPlus,
        FieldOp::EMinus,
        FieldOp::Theta,
        FieldOp::Theta0,
        FieldOp::Theta1,
        FieldOp::Theta2,
        FieldOp::Nu,
        FieldOp::NuBar,
        FieldOp::NRad,
    ];

    /// The vector fields tangent to the spheres `|z| = const`.
    pub const TANGENT: [FieldOp; 6] = [
        FieldOp::EPlus,
        FieldOp::EMinus,
        FieldOp::Theta,
        FieldOp::Theta0,
        FieldOp::Theta1,
        FieldOp::Theta2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FieldOp::Dz1 => "dz1",
            FieldOp::Dz1Bar => "dz1bar",
            FieldOp::Dz2 => "dz2",
            FieldOp::Dz2Bar => "dz2bar",
            FieldOp::EPlus => "eplus",
            FieldOp::EMinus => "eminus",
            FieldOp::Theta => "theta",
            FieldOp::Theta0 => "theta0",
            FieldOp::Theta1 => "theta1",
            FieldOp::Theta2 => "theta2",
            FieldOp::Nu => "nu",
            FieldOp::NuBar => "nubar",
            FieldOp::NRad => "nrad",
        }
    }

    /// Coordinate expression `sum_j coeff_j * d/d(var_j)`.
    pub fn components(&self) -> Vec<(Poly, Partial)> {
        use Partial::*;
        let z1 = Poly::var(0);
        let z1b = Poly::var(1);
        let z2 = Poly::var(2);
        let z2b = Poly::var(3);
        let i = Gq::i();
        match self {
            FieldOp::Dz1 => vec![(Poly::one(), Z1)],
            FieldOp::Dz1Bar => vec![(Poly::one(), Z1Bar)],
            FieldOp::Dz2 => vec![(Poly::one(), Z2)],
            FieldOp::Dz2Bar => vec![(Poly::one(), Z2Bar)],
            FieldOp::EPlus => vec![(-z2, Z1Bar), (z1, Z2Bar)],
            FieldOp::EMinus => vec![(-z2b, Z1), (z1b, Z2)],
            FieldOp::Nu => vec![(z1, Z1), (z2, Z2)],
            FieldOp::NuBar => vec![(z1b, Z1Bar), (z2b, Z2Bar)],
            FieldOp::Theta => vec![(z1, Z1), (z2, Z2), (-z1b, Z1Bar), (-z2b, Z2Bar)],
            FieldOp::Theta0 => FieldOp::Theta
                .components()
                .into_iter()
                .map(|(p, v)| (p.scale(&i), v))
                .collect(),
            FieldOp::Theta1 => {
                let mut out = FieldOp::EPlus.components();
                out.extend(FieldOp::EMinus.components());
                out
            }
            FieldOp::Theta2 => {
                let mut out: Vec<_> = FieldOp::EPlus
                    .components()
                    .into_iter()
                    .map(|(p, v)| (p.scale(&i), v))
                    .collect();
                out.extend(
                    FieldOp::EMinus
                        .components()
                        .into_iter()
                        .map(|(p, v)| (p.scale(&-&i), v)),
                );
                out
            }
            FieldOp::NRad => {
                let half = Gq::from_ratio(1, 2);
                vec![
                    (z1.scale(&half), Z1),
                    (z2.scale(&half), Z2),
                    (z1b.scale(&half), Z1Bar),
                    (z2b.scale(&half), Z2Bar),
                ]
            }
        }
    }
}

thread_local! {
    static MEAN_CACHE: RefCell<HashMap<(u32, u32), Rational>> = RefCell::new(HashMap::new());
}

/// Normalized sphere average of `|z1|^(2a) |z2|^(2c)`: `a! c! / (a + c + 1)!`.
pub fn monomial_mean(a: u32, c: u32) -> Rational {
    MEAN_CACHE.with(|cache| {
        if let Some(v) = cache.borrow().get(&(a, c)) {
            return v.clone();
        }
        // a! c! / (a+c+1)! = 1 / ((a+c+1) * binom(a+c, a))
        let n = a + c;
        let k = a.min(c);
        let mut binom = BigInt::one();
        for j in 0..k {
            binom = binom * BigInt::from(n - j) / BigInt::from(j + 1);
        }
        let v = BigRational::new(BigInt::one(), binom * BigInt::from(n + 1));
        cache.borrow_mut().insert((a, c), v.clone());
        v
    })
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Gq::one())
    }

    pub fn constant(c: Gq) -> Self {
        Poly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Gq) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    /// Coordinate function by index: 0 = z1, 1 = z1~, 2 = z2, 3 = z2~.
    pub fn var(idx: usize) -> Self {
        let m = match idx {
            0 => Monomial::new(1, 0, 0, 0, 0),
            1 => Monomial::new(0, 1, 0, 0, 0),
            2 => Monomial::new(0, 0, 1, 0, 0),
            3 => Monomial::new(0, 0, 0, 1, 0),
            _ => panic!("variable index out of range"),
        };
        Poly::term(m, Gq::one())
    }

    pub fn z1() -> Self {
        Poly::var(0)
    }
    pub fn z1bar() -> Self {
        Poly::var(1)
    }
    pub fn z2() -> Self {
        Poly::var(2)
    }
    pub fn z2bar() -> Self {
        Poly::var(3)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Gq)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Gq) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Gq)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Gq {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Maximum of `a + b + c + d` over the terms (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Gq) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Poly {
        self.scale(&Gq::real(r.clone()))
    }

    /// Complex conjugate: conjugates coefficients and swaps `z <-> z~`.
    pub fn conj(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect(),
        }
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.checked_mul(m2).ok_or(Error::Overflow)?;
                out.add_term(m, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiplies by `|z|^(2s)`.
    pub fn mul_radial(&self, s: i32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = *m;
                    m.s = m.s.checked_add(s).expect("exponent overflow");
                    (m, c.clone())
                })
                .collect(),
        }
    }

    pub fn is_normal_form(&self) -> bool {
        self.terms.keys().all(Monomial::is_normal)
    }

    /// Exact rewrite `z2 z2~ = |z|^2 - z1 z1~`, keeping radial powers.
    pub fn ambient_reduce(&self) -> Poly {
        self.reduce_with(false)
    }

    /// Restriction to `|z| = 1` in canonical form.
    pub fn normal_form(&self) -> Poly {
        self.reduce_with(true)
    }

    fn reduce_with(&self, on_sphere: bool) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let t = m.c.min(m.d);
            let base_s = if on_sphere { 0 } else { m.s };
            if t == 0 {
                out.add_term(Monomial { s: base_s, ..*m }, c.clone());
                continue;
            }
            // (z2 z2~)^t = sum_j binom(t, j) (-z1 z1~)^j |z|^(2(t-j))
            for j in 0..=t {
                let mut coef = c.scale(&BigRational::from_integer(binomial(t, j)));
                if j % 2 == 1 {
                    coef = -coef;
                }
                let s = if on_sphere { 0 } else { base_s + (t - j) as i32 };
                let mono = Monomial::new(m.a + j, m.b + j, m.c - t, m.d - t, s);
                out.add_term(mono, coef);
            }
        }
        out
    }

    /// Formal Wirtinger derivative; the radial factor contributes
    /// `s |z|^(2(s-1))` times the conjugate coordinate.
    pub fn partial(&self, var: Partial) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, bump): (u32, Monomial) = match var {
                Partial::Z1 => (m.a, Monomial::new(0, 1, 0, 0, -1)),
                Partial::Z1Bar => (m.b, Monomial::new(1, 0, 0, 0, -1)),
                Partial::Z2 => (m.c, Monomial::new(0, 0, 0, 1, -1)),
                Partial::Z2Bar => (m.d, Monomial::new(0, 0, 1, 0, -1)),
            };
            if e > 0 {
                let mut lowered = *m;
                match var {
                    Partial::Z1 => lowered.a -= 1,
                    Partial::Z1Bar => lowered.b -= 1,
                    Partial::Z2 => lowered.c -= 1,
                    Partial::Z2Bar => lowered.d -= 1,
                }
                out.add_term(lowered, c.scale(&BigRational::from_integer(BigInt::from(e))));
            }
            if m.s != 0 {
                let mono = m.checked_mul(&bump).expect("exponent overflow");
                out.add_term(mono, c.scale(&BigRational::from_integer(BigInt::from(m.s))));
            }
        }
        out
    }

    /// Applies a first-order operator; the result is in ambient canonical form.
    pub fn apply_field(&self, op: FieldOp) -> Poly {
        self.apply_field_raw(op).ambient_reduce()
    }

    /// Like [`Poly::apply_field`] but without the ambient rewrite, so
    /// polynomial input stays free of radial factors.
    pub fn apply_field_raw(&self, op: FieldOp) -> Poly {
        if op == FieldOp::NRad {
            let mut out = Poly::zero();
            for (m, c) in &self.terms {
                let w = rat(m.degree() as i64 + 2 * m.s as i64, 2);
                out.add_term(*m, c.scale(&w));
            }
            return out;
        }
        let mut out = Poly::zero();
        for (coef, var) in op.components() {
            let d = self.partial(var);
            if d.is_zero() {
                continue;
            }
            out = out + coef.try_mul(&d).expect("exponent overflow");
        }
        out
    }

    /// Tangent fields descend to S3, so applying them to a normal-form
    /// representative and re-normalizing is well defined.
    pub fn apply_field_sphere(&self, op: FieldOp) -> Poly {
        self.apply_field(op).normal_form()
    }

    /// `d^2/dz1 dz1~ + d^2/dz2 dz2~` on polynomials without radial factors.
    pub fn laplacian(&self) -> Result<Poly> {
        if self.terms.keys().any(|m| m.s != 0) {
            return Err(Error::AmbientPolynomialRequired);
        }
        let p1 = self.partial(Partial::Z1).partial(Partial::Z1Bar);
        let p2 = self.partial(Partial::Z2).partial(Partial::Z2Bar);
        Ok(p1 + p2)
    }

    /// Normalized integral `(1 / 2 pi^2) * int_{S3} p`.
    pub fn integrate_s3(&self) -> Result<Gq> {
        if !self.is_normal_form() {
            return Err(Error::NotNormalForm);
        }
        Ok(self.integrate_unchecked())
    }

    /// Sphere average of any representative; radial factors are 1 on S3 and
    /// the monomial formula holds without reduction.
    pub(crate) fn integrate_unchecked(&self) -> Gq {
        let mut acc = Gq::zero();
        for (m, c) in &self.terms {
            if m.a == m.b && m.c == m.d {
                acc += &c.scale(&monomial_mean(m.a, m.c));
            }
        }
        acc
    }

    /// `(1 / 2 pi^2) * int_{S3} p * conj(q)` without forming the product.
    pub fn pairing(&self, other: &Poly) -> Gq {
        if self.is_zero() || other.is_zero() {
            return Gq::zero();
        }
        let mut by_phase: HashMap<(i64, i64), Vec<(&Monomial, &Gq)>> = HashMap::new();
        for (m, c) in &other.terms {
            let key = (m.a as i64 - m.b as i64, m.c as i64 - m.d as i64);
            by_phase.entry(key).or_default().push((m, c));
        }
        let mut acc = Gq::zero();
        for (m1, c1) in &self.terms {
            let key = (m1.a as i64 - m1.b as i64, m1.c as i64 - m1.d as i64);
            if let Some(list) = by_phase.get(&key) {
                for (m2, c2) in list {
                    let mean = monomial_mean(m1.a + m2.b, m1.c + m2.d);
                    acc += &(c1 * &c2.conj()).scale(&mean);
                }
            }
        }
        acc
    }

    /// `(1 / 2 pi^2) * int_{S3} p * q`.
    pub fn integral_of_product(&self, other: &Poly) -> Gq {
        self.pairing(&other.conj())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| json!([c.to_string(), m.exponents()]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Poly> {
        let bad = |msg: &str| Error::Parse(format!("poly json: {msg}"));
        let arr = v.as_array().ok_or_else(|| bad("expected a list"))?;
        let mut p = Poly::zero();
        for item in arr {
            let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("term"))?;
            let c: Gq = pair[0].as_str().ok_or_else(|| bad("coefficient"))?.parse()?;
            let e = pair[1].as_array().filter(|a| a.len() == 5).ok_or_else(|| bad("exponents"))?;
            let mut ex = [0i64; 5];
            for (slot, val) in ex.iter_mut().zip(e) {
                *slot = val.as_i64().ok_or_else(|| bad("exponent"))?;
            }
            let nat = |x: i64| u32::try_from(x).map_err(|_| bad("exponent range"));
            let m = Monomial::new(
                nat(ex[0])?,
                nat(ex[1])?,
                nat(ex[2])?,
                nat(ex[3])?,
                i32::try_from(ex[4]).map_err(|_| bad("radial exponent range"))?,
            );
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Terms in display order: total degree, then exponent tuple.
    pub fn display_terms(&self) -> Vec<(Monomial, Gq)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by_key(|(m, _)| (m.degree() as i64 + 2 * m.s as i64, std::cmp::Reverse(m.exponents())));
        v
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (e, name) in [(m.a, "z1"), (m.b, "z1~"), (m.c, "z2"), (m.d, "z2~")] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    if m.s != 0 {
        parts.push(format!("rr^{}", m.s));
    }
    parts.join("*")
}

fn fmt_scalar_coeff(c: &Gq) -> String {
    if c.is_real() {
        if c.re.denom().is_one() {
            c.re.numer().to_string()
        } else {
            format!("{}/{}", c.re.numer(), c.re.denom())
        }
    } else {
        format!("({c})")
    }
}

impl fmt::Display for Poly {
    /// Human-readable form using `z1, z1~, z2, z2~` and `rr` for `|z|^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.display_terms().iter().enumerate() {
            let negative_real = c.is_real() && c.re < Rational::zero();
            let mag = if negative_real { -c } else { c.clone() };
            let sep = match (idx, negative_real) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mono = fmt_monomial(m);
            let body = if mono.is_empty() {
                fmt_scalar_coeff(&mag)
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_scalar_coeff(&mag), mono)
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.clone() + rhs.clone()
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.clone() - rhs.clone()
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("exponent overflow")
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: u32, b: u32, c: u32, d: u32, s: i32) -> Poly {
        Poly::term(Monomial::new(a, b, c, d, s), Gq::one())
    }

    #[test]
    fn multiplication_examples() {
        let z1 = Poly::z1();
        let z2 = Poly::z2();
        assert_eq!(
            (&z1 + &z2) * (&z1 - &z2),
            &(&z1 * &z1) - &(&z2 * &z2)
        );
        assert_eq!(m(1, 0, 0, 0, -1) * Poly::z1bar(), m(1, 1, 0, 0, -1));
        let p = &z1 + &Poly::z2bar().scale(&Gq::i());
        assert_eq!(Poly::one() * p.clone(), p);
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(m(0, 0, 1, 1, 0).normal_form(), Poly::one() - m(1, 1, 0, 0, 0));
        assert_eq!(m(1, 0, 0, 0, -2).normal_form(), Poly::z1());
        assert_eq!(
            m(0, 0, 2, 1, 0).normal_form(),
            Poly::z2() - m(1, 1, 1, 0, 0)
        );
    }

    #[test]
    fn ambient_reduce_keeps_radial_identity() {
        // |z|^2 written out reduces to rr
        let r = &m(1, 1, 0, 0, 0) + &m(0, 0, 1, 1, 0);
        assert_eq!(r.ambient_reduce(), m(0, 0, 0, 0, 1));
        assert_eq!(r.normal_form(), Poly::one());
    }

    #[test]
    fn field_examples() {
        assert_eq!(Poly::z1().apply_field(FieldOp::EMinus), -Poly::z2bar());
        assert!(m(3, 0, 2, 0, 0).apply_field(FieldOp::EPlus).is_zero());
        assert!(m(1, 0, 0, 1, 0).apply_field(FieldOp::Theta).is_zero());
    }

    #[test]
    fn tangent_fields_kill_the_radius() {
        let r = &m(1, 1, 0, 0, 0) + &m(0, 0, 1, 1, 0);
        for op in FieldOp::TANGENT {
            assert!(r.apply_field(op).is_zero(), "{op:?}");
            assert!(m(2, 0, 1, 0, -3).apply_field(op).is_zero() == (op == FieldOp::EPlus), "{op:?}");
        }
    }

    #[test]
    fn nrad_scales_by_homogeneous_degree() {
        let p = m(1, 0, 0, 0, -2);
        assert_eq!(p.apply_field(FieldOp::NRad), p.scale(&Gq::from_ratio(-3, 2)));
        // the derivative route agrees after reduction
        let mut via_partials = Poly::zero();
        for (c, v) in FieldOp::NRad.components() {
            via_partials = via_partials + c * p.partial(v);
        }
        assert_eq!(via_partials.ambient_reduce(), p.apply_field(FieldOp::NRad));
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(m(1, 1, 0, 0, 0).laplacian().unwrap(), Poly::one());
        assert!(m(5, 0, 0, 0, 0).laplacian().unwrap().is_zero());
        assert_eq!(
            m(1, 0, 0, 0, -1).laplacian(),
            Err(Error::AmbientPolynomialRequired)
        );
    }

    #[test]
    fn integration_examples() {
        assert_eq!(Poly::one().integrate_s3().unwrap(), Gq::one());
        assert_eq!(m(1, 1, 0, 0, 0).integrate_s3().unwrap(), Gq::from_ratio(1, 2));
        assert_eq!(m(1, 0, 0, 1, 0).integrate_s3().unwrap(), Gq::zero());
        assert_eq!(m(0, 0, 1, 1, 0).integrate_s3(), Err(Error::NotNormalForm));
        assert_eq!(m(2, 2, 0, 0, 0).integrate_s3().unwrap(), Gq::from_ratio(1, 3));
    }

    #[test]
    fn pairing_matches_product_integral() {
        let p = &m(2, 0, 1, 0, 0) + &m(0, 1, 0, 2, 0).scale(&Gq::i());
        let q = &m(1, 0, 0, 0, 0) + &m(1, 0, 1, 0, 0);
        let direct = (&p * &q.conj()).normal_form().integrate_s3().unwrap();
        assert_eq!(p.pairing(&q), direct);
    }

    #[test]
    fn display_orders_by_degree() {
        let p = m(0, 0, 1, 0, 0) - m(0, 1, 0, 0, 0).scale(&Gq::from_int(3)) + Poly::one();
        assert_eq!(p.to_string(), "1 - 3*z1~ + z2");
        let q = m(2, 0, 0, 0, -1).scale(&Gq::new(rat(1, 2), rat(-1, 1)));
        assert_eq!(q.to_string(), "(1/2-1/1*i)*z1^2*rr^-1");
    }

    #[test]
    fn json_round_trip() {
        let p = m(2, 0, 0, 3, -1).scale(&Gq::new(rat(1, 2), rat(-1, 3))) + Poly::z1();
        let j = p.to_json();
        assert_eq!(Poly::from_json(&j).unwrap(), p);
        assert_eq!(
            serde_json::to_string(&Poly::z1().to_json()).unwrap(),
            r#"[["1/1",[1,0,0,0,0]]]"#
        );
    }
}
