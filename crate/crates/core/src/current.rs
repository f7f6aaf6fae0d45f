//! Current algebra over `sl(n)`: matrices over the spinor algebra, the
//! central extension by the three cocycles and the radial derivation.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::basis::{homogeneous_parts, radial_n};
use crate::cocycle::cocycle_matrix;
use crate::coeff::{Gq, Rational};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::spinor::Spinor;

/// Dense `n x n` matrix over `Q(i)`; indices are 0-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarMatrix {
    pub n: usize,
    data: Vec<Gq>,
}

impl ScalarMatrix {
    pub fn zero(n: usize) -> Self {
        ScalarMatrix {
            n,
            data: vec![Gq::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ScalarMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, Gq::one());
        }
        m
    }

    /// Matrix unit `E_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = ScalarMatrix::zero(n);
        m.set(i, j, Gq::one());
        m
    }

    pub fn diag(entries: &[Gq]) -> Self {
        let mut m = ScalarMatrix::zero(entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Gq {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Gq) {
        self.data[i * self.n + j] = x;
    }

    pub fn add(&self, o: &ScalarMatrix) -> ScalarMatrix {
        ScalarMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &ScalarMatrix) -> ScalarMatrix {
        ScalarMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Gq) -> ScalarMatrix {
        ScalarMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, o: &ScalarMatrix) -> ScalarMatrix {
        let n = self.n;
        let mut out = ScalarMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Gq::zero();
                for k in 0..n {
                    acc += &(self.get(i, k) * o.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn commutator(&self, o: &ScalarMatrix) -> ScalarMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    /// `(x | y) = Trace(x y)`.
    pub fn trace_form(&self, o: &ScalarMatrix) -> Gq {
        let p = self.mul(o);
        let mut acc = Gq::zero();
        for i in 0..self.n {
            acc += p.get(i, i);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Gq::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Gq::is_real)
    }
}

/// Chevalley data of `sl(n)`.
#[derive(Clone, Debug)]
pub struct SimpleAlgebra {
    pub n: usize,
    pub cartan: Vec<Vec<i64>>,
    pub h: Vec<ScalarMatrix>,
    pub e: Vec<ScalarMatrix>,
    pub f: Vec<ScalarMatrix>,
    pub e_theta: ScalarMatrix,
    pub f_theta: ScalarMatrix,
    pub h_theta: ScalarMatrix,
    pub positive_roots: Vec<Vec<i64>>,
}

impl SimpleAlgebra {
    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// Simple-root coordinates of the root carried by `E_ij` (zero on the diagonal).
    pub fn root_of_entry(&self, i: usize, j: usize) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        if i < j {
            out[i..j].iter_mut().for_each(|x| *x = 1);
        } else if j < i {
            out[j..i].iter_mut().for_each(|x| *x = -1);
        }
        out
    }

    /// Solves `sum_j alpha_j c_ji = ev_i` for the simple-root coordinates.
    fn roots_from_eigenvalues(&self, ev: &[Rational]) -> Option<Vec<i64>> {
        let l = self.rank();
        let mut a: Vec<Vec<Rational>> = (0..l)
            .map(|i| {
                let mut row: Vec<Rational> =
                    (0..l).map(|j| Rational::from_integer(self.cartan[j][i].into())).collect();
                row.push(ev[i].clone());
                row
            })
            .collect();
        for col in 0..l {
            let piv = (col..l).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..l {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in 0..=l {
                        let delta = &factor * &a[col][c];
                        a[r][c] = &a[r][c] - &delta;
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(l);
        for row in &a {
            let x = &row[l];
            if !x.denom().is_one() {
                return None;
            }
            out.push(x.numer().try_into().ok()?);
        }
        Some(out)
    }
}

/// Standard `sl(n)` data: `h_i = E_ii - E_(i+1)(i+1)`, `e_i = E_i(i+1)`, `f_i = E_(i+1)i`.
pub fn make_sl(n: usize) -> Result<SimpleAlgebra> {
    if n < 2 {
        return Err(Error::BadRank(n));
    }
    let l = n - 1;
    let mut cartan = vec![vec![0i64; l]; l];
    for (i, row) in cartan.iter_mut().enumerate() {
        for (j, c) in row.iter_mut().enumerate() {
            *c = match (i as i64 - j as i64).abs() {
                0 => 2,
                1 => -1,
                _ => 0,
            };
        }
    }
    let h = (0..l)
        .map(|i| ScalarMatrix::unit(n, i, i).sub(&ScalarMatrix::unit(n, i + 1, i + 1)))
        .collect();
    let e = (0..l).map(|i| ScalarMatrix::unit(n, i, i + 1)).collect();
    let f = (0..l).map(|i| ScalarMatrix::unit(n, i + 1, i)).collect();
    let mut positive_roots = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            let mut r = vec![0; l];
            r[p..q].iter_mut().for_each(|x| *x = 1);
            positive_roots.push(r);
        }
    }
    Ok(SimpleAlgebra {
        n,
        cartan,
        h,
        e,
        f,
        e_theta: ScalarMatrix::unit(n, 0, n - 1),
        f_theta: ScalarMatrix::unit(n, n - 1, 0),
        h_theta: ScalarMatrix::unit(n, 0, 0).sub(&ScalarMatrix::unit(n, n - 1, n - 1)),
        positive_roots,
    })
}

/// `n x n` matrix of sphere spinors; zero entries are not stored.
#[derive(Clone, PartialEq, Eq)]
pub struct CurrentElement {
    pub n: usize,
    entries: BTreeMap<(usize, usize), Spinor>,
}

impl CurrentElement {
    pub fn zero(n: usize) -> Self {
        CurrentElement {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I: IntoIterator<Item = ((usize, usize), Spinor)>>(n: usize, it: I) -> Result<Self> {
        let mut out = CurrentElement::zero(n);
        for ((i, j), s) in it {
            if i >= n || j >= n {
                return Err(Error::BadIndex(format!("matrix entry ({}, {}) for n = {n}", i + 1, j + 1)));
            }
            out.add_entry(i, j, &s.to_sphere())?;
        }
        Ok(out)
    }

    /// `phi (x) X`: entry `(i, j)` is `X_ij phi`.
    pub fn tensor(phi: &Spinor, x: &ScalarMatrix) -> Self {
        let phi = phi.to_sphere();
        let mut out = CurrentElement::zero(x.n);
        for i in 0..x.n {
            for j in 0..x.n {
                let c = x.get(i, j);
                if !c.is_zero() {
                    let s = phi.scale(c);
                    if !s.is_zero() {
                        out.entries.insert((i, j), s);
                    }
                }
            }
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Spinor)> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Spinor> {
        self.entries.get(&(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn add_entry(&mut self, i: usize, j: usize, s: &Spinor) -> Result<()> {
        let new = match self.entries.get(&(i, j)) {
            Some(old) => old.try_add(s)?,
            None => s.clone(),
        };
        if new.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), new);
        }
        Ok(())
    }

    fn check_size(&self, o: &CurrentElement) -> Result<()> {
        if self.n != o.n {
            return Err(Error::SizeMismatch(self.n, o.n));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &CurrentElement) -> Result<CurrentElement> {
        self.check_size(o)?;
        let mut out = self.clone();
        for ((i, j), s) in &o.entries {
            out.add_entry(*i, *j, s)?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &CurrentElement) -> Result<CurrentElement> {
        self.try_add(&o.scale(&Gq::from_int(-1)))
    }

    pub fn scale(&self, c: &Gq) -> CurrentElement {
        let mut out = CurrentElement::zero(self.n);
        for (k, s) in &self.entries {
            let t = s.scale(c);
            if !t.is_zero() {
                out.entries.insert(*k, t);
            }
        }
        out
    }

    pub fn mul(&self, o: &CurrentElement) -> Result<CurrentElement> {
        self.check_size(o)?;
        let mut out = CurrentElement::zero(self.n);
        for ((i, j), a) in &self.entries {
            for ((j2, k), b) in o.entries.range((*j, 0)..(*j + 1, 0)) {
                debug_assert_eq!(j, j2);
                out.add_entry(*i, *k, &a.mul(b)?)?;
            }
        }
        Ok(out)
    }

    /// Matrix commutator with entry products in the spinor algebra.
    pub fn bracket(&self, o: &CurrentElement) -> Result<CurrentElement> {
        self.mul(o)?.try_sub(&o.mul(self)?)
    }

    /// Radial derivation applied entrywise.
    pub fn radial_n(&self) -> Result<CurrentElement> {
        let mut out = CurrentElement::zero(self.n);
        for ((i, j), s) in &self.entries {
            out.add_entry(*i, *j, &radial_n(s)?)?;
        }
        Ok(out)
    }

    /// Strict upper, diagonal and strict lower parts.
    pub fn triangular_split(&self) -> (CurrentElement, CurrentElement, CurrentElement) {
        let mut parts = [
            CurrentElement::zero(self.n),
            CurrentElement::zero(self.n),
            CurrentElement::zero(self.n),
        ];
        for ((i, j), s) in &self.entries {
            let slot = match i.cmp(j) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Equal => 1,
                std::cmp::Ordering::Greater => 2,
            };
            parts[slot].entries.insert((*i, *j), s.clone());
        }
        let [a, b, c] = parts;
        (a, b, c)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "entries": self.entries.iter()
                .map(|((i, j), s)| json!([i + 1, j + 1, s.to_json()]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<CurrentElement> {
        let bad = |m: &str| Error::Parse(format!("current json: {m}"));
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("n"))? as usize;
        let mut items = Vec::new();
        for e in v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("entries"))? {
            let arr = e.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("entry"))?;
            let i = arr[0].as_u64().filter(|&x| x >= 1).ok_or_else(|| bad("row"))? as usize;
            let j = arr[1].as_u64().filter(|&x| x >= 1).ok_or_else(|| bad("column"))? as usize;
            items.push(((i - 1, j - 1), Spinor::from_json(&arr[2])?));
        }
        CurrentElement::from_entries(n, items)
    }
}

impl fmt::Display for CurrentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|((i, j), s)| format!("[{},{}] {}", i + 1, j + 1, s))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl fmt::Debug for CurrentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurrentElement(n={}: {})", self.n, self)
    }
}

/// Element of the extended algebra: matrix part, central coordinates
/// `a_0, a_1, a_2` and the coefficient `t` of the derivation `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtendedElement {
    pub mat: CurrentElement,
    pub a: [Gq; 3],
    pub t: Gq,
}

impl ExtendedElement {
    pub fn zero(n: usize) -> Self {
        ExtendedElement::from_current(CurrentElement::zero(n))
    }

    pub fn from_current(mat: CurrentElement) -> Self {
        ExtendedElement {
            mat,
            a: [Gq::zero(), Gq::zero(), Gq::zero()],
            t: Gq::zero(),
        }
    }

    /// The central generator `a_k`.
    pub fn central(n: usize, k: usize) -> Self {
        let mut x = ExtendedElement::zero(n);
        x.a[k] = Gq::one();
        x
    }

    /// The derivation `n`.
    pub fn derivation(n: usize) -> Self {
        let mut x = ExtendedElement::zero(n);
        x.t = Gq::one();
        x
    }

    pub fn tensor(phi: &Spinor, x: &ScalarMatrix) -> Self {
        ExtendedElement::from_current(CurrentElement::tensor(phi, x))
    }

    pub fn n(&self) -> usize {
        self.mat.n
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero() && self.a.iter().all(Gq::is_zero) && self.t.is_zero()
    }

    pub fn try_add(&self, o: &ExtendedElement) -> Result<ExtendedElement> {
        Ok(ExtendedElement {
            mat: self.mat.try_add(&o.mat)?,
            a: [&self.a[0] + &o.a[0], &self.a[1] + &o.a[1], &self.a[2] + &o.a[2]],
            t: &self.t + &o.t,
        })
    }

    pub fn try_sub(&self, o: &ExtendedElement) -> Result<ExtendedElement> {
        self.try_add(&o.scale(&Gq::from_int(-1)))
    }

    pub fn scale(&self, c: &Gq) -> ExtendedElement {
        ExtendedElement {
            mat: self.mat.scale(c),
            a: [&self.a[0] * c, &self.a[1] * c, &self.a[2] * c],
            t: &self.t * c,
        }
    }

    /// `c` with `self = c * other`, if one exists.
    pub fn ratio_to(&self, other: &ExtendedElement) -> Option<Gq> {
        let pivot = other
            .mat
            .entries()
            .find_map(|(k, s)| {
                s.u.terms()
                    .next()
                    .map(|(m, c)| (self.mat.get(k.0, k.1).map(|x| x.u.coeff(m)), c.clone()))
                    .or_else(|| {
                        s.v.terms()
                            .next()
                            .map(|(m, c)| (self.mat.get(k.0, k.1).map(|x| x.v.coeff(m)), c.clone()))
                    })
            })
            .map(|(num, den)| (num.unwrap_or_default(), den))
            .or_else(|| {
                other
                    .a
                    .iter()
                    .chain(std::iter::once(&other.t))
                    .zip(self.a.iter().chain(std::iter::once(&self.t)))
                    .find(|(o, _)| !o.is_zero())
                    .map(|(o, s)| (s.clone(), o.clone()))
            });
        let lambda = match pivot {
            Some((num, den)) => num.div(&den).ok()?,
            None => return if self.is_zero() { Some(Gq::zero()) } else { None },
        };
        if other.scale(&lambda) == *self {
            Some(lambda)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.mat.to_json();
        v["a"] = json!(self.a.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        v["t"] = json!(self.t.to_string());
        v
    }

    pub fn from_json(v: &Value) -> Result<ExtendedElement> {
        let bad = |m: &str| Error::Parse(format!("extended json: {m}"));
        let mat = CurrentElement::from_json(v)?;
        let a_arr = v.get("a").and_then(Value::as_array).filter(|a| a.len() == 3).ok_or_else(|| bad("a"))?;
        let mut a = [Gq::zero(), Gq::zero(), Gq::zero()];
        for (slot, x) in a.iter_mut().zip(a_arr) {
            *slot = x.as_str().ok_or_else(|| bad("a entry"))?.parse()?;
        }
        let t = v.get("t").and_then(Value::as_str).ok_or_else(|| bad("t"))?.parse()?;
        Ok(ExtendedElement { mat, a, t })
    }
}

impl fmt::Display for ExtendedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.mat.is_zero() {
            parts.push(self.mat.to_string());
        }
        for (k, a) in self.a.iter().enumerate() {
            if !a.is_zero() {
                parts.push(format!("{a} a{k}"));
            }
        }
        if !self.t.is_zero() {
            parts.push(format!("{} n", self.t));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for ExtendedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtendedElement(n={}: {})", self.n(), self)
    }
}

/// Bracket in the extended algebra.
pub fn ghat_bracket(x: &ExtendedElement, y: &ExtendedElement) -> Result<ExtendedElement> {
    if x.n() != y.n() {
        return Err(Error::SizeMismatch(x.n(), y.n()));
    }
    let mut mat = x.mat.bracket(&y.mat)?;
    if !x.t.is_zero() {
        mat = mat.try_add(&y.mat.radial_n()?.scale(&x.t))?;
    }
    if !y.t.is_zero() {
        mat = mat.try_sub(&x.mat.radial_n()?.scale(&y.t))?;
    }
    let mut a = [Gq::zero(), Gq::zero(), Gq::zero()];
    for (k, slot) in a.iter_mut().enumerate() {
        *slot = cocycle_matrix(k as u8, &x.mat, &y.mat)?;
    }
    Ok(ExtendedElement {
        mat,
        a,
        t: Gq::zero(),
    })
}

/// Weight `(m/2) delta + alpha + sum lambda_k Lambda_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightLabel {
    pub m: i64,
    pub alpha: Vec<i64>,
    pub lambda: [i64; 3],
}

impl fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, alpha={:?})", self.m, self.alpha)
    }
}

impl WeightLabel {
    pub fn to_json(&self) -> Value {
        json!({"m": self.m, "alpha": self.alpha, "lambda": self.lambda})
    }
}

fn integer_of(x: &Gq) -> Option<i64> {
    if !x.is_real() || !x.re.denom().is_one() {
        return None;
    }
    x.re.numer().try_into().ok()
}

/// Simultaneous eigenvalues under `ad(I (x) h_i)` and `ad(n)`; `None` when
/// the element is zero or not a weight vector.
pub fn weight_of(x: &ExtendedElement, alg: &SimpleAlgebra) -> Result<Option<WeightLabel>> {
    if x.is_zero() {
        return Ok(None);
    }
    if x.n() != alg.n {
        return Err(Error::SizeMismatch(x.n(), alg.n));
    }
    let mut ev = Vec::with_capacity(alg.rank());
    for h in &alg.h {
        let hh = ExtendedElement::tensor(&Spinor::identity(), h);
        match ghat_bracket(&hh, x)?.ratio_to(x) {
            Some(l) if l.is_real() => ev.push(l.re),
            _ => return Ok(None),
        }
    }
    let nn = ghat_bracket(&ExtendedElement::derivation(alg.n), x)?;
    let m = match nn.ratio_to(x) {
        Some(l) => match integer_of(&l.scale(&crate::coeff::rat_int(2))) {
            Some(m) => m,
            None => return Ok(None),
        },
        None => return Ok(None),
    };
    let alpha = match alg.roots_from_eigenvalues(&ev) {
        Some(a) => a,
        None => return Ok(None),
    };
    Ok(Some(WeightLabel {
        m,
        alpha,
        lambda: [0, 0, 0],
    }))
}

/// Splits by matrix-entry root and homogeneous degree; central and
/// derivation coordinates go to the zero weight.
pub fn root_decompose(x: &ExtendedElement, alg: &SimpleAlgebra) -> Result<BTreeMap<WeightLabel, ExtendedElement>> {
    if x.n() != alg.n {
        return Err(Error::SizeMismatch(x.n(), alg.n));
    }
    let zero_label = WeightLabel {
        m: 0,
        alpha: vec![0; alg.rank()],
        lambda: [0, 0, 0],
    };
    let mut out: BTreeMap<WeightLabel, ExtendedElement> = BTreeMap::new();
    for ((i, j), s) in x.mat.entries() {
        let alpha = alg.root_of_entry(*i, *j);
        for (deg, part) in homogeneous_parts(s)? {
            let label = WeightLabel {
                m: deg,
                alpha: alpha.clone(),
                lambda: [0, 0, 0],
            };
            let piece = ExtendedElement::from_current(CurrentElement::from_entries(x.n(), [((*i, *j), part)])?);
            let slot = out.entry(label).or_insert_with(|| ExtendedElement::zero(x.n()));
            *slot = slot.try_add(&piece)?;
        }
    }
    if x.a.iter().any(|a| !a.is_zero()) || !x.t.is_zero() {
        let mut c = ExtendedElement::zero(x.n());
        c.a = x.a.clone();
        c.t = x.t.clone();
        let slot = out.entry(zero_label).or_insert_with(|| ExtendedElement::zero(x.n()));
        *slot = slot.try_add(&c)?;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Named generators of the extended algebra.
pub fn chevalley_generators(alg: &SimpleAlgebra) -> Vec<(String, ExtendedElement)> {
    let one = Spinor::identity();
    let mut out = Vec::new();
    for i in 0..alg.rank() {
        out.push((format!("e{}", i + 1), ExtendedElement::tensor(&one, &alg.e[i])));
        out.push((format!("f{}", i + 1), ExtendedElement::tensor(&one, &alg.f[i])));
        out.push((format!("h{}", i + 1), ExtendedElement::tensor(&one, &alg.h[i])));
    }
    let pairs = [
        ("J", -Spinor::j(), Spinor::j()),
        ("kappa", Spinor::kappa_star(), Spinor::kappa()),
        ("lambda", Spinor::lambda_star(), Spinor::mu()),
    ];
    for (name, up, down) in pairs {
        out.push((format!("e{name}"), ExtendedElement::tensor(&up, &alg.e_theta)));
        out.push((format!("f{name}"), ExtendedElement::tensor(&down, &alg.f_theta)));
    }
    out.push(("htheta".into(), ExtendedElement::tensor(&one, &alg.h_theta)));
    out
}

fn generator<'a>(gens: &'a [(String, ExtendedElement)], name: &str) -> &'a ExtendedElement {
    &gens.iter().find(|(n, _)| n == name).expect("generator").1
}

/// Evaluates the generator relations, asserting the structural subset and
/// recording the remaining claimed values beside the computed ones.
pub fn verify_relations(alg: &SimpleAlgebra) -> Result<Report> {
    let gens = chevalley_generators(alg);
    let g = |name: &str| generator(&gens, name);
    let mut rep = Report::new("chevalley");
    let l = alg.rank();
    let zero = ExtendedElement::zero(alg.n);
    let tag = format!("sl{}", alg.n);

    for i in 0..l {
        let hi = g(&format!("h{}", i + 1));
        for j in 0..l {
            let (ej, fj) = (g(&format!("e{}", j + 1)), g(&format!("f{}", j + 1)));
            let hj = g(&format!("h{}", j + 1));
            let ei = g(&format!("e{}", i + 1));

            let v = ghat_bracket(ei, fj)?;
            let want = if i == j { hi.clone() } else { zero.clone() };
            rep.check(format!("{tag} [e{},f{}]", i + 1, j + 1), v == want, v.to_string(), want.to_string());

            let c = Gq::from_int(alg.cartan[j][i]);
            let v = ghat_bracket(hi, ej)?;
            let want = ej.scale(&c);
            rep.check(format!("{tag} [h{},e{}]", i + 1, j + 1), v == want, v.to_string(), want.to_string());

            let v = ghat_bracket(hi, fj)?;
            let want = fj.scale(&-c);
            rep.check(format!("{tag} [h{},f{}]", i + 1, j + 1), v == want, v.to_string(), want.to_string());

            let v = ghat_bracket(hi, hj)?;
            rep.check(format!("{tag} [h{},h{}]", i + 1, j + 1), v.is_zero(), v.to_string(), "0");
        }
    }

    let tf = alg.e_theta.trace_form(&alg.f_theta);
    rep.check(format!("{tag} (etheta|ftheta)"), tf.is_one(), tf.to_string(), "1/1");

    let htheta = g("htheta").clone();
    let v = ghat_bracket(g("eJ"), g("fJ"))?;
    rep.check(format!("{tag} [eJ,fJ]"), v == htheta, v.to_string(), htheta.to_string());

    for pi in ["J", "kappa", "lambda"] {
        for i in 0..l {
            let (ei, fi) = (g(&format!("e{}", i + 1)), g(&format!("f{}", i + 1)));
            let v = ghat_bracket(g(&format!("e{pi}")), fi)?;
            rep.check(format!("{tag} [e{pi},f{}]", i + 1), v.is_zero(), v.to_string(), "0");
            let v = ghat_bracket(g(&format!("f{pi}")), ei)?;
            rep.check(format!("{tag} [f{pi},e{}]", i + 1), v.is_zero(), v.to_string(), "0");
            let v = ghat_bracket(g(&format!("e{pi}")), ei)?;
            rep.compare(format!("{tag} [e{pi},e{}] (vanishing)", i + 1), v.is_zero(), v.to_string(), "0");
            let v = ghat_bracket(g(&format!("f{pi}")), fi)?;
            rep.compare(format!("{tag} [f{pi},f{}] (vanishing)", i + 1), v.is_zero(), v.to_string(), "0");
        }
    }

    // claimed: [e_pi, f_pi] = i htheta - a0 for pi = kappa, lambda
    let mut claimed = htheta.scale(&Gq::i());
    claimed.a[0] = Gq::from_int(-1);
    for pi in ["kappa", "lambda"] {
        let v = ghat_bracket(g(&format!("e{pi}")), g(&format!("f{pi}")))?;
        let central_ok = v.a[0].norm_sqr().is_one() && v.a[1].is_zero() && v.a[2].is_zero();
        rep.check(
            format!("{tag} [e{pi},f{pi}] central part"),
            central_ok,
            format!("a = [{}, {}, {}]", v.a[0], v.a[1], v.a[2]),
            "|a0| = 1, a1 = a2 = 0",
        );
        rep.compare(format!("{tag} [e{pi},f{pi}]"), v == claimed, v.to_string(), claimed.to_string());
    }
    rep.sort();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::spinor::Space;

    fn sl2() -> SimpleAlgebra {
        make_sl(2).unwrap()
    }

    #[test]
    fn sl_data() {
        assert_eq!(make_sl(2).unwrap().cartan, vec![vec![2]]);
        assert_eq!(make_sl(3).unwrap().cartan, vec![vec![2, -1], vec![-1, 2]]);
        let a = sl2();
        assert!(a.e_theta.trace_form(&a.f_theta).is_one());
        assert_eq!(make_sl(1).unwrap_err(), Error::BadRank(1));
        let a3 = make_sl(3).unwrap();
        assert_eq!(a3.positive_roots.len(), 3);
        for i in 0..2 {
            for j in 0..2 {
                let v = a3.e[i].commutator(&a3.f[j]);
                let want = if i == j { a3.h[i].clone() } else { ScalarMatrix::zero(3) };
                assert_eq!(v, want);
                let v = a3.h[i].commutator(&a3.e[j]);
                assert_eq!(v, a3.e[j].scale(&Gq::from_int(a3.cartan[j][i])));
            }
        }
        assert_eq!(a3.e_theta.commutator(&a3.f_theta), a3.h_theta);
    }

    #[test]
    fn tensor_examples() {
        let a = sl2();
        let t = CurrentElement::tensor(&Spinor::identity(), &a.h[0]);
        assert_eq!(t.get(0, 0), Some(&Spinor::identity()));
        assert_eq!(t.get(1, 1), Some(&-Spinor::identity()));
        let t = CurrentElement::tensor(&Spinor::kappa(), &a.e[0]);
        assert_eq!(t.entries().count(), 1);
        assert_eq!(t.get(0, 1), Some(&Spinor::kappa()));
        assert!(CurrentElement::tensor(&Spinor::zero(Space::Sphere), &a.e[0]).is_zero());
    }

    #[test]
    fn current_bracket_examples() {
        let a = sl2();
        let i = Spinor::identity();
        let e = CurrentElement::tensor(&i, &a.e[0]);
        let f = CurrentElement::tensor(&i, &a.f[0]);
        assert_eq!(e.bracket(&f).unwrap(), CurrentElement::tensor(&i, &a.h[0]));
        let je = CurrentElement::tensor(&Spinor::j(), &a.e[0]);
        let jf = CurrentElement::tensor(&Spinor::j(), &a.f[0]);
        assert_eq!(
            je.bracket(&jf).unwrap(),
            CurrentElement::tensor(&-i.clone(), &a.h[0])
        );
    }

    #[test]
    fn complex_scalars_act_from_the_right() {
        // [J (x) X, iJ (x) Y] = -i I (x) (XY + YX) with componentwise scalars
        let a = sl2();
        let (x, y) = (&a.e[0], &a.f[0]);
        let ij = Spinor::j().scale(&Gq::i());
        let lhs = CurrentElement::tensor(&Spinor::j(), x)
            .bracket(&CurrentElement::tensor(&ij, y))
            .unwrap();
        let anti = x.mul(y).add(&y.mul(x));
        let expected = CurrentElement::tensor(&Spinor::identity().scale(&-Gq::i()), &anti);
        assert_eq!(lhs, expected);
        // [J (x) X, iI (x) Y] = iJ (x) (XY + YX)
        let ii = Spinor::identity().scale(&Gq::i());
        let lhs = CurrentElement::tensor(&Spinor::j(), x)
            .bracket(&CurrentElement::tensor(&ii, y))
            .unwrap();
        assert_eq!(lhs, CurrentElement::tensor(&ij, &anti));
    }

    #[test]
    fn ghat_examples() {
        let a = sl2();
        let n = ExtendedElement::derivation(2);
        let ke = ExtendedElement::tensor(&Spinor::kappa(), &a.e[0]);
        assert_eq!(
            ghat_bracket(&n, &ke).unwrap(),
            ke.scale(&Gq::from_ratio(1, 2))
        );
        let a0 = ExtendedElement::central(2, 0);
        assert!(ghat_bracket(&a0, &ke).unwrap().is_zero());
        let kh = ExtendedElement::tensor(&Spinor::kappa(), &a.h[0]);
        let ksh = ExtendedElement::tensor(&Spinor::kappa_star(), &a.h[0]);
        let v = ghat_bracket(&kh, &ksh).unwrap();
        assert_eq!(v.a[0], Gq::from_int(-2));
        assert!(v.t.is_zero());
        assert_eq!(
            ghat_bracket(&ke, &ExtendedElement::zero(3)).unwrap_err(),
            Error::SizeMismatch(2, 3)
        );
    }

    #[test]
    fn weight_examples() {
        let a = sl2();
        let ke = ExtendedElement::tensor(&Spinor::kappa(), &a.e[0]);
        assert_eq!(
            weight_of(&ke, &a).unwrap(),
            Some(WeightLabel { m: 1, alpha: vec![1], lambda: [0; 3] })
        );
        let mf = ExtendedElement::tensor(&Spinor::mu(), &a.f[0]);
        assert_eq!(
            weight_of(&mf, &a).unwrap(),
            Some(WeightLabel { m: -3, alpha: vec![-1], lambda: [0; 3] })
        );
        let mixed = ExtendedElement::tensor(&Spinor::identity(), &a.h[0]).try_add(&ke).unwrap();
        assert_eq!(weight_of(&mixed, &a).unwrap(), None);
    }

    #[test]
    fn generator_weights() {
        let a = make_sl(3).unwrap();
        let gens = chevalley_generators(&a);
        let theta = vec![-1, -1];
        for (name, m) in [("fkappa", 1), ("flambda", -3), ("fJ", 0)] {
            let w = weight_of(generator(&gens, name), &a).unwrap().unwrap();
            assert_eq!((w.m, w.alpha.clone()), (m, theta.clone()), "{name}");
        }
    }

    #[test]
    fn root_decompose_examples() {
        let a = sl2();
        let x = ExtendedElement::tensor(&Spinor::kappa(), &a.e[0])
            .try_add(&ExtendedElement::tensor(&Spinor::mu(), &a.f[0]))
            .unwrap();
        let parts = root_decompose(&x, &a).unwrap();
        let keys: Vec<_> = parts.keys().map(|w| (w.m, w.alpha.clone())).collect();
        assert_eq!(keys, vec![(-3, vec![-1]), (1, vec![1])]);
        let mut y = ExtendedElement::tensor(&Spinor::identity(), &a.h[0]);
        y.a[0] = Gq::one();
        y.t = Gq::one();
        let parts = root_decompose(&y, &a).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts.values().next().unwrap(), &y);
        assert!(root_decompose(&ExtendedElement::zero(2), &a).unwrap().is_empty());
    }

    #[test]
    fn triangular_examples() {
        let a = sl2();
        let ke = CurrentElement::tensor(&Spinor::kappa(), &a.e[0]);
        let (u, d, l) = ke.triangular_split();
        assert_eq!((u, d.is_zero(), l.is_zero()), (ke.clone(), true, true));
        let ih = CurrentElement::tensor(&Spinor::identity(), &a.h[0]);
        let (u, d, l) = ih.triangular_split();
        assert!(u.is_zero() && l.is_zero());
        assert_eq!(d, ih);
    }

    #[test]
    fn only_mixed_vanishings_fail() {
        for n in [2, 3] {
            let rep = verify_relations(&make_sl(n).unwrap()).unwrap();
            for c in rep.failures() {
                let mixed = ["J", "kappa", "lambda"].iter().any(|p| {
                    c.name.contains(&format!("[e{p},f")) || c.name.contains(&format!("[f{p},e"))
                });
                assert!(mixed && !c.name.contains("central"), "{}", c.name);
            }
            assert!(rep.passed() > 0);
        }
    }

    #[test]
    fn claimed_vanishing_fails_for_f_pi_e_i() {
        // [J (x) f_theta, I (x) e_1] = J (x) [f_theta, e_1] is not zero
        let a = sl2();
        let gens = chevalley_generators(&a);
        let v = ghat_bracket(generator(&gens, "fJ"), generator(&gens, "e1")).unwrap();
        let expected = ExtendedElement::tensor(&Spinor::j(), &a.f_theta.commutator(&a.e[0]));
        assert_eq!(v, expected);
        assert!(!v.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let a = sl2();
        let mut x = ExtendedElement::tensor(&Spinor::kappa(), &a.e[0]);
        x.a[1] = Gq::from_ratio(1, 3);
        x.t = Gq::i();
        assert_eq!(ExtendedElement::from_json(&x.to_json()).unwrap(), x);
        let j = CurrentElement::tensor(&Spinor::sphere(Poly::z1(), Poly::zero()), &a.e[0]).to_json();
        assert_eq!(j["entries"][0][0], 1);
        assert_eq!(j["entries"][0][1], 2);
    }
}
