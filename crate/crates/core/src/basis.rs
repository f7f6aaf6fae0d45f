//! Harmonic basis spinors, Laurent expansion and the radial grading.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

use crate::coeff::{factorial, Gq, Rational};
use crate::error::{Error, Result};
use crate::poly::{FieldOp, Poly};
use crate::spinor::{Space, Spinor};

/// Largest `m` accepted for basis indices.
pub const MAX_BASIS_M: u32 = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(&self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    pub sign: Sign,
    pub m: u32,
    pub l: u32,
    pub k: u32,
}

impl BasisIndex {
    pub fn new(sign: Sign, m: u32, l: u32, k: u32) -> Result<BasisIndex> {
        let idx = BasisIndex { sign, m, l, k };
        idx.validate()?;
        Ok(idx)
    }

    pub fn plus(m: u32, l: u32, k: u32) -> BasisIndex {
        BasisIndex::new(Sign::Plus, m, l, k).expect("valid basis index")
    }

    pub fn minus(m: u32, l: u32, k: u32) -> BasisIndex {
        BasisIndex::new(Sign::Minus, m, l, k).expect("valid basis index")
    }

    pub fn validate(&self) -> Result<()> {
        if self.m > MAX_BASIS_M || self.l > self.m || self.k > self.m + 1 {
            return Err(Error::BadIndex(self.to_string()));
        }
        Ok(())
    }

    /// Homogeneous degree: `m` for the + family, `-(m + 3)` for the - family.
    pub fn degree(&self) -> i64 {
        match self.sign {
            Sign::Plus => self.m as i64,
            Sign::Minus => -(self.m as i64 + 3),
        }
    }

    /// Eigenvalue of the tangential Dirac operator and of `n`.
    pub fn eigenvalue(&self) -> Gq {
        Gq::from_ratio(self.degree(), 2)
    }

    /// Polynomial degree of the restriction to S3.
    pub fn poly_degree(&self) -> u32 {
        match self.sign {
            Sign::Plus => self.m,
            Sign::Minus => self.m + 1,
        }
    }

    /// All indices of one family at fixed `m`.
    pub fn family(sign: Sign, m: u32) -> Vec<BasisIndex> {
        let mut out = Vec::new();
        for l in 0..=m {
            for k in 0..=m + 1 {
                out.push(BasisIndex { sign, m, l, k });
            }
        }
        out
    }

    /// Every index with polynomial degree at most `d` on S3.
    pub fn up_to_poly_degree(d: u32) -> Vec<BasisIndex> {
        let mut out = Vec::new();
        for m in 0..=d.min(MAX_BASIS_M) {
            out.extend(BasisIndex::family(Sign::Plus, m));
        }
        for m in 0..d.min(MAX_BASIS_M + 1) {
            out.extend(BasisIndex::family(Sign::Minus, m));
        }
        out
    }

    /// Both families with `m <= max_m`.
    pub fn up_to_m(max_m: u32) -> Vec<BasisIndex> {
        let mut out = Vec::new();
        for sign in [Sign::Plus, Sign::Minus] {
            for m in 0..=max_m {
                out.extend(BasisIndex::family(sign, m));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!([self.sign.symbol(), self.m, self.l, self.k])
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi{}({},{},{})", self.sign.symbol(), self.m, self.l, self.k)
    }
}

/// `v^k_(l, j) = (e_-)^k z1^l z2^j`, kept free of radial factors.
pub fn basis_v(k: u32, l: u32, j: u32) -> Poly {
    let mut p = Poly::term(crate::poly::Monomial::new(l, 0, j, 0, 0), Gq::one());
    for _ in 0..k {
        if p.is_zero() {
            break;
        }
        p = p.apply_field_raw(FieldOp::EMinus);
    }
    p
}

/// `w^k_(l', j') = (-1)^k l'! / (m' - k)! * v^(m' - l')_(k, m' - k)` with `m' = l' + j'`.
pub fn basis_w(k: u32, lp: u32, jp: u32) -> Poly {
    let mp = lp + jp;
    if k > mp {
        return Poly::zero();
    }
    let mut c = factorial(lp) / factorial(mp - k);
    if k % 2 == 1 {
        c = -c;
    }
    basis_v(mp - lp, k, mp - k).scale_rational(&c)
}

/// Unnormalized basis spinor on `C^2 \ {0}`.
pub fn basis_phi_ambient(idx: BasisIndex) -> Result<Spinor> {
    idx.validate()?;
    let BasisIndex { sign, m, l, k } = idx;
    Ok(match sign {
        Sign::Plus => {
            let u = if k == 0 {
                Poly::zero()
            } else {
                basis_v(k - 1, l, m - l).scale(&Gq::from_int(k as i64))
            };
            let v = -basis_v(k, l, m - l);
            Spinor::ambient(u, v)
        }
        Sign::Minus => {
            let s = -(m as i32 + 2);
            let u = basis_w(k, m + 1 - l, l).mul_radial(s);
            let v = basis_w(k, m - l, l + 1).mul_radial(s);
            Spinor::ambient(u, v)
        }
    })
}

struct BasisEntry {
    spinor: Spinor,
    gram: Rational,
    u_phases: HashSet<(i64, i64)>,
    v_phases: HashSet<(i64, i64)>,
}

fn phases(p: &Poly) -> HashSet<(i64, i64)> {
    p.terms()
        .map(|(m, _)| (m.a as i64 - m.b as i64, m.c as i64 - m.d as i64))
        .collect()
}

fn cache() -> &'static Mutex<HashMap<BasisIndex, Arc<BasisEntry>>> {
    static CACHE: OnceLock<Mutex<HashMap<BasisIndex, Arc<BasisEntry>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn entry(idx: BasisIndex) -> Result<Arc<BasisEntry>> {
    if let Some(e) = cache().lock().expect("basis cache").get(&idx) {
        return Ok(e.clone());
    }
    let spinor = basis_phi_ambient(idx)?.to_sphere();
    let gram = spinor.inner(&spinor).re;
    let e = Arc::new(BasisEntry {
        u_phases: phases(&spinor.u),
        v_phases: phases(&spinor.v),
        spinor,
        gram,
    });
    cache().lock().expect("basis cache").insert(idx, e.clone());
    Ok(e)
}

/// Unnormalized basis spinor restricted to S3.
pub fn basis_phi(idx: BasisIndex) -> Result<Spinor> {
    Ok(entry(idx)?.spinor.clone())
}

/// `k! l! (m - l)! / (m + 1 - k)!`: the squared norm of the unnormalized spinor.
pub fn gram_diagonal(idx: BasisIndex) -> Rational {
    factorial(idx.k) * factorial(idx.l) * factorial(idx.m - idx.l) / factorial(idx.m + 1 - idx.k)
}

/// Square of the normalizing prefactor that makes the basis orthonormal.
pub fn normalization_square(idx: BasisIndex) -> Rational {
    let g = gram_diagonal(idx);
    num_traits::Inv::inv(g)
}

/// Finite Laurent expansion against the unnormalized basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expansion {
    pub coeffs: BTreeMap<BasisIndex, Gq>,
}

impl Expansion {
    pub fn reconstruct(&self) -> Result<Spinor> {
        let mut acc = Spinor::zero(Space::Sphere);
        for (idx, c) in &self.coeffs {
            acc = acc.try_add(&basis_phi(*idx)?.scale(c))?;
        }
        Ok(acc)
    }

    /// Squared coefficients against the orthonormal basis: `c_b^2 * gram_b`.
    pub fn normalized_squares(&self) -> BTreeMap<BasisIndex, Gq> {
        self.coeffs
            .iter()
            .map(|(idx, c)| (*idx, (c * c).scale(&gram_diagonal(*idx))))
            .collect()
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.coeffs.keys().map(BasisIndex::degree).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|(idx, c)| json!([idx.to_json(), c.to_string()]))
                .collect(),
        )
    }
}

fn project(phi: &Spinor, candidates: &[BasisIndex]) -> Result<Expansion> {
    let u_ph = phases(&phi.u);
    let v_ph = phases(&phi.v);
    let mut coeffs = BTreeMap::new();
    for idx in candidates {
        let e = entry(*idx)?;
        if e.u_phases.is_disjoint(&u_ph) && e.v_phases.is_disjoint(&v_ph) {
            continue;
        }
        let num = phi.inner(&e.spinor);
        if num.is_zero() {
            continue;
        }
        coeffs.insert(*idx, num.scale(&num_traits::Inv::inv(e.gram.clone())));
    }
    Ok(Expansion { coeffs })
}

/// Exact expansion of a sphere spinor; fails loudly if the basis does not
/// reproduce the input.
pub fn expand(phi: &Spinor) -> Result<Expansion> {
    if phi.space != Space::Sphere {
        return Err(Error::SpaceMismatch {
            expected: "sphere",
            found: phi.space.name(),
        });
    }
    let phi = phi.to_sphere();
    let mut bound = phi.total_degree();
    for attempt in 0..3 {
        if attempt > 0 {
            bound += 2;
        }
        let exp = project(&phi, &BasisIndex::up_to_poly_degree(bound))?;
        if phi.try_sub(&exp.reconstruct()?)?.is_zero() {
            return Ok(exp);
        }
    }
    Err(Error::ExpansionFailed { bound })
}

/// Groups the expansion by homogeneous degree.
pub fn homogeneous_parts(phi: &Spinor) -> Result<BTreeMap<i64, Spinor>> {
    let exp = expand(phi)?;
    let mut out: BTreeMap<i64, Spinor> = BTreeMap::new();
    for (idx, c) in &exp.coeffs {
        let term = basis_phi(*idx)?.scale(c);
        let slot = out
            .entry(idx.degree())
            .or_insert_with(|| Spinor::zero(Space::Sphere));
        *slot = slot.try_add(&term)?;
    }
    out.retain(|_, s| !s.is_zero());
    Ok(out)
}

/// Radial derivation: `nrad` on ambient spinors, and on S3 the graded
/// operator scaling degree-`N` parts by `N / 2`.
pub fn radial_n(phi: &Spinor) -> Result<Spinor> {
    match phi.space {
        Space::Ambient => phi.nrad_ambient(),
        Space::Sphere => {
            let exp = expand(phi)?;
            let mut acc = Spinor::zero(Space::Sphere);
            for (idx, c) in &exp.coeffs {
                acc = acc.try_add(&basis_phi(*idx)?.scale(&(c * &idx.eigenvalue())))?;
            }
            Ok(acc)
        }
    }
}

/// `phi = ((u + u~)/2 | 0) + remainder`, the first part lying in `K`.
pub fn k_split(phi: &Spinor) -> (Spinor, Spinor) {
    let half = Gq::from_ratio(1, 2);
    let k = Spinor::new(phi.trace().scale(&half), Poly::zero(), phi.space);
    let rest = phi.try_sub(&k).expect("same space");
    (k, rest)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subspace {
    Lr0,
    L0r,
    Li0,
    L0i,
    K,
    Kbot,
}

impl Subspace {
    pub fn name(&self) -> &'static str {
        match self {
            Subspace::Lr0 => "Lr0",
            Subspace::L0r => "L0r",
            Subspace::Li0 => "Li0",
            Subspace::L0i => "L0i",
            Subspace::K => "K",
            Subspace::Kbot => "Kbot",
        }
    }
}

/// Membership in the subalgebras cut out by the involutions.
pub fn subspace_class(phi: &Spinor) -> BTreeSet<Subspace> {
    let sigma_fixed = phi.v.is_zero();
    let sigma_anti = phi.u.is_zero();
    let tau = phi.tau();
    let u_real = tau.u == phi.u;
    let v_real = tau.v == phi.v;
    let u_imag = tau.u == -phi.u.clone();
    let v_imag = tau.v == -phi.v.clone();
    let mut out = BTreeSet::new();
    if sigma_fixed && u_real {
        out.insert(Subspace::Lr0);
        out.insert(Subspace::K);
    }
    if sigma_anti && v_real {
        out.insert(Subspace::L0r);
    }
    if sigma_fixed && u_imag {
        out.insert(Subspace::Li0);
    }
    if sigma_anti && v_imag {
        out.insert(Subspace::L0i);
    }
    if u_imag {
        out.insert(Subspace::Kbot);
    }
    out
}

/// True when `phi` lies in `K`: real first component, zero second.
pub fn in_k(phi: &Spinor) -> bool {
    phi.v.is_zero() && phi.u.conj() == phi.u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor::DiracOp;

    #[test]
    fn v_examples() {
        assert_eq!(basis_v(0, 1, 0), Poly::z1());
        assert_eq!(basis_v(1, 1, 0), -Poly::z2bar());
        assert!(basis_v(2, 1, 0).is_zero());
    }

    #[test]
    fn v_is_harmonic() {
        for m in 0..=3u32 {
            for l in 0..=m {
                for k in 0..=m + 1 {
                    let v = basis_v(k, l, m - l);
                    assert!(v.laplacian().unwrap().is_zero(), "k={k} l={l} m={m}");
                }
            }
        }
    }

    #[test]
    fn named_elements() {
        assert_eq!(basis_phi(BasisIndex::plus(1, 0, 1)).unwrap(), Spinor::kappa());
        assert_eq!(basis_phi(BasisIndex::minus(0, 0, 0)).unwrap(), Spinor::mu());
        assert_eq!(
            basis_phi(BasisIndex::minus(0, 0, 1)).unwrap(),
            Spinor::sphere(-Poly::z1(), Poly::z2bar())
        );
        assert_eq!(basis_phi(BasisIndex::plus(0, 0, 1)).unwrap(), Spinor::identity());
        assert_eq!(basis_phi(BasisIndex::plus(0, 0, 0)).unwrap(), -Spinor::j());
        assert_eq!(
            basis_phi(BasisIndex::plus(1, 1, 2)).unwrap(),
            Spinor::sphere(Poly::z2bar().scale(&Gq::from_int(-2)), Poly::zero())
        );
    }

    #[test]
    fn bad_indices() {
        assert!(BasisIndex::new(Sign::Plus, 1, 2, 0).is_err());
        assert!(BasisIndex::new(Sign::Minus, 1, 0, 3).is_err());
        assert!(BasisIndex::new(Sign::Plus, 1, 1, 2).is_ok());
    }

    #[test]
    fn harmonic_and_eigen_low_degree() {
        for idx in BasisIndex::up_to_m(2) {
            let amb = basis_phi_ambient(idx).unwrap();
            assert!(amb.dirac(DiracOp::D).unwrap().is_zero(), "{idx}");
            let s = basis_phi(idx).unwrap();
            assert_eq!(
                s.dirac(DiracOp::Tangential).unwrap(),
                s.scale(&idx.eigenvalue()),
                "{idx}"
            );
        }
    }

    #[test]
    fn gram_low_degree() {
        let all = BasisIndex::up_to_m(2);
        for a in &all {
            let pa = basis_phi(*a).unwrap();
            for b in &all {
                let g = pa.inner(&basis_phi(*b).unwrap());
                if a == b {
                    assert_eq!(g, Gq::real(gram_diagonal(*a)), "{a}");
                } else {
                    assert!(g.is_zero(), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn expand_examples() {
        let e = expand(&Spinor::identity()).unwrap();
        assert_eq!(e.coeffs.len(), 1);
        assert_eq!(e.coeffs[&BasisIndex::plus(0, 0, 1)], Gq::one());

        let e = expand(&Spinor::sphere(Poly::z2bar(), Poly::zero())).unwrap();
        assert_eq!(e.coeffs.len(), 1);
        assert_eq!(e.coeffs[&BasisIndex::plus(1, 1, 2)], Gq::from_ratio(-1, 2));
        assert_eq!(
            serde_json::to_string(&e.to_json()).unwrap(),
            r#"[[["+",1,1,2],"-1/2"]]"#
        );

        let e = expand(&Spinor::sphere(Poly::z1(), Poly::z2bar())).unwrap();
        assert_eq!(e.coeffs.len(), 1);
        assert_eq!(e.coeffs[&BasisIndex::plus(1, 1, 1)], Gq::one());
    }

    #[test]
    fn expand_rejects_ambient() {
        let a = Spinor::ambient(Poly::z1(), Poly::zero());
        assert!(expand(&a).is_err());
    }

    #[test]
    fn radial_examples() {
        let k = Spinor::kappa();
        assert_eq!(radial_n(&k).unwrap(), k.scale(&Gq::from_ratio(1, 2)));
        assert!(radial_n(&Spinor::identity()).unwrap().is_zero());
    }

    #[test]
    fn radial_equals_tangential_dirac_on_products() {
        let p = Spinor::kappa().mul(&Spinor::mu()).unwrap();
        assert_eq!(radial_n(&p).unwrap(), p.dirac(DiracOp::Tangential).unwrap());
    }

    #[test]
    fn grading_of_products_is_not_additive() {
        // kappa * mu = (z2^2 + |z1|^2 | 0) has a constant part
        let p = Spinor::kappa().mul(&Spinor::mu()).unwrap();
        let parts = homogeneous_parts(&p).unwrap();
        assert!(parts.contains_key(&0));
        assert!(parts.len() > 1);
        assert_eq!(
            parts.values().cloned().fold(Spinor::zero(Space::Sphere), |a, b| a + b),
            p
        );
    }

    #[test]
    fn identity_is_degree_zero() {
        let parts = homogeneous_parts(&Spinor::identity()).unwrap();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn k_split_examples() {
        let (a, b) = k_split(&Spinor::kappa());
        let half = Gq::from_ratio(1, 2);
        assert_eq!(a, Spinor::sphere((Poly::z2() + Poly::z2bar()).scale(&half), Poly::zero()));
        assert_eq!(
            b,
            Spinor::sphere((Poly::z2() - Poly::z2bar()).scale(&half), -Poly::z1bar())
        );
        let (a, b) = k_split(&Spinor::identity());
        assert_eq!(a, Spinor::identity());
        assert!(b.is_zero());
        let ii = Spinor::identity().scale(&Gq::i());
        let (a, b) = k_split(&ii);
        assert!(a.is_zero());
        assert_eq!(b, ii);
    }

    #[test]
    fn subspace_examples() {
        let x = Spinor::sphere(Poly::z1() + Poly::z1bar(), Poly::zero());
        assert_eq!(
            subspace_class(&x),
            [Subspace::Lr0, Subspace::K].into_iter().collect()
        );
        let y = Spinor::sphere(Poly::zero(), Poly::z2() + Poly::z2bar());
        assert_eq!(
            subspace_class(&y),
            [Subspace::L0r, Subspace::Kbot].into_iter().collect()
        );
        assert!(subspace_class(&Spinor::kappa()).is_empty());
    }

    #[test]
    fn family_sizes() {
        for m in 0..=4 {
            for sign in [Sign::Plus, Sign::Minus] {
                assert_eq!(BasisIndex::family(sign, m).len() as u32, (m + 1) * (m + 2));
            }
        }
    }
}
