//! Quaternionic spinors `u + j v` with `u, v` polynomials.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde_json::{json, Value};

use crate::coeff::{Gq, Rational};
use crate::error::{Error, Result};
use crate::poly::{FieldOp, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    /// Functions on `C^2 \ {0}`; radial powers are meaningful.
    Ambient,
    /// Restrictions to `|z| = 1`, kept in normal form.
    Sphere,
}

impl Space {
    pub fn name(&self) -> &'static str {
        match self {
            Space::Ambient => "ambient",
            Space::Sphere => "sphere",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Spinor {
    pub u: Poly,
    pub v: Poly,
    pub space: Space,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    Sigma,
    Tau,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiracOp {
    D,
    DDag,
    Tangential,
}

fn half() -> Gq {
    Gq::from_ratio(1, 2)
}

impl Spinor {
    pub fn sphere(u: Poly, v: Poly) -> Spinor {
        Spinor {
            u: u.normal_form(),
            v: v.normal_form(),
            space: Space::Sphere,
        }
    }

    pub fn ambient(u: Poly, v: Poly) -> Spinor {
        Spinor {
            u: u.ambient_reduce(),
            v: v.ambient_reduce(),
            space: Space::Ambient,
        }
    }

    pub fn new(u: Poly, v: Poly, space: Space) -> Spinor {
        match space {
            Space::Ambient => Spinor::ambient(u, v),
            Space::Sphere => Spinor::sphere(u, v),
        }
    }

    pub fn zero(space: Space) -> Spinor {
        Spinor {
            u: Poly::zero(),
            v: Poly::zero(),
            space,
        }
    }

    /// `I = (1 | 0)`.
    pub fn identity() -> Spinor {
        Spinor::sphere(Poly::one(), Poly::zero())
    }

    /// `J = (0 | 1)`.
    pub fn j() -> Spinor {
        Spinor::sphere(Poly::zero(), Poly::one())
    }

    /// `kappa = (z2 | -z1~)`.
    pub fn kappa() -> Spinor {
        Spinor::sphere(Poly::z2(), -Poly::z1bar())
    }

    /// `kappa* = i (z2~ | z1~)`.
    pub fn kappa_star() -> Spinor {
        Spinor::sphere(Poly::z2bar(), Poly::z1bar()).scale(&Gq::i())
    }

    /// `mu = (z2 | z1~)`; also used as `lambda`.
    pub fn mu() -> Spinor {
        Spinor::sphere(Poly::z2(), Poly::z1bar())
    }

    /// `lambda* = i (z2~ | -z1~)`.
    pub fn lambda_star() -> Spinor {
        Spinor::sphere(Poly::z2bar(), -Poly::z1bar()).scale(&Gq::i())
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn to_sphere(&self) -> Spinor {
        Spinor::sphere(self.u.clone(), self.v.clone())
    }

    fn same_space(&self, other: &Spinor) -> Result<Space> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                expected: self.space.name(),
                found: other.space.name(),
            });
        }
        Ok(self.space)
    }

    fn require(&self, space: Space) -> Result<()> {
        if self.space != space {
            return Err(Error::SpaceMismatch {
                expected: space.name(),
                found: self.space.name(),
            });
        }
        Ok(())
    }

    fn rebuild(&self, u: Poly, v: Poly) -> Spinor {
        Spinor::new(u, v, self.space)
    }

    /// Complex scalars act on both components.
    pub fn scale(&self, c: &Gq) -> Spinor {
        Spinor {
            u: self.u.scale(c),
            v: self.v.scale(c),
            space: self.space,
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Spinor {
        self.scale(&Gq::real(r.clone()))
    }

    pub fn try_add(&self, other: &Spinor) -> Result<Spinor> {
        let space = self.same_space(other)?;
        Ok(Spinor {
            u: &self.u + &other.u,
            v: &self.v + &other.v,
            space,
        })
    }

    pub fn try_sub(&self, other: &Spinor) -> Result<Spinor> {
        let space = self.same_space(other)?;
        Ok(Spinor {
            u: &self.u - &other.u,
            v: &self.v - &other.v,
            space,
        })
    }

    /// Quaternionic product `(u1 u2 - v1~ v2 | v1 u2 + u1~ v2)`.
    pub fn mul(&self, other: &Spinor) -> Result<Spinor> {
        self.same_space(other)?;
        let u = self.u.try_mul(&other.u)? - self.v.conj().try_mul(&other.v)?;
        let v = self.v.try_mul(&other.u)? + self.u.conj().try_mul(&other.v)?;
        Ok(self.rebuild(u, v))
    }

    /// Commutator `phi psi - psi phi`.
    pub fn bracket(&self, other: &Spinor) -> Result<Spinor> {
        self.mul(other)?.try_sub(&other.mul(self)?)
    }

    /// `(v1 v2~ - v1~ v2 | (u2 - u2~) v1 - (u1 - u1~) v2)`.
    pub fn bracket_closed_form(&self, other: &Spinor) -> Result<Spinor> {
        self.same_space(other)?;
        let (u1, v1, u2, v2) = (&self.u, &self.v, &other.u, &other.v);
        let u = v1.try_mul(&v2.conj())? - v1.conj().try_mul(v2)?;
        let v = (u2 - &u2.conj()).try_mul(v1)? - (u1 - &u1.conj()).try_mul(v2)?;
        Ok(self.rebuild(u, v))
    }

    pub fn involution(&self, which: Involution) -> Spinor {
        match which {
            Involution::Sigma => Spinor {
                u: self.u.clone(),
                v: -self.v.clone(),
                space: self.space,
            },
            Involution::Tau => Spinor {
                u: self.u.conj(),
                v: self.v.conj(),
                space: self.space,
            },
        }
    }

    pub fn sigma(&self) -> Spinor {
        self.involution(Involution::Sigma)
    }

    pub fn tau(&self) -> Spinor {
        self.involution(Involution::Tau)
    }

    /// `tr (u | v) = u + u~`.
    pub fn trace(&self) -> Poly {
        &self.u + &self.u.conj()
    }

    fn apply_componentwise(&self, op: FieldOp, c: &Gq) -> Spinor {
        self.rebuild(
            self.u.apply_field(op).scale(c),
            self.v.apply_field(op).scale(c),
        )
    }

    /// `Theta_k phi = 1/2 (theta_k u | theta_k v)`.
    pub fn theta_action(&self, k: u8) -> Result<Spinor> {
        self.require(Space::Sphere)?;
        let op = match k {
            0 => FieldOp::Theta0,
            1 => FieldOp::Theta1,
            2 => FieldOp::Theta2,
            _ => return Err(Error::BadIndex(format!("Theta index {k}"))),
        };
        Ok(self.apply_componentwise(op, &half()))
    }

    pub fn dirac(&self, which: DiracOp) -> Result<Spinor> {
        let (u, v) = (&self.u, &self.v);
        match which {
            DiracOp::D => {
                self.require(Space::Ambient)?;
                Ok(self.rebuild(
                    u.apply_field(FieldOp::Dz1) - v.apply_field(FieldOp::Dz2Bar),
                    u.apply_field(FieldOp::Dz2) + v.apply_field(FieldOp::Dz1Bar),
                ))
            }
            DiracOp::DDag => {
                self.require(Space::Ambient)?;
                Ok(self.rebuild(
                    u.apply_field(FieldOp::Dz1Bar) + v.apply_field(FieldOp::Dz2Bar),
                    v.apply_field(FieldOp::Dz1) - u.apply_field(FieldOp::Dz2),
                ))
            }
            DiracOp::Tangential => {
                self.require(Space::Sphere)?;
                let h = half();
                Ok(self.rebuild(
                    v.apply_field(FieldOp::EPlus) - u.apply_field(FieldOp::Theta).scale(&h),
                    v.apply_field(FieldOp::Theta).scale(&h) - u.apply_field(FieldOp::EMinus),
                ))
            }
        }
    }

    /// Radial derivation on ambient spinors: `nrad` on each component.
    pub fn nrad_ambient(&self) -> Result<Spinor> {
        self.require(Space::Ambient)?;
        Ok(self.apply_componentwise(FieldOp::NRad, &Gq::one()))
    }

    /// Maximum polynomial degree of the two components.
    pub fn total_degree(&self) -> u32 {
        self.u.total_degree().max(self.v.total_degree())
    }

    /// `<phi, psi> = (1 / 2 pi^2) int (u1 u2~ + v1 v2~)`.
    pub fn inner(&self, other: &Spinor) -> Gq {
        self.u.pairing(&other.u) + self.v.pairing(&other.v)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.name(),
            "u": self.u.to_json(),
            "v": self.v.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Spinor> {
        let space = match v.get("space").and_then(Value::as_str) {
            Some("sphere") => Space::Sphere,
            Some("ambient") => Space::Ambient,
            _ => return Err(Error::Parse("spinor json: bad space".into())),
        };
        let u = Poly::from_json(v.get("u").unwrap_or(&Value::Null))?;
        let w = Poly::from_json(v.get("v").unwrap_or(&Value::Null))?;
        Ok(Spinor::new(u, w, space))
    }
}

impl fmt::Display for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.u, self.v)
    }
}

impl fmt::Debug for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spinor[{}]{}", self.space.name(), self)
    }
}

impl Add for Spinor {
    type Output = Spinor;
    fn add(self, rhs: Spinor) -> Spinor {
        self.try_add(&rhs).expect("spinor spaces differ")
    }
}

impl Sub for Spinor {
    type Output = Spinor;
    fn sub(self, rhs: Spinor) -> Spinor {
        self.try_sub(&rhs).expect("spinor spaces differ")
    }
}

impl Neg for Spinor {
    type Output = Spinor;
    fn neg(self) -> Spinor {
        Spinor {
            u: -self.u,
            v: -self.v,
            space: self.space,
        }
    }
}

/// 4x4 matrices over `Q(i)`.
pub type Mat4 = [[Gq; 4]; 4];

fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out: Mat4 = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = Gq::zero();
            for k in 0..4 {
                acc += &(&a[i][k] * &b[k][j]);
            }
            out[i][j] = acc;
        }
    }
    out
}

/// The Dirac matrices `gamma_1..gamma_4` built from the Pauli matrices.
pub fn clifford_generators() -> [Mat4; 4] {
    let z = Gq::zero;
    let o = Gq::one;
    let i = Gq::i;
    let pauli: [[[Gq; 2]; 2]; 3] = [
        [[z(), o()], [o(), z()]],
        [[z(), -i()], [i(), z()]],
        [[o(), z()], [z(), -o()]],
    ];
    let mut out: [Mat4; 4] = Default::default();
    for (k, s) in pauli.iter().enumerate() {
        for r in 0..2 {
            for c in 0..2 {
                out[k][r][c + 2] = -&(&i() * &s[r][c]);
                out[k][r + 2][c] = &i() * &s[r][c];
            }
        }
    }
    for r in 0..2 {
        out[3][r][r + 2] = -o();
        out[3][r + 2][r] = -o();
    }
    out
}

/// Checks `gamma_p gamma_q + gamma_q gamma_p = 2 delta_pq`.
pub fn clifford_relations_hold() -> bool {
    let g = clifford_generators();
    for p in 0..4 {
        for q in 0..4 {
            let a = mat4_mul(&g[p], &g[q]);
            let b = mat4_mul(&g[q], &g[p]);
            for r in 0..4 {
                for c in 0..4 {
                    let expected = if p == q && r == c {
                        Gq::from_int(2)
                    } else {
                        Gq::zero()
                    };
                    if &a[r][c] + &b[r][c] != expected {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i() -> Gq {
        Gq::i()
    }

    #[test]
    fn product_examples() {
        let jj = Spinor::j().mul(&Spinor::j()).unwrap();
        assert_eq!(jj, -Spinor::identity());
        assert_eq!(
            Spinor::kappa().mul(&Spinor::j()).unwrap(),
            Spinor::sphere(Poly::z1(), Poly::z2bar())
        );
        let k = Spinor::kappa();
        assert_eq!(Spinor::identity().mul(&k).unwrap(), k);
    }

    #[test]
    fn bracket_examples() {
        let k = Spinor::kappa();
        assert!(Spinor::identity().bracket(&k).unwrap().is_zero());
        let ii = Spinor::identity().scale(&i());
        assert_eq!(
            Spinor::j().bracket(&ii).unwrap(),
            Spinor::sphere(Poly::zero(), Poly::constant(Gq::from_int(2) * i()))
        );
        let mu = Spinor::mu();
        assert_eq!(k.bracket(&mu).unwrap(), k.bracket_closed_form(&mu).unwrap());
    }

    #[test]
    fn mixed_spaces_are_rejected() {
        let a = Spinor::ambient(Poly::z1(), Poly::zero());
        assert!(matches!(
            a.mul(&Spinor::identity()),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn involution_examples() {
        assert_eq!(Spinor::kappa().sigma(), Spinor::mu());
        assert_eq!(
            Spinor::mu().tau(),
            Spinor::sphere(Poly::z2bar(), Poly::z1())
        );
        assert_eq!(Spinor::identity().sigma(), Spinor::identity());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(Spinor::kappa().trace(), Poly::z2() + Poly::z2bar());
        assert!(Spinor::j().trace().is_zero());
        let b = Spinor::kappa().bracket(&Spinor::mu()).unwrap();
        assert!(b.trace().normal_form().is_zero());
    }

    #[test]
    fn theta_examples() {
        let t = Spinor::kappa().theta_action(0).unwrap();
        let expected = Spinor::sphere(Poly::z2(), Poly::z1bar()).scale(&(half() * i()));
        assert_eq!(t, expected);
        for k in 0..3 {
            assert!(Spinor::identity().theta_action(k).unwrap().is_zero());
        }
        let (k, j) = (Spinor::kappa(), Spinor::j());
        let lhs = k.mul(&j).unwrap().theta_action(0).unwrap();
        let rhs = k.theta_action(0).unwrap().mul(&j).unwrap()
            + k.mul(&j.theta_action(0).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let amb = Spinor::ambient(Poly::z1(), Poly::zero());
        assert!(amb.theta_action(0).is_err());
    }

    #[test]
    fn dirac_examples() {
        let k = Spinor::kappa();
        let half_k = k.scale(&half());
        assert_eq!(k.dirac(DiracOp::Tangential).unwrap(), half_k);
        let mu = Spinor::mu();
        assert_eq!(
            mu.dirac(DiracOp::Tangential).unwrap(),
            mu.scale(&Gq::from_ratio(-3, 2))
        );
        // only the d/dz1~ entry of the second row fires
        let p = Spinor::ambient(Poly::zero(), Poly::z1bar());
        assert_eq!(
            p.dirac(DiracOp::D).unwrap(),
            Spinor::ambient(Poly::zero(), Poly::one())
        );
        let q = Spinor::ambient(Poly::z1bar(), Poly::zero());
        assert!(q.dirac(DiracOp::D).unwrap().is_zero());
        assert!(k.dirac(DiracOp::D).is_err());
    }

    #[test]
    fn clifford_anticommutation() {
        assert!(clifford_relations_hold());
    }

    #[test]
    fn json_round_trip() {
        let k = Spinor::kappa_star();
        assert_eq!(Spinor::from_json(&k.to_json()).unwrap(), k);
    }

    #[test]
    fn display_form() {
        assert_eq!(Spinor::kappa().to_string(), "(z2 | -z1~)");
        assert_eq!(Spinor::identity().to_string(), "(1 | 0)");
    }
}
