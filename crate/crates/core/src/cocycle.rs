//! The 2-cocycles `c_k(phi, psi) = (1 / 2 pi^2) int tr(Theta_k phi * psi)`.

use crate::coeff::Gq;
use crate::current::CurrentElement;
use crate::error::{Error, Result};
use crate::spinor::Spinor;

/// Fast route: with `Theta_k phi = (A | B)` the first component of the
/// product is `A u2 - B~ v2`, and the trace integrates to twice its real part.
pub fn cocycle(k: u8, phi: &Spinor, psi: &Spinor) -> Result<Gq> {
    let t = phi.theta_action(k)?;
    if psi.space != phi.space {
        return Err(Error::SpaceMismatch {
            expected: phi.space.name(),
            found: psi.space.name(),
        });
    }
    let first = t.u.pairing(&psi.u.conj()) - psi.v.pairing(&t.v);
    Ok(Gq::real(first.re * crate::coeff::rat_int(2)))
}

/// Literal route: form the product, take the trace, normalize and integrate.
pub fn cocycle_literal(k: u8, phi: &Spinor, psi: &Spinor) -> Result<Gq> {
    let prod = phi.theta_action(k)?.mul(psi)?;
    prod.trace().normal_form().integrate_s3()
}

/// `sum_{i,j} c_k(A_ij, B_ji)`.
pub fn cocycle_matrix(k: u8, a: &CurrentElement, b: &CurrentElement) -> Result<Gq> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(a.n, b.n));
    }
    let mut acc = Gq::zero();
    for ((i, j), phi) in a.entries() {
        if let Some(psi) = b.get(*j, *i) {
            acc += &cocycle(k, phi, psi)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::current::ScalarMatrix;
    use crate::poly::Poly;

    #[test]
    fn kappa_pair() {
        let (k, ks) = (Spinor::kappa(), Spinor::kappa_star());
        assert_eq!(cocycle(0, &k, &ks).unwrap(), Gq::from_int(-1));
        assert!(cocycle(1, &k, &ks).unwrap().is_zero());
        assert!(cocycle(2, &k, &ks).unwrap().is_zero());
        let prod = k.theta_action(0).unwrap().mul(&ks).unwrap();
        assert_eq!(prod, Spinor::identity().scale(&Gq::from_ratio(-1, 2)));
        for kk in 0..3 {
            assert_eq!(cocycle(kk, &k, &ks).unwrap(), cocycle_literal(kk, &k, &ks).unwrap());
        }
    }

    #[test]
    fn identity_pairs_to_zero() {
        for k in 0..3 {
            assert!(cocycle(k, &Spinor::identity(), &Spinor::kappa()).unwrap().is_zero());
        }
    }

    #[test]
    fn commuting_witness() {
        let a = Spinor::sphere(-Poly::z2bar(), Poly::zero());
        let b = Spinor::sphere(Poly::z2().scale(&Gq::i()), Poly::zero());
        assert!(a.bracket(&b).unwrap().is_zero());
        assert_eq!(cocycle(0, &a, &b).unwrap(), Gq::from_ratio(-1, 2));
    }

    #[test]
    fn lambda_pair() {
        let (l, ls) = (Spinor::mu(), Spinor::lambda_star());
        assert_eq!(cocycle(0, &l, &ls).unwrap(), Gq::from_int(-1));
        assert!(cocycle(1, &l, &ls).unwrap().is_zero());
        assert!(cocycle(2, &l, &ls).unwrap().is_zero());
    }

    #[test]
    fn matrix_examples() {
        let h = ScalarMatrix::diag(&[Gq::one(), Gq::from_int(-1)]);
        let a = CurrentElement::tensor(&Spinor::kappa(), &h);
        let b = CurrentElement::tensor(&Spinor::kappa_star(), &h);
        assert_eq!(cocycle_matrix(0, &a, &b).unwrap(), Gq::from_int(-2));
        let e = CurrentElement::tensor(&Spinor::identity(), &ScalarMatrix::unit(2, 0, 1));
        let f = CurrentElement::tensor(&Spinor::identity(), &ScalarMatrix::unit(2, 1, 0));
        assert!(cocycle_matrix(0, &e, &f).unwrap().is_zero());
        assert!(cocycle_matrix(0, &a, &a).unwrap().is_zero());
        let c = CurrentElement::zero(3);
        assert_eq!(cocycle_matrix(0, &a, &c), Err(Error::SizeMismatch(2, 3)));
    }
}
