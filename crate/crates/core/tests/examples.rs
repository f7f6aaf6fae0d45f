//! Worked examples through the public API.

use s3c_core::basis::{basis_phi, expand, homogeneous_parts, BasisIndex};
use s3c_core::cocycle::{cocycle, cocycle_matrix};
use s3c_core::current::{make_sl, root_decompose, weight_of, WeightLabel};
use s3c_core::frontend::{eval_str, render, Format, Value};
use s3c_core::numcheck::{eval_at, mc_integral, PointS3};
use s3c_core::{CurrentElement, ExtendedElement, Gq, Poly, Spinor};

use num_complex::Complex64;

fn spinor(text: &str) -> Spinor {
    match eval_str(text, 2).unwrap() {
        Value::Spinor(s) => s,
        other => panic!("{text} gave {}", other.kind()),
    }
}

#[test]
fn named_spinors_match_basis_elements() {
    assert_eq!(basis_phi(BasisIndex::plus(1, 0, 1)).unwrap(), Spinor::kappa());
    assert_eq!(basis_phi(BasisIndex::minus(0, 0, 0)).unwrap(), Spinor::mu());
    // with J = (0 | 1); the opposite sign convention for J gives -mu*J
    assert_eq!(spinor("phi-(0,0,1)"), spinor("mu*J"));
    assert_eq!(spinor("phi-(0,0,1)"), spinor("(-z1 | z2~)"));
}

#[test]
fn expansions() {
    let e = expand(&spinor("(1 | 0)")).unwrap();
    assert_eq!(e.coeffs.len(), 1);
    assert_eq!(e.coeffs[&BasisIndex::plus(0, 0, 1)], Gq::one());
    let e = expand(&spinor("(z1 | z2~)")).unwrap();
    assert_eq!(e.coeffs.len(), 1);
    assert_eq!(e.coeffs[&BasisIndex::plus(1, 1, 1)], Gq::one());
    assert_eq!(expand(&spinor("(z2~ | 0)")).unwrap().to_json().to_string(), r#"[[["+",1,1,2],"-1/2"]]"#);
}

#[test]
fn products_of_generators() {
    assert_eq!(spinor("kappa*kappastar"), Spinor::identity().scale(&Gq::i()));
    assert_eq!(spinor("J*J"), -Spinor::identity());
    let kk = spinor("kappastar*kappa");
    assert_ne!(kk, Spinor::identity().scale(&Gq::i()));
    // the product of degree 1 and degree -3 elements is not homogeneous
    let parts = homogeneous_parts(&spinor("kappa*mu")).unwrap();
    assert!(parts.len() > 1);
}

#[test]
fn cocycle_values() {
    assert_eq!(cocycle(0, &Spinor::kappa(), &Spinor::kappa_star()).unwrap(), Gq::from_int(-1));
    let alg = make_sl(2).unwrap();
    let a = CurrentElement::tensor(&Spinor::kappa(), &alg.h[0]);
    let b = CurrentElement::tensor(&Spinor::kappa_star(), &alg.h[0]);
    assert_eq!(cocycle_matrix(0, &a, &b).unwrap(), Gq::from_int(-2));
}

#[test]
fn weights_and_root_components() {
    let alg = make_sl(3).unwrap();
    let x = match eval_str("tensor(kappa, E(1,3)) + tensor(mu, E(3,2))", 3).unwrap() {
        Value::Current(c) => ExtendedElement::from_current(c),
        other => panic!("{}", other.kind()),
    };
    assert_eq!(weight_of(&x, &alg).unwrap(), None);
    let parts = root_decompose(&x, &alg).unwrap();
    let keys: Vec<WeightLabel> = parts.keys().cloned().collect();
    assert_eq!(
        keys,
        vec![
            WeightLabel { m: -3, alpha: vec![0, -1], lambda: [0, 0, 0] },
            WeightLabel { m: 1, alpha: vec![1, 1], lambda: [0, 0, 0] },
        ]
    );
    for (k, v) in &parts {
        assert_eq!(weight_of(v, &alg).unwrap().as_ref(), Some(k));
    }
}

#[test]
fn numeric_oracle_agrees_with_exact_values() {
    let p = Poly::z2().try_mul(&Poly::z2bar()).unwrap();
    let est = mc_integral(&p, 100_000, 0);
    assert!((est.mean.re - 0.5).abs() <= 5.0 * est.stderr);
    let pt = PointS3::from_z(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let (u, v) = eval_at(&Spinor::kappa(), &pt);
    assert!(u.norm() < 1e-15 && (v + 1.0).norm() < 1e-15);
}

#[test]
fn rendering() {
    assert_eq!(render(&Value::Spinor(Spinor::kappa()), Format::Text), "(z2 | -z1~)");
    assert_eq!(render(&Value::Scalar(Gq::from_int(-1)), Format::Json), "\"-1/1\"");
    let v = eval_str("[tensor(kappa,H(1)), tensor(kappastar,H(1)) + ak(1)]", 2).unwrap();
    let Value::Extended(x) = v else { panic!() };
    assert_eq!(x.a[0], Gq::from_int(-2));
}
