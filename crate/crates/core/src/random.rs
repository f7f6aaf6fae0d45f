//! Seeded generators for the randomized checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::{basis_phi, BasisIndex};
use crate::coeff::{rat, Gq};
use crate::current::{CurrentElement, ExtendedElement};
use crate::poly::{Monomial, Poly};
use crate::spinor::{Space, Spinor};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for a named check.
pub fn sub_rng(seed: u64, label: &str) -> SeededRng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Small nonzero Gaussian rational.
pub fn gq<R: Rng>(rng: &mut R) -> Gq {
    loop {
        let re = rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let im = rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let x = Gq::new(re, im);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Small nonzero rational, as a real Gaussian rational.
pub fn real<R: Rng>(rng: &mut R) -> Gq {
    loop {
        let x = Gq::real(rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random normal-form monomial of total degree at most `max_deg`.
pub fn normal_monomial<R: Rng>(rng: &mut R, max_deg: u32) -> Monomial {
    let a = rng.gen_range(0..=max_deg);
    let b = rng.gen_range(0..=max_deg - a);
    let rest = max_deg - a - b;
    let (c, d) = if rng.gen_bool(0.5) {
        (rng.gen_range(0..=rest), 0)
    } else {
        (0, rng.gen_range(0..=rest))
    };
    Monomial::new(a, b, c, d, 0)
}

pub fn poly<R: Rng>(rng: &mut R, max_deg: u32, terms: usize) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..terms {
        p.add_term(normal_monomial(rng, max_deg), gq(rng));
    }
    p.normal_form()
}

/// Random element of the span of basis spinors with `m <= max_m`.
pub fn spinor<R: Rng>(rng: &mut R, max_m: u32, terms: usize) -> Spinor {
    let all = BasisIndex::up_to_m(max_m);
    let mut acc = Spinor::zero(Space::Sphere);
    for _ in 0..terms {
        let idx = *all.choose(rng).expect("nonempty basis");
        acc = acc + basis_phi(idx).expect("valid index").scale(&gq(rng));
    }
    acc
}

/// Like [`spinor`] but with real coefficients.
pub fn real_spinor<R: Rng>(rng: &mut R, max_m: u32, terms: usize) -> Spinor {
    let all = BasisIndex::up_to_m(max_m);
    let mut acc = Spinor::zero(Space::Sphere);
    for _ in 0..terms {
        let idx = *all.choose(rng).expect("nonempty basis");
        acc = acc + basis_phi(idx).expect("valid index").scale(&real(rng));
    }
    acc
}

/// Random `n x n` matrix of spinors, each entry present with probability 1/2.
pub fn current<R: Rng>(rng: &mut R, n: usize, max_m: u32) -> CurrentElement {
    let mut items = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(0.5) {
                items.push(((i, j), spinor(rng, max_m, 2)));
            }
        }
    }
    CurrentElement::from_entries(n, items).expect("indices in range")
}

pub fn extended<R: Rng>(rng: &mut R, n: usize, max_m: u32) -> ExtendedElement {
    let mut x = ExtendedElement::from_current(current(rng, n, max_m));
    for a in x.a.iter_mut() {
        *a = gq(rng);
    }
    x.t = gq(rng);
    x
}
