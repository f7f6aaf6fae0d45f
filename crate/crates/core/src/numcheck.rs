//! Floating-point oracle: evaluation on S3, Monte Carlo integration and
//! finite differences along the flows of the vector fields.
//!
//! Coordinates: `z1 = x1 + i x2`, `z2 = x3 + i x4`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::poly::{FieldOp, Partial, Poly};
use crate::spinor::Spinor;

pub const FD_STEP: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointS3 {
    pub x: [f64; 4],
}

impl PointS3 {
    /// Normalizes a nonzero vector onto the sphere.
    pub fn from_vec(x: [f64; 4]) -> PointS3 {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        PointS3 {
            x: [x[0] / r, x[1] / r, x[2] / r, x[3] / r],
        }
    }

    pub fn from_z(z1: Complex64, z2: Complex64) -> PointS3 {
        PointS3::from_vec([z1.re, z1.im, z2.re, z2.im])
    }

    /// Uniform sample via a normalized Gaussian vector.
    pub fn random<R: Rng>(rng: &mut R) -> PointS3 {
        loop {
            let x: [f64; 4] = [
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            ];
            if x.iter().map(|v| v * v).sum::<f64>() > 1e-12 {
                return PointS3::from_vec(x);
            }
        }
    }
}

pub fn random_points(n: usize, seed: u64) -> Vec<PointS3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| PointS3::random(&mut rng)).collect()
}

/// Evaluates at an arbitrary point of `R^4 = C^2`, radial factors included.
pub fn eval_poly_r4(p: &Poly, x: &[f64; 4]) -> Complex64 {
    let z1 = Complex64::new(x[0], x[1]);
    let z2 = Complex64::new(x[2], x[3]);
    let r2 = x.iter().map(|v| v * v).sum::<f64>();
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, c) in p.terms() {
        let (re, im) = c.to_f64_pair();
        let val = z1.powu(m.a) * z1.conj().powu(m.b) * z2.powu(m.c) * z2.conj().powu(m.d) * r2.powi(m.s);
        acc += Complex64::new(re, im) * val;
    }
    acc
}

pub fn eval_poly(p: &Poly, pt: &PointS3) -> Complex64 {
    eval_poly_r4(p, &pt.x)
}

pub fn eval_at(phi: &Spinor, pt: &PointS3) -> (Complex64, Complex64) {
    (eval_poly(&phi.u, pt), eval_poly(&phi.v, pt))
}

/// Quaternion `u + j v` as the complex matrix `[[u, -v~], [v, u~]]`.
pub fn quaternion_matrix(u: Complex64, v: Complex64) -> [[Complex64; 2]; 2] {
    [[u, -v.conj()], [v, u.conj()]]
}

/// Product via the 2x2 matrix model; returns the `(u, v)` column.
pub fn quaternion_product(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> (Complex64, Complex64) {
    let ma = quaternion_matrix(a.0, a.1);
    let mb = quaternion_matrix(b.0, b.1);
    let col0 = |r: usize| ma[r][0] * mb[0][0] + ma[r][1] * mb[1][0];
    (col0(0), col0(1))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: Complex64,
    pub stderr: f64,
}

/// Sample mean of `p` over uniform points of S3, i.e. the integral
/// normalized by the volume `2 pi^2`.
pub fn mc_integral(p: &Poly, samples: usize, seed: u64) -> McEstimate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let v = eval_poly(p, &PointS3::random(&mut rng));
        sum += v;
        sum_sq += v.norm_sqr();
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = ((sum_sq / n) - mean.norm_sqr()).max(0.0) * n / (n - 1.0).max(1.0);
    McEstimate {
        mean,
        stderr: (var / n).sqrt(),
    }
}

/// Affine real vector field `x' = M x + c` on `R^4`.
#[derive(Clone, Copy, Debug)]
struct RealField {
    m: [[f64; 4]; 4],
    c: [f64; 4],
}

impl RealField {
    fn velocity(&self, x: &[f64; 4]) -> [f64; 4] {
        let mut out = self.c;
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..4 {
                *o += self.m[i][j] * x[j];
            }
        }
        out
    }

    fn linear(&self, x: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..4 {
                *o += self.m[i][j] * x[j];
            }
        }
        out
    }

    /// `exp(t A)` applied to `x` by its Taylor series; the fields are affine.
    fn flow(&self, x: &[f64; 4], t: f64) -> [f64; 4] {
        let mut out = *x;
        let mut term = self.velocity(x).map(|v| v * t);
        for k in 1..12 {
            for i in 0..4 {
                out[i] += term[i];
            }
            let next = self.linear(&term);
            term = next.map(|v| v * t / (k as f64 + 1.0));
        }
        out
    }
}

/// Splits `sum a_j d/dz_j + b_j d/dz_j~` into real fields `R + i S`.
/// `R` moves `z_j` with velocity `(a_j + b_j~)/2`, `S` with `(a_j - b_j~)/(2i)`.
fn real_parts(op: FieldOp) -> (RealField, RealField) {
    let i = Complex64::new(0.0, 1.0);
    let mut r = RealField { m: [[0.0; 4]; 4], c: [0.0; 4] };
    let mut s = RealField { m: [[0.0; 4]; 4], c: [0.0; 4] };
    for (coef, var) in op.components() {
        let (j, holo) = match var {
            Partial::Z1 => (0, true),
            Partial::Z1Bar => (0, false),
            Partial::Z2 => (1, true),
            Partial::Z2Bar => (1, false),
        };
        // real-linear contributions of a coefficient value w to the z_j velocities
        let to_r = |w: Complex64| if holo { w / 2.0 } else { w.conj() / 2.0 };
        let to_s = |w: Complex64| if holo { w / (2.0 * i) } else { -w.conj() / (2.0 * i) };
        for (mono, c) in coef.terms() {
            let (cre, cim) = c.to_f64_pair();
            let c = Complex64::new(cre, cim);
            // coefficient w(x) = sum_k g_k x_k + g_const
            let mut g = [Complex64::new(0.0, 0.0); 5];
            match (mono.a, mono.b, mono.c, mono.d) {
                (0, 0, 0, 0) => g[4] = c,
                (1, 0, 0, 0) => (g[0], g[1]) = (c, c * i),
                (0, 1, 0, 0) => (g[0], g[1]) = (c, -c * i),
                (0, 0, 1, 0) => (g[2], g[3]) = (c, c * i),
                (0, 0, 0, 1) => (g[2], g[3]) = (c, -c * i),
                _ => panic!("field coefficients are affine"),
            }
            for (field, map) in [(&mut r, &to_r as &dyn Fn(Complex64) -> Complex64), (&mut s, &to_s)] {
                let vc = map(g[4]);
                field.c[2 * j] += vc.re;
                field.c[2 * j + 1] += vc.im;
                for k in 0..4 {
                    let vk = map(g[k]);
                    field.m[2 * j][k] += vk.re;
                    field.m[2 * j + 1][k] += vk.im;
                }
            }
        }
    }
    (r, s)
}

fn directional(p: &Poly, field: &RealField, x: &[f64; 4], h: f64) -> Complex64 {
    let fp = eval_poly_r4(p, &field.flow(x, h));
    let fm = eval_poly_r4(p, &field.flow(x, -h));
    (fp - fm) / (2.0 * h)
}

/// Central-difference derivative of `p` along `op` at a point.
pub fn fd_derivative(op: FieldOp, p: &Poly, x: &[f64; 4]) -> Complex64 {
    let (r, s) = real_parts(op);
    directional(p, &r, x, FD_STEP) + Complex64::new(0.0, 1.0) * directional(p, &s, x, FD_STEP)
}

/// Worst `|fd - exact| / max(|exact|, 1)` over the points.
pub fn fd_check(op: FieldOp, p: &Poly, pts: &[PointS3]) -> f64 {
    let sym = p.apply_field(op);
    pts.iter()
        .map(|pt| {
            let exact = eval_poly(&sym, pt);
            let fd = fd_derivative(op, p, &pt.x);
            (fd - exact).norm() / exact.norm().max(1.0)
        })
        .fold(0.0, f64::max)
}

/// Tangential Dirac operator evaluated by finite differences.
pub fn fd_tangential_dirac(phi: &Spinor, pt: &PointS3) -> (Complex64, Complex64) {
    let d = |op, p: &Poly| fd_derivative(op, p, &pt.x);
    let u = d(FieldOp::EPlus, &phi.v) - d(FieldOp::Theta, &phi.u) / 2.0;
    let v = d(FieldOp::Theta, &phi.v) / 2.0 - d(FieldOp::EMinus, &phi.u);
    (u, v)
}

/// Worst pointwise residual of `Dslash phi = lambda phi`.
pub fn dirac_residual(phi: &Spinor, lambda: f64, pts: &[PointS3]) -> f64 {
    pts.iter()
        .map(|pt| {
            let (du, dv) = fd_tangential_dirac(phi, pt);
            let (u, v) = eval_at(phi, pt);
            ((du - u * lambda).norm_sqr() + (dv - v * lambda).norm_sqr()).sqrt()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Gq;
    use crate::poly::Monomial;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let p = PointS3::from_z(c(1.0, 0.0), c(0.0, 0.0));
        let (u, v) = eval_at(&Spinor::kappa(), &p);
        assert!((u - c(0.0, 0.0)).norm() < 1e-15 && (v - c(-1.0, 0.0)).norm() < 1e-15);
        let q = PointS3::from_z(c(0.0, 0.0), c(1.0, 0.0));
        let (u, v) = eval_at(&Spinor::mu(), &q);
        assert!((u - c(1.0, 0.0)).norm() < 1e-15 && v.norm() < 1e-15);
        for pt in random_points(5, 1) {
            assert_eq!(eval_at(&Spinor::identity(), &pt), (c(1.0, 0.0), c(0.0, 0.0)));
        }
    }

    #[test]
    fn normal_form_preserves_values() {
        let p = Poly::term(Monomial::new(1, 2, 3, 2, -2), Gq::new(crate::coeff::rat(1, 2), crate::coeff::rat(3, 1)));
        for pt in random_points(20, 7) {
            assert!((eval_poly(&p, &pt) - eval_poly(&p.normal_form(), &pt)).norm() < 1e-10);
        }
    }

    #[test]
    fn monte_carlo_examples() {
        let r = mc_integral(&(Poly::z2() * Poly::z2bar()), 100_000, 0);
        assert!((r.mean.re - 0.5).abs() < 5.0 * r.stderr);
        assert!(r.stderr < 0.002);
        let one = mc_integral(&Poly::one(), 1000, 0);
        assert_eq!(one.mean, c(1.0, 0.0));
        let z = mc_integral(&(Poly::z1() * Poly::z2bar()), 100_000, 3);
        assert!(z.mean.norm() < 5.0 * z.stderr);
    }

    #[test]
    fn finite_difference_examples() {
        let pts = random_points(10, 11);
        let p = Poly::term(Monomial::new(2, 0, 0, 1, 0), Gq::one());
        assert!(fd_check(FieldOp::Theta, &p, &pts) <= 1e-6);
        assert!(fd_check(FieldOp::EMinus, &Poly::z1(), &pts) <= 1e-6);
        for op in FieldOp::ALL {
            assert_eq!(fd_check(op, &Poly::one(), &pts), 0.0);
        }
    }

    #[test]
    fn every_field_matches() {
        let pts = random_points(10, 5);
        let p = Poly::term(Monomial::new(2, 1, 0, 3, 0), Gq::i())
            + Poly::term(Monomial::new(0, 1, 2, 0, -1), Gq::from_int(2));
        for op in FieldOp::ALL {
            assert!(fd_check(op, &p, &pts) <= 1e-6, "{op:?}");
        }
    }

    #[test]
    fn quaternion_model_matches_product() {
        let (a, b) = (Spinor::kappa(), Spinor::kappa_star());
        let prod = a.mul(&b).unwrap();
        for pt in random_points(10, 2) {
            let want = quaternion_product(eval_at(&a, &pt), eval_at(&b, &pt));
            let got = eval_at(&prod, &pt);
            assert!((got.0 - want.0).norm() < 1e-10 && (got.1 - want.1).norm() < 1e-10);
        }
    }

    #[test]
    fn kappa_is_an_eigenspinor() {
        let pts = random_points(10, 4);
        assert!(dirac_residual(&Spinor::kappa(), 0.5, &pts) < 1e-8);
        assert!(dirac_residual(&Spinor::mu(), -1.5, &pts) < 1e-8);
        assert!(dirac_residual(&Spinor::mu(), 0.5, &pts) > 0.1);
    }
}
