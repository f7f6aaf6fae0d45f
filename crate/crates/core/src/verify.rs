//! Seeded verification suites. Each check function returns a sorted
//! [`Report`]; suites bundle them under the names used by the CLI.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::basis::{
    basis_phi, basis_phi_ambient, expand, gram_diagonal, homogeneous_parts, in_k, k_split, radial_n, BasisIndex, Sign,
};
use crate::cocycle::{cocycle, cocycle_literal, cocycle_matrix};
use crate::coeff::Gq;
use crate::current::{
    chevalley_generators, ghat_bracket, make_sl, root_decompose, verify_relations, weight_of, CurrentElement,
    ExtendedElement, ScalarMatrix, SimpleAlgebra, WeightLabel,
};
use crate::error::Result;
use crate::frontend::{self, Format, Value};
use crate::numcheck;
use crate::poly::{FieldOp, Poly};
use crate::random::{self, sub_rng};
use crate::report::Report;
use crate::spinor::{DiracOp, Spinor};

pub const SUITES: [&str; 10] = [
    "basis", "algebra", "cocycle", "grading", "current", "jacobi", "chevalley", "numeric", "frontend", "all",
];

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub seed: u64,
    /// Largest `m` of the basis spinors used to build random samples.
    pub max_degree: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, max_degree: 3 }
    }
}

pub fn run_suite(name: &str, cfg: &Config) -> Result<Report> {
    let parts: Vec<Report> = match name {
        "basis" => vec![basis_integrity()?, orthogonality()?],
        "algebra" => vec![closure()?, mean_values(cfg)?, k_structure(cfg)?],
        "cocycle" => vec![cocycle_identities(cfg)?, cocycle_extras(cfg)?],
        "grading" => vec![grading(cfg)?],
        "current" => vec![root_decomposition(cfg)?, current_extras(cfg)?],
        "jacobi" => vec![jacobi(cfg)?],
        "chevalley" => vec![chevalley()?],
        "numeric" => vec![numeric(cfg)],
        "frontend" => vec![frontend_checks(cfg)?],
        "all" => {
            let mut out = Vec::new();
            for s in SUITES.iter().filter(|s| **s != "all") {
                out.push(run_suite(s, cfg)?);
            }
            out
        }
        other => return Err(crate::error::Error::BadIndex(format!("unknown suite '{other}'"))),
    };
    let mut rep = Report::new(name);
    for p in parts {
        rep.merge(p);
    }
    rep.sort();
    Ok(rep)
}

fn finish(mut rep: Report) -> Report {
    rep.sort();
    rep
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join("; ")
    }
}

/// Harmonicity, tangential Dirac and `n` eigenvalues, family sizes for `m <= 4`.
pub fn basis_integrity() -> Result<Report> {
    let mut rep = Report::new("basis");
    for m in 0..=4u32 {
        for sign in [Sign::Plus, Sign::Minus] {
            let fam = BasisIndex::family(sign, m);
            let tag = format!("basis {}{m}", sign.symbol());
            let want = (m + 1) * (m + 2);
            rep.check(format!("{tag} family size"), fam.len() == want as usize, fam.len().to_string(), want.to_string());
            let (mut harm, mut dirac, mut nrad) = (Vec::new(), Vec::new(), Vec::new());
            for idx in fam {
                let amb = basis_phi_ambient(idx)?;
                if !amb.dirac(DiracOp::D)?.is_zero() {
                    harm.push(idx.to_string());
                }
                let s = basis_phi(idx)?;
                let ev = idx.eigenvalue();
                if s.dirac(DiracOp::Tangential)? != s.scale(&ev) {
                    dirac.push(idx.to_string());
                }
                if radial_n(&s)? != s.scale(&ev) || amb.nrad_ambient()? != amb.scale(&ev) {
                    nrad.push(idx.to_string());
                }
            }
            rep.check(format!("{tag} harmonic"), harm.is_empty(), list(&harm), "D phi = 0");
            let ev = BasisIndex::new(sign, m, 0, 0)?.eigenvalue();
            rep.check(format!("{tag} Dslash eigenvalue"), dirac.is_empty(), list(&dirac), format!("eigenvalue {ev}"));
            rep.check(format!("{tag} n eigenvalue"), nrad.is_empty(), list(&nrad), format!("eigenvalue {ev}"));
        }
    }
    Ok(finish(rep))
}

/// Gram matrix of all basis spinors with `m <= 3`.
pub fn orthogonality() -> Result<Report> {
    let mut rep = Report::new("basis");
    let all = BasisIndex::up_to_m(3);
    let spinors: Vec<Spinor> = all.iter().map(|i| basis_phi(*i)).collect::<Result<_>>()?;
    let mut off = Vec::new();
    let mut diag = Vec::new();
    for (a, (ia, sa)) in all.iter().zip(&spinors).enumerate() {
        for (b, (ib, sb)) in all.iter().zip(&spinors).enumerate() {
            let g = sa.inner(sb);
            if a == b {
                let want = Gq::real(gram_diagonal(*ia));
                if g != want {
                    diag.push(format!("{ia}: {g} vs {want}"));
                }
            } else if !g.is_zero() {
                off.push(format!("<{ia},{ib}> = {g}"));
            }
        }
    }
    rep.check("gram off-diagonal m<=3", off.is_empty(), list(&off), "0");
    rep.check("gram diagonal m<=3", diag.is_empty(), list(&diag), "k! l! (m-l)! / (m+1-k)!");
    Ok(finish(rep))
}

/// Every product of basis spinors with `m1 + m2 <= 5` re-expands exactly.
pub fn closure() -> Result<Report> {
    let mut rep = Report::new("algebra");
    let all = BasisIndex::up_to_m(5);
    let spinors: Vec<(BasisIndex, Spinor)> =
        all.iter().map(|i| basis_phi(*i).map(|s| (*i, s))).collect::<Result<_>>()?;
    for total in 0..=5u32 {
        let mut bad = Vec::new();
        let mut count = 0usize;
        for (ia, sa) in spinors.iter().filter(|(i, _)| i.m <= total) {
            for (ib, sb) in spinors.iter().filter(|(i, _)| i.m + ia.m == total) {
                count += 1;
                let prod = sa.mul(sb)?;
                let ok = match expand(&prod) {
                    Ok(e) => e.reconstruct()? == prod,
                    Err(_) => false,
                };
                if !ok {
                    bad.push(format!("{ia}*{ib}"));
                }
            }
        }
        rep.check(
            format!("closure m1+m2={total}"),
            bad.is_empty(),
            format!("{count} products, failing: {}", list(&bad)),
            "zero residual",
        );
    }
    Ok(finish(rep))
}

/// Homogeneous degrees add under products; phi+(2,0,0)*phi-(0,0,0) sits in degree -1.
pub fn grading(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("grading");
    let mut rng = sub_rng(cfg.seed, "grading");
    let all = BasisIndex::up_to_m(cfg.max_degree);
    let mut bad = Vec::new();
    for _ in 0..50 {
        let (ia, ib) = (*all.choose(&mut rng).expect("basis"), *all.choose(&mut rng).expect("basis"));
        let a = basis_phi(ia)?.scale(&random::gq(&mut rng));
        let b = basis_phi(ib)?.scale(&random::gq(&mut rng));
        let want = ia.degree() + ib.degree();
        let parts = homogeneous_parts(&a.mul(&b)?)?;
        if parts.keys().any(|d| *d != want) {
            let keys: Vec<String> = parts.keys().map(|d| d.to_string()).collect();
            bad.push(format!("{ia}*{ib}: degrees {{{}}} vs {want}", keys.join(",")));
        }
    }
    rep.check("grading additivity 50 pairs", bad.is_empty(), list(&bad), "single degree N1+N2");

    let prod = basis_phi(BasisIndex::plus(2, 0, 0))?.mul(&basis_phi(BasisIndex::minus(0, 0, 0))?)?;
    let degs: Vec<i64> = homogeneous_parts(&prod)?.keys().copied().collect();
    rep.check(
        "grading phi+(2,0,0)*phi-(0,0,0)",
        degs == vec![-1],
        format!("{degs:?}"),
        "[-1]",
    );
    let km = Spinor::kappa().mul(&Spinor::mu())?;
    let degs: Vec<i64> = homogeneous_parts(&km)?.keys().copied().collect();
    rep.compare("grading kappa*mu", degs == vec![-2], format!("{degs:?}"), "[-2]");
    Ok(finish(rep))
}

fn triples<R: Rng>(rng: &mut R, max_m: u32, count: usize) -> Vec<[Spinor; 3]> {
    (0..count)
        .map(|_| {
            [
                random::spinor(rng, max_m, 3),
                random::spinor(rng, max_m, 3),
                random::spinor(rng, max_m, 3),
            ]
        })
        .collect()
}

/// Antisymmetry, realness, both cyclic identities, the `kappa` pair, the
/// derivation compatibility and the non-coboundary witness.
pub fn cocycle_identities(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("cocycle");
    let mut rng = sub_rng(cfg.seed, "cocycle");
    let samples = triples(&mut rng, cfg.max_degree, 50);
    for k in 0..3u8 {
        let (mut anti, mut real, mut cyc, mut lcyc, mut deriv) = (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for (t, [a, b, c]) in samples.iter().enumerate() {
            let ab = cocycle(k, a, b)?;
            let ba = cocycle(k, b, a)?;
            if !(&ab + &ba).is_zero() {
                anti.push(format!("#{t}: {ab} vs {ba}"));
            }
            if !ab.is_real() {
                real.push(format!("#{t}: {ab}"));
            }
            let s = cocycle(k, &a.mul(b)?, c)? + cocycle(k, &b.mul(c)?, a)? + cocycle(k, &c.mul(a)?, b)?;
            if !s.is_zero() {
                cyc.push(format!("#{t}: {s}"));
            }
            let s = cocycle(k, &a.bracket(b)?, c)? + cocycle(k, &b.bracket(c)?, a)? + cocycle(k, &c.bracket(a)?, b)?;
            if !s.is_zero() {
                lcyc.push(format!("#{t}: {s}"));
            }
            let s = cocycle(k, &radial_n(a)?, b)? + cocycle(k, a, &radial_n(b)?)?;
            if !s.is_zero() {
                deriv.push(format!("#{t}: {s}"));
            }
        }
        rep.check(format!("c{k} antisymmetry"), anti.is_empty(), list(&anti), "c(a,b) + c(b,a) = 0");
        rep.check(format!("c{k} real"), real.is_empty(), list(&real), "real");
        rep.check(format!("c{k} associative cyclic identity"), cyc.is_empty(), list(&cyc), "0");
        rep.check(format!("c{k} Lie cyclic identity"), lcyc.is_empty(), list(&lcyc), "0");
        rep.check(format!("c{k} n-compatibility"), deriv.is_empty(), list(&deriv), "c(n a, b) + c(a, n b) = 0");
    }

    let (ka, ks) = (Spinor::kappa(), Spinor::kappa_star());
    let values: Vec<Gq> = (0..3).map(|k| cocycle(k, &ka, &ks)).collect::<Result<_>>()?;
    let want = [Gq::from_int(-1), Gq::zero(), Gq::zero()];
    for k in 0..3 {
        rep.check(format!("c{k}(kappa, kappastar)"), values[k] == want[k], values[k].to_string(), want[k].to_string());
        let lit = cocycle_literal(k as u8, &ka, &ks)?;
        rep.check(format!("c{k}(kappa, kappastar) literal route"), lit == want[k], lit.to_string(), want[k].to_string());
    }
    let prod = ka.theta_action(0)?.mul(&ks)?;
    let half = Spinor::identity().scale(&Gq::from_ratio(-1, 2));
    rep.check("(Theta0 kappa)*kappastar", prod == half, prod.to_string(), half.to_string());

    let a = Spinor::sphere(-Poly::z2bar(), Poly::zero());
    let b = Spinor::sphere(Poly::z2().scale(&Gq::i()), Poly::zero());
    let br = a.bracket(&b)?;
    let c = cocycle(0, &a, &b)?;
    let ok = br.is_zero() && c.norm_sqr() == crate::coeff::rat(1, 4);
    rep.check("non-coboundary witness", ok, format!("bracket {br}, c0 = {c}"), "bracket 0, |c0| = 1/2");

    // the pair without the factor i on the second spinor
    let p1 = basis_phi(BasisIndex::plus(1, 1, 2))?;
    let p2 = basis_phi(BasisIndex::plus(1, 0, 1))?.try_add(&basis_phi(BasisIndex::minus(0, 0, 0))?)?;
    let literal = cocycle(0, &p1, &p2.scale(&Gq::from_ratio(1, 2)))?;
    rep.compare(
        "witness pair without the factor i",
        literal.norm_sqr() == crate::coeff::rat(1, 4),
        literal.to_string(),
        "1/2 up to normalization",
    );
    Ok(finish(rep))
}

fn random_current<R: Rng>(rng: &mut R, n: usize, max_m: u32) -> CurrentElement {
    random::current(rng, n, max_m)
}

/// Basis vanishing of `c0` and the matrix-cocycle identities.
pub fn cocycle_extras(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("cocycle");
    let all = BasisIndex::up_to_m(2);
    let spinors: Vec<(BasisIndex, Spinor)> =
        all.iter().map(|i| basis_phi(*i).map(|s| (*i, s))).collect::<Result<_>>()?;
    let mut bad = Vec::new();
    for (ia, a) in &spinors {
        for (ib, b) in &spinors {
            let c = cocycle(0, a, b)?;
            if !c.is_zero() {
                bad.push(format!("c0({ia},{ib}) = {c}"));
            }
        }
    }
    rep.compare("c0 on basis pairs m<=2", bad.is_empty(), list(&bad), "0");

    let mut rng = sub_rng(cfg.seed, "cocycle-matrix");
    let max_m = cfg.max_degree.min(2);
    let (mut anti, mut cyc, mut lcyc, mut deriv) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for t in 0..10 {
        let a = random_current(&mut rng, 2, max_m);
        let b = random_current(&mut rng, 2, max_m);
        let c = random_current(&mut rng, 2, max_m);
        for k in 0..3u8 {
            let s = cocycle_matrix(k, &a, &b)? + cocycle_matrix(k, &b, &a)?;
            if !s.is_zero() {
                anti.push(format!("#{t} k={k}: {s}"));
            }
            let s = cocycle_matrix(k, &a.mul(&b)?, &c)? + cocycle_matrix(k, &b.mul(&c)?, &a)? + cocycle_matrix(k, &c.mul(&a)?, &b)?;
            if !s.is_zero() {
                cyc.push(format!("#{t} k={k}: {s}"));
            }
            let s = cocycle_matrix(k, &a.bracket(&b)?, &c)?
                + cocycle_matrix(k, &b.bracket(&c)?, &a)?
                + cocycle_matrix(k, &c.bracket(&a)?, &b)?;
            if !s.is_zero() {
                lcyc.push(format!("#{t} k={k}: {s}"));
            }
            let s = cocycle_matrix(k, &a.radial_n()?, &b)? + cocycle_matrix(k, &a, &b.radial_n()?)?;
            if !s.is_zero() {
                deriv.push(format!("#{t} k={k}: {s}"));
            }
        }
    }
    rep.check("matrix cocycle antisymmetry", anti.is_empty(), list(&anti), "0");
    rep.check("matrix cocycle associative cyclic identity", cyc.is_empty(), list(&cyc), "0");
    rep.check("matrix cocycle Lie cyclic identity", lcyc.is_empty(), list(&lcyc), "0");
    rep.check("matrix cocycle n-compatibility", deriv.is_empty(), list(&deriv), "0");

    // trace rule against (X|Y) c(phi, psi) on real and complex-scaled tensors
    let alg = make_sl(2)?;
    let (x, y) = (&alg.h[0], &alg.h[0]);
    let (ka, ks) = (Spinor::kappa(), Spinor::kappa_star());
    let pure = x.trace_form(y) * cocycle(0, &ka, &ks)?;
    let tr = cocycle_matrix(0, &CurrentElement::tensor(&ka, x), &CurrentElement::tensor(&ks, y))?;
    rep.check("matrix cocycle on real pure tensors", tr == pure, tr.to_string(), pure.to_string());
    let ix = x.scale(&Gq::i());
    let pure = ix.trace_form(y) * cocycle(0, &ka, &ks)?;
    let tr = cocycle_matrix(0, &CurrentElement::tensor(&ka, &ix), &CurrentElement::tensor(&ks, y))?;
    rep.compare("matrix cocycle on complex-scaled pure tensors", tr == pure, tr.to_string(), pure.to_string());
    Ok(finish(rep))
}

/// Integrals of `Theta_k phi` and of `tr(n phi)` vanish.
pub fn mean_values(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("algebra");
    let mut rng = sub_rng(cfg.seed, "mean-values");
    let (mut theta, mut trace) = (Vec::new(), Vec::new());
    for t in 0..50 {
        let phi = random::spinor(&mut rng, cfg.max_degree, 4);
        for k in 0..3u8 {
            let th = phi.theta_action(k)?;
            let iu = th.u.normal_form().integrate_s3()?;
            let iv = th.v.normal_form().integrate_s3()?;
            if !iu.is_zero() || !iv.is_zero() {
                theta.push(format!("#{t} k={k}: ({iu}, {iv})"));
            }
        }
        let it = radial_n(&phi)?.trace().normal_form().integrate_s3()?;
        if !it.is_zero() {
            trace.push(format!("#{t}: {it}"));
        }
    }
    rep.check("mean value of Theta_k phi", theta.is_empty(), list(&theta), "0");
    rep.check("mean value of tr(n phi)", trace.is_empty(), list(&trace), "0");
    Ok(finish(rep))
}

/// `K` is central, and no non-`K` basis element normalizes it.
pub fn k_structure(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("algebra");
    let mut rng = sub_rng(cfg.seed, "k-structure");
    let mut bad = Vec::new();
    for t in 0..50 {
        let phi = random::spinor(&mut rng, cfg.max_degree, 4);
        let psi = random::spinor(&mut rng, cfg.max_degree, 4);
        let (k, _) = k_split(&phi);
        let br = k.bracket(&psi)?;
        if !in_k(&k) || !br.is_zero() {
            bad.push(format!("#{t}: {br}"));
        }
    }
    rep.check("K commutes with everything", bad.is_empty(), list(&bad), "0");

    let probes = [
        Spinor::identity(),
        Spinor::sphere(Poly::z1() + Poly::z1bar(), Poly::zero()),
        Spinor::sphere(Poly::z2() + Poly::z2bar(), Poly::zero()),
    ];
    let mut unwitnessed = Vec::new();
    let mut tested = 0;
    for idx in BasisIndex::up_to_m(2) {
        let psi = basis_phi(idx)?;
        if in_k(&psi) {
            continue;
        }
        tested += 1;
        let mut found = false;
        for p in &probes {
            if !in_k(&p.mul(&psi)?) {
                found = true;
                break;
            }
        }
        if !found {
            unwitnessed.push(idx.to_string());
        }
    }
    rep.check(
        "normalizer probe m<=2",
        unwitnessed.is_empty(),
        format!("{tested} elements, unwitnessed: {}", list(&unwitnessed)),
        "witness for every non-K element",
    );
    Ok(finish(rep))
}

/// Jacobi identity of the extended bracket on random triples over `sl(2)`.
pub fn jacobi(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("jacobi");
    let mut rng = sub_rng(cfg.seed, "jacobi");
    let max_m = cfg.max_degree.min(2);
    let mut bad = Vec::new();
    for t in 0..25 {
        let x = random::extended(&mut rng, 2, max_m);
        let y = random::extended(&mut rng, 2, max_m);
        let z = random::extended(&mut rng, 2, max_m);
        let s = ghat_bracket(&x, &ghat_bracket(&y, &z)?)?
            .try_add(&ghat_bracket(&y, &ghat_bracket(&z, &x)?)?)?
            .try_add(&ghat_bracket(&z, &ghat_bracket(&x, &y)?)?)?;
        if !s.is_zero() {
            let mut note = format!("#{t}: ");
            if !s.mat.is_zero() {
                note.push_str("matrix part nonzero");
            }
            if s.a.iter().any(|a| !a.is_zero()) {
                note.push_str(&format!(" a = [{}, {}, {}]", s.a[0], s.a[1], s.a[2]));
            }
            bad.push(note);
        }
    }
    rep.check("Jacobi identity 25 triples", bad.is_empty(), list(&bad), "0");

    // same identity with the derivation coordinate removed
    let mut rng = sub_rng(cfg.seed, "jacobi-no-n");
    let mut bad = Vec::new();
    for t in 0..10 {
        let mut xs: Vec<ExtendedElement> = (0..3).map(|_| random::extended(&mut rng, 2, max_m)).collect();
        xs.iter_mut().for_each(|x| x.t = Gq::zero());
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        let s = ghat_bracket(x, &ghat_bracket(y, z)?)?
            .try_add(&ghat_bracket(y, &ghat_bracket(z, x)?)?)?
            .try_add(&ghat_bracket(z, &ghat_bracket(x, y)?)?)?;
        if !s.is_zero() {
            bad.push(format!("#{t}"));
        }
    }
    rep.check("Jacobi identity without n", bad.is_empty(), list(&bad), "0");
    Ok(finish(rep))
}

fn label(m: i64, alpha: Vec<i64>) -> WeightLabel {
    WeightLabel {
        m,
        alpha,
        lambda: [0, 0, 0],
    }
}

fn show_weight(w: &Option<WeightLabel>) -> String {
    match w {
        Some(w) => w.to_string(),
        None => "not a weight vector".into(),
    }
}

/// Root decomposition re-sums, components carry their weights, and pure
/// tensors of fixed degree are eigenvectors of the extended Cartan.
pub fn root_decomposition(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("current");
    for n in [2usize, 3] {
        let alg = make_sl(n)?;
        let mut rng = sub_rng(cfg.seed, &format!("roots-{n}"));
        let (mut resum, mut keys) = (Vec::new(), Vec::new());
        for t in 0..20 {
            let x = random::extended(&mut rng, n, cfg.max_degree.min(2));
            let parts = root_decompose(&x, &alg)?;
            let mut acc = ExtendedElement::zero(n);
            for (key, part) in &parts {
                acc = acc.try_add(part)?;
                let w = weight_of(part, &alg)?;
                if w.as_ref() != Some(key) {
                    keys.push(format!("#{t} {key}: {}", show_weight(&w)));
                }
            }
            if acc != x {
                resum.push(format!("#{t}"));
            }
        }
        rep.check(format!("sl{n} root decomposition re-sums"), resum.is_empty(), list(&resum), "exact");
        rep.check(format!("sl{n} component weights"), keys.is_empty(), list(&keys), "weight equals key");

        let mut bad = Vec::new();
        for (sign, m, deg) in [(Sign::Minus, 0u32, -3i64), (Sign::Plus, 0, 0), (Sign::Plus, 1, 1)] {
            for idx in BasisIndex::family(sign, m) {
                let phi = basis_phi(idx)?;
                for i in 0..n {
                    for j in 0..n {
                        if i == j {
                            continue;
                        }
                        let x = ExtendedElement::tensor(&phi, &ScalarMatrix::unit(n, i, j));
                        let w = weight_of(&x, &alg)?;
                        let want = label(deg, alg.root_of_entry(i, j));
                        if w.as_ref() != Some(&want) {
                            bad.push(format!("{idx} E({},{}): {}", i + 1, j + 1, show_weight(&w)));
                        }
                    }
                }
            }
        }
        rep.check(format!("sl{n} eigen-relations on pure tensors"), bad.is_empty(), list(&bad), "(m, alpha)");
    }
    Ok(finish(rep))
}

fn weight_case(rep: &mut Report, name: &str, x: &ExtendedElement, alg: &SimpleAlgebra, want: Option<WeightLabel>) -> Result<()> {
    let w = weight_of(x, alg)?;
    rep.check(name, w == want, show_weight(&w), show_weight(&want));
    Ok(())
}

/// Spot checks of the current algebra: examples, antisymmetry, Cartan
/// properties, degree bookkeeping and the centralizer of `n`.
pub fn current_extras(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("current");
    let alg = make_sl(2)?;
    let (ka, mu) = (Spinor::kappa(), Spinor::mu());
    let ke = ExtendedElement::tensor(&ka, &alg.e[0]);
    let mf = ExtendedElement::tensor(&mu, &alg.f[0]);
    weight_case(&mut rep, "weight kappa E12", &ke, &alg, Some(label(1, vec![1])))?;
    weight_case(&mut rep, "weight mu E21", &mf, &alg, Some(label(-3, vec![-1])))?;
    let mixed = ExtendedElement::tensor(&Spinor::identity(), &alg.h[0]).try_add(&ke)?;
    weight_case(&mut rep, "weight of a mixed element", &mixed, &alg, None)?;

    let parts = root_decompose(&ke.try_add(&mf)?, &alg)?;
    let keys: Vec<WeightLabel> = parts.keys().cloned().collect();
    let want = vec![label(-3, vec![-1]), label(1, vec![1])];
    rep.check("root decomposition kappa E12 + mu E21", keys == want, format!("{keys:?}"), format!("{want:?}"));
    let mut x = ExtendedElement::tensor(&Spinor::identity(), &alg.h[0]);
    x.a[0] = Gq::one();
    x.t = Gq::one();
    let keys: Vec<WeightLabel> = root_decompose(&x, &alg)?.keys().cloned().collect();
    rep.check("root decomposition of a Cartan element", keys == vec![label(0, vec![0])], format!("{keys:?}"), "[0 delta]");

    let gens = chevalley_generators(&alg);
    let g = |name: &str| gens.iter().find(|(n, _)| n == name).map(|(_, x)| x.clone()).expect("generator");
    weight_case(&mut rep, "weight fkappa", &g("fkappa"), &alg, Some(label(1, vec![-1])))?;
    weight_case(&mut rep, "weight flambda", &g("flambda"), &alg, Some(label(-3, vec![-1])))?;
    weight_case(&mut rep, "weight fJ", &g("fJ"), &alg, Some(label(0, vec![-1])))?;

    let degs = |s: &Spinor| -> Result<Vec<i64>> { Ok(homogeneous_parts(s)?.keys().copied().collect()) };
    rep.check("kappa in degree 1", degs(&ka)? == vec![1], format!("{:?}", degs(&ka)?), "[1]");
    rep.check("lambda in degree -3", degs(&mu)? == vec![-3], format!("{:?}", degs(&mu)?), "[-3]");
    let ls = Spinor::lambda_star();
    let cs: Vec<Gq> = (0..3).map(|k| cocycle(k, &mu, &ls)).collect::<Result<_>>()?;
    let ok = cs[0] == Gq::from_int(-1) && cs[1].is_zero() && cs[2].is_zero();
    rep.check("c_k(lambda, lambdastar)", ok, format!("{}, {}, {}", cs[0], cs[1], cs[2]), "-1, 0, 0");

    let mut rng = sub_rng(cfg.seed, "current-extras");
    let max_m = cfg.max_degree.min(2);
    let (mut cur, mut ext) = (Vec::new(), Vec::new());
    for t in 0..10 {
        let (a, b) = (random::current(&mut rng, 2, max_m), random::current(&mut rng, 2, max_m));
        if !a.bracket(&b)?.try_add(&b.bracket(&a)?)?.is_zero() {
            cur.push(format!("#{t}"));
        }
        let (x, y) = (random::extended(&mut rng, 2, max_m), random::extended(&mut rng, 2, max_m));
        if !ghat_bracket(&x, &y)?.try_add(&ghat_bracket(&y, &x)?)?.is_zero() {
            ext.push(format!("#{t}"));
        }
    }
    rep.check("current bracket antisymmetry", cur.is_empty(), list(&cur), "0");
    rep.check("extended bracket antisymmetry", ext.is_empty(), list(&ext), "0");

    let alg3 = make_sl(3)?;
    let (mut cartan, mut eigen, mut kbot) = (Vec::new(), Vec::new(), Vec::new());
    for t in 0..10 {
        let (phi, _) = k_split(&random::spinor(&mut rng, max_m, 3));
        let psi = random::spinor(&mut rng, max_m, 3);
        for i in 0..2 {
            let ph = CurrentElement::tensor(&phi, &alg3.h[i]);
            for j in 0..2 {
                if !ph.bracket(&CurrentElement::tensor(&psi, &alg3.h[j]))?.is_zero() {
                    cartan.push(format!("#{t} h{} h{}", i + 1, j + 1));
                }
                let v = ph.bracket(&CurrentElement::tensor(&psi, &alg3.e[j]))?;
                let want = CurrentElement::tensor(&phi.mul(&psi)?, &alg3.e[j].scale(&Gq::from_int(alg3.cartan[j][i])));
                if v != want {
                    eigen.push(format!("#{t} h{} e{}", i + 1, j + 1));
                }
            }
        }
        let diag = |rng: &mut random::SeededRng| {
            CurrentElement::from_entries(3, (0..3).map(|i| ((i, i), random::spinor(rng, max_m, 2)))).expect("diagonal")
        };
        let (a, b) = (diag(&mut rng), diag(&mut rng));
        let br = a.bracket(&b)?;
        if br.entries().any(|(_, s)| !k_split(s).0.is_zero()) {
            kbot.push(format!("#{t}"));
        }
    }
    rep.check("K h commutes with L h", cartan.is_empty(), list(&cartan), "0");
    rep.check("K h eigen-relation", eigen.is_empty(), list(&eigen), "c_ji (phi psi) e_j");
    rep.check("diagonal brackets have no K part", kbot.is_empty(), list(&kbot), "0");

    let n = ExtendedElement::derivation(2);
    let (mut zero_fail, mut nonzero_fail) = (Vec::new(), Vec::new());
    for idx in BasisIndex::up_to_m(2) {
        let x = ExtendedElement::tensor(&basis_phi(idx)?, &alg.e[0]);
        let v = ghat_bracket(&n, &x)?;
        if idx.degree() == 0 && !v.is_zero() {
            zero_fail.push(idx.to_string());
        }
        if idx.degree() != 0 && v.is_zero() {
            nonzero_fail.push(idx.to_string());
        }
    }
    rep.check("centralizer of n contains degree 0", zero_fail.is_empty(), list(&zero_fail), "[n, x] = 0");
    rep.check("centralizer of n excludes other degrees", nonzero_fail.is_empty(), list(&nonzero_fail), "[n, x] != 0");
    Ok(finish(rep))
}

/// Generator relations for `sl(2)` and `sl(3)`.
pub fn chevalley() -> Result<Report> {
    let mut rep = Report::new("chevalley");
    for n in [2, 3] {
        rep.merge(verify_relations(&make_sl(n)?)?);
    }
    Ok(finish(rep))
}

const MC_SAMPLES: usize = 100_000;
const MC_SIGMAS: f64 = 5.0;
const FD_TOL: f64 = 1e-6;
const DIRAC_TOL: f64 = 1e-8;
const POINTWISE_TOL: f64 = 1e-10;

/// Floating-point cross-checks of the exact kernel.
pub fn numeric(cfg: &Config) -> Report {
    let mut rep = Report::new("numeric");
    let mut rng = sub_rng(cfg.seed, "numeric");

    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for t in 0..20u64 {
        let m = random::normal_monomial(&mut rng, 6);
        let p = Poly::term(m, Gq::one());
        let exact = p.integrate_s3().expect("normal form").to_f64_pair();
        let est = numcheck::mc_integral(&p, MC_SAMPLES, cfg.seed.wrapping_add(t));
        let dev = ((est.mean.re - exact.0).powi(2) + (est.mean.im - exact.1).powi(2)).sqrt();
        let ok = if est.stderr == 0.0 { dev < 1e-12 } else { dev <= MC_SIGMAS * est.stderr };
        worst = worst.max(if est.stderr == 0.0 { 0.0 } else { dev / est.stderr });
        if !ok {
            bad.push(format!("{m:?}: {:.5} vs {:.5} (stderr {:.2e})", est.mean.re, exact.0, est.stderr));
        }
    }
    rep.check(
        "Monte Carlo monomial integrals",
        bad.is_empty(),
        format!("worst {worst:.2} sigma; failing: {}", list(&bad)),
        "within 5 sigma",
    );

    let pts = numcheck::random_points(10, cfg.seed ^ 0x5eed);
    let mut polys = vec![Poly::one(), Poly::z1()];
    for _ in 0..5 {
        polys.push(random::poly(&mut rng, 4, 4));
    }
    for op in FieldOp::ALL {
        let worst = polys.iter().map(|p| numcheck::fd_check(op, p, &pts)).fold(0.0, f64::max);
        rep.check(format!("finite differences {}", op.name()), worst <= FD_TOL, format!("{worst:.2e}"), "<= 1e-6");
    }

    let pts = numcheck::random_points(20, cfg.seed ^ 0xd1ac);
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for idx in BasisIndex::up_to_m(2) {
        let phi = basis_phi(idx).expect("valid index");
        let (re, _) = idx.eigenvalue().to_f64_pair();
        let r = numcheck::dirac_residual(&phi, re, &pts);
        worst = worst.max(r);
        if r > DIRAC_TOL {
            bad.push(format!("{idx}: {r:.2e}"));
        }
    }
    rep.check(
        "pointwise Dirac eigen-residuals m<=2",
        bad.is_empty(),
        format!("worst {worst:.2e}; failing: {}", list(&bad)),
        "<= 1e-8",
    );

    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let a = random::spinor(&mut rng, 2, 3);
        let b = random::spinor(&mut rng, 2, 3);
        let prod = a.mul(&b).expect("sphere spinors");
        for pt in &pts {
            let (u, v) = numcheck::eval_at(&prod, pt);
            let (qu, qv) = numcheck::quaternion_product(numcheck::eval_at(&a, pt), numcheck::eval_at(&b, pt));
            worst = worst.max((u - qu).norm().max((v - qv).norm()));
        }
    }
    rep.check("product matches quaternion model", worst <= POINTWISE_TOL, format!("{worst:.2e}"), "<= 1e-10");

    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let mut p = Poly::zero();
        for _ in 0..4 {
            let m = random::normal_monomial(&mut rng, 3);
            p.add_term(crate::poly::Monomial::new(m.a, m.b, m.c + 1, m.d + 1, rng.gen_range(-1..=1)), random::gq(&mut rng));
        }
        let nf = p.normal_form();
        for pt in &pts {
            worst = worst.max((numcheck::eval_poly(&p, pt) - numcheck::eval_poly(&nf, pt)).norm());
        }
    }
    rep.check("normal form preserves values", worst <= POINTWISE_TOL, format!("{worst:.2e}"), "<= 1e-10");
    finish(rep)
}

/// Random byte strings and token soup; returns the number of panics.
pub fn fuzz_frontend(seed: u64, count: usize) -> usize {
    const TOKENS: &[&str] = &[
        "kappa", "mu", "I", "J", "kappastar", "lambdastar", "z1", "z2~", "i", "1/2", "3", "+", "-", "*", "(", ")",
        "[", "]", ",", "|", "^", "2", "tr(", "sigma(", "Theta1(", "n(", "Dslash(", "phi+(1,0,1)", "phi-(0,0,0)",
        "tensor(", "E(1,2)", "H(1)", "ak(0)", "nder", "v(1;1,0)", "~", ";", "/", "0",
    ];
    let mut rng = sub_rng(seed, "fuzz");
    let prev = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut crashes = 0;
    for t in 0..count {
        let text = if t % 2 == 0 {
            let len = rng.gen_range(0..40);
            let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
            String::from_utf8_lossy(&bytes).into_owned()
        } else {
            let len = rng.gen_range(1..12);
            (0..len).map(|_| *TOKENS.choose(&mut rng).expect("tokens")).collect::<Vec<_>>().join(" ")
        };
        let res = catch_unwind(AssertUnwindSafe(|| {
            if let Ok(e) = frontend::parse(&text) {
                let _ = frontend::eval(&e, &frontend::Context::new(2));
            }
        }));
        if res.is_err() {
            crashes += 1;
        }
    }
    std::panic::set_hook(prev);
    crashes
}

/// Render/parse round trip on random spinors and a crash-free fuzz run.
pub fn frontend_checks(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("frontend");
    let mut rng = sub_rng(cfg.seed, "frontend");
    let mut bad = Vec::new();
    for t in 0..100 {
        let s = random::spinor(&mut rng, cfg.max_degree, 3);
        let text = frontend::render(&Value::Spinor(s.clone()), Format::Text);
        match frontend::eval_str(&text, 2) {
            Ok(Value::Spinor(back)) if back == s => {}
            Ok(other) => bad.push(format!("#{t}: {text} -> {}", frontend::render(&other, Format::Text))),
            Err(e) => bad.push(format!("#{t}: {text}: {e}")),
        }
    }
    rep.check("render/parse round trip 100 spinors", bad.is_empty(), list(&bad), "identity");
    let crashes = fuzz_frontend(cfg.seed, 10_000);
    rep.check("fuzz 10000 inputs", crashes == 0, format!("{crashes} crashes"), "0 crashes");
    Ok(finish(rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_sorted_and_named() {
        let rep = run_suite("basis", &Config::default()).unwrap();
        assert_eq!(rep.suite, "basis");
        assert!(rep.ok());
        assert!(rep.cases.windows(2).all(|w| w[0].name <= w[1].name));
        assert!(run_suite("nope", &Config::default()).is_err());
    }

    #[test]
    fn seeds_are_reproducible() {
        let cfg = Config { seed: 7, max_degree: 2 };
        assert_eq!(mean_values(&cfg).unwrap(), mean_values(&cfg).unwrap());
    }

    #[test]
    fn short_fuzz_run_is_clean() {
        assert_eq!(fuzz_frontend(3, 500), 0);
    }
}
