//! Acceptance run: one line per criterion, seed 0, default degree bound.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use s3c_core::verify::{self, Config};
use s3c_core::{Report, Result, Status};

const BASIS_LIMIT: Duration = Duration::from_secs(20);
const JACOBI_LIMIT: Duration = Duration::from_secs(60);
const NUMERIC_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_report(rep: Result<Report>, limit: Option<(Duration, Duration)>) -> Outcome {
    match rep {
        Err(e) => Outcome {
            pass: false,
            detail: format!("error: {e}"),
        },
        Ok(rep) => {
            let mut detail = format!("{} asserted passed, {} failed", rep.passed(), rep.failed());
            if rep.mismatches() > 0 {
                detail.push_str(&format!(", {} report-only mismatches", rep.mismatches()));
            }
            let mut pass = rep.ok();
            if let Some((elapsed, max)) = limit {
                if elapsed > max {
                    pass = false;
                    detail.push_str(&format!(", over the {} s limit", max.as_secs()));
                }
            }
            for c in rep.cases.iter().filter(|c| c.status == Status::Fail) {
                let computed: String = c.computed.chars().take(160).collect();
                detail.push_str(&format!("\n      failed: {} | computed: {computed} | expected: {}", c.name, c.claimed));
            }
            Outcome { pass, detail }
        }
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Result<Report>) -> Outcome {
    let start = Instant::now();
    let rep = f();
    from_report(rep, Some((start.elapsed(), limit)))
}

fn frontend_and_cli(cfg: &Config) -> Outcome {
    let mut out = from_report(verify::frontend_checks(cfg), None);
    let status = Command::new(env!("CARGO_BIN_EXE_s3c"))
        .args(["verify", "--suite", "all", "--seed", "0"])
        .env_remove("S3C_SEED")
        .output();
    match status {
        Ok(o) => {
            let code = o.status.code().unwrap_or(-1);
            out.detail.push_str(&format!("; verify --suite all --seed 0 exited {code}"));
            out.pass &= code == 0;
        }
        Err(e) => {
            out.pass = false;
            out.detail.push_str(&format!("; could not run the CLI: {e}"));
        }
    }
    out
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let cfg = Config::default();
    let criteria: Vec<Criterion> = vec![
        ("basis integrity", Box::new(|| timed(BASIS_LIMIT, verify::basis_integrity))),
        ("orthogonality", Box::new(|| from_report(verify::orthogonality(), None))),
        ("algebra closure", Box::new(|| from_report(verify::closure(), None))),
        ("grading", Box::new(move || from_report(verify::grading(&cfg), None))),
        ("cocycle suite", Box::new(move || from_report(verify::cocycle_identities(&cfg), None))),
        ("mean-value identities", Box::new(move || from_report(verify::mean_values(&cfg), None))),
        ("K-structure", Box::new(move || from_report(verify::k_structure(&cfg), None))),
        ("extended Jacobi", Box::new(move || timed(JACOBI_LIMIT, || verify::jacobi(&cfg)))),
        ("root decomposition", Box::new(move || from_report(verify::root_decomposition(&cfg), None))),
        ("Chevalley report", Box::new(|| from_report(verify::chevalley(), None))),
        ("numeric cross-check", Box::new(move || timed(NUMERIC_LIMIT, || Ok(verify::numeric(&cfg))))),
        ("frontend round trip", Box::new(move || frontend_and_cli(&cfg))),
    ];
    let mut failed = 0;
    println!();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<22} {tag} ({:.2} s) {}",
            i + 1,
            name,
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
