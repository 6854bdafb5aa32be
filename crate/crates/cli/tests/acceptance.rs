//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p hitchin-cli --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hitchin_core::harness::{run_suite, GenConfig, SuiteReport};
use hitchin_core::hitchin::{hb_product, proj_product, HitchinPoint, ProjHitchinPoint};
use hitchin_core::poly::GradedPoly;
use hitchin_core::torus::{
    classify_cover, connecting_series, fixed_locus, AffineTorusMap, CodimConvention,
    FixedLocusReport, TorusGroupAction,
};
use hitchin_core::Field;

struct Outcome {
    cases: usize,
    problems: Vec<String>,
}

impl Outcome {
    fn from_reports(reports: &[SuiteReport]) -> Outcome {
        Outcome {
            cases: reports.iter().map(|r| r.cases).sum(),
            problems: reports
                .iter()
                .flat_map(|r| {
                    r.failures.iter().map(move |f| {
                        format!("{} case {} (seed {}): {}", r.suite, f.case, f.seed, f.detail)
                    })
                })
                .collect(),
        }
    }
}

fn suite(name: &str, cfg: GenConfig, cases: usize) -> SuiteReport {
    run_suite(name, &cfg, cases).expect("registered suite")
}

fn cfg(seed: u64, field: Field, d_max: usize, r_max: usize) -> GenConfig {
    GenConfig {
        d_max,
        r_max,
        ..GenConfig::new(seed, field)
    }
}

fn roundtrip() -> Outcome {
    Outcome::from_reports(&[
        suite("roundtrip", cfg(11, Field::Rationals, 3, 5), 250),
        suite("roundtrip", cfg(12, Field::Prime(5), 3, 5), 250),
    ])
}

fn oracle_equivalence() -> Outcome {
    Outcome::from_reports(&[suite("oracle_eq", cfg(2, Field::Prime(3), 2, 4), 200)])
}

fn hitchin_consistency() -> Outcome {
    Outcome::from_reports(&[suite("charpoly", cfg(3, Field::Rationals, 3, 5), 200)])
}

fn direct_sum() -> Outcome {
    Outcome::from_reports(&[
        suite("direct_sum", cfg(4, Field::Rationals, 3, 4), 150),
        suite("direct_sum", cfg(5, Field::Prime(5), 3, 4), 50),
    ])
}

fn var(d: usize, i: usize) -> GradedPoly {
    GradedPoly::var(Field::Rationals, d, i)
}

fn proj(s0: i64, coeffs: Vec<GradedPoly>) -> ProjHitchinPoint {
    let q = Field::Rationals;
    let d = coeffs[0].nvars();
    ProjHitchinPoint::new(q, d, q.from_i64(s0), coeffs).expect("valid point")
}

fn projective() -> Outcome {
    let mut out = Outcome::from_reports(&[suite("proj", cfg(6, Field::Rationals, 3, 4), 200)]);
    let q = Field::Rationals;
    let (x1, x2) = (var(2, 0), var(2, 1));
    let x = var(1, 0);
    let tau = x.scale(&q.from_i64(3));
    let examples = [
        (
            "[1:a]x[1:b]",
            proj_product(&proj(1, vec![x1.clone()]), &proj(1, vec![x2.clone()])),
            proj(1, vec![&x1 + &x2, &x1 * &x2]),
        ),
        (
            "[0:1]x[1:tau]",
            proj_product(&proj(0, vec![x.clone()]), &proj(1, vec![tau.clone()])),
            proj(0, vec![x.clone(), &x * &tau]),
        ),
        (
            "[0:1]x[0:1]",
            proj_product(&proj(0, vec![x.clone()]), &proj(0, vec![x.clone()])),
            proj(0, vec![GradedPoly::zero(q, 1), &x * &x]),
        ),
    ];
    for (name, got, want) in examples {
        out.cases += 1;
        match got {
            Ok(p) if p == want => {}
            other => out.problems.push(format!("{name}: got {other:?}, want {want}")),
        }
    }
    let chart = HitchinPoint::new(q, 2, vec![&x1 + &x2, &x1 * &x2]).unwrap();
    let affine = hb_product(
        &HitchinPoint::new(q, 2, vec![x1]).unwrap(),
        &HitchinPoint::new(q, 2, vec![x2]).unwrap(),
    )
    .unwrap();
    if chart != affine {
        out.problems.push("chart example disagrees with hb_product".into());
    }
    out
}

fn galois() -> Outcome {
    Outcome::from_reports(&[suite("galois", cfg(7, Field::Rationals, 3, 24), 100)])
}

fn image() -> Outcome {
    Outcome::from_reports(&[
        suite("image", cfg(8, Field::Rationals, 3, 6), 100),
        suite("image", cfg(9, Field::Prime(5), 3, 6), 50),
    ])
}

fn torus_map(a: &[&[i64]], b: &[(i64, i64)]) -> AffineTorusMap {
    AffineTorusMap::from_i64(a, b).expect("unimodular")
}

fn torus() -> Outcome {
    let mut out = Outcome::from_reports(&[suite("torus", cfg(10, Field::Rationals, 3, 5), 100)]);
    let real = CodimConvention::Real;
    let report = |nonempty, codim| FixedLocusReport { nonempty, codim };
    let examples = [
        ("-I", torus_map(&[&[-1, 0], &[0, -1]], &[(0, 1), (0, 1)]), report(true, Some(2))),
        ("free translation", torus_map(&[&[1, 0], &[0, 1]], &[(1, 2), (0, 1)]), report(false, None)),
        ("reflection", torus_map(&[&[1, 0], &[0, -1]], &[(0, 1), (0, 1)]), report(true, Some(1))),
        ("affine reflection", torus_map(&[&[1, 0], &[0, -1]], &[(1, 2), (0, 1)]), report(false, None)),
    ];
    for (name, map, want) in examples {
        out.cases += 1;
        match fixed_locus(&map, real) {
            Ok(got) if got == want => {}
            other => out.problems.push(format!("{name}: got {other:?}, want {want:?}")),
        }
    }
    out.cases += 1;
    let klein = TorusGroupAction::from_generators(
        2,
        &[
            torus_map(&[&[1, 0], &[0, -1]], &[(0, 1), (0, 1)]),
            torus_map(&[&[-1, 0], &[0, 1]], &[(0, 1), (0, 1)]),
        ],
        None,
        real,
    )
    .expect("Klein four");
    let series = connecting_series(&klein).expect("normal series");
    let class = classify_cover(&klein, 0).expect("classifiable");
    if klein.order() != 4 || series.series[0] != vec![0, 1, 2, 3] || class.genuinely_ramified_in_codim != Some(1) {
        out.problems.push(format!("Klein four: order {}, series {:?}", klein.order(), series.series));
    }
    out
}

fn cli_goldens() -> Outcome {
    let (cases, problems) = common::check_goldens();
    Outcome { cases, problems }
}

/// Name, check, and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 factor-product round trip", roundtrip, Some(30)),
        ("2 oracle equivalence over F_3", oracle_equivalence, Some(60)),
        ("3 Hitchin morphism consistency", hitchin_consistency, Some(30)),
        ("4 direct-sum commutation", direct_sum, None),
        ("5 projective completion", projective, None),
        ("6 Galois suite", galois, Some(60)),
        ("7 image suite", image, None),
        ("8 torus suite", torus, Some(30)),
        ("9 CLI goldens and exit codes", cli_goldens, None),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(secs) = limit {
            if elapsed > Duration::from_secs(secs) {
                outcome.problems.push(format!("took {elapsed:.2?}, limit {secs} s"));
            }
        }
        let verdict = if outcome.problems.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {name}: {} cases, {} failures, {elapsed:.2?}",
            outcome.cases,
            outcome.problems.len()
        );
        for p in outcome.problems.iter().take(10) {
            println!("    {p}");
        }
        if !outcome.problems.is_empty() {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
