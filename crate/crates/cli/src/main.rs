//! `hitchin`: JSON in, JSON out front end for `hitchin-core`.
//!
//! Exit codes: 0 success, 1 invalid input, 2 inconclusive (retry with
//! another `--seed`), 3 internal failure.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hitchin_core::equivariance::{
    descend, h_split_report, image_check, image_sample, is_invariant, orbit_factorization,
};
use hitchin_core::harness::{run_suite, GenConfig};
use hitchin_core::higgs::char_poly;
use hitchin_core::hitchin::{hb_product, proj_product};
use hitchin_core::json::*;
use hitchin_core::split::{split_profile, total_split, SplitConfig, SplitOutcome, DEFAULT_MAX_RETRIES};
use hitchin_core::torus::{classify_cover, connecting_series};
use hitchin_core::{Error, Field};

#[derive(Parser, Debug)]
#[command(name = "hitchin", version, about = "Exact computations on the Hitchin base")]
struct Cli {
    /// Base field: Q or Fp:<p>.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Input file, or - for standard input.
    #[arg(long, global = true, default_value = "-")]
    input: String,
    /// Output file, or - for standard output.
    #[arg(long, global = true, default_value = "-")]
    output: String,
    /// Las Vegas attempts before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_RETRIES)]
    max_retries: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Characteristic polynomial of a Higgs field.
    Charpoly,
    /// Split a Hitchin point into linear factors.
    Split,
    /// Linear part and residual of a Hitchin point.
    Profile,
    /// Product of {"a", "b"}; projective when either carries "s0".
    Product,
    /// Invariance of {"group", "point"}.
    Invariant,
    /// Orbit decomposition of the roots of {"group", "point"}.
    Orbits,
    /// Descent of a transitive orbit.
    Descend,
    /// Membership of {"group", "point"} in the image of the Hitchin morphism.
    ImageCheck,
    /// A seeded point of the image for {"group", "r"}.
    ImageSample,
    /// Fixed-locus table of a torus action.
    TorusFix,
    /// Connecting groups of a torus action.
    Connecting,
    /// Ramification type of a torus action (p from --field).
    Classify,
    /// Run a property suite.
    Suite {
        name: String,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

enum Failure {
    Invalid(String),
    Inconclusive(Value),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Inconclusive => Failure::Inconclusive(json!({"error": "Inconclusive"})),
            Error::Internal(msg) => Failure::Internal(msg),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn read_input(path: &str) -> Result<Value, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Invalid(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("reading {path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("invalid JSON: {e}")))
}

fn key<'a>(v: &'a Value, k: &str) -> Result<&'a Value, Failure> {
    v.get(k)
        .ok_or_else(|| Failure::Invalid(format!("parse error: missing key `{k}`")))
}

fn dispatch(cli: &Cli) -> Outcome {
    let field = parse_field_spec(&cli.field)?;
    let split = SplitConfig {
        seed: cli.seed,
        max_retries: cli.max_retries,
    };
    if let Command::Suite { name, cases } = &cli.command {
        let report = run_suite(name, &GenConfig::new(cli.seed, field), *cases)?;
        if !report.failures.is_empty() {
            return Err(Failure::Internal(report.to_json().to_string()));
        }
        return Ok(report_to_json(&report));
    }
    let input = read_input(&cli.input)?;
    let with_group = || -> Result<_, Failure> {
        let group = group_from_json(field, key(&input, "group")?)?;
        let point = point_from_json(field, key(&input, "point")?)?;
        Ok((group, point))
    };
    Ok(match &cli.command {
        Command::Charpoly => point_to_json(&char_poly(&higgs_from_json(field, &input)?)),
        Command::Split => match total_split(&point_from_json(field, &input)?, split) {
            SplitOutcome::Split(roots) => json!({"result": "split", "roots": roots_to_json(&roots)}),
            SplitOutcome::NotSplit => json!({"result": "not_split"}),
            SplitOutcome::Inconclusive => {
                return Err(Failure::Inconclusive(json!({"result": "inconclusive"})))
            }
        },
        Command::Profile => profile_to_json(&split_profile(&point_from_json(field, &input)?, split)?),
        Command::Product => {
            let (a, b) = (key(&input, "a")?, key(&input, "b")?);
            if a.get("s0").is_some() || b.get("s0").is_some() {
                proj_to_json(&proj_product(&proj_from_json(field, a)?, &proj_from_json(field, b)?)?)
            } else {
                point_to_json(&hb_product(&point_from_json(field, a)?, &point_from_json(field, b)?)?)
            }
        }
        Command::Invariant => {
            let (group, point) = with_group()?;
            json!({"invariant": is_invariant(&point, &group)?})
        }
        Command::Orbits => {
            let (group, point) = with_group()?;
            let mut out = orbits_to_json(&orbit_factorization(&point, &group, split)?);
            out["h_split"] = h_split_to_json(&h_split_report(&point, &group, split)?);
            out
        }
        Command::Descend => {
            let (group, point) = with_group()?;
            spectral_to_json(&descend(&point, &group, split)?)
        }
        Command::ImageCheck => {
            let (group, point) = with_group()?;
            json!({"in_image": image_check(&point, &group, split)?})
        }
        Command::ImageSample => {
            let group = group_from_json(field, key(&input, "group")?)?;
            let r = key(&input, "r")?
                .as_u64()
                .ok_or_else(|| Failure::Invalid("parse error: r must be an integer".into()))?;
            let point = image_sample(&group, r as usize, cli.seed)?;
            json!({"group": group_to_json(&group), "point": point_to_json(&point)})
        }
        Command::TorusFix => {
            let action = torus_from_json(&input)?;
            let reports = (0..action.order())
                .map(|g| action.fixed_locus(g))
                .collect::<Result<Vec<_>, _>>()?;
            json!({"order": action.order(), "elements": fixed_table_to_json(&action, &reports)})
        }
        Command::Connecting => series_to_json(&connecting_series(&torus_from_json(&input)?)?),
        Command::Classify => {
            let p = match field {
                Field::Rationals => 0,
                Field::Prime(p) => p,
            };
            classification_to_json(&classify_cover(&torus_from_json(&input)?, p)?)
        }
        Command::Suite { .. } => unreachable!("handled above"),
    })
}

/// Writes through a temporary sibling file and renames it into place.
fn write_atomic(path: &str, text: &str) -> io::Result<()> {
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        return out.flush();
    }
    let target = Path::new(path);
    let tmp = target.with_extension("tmp-hitchin");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, target)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| dispatch(&cli))
        .unwrap_or_else(|_| Err(Failure::Internal("panic".into())));
    let (code, doc) = match outcome {
        Ok(v) => (0, v),
        Err(Failure::Invalid(msg)) => (1, json!({"error": msg})),
        Err(Failure::Inconclusive(v)) => (2, v),
        Err(Failure::Internal(msg)) => (3, json!({"error": format!("internal: {msg}")})),
    };
    let text = to_canonical_string(&doc);
    let target = if code == 0 { cli.output.as_str() } else { "-" };
    if let Err(e) = write_atomic(target, &text) {
        eprintln!("hitchin: writing output: {e}");
        return ExitCode::from(1);
    }
    if code != 0 {
        eprintln!("hitchin: {}", doc.get("error").and_then(Value::as_str).unwrap_or("inconclusive"));
    }
    ExitCode::from(code)
}
