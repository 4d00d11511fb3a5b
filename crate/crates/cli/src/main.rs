//! `spectra`: exact spectra, Ehrhart data, polar volumes, 2D resolutions
//! and theorem verification for lattice polytopes.
//!
//! Exit codes: 0 on success (all verifications passed), 1 when a
//! verification check failed, 2 on input or usage errors.

mod output;

use clap::{Parser, Subcommand, ValueEnum};
use spectra_core::polytope::{build_polytope, LatticePolytope};
use spectra_core::rational::parse_rational;
use spectra_core::report::{verify_all, CheckToken, VerifyOptions};
use spectra_core::resolution::{
    build_fan_2d, ghv_newton_polytope, muhat_2d, resolve_fan_2d, stringy_e_2d, GhvKind,
};
use spectra_core::spectrum::{
    algebraic_spectrum_2d, geometric_spectrum, wps_polytope, wps_spectrum, WpsWeights,
};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "spectra",
    about = "Exact spectra and stacky invariants of lattice polytopes",
    version
)]
struct Cli {
    /// Polytope JSON file ({"vertices": [[..], ..]}), or '-' for stdin
    #[arg(long, global = true)]
    input: Option<String>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Truncation order of the twisted-Ehrhart oracle (default n+2)
    #[arg(long, global = true)]
    oracle_cutoff: Option<u32>,

    /// Expected muhat "p/q" for derived-mode comparisons in dimension >= 3
    #[arg(long, global = true)]
    expected_muhat: Option<String>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Geometric spectrum of the input polytope
    Spectrum,
    /// Dilate counts and delta vector
    Ehrhart,
    /// Polar polytope vertices and normalized volume
    Polar,
    /// Smooth refinement of the 2D face fan
    Resolve,
    /// The invariant muhat of a 2D polytope
    Muhat,
    /// Spectrum through the stringy E-function of a 2D resolution
    Stringy,
    /// Run verification checks against the input polytope
    Verify {
        /// Comma-separated subset: variance,noether,hertling,symmetry,oracle,all
        #[arg(long)]
        checks: Option<String>,
    },
    /// Spectrum of a weighted projective space from its weights
    Wps {
        /// Weights "1,a,b,..." with leading 1
        #[arg(long)]
        weights: String,
    },
    /// Spectrum of the Givental-Hori-Vafa model of a Hirzebruch surface
    Hirzebruch {
        #[arg(long)]
        m: u32,
    },
    /// Newton polytope of the weighted-projective-space GHV model
    Ghv {
        /// Weights "1,a,b,..." with leading 1
        #[arg(long)]
        weights: String,
    },
}

/// Anything that should terminate with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read_polytope(input: &Option<String>) -> Result<LatticePolytope, InputError> {
    let path = input
        .as_deref()
        .ok_or_else(|| InputError("missing --input (file path or '-')".into()))?;
    let raw = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(path)?
    };
    let doc: output::InputDoc = serde_json::from_str(&raw)?;
    if doc.vertices.is_empty() {
        return Err(InputError("empty vertex list".into()));
    }
    let n = doc.vertices[0].len();
    if !(2..=4).contains(&n) {
        return Err(InputError(format!(
            "vertex rows must have equal length 2..4, got {n}"
        )));
    }
    if doc.vertices.iter().any(|r| r.len() != n) {
        return Err(InputError("vertex rows must all have the same length".into()));
    }
    Ok(build_polytope(&doc.vertices)?)
}

fn parse_weights(s: &str) -> Result<WpsWeights, InputError> {
    let weights: Result<Vec<u64>, _> = s.split(',').map(|t| t.trim().parse::<u64>()).collect();
    let weights = weights.map_err(|e| InputError(format!("bad weights '{s}': {e}")))?;
    Ok(WpsWeights::new(weights)?)
}

fn run(cli: &Cli) -> Result<ExitCode, InputError> {
    let format = cli.format;
    match &cli.cmd {
        Cmd::Spectrum => {
            let p = read_polytope(&cli.input)?;
            let spec = geometric_spectrum(&p)?;
            output::print_spectrum(format, p.dim(), &spec);
        }
        Cmd::Ehrhart => {
            let p = read_polytope(&cli.input)?;
            output::print_ehrhart(format, &p);
        }
        Cmd::Polar => {
            let p = read_polytope(&cli.input)?;
            output::print_polar(format, &p);
        }
        Cmd::Resolve => {
            let p = read_polytope(&cli.input)?;
            let res = resolve_fan_2d(&build_fan_2d(&p)?);
            output::print_resolution(format, &res);
        }
        Cmd::Muhat => {
            let p = read_polytope(&cli.input)?;
            let res = resolve_fan_2d(&build_fan_2d(&p)?);
            let muhat = muhat_2d(&res);
            output::print_muhat(format, &muhat, &res);
        }
        Cmd::Stringy => {
            let p = read_polytope(&cli.input)?;
            let res = resolve_fan_2d(&build_fan_2d(&p)?);
            let spec = stringy_e_2d(&res);
            output::print_spectrum(format, 2, &spec);
        }
        Cmd::Verify { checks } => {
            let p = read_polytope(&cli.input)?;
            let mut opts = VerifyOptions {
                oracle_cutoff: cli.oracle_cutoff,
                ..Default::default()
            };
            if let Some(raw) = &cli.expected_muhat {
                let v = parse_rational(raw)
                    .ok_or_else(|| InputError(format!("bad rational '{raw}'")))?;
                opts.expected_muhat = Some(v);
            }
            if let Some(raw) = checks {
                for token in raw.split(',') {
                    opts.checks.push(token.parse::<CheckToken>()?);
                }
            }
            let reports = verify_all(&p, &opts)?;
            let failed = reports.iter().any(|r| r.is_hard_failure());
            output::print_reports(format, &reports);
            if failed {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Wps { weights } => {
            let w = parse_weights(weights)?;
            let spec = wps_spectrum(&w);
            output::print_spectrum(format, w.ambient_dim(), &spec);
        }
        Cmd::Hirzebruch { m } => {
            let p = ghv_newton_polytope(&GhvKind::Hirzebruch(*m))?;
            let spec = algebraic_spectrum_2d(&p)?;
            output::print_hirzebruch(format, *m, &p, &spec);
        }
        Cmd::Ghv { weights } => {
            let w = parse_weights(weights)?;
            let p = wps_polytope(&w)?;
            output::print_ghv(format, &w, &p);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
