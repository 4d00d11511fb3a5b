//! Serialization of results. JSON output is byte-stable: struct fields are
//! emitted in declaration order, collections are canonically sorted and
//! rationals render as "p/q" with positive denominator (or "p" when the
//! denominator is one).

use super::Format;
use serde::{Deserialize, Serialize};
use spectra_core::polytope::LatticePolytope;
use spectra_core::rational::format_rational;
use spectra_core::report::VerificationReport;
use spectra_core::resolution::SmoothResolution2D;
use spectra_core::spectrum::{spectrum_stats, SpectrumPoly, WpsWeights};
use std::collections::BTreeMap;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub vertices: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct TermOut {
    exponent: String,
    multiplicity: u64,
}

#[derive(Serialize)]
struct SpectrumOut {
    n: usize,
    mu: u64,
    terms: Vec<TermOut>,
    variance: String,
}

fn spectrum_out(n: usize, spec: &SpectrumPoly) -> SpectrumOut {
    let st = spectrum_stats(spec, n);
    SpectrumOut {
        n,
        mu: st.mu,
        terms: spec
            .terms()
            .iter()
            .map(|(exp, mult)| TermOut {
                exponent: format_rational(exp),
                multiplicity: *mult,
            })
            .collect(),
        variance: format_rational(&st.variance),
    }
}

fn emit<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable output")
    );
}

pub fn print_spectrum(format: Format, n: usize, spec: &SpectrumPoly) {
    let out = spectrum_out(n, spec);
    match format {
        Format::Json => emit(&out),
        Format::Text => {
            println!("n: {}", out.n);
            println!("mu: {}", out.mu);
            println!("spectrum: {spec}");
            println!("variance: {}", out.variance);
            println!("exponent multiplicity");
            for t in &out.terms {
                println!("{} {}", t.exponent, t.multiplicity);
            }
        }
    }
}

#[derive(Serialize)]
struct EhrhartOut {
    n: usize,
    mu: u64,
    dilate_counts: Vec<u64>,
    delta_vector: Vec<u64>,
    palindromic: bool,
    reflexive: bool,
}

pub fn print_ehrhart(format: Format, p: &LatticePolytope) {
    let e = p.ehrhart_delta();
    let out = EhrhartOut {
        n: p.dim(),
        mu: p.normalized_volume(),
        dilate_counts: e.dilate_counts.clone(),
        delta_vector: e.delta_vector.clone(),
        palindromic: e.is_palindromic(),
        reflexive: p.classify().is_reflexive,
    };
    match format {
        Format::Json => emit(&out),
        Format::Text => {
            println!("n: {}", out.n);
            println!("mu: {}", out.mu);
            println!("dilate_counts: {:?}", out.dilate_counts);
            println!("delta_vector: {:?}", out.delta_vector);
            println!("palindromic: {}", out.palindromic);
            println!("reflexive: {}", out.reflexive);
        }
    }
}

#[derive(Serialize)]
struct PolarOut {
    n: usize,
    vertices: Vec<Vec<String>>,
    normalized_volume: String,
}

pub fn print_polar(format: Format, p: &LatticePolytope) {
    let (verts, mu) = p.polar_polytope();
    let out = PolarOut {
        n: p.dim(),
        vertices: verts
            .iter()
            .map(|v| v.iter().map(format_rational).collect())
            .collect(),
        normalized_volume: format_rational(&mu),
    };
    match format {
        Format::Json => emit(&out),
        Format::Text => {
            println!("n: {}", out.n);
            println!("normalized_volume: {}", out.normalized_volume);
            for v in &out.vertices {
                println!("vertex: ({})", v.join(", "));
            }
        }
    }
}

#[derive(Serialize)]
struct ResolutionOut {
    n: usize,
    ray_count: usize,
    rays: Vec<[i64; 2]>,
    nu: Vec<String>,
    inserted: Vec<bool>,
    self_intersections: Vec<i64>,
    c1_squared: i64,
}

fn resolution_out(res: &SmoothResolution2D) -> ResolutionOut {
    ResolutionOut {
        n: 2,
        ray_count: res.ray_count(),
        rays: res.rays().to_vec(),
        nu: res.nu_values().iter().map(format_rational).collect(),
        inserted: res.inserted().to_vec(),
        self_intersections: res.self_intersections().to_vec(),
        c1_squared: res.c1_squared(),
    }
}

pub fn print_resolution(format: Format, res: &SmoothResolution2D) {
    let out = resolution_out(res);
    match format {
        Format::Json => emit(&out),
        Format::Text => {
            println!("ray_count: {}", out.ray_count);
            println!("c1_squared: {}", out.c1_squared);
            println!("ray nu inserted self_intersection");
            for i in 0..out.rays.len() {
                println!(
                    "({}, {}) {} {} {}",
                    out.rays[i][0],
                    out.rays[i][1],
                    out.nu[i],
                    out.inserted[i],
                    out.self_intersections[i]
                );
            }
        }
    }
}

#[derive(Serialize)]
struct MuhatOut {
    muhat: String,
    c1_squared: i64,
    ray_count: usize,
}

pub fn print_muhat(format: Format, muhat: &spectra_core::Rational, res: &SmoothResolution2D) {
    let out = MuhatOut {
        muhat: format_rational(muhat),
        c1_squared: res.c1_squared(),
        ray_count: res.ray_count(),
    };
    match format {
        Format::Json => emit(&out),
        Format::Text => {
            println!("muhat: {}", out.muhat);
            println!("c1_squared: {}", out.c1_squared);
            println!("ray_count: {}", out.ray_count);
        }
    }
}

#[derive(Serialize)]
struct CheckOut {
    check: String,
    kind: String,
    lhs: Option<String>,
    rhs: Option<String>,
    passed: bool,
    context: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct VerifyOut {
    all_passed: bool,
    checks: Vec<CheckOut>,
}

pub fn print_reports(format: Format, reports: &[VerificationReport]) {
    let out = VerifyOut {
        all_passed: !reports.iter().any(|r| r.is_hard_failure()),
        checks: reports
            .iter()
            .map(|r| CheckOut {
                check: r.check.clone(),
                kind: r.kind.to_string(),
                lhs: r.lhs.as_ref().map(format_rational),
                rhs: r.rhs.as_ref().map(format_rational),
                passed: r.passed,
                context: r.context.iter().cloned().collect(),
            })
            .collect(),
    };
    match format {
        Format::Json => emit(&out),
        Format::Text => {
            for c in &out.checks {
                let status = match (c.kind.as_str(), c.passed) {
                    ("skipped", _) => "SKIP",
                    ("warning", true) => "OK  ",
                    ("warning", false) => "WARN",
                    (_, true) => "PASS",
                    (_, false) => "FAIL",
                };
                let sides = match (&c.lhs, &c.rhs) {
                    (Some(l), Some(r)) => format!(" {l} vs {r}"),
                    (Some(l), None) => format!(" {l}"),
                    _ => String::new(),
                };
                let ctx = if c.context.is_empty() {
                    String::new()
                } else {
                    let pairs: Vec<String> =
                        c.context.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    format!("  [{}]", pairs.join(", "))
                };
                println!("[{status}] {} ({}):{sides}{ctx}", c.check, c.kind);
            }
            println!("all_passed: {}", out.all_passed);
        }
    }
}

#[derive(Serialize)]
struct HirzebruchOut {
    m: u32,
    n: usize,
    vertices: Vec<Vec<i64>>,
    mu: u64,
    terms: Vec<TermOut>,
    variance: String,
}

pub fn print_hirzebruch(format: Format, m: u32, p: &LatticePolytope, spec: &SpectrumPoly) {
    let s = spectrum_out(2, spec);
    let out = HirzebruchOut {
        m,
        n: 2,
        vertices: p.vertices().to_vec(),
        mu: s.mu,
        terms: s.terms,
        variance: s.variance,
    };
    match format {
        Format::Json => emit(&out),
        Format::Text => {
            println!("m: {m}");
            println!("vertices: {:?}", out.vertices);
            println!("mu: {}", out.mu);
            println!("spectrum: {spec}");
            println!("variance: {}", out.variance);
        }
    }
}

#[derive(Serialize)]
struct GhvOut {
    weights: Vec<u64>,
    n: usize,
    vertices: Vec<Vec<i64>>,
    mu: u64,
}

pub fn print_ghv(format: Format, w: &WpsWeights, p: &LatticePolytope) {
    let out = GhvOut {
        weights: w.weights().to_vec(),
        n: p.dim(),
        vertices: p.vertices().to_vec(),
        mu: p.normalized_volume(),
    };
    match format {
        Format::Json => emit(&out),
        Format::Text => {
            println!("weights: {:?}", out.weights);
            println!("n: {}", out.n);
            println!("vertices: {:?}", out.vertices);
            println!("mu: {}", out.mu);
        }
    }
}
