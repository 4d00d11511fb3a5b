//! Theorem verifiers over exact rationals: the variance identity, the
//! generalized Noether formula for 2D Fano polytopes, the Hertling
//! inequality, and the bundled consistency suite used by the CLI.

use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::rational::{format_rational, rat, ratio, Rational};
use crate::resolution::{build_fan_2d, muhat_2d, resolve_fan_2d, stringy_e_2d};
use crate::spectrum::{
    algebraic_spectrum_2d, geometric_spectrum, spectrum_stats, twisted_ehrhart_spectrum,
    SpectrumPoly,
};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// passed iff lhs = rhs (or the stated structural equality holds)
    Identity,
    /// passed iff lhs >= rhs
    Inequality,
    /// informational value with nothing to compare against
    Derived,
    /// report-only; never fails a run
    Warning,
    /// not applicable to this polytope
    Skipped,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckKind::Identity => "identity",
            CheckKind::Inequality => "inequality",
            CheckKind::Derived => "derived",
            CheckKind::Warning => "warning",
            CheckKind::Skipped => "skipped",
        };
        write!(f, "{s}")
    }
}

/// One verified statement with its exact sides and the values that went
/// into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub check: String,
    pub kind: CheckKind,
    pub lhs: Option<Rational>,
    pub rhs: Option<Rational>,
    pub passed: bool,
    pub context: Vec<(String, String)>,
}

impl VerificationReport {
    fn identity(check: &str, lhs: Rational, rhs: Rational, context: Vec<(String, String)>) -> Self {
        let passed = lhs == rhs;
        VerificationReport {
            check: check.into(),
            kind: CheckKind::Identity,
            lhs: Some(lhs),
            rhs: Some(rhs),
            passed,
            context,
        }
    }

    fn structural(check: &str, passed: bool, context: Vec<(String, String)>) -> Self {
        VerificationReport {
            check: check.into(),
            kind: CheckKind::Identity,
            lhs: None,
            rhs: None,
            passed,
            context,
        }
    }

    fn inequality(
        check: &str,
        lhs: Rational,
        rhs: Rational,
        context: Vec<(String, String)>,
    ) -> Self {
        let passed = lhs >= rhs;
        VerificationReport {
            check: check.into(),
            kind: CheckKind::Inequality,
            lhs: Some(lhs),
            rhs: Some(rhs),
            passed,
            context,
        }
    }

    fn warning(check: &str, passed: bool, context: Vec<(String, String)>) -> Self {
        VerificationReport {
            check: check.into(),
            kind: CheckKind::Warning,
            lhs: None,
            rhs: None,
            passed,
            context,
        }
    }

    fn skipped(check: &str, reason: &str) -> Self {
        VerificationReport {
            check: check.into(),
            kind: CheckKind::Skipped,
            lhs: None,
            rhs: None,
            passed: true,
            context: vec![("reason".into(), reason.into())],
        }
    }

    /// Whether this report should fail a verification run.
    pub fn is_hard_failure(&self) -> bool {
        !self.passed && !matches!(self.kind, CheckKind::Warning)
    }
}

fn ctx(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Where the muhat used in a verification came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuhatSource {
    Resolution(Rational),
    DerivedFromVariance(Rational),
}

impl MuhatSource {
    pub fn value(&self) -> &Rational {
        match self {
            MuhatSource::Resolution(v) | MuhatSource::DerivedFromVariance(v) => v,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            MuhatSource::Resolution(_) => "resolution2d",
            MuhatSource::DerivedFromVariance(_) => "derived",
        }
    }
}

/// muhat for any simplicial polytope: by resolution in dimension two,
/// otherwise inverted out of the variance identity (and labeled so).
pub fn muhat_for(p: &LatticePolytope) -> Result<MuhatSource> {
    if p.dim() == 2 {
        let res = resolve_fan_2d(&build_fan_2d(p)?);
        Ok(MuhatSource::Resolution(muhat_2d(&res)))
    } else {
        let spec = geometric_spectrum(p)?;
        let st = spectrum_stats(&spec, p.dim());
        let n = rat(p.dim() as i64);
        let mu = rat(p.normalized_volume() as i64);
        let derived = rat(6) * (st.variance - n * mu / rat(12));
        Ok(MuhatSource::DerivedFromVariance(derived))
    }
}

/// Variance identity `sum (beta_i - n/2)^2 = (n/12) mu + muhat/6`.
/// In dimension two muhat comes from a resolution and the check is an
/// identity; otherwise muhat is derived from the spectrum and compared
/// against `expected_muhat` when one is supplied.
pub fn verify_variance(
    p: &LatticePolytope,
    expected_muhat: Option<&Rational>,
) -> Result<VerificationReport> {
    let spec = geometric_spectrum(p)?;
    let st = spectrum_stats(&spec, p.dim());
    let n = p.dim();
    let mu = rat(p.normalized_volume() as i64);
    let muhat = muhat_for(p)?;
    let base = vec![
        ("mu".to_string(), format_rational(&mu)),
        ("variance".to_string(), format_rational(&st.variance)),
        ("muhat".to_string(), format_rational(muhat.value())),
        ("muhat_source".to_string(), muhat.label().to_string()),
    ];
    match &muhat {
        MuhatSource::Resolution(mh) => {
            let rhs = ratio(n as i64, 12) * &mu + mh / rat(6);
            Ok(VerificationReport::identity(
                "variance",
                st.variance,
                rhs,
                base,
            ))
        }
        MuhatSource::DerivedFromVariance(mh) => match expected_muhat {
            Some(expected) => Ok(VerificationReport::identity(
                "variance",
                mh.clone(),
                expected.clone(),
                base,
            )),
            None => Ok(VerificationReport {
                check: "variance".into(),
                kind: CheckKind::Derived,
                lhs: Some(mh.clone()),
                rhs: None,
                passed: true,
                context: base,
            }),
        },
    }
}

/// Noether identity `sum (beta_i - 1)^2 = mu_P/6 + mu_polar/6` for 2D Fano
/// polytopes; reflexive polytopes additionally satisfy the classical
/// `12 = mu_P + mu_polar`.
pub fn verify_noether(p: &LatticePolytope) -> Result<Vec<VerificationReport>> {
    if p.dim() != 2 {
        return Err(Error::NotTwoDimensional { n: p.dim() });
    }
    let class = p.classify();
    if !class.is_fano {
        return Err(Error::NotFano {
            reason: "the identity needs primitive vertices; it fails already for P(1,l,l)".into(),
        });
    }
    let spec = geometric_spectrum(p)?;
    let st = spectrum_stats(&spec, 2);
    let mu = rat(p.normalized_volume() as i64);
    let (_, polar_mu) = p.polar_polytope();
    let rhs = &mu / rat(6) + &polar_mu / rat(6);
    let base = ctx(&[
        ("mu", format_rational(&mu)),
        ("mu_polar", format_rational(&polar_mu)),
        ("variance", format_rational(&st.variance)),
    ]);
    let mut out = vec![VerificationReport::identity(
        "noether",
        st.variance.clone(),
        rhs,
        base.clone(),
    )];
    if class.is_reflexive {
        let mut classical = VerificationReport::identity(
            "noether-classical",
            rat(12),
            &mu + &polar_mu,
            base,
        );
        classical.passed &= st.variance == rat(2);
        out.push(classical);
    }
    Ok(out)
}

/// Hertling inequality `(1/mu) sum (alpha_i - n/2)^2 >= (max - min)/12`.
pub fn verify_hertling(p: &LatticePolytope) -> Result<VerificationReport> {
    let spec = geometric_spectrum(p)?;
    let st = spectrum_stats(&spec, p.dim());
    let mu = rat(st.mu as i64);
    let lhs = st.variance / &mu;
    let spread = &st.max_exp - &st.min_exp;
    let rhs = spread / rat(12);
    Ok(VerificationReport::inequality(
        "hertling",
        lhs,
        rhs,
        ctx(&[
            ("mu", format_rational(&mu)),
            ("min_exp", format_rational(&st.min_exp)),
            ("max_exp", format_rational(&st.max_exp)),
        ]),
    ))
}

/// Check selection tokens accepted by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckToken {
    Symmetry,
    Oracle,
    Variance,
    Noether,
    Hertling,
    All,
}

impl std::str::FromStr for CheckToken {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "symmetry" => Ok(CheckToken::Symmetry),
            "oracle" => Ok(CheckToken::Oracle),
            "variance" => Ok(CheckToken::Variance),
            "noether" => Ok(CheckToken::Noether),
            "hertling" => Ok(CheckToken::Hertling),
            "all" => Ok(CheckToken::All),
            other => Err(format!("unknown check '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Truncation order for the twisted-Ehrhart oracle; defaults to n+2.
    pub oracle_cutoff: Option<u32>,
    /// Comparison value for the derived muhat in dimension >= 3.
    pub expected_muhat: Option<Rational>,
    /// Empty means all checks.
    pub checks: Vec<CheckToken>,
}


impl VerifyOptions {
    fn wants(&self, token: CheckToken) -> bool {
        self.checks.is_empty()
            || self.checks.contains(&CheckToken::All)
            || self.checks.contains(&token)
    }

    fn wants_everything(&self) -> bool {
        self.checks.is_empty() || self.checks.contains(&CheckToken::All)
    }
}

fn multiset_of_interior_nu(p: &LatticePolytope) -> BTreeMap<Rational, u64> {
    let mut acc: BTreeMap<Rational, u64> = BTreeMap::new();
    for (_, nu) in p.interior_lattice_points() {
        *acc.entry(nu).or_insert(0) += 1;
    }
    acc
}

/// Runs the applicable checks and reports each outcome; failed checks are
/// reported, never thrown.
pub fn verify_all(p: &LatticePolytope, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let n = p.dim();
    let spec = geometric_spectrum(p)?;
    let mu = p.normalized_volume();
    let class = p.classify();
    let mut out = Vec::new();

    if opts.wants(CheckToken::Symmetry) {
        out.push(VerificationReport::structural(
            "symmetry",
            spec.is_symmetric(n),
            ctx(&[("spectrum", spec.to_string())]),
        ));
    }

    if opts.wants_everything() {
        out.push(VerificationReport::identity(
            "volume",
            rat(spec.total_multiplicity() as i64),
            rat(mu as i64),
            Vec::new(),
        ));

        let interior = multiset_of_interior_nu(p);
        let sub_one: BTreeMap<Rational, u64> = spec.sub_one_part().into_iter().collect();
        let boundary = p.boundary_lattice_point_count();
        let mult_one_ok = spec.multiplicity(&rat(1)) == boundary - n as u64;
        out.push(VerificationReport::structural(
            "sub1",
            sub_one == interior && mult_one_ok,
            ctx(&[
                ("interior_points", format!("{}", interior.values().sum::<u64>())),
                ("boundary_points", format!("{boundary}")),
                ("multiplicity_at_one", format!("{}", spec.multiplicity(&rat(1)))),
            ]),
        ));
    }

    if opts.wants(CheckToken::Oracle) {
        let cutoff = opts.oracle_cutoff.unwrap_or(n as u32 + 2);
        let twisted = twisted_ehrhart_spectrum(p, cutoff)?;
        out.push(VerificationReport::structural(
            "oracle",
            twisted == spec,
            ctx(&[("cutoff", cutoff.to_string())]),
        ));

        if n == 2 {
            let alg = algebraic_spectrum_2d(p)?;
            out.push(VerificationReport::structural(
                "spectra-2d-algebraic",
                alg == spec,
                Vec::new(),
            ));
            let res = resolve_fan_2d(&build_fan_2d(p)?);
            let stringy = stringy_e_2d(&res);
            out.push(VerificationReport::structural(
                "spectra-2d-stringy",
                stringy == spec,
                Vec::new(),
            ));
        } else {
            out.push(VerificationReport::skipped(
                "spectra-2d-algebraic",
                "polytope is not two-dimensional",
            ));
            out.push(VerificationReport::skipped(
                "spectra-2d-stringy",
                "polytope is not two-dimensional",
            ));
        }
    }

    if opts.wants_everything() {
        if class.is_reflexive {
            let delta = p.ehrhart_delta();
            let as_delta: Vec<(Rational, u64)> = delta
                .delta_vector
                .iter()
                .enumerate()
                .map(|(i, &d)| (rat(i as i64), d))
                .collect();
            out.push(VerificationReport::structural(
                "reflexive-delta",
                spec == SpectrumPoly::from_pairs(&as_delta),
                ctx(&[(
                    "delta",
                    format!("{:?}", delta.delta_vector),
                )]),
            ));
        } else {
            out.push(VerificationReport::skipped(
                "reflexive-delta",
                "polytope is not reflexive",
            ));
        }
    }

    if opts.wants(CheckToken::Variance) {
        out.push(verify_variance(p, opts.expected_muhat.as_ref())?);
    }

    if opts.wants(CheckToken::Noether) {
        if n != 2 {
            out.push(VerificationReport::skipped(
                "noether",
                "polytope is not two-dimensional",
            ));
        } else if !class.is_fano {
            out.push(VerificationReport::skipped(
                "noether",
                "vertices are not primitive (polytope is not Fano)",
            ));
        } else {
            out.extend(verify_noether(p)?);
        }
    }

    if opts.wants(CheckToken::Hertling) {
        out.push(verify_hertling(p)?);
    }

    if opts.wants_everything() {
        let muhat = muhat_for(p)?;
        out.push(VerificationReport::warning(
            "muhat-nonnegative",
            muhat.value() >= &rat(0),
            ctx(&[
                ("muhat", format_rational(muhat.value())),
                ("muhat_source", muhat.label().to_string()),
            ]),
        ));
        out.push(VerificationReport::warning(
            "modality",
            spec.is_modal(n),
            Vec::new(),
        ));
    }

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::build_polytope;
    use crate::spectrum::{wps_polytope, WpsWeights};

    fn p125() -> LatticePolytope {
        build_polytope(&[vec![1, 0], vec![0, 1], vec![-2, -5]]).unwrap()
    }

    fn square() -> LatticePolytope {
        build_polytope(&[vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]).unwrap()
    }

    #[test]
    fn variance_of_p125_passes() {
        let r = verify_variance(&p125(), None).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, Some(ratio(12, 5)));
        // n/12 mu + muhat/6 = 4/3 + 32/30
        assert_eq!(r.rhs, Some(ratio(4, 3) + ratio(32, 30)));
    }

    #[test]
    fn variance_of_p1222_in_derived_mode() {
        let p = wps_polytope(&WpsWeights::new(vec![1, 2, 2, 2]).unwrap()).unwrap();
        let derived = verify_variance(&p, None).unwrap();
        assert_eq!(derived.kind, CheckKind::Derived);
        assert_eq!(derived.lhs, Some(ratio(63, 2)));

        let compared = verify_variance(&p, Some(&ratio(63, 2))).unwrap();
        assert_eq!(compared.kind, CheckKind::Identity);
        assert!(compared.passed);

        let wrong = verify_variance(&p, Some(&rat(3))).unwrap();
        assert!(!wrong.passed);
    }

    #[test]
    fn variance_of_plll_with_l_two() {
        let p = build_polytope(&[vec![2, 0], vec![0, 2], vec![-2, -2]]).unwrap();
        let r = verify_variance(&p, None).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, Some(ratio(7, 2)));
        assert_eq!(r.rhs, Some(rat(2) + ratio(9, 6)));
    }

    #[test]
    fn noether_for_p125_and_the_square() {
        let reports = verify_noether(&p125()).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(reports[0].passed);
        assert_eq!(reports[0].lhs, Some(ratio(12, 5)));
        assert_eq!(reports[0].rhs, Some(ratio(8, 6) + ratio(32, 30)));

        let reports = verify_noether(&square()).unwrap();
        assert_eq!(reports.len(), 2, "reflexive case adds the classical form");
        assert!(reports.iter().all(|r| r.passed));
        let classical = &reports[1];
        assert_eq!(classical.check, "noether-classical");
        assert_eq!(classical.rhs, Some(rat(8 + 4)));
    }

    #[test]
    fn noether_requires_fano() {
        let p = build_polytope(&[vec![1, 0], vec![0, 1], vec![-2, -2]]).unwrap();
        assert!(matches!(verify_noether(&p), Err(Error::NotFano { .. })));
    }

    #[test]
    fn hertling_examples() {
        // P(1,l,l) with l = 3: V/mu = 4/9 against 2/12
        let p = build_polytope(&[vec![1, 0], vec![0, 1], vec![-3, -3]]).unwrap();
        let r = verify_hertling(&p).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, Some(ratio(4, 9)));
        assert_eq!(r.rhs, Some(ratio(1, 6)));

        let r = verify_hertling(&p125()).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, Some(ratio(3, 10)));
    }

    #[test]
    fn verify_all_on_the_worked_examples() {
        let p113 = build_polytope(&[vec![1, 0], vec![0, 1], vec![-1, -3]]).unwrap();
        let reports = verify_all(&p113, &VerifyOptions::default()).unwrap();
        assert!(reports.iter().all(|r| r.passed), "{reports:?}");
        assert!(reports.iter().any(|r| r.check == "noether"));

        let p122 = build_polytope(&[vec![1, 0], vec![0, 2], vec![-2, -2]]).unwrap();
        let reports = verify_all(&p122, &VerifyOptions::default()).unwrap();
        assert!(!reports.iter().any(|r| r.is_hard_failure()));
        let noether = reports.iter().find(|r| r.check == "noether").unwrap();
        assert_eq!(noether.kind, CheckKind::Skipped);

        let reports = verify_all(&square(), &VerifyOptions::default()).unwrap();
        assert!(reports.iter().all(|r| r.passed));
        let refl = reports.iter().find(|r| r.check == "reflexive-delta").unwrap();
        assert_eq!(refl.kind, CheckKind::Identity);
        assert!(refl.passed);
    }

    #[test]
    fn check_selection_limits_the_run() {
        let opts = VerifyOptions {
            checks: vec![CheckToken::Hertling],
            ..Default::default()
        };
        let reports = verify_all(&p125(), &opts).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].check, "hertling");
    }

    #[test]
    fn verify_all_requires_simplicial() {
        let mut verts = Vec::new();
        for x in [-1i64, 1] {
            for y in [-1i64, 1] {
                for z in [-1i64, 1] {
                    verts.push(vec![x, y, z]);
                }
            }
        }
        let cube = build_polytope(&verts).unwrap();
        assert_eq!(
            verify_all(&cube, &VerifyOptions::default()).unwrap_err(),
            Error::NotSimplicial
        );
    }
}
