//! Spectra as Puiseux polynomials with rational exponents and positive
//! integer multiplicities: the geometric spectrum via the box formula,
//! the twisted-Ehrhart route, the two-dimensional algebraic spectrum,
//! weighted-projective-space spectra, and exact spectrum statistics.

use crate::error::{Error, Result};
use crate::fan::{box_points, face_fan, hodge_deligne_poly, BoxMode};
use crate::polytope::{build_polytope, LatticePolytope};
use crate::rational::{ceil_to_i64, rat, ratio, Rational};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse Puiseux polynomial: exponent -> multiplicity, exponents sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumPoly {
    terms: BTreeMap<Rational, u64>,
}

impl SpectrumPoly {
    /// Builds from signed accumulation, panicking on any negative
    /// multiplicity (that would contradict the positivity theorems).
    pub(crate) fn from_signed(acc: BTreeMap<Rational, i64>) -> Self {
        let mut terms = BTreeMap::new();
        for (exp, mult) in acc {
            assert!(
                mult >= 0,
                "negative multiplicity {mult} at exponent {exp} in spectrum assembly"
            );
            if mult > 0 {
                terms.insert(exp, mult as u64);
            }
        }
        SpectrumPoly { terms }
    }

    pub fn from_pairs(pairs: &[(Rational, u64)]) -> Self {
        let mut terms: BTreeMap<Rational, u64> = BTreeMap::new();
        for (exp, mult) in pairs {
            if *mult > 0 {
                *terms.entry(exp.clone()).or_insert(0) += mult;
            }
        }
        SpectrumPoly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Rational, u64> {
        &self.terms
    }

    pub fn multiplicity(&self, exp: &Rational) -> u64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn min_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    pub fn max_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next_back()
    }

    /// Whether the multiset is fixed by `alpha -> n - alpha`.
    pub fn is_symmetric(&self, n: usize) -> bool {
        let n = rat(n as i64);
        self.terms
            .iter()
            .all(|(exp, mult)| self.multiplicity(&(&n - exp)) == *mult)
    }

    /// The terms with exponent strictly below one.
    pub fn sub_one_part(&self) -> Vec<(Rational, u64)> {
        let one = Rational::one();
        self.terms
            .iter()
            .filter(|(exp, _)| *exp < &one)
            .map(|(exp, mult)| (exp.clone(), *mult))
            .collect()
    }

    /// Multiplicities are nondecreasing up to floor(n/2); report-level.
    pub fn is_modal(&self, n: usize) -> bool {
        let half = rat((n / 2) as i64);
        let mut last = 0u64;
        for (exp, mult) in &self.terms {
            if exp > &half {
                break;
            }
            if *mult < last {
                return false;
            }
            last = *mult;
        }
        true
    }
}

impl fmt::Display for SpectrumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, mult) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if exp.is_zero() {
                write!(f, "{mult}")?;
                continue;
            }
            if *mult != 1 {
                write!(f, "{mult}*")?;
            }
            if exp.is_one() {
                write!(f, "z")?;
            } else if exp.denom().is_one() {
                write!(f, "z^{}", exp.numer())?;
            } else {
                write!(f, "z^({}/{})", exp.numer(), exp.denom())?;
            }
        }
        Ok(())
    }
}

/// Geometric spectrum by the box formula: the sum over all cones of the
/// face fan (including the zero cone) and all open box points `v` of
/// `h_sigma(z) z^{nu(v)}`.
pub fn geometric_spectrum(p: &LatticePolytope) -> Result<SpectrumPoly> {
    let fan = face_fan(p)?;
    let mut acc: BTreeMap<Rational, i64> = BTreeMap::new();
    for cone in fan.cones() {
        let pts = box_points(&fan, cone, BoxMode::Open);
        if pts.is_empty() {
            continue;
        }
        let h = hodge_deligne_poly(&fan, cone);
        for bp in pts {
            for (k, c) in h.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let exp = &bp.nu + rat(k as i64);
                let mult = i64::try_from(c.numer().clone()).expect("small coefficient");
                *acc.entry(exp).or_insert(0) += mult;
            }
        }
    }
    let spec = SpectrumPoly::from_signed(acc);
    assert_eq!(
        spec.total_multiplicity(),
        p.normalized_volume(),
        "total multiplicity must equal the normalized volume"
    );
    Ok(spec)
}

/// Independent route via the twisted Ehrhart series: truncate
/// `F0(z) = sum_{m=0..M} sum_{v in mP} z^{nu(v) - ceil(nu(v)) + m}`,
/// multiply by `(1-z)^{n+1}` and keep the exponents at most `M-1`. The
/// spectrum is supported in `[0, n]`, so any `M >= n + 2` recovers it.
pub fn twisted_ehrhart_spectrum(p: &LatticePolytope, cutoff: u32) -> Result<SpectrumPoly> {
    let n = p.dim() as u32;
    if cutoff < n + 2 {
        return Err(Error::CutoffTooSmall {
            got: cutoff,
            min: n + 2,
        });
    }
    let bound = rat(cutoff as i64);
    let mut f0: BTreeMap<Rational, i64> = BTreeMap::new();
    for (_, nu) in p.lattice_points_with_nu(&bound) {
        let ceil = ceil_to_i64(&nu);
        let frac = &nu - rat(ceil);
        for m in ceil..=cutoff as i64 {
            *f0.entry(&frac + rat(m)).or_insert(0) += 1;
        }
    }
    // multiply by (1-z)^(n+1)
    let mut binom: Vec<i64> = vec![1];
    for _ in 0..=n {
        let mut next = vec![0i64; binom.len() + 1];
        for (k, &b) in binom.iter().enumerate() {
            next[k] += b;
            next[k + 1] -= b;
        }
        binom = next;
    }
    let mut acc: BTreeMap<Rational, i64> = BTreeMap::new();
    let limit = rat(cutoff as i64 - 1);
    for (exp, mult) in &f0 {
        for (k, &b) in binom.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let e = exp + rat(k as i64);
            if e > limit {
                continue;
            }
            *acc.entry(e).or_insert(0) += b * mult;
        }
    }
    Ok(SpectrumPoly::from_signed(acc))
}

/// Two-dimensional algebraic spectrum:
/// `1 + z^2` from the origin, `z^{nu(v)} + z^{2-nu(v)}` for each nonzero
/// interior lattice point, and `z` with multiplicity `card(bd P) - 2`.
pub fn algebraic_spectrum_2d(p: &LatticePolytope) -> Result<SpectrumPoly> {
    if p.dim() != 2 {
        return Err(Error::NotTwoDimensional { n: p.dim() });
    }
    let mut acc: BTreeMap<Rational, i64> = BTreeMap::new();
    let two = rat(2);
    for (_, nu) in p.interior_lattice_points() {
        *acc.entry(nu.clone()).or_insert(0) += 1;
        *acc.entry(&two - &nu).or_insert(0) += 1;
    }
    let boundary = p.boundary_lattice_point_count() as i64;
    *acc.entry(Rational::one()).or_insert(0) += boundary - 2;
    let spec = SpectrumPoly::from_signed(acc);
    // Pick's theorem: 2 vol = 2 card(int) + card(bd) - 2
    assert_eq!(
        spec.total_multiplicity(),
        p.normalized_volume(),
        "Pick count must match the facet presentation"
    );
    Ok(spec)
}

/// Weights `(lambda_0, ..., lambda_n)` of a weighted projective space,
/// normalized so that `lambda_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpsWeights {
    weights: Vec<u64>,
}

impl WpsWeights {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidWeights {
                reason: "need at least two weights".into(),
            });
        }
        if weights[0] != 1 {
            return Err(Error::InvalidWeights {
                reason: "the first weight must be 1".into(),
            });
        }
        if weights.contains(&0) {
            return Err(Error::InvalidWeights {
                reason: "weights must be positive".into(),
            });
        }
        Ok(WpsWeights { weights })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn ambient_dim(&self) -> usize {
        self.weights.len() - 1
    }

    /// `mu = 1 + lambda_1 + ... + lambda_n`.
    pub fn mu(&self) -> u64 {
        self.weights.iter().sum()
    }
}

/// `conv{e_1, ..., e_n, -(lambda_1, ..., lambda_n)}`.
pub fn wps_polytope(w: &WpsWeights) -> Result<LatticePolytope> {
    let n = w.ambient_dim();
    let mut verts = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        verts.push(e);
    }
    verts.push(w.weights[1..].iter().map(|&l| -(l as i64)).collect());
    build_polytope(&verts)
}

/// Spectrum of the weighted projective space from its weights alone:
/// sort the fractional jumps `F = { l/lambda_i }`, repeat each `f` once
/// per weight with `lambda_j f` integral to get `c_0 <= ... <= c_{mu-1}`,
/// and return the multiset of `alpha_k = k - mu c_k`.
pub fn wps_spectrum(w: &WpsWeights) -> SpectrumPoly {
    let mut jumps: BTreeMap<Rational, u64> = BTreeMap::new();
    for &l in &w.weights {
        for k in 0..l {
            let f = ratio(k as i64, l as i64);
            jumps.entry(f).or_insert(0);
        }
    }
    for (f, d) in jumps.iter_mut() {
        *d = w
            .weights
            .iter()
            .filter(|&&l| (rat(l as i64) * f).denom().is_one())
            .count() as u64;
    }
    let mu = w.mu();
    let mut c_seq: Vec<Rational> = Vec::with_capacity(mu as usize);
    for (f, d) in &jumps {
        for _ in 0..*d {
            c_seq.push(f.clone());
        }
    }
    assert_eq!(c_seq.len() as u64, mu, "jump multiplicities must sum to mu");
    let mut acc: BTreeMap<Rational, i64> = BTreeMap::new();
    for (k, c) in c_seq.iter().enumerate() {
        let alpha = rat(k as i64) - rat(mu as i64) * c;
        *acc.entry(alpha).or_insert(0) += 1;
    }
    SpectrumPoly::from_signed(acc)
}

/// Exact first and second moments of a spectrum around `n/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumStats {
    pub mu: u64,
    pub variance: Rational,
    pub second_deriv_at_one: Rational,
    pub min_exp: Rational,
    pub max_exp: Rational,
}

pub fn spectrum_stats(s: &SpectrumPoly, n: usize) -> SpectrumStats {
    assert!(!s.terms().is_empty(), "empty spectrum");
    let half = ratio(n as i64, 2);
    let mut variance = Rational::zero();
    let mut second = Rational::zero();
    for (exp, mult) in s.terms() {
        let m = rat(*mult as i64);
        let d = exp - &half;
        variance += &m * &d * &d;
        second += &m * exp * (exp - Rational::one());
    }
    SpectrumStats {
        mu: s.total_multiplicity(),
        variance,
        second_deriv_at_one: second,
        min_exp: s.min_exponent().unwrap().clone(),
        max_exp: s.max_exponent().unwrap().clone(),
    }
}
