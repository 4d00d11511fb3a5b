//! Smooth refinements of complete 2D fans, self-intersection numbers, the
//! stacky stringy E-function and the invariant muhat computed by both
//! formulas of its intersection-theoretic description.

use crate::error::{Error, Result};
use crate::linalg::gcd_i64;
use crate::polytope::{build_polytope, LatticePolytope};
use crate::rational::{rat, ratio, Rational};
use crate::spectrum::{wps_polytope, SpectrumPoly, WpsWeights};
use num::{One, Zero};
use std::collections::BTreeMap;

/// Complete 2D fan: primitive ray generators in counterclockwise cyclic
/// order, each labeled with its Newton value under the source polytope.
#[derive(Debug, Clone)]
pub struct Fan2D {
    polytope: LatticePolytope,
    rays: Vec<[i64; 2]>,
    nu: Vec<Rational>,
}

impl Fan2D {
    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn rays(&self) -> &[[i64; 2]] {
        &self.rays
    }

    pub fn nu_values(&self) -> &[Rational] {
        &self.nu
    }
}

fn primitive(v: [i64; 2]) -> [i64; 2] {
    let g = gcd_i64(v[0], v[1]);
    debug_assert!(g > 0);
    [v[0] / g, v[1] / g]
}

fn cross(a: [i64; 2], b: [i64; 2]) -> i64 {
    let c = a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128;
    i64::try_from(c).expect("determinant fits i64")
}

/// Bezout coefficients: `s a + t b = gcd(a, b)`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64) {
    if b == 0 {
        return (a.signum(), 0);
    }
    let (s, t) = ext_gcd(b, a.rem_euclid(b));
    (t, s - a.div_euclid(b) * t)
}

/// Open box lattice points of the 2D cone spanned by primitive `a`, `b`
/// with `d = det(a, b) > 1`, enumerated directly: complete `a` to a basis
/// `(a, c)`, write `b = m a + d c`, and read off one point per residue
/// `beta = k/d`. Returns `(point, alpha_num, beta_num)` with coefficients
/// `alpha_num/d` on `a` and `beta_num/d` on `b`.
fn open_box_points_cone_2d(a: [i64; 2], b: [i64; 2]) -> Vec<([i64; 2], i64, i64)> {
    let d = cross(a, b);
    debug_assert!(d > 1);
    let (s, t) = ext_gcd(a[0], a[1]);
    debug_assert_eq!(
        s as i128 * a[0] as i128 + t as i128 * a[1] as i128,
        1,
        "generator must be primitive"
    );
    let c = [-t, s];
    debug_assert_eq!(cross(a, c), 1);
    let m = b[0] as i128 * c[1] as i128 - b[1] as i128 * c[0] as i128;
    let mut out = Vec::new();
    for k in 1..d {
        let km = k as i128 * m;
        let alpha_num = (-km).rem_euclid(d as i128);
        if alpha_num == 0 {
            continue;
        }
        let x = (km + alpha_num) / d as i128;
        let w = [
            i64::try_from(x * a[0] as i128 + k as i128 * c[0] as i128)
                .expect("box point fits i64"),
            i64::try_from(x * a[1] as i128 + k as i128 * c[1] as i128)
                .expect("box point fits i64"),
        ];
        debug_assert_eq!(
            [
                alpha_num * a[0] as i128 + k as i128 * b[0] as i128,
                alpha_num * a[1] as i128 + k as i128 * b[1] as i128
            ],
            [w[0] as i128 * d as i128, w[1] as i128 * d as i128],
            "coefficients must reproduce the point"
        );
        out.push((w, alpha_num as i64, k));
    }
    out
}

/// Counterclockwise comparator anchor: 0 for the closed upper half
/// starting at the positive x-axis, 1 for the rest.
fn half(v: [i64; 2]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

fn angular_cmp(a: [i64; 2], b: [i64; 2]) -> std::cmp::Ordering {
    half(a).cmp(&half(b)).then_with(|| cross(b, a).cmp(&0))
}

/// Rays of the face fan of a 2D polytope: the primitive generators of its
/// vertex rays in counterclockwise order. For a non-primitive vertex the
/// label is `nu` of the primitive generator, which is then below one.
pub fn build_fan_2d(p: &LatticePolytope) -> Result<Fan2D> {
    if p.dim() != 2 {
        return Err(Error::NotTwoDimensional { n: p.dim() });
    }
    let mut rays: Vec<[i64; 2]> = p
        .vertices()
        .iter()
        .map(|v| primitive([v[0], v[1]]))
        .collect();
    rays.sort_by(|&a, &b| angular_cmp(a, b));
    let r = rays.len();
    for i in 0..r {
        assert!(
            cross(rays[i], rays[(i + 1) % r]) > 0,
            "consecutive rays must span strictly convex cones"
        );
    }
    let nu = rays.iter().map(|v| p.newton_value(v)).collect();
    Ok(Fan2D {
        polytope: p.clone(),
        rays,
        nu,
    })
}

/// Which open box point to insert when refining a singular cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertionPolicy {
    MinNu,
    MaxNu,
}

/// A smooth complete refinement: adjacent determinants are all one, each
/// ray carries its Newton value, its self-intersection number and whether
/// it was inserted by the refinement.
#[derive(Debug, Clone)]
pub struct SmoothResolution2D {
    polytope: LatticePolytope,
    rays: Vec<[i64; 2]>,
    nu: Vec<Rational>,
    inserted: Vec<bool>,
    self_intersections: Vec<i64>,
    c1_squared: i64,
}

impl SmoothResolution2D {
    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn rays(&self) -> &[[i64; 2]] {
        &self.rays
    }

    pub fn nu_values(&self) -> &[Rational] {
        &self.nu
    }

    pub fn inserted(&self) -> &[bool] {
        &self.inserted
    }

    pub fn inserted_rays(&self) -> Vec<[i64; 2]> {
        self.rays
            .iter()
            .zip(&self.inserted)
            .filter(|(_, &ins)| ins)
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn self_intersections(&self) -> &[i64] {
        &self.self_intersections
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn c1_squared(&self) -> i64 {
        self.c1_squared
    }
}

pub fn resolve_fan_2d(fan: &Fan2D) -> SmoothResolution2D {
    resolve_fan_2d_with_policy(fan, InsertionPolicy::MinNu)
}

/// Refines every singular cone by inserting (the primitive generator of)
/// an open box point, chosen by `policy` with a lexicographic tie-break.
/// Each insertion strictly decreases the subcone determinants, so the
/// refinement terminates; the result does not depend on the policy up to
/// the invariants computed from it.
pub fn resolve_fan_2d_with_policy(fan: &Fan2D, policy: InsertionPolicy) -> SmoothResolution2D {
    let p = &fan.polytope;
    let mut rays: Vec<([i64; 2], bool)> = fan.rays.iter().map(|&v| (v, false)).collect();
    let mut i = 0;
    while i < rays.len() {
        let a = rays[i].0;
        let b = rays[(i + 1) % rays.len()].0;
        let det = cross(a, b);
        assert!(det >= 1, "fan must be strictly convex");
        if det == 1 {
            i += 1;
            continue;
        }
        let candidates = open_box_points_cone_2d(a, b);
        assert!(!candidates.is_empty(), "singular cone has open box points");
        let chosen = candidates
            .iter()
            .map(|&(w, _, _)| (w, p.newton_value(&w)))
            .reduce(|best, cand| {
                let better = match policy {
                    InsertionPolicy::MinNu => (&cand.1, cand.0) < (&best.1, best.0),
                    InsertionPolicy::MaxNu => (&cand.1, cand.0) > (&best.1, best.0),
                };
                if better {
                    cand
                } else {
                    best
                }
            })
            .unwrap();
        rays.insert(i + 1, (primitive(chosen.0), true));
        // stay at i: the left subcone may still be singular
    }

    let ray_vecs: Vec<[i64; 2]> = rays.iter().map(|&(v, _)| v).collect();
    let inserted: Vec<bool> = rays.iter().map(|&(_, ins)| ins).collect();
    let r = ray_vecs.len();
    for k in 0..r {
        assert_eq!(
            cross(ray_vecs[k], ray_vecs[(k + 1) % r]),
            1,
            "resolution must be smooth"
        );
    }
    // nu is recomputed from the facet presentation, never interpolated
    let nu: Vec<Rational> = ray_vecs.iter().map(|v| p.newton_value(v)).collect();

    let self_intersections: Vec<i64> = (0..r)
        .map(|k| {
            let prev = ray_vecs[(k + r - 1) % r];
            let next = ray_vecs[(k + 1) % r];
            let v = ray_vecs[k];
            let sum = [prev[0] + next[0], prev[1] + next[1]];
            // v_{k-1} + v_{k+1} = -D_k^2 v_k
            let c = if v[0] != 0 {
                sum[0] / v[0]
            } else {
                sum[1] / v[1]
            };
            assert_eq!([c * v[0], c * v[1]], sum, "wall relation must be integral");
            -c
        })
        .collect();
    let c1_squared = self_intersections.iter().sum::<i64>() + 2 * r as i64;
    // Noether for smooth complete toric surfaces: K^2 + e = 12 with e = r
    assert_eq!(c1_squared, 12 - r as i64, "self-intersection bookkeeping");

    SmoothResolution2D {
        polytope: p.clone(),
        rays: ray_vecs,
        nu,
        inserted,
        self_intersections,
        c1_squared,
    }
}

/// `muhat` by both formulas: the sum form
/// `c1^2(Y) - 2r + sum_i (nu_i/nu_{i+1} + nu_{i+1}/nu_i)` and the
/// intersection product `(sum_i nu_i D_i)(sum_j nu_j^{-1} D_j)`, which
/// must agree exactly.
pub fn muhat_2d(res: &SmoothResolution2D) -> Rational {
    let r = res.ray_count();
    let nu = &res.nu;
    let mut ratio_sum = Rational::zero();
    for i in 0..r {
        let j = (i + 1) % r;
        ratio_sum += &nu[i] / &nu[j] + &nu[j] / &nu[i];
    }
    let sum_form = rat(res.c1_squared) - rat(2 * r as i64) + ratio_sum;

    // product form over the full intersection matrix:
    // D_i . D_j = D_i^2 on the diagonal, 1 for cyclically adjacent pairs,
    // 0 otherwise
    let mut product_form = Rational::zero();
    for i in 0..r {
        for j in 0..r {
            let pairing = if i == j {
                rat(res.self_intersections[i])
            } else if (i + 1) % r == j || (j + 1) % r == i {
                rat(1)
            } else {
                continue;
            };
            product_form += &nu[i] * pairing / &nu[j];
        }
    }
    assert_eq!(sum_form, product_form, "muhat formulas must agree");
    sum_form
}

/// Truncated series of `(z - z^nu)/(z^nu - 1)` for `nu = p/q`, as integer
/// exponent numerators over the lattice `1/q`: the formal expansion
/// `sum_{k>=0} z^{(k+1)nu} - z^{1+k nu}` kept up to exponent `cap`.
fn stringy_factor_ladder(p: i64, q: i64, cap: i64) -> Vec<(i64, i64)> {
    let bound = cap * q;
    let mut g: BTreeMap<i64, i64> = BTreeMap::new();
    let mut e = p;
    while e <= bound {
        *g.entry(e).or_insert(0) += 1;
        e += p;
    }
    let mut e = q;
    while e <= bound {
        *g.entry(e).or_insert(0) -= 1;
        e += p;
    }
    g.into_iter().filter(|&(_, c)| c != 0).collect()
}

fn lcm_i64(a: i64, b: i64) -> i64 {
    a / gcd_i64(a, b) * b
}

/// The stacky stringy E-function of the resolution, assembled as an exact
/// truncated Puiseux series and returned as a spectrum.
///
/// The sum runs over subsets J of the rays with `nu != 1` (a factor with
/// `nu = 1` vanishes identically): the empty set contributes
/// `E(Y) = 1 + (r-2)z + z^2`, singletons contribute `(1+z)` per ray (every
/// toric divisor on a smooth complete surface is a projective line), and
/// adjacent pairs contribute `1` (a point); non-adjacent divisors do not
/// meet. All accumulation happens on integer exponent lattices; the result
/// is a polynomial supported in `[0, 2]`, which the truncation window
/// checks exactly.
pub fn stringy_e_2d(res: &SmoothResolution2D) -> SpectrumPoly {
    let r = res.ray_count();
    const CAP: i64 = 3;
    // per-denominator buckets of exponent numerators
    let mut buckets: BTreeMap<i64, BTreeMap<i64, i64>> = BTreeMap::new();
    {
        let unit = buckets.entry(1).or_default();
        *unit.entry(0).or_insert(0) += 1;
        *unit.entry(1).or_insert(0) += r as i64 - 2;
        *unit.entry(2).or_insert(0) += 1;
    }

    // exponent-numerator ladder over the lattice 1/denominator
    type Ladder = (i64, Vec<(i64, i64)>);
    let one = Rational::one();
    let ladders: Vec<Option<Ladder>> = res
        .nu
        .iter()
        .map(|nu| {
            if nu == &one {
                return None;
            }
            let p = i64::try_from(nu.numer().clone()).expect("nu numerator fits i64");
            let q = i64::try_from(nu.denom().clone()).expect("nu denominator fits i64");
            Some((q, stringy_factor_ladder(p, q, CAP)))
        })
        .collect();

    for entry in ladders.iter().flatten() {
        // E(D_j) = 1 + z
        let (q, ladder) = entry;
        let bucket = buckets.entry(*q).or_default();
        for &(e, c) in ladder {
            *bucket.entry(e).or_insert(0) += c;
            if e + q <= CAP * q {
                *bucket.entry(e + q).or_insert(0) += c;
            }
        }
    }
    for i in 0..r {
        let j = (i + 1) % r;
        if let (Some((qi, gi)), Some((qj, gj))) = (&ladders[i], &ladders[j]) {
            let l = lcm_i64(*qi, *qj);
            let (si, sj) = (l / qi, l / qj);
            let bound = CAP * l;
            let bucket = buckets.entry(l).or_default();
            for &(e1, c1) in gi {
                let base = e1 * si;
                if base > bound {
                    break;
                }
                for &(e2, c2) in gj {
                    let e = base + e2 * sj;
                    if e > bound {
                        break;
                    }
                    *bucket.entry(e).or_insert(0) += c1 * c2;
                }
            }
        }
    }

    let mut acc: BTreeMap<Rational, i64> = BTreeMap::new();
    for (den, bucket) in &buckets {
        for (&num, &c) in bucket {
            if c != 0 {
                *acc.entry(ratio(num, *den)).or_insert(0) += c;
            }
        }
    }
    let two = rat(2);
    let tail: Vec<_> = acc.iter().filter(|(e, c)| **e > two && **c != 0).collect();
    assert!(
        tail.is_empty(),
        "stringy E-function must be a polynomial supported in [0, 2]"
    );
    acc.retain(|e, _| e <= &two);
    let spec = SpectrumPoly::from_signed(acc);
    assert_eq!(
        spec.total_multiplicity(),
        res.polytope.normalized_volume(),
        "stringy Euler number must equal the normalized volume"
    );
    spec
}

/// Newton polytopes of the Givental-Hori-Vafa models treated here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GhvKind {
    /// `u1 + u2 + q1/u2 + q2 u2^m/u1`
    Hirzebruch(u32),
    /// `u1 + ... + un + q/(u1^l1 ... un^ln)`
    Wps(WpsWeights),
}

/// The Newton polytope of the model; the nonzero parameters are
/// irrelevant to it.
pub fn ghv_newton_polytope(kind: &GhvKind) -> Result<LatticePolytope> {
    match kind {
        GhvKind::Hirzebruch(m) => {
            if *m < 1 {
                return Err(Error::InvalidWeights {
                    reason: "hirzebruch parameter must be at least 1".into(),
                });
            }
            build_polytope(&[
                vec![1, 0],
                vec![0, 1],
                vec![0, -1],
                vec![-1, *m as i64],
            ])
        }
        GhvKind::Wps(w) => wps_polytope(w),
    }
}
