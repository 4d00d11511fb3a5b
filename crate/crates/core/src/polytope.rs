//! Full-dimensional lattice polytopes with the origin strictly interior:
//! facet presentation, Newton function, polar polytope, normalized volume,
//! lattice-point enumeration, classification and the Ehrhart delta vector.

use crate::error::{Error, Result};
use crate::linalg::{
    self, det_i128, dot_i128, gcd_slice, hyperplane_normal, mat_det, rank_int, QVector,
};
use crate::poly::UniPoly;
use crate::rational::{rat, Rational};
use num::{BigInt, One, Signed, Zero};
use std::collections::BTreeSet;

/// Default ambient-dimension ceiling for the brute-force facet search.
pub const DEFAULT_DIM_CEILING: usize = 4;

/// Coordinate bound keeping every i128 intermediate exact.
pub const MAX_COORDINATE: i64 = 1_000_000;

/// One facet `F = P \cap { x : <u_F, x> = 1 }`, stored in the primitive
/// integer form `<normal_num, x> <= normal_den` with `normal_den > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal_num: Vec<i64>,
    pub normal_den: i64,
    /// Sorted indices of the vertices lying on the facet.
    pub vertex_ids: Vec<usize>,
}

impl Facet {
    /// The rational facet normal `u_F = normal_num / normal_den`.
    pub fn normal(&self) -> QVector {
        self.normal_num
            .iter()
            .map(|&a| Rational::new(BigInt::from(a), BigInt::from(self.normal_den)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolytopeClassification {
    pub is_simplicial: bool,
    pub is_fano: bool,
    pub is_reflexive: bool,
    pub is_smooth_fano: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartData {
    /// delta_0 .. delta_n
    pub delta_vector: Vec<u64>,
    /// card(mP cap N) for m = 0..n
    pub dilate_counts: Vec<u64>,
}

impl EhrhartData {
    pub fn is_palindromic(&self) -> bool {
        let d = &self.delta_vector;
        (0..d.len()).all(|i| d[i] == d[d.len() - 1 - i])
    }
}

/// Builds the canonical polytope from a vertex list: duplicates and
/// non-extreme points are dropped, vertices are sorted lexicographically
/// and the facet presentation is computed up front.
pub fn build_polytope(vertices: &[Vec<i64>]) -> Result<LatticePolytope> {
    build_polytope_with_ceiling(vertices, DEFAULT_DIM_CEILING)
}

pub fn build_polytope_with_ceiling(
    vertices: &[Vec<i64>],
    ceiling: usize,
) -> Result<LatticePolytope> {
    if vertices.is_empty() {
        return Err(Error::EmptyVertexList);
    }
    let n = vertices[0].len();
    if n == 0 || n > ceiling {
        return Err(Error::UnsupportedDimension { n, max: ceiling });
    }
    for v in vertices {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        for &c in v {
            if c.abs() > MAX_COORDINATE {
                return Err(Error::CoordinateTooLarge {
                    value: c,
                    max: MAX_COORDINATE,
                });
            }
        }
    }

    let mut points: Vec<Vec<i64>> = vertices.to_vec();
    points.sort();
    points.dedup();

    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| (0..n).map(|c| p[c] - points[0][c]).collect())
        .collect();
    if rank_int(&diffs) != n {
        return Err(Error::NotFullDimensional);
    }

    let facets_raw = enumerate_facets(&points, n)?;
    for (_, den, _) in &facets_raw {
        if *den <= 0 {
            return Err(Error::OriginNotInterior);
        }
    }

    // A point is extreme iff its active facet normals span the ambient space.
    let mut extreme: Vec<Vec<i64>> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let active: Vec<Vec<i64>> = facets_raw
            .iter()
            .filter(|(_, _, on)| on.contains(&i))
            .map(|(a, _, _)| a.clone())
            .collect();
        if rank_int(&active) == n {
            extreme.push(p.clone());
        }
    }
    extreme.sort();

    let mut facets: Vec<Facet> = facets_raw
        .into_iter()
        .map(|(a, b, _)| {
            let vertex_ids: Vec<usize> = extreme
                .iter()
                .enumerate()
                .filter(|(_, v)| dot_i128(&a, v) == b as i128)
                .map(|(k, _)| k)
                .collect();
            Facet {
                normal_num: a,
                normal_den: b,
                vertex_ids,
            }
        })
        .collect();
    facets.sort_by(|f, g| (&f.normal_num, f.normal_den).cmp(&(&g.normal_num, g.normal_den)));

    Ok(LatticePolytope {
        dim: n,
        vertices: extreme,
        facets,
    })
}

/// Primitive facet data `(a, b, incident point ids)` with `<a, x> <= b`.
type RawFacet = (Vec<i64>, i64, Vec<usize>);

/// All facets of `conv(points)`, by brute force over n-point subsets.
fn enumerate_facets(points: &[Vec<i64>], n: usize) -> Result<Vec<RawFacet>> {
    let mut found: BTreeSet<(Vec<i64>, i64)> = BTreeSet::new();
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let pts: Vec<&[i64]> = subset.iter().map(|&i| points[i].as_slice()).collect();
        let normal = hyperplane_normal(&pts);
        if normal.iter().any(|&c| c != 0) {
            let b = normal
                .iter()
                .zip(pts[0].iter())
                .map(|(&a, &x)| a * x as i128)
                .sum::<i128>();
            let mut lo = false;
            let mut hi = false;
            for p in points {
                let d = normal
                    .iter()
                    .zip(p.iter())
                    .map(|(&a, &x)| a * x as i128)
                    .sum::<i128>();
                if d < b {
                    lo = true;
                } else if d > b {
                    hi = true;
                }
            }
            if !(lo && hi) {
                // supporting hyperplane through n affinely independent points
                let (a, b) = if hi {
                    (normal.iter().map(|&c| -c).collect::<Vec<i128>>(), -b)
                } else {
                    (normal, b)
                };
                let mut a64 = Vec::with_capacity(n);
                for &c in &a {
                    a64.push(i64::try_from(c).map_err(|_| Error::CoordinateTooLarge {
                        value: i64::MAX,
                        max: MAX_COORDINATE,
                    })?);
                }
                let b64 = i64::try_from(b).map_err(|_| Error::CoordinateTooLarge {
                    value: i64::MAX,
                    max: MAX_COORDINATE,
                })?;
                let mut g = gcd_slice(&a64);
                g = linalg::gcd_i64(g, b64);
                debug_assert!(g > 0);
                let a64: Vec<i64> = a64.iter().map(|&c| c / g).collect();
                found.insert((a64, b64 / g));
            }
        }
        if !next_subset(&mut subset, points.len()) {
            break;
        }
    }

    let facets = found
        .into_iter()
        .map(|(a, b)| {
            let on: Vec<usize> = points
                .iter()
                .enumerate()
                .filter(|(_, p)| dot_i128(&a, p) == b as i128)
                .map(|(i, _)| i)
                .collect();
            (a, b, on)
        })
        .collect();
    Ok(facets)
}

fn next_subset(subset: &mut [usize], limit: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < limit - (k - i) {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl LatticePolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_normals(&self) -> Vec<QVector> {
        self.facets.iter().map(|f| f.normal()).collect()
    }

    /// Newton function `nu(v) = max_F <u_F, v>`. Nonnegative, zero only at
    /// the origin, and `nu(v) <= 1` exactly on `P`.
    pub fn newton_value(&self, v: &[i64]) -> Rational {
        assert_eq!(v.len(), self.dim, "point of wrong dimension");
        self.facets
            .iter()
            .map(|f| {
                Rational::new(
                    BigInt::from(dot_i128(&f.normal_num, v)),
                    BigInt::from(f.normal_den),
                )
            })
            .max()
            .expect("polytope has facets")
    }

    /// `nu(v) <= p/q` without building rationals; requires `q > 0`.
    fn newton_le(&self, v: &[i64], p: i128, q: i128) -> bool {
        debug_assert!(q > 0);
        self.facets
            .iter()
            .all(|f| q * dot_i128(&f.normal_num, v) <= p * f.normal_den as i128)
    }

    /// All `v` with `nu(v) <= bound`, paired with `nu(v)`, by scanning the
    /// integer bounding box of `bound * P`.
    pub fn lattice_points_with_nu(&self, bound: &Rational) -> Vec<(Vec<i64>, Rational)> {
        assert!(!bound.is_negative(), "bound must be nonnegative");
        let p = i128::try_from(bound.numer().clone()).expect("bound fits i128");
        let q = i128::try_from(bound.denom().clone()).expect("bound fits i128");
        let mut lo = vec![0i64; self.dim];
        let mut hi = vec![0i64; self.dim];
        for c in 0..self.dim {
            for v in &self.vertices {
                let scaled = bound * rat(v[c]);
                let fl = scaled.floor().numer().clone();
                let ce = scaled.ceil().numer().clone();
                let fl = i64::try_from(fl).expect("bound box fits i64");
                let ce = i64::try_from(ce).expect("bound box fits i64");
                lo[c] = lo[c].min(fl);
                hi[c] = hi[c].max(ce);
            }
        }
        let mut out = Vec::new();
        let mut cursor = lo.clone();
        'scan: loop {
            if self.newton_le(&cursor, p, q) {
                let nu = self.newton_value(&cursor);
                out.push((cursor.clone(), nu));
            }
            for c in (0..self.dim).rev() {
                if cursor[c] < hi[c] {
                    cursor[c] += 1;
                    cursor[c + 1..self.dim].copy_from_slice(&lo[c + 1..self.dim]);
                    continue 'scan;
                }
            }
            break;
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Nonzero interior lattice points paired with their Newton values,
    /// plus the origin.
    pub fn interior_lattice_points(&self) -> Vec<(Vec<i64>, Rational)> {
        let one = Rational::one();
        self.lattice_points_with_nu(&one)
            .into_iter()
            .filter(|(_, nu)| nu < &one)
            .collect()
    }

    pub fn boundary_lattice_point_count(&self) -> u64 {
        let one = Rational::one();
        self.lattice_points_with_nu(&one)
            .into_iter()
            .filter(|(_, nu)| nu == &one)
            .count() as u64
    }

    /// `mu_P = n! vol(P)`, summing `|det|` over an origin-fan of facet
    /// triangulations.
    pub fn normalized_volume(&self) -> u64 {
        let mut total: i128 = 0;
        for f in 0..self.facets.len() {
            for simplex in self.triangulate_facet(f) {
                let m: Vec<Vec<i64>> = simplex.iter().map(|&i| self.vertices[i].clone()).collect();
                total += det_i128(&m).abs();
            }
        }
        u64::try_from(total).expect("normalized volume fits u64")
    }

    pub fn classify(&self) -> PolytopeClassification {
        let n = self.dim;
        let is_simplicial = self.facets.iter().all(|f| f.vertex_ids.len() == n);
        let is_fano = self
            .vertices
            .iter()
            .map(|v| gcd_slice(v))
            .all(|g| g == 1);
        let is_reflexive = self.facets.iter().all(|f| f.normal_den == 1);
        let is_smooth_fano = is_simplicial
            && self.facets.iter().all(|f| {
                let m: Vec<Vec<i64>> = f
                    .vertex_ids
                    .iter()
                    .map(|&i| self.vertices[i].clone())
                    .collect();
                det_i128(&m).abs() == 1
            });
        PolytopeClassification {
            is_simplicial,
            is_fano,
            is_reflexive,
            is_smooth_fano,
        }
    }

    /// Vertices of the polar polytope (the facet normals, canonically
    /// sorted) together with its normalized volume.
    pub fn polar_polytope(&self) -> (Vec<QVector>, Rational) {
        let normals: Vec<QVector> = self.facet_normals();
        // Facets of the polar are dual to vertices of P: the facet of P°
        // cut out by vertex v collects the normals of the facets through v.
        let polar_facets: Vec<BTreeSet<usize>> = (0..self.vertices.len())
            .map(|vid| {
                self.facets
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.vertex_ids.contains(&vid))
                    .map(|(fi, _)| fi)
                    .collect()
            })
            .collect();
        let rank = |ids: &[usize]| -> usize {
            let rows: Vec<Vec<Rational>> = ids[1..]
                .iter()
                .map(|&i| {
                    (0..self.dim)
                        .map(|c| &normals[i][c] - &normals[ids[0]][c])
                        .collect()
                })
                .collect();
            rank_rational(&rows)
        };
        let mut mu = Rational::zero();
        for pf in &polar_facets {
            let vset: Vec<usize> = pf.iter().copied().collect();
            for simplex in triangulate_face(&vset, self.dim - 1, &polar_facets, &rank) {
                let m: Vec<Vec<Rational>> =
                    simplex.iter().map(|&i| normals[i].clone()).collect();
                let d = mat_det(&m).expect("square by construction");
                mu += d.abs();
            }
        }
        let mut verts = normals;
        verts.sort();
        (verts, mu)
    }

    /// Dilate counts for m = 0..n and the delta vector, read off the
    /// degree-<=n part of `(1-z)^{n+1} sum_m card(mP cap N) z^m`.
    pub fn ehrhart_delta(&self) -> EhrhartData {
        let n = self.dim;
        let counts: Vec<u64> = (0..=n)
            .map(|m| self.lattice_points_with_nu(&rat(m as i64)).len() as u64)
            .collect();
        let ehr = UniPoly::from_coeffs(counts.iter().map(|&c| rat(c as i64)).collect());
        let kernel = UniPoly::from_i64(&[1, -1]).pow(n as u32 + 1);
        let prod = &kernel * &ehr;
        let delta: Vec<u64> = (0..=n)
            .map(|j| {
                let c = prod.coeff(j);
                assert!(c.denom().is_one() && !c.is_negative(), "delta vector entries");
                u64::try_from(c.numer().clone()).expect("delta fits u64")
            })
            .collect();
        EhrhartData {
            delta_vector: delta,
            dilate_counts: counts,
        }
    }

    pub(crate) fn triangulate_facet(&self, f: usize) -> Vec<Vec<usize>> {
        let facet_sets: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|g| g.vertex_ids.iter().copied().collect())
            .collect();
        let rank = |ids: &[usize]| -> usize {
            let rows: Vec<Vec<i64>> = ids[1..]
                .iter()
                .map(|&i| {
                    (0..self.dim)
                        .map(|c| self.vertices[i][c] - self.vertices[ids[0]][c])
                        .collect()
                })
                .collect();
            rank_int(&rows)
        };
        let vset = self.facets[f].vertex_ids.clone();
        triangulate_face(&vset, self.dim - 1, &facet_sets, &rank)
    }
}

#[allow(clippy::needless_range_loop)]
fn rank_rational(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a = rows.to_vec();
    let cols = a[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = match (rank..a.len()).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        a.swap(pivot, rank);
        let inv = a[rank][col].clone();
        for r in rank + 1..a.len() {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &inv;
            for c in col..cols {
                let sub = &factor * &a[rank][c];
                a[r][c] -= sub;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Fan triangulation of a d-dimensional face given by its vertex ids:
/// simplices are built from the first vertex and a triangulation of each
/// ridge avoiding it. Ridges are recovered as the maximal proper
/// intersections with the other facet vertex sets.
fn triangulate_face(
    vset: &[usize],
    d: usize,
    facet_sets: &[BTreeSet<usize>],
    rank: &dyn Fn(&[usize]) -> usize,
) -> Vec<Vec<usize>> {
    if vset.len() == d + 1 {
        return vec![vset.to_vec()];
    }
    let here: BTreeSet<usize> = vset.iter().copied().collect();
    let v0 = vset[0];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for fs in facet_sets {
        let inter: Vec<usize> = vset.iter().copied().filter(|i| fs.contains(i)).collect();
        if inter.len() < d || inter.len() == here.len() || inter.contains(&v0) {
            continue;
        }
        if rank(&inter) != d - 1 {
            continue;
        }
        if !seen.insert(inter.clone()) {
            continue;
        }
        for sub in triangulate_face(&inter, d - 1, facet_sets, rank) {
            let mut simplex = Vec::with_capacity(d + 1);
            simplex.push(v0);
            simplex.extend(sub);
            out.push(simplex);
        }
    }
    assert!(!out.is_empty(), "face triangulation failed");
    out
}
