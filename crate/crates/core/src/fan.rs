//! The face fan over the proper faces of a simplicial polytope, the
//! half-open and open box points of its cones (with exact barycentric
//! coefficients in the stacky generators), and the Hodge-Deligne
//! polynomials of orbit closures.

use crate::error::{Error, Result};
use crate::linalg::{det_i128, rank_int};
use crate::poly::UniPoly;
use crate::polytope::LatticePolytope;
use crate::rational::Rational;
use num::{BigInt, One, Signed};
use std::collections::BTreeSet;

/// Cone over a proper face, by the sorted vertex indices spanning it.
/// The zero cone is the empty index list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    pub generators: Vec<usize>,
}

impl Cone {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn contains(&self, other: &Cone) -> bool {
        other.generators.iter().all(|g| self.generators.contains(g))
    }
}

#[derive(Debug, Clone)]
pub struct FaceFan {
    polytope: LatticePolytope,
    cones: Vec<Cone>,
}

impl FaceFan {
    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    /// All cones, sorted by (dimension, generators).
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cones_of_dim(&self, r: usize) -> impl Iterator<Item = &Cone> {
        self.cones.iter().filter(move |c| c.dim() == r)
    }

    pub fn maximal_cones(&self) -> impl Iterator<Item = &Cone> {
        self.cones_of_dim(self.polytope.dim())
    }
}

/// The complete fan of cones over the proper faces of `p`. For simplicial
/// `p` the faces are exactly the subsets of facet vertex sets.
pub fn face_fan(p: &LatticePolytope) -> Result<FaceFan> {
    if !p.classify().is_simplicial {
        return Err(Error::NotSimplicial);
    }
    let n = p.dim();
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    sets.insert(Vec::new());
    for f in p.facets() {
        for mask in 1u32..(1 << f.vertex_ids.len()) {
            let subset: Vec<usize> = f
                .vertex_ids
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &v)| v)
                .collect();
            sets.insert(subset);
        }
    }
    let mut cones: Vec<Cone> = sets.into_iter().map(|generators| Cone { generators }).collect();
    cones.sort_by_key(|c| (c.dim(), c.generators.clone()));

    for c in &cones {
        let rows: Vec<Vec<i64>> = c
            .generators
            .iter()
            .map(|&i| p.vertices()[i].clone())
            .collect();
        assert_eq!(rank_int(&rows), c.dim(), "cone generators must be independent");
    }
    let vol: i128 = cones
        .iter()
        .filter(|c| c.dim() == n)
        .map(|c| {
            let m: Vec<Vec<i64>> = c
                .generators
                .iter()
                .map(|&i| p.vertices()[i].clone())
                .collect();
            det_i128(&m).abs()
        })
        .sum();
    assert_eq!(
        vol,
        p.normalized_volume() as i128,
        "face fan must be complete"
    );

    Ok(FaceFan {
        polytope: p.clone(),
        cones,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxMode {
    /// Coefficients in `[0, 1)`.
    HalfOpen,
    /// Coefficients in `(0, 1)`.
    Open,
}

/// A lattice point of the (half-)open parallelepiped of a cone, with its
/// exact coefficients in the cone generators and its Newton value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxPoint {
    pub vector: Vec<i64>,
    pub nu: Rational,
    pub coefficients: Vec<Rational>,
}

/// Lattice points of the parallelepiped spanned by the stacky generators
/// of `cone`. The zero cone contributes the single point 0 in both modes,
/// which makes the box formula reproduce the constant term.
pub fn box_points(fan: &FaceFan, cone: &Cone, mode: BoxMode) -> Vec<BoxPoint> {
    let gens: Vec<Vec<i64>> = cone
        .generators
        .iter()
        .map(|&i| fan.polytope().vertices()[i].clone())
        .collect();
    parallelepiped_lattice_points(fan.polytope().dim(), &gens, mode)
        .into_iter()
        .map(|(vector, coefficients)| {
            // nu(b_i) = 1 on vertices and nu is linear on the cone
            let nu: Rational = coefficients.iter().sum();
            debug_assert_eq!(nu, fan.polytope().newton_value(&vector));
            BoxPoint {
                vector,
                nu,
                coefficients,
            }
        })
        .collect()
}

/// Lattice points `w = sum q_i g_i` with all `q_i` in the mode's range,
/// found by scanning the integer bounding box of the closed parallelepiped.
/// The coefficient test runs in integers: with `B` an invertible row block
/// of the generator matrix and `adj B * B = det B * I`, the coefficients
/// are `q = (adj B * w_B)/det B`, so range and span membership reduce to
/// integer comparisons.
pub(crate) fn parallelepiped_lattice_points(
    ambient: usize,
    gens: &[Vec<i64>],
    mode: BoxMode,
) -> Vec<(Vec<i64>, Vec<Rational>)> {
    let r = gens.len();
    if r == 0 {
        return vec![(vec![0; ambient], Vec::new())];
    }
    // greedy selection of r independent rows of the generator matrix
    let mut row_ids: Vec<usize> = Vec::new();
    for row in 0..ambient {
        if row_ids.len() == r {
            break;
        }
        let mut trial = row_ids.clone();
        trial.push(row);
        let rows: Vec<Vec<i64>> = trial
            .iter()
            .map(|&ri| gens.iter().map(|g| g[ri]).collect())
            .collect();
        if rank_int(&rows) == trial.len() {
            row_ids = trial;
        }
    }
    assert_eq!(row_ids.len(), r, "generators must be independent");
    let block: Vec<Vec<i64>> = row_ids
        .iter()
        .map(|&ri| gens.iter().map(|g| g[ri]).collect())
        .collect();
    let det = det_i128(&block);
    debug_assert!(det != 0);
    let adj = adjugate_i128(&block);
    let sign = det.signum();
    let d = det.abs();

    let mut lo = vec![0i64; ambient];
    let mut hi = vec![0i64; ambient];
    for c in 0..ambient {
        for g in gens {
            lo[c] += g[c].min(0);
            hi[c] += g[c].max(0);
        }
    }

    let mut out = Vec::new();
    let mut scaled = vec![0i128; r];
    let mut cursor = lo.clone();
    'scan: loop {
        // scaled coefficients u_i = |det| q_i
        let mut ok = true;
        for i in 0..r {
            let mut t: i128 = 0;
            for (j, &ri) in row_ids.iter().enumerate() {
                t += adj[i][j] * cursor[ri] as i128;
            }
            let u = sign * t;
            let in_range = match mode {
                BoxMode::HalfOpen => 0 <= u && u < d,
                BoxMode::Open => 0 < u && u < d,
            };
            if !in_range {
                ok = false;
                break;
            }
            scaled[i] = u;
        }
        if ok {
            // span membership: every ambient row must be consistent
            let consistent = (0..ambient).all(|row| {
                let lhs: i128 = gens
                    .iter()
                    .enumerate()
                    .map(|(j, g)| g[row] as i128 * scaled[j])
                    .sum();
                lhs == d * cursor[row] as i128
            });
            if consistent {
                let coeffs: Vec<Rational> = scaled
                    .iter()
                    .map(|&u| Rational::new(BigInt::from(u), BigInt::from(d)))
                    .collect();
                out.push((cursor.clone(), coeffs));
            }
        }
        for c in (0..ambient).rev() {
            if cursor[c] < hi[c] {
                cursor[c] += 1;
                cursor[c + 1..ambient].copy_from_slice(&lo[c + 1..ambient]);
                continue 'scan;
            }
        }
        break;
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Adjugate of a small integer matrix: `adj(m) * m = det(m) * I`.
#[allow(clippy::needless_range_loop)]
fn adjugate_i128(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let r = m.len();
    if r == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; r]; r];
    for i in 0..r {
        for j in 0..r {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|&(row, _)| row != j)
                .map(|(_, rowv)| {
                    rowv.iter()
                        .enumerate()
                        .filter(|&(col, _)| col != i)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let c = det_i128(&minor);
            adj[i][j] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    adj
}

/// `h_sigma(z) = sum over cones tau containing sigma of (z-1)^(n - dim tau)`,
/// the Hodge-Deligne polynomial of the orbit closure of sigma.
pub fn hodge_deligne_poly(fan: &FaceFan, cone: &Cone) -> UniPoly {
    let n = fan.polytope().dim();
    let zm1 = UniPoly::from_i64(&[-1, 1]);
    let mut h = UniPoly::zero();
    for tau in fan.cones() {
        if tau.contains(cone) {
            h = &h + &zm1.pow((n - tau.dim()) as u32);
        }
    }
    assert!(
        h.coeffs().iter().all(|c| !c.is_negative() && c.denom().is_one()),
        "h_sigma must have nonnegative integer coefficients"
    );
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::build_polytope;
    use crate::rational::{rat, ratio};

    fn p113() -> LatticePolytope {
        build_polytope(&[vec![1, 0], vec![0, 1], vec![-1, -3]]).unwrap()
    }

    fn p2_triangle() -> LatticePolytope {
        build_polytope(&[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap()
    }

    fn cone_of(fan: &FaceFan, gens: &[Vec<i64>]) -> Cone {
        let ids: Vec<usize> = gens
            .iter()
            .map(|g| {
                fan.polytope()
                    .vertices()
                    .iter()
                    .position(|v| v == g)
                    .expect("generator is a vertex")
            })
            .collect();
        let mut generators = ids;
        generators.sort();
        let cone = Cone { generators };
        assert!(fan.cones().contains(&cone));
        cone
    }

    #[test]
    fn fan_counts_for_triangles_and_squares() {
        let fan = face_fan(&p113()).unwrap();
        assert_eq!(fan.cones_of_dim(0).count(), 1);
        assert_eq!(fan.cones_of_dim(1).count(), 3);
        assert_eq!(fan.cones_of_dim(2).count(), 3);

        let square =
            build_polytope(&[vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]).unwrap();
        let fan = face_fan(&square).unwrap();
        assert_eq!(fan.cones().len(), 1 + 4 + 4);
    }

    #[test]
    fn fan_counts_for_the_p1222_simplex() {
        let p = build_polytope(&[
            vec![-2, -2, -2],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ])
        .unwrap();
        let fan = face_fan(&p).unwrap();
        assert_eq!(fan.cones_of_dim(0).count(), 1);
        assert_eq!(fan.cones_of_dim(1).count(), 4);
        assert_eq!(fan.cones_of_dim(2).count(), 6);
        assert_eq!(fan.cones_of_dim(3).count(), 4);
    }

    #[test]
    fn rejects_non_simplicial_polytopes() {
        let mut verts = Vec::new();
        for x in [-1i64, 1] {
            for y in [-1i64, 1] {
                for z in [-1i64, 1] {
                    verts.push(vec![x, y, z]);
                }
            }
        }
        let cube = build_polytope(&verts).unwrap();
        assert_eq!(face_fan(&cube).unwrap_err(), Error::NotSimplicial);
    }

    #[test]
    fn open_box_of_the_singular_cone_of_p113() {
        let fan = face_fan(&p113()).unwrap();
        let cone = cone_of(&fan, &[vec![1, 0], vec![-1, -3]]);
        let pts = box_points(&fan, &cone, BoxMode::Open);
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].vector, vec![0, -2]);
        assert_eq!(pts[0].nu, ratio(4, 3));
        assert_eq!(pts[0].coefficients, vec![ratio(2, 3), ratio(2, 3)]);
        assert_eq!(pts[1].vector, vec![0, -1]);
        assert_eq!(pts[1].nu, ratio(2, 3));
        assert_eq!(pts[1].coefficients, vec![ratio(1, 3), ratio(1, 3)]);
    }

    #[test]
    fn half_open_box_of_a_unimodular_cone_is_the_origin() {
        let fan = face_fan(&p113()).unwrap();
        let cone = cone_of(&fan, &[vec![0, 1], vec![-1, -3]]);
        let pts = box_points(&fan, &cone, BoxMode::HalfOpen);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].vector, vec![0, 0]);
        assert_eq!(pts[0].nu, rat(0));
    }

    #[test]
    fn ray_box_of_a_non_primitive_vertex() {
        let p = build_polytope(&[vec![1, 0], vec![0, 2], vec![-2, -2]]).unwrap();
        let fan = face_fan(&p).unwrap();
        let cone = cone_of(&fan, &[vec![0, 2]]);
        let pts = box_points(&fan, &cone, BoxMode::Open);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].vector, vec![0, 1]);
        assert_eq!(pts[0].nu, ratio(1, 2));
    }

    #[test]
    fn zero_cone_contributes_the_origin_in_both_modes() {
        let fan = face_fan(&p113()).unwrap();
        let zero = Cone { generators: vec![] };
        for mode in [BoxMode::Open, BoxMode::HalfOpen] {
            let pts = box_points(&fan, &zero, mode);
            assert_eq!(pts.len(), 1);
            assert_eq!(pts[0].vector, vec![0, 0]);
            assert_eq!(pts[0].nu, rat(0));
            assert!(pts[0].coefficients.is_empty());
        }
    }

    #[test]
    fn half_open_counts_add_up_to_the_volume() {
        for p in [
            p113(),
            p2_triangle(),
            build_polytope(&[vec![1, 0], vec![0, 2], vec![-2, -2]]).unwrap(),
            build_polytope(&[vec![1, 0], vec![0, 1], vec![-2, -5]]).unwrap(),
        ] {
            let fan = face_fan(&p).unwrap();
            let total: u64 = fan
                .maximal_cones()
                .map(|c| box_points(&fan, c, BoxMode::HalfOpen).len() as u64)
                .sum();
            assert_eq!(total, p.normalized_volume());
        }
    }

    #[test]
    fn open_box_reflection_pairing() {
        // q_i in (0,1) iff 1 - q_i in (0,1), and the nu values of a
        // reflected pair add up to dim sigma
        for p in [
            p113(),
            build_polytope(&[vec![1, 0], vec![0, 1], vec![-2, -5]]).unwrap(),
            build_polytope(&[vec![2, 0], vec![0, 2], vec![-2, -2]]).unwrap(),
        ] {
            let fan = face_fan(&p).unwrap();
            for cone in fan.cones() {
                let pts = box_points(&fan, cone, BoxMode::Open);
                for bp in &pts {
                    let reflected: Vec<Rational> =
                        bp.coefficients.iter().map(|q| rat(1) - q).collect();
                    let partner = pts
                        .iter()
                        .find(|other| other.coefficients == reflected)
                        .expect("reflection stays in the open box");
                    assert_eq!(&bp.nu + &partner.nu, rat(cone.dim() as i64));
                }
            }
        }
    }

    #[test]
    fn hodge_deligne_of_the_p2_fan() {
        let fan = face_fan(&p2_triangle()).unwrap();
        let zero = Cone { generators: vec![] };
        assert_eq!(hodge_deligne_poly(&fan, &zero), UniPoly::from_i64(&[1, 1, 1]));
        for ray in fan.cones_of_dim(1) {
            assert_eq!(hodge_deligne_poly(&fan, ray), UniPoly::from_i64(&[1, 1]));
        }
        for max in fan.cones_of_dim(2) {
            assert_eq!(hodge_deligne_poly(&fan, max), UniPoly::one());
        }
    }

    #[test]
    fn hodge_deligne_symmetry_and_euler_value() {
        for p in [
            p113(),
            p2_triangle(),
            build_polytope(&[vec![1, 0], vec![0, 1], vec![-2, -5]]).unwrap(),
        ] {
            let fan = face_fan(&p).unwrap();
            let n = p.dim();
            for cone in fan.cones() {
                let h = hodge_deligne_poly(&fan, cone);
                // z^{n - dim sigma} h(1/z) = h(z): reversed coefficients
                let deg = n - cone.dim();
                let reversed =
                    UniPoly::from_coeffs((0..=deg).rev().map(|k| h.coeff(k)).collect());
                assert_eq!(reversed, h);
            }
            let zero = Cone { generators: vec![] };
            let h0 = hodge_deligne_poly(&fan, &zero);
            assert_eq!(
                h0.eval(&rat(1)),
                rat(fan.maximal_cones().count() as i64),
                "h at one counts maximal cones"
            );
        }
    }
}
