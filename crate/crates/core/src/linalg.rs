//! Exact vectors and small dense matrices over the rationals, plus the
//! integer helpers used by the lattice-geometry modules.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num::{BigInt, Zero};

/// Point of `N_Q` or `M_Q`; pairings against lattice vectors stay exact.
pub type QVector = Vec<Rational>;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot of unequal lengths");
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn dot_int(a: &[Rational], v: &[i64]) -> Rational {
    assert_eq!(a.len(), v.len(), "dot of unequal lengths");
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(v) {
        acc += x * Rational::from_integer(BigInt::from(*y));
    }
    acc
}

fn check_square(m: &[Vec<Rational>]) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NonSquareMatrix {
                rows: n,
                cols: row.len(),
            });
        }
    }
    Ok(n)
}

/// Exact determinant by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn mat_det(m: &[Vec<Rational>]) -> Result<Rational> {
    let n = check_square(m)?;
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::from_integer(BigInt::from(1));
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => return Ok(Rational::zero()),
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col].clone();
        let inv = a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &inv;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    Ok(det)
}

/// Solves `m x = rhs` exactly for invertible `m`.
#[allow(clippy::needless_range_loop)]
pub fn mat_solve(m: &[Vec<Rational>], rhs: &[Rational]) -> Result<QVector> {
    let n = check_square(m)?;
    if rhs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rhs.len(),
        });
    }
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut b: Vec<Rational> = rhs.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap(pivot, col);
        b.swap(pivot, col);
        let inv = a[col][col].clone();
        for c in col..n {
            a[col][c] = &a[col][c] / &inv;
        }
        b[col] = &b[col] / &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
            let sub = &factor * &b[col];
            b[r] -= sub;
        }
    }
    Ok(b)
}

// ---------------------------------------------------------------------------
// Integer helpers (i128 intermediates are exact for the supported coordinate
// magnitudes; `polytope` validates those bounds at construction).
// ---------------------------------------------------------------------------

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd_i64(g, x))
}

pub(crate) fn dot_i128(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Determinant of a square integer matrix via cofactor expansion (n <= 4).
pub(crate) fn det_i128(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0] as i128,
        2 => m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128,
        _ => {
            let mut det: i128 = 0;
            for col in 0..n {
                if m[0][col] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != col)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let term = m[0][col] as i128 * det_i128(&minor);
                if col % 2 == 0 {
                    det += term;
                } else {
                    det -= term;
                }
            }
            det
        }
    }
}

/// Rank of an integer matrix, by exact elimination over the rationals.
#[allow(clippy::needless_range_loop)]
pub(crate) fn rank_int(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
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

/// Normal of the hyperplane through `points[0]` spanned by the differences
/// `points[i] - points[0]`: the vector of signed cofactors of the
/// difference matrix. Zero when the points are affinely dependent.
pub(crate) fn hyperplane_normal(points: &[&[i64]]) -> Vec<i128> {
    let n = points[0].len();
    assert_eq!(points.len(), n, "need n points in dimension n");
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| (0..n).map(|c| p[c] - points[0][c]).collect())
        .collect();
    (0..n)
        .map(|skip| {
            let minor: Vec<Vec<i64>> = diffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != skip)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let d = det_i128(&minor);
            if skip % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qmat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn det_identity_is_one() {
        assert_eq!(mat_det(&qmat(&[&[1, 0], &[0, 1]])).unwrap(), rat(1));
    }

    #[test]
    fn det_singular_cone_of_p113() {
        // index of the singular cone of the P(1,1,3) triangle
        assert_eq!(mat_det(&qmat(&[&[1, 0], &[-1, -3]])).unwrap(), rat(-3));
        assert_eq!(mat_det(&qmat(&[&[0, 1], &[-1, -3]])).unwrap(), rat(1));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = vec![vec![rat(1), rat(2)]];
        assert!(matches!(mat_det(&m), Err(Error::NonSquareMatrix { .. })));
    }

    #[test]
    fn solve_identity() {
        let x = mat_solve(&qmat(&[&[1, 0], &[0, 1]]), &[ratio(2, 3), rat(5)]).unwrap();
        assert_eq!(x, vec![ratio(2, 3), rat(5)]);
    }

    #[test]
    fn solve_facet_normals_of_p113() {
        // facet through (0,1) and (-1,-3)
        let u = mat_solve(&qmat(&[&[0, 1], &[-1, -3]]), &[rat(1), rat(1)]).unwrap();
        assert_eq!(u, vec![rat(-4), rat(1)]);
        // facet through (1,0) and (-1,-3)
        let u = mat_solve(&qmat(&[&[1, 0], &[-1, -3]]), &[rat(1), rat(1)]).unwrap();
        assert_eq!(u, vec![rat(1), ratio(-2, 3)]);
    }

    #[test]
    fn solve_rejects_singular() {
        let m = qmat(&[&[1, 2], &[2, 4]]);
        assert_eq!(mat_solve(&m, &[rat(1), rat(1)]), Err(Error::SingularMatrix));
    }

    /// Permutation-expansion determinant, the independent oracle.
    fn det_brute(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Rational::zero();
        permute(&mut perm, 0, &mut |p| {
            let mut sign = 1i64;
            let mut seen = p.to_vec();
            // count inversions for the sign
            for i in 0..n {
                for j in i + 1..n {
                    if seen[i] > seen[j] {
                        seen.swap(i, j);
                        sign = -sign;
                    }
                }
            }
            let mut prod = rat(sign);
            for (row, &col) in p.iter().enumerate() {
                prod *= m[row][col].clone();
            }
            total += prod;
        });
        total
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn det_agrees_with_permutation_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            for _ in 0..40 {
                let m: Vec<Vec<Rational>> = (0..n)
                    .map(|_| (0..n).map(|_| rat(rng.gen_range(-5..=5))).collect())
                    .collect();
                assert_eq!(mat_det(&m).unwrap(), det_brute(&m));
            }
        }
    }

    #[test]
    fn solve_multiplies_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut solved = 0;
        while solved < 50 {
            let n = rng.gen_range(1..=4);
            let m: Vec<Vec<Rational>> = (0..n)
                .map(|_| (0..n).map(|_| rat(rng.gen_range(-4..=4))).collect())
                .collect();
            let rhs: Vec<Rational> = (0..n)
                .map(|_| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
                .collect();
            match mat_solve(&m, &rhs) {
                Ok(x) => {
                    for row in 0..n {
                        assert_eq!(dot(&m[row], &x), rhs[row]);
                    }
                    solved += 1;
                }
                Err(Error::SingularMatrix) => {
                    assert!(mat_det(&m).unwrap().is_zero());
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }

    #[test]
    fn int_helpers_match_rational_path() {
        let m = vec![vec![3, 1, 2], vec![0, -1, 4], vec![5, 2, 1]];
        let q = qmat(&[&[3, 1, 2], &[0, -1, 4], &[5, 2, 1]]);
        assert_eq!(rat(det_i128(&m) as i64), mat_det(&q).unwrap());
        assert_eq!(rank_int(&m), 3);
        assert_eq!(rank_int(&[vec![2, 4], vec![1, 2]]), 1);
        assert_eq!(gcd_slice(&[6, -9, 12]), 3);
    }
}
