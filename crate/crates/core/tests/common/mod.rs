//! Shared corpus and random polytope generators for the integration and
//! acceptance suites. Not every binary uses every helper.
#![allow(dead_code)]

use rand::Rng;
use spectra_core::polytope::{build_polytope, LatticePolytope};

pub fn p11a(a: i64) -> LatticePolytope {
    build_polytope(&[vec![1, 0], vec![0, 1], vec![-1, -a]]).unwrap()
}

pub fn p125() -> LatticePolytope {
    build_polytope(&[vec![1, 0], vec![0, 1], vec![-2, -5]]).unwrap()
}

pub fn p1ll(l: i64) -> LatticePolytope {
    build_polytope(&[vec![1, 0], vec![0, 1], vec![-l, -l]]).unwrap()
}

pub fn p1222() -> LatticePolytope {
    build_polytope(&[
        vec![-2, -2, -2],
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
    ])
    .unwrap()
}

pub fn p122_stacky() -> LatticePolytope {
    build_polytope(&[vec![1, 0], vec![0, 2], vec![-2, -2]]).unwrap()
}

pub fn plll(l: i64) -> LatticePolytope {
    build_polytope(&[vec![l, 0], vec![0, l], vec![-l, -l]]).unwrap()
}

pub fn hirzebruch_polytope(m: i64) -> LatticePolytope {
    build_polytope(&[vec![1, 0], vec![0, 1], vec![0, -1], vec![-1, m]]).unwrap()
}

pub fn square() -> LatticePolytope {
    build_polytope(&[vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]).unwrap()
}

pub fn p2_triangle() -> LatticePolytope {
    build_polytope(&[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap()
}

/// The named polytopes with known invariants used across the checks.
pub fn reference_corpus() -> Vec<(String, LatticePolytope)> {
    let mut out: Vec<(String, LatticePolytope)> = Vec::new();
    for a in 1..=6 {
        out.push((format!("P(1,1,{a})"), p11a(a)));
    }
    out.push(("P(1,2,5)".into(), p125()));
    for l in 2..=5 {
        out.push((format!("P(1,{l},{l})"), p1ll(l)));
    }
    out.push(("P(1,2,2,2)".into(), p1222()));
    out.push(("P_122".into(), p122_stacky()));
    for l in 1..=4 {
        out.push((format!("P_{l}{l}{l}"), plll(l)));
    }
    for m in 1..=5 {
        out.push((format!("Hirzebruch m={m}"), hirzebruch_polytope(m)));
    }
    out.push(("square".into(), square()));
    out.push(("P2 triangle".into(), p2_triangle()));
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Random 2D polytope with vertex coordinates in [-6, 6] and the origin
/// strictly interior; with `fano` every sampled point is primitivized, so
/// every hull vertex is primitive.
pub fn random_polytope_2d<R: Rng>(rng: &mut R, fano: bool) -> LatticePolytope {
    loop {
        let k = rng.gen_range(3..=7);
        let pts: Vec<Vec<i64>> = (0..k)
            .map(|_| loop {
                let x: i64 = rng.gen_range(-6..=6);
                let y: i64 = rng.gen_range(-6..=6);
                if x == 0 && y == 0 {
                    continue;
                }
                if fano {
                    let g = gcd(x, y);
                    break vec![x / g, y / g];
                }
                break vec![x, y];
            })
            .collect();
        if let Ok(p) = build_polytope(&pts) {
            return p;
        }
    }
}
