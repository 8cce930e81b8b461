#![allow(dead_code)]

use std::collections::BTreeSet;

use conewh::{rational_vec, ExactCone, Rational};
use num_traits::{One, Zero};

pub fn quarter_plane() -> ExactCone {
    ExactCone::from_generators(&[rational_vec(&[1, 0]), rational_vec(&[0, 1])]).unwrap()
}

pub fn simplicial_r3() -> ExactCone {
    ExactCone::from_generators(&[rational_vec(&[1, 0, 0]), rational_vec(&[0, 1, 0]), rational_vec(&[0, 0, 1])]).unwrap()
}

pub fn four_gonal() -> ExactCone {
    ExactCone::from_generators(&[
        rational_vec(&[1, 1, 1]),
        rational_vec(&[-1, 1, 1]),
        rational_vec(&[-1, -1, 1]),
        rational_vec(&[1, -1, 1]),
    ])
    .unwrap()
}

pub fn test_cones() -> Vec<(&'static str, ExactCone)> {
    vec![("quarter-plane", quarter_plane()), ("simplicial-r3", simplicial_r3()), ("4-gonal", four_gonal())]
}

/// Rank by fraction-exact Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in 0..ncols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |s, (x, y)| s + x * y)
}

/// A face as the set of extreme rays it contains.
pub type RaySet = BTreeSet<Vec<Rational>>;

/// Faces of a pointed cone from every subset of facets: the rays annihilated by the subset.
pub fn brute_force_faces(c: &ExactCone) -> (Vec<(RaySet, usize)>, BTreeSet<(RaySet, RaySet)>) {
    let facets = c.facets();
    let mut faces: BTreeSet<RaySet> = BTreeSet::new();
    for mask in 0u32..(1 << facets.len()) {
        let rays: RaySet = c
            .rays()
            .iter()
            .filter(|r| (0..facets.len()).all(|i| mask & (1 << i) == 0 || dot(&facets[i], r).is_zero()))
            .cloned()
            .collect();
        faces.insert(rays);
    }
    let list: Vec<RaySet> = faces.into_iter().collect();
    let dims: Vec<(RaySet, usize)> =
        list.iter().map(|f| (f.clone(), rank(&f.iter().cloned().collect::<Vec<_>>()))).collect();
    let lt = |a: &RaySet, b: &RaySet| a != b && a.is_subset(b);
    let mut covers = BTreeSet::new();
    for a in &list {
        for b in &list {
            if lt(a, b) && !list.iter().any(|c| lt(a, c) && lt(c, b)) {
                covers.insert((a.clone(), b.clone()));
            }
        }
    }
    (dims, covers)
}

pub fn half() -> Rational {
    Rational::one() / Rational::from_integer(2.into())
}
