//! Double description conversion from `{x : <a_i, x> >= 0}` to lineality plus extreme rays.

use std::cmp::Ordering;

use crate::linalg::{axpy, dot, dot_sign, is_zero_vec, neg, rank, scale};
use crate::scalar::Scalar;

pub(crate) struct DdOutput<T> {
    pub lineality: Vec<Vec<T>>,
    pub rays: Vec<Vec<T>>,
}

struct Ray<T> {
    v: Vec<T>,
    /// Indices of processed rows vanishing on `v`.
    zeros: Vec<usize>,
}

fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

fn sign<T: Scalar>(a: &[T], x: &[T]) -> Ordering {
    dot_sign(a, x)
}

fn adjacent<T: Scalar>(rows: &[Vec<T>], p: &Ray<T>, q: &Ray<T>, n: usize, target: usize) -> bool {
    let common: Vec<usize> = p.zeros.iter().filter(|i| q.zeros.contains(i)).copied().collect();
    if common.len() < target {
        return false;
    }
    let sub: Vec<Vec<T>> = common.iter().map(|&i| rows[i].clone()).collect();
    rank(&sub, n) == target
}

pub(crate) fn double_description<T: Scalar>(rows: &[Vec<T>], n: usize) -> DdOutput<T> {
    let rows: Vec<Vec<T>> = rows.iter().filter(|r| !is_zero_vec(r)).map(|r| T::canonical_ray(r)).collect();
    let mut lin: Vec<Vec<T>> = (0..n).map(|i| unit(n, i)).collect();
    let mut rays: Vec<Ray<T>> = Vec::new();
    let mut processed: Vec<usize> = Vec::new();

    for (k, a) in rows.iter().enumerate() {
        let pivot = lin
            .iter()
            .enumerate()
            .filter(|(_, l)| sign(a, l) != Ordering::Equal)
            .max_by(|(_, x), (_, y)| {
                dot(a, x).as_f64().abs().partial_cmp(&dot(a, y).as_f64().abs()).unwrap_or(Ordering::Equal)
            })
            .map(|(i, _)| i);

        if let Some(i0) = pivot {
            let l0 = lin.remove(i0);
            let v0 = dot(a, &l0);
            for l in lin.iter_mut() {
                let c = dot(a, l) / v0.clone();
                if !c.is_zero() {
                    *l = axpy(l, &(-c), &l0);
                }
            }
            let r0 = if v0 > T::zero() { l0 } else { neg(&l0) };
            let a_r0 = dot(a, &r0);
            for r in rays.iter_mut() {
                let c = dot(a, &r.v) / a_r0.clone();
                if !c.is_zero() {
                    r.v = T::canonical_ray(&axpy(&r.v, &(-c), &r0));
                }
                r.zeros.push(k);
            }
            let zeros = processed.iter().copied().filter(|&i| sign(&rows[i], &r0) == Ordering::Equal).collect();
            rays.push(Ray { v: T::canonical_ray(&r0), zeros });
            processed.push(k);
            continue;
        }

        let mut pos = Vec::new();
        let mut zero = Vec::new();
        let mut negs = Vec::new();
        for r in rays.drain(..) {
            match sign(a, &r.v) {
                Ordering::Greater => pos.push(r),
                Ordering::Equal => zero.push(r),
                Ordering::Less => negs.push(r),
            }
        }
        let target = n.saturating_sub(lin.len() + 2);
        let mut fresh = Vec::new();
        if n >= lin.len() + 2 {
            for p in &pos {
                for q in &negs {
                    if adjacent(&rows, p, q, n, target) {
                        let ap = dot(a, &p.v);
                        let aq = dot(a, &q.v);
                        let v = axpy(&scale(&q.v, &ap), &(-aq), &p.v);
                        let v = T::canonical_ray(&v);
                        let mut zeros: Vec<usize> =
                            p.zeros.iter().filter(|i| q.zeros.contains(i)).copied().collect();
                        zeros.push(k);
                        fresh.push(Ray { v, zeros });
                    }
                }
            }
        }
        for mut r in zero {
            r.zeros.push(k);
            rays.push(r);
        }
        rays.extend(pos);
        rays.extend(fresh);
        processed.push(k);
    }

    DdOutput { lineality: lin, rays: rays.into_iter().map(|r| r.v).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational_vec, Rational};

    #[test]
    fn quarter_plane_rays() {
        let out = double_description(&[rational_vec(&[1, 0]), rational_vec(&[0, 1])], 2);
        assert!(out.lineality.is_empty());
        let mut rays = out.rays;
        rays.sort_by(|a, b| crate::linalg::lex_cmp(a, b));
        assert_eq!(rays, vec![rational_vec(&[0, 1]), rational_vec(&[1, 0])]);
    }

    #[test]
    fn implicit_equality_removes_direction() {
        let out: DdOutput<Rational> =
            double_description(&[rational_vec(&[1, 0]), rational_vec(&[-1, 0])], 2);
        assert_eq!(out.lineality.len(), 1);
        assert!(out.rays.is_empty());
    }
}
