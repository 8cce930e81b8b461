use std::cmp::Ordering;

use super::PolyhedralCone;
use crate::error::{Error, Result};
use crate::linalg::{add, dot, is_zero_vec, nullspace, orthogonal_basis, project_orthogonal, rank, scale};
use crate::scalar::Scalar;

fn check_basis<T: Scalar>(cone: &PolyhedralCone<T>, basis: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let n = cone.ambient_dim();
    for b in basis {
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.len() });
        }
    }
    if rank(basis, n) != basis.len() {
        return Err(Error::RankDeficient);
    }
    Ok(orthogonal_basis(basis))
}

/// Orthogonal projection of `cone` onto `span(basis)`, as the cone of projected generators.
pub fn project_cone<T: Scalar>(cone: &PolyhedralCone<T>, basis: &[Vec<T>]) -> Result<PolyhedralCone<T>> {
    let q = check_basis(cone, basis)?;
    let gens: Vec<Vec<T>> = cone.generators().iter().map(|g| project_orthogonal(g, &q)).collect();
    PolyhedralCone::from_generators_in(cone.ambient_dim(), &gens)
}

const FM_ROW_LIMIT: usize = 20_000;

/// The same projection computed from the H-representation by Fourier–Motzkin elimination of
/// the coordinates along `span(basis)^⊥`.
pub fn project_cone_fm<T: Scalar>(cone: &PolyhedralCone<T>, basis: &[Vec<T>]) -> Result<PolyhedralCone<T>> {
    let n = cone.ambient_dim();
    let q = check_basis(cone, basis)?;
    let w = orthogonal_basis(&nullspace(&q, n));
    let k = q.len();
    // row a ↦ coefficients (a·q_1, …, a·q_k | a·w_1, …)
    let mut rows: Vec<Vec<T>> = cone
        .inequalities()
        .iter()
        .map(|a| q.iter().chain(w.iter()).map(|b| dot(a, b)).collect())
        .collect();
    for col in (k..n).rev() {
        let mut keep = Vec::new();
        let mut pos = Vec::new();
        let mut negs = Vec::new();
        for r in rows {
            match r[col].partial_cmp(&T::zero()).unwrap_or(Ordering::Equal) {
                _ if r[col].is_negligible() => keep.push(r),
                Ordering::Greater => pos.push(r),
                _ => negs.push(r),
            }
        }
        for p in &pos {
            for m in &negs {
                let c = add(&scale(p, &(-m[col].clone())), &scale(m, &p[col]));
                let mut c = T::canonical_ray(&c);
                c[col] = T::zero();
                if !is_zero_vec(&c) && !keep.iter().any(|x: &Vec<T>| x == &c) {
                    keep.push(c);
                }
            }
        }
        if keep.len() > FM_ROW_LIMIT {
            return Err(Error::TooLarge(format!("{} rows during elimination", keep.len())));
        }
        rows = keep.into_iter().map(|mut r| {
            r.truncate(col);
            r
        }).collect();
    }
    // back to ambient normals: c·y ≥ 0 with y_i = <p, q_i>/|q_i|² becomes <Σ c_i q_i/|q_i|², p> ≥ 0
    let mut ambient: Vec<Vec<T>> = rows
        .iter()
        .map(|c| {
            q.iter().zip(c).fold(vec![T::zero(); n], |acc, (qi, ci)| {
                add(&acc, &scale(qi, &(ci.clone() / dot(qi, qi))))
            })
        })
        .filter(|v| !is_zero_vec(v))
        .collect();
    for wj in &w {
        ambient.push(wj.clone());
        ambient.push(crate::linalg::neg(wj));
    }
    PolyhedralCone::from_inequalities_in(n, &ambient)
}
