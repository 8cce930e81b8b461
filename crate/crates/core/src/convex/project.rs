//! Metric projections: active-set enumeration and NNLS for polyhedral cones, the closed form
//! for the Lorentz cone, Wolfe's minimum-norm point for polytopes.

use crate::cone::PolyhedralCone;
use crate::error::{Error, Result};
use crate::linalg::{axpy, dot, norm_sq, orthogonal_basis, project_orthogonal, solve, sub};
use crate::scalar::{to_f64_vec, Real, Scalar};

/// Largest facet count for which every active set is tried.
pub const ENUMERATION_LIMIT: usize = 8;

/// Projection onto a polyhedral cone by trying every facet subset as the active set:
/// each candidate is the projection onto the subspace cut out by the subset, and the nearest
/// feasible candidate is the answer. Exact over rationals.
pub fn project_cone_enumerate<T: Scalar>(cone: &PolyhedralCone<T>, x: &[T]) -> Vec<T> {
    let m = cone.facets().len();
    let mut best: Option<(T, Vec<T>)> = None;
    for mask in 0u32..(1u32 << m) {
        let mut rows: Vec<Vec<T>> = cone.equalities().to_vec();
        rows.extend((0..m).filter(|i| mask >> i & 1 == 1).map(|i| cone.facets()[i].clone()));
        let q = orthogonal_basis(&rows);
        let p = sub(x, &project_orthogonal(x, &q));
        if !cone.contains(&p) {
            continue;
        }
        let d = norm_sq(&sub(x, &p));
        if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
            best = Some((d, p));
        }
    }
    best.map(|(_, p)| p).unwrap_or_else(|| vec![T::zero(); x.len()])
}

/// Lawson–Hanson nonnegative least squares `min ‖Σ λ_j c_j − x‖, λ ≥ 0`; returns `λ`.
pub fn nnls<T: Real>(cols: &[Vec<T>], x: &[T]) -> Result<Vec<T>> {
    let m = cols.len();
    let tol = T::tolerance() * T::of_f64(1e-2);
    let max_iter = 30 * (m + 1);
    let mut lambda = vec![T::zero(); m];
    let mut passive: Vec<usize> = Vec::new();
    let combine = |lam: &[T]| cols.iter().zip(lam).fold(vec![T::zero(); x.len()], |acc, (c, &l)| axpy(&acc, &l, c));
    let scale = cols.iter().map(|c| norm_sq(c)).fold(norm_sq(x), |a, b| a.max(b)).max(T::one());
    let mut iter = 0;
    loop {
        let resid = sub(x, &combine(&lambda));
        let w: Vec<T> = cols.iter().map(|c| dot(c, &resid)).collect();
        let cand = (0..m).filter(|j| !passive.contains(j)).max_by(|&a, &b| w[a].partial_cmp(&w[b]).unwrap());
        let Some(j) = cand else { break };
        if w[j] <= tol * scale {
            break;
        }
        passive.push(j);
        loop {
            iter += 1;
            if iter > max_iter {
                return Err(Error::NoConvergence { iterations: iter, iterate: to_f64_vec(&combine(&lambda)) });
            }
            let g: Vec<Vec<T>> = passive.iter().map(|&a| passive.iter().map(|&b| dot(&cols[a], &cols[b])).collect()).collect();
            let rhs: Vec<T> = passive.iter().map(|&a| dot(&cols[a], x)).collect();
            let Some(s) = solve(&g, &rhs) else {
                // dependent column: drop it again
                passive.pop();
                break;
            };
            if s.iter().all(|&v| v > tol) {
                for (k, &a) in passive.iter().enumerate() {
                    lambda[a] = s[k];
                }
                break;
            }
            let mut alpha = T::one();
            for (k, &a) in passive.iter().enumerate() {
                if s[k] <= tol {
                    let denom = lambda[a] - s[k];
                    if denom > T::zero() {
                        alpha = alpha.min(lambda[a] / denom);
                    }
                }
            }
            for (k, &a) in passive.iter().enumerate() {
                lambda[a] = lambda[a] + alpha * (s[k] - lambda[a]);
            }
            passive.retain(|&a| lambda[a] > tol);
            for a in 0..m {
                if !passive.contains(&a) {
                    lambda[a] = T::zero();
                }
            }
        }
    }
    Ok(lambda)
}

/// Projection onto a float polyhedral cone: enumeration for few facets, otherwise NNLS on
/// the generators.
pub fn project_polyhedral<T: Real>(cone: &PolyhedralCone<T>, x: &[T]) -> Result<Vec<T>> {
    if cone.facets().len() <= ENUMERATION_LIMIT {
        return Ok(project_cone_enumerate(cone, x));
    }
    project_generated(&cone.generators(), x)
}

/// Projection onto the cone generated by `gens`.
pub fn project_generated<T: Real>(gens: &[Vec<T>], x: &[T]) -> Result<Vec<T>> {
    let lambda = nnls(gens, x)?;
    Ok(gens.iter().zip(&lambda).fold(vec![T::zero(); x.len()], |acc, (g, &l)| axpy(&acc, &l, g)))
}

/// Closed form for `{(v, t) : ‖v‖ ≤ t}` (the scalar coordinate is last).
pub fn project_lorentz<T: Real>(x: &[T]) -> Vec<T> {
    let n = x.len();
    let t = x[n - 1];
    let v = &x[..n - 1];
    let nv = norm_sq(v).sqrt();
    if nv <= t {
        return x.to_vec();
    }
    if nv <= -t {
        return vec![T::zero(); n];
    }
    let half = (t + nv) / T::of_f64(2.0);
    let mut out: Vec<T> = v.iter().map(|&vi| half * vi / nv).collect();
    out.push(half);
    out
}

/// Minimum-norm point of `conv(points)` (Wolfe); returns the convex weights.
pub fn wolfe_min_norm<T: Real>(points: &[Vec<T>]) -> Result<Vec<T>> {
    let m = points.len();
    if m == 0 {
        return Err(Error::EmptyInput);
    }
    let tol = T::tolerance() * T::of_f64(1e-3);
    let scale = points.iter().map(|p| norm_sq(p)).fold(T::zero(), |a, b| a.max(b)).max(T::of_f64(1e-300));
    let start = (0..m).min_by(|&a, &b| norm_sq(&points[a]).partial_cmp(&norm_sq(&points[b])).unwrap()).unwrap();
    let mut set = vec![start];
    let mut lambda = vec![T::one()];
    let point_of = |set: &[usize], lam: &[T]| {
        set.iter().zip(lam).fold(vec![T::zero(); points[0].len()], |acc, (&i, &l)| axpy(&acc, &l, &points[i]))
    };
    let mut x = points[start].clone();
    for iter in 0..(50 * m + 100) {
        let j = (0..m).min_by(|&a, &b| dot(&x, &points[a]).partial_cmp(&dot(&x, &points[b])).unwrap()).unwrap();
        if dot(&x, &points[j]) >= norm_sq(&x) - tol * scale || set.contains(&j) {
            let mut w = vec![T::zero(); m];
            for (&i, &l) in set.iter().zip(&lambda) {
                w[i] = l;
            }
            return Ok(w);
        }
        set.push(j);
        lambda.push(T::zero());
        loop {
            // affine minimiser over the current set
            let k = set.len();
            let mut a: Vec<Vec<T>> = vec![vec![T::zero(); k + 1]; k + 1];
            for r in 0..k {
                for c in 0..k {
                    a[r][c] = dot(&points[set[r]], &points[set[c]]);
                }
                a[r][k] = T::one();
                a[k][r] = T::one();
            }
            let mut b = vec![T::zero(); k + 1];
            b[k] = T::one();
            let Some(sol) = solve(&a, &b) else {
                return Err(Error::NoConvergence { iterations: iter, iterate: to_f64_vec(&x) });
            };
            let alpha = &sol[..k];
            if alpha.iter().all(|&v| v > tol) {
                lambda = alpha.to_vec();
                break;
            }
            let mut theta = T::one();
            for i in 0..k {
                if alpha[i] <= tol {
                    let denom = lambda[i] - alpha[i];
                    if denom > T::zero() {
                        theta = theta.min(lambda[i] / denom);
                    }
                }
            }
            for i in 0..k {
                lambda[i] = theta * alpha[i] + (T::one() - theta) * lambda[i];
            }
            let keep: Vec<bool> = lambda.iter().map(|&l| l > tol).collect();
            let mut ki = keep.iter();
            set.retain(|_| *ki.next().unwrap());
            lambda.retain(|&l| l > tol);
            let total = lambda.iter().fold(T::zero(), |a, &b| a + b);
            for l in lambda.iter_mut() {
                *l = *l / total;
            }
        }
        x = point_of(&set, &lambda);
    }
    Err(Error::NoConvergence { iterations: 50 * m + 100, iterate: to_f64_vec(&x) })
}

/// Projection onto the convex hull of `vertices`.
pub fn project_polytope<T: Real>(vertices: &[Vec<T>], x: &[T]) -> Result<Vec<T>> {
    let shifted: Vec<Vec<T>> = vertices.iter().map(|v| sub(v, x)).collect();
    let w = wolfe_min_norm(&shifted)?;
    Ok(vertices.iter().zip(&w).fold(vec![T::zero(); x.len()], |acc, (v, &l)| axpy(&acc, &l, v)))
}
