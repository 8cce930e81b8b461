//! Minkowski gauges, normal cones and gauge derivatives.

use std::cmp::Ordering;

use num_traits::Float;

use super::project::{project_generated, project_polytope};
use super::{ConvexBody, Polytope};
use crate::error::{Error, Result};
use crate::linalg::{dot, dot_sign, norm_sq, scale, sub};
use crate::scalar::{to_f64_vec, Real};

/// Relative slack under which a facet counts as active.
const ACTIVE_TOL: f64 = 1e-9;
/// Angular tolerance for a normal cone to be a single ray.
const RAY_TOL: f64 = 1e-8;

pub(crate) fn polytope_gauge<T: Real>(p: &Polytope<T>, x: &[T]) -> Result<T> {
    if p.offsets().is_empty() || p.offsets().iter().any(|&b| b <= T::zero()) || !p.is_full_dimensional() {
        return Err(Error::ZeroNotInterior);
    }
    Ok(p.normals().iter().zip(p.offsets()).map(|(a, &b)| dot(a, x) / b).fold(T::zero(), |m, v| m.max(v)))
}

fn polytope_normals<T: Real>(p: &Polytope<T>, y: &[T]) -> Vec<Vec<T>> {
    let ratios: Vec<T> = p.normals().iter().zip(p.offsets()).map(|(a, &b)| dot(a, y) / b).collect();
    let top = ratios.iter().fold(T::neg_infinity(), |m, &v| m.max(v));
    let slack = T::of_f64(ACTIVE_TOL) * (T::one() + Float::abs(top));
    p.normals().iter().zip(&ratios).filter(|(_, &r)| r >= top - slack).map(|(a, _)| a.clone()).collect()
}

/// `μ(x) = inf{α > 0 : x/α ∈ B}`.
pub fn gauge<T: Real>(body: &ConvexBody<T>, x: &[T]) -> Result<T> {
    if x.len() != body.dim() {
        return Err(Error::DimensionMismatch { expected: body.dim(), found: x.len() });
    }
    match body {
        ConvexBody::Polytope(p) => polytope_gauge(p, x),
        ConvexBody::Gauge(g) => polytope_gauge(g.local(), &g.to_local(x)),
        ConvexBody::Ball { radius, .. } if *radius > T::zero() => Ok(norm_sq(x).sqrt() / *radius),
        _ => Err(Error::ZeroNotInterior),
    }
}

/// Generators of the normal cone `N_y(B)` at a boundary point (for cones: any point of the cone).
pub fn normal_cone<T: Real>(body: &ConvexBody<T>, y: &[T]) -> Result<Vec<Vec<T>>> {
    if y.len() != body.dim() {
        return Err(Error::DimensionMismatch { expected: body.dim(), found: y.len() });
    }
    match body {
        ConvexBody::Cone(c) => {
            if !c.contains(y) {
                return Err(Error::NotInCone);
            }
            let mut out: Vec<Vec<T>> = c
                .facets()
                .iter()
                .filter(|f| dot_sign(f, y) == Ordering::Equal)
                .map(|f| f.iter().map(|&v| -v).collect())
                .collect();
            for e in c.equalities() {
                out.push(e.clone());
                out.push(e.iter().map(|&v| -v).collect());
            }
            Ok(out)
        }
        ConvexBody::Lorentz(_) => {
            let n = y.len();
            let nv = norm_sq(&y[..n - 1]).sqrt();
            if nv <= T::tolerance() {
                // apex: the normal cone is all of −K, not finitely generated
                return Err(Error::NotDifferentiable { generators: Vec::new() });
            }
            let mut g: Vec<T> = y[..n - 1].iter().map(|&v| v / nv).collect();
            g.push(-T::one());
            Ok(vec![g])
        }
        ConvexBody::Polytope(p) => {
            polytope_gauge(p, y)?;
            Ok(polytope_normals(p, y))
        }
        ConvexBody::Gauge(g) => {
            polytope_gauge(g.local(), &g.to_local(y))?;
            Ok(polytope_normals(g.local(), &g.to_local(y)).iter().map(|a| g.to_ambient(a)).collect())
        }
        ConvexBody::Ball { .. } => {
            let n = norm_sq(y).sqrt();
            if n <= T::tolerance() {
                return Err(Error::ZeroVector);
            }
            Ok(vec![scale(y, &(T::one() / n))])
        }
    }
}

/// Normal cone generators at `x/μ(x)` together with `μ(x)`.
fn normals_at<T: Real>(body: &ConvexBody<T>, x: &[T]) -> Result<(T, Vec<Vec<T>>)> {
    let mu = gauge(body, x)?;
    if mu <= T::zero() || norm_sq(x) <= T::zero() {
        return Err(Error::ZeroVector);
    }
    let y = scale(x, &(T::one() / mu));
    Ok((mu, normal_cone(body, &y)?))
}

/// Right directional derivative `σ_{n_x(B)}(v)`, where `n_x(B)` is the slice of the normal
/// cone at `x/μ(x)` by `<x, ·> = μ(x)`.
pub fn gauge_directional<T: Real>(body: &ConvexBody<T>, x: &[T], v: &[T]) -> Result<T> {
    let (mu, gens) = normals_at(body, x)?;
    Ok(gens
        .iter()
        .map(|g| dot(g, v) * mu / dot(x, g))
        .fold(T::neg_infinity(), |m, s| m.max(s)))
}

/// `∇μ(x) = μ(x)/<π_N(x), x> · π_N(x)` with `N` the normal cone at `x/μ(x)`; requires a
/// unique supporting hyperplane there.
pub fn gauge_gradient<T: Real>(body: &ConvexBody<T>, x: &[T]) -> Result<Vec<T>> {
    let (mu, gens) = normals_at(body, x)?;
    let units: Vec<Vec<T>> = gens.iter().map(|g| scale(g, &(T::one() / norm_sq(g).sqrt()))).collect();
    let tol = T::of_f64(RAY_TOL);
    if units.iter().any(|u| norm_sq(&sub(u, &units[0])).sqrt() > tol) {
        return Err(Error::NotDifferentiable { generators: gens.iter().map(|g| to_f64_vec(g)).collect() });
    }
    let pi = project_generated(&gens, x)?;
    Ok(scale(&pi, &(mu / dot(&pi, x))))
}

/// `(x − π_B(x)) / <π_B(x), x − π_B(x)>` for `x` outside `B`.
pub fn gradient_fitzpatrick_phelps<T: Real>(body: &ConvexBody<T>, x: &[T]) -> Result<Vec<T>> {
    let p = match body {
        ConvexBody::Polytope(poly) => project_polytope(poly.vertices(), x)?,
        _ => body.project(x)?,
    };
    let d = sub(x, &p);
    let denom = dot(&p, &d);
    if denom <= T::zero() {
        return Err(Error::InvalidInput("point is not outside the body".into()));
    }
    Ok(scale(&d, &(T::one() / denom)))
}
