//! Floating-point convex calculus: projections, support functions, gauges and the local
//! trivialisations between relative duals of nearby faces.

mod gauge;
pub mod project;
mod triv;

use std::cmp::Ordering;

use num_traits::Float;
use rand::Rng;

pub use gauge::{gauge, gauge_directional, gauge_gradient, gradient_fitzpatrick_phelps, normal_cone};
pub use triv::{build_trivialization, lipschitz_bound, membership_margin, plane_rotation, Trivialization};

use crate::cone::PolyhedralCone;
use crate::error::{Error, Result};
use crate::linalg::{dot, dot_sign, norm_sq, orthogonal_basis, scale, sub};
use crate::scalar::Real;

/// Compact polytope `{x : <a_i, x> ≤ b_i}` together with its vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope<T: Real> {
    dim: usize,
    vertices: Vec<Vec<T>>,
    normals: Vec<Vec<T>>,
    offsets: Vec<T>,
    /// Affine hull constraints `<e, x> = c`.
    hull: Vec<(Vec<T>, T)>,
}

impl<T: Real> Polytope<T> {
    /// Convex hull of the vertices; facets come from the homogenised cone over `(v, 1)`.
    pub fn from_vertices(vertices: &[Vec<T>]) -> Result<Self> {
        let dim = vertices.first().map(|v| v.len()).ok_or(Error::EmptyInput)?;
        let lifted: Vec<Vec<T>> = vertices
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.push(T::one());
                w
            })
            .collect();
        let cone = PolyhedralCone::from_generators_in(dim + 1, &lifted)?;
        let split = |g: &Vec<T>| (g[..dim].to_vec(), g[dim]);
        let mut normals = Vec::new();
        let mut offsets = Vec::new();
        for f in cone.facets() {
            let (a, c) = split(f);
            // <a, x> + c ≥ 0  ⇔  <−a, x> ≤ c
            normals.push(a.iter().map(|&v| -v).collect());
            offsets.push(c);
        }
        let hull = cone.equalities().iter().map(|e| {
            let (a, c) = split(e);
            (a, -c)
        }).collect();
        let verts = cone.rays().iter().map(|r| r[..dim].iter().map(|&v| v / r[dim]).collect()).collect();
        Ok(Polytope { dim, vertices: verts, normals, offsets, hull })
    }

    /// From a known irredundant description.
    pub fn from_parts(vertices: Vec<Vec<T>>, normals: Vec<Vec<T>>, offsets: Vec<T>) -> Self {
        let dim = vertices.first().map_or(0, |v| v.len());
        Polytope { dim, vertices, normals, offsets, hull: Vec::new() }
    }

    /// `[-1, 1]^n`.
    pub fn cube(n: usize) -> Self {
        let vertices = (0..1usize << n)
            .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { T::one() } else { -T::one() }).collect())
            .collect();
        let mut normals = Vec::new();
        for i in 0..n {
            for s in [T::one(), -T::one()] {
                let mut a = vec![T::zero(); n];
                a[i] = s;
                normals.push(a);
            }
        }
        let offsets = vec![T::one(); 2 * n];
        Polytope { dim: n, vertices, normals, offsets, hull: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    pub fn normals(&self) -> &[Vec<T>] {
        &self.normals
    }

    pub fn offsets(&self) -> &[T] {
        &self.offsets
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.hull.is_empty()
    }

    pub fn contains(&self, x: &[T]) -> bool {
        let tol = T::tolerance();
        self.normals.iter().zip(&self.offsets).all(|(a, &b)| dot(a, x) <= b + tol * (T::one() + Float::abs(b)))
            && self.hull.iter().all(|(e, c)| Float::abs(dot(e, x) - *c) <= tol * (T::one() + Float::abs(*c)))
    }

    /// Distance from the origin to the nearest facet hyperplane.
    pub fn inradius_at_origin(&self) -> T {
        self.normals
            .iter()
            .zip(&self.offsets)
            .map(|(a, &b)| b / norm_sq(a).sqrt())
            .fold(T::infinity(), |m, v| m.min(v))
    }

    /// Largest vertex norm.
    pub fn circumradius_at_origin(&self) -> T {
        self.vertices.iter().map(|v| norm_sq(v).sqrt()).fold(T::zero(), |m, v| m.max(v))
    }
}

/// The slice `H ∩ K − ξ0` of a cone `K` by `H = {<·, ξ0> = 1}`, written in an orthonormal
/// frame of `ξ0^⊥ ∩ span K`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeBody<T: Real> {
    cone: PolyhedralCone<T>,
    xi0: Vec<T>,
    frame: Vec<Vec<T>>,
    local: Polytope<T>,
}

/// Orthonormal basis of `ξ0^⊥ ∩ span K` for a unit `ξ0 ∈ span K`.
pub fn slice_frame<T: Real>(cone: &PolyhedralCone<T>, xi0: &[T]) -> Vec<Vec<T>> {
    let mut vs = vec![xi0.to_vec()];
    vs.extend(cone.span_basis());
    orthogonal_basis(&vs)
        .into_iter()
        .skip(1)
        .map(|v| {
            let n = norm_sq(&v).sqrt();
            scale(&v, &(T::one() / n))
        })
        .collect()
}

fn to_local<T: Real>(frame: &[Vec<T>], x: &[T]) -> Vec<T> {
    frame.iter().map(|b| dot(b, x)).collect()
}

fn to_ambient<T: Real>(frame: &[Vec<T>], w: &[T], n: usize) -> Vec<T> {
    frame.iter().zip(w).fold(vec![T::zero(); n], |acc, (b, &c)| crate::linalg::axpy(&acc, &c, b))
}

impl<T: Real> GaugeBody<T> {
    /// Requires `ξ0` strictly inside `K` and strictly inside `K^⊛` (positive on every ray).
    pub fn new(cone: &PolyhedralCone<T>, xi0: &[T]) -> Result<Self> {
        Self::with_frame(cone, xi0, None)
    }

    pub(crate) fn with_frame(cone: &PolyhedralCone<T>, xi0: &[T], frame: Option<Vec<Vec<T>>>) -> Result<Self> {
        let n = cone.ambient_dim();
        if xi0.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: xi0.len() });
        }
        let len = norm_sq(xi0).sqrt();
        if len <= T::tolerance() {
            return Err(Error::BasePointNotAdmissible("base point is zero".into()));
        }
        let xi0: Vec<T> = scale(xi0, &(T::one() / len));
        if !cone.is_pointed() {
            return Err(Error::BasePointNotAdmissible("slice of a cone with lineality is unbounded".into()));
        }
        if cone.equalities().iter().any(|e| dot_sign(e, &xi0) != Ordering::Equal) {
            return Err(Error::BasePointNotAdmissible("base point outside the span".into()));
        }
        let margin = T::of_f64(1e-12);
        if cone.facets().iter().any(|g| dot(g, &xi0) <= margin) {
            return Err(Error::BasePointNotAdmissible("base point not in the relative interior".into()));
        }
        if cone.rays().iter().any(|r| dot(r, &xi0) <= margin) {
            return Err(Error::BasePointNotAdmissible("slice is not compact".into()));
        }
        let frame = frame.unwrap_or_else(|| slice_frame(cone, &xi0));
        // −<g, z> ≤ <g, ξ0>, rescaled to offset 1
        let normals: Vec<Vec<T>> =
            cone.facets().iter().map(|g| to_local(&frame, &scale(g, &(-T::one() / dot(g, &xi0))))).collect();
        let offsets = vec![T::one(); normals.len()];
        let vertices: Vec<Vec<T>> = cone
            .rays()
            .iter()
            .map(|r| to_local(&frame, &sub(&scale(r, &(T::one() / dot(r, &xi0))), &xi0)))
            .collect();
        let local = Polytope::from_parts(vertices, normals, offsets);
        Ok(GaugeBody { cone: cone.clone(), xi0, frame, local })
    }

    pub fn cone(&self) -> &PolyhedralCone<T> {
        &self.cone
    }

    pub fn xi0(&self) -> &[T] {
        &self.xi0
    }

    pub fn frame(&self) -> &[Vec<T>] {
        &self.frame
    }

    /// The body in frame coordinates.
    pub fn local(&self) -> &Polytope<T> {
        &self.local
    }

    pub fn to_local(&self, x: &[T]) -> Vec<T> {
        to_local(&self.frame, x)
    }

    pub fn to_ambient(&self, w: &[T]) -> Vec<T> {
        to_ambient(&self.frame, w, self.xi0.len())
    }

    /// Membership straight from the cone: `z ⟂ ξ0`, `z ∈ span K` and `ξ0 + z ∈ K`.
    pub fn contains(&self, z: &[T]) -> bool {
        let y: Vec<T> = z.iter().zip(&self.xi0).map(|(&a, &b)| a + b).collect();
        dot_sign(z, &self.xi0) == Ordering::Equal && self.cone.contains(&y)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConvexBody<T: Real> {
    Cone(PolyhedralCone<T>),
    /// `{(v, t) ∈ R^{n−1} × R : ‖v‖ ≤ t}`.
    Lorentz(usize),
    Polytope(Polytope<T>),
    Gauge(GaugeBody<T>),
    Ball { dim: usize, radius: T },
}

impl<T: Real> ConvexBody<T> {
    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Cone(c) => c.ambient_dim(),
            ConvexBody::Lorentz(n) => *n,
            ConvexBody::Polytope(p) => p.dim(),
            ConvexBody::Gauge(g) => g.xi0.len(),
            ConvexBody::Ball { dim, .. } => *dim,
        }
    }

    pub fn contains(&self, x: &[T]) -> bool {
        let tol = T::tolerance();
        match self {
            ConvexBody::Cone(c) => c.contains(x),
            ConvexBody::Lorentz(_) => {
                let n = x.len();
                norm_sq(&x[..n - 1]).sqrt() <= x[n - 1] + tol * (T::one() + Float::abs(x[n - 1]))
            }
            ConvexBody::Polytope(p) => p.contains(x),
            ConvexBody::Gauge(g) => g.contains(x),
            ConvexBody::Ball { radius, .. } => norm_sq(x).sqrt() <= *radius * (T::one() + tol),
        }
    }

    /// Nearest point of the body.
    pub fn project(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        match self {
            ConvexBody::Cone(c) => project::project_polyhedral(c, x),
            ConvexBody::Lorentz(_) => Ok(project::project_lorentz(x)),
            ConvexBody::Polytope(p) => project::project_polytope(p.vertices(), x),
            ConvexBody::Gauge(g) => {
                let w = project::project_polytope(g.local.vertices(), &g.to_local(x))?;
                Ok(g.to_ambient(&w))
            }
            ConvexBody::Ball { radius, .. } => {
                let n = norm_sq(x).sqrt();
                Ok(if n <= *radius { x.to_vec() } else { scale(x, &(*radius / n)) })
            }
        }
    }

    /// `σ(x) = sup_{y ∈ B} <x, y>`, possibly `+∞`.
    pub fn support(&self, x: &[T]) -> T {
        match self {
            ConvexBody::Cone(c) => {
                if c.generators().iter().all(|g| dot_sign(g, x) != Ordering::Greater) {
                    T::zero()
                } else {
                    T::infinity()
                }
            }
            ConvexBody::Lorentz(n) => {
                let minus: Vec<T> = x.iter().map(|&v| -v).collect();
                if ConvexBody::<T>::Lorentz(*n).contains(&minus) {
                    T::zero()
                } else {
                    T::infinity()
                }
            }
            ConvexBody::Polytope(p) => support_points(p.vertices(), x),
            ConvexBody::Gauge(g) => support_points(g.local.vertices(), &g.to_local(x)),
            ConvexBody::Ball { radius, .. } => *radius * norm_sq(x).sqrt(),
        }
    }
}

/// Support function of a finite point set.
pub fn support_points<T: Real>(points: &[Vec<T>], x: &[T]) -> T {
    points.iter().map(|p| dot(p, x)).fold(T::neg_infinity(), |m, v| m.max(v))
}

pub fn metric_project<T: Real>(body: &ConvexBody<T>, x: &[T]) -> Result<Vec<T>> {
    body.project(x)
}

pub fn support<T: Real>(body: &ConvexBody<T>, x: &[T]) -> T {
    body.support(x)
}

/// Random points of a cone: exponential weights on the rays plus Gaussian-free lineality
/// coefficients in `[-1, 1]`.
pub fn sample_cone<T: Real, R: Rng>(cone: &PolyhedralCone<T>, rng: &mut R, count: usize) -> Vec<Vec<T>> {
    let n = cone.ambient_dim();
    (0..count)
        .map(|_| {
            let mut x = vec![T::zero(); n];
            for r in cone.rays() {
                let w: f64 = -(1.0 - rng.random::<f64>()).ln();
                x = crate::linalg::axpy(&x, &T::of_f64(w), r);
            }
            for l in cone.lineality() {
                let w: f64 = rng.random_range(-1.0..1.0);
                x = crate::linalg::axpy(&x, &T::of_f64(w), l);
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_values() {
        let q = ConvexBody::Cone(PolyhedralCone::<f64>::orthant(2));
        assert_eq!(q.support(&[-1.0, -1.0]), 0.0);
        assert_eq!(q.support(&[1.0, 0.0]), f64::INFINITY);
        let unit_square = Polytope::from_vertices(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(ConvexBody::Polytope(unit_square).support(&[2.0, 1.0]), 3.0);
    }

    #[test]
    fn polytope_from_vertices_drops_interior_points() {
        let p = Polytope::<f64>::from_vertices(&[
            vec![1.0, 1.0],
            vec![-1.0, 1.0],
            vec![-1.0, -1.0],
            vec![1.0, -1.0],
            vec![0.0, 0.1],
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.normals().len(), 4);
        assert!(p.contains(&[0.5, -0.5]) && !p.contains(&[1.5, 0.0]));
    }

    #[test]
    fn gauge_body_of_quarter_plane() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let g = GaugeBody::new(&PolyhedralCone::<f64>::orthant(2), &[s, s]).unwrap();
        assert_eq!(g.local().vertices().len(), 2);
        assert!((g.local().circumradius_at_origin() - 1.0).abs() < 1e-12);
        assert!(GaugeBody::new(&PolyhedralCone::<f64>::orthant(2), &[1.0, 0.0]).is_err());
    }
}
