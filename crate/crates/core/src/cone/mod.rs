//! Polyhedral cones with both representations kept in canonical form.
//!
//! A cone `C` is stored as
//! * `lineality`: basis of `C ∩ -C` (reduced row echelon form),
//! * `rays`: extreme rays of `C ∩ lineality^⊥`,
//! * `equalities`: basis of `span(C)^⊥`,
//! * `facets`: facet normals lying in `span(C)`.
//!
//! With this normalisation the dual cone is a plain swap of the two halves and
//! set equality is equality of the stored data.

mod dd;
mod face;
mod project;
pub mod spec;

use std::cmp::Ordering;

pub use face::{dual_face, exposed_face, face_lattice, relative_dual, Face, FaceLattice};
pub use project::{project_cone, project_cone_fm};

use crate::error::{Error, Result};
use crate::linalg::{
    dot_sign, is_zero_vec, lex_cmp, neg, nullspace, orthogonal_basis, project_orthogonal, rank, rref, sub,
    vec_approx_eq,
};
use crate::scalar::{convert_vec, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct PolyhedralCone<T: Scalar> {
    dim: usize,
    lineality: Vec<Vec<T>>,
    rays: Vec<Vec<T>>,
    equalities: Vec<Vec<T>>,
    facets: Vec<Vec<T>>,
}

fn check_dims<T: Scalar>(n: usize, vs: &[Vec<T>]) -> Result<()> {
    if n == 0 {
        return Err(Error::AmbientDimensionRequired);
    }
    for v in vs {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    Ok(())
}

fn canonical_subspace<T: Scalar>(basis: &[Vec<T>], n: usize) -> Vec<Vec<T>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let (rows, _) = rref(basis, n);
    rows.iter().map(|r| T::canonical_ray(r)).collect()
}

fn canonical_rays<T: Scalar>(rays: &[Vec<T>], against: &[Vec<T>]) -> Vec<Vec<T>> {
    let orth = orthogonal_basis(against);
    let mut out: Vec<Vec<T>> = Vec::new();
    for r in rays {
        let p = sub(r, &project_orthogonal(r, &orth));
        if is_zero_vec(&p) {
            continue;
        }
        let c = T::canonical_ray(&p);
        if !out.iter().any(|o| vec_approx_eq(o, &c)) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| lex_cmp(a, b));
    out
}

fn with_negatives<T: Scalar>(basis: &[Vec<T>], rest: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = Vec::with_capacity(2 * basis.len() + rest.len());
    for b in basis {
        out.push(b.clone());
        out.push(neg(b));
    }
    out.extend(rest.iter().cloned());
    out
}

impl<T: Scalar> PolyhedralCone<T> {
    fn from_parts(
        dim: usize,
        lineality: &[Vec<T>],
        rays: &[Vec<T>],
        equalities: &[Vec<T>],
        facets: &[Vec<T>],
    ) -> Self {
        let lineality = canonical_subspace(lineality, dim);
        let equalities = canonical_subspace(equalities, dim);
        let rays = canonical_rays(rays, &lineality);
        let facets = canonical_rays(facets, &equalities);
        PolyhedralCone { dim, lineality, rays, equalities, facets }
    }

    /// Nonnegative combinations of `rays`; the ambient dimension is taken from the first ray.
    pub fn from_generators(rays: &[Vec<T>]) -> Result<Self> {
        let n = rays.first().map(|r| r.len()).ok_or(Error::AmbientDimensionRequired)?;
        Self::from_generators_in(n, rays)
    }

    pub fn from_generators_in(n: usize, rays: &[Vec<T>]) -> Result<Self> {
        check_dims(n, rays)?;
        let dual = dd::double_description(rays, n);
        let primal = dd::double_description(&with_negatives(&dual.lineality, &dual.rays), n);
        Ok(Self::from_parts(n, &primal.lineality, &primal.rays, &dual.lineality, &dual.rays))
    }

    /// `{x : <a, x> >= 0 for every row a}`.
    pub fn from_inequalities(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.first().map(|r| r.len()).ok_or(Error::AmbientDimensionRequired)?;
        Self::from_inequalities_in(n, rows)
    }

    pub fn from_inequalities_in(n: usize, rows: &[Vec<T>]) -> Result<Self> {
        check_dims(n, rows)?;
        let primal = dd::double_description(rows, n);
        let dual = dd::double_description(&with_negatives(&primal.lineality, &primal.rays), n);
        Ok(Self::from_parts(n, &primal.lineality, &primal.rays, &dual.lineality, &dual.rays))
    }

    pub fn full_space(n: usize) -> Self {
        Self::from_parts(
            n,
            &(0..n)
                .map(|i| {
                    let mut v = vec![T::zero(); n];
                    v[i] = T::one();
                    v
                })
                .collect::<Vec<_>>(),
            &[],
            &[],
            &[],
        )
    }

    pub fn zero_cone(n: usize) -> Self {
        Self::full_space(n).dual()
    }

    /// The nonnegative orthant `{x : x_i >= 0}`.
    pub fn orthant(n: usize) -> Self {
        let rays: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let mut v = vec![T::zero(); n];
                v[i] = T::one();
                v
            })
            .collect();
        Self::from_parts(n, &[], &rays, &[], &rays)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.dim - self.equalities.len()
    }

    pub fn lineality(&self) -> &[Vec<T>] {
        &self.lineality
    }

    pub fn rays(&self) -> &[Vec<T>] {
        &self.rays
    }

    pub fn equalities(&self) -> &[Vec<T>] {
        &self.equalities
    }

    pub fn facets(&self) -> &[Vec<T>] {
        &self.facets
    }

    /// Generators: `±` lineality basis followed by the extreme rays, sorted.
    pub fn generators(&self) -> Vec<Vec<T>> {
        let mut g = with_negatives(&self.lineality, &self.rays);
        g.sort_by(|a, b| lex_cmp(a, b));
        g
    }

    /// Inequality normals: `±` equalities followed by facet normals, sorted.
    pub fn inequalities(&self) -> Vec<Vec<T>> {
        let mut h = with_negatives(&self.equalities, &self.facets);
        h.sort_by(|a, b| lex_cmp(a, b));
        h
    }

    pub fn dual(&self) -> Self {
        PolyhedralCone {
            dim: self.dim,
            lineality: self.equalities.clone(),
            rays: self.facets.clone(),
            equalities: self.lineality.clone(),
            facets: self.rays.clone(),
        }
    }

    /// `-C`.
    pub fn negated(&self) -> Self {
        let rays: Vec<Vec<T>> = self.rays.iter().map(|r| neg(r)).collect();
        let facets: Vec<Vec<T>> = self.facets.iter().map(|r| neg(r)).collect();
        Self::from_parts(self.dim, &self.lineality, &rays, &self.equalities, &facets)
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_solid(&self) -> bool {
        self.equalities.is_empty()
    }

    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.dim
            && self.equalities.iter().all(|e| dot_sign(e, x) == Ordering::Equal)
            && self.facets.iter().all(|a| dot_sign(a, x) != Ordering::Less)
    }

    /// Orthogonal basis of the linear span.
    pub fn span_basis(&self) -> Vec<Vec<T>> {
        orthogonal_basis(&self.generators())
    }

    /// Sum of the rays plus nothing from the lineality: a relative interior point.
    pub fn relative_interior_point(&self) -> Vec<T> {
        self.rays.iter().fold(vec![T::zero(); self.dim], |acc, r| crate::linalg::add(&acc, r))
    }

    /// Set equality; exact for rationals and up to tolerance for floats.
    pub fn same_set(&self, other: &Self) -> bool {
        fn eq_list<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> bool {
            a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| vec_approx_eq(x, y)))
        }
        if T::EXACT {
            return self == other;
        }
        self.dim == other.dim
            && self.lineality.len() == other.lineality.len()
            && rank(&[self.lineality.clone(), other.lineality.clone()].concat(), self.dim) == self.lineality.len()
            && self.equalities.len() == other.equalities.len()
            && rank(&[self.equalities.clone(), other.equalities.clone()].concat(), self.dim)
                == self.equalities.len()
            && eq_list(&self.rays, &other.rays)
            && eq_list(&self.facets, &other.facets)
    }

    /// Image under the linear map with the given square matrix (rows).
    pub fn linear_image(&self, m: &[Vec<T>]) -> Result<Self> {
        let gens: Vec<Vec<T>> = self
            .generators()
            .iter()
            .map(|g| m.iter().map(|row| crate::linalg::dot(row, g)).collect())
            .collect();
        Self::from_generators_in(self.dim, &gens)
    }

    /// `span C ∩ C*`, the dual taken inside the span.
    pub fn relative_dual(&self) -> Self {
        let mut rows = self.generators();
        for w in self.orthogonal_complement() {
            rows.push(neg(&w));
            rows.push(w);
        }
        Self::from_inequalities_in(self.dim, &rows).expect("dimensions agree")
    }

    /// Orthogonal complement of the span, as a basis (`span(C)^⊥`).
    pub fn orthogonal_complement(&self) -> Vec<Vec<T>> {
        nullspace(&self.generators(), self.dim)
    }

    /// Converts the stored representation to another scalar type without re-running the conversion.
    pub fn convert<U: Scalar>(&self) -> PolyhedralCone<U> {
        let c = |v: &Vec<Vec<T>>| v.iter().map(|x| convert_vec::<T, U>(x)).collect::<Vec<_>>();
        PolyhedralCone::from_parts(self.dim, &c(&self.lineality), &c(&self.rays), &c(&self.equalities), &c(&self.facets))
    }

    pub fn as_f64(&self) -> PolyhedralCone<f64> {
        self.convert()
    }
}
