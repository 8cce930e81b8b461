use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use super::PolyhedralCone;
use crate::error::{Error, Result};
use crate::linalg::{dot_sign, neg, nullspace, rank};
use crate::scalar::Scalar;

/// A face `C ∩ {x : <a_i, x> = 0, i ∈ active}` of a parent cone.
#[derive(Clone, Debug)]
pub struct Face<T: Scalar> {
    parent: Arc<PolyhedralCone<T>>,
    active: Vec<usize>,
    rays: Vec<usize>,
    generators: Vec<Vec<T>>,
    dim: usize,
}

impl<T: Scalar> PartialEq for Face<T> {
    fn eq(&self, other: &Self) -> bool {
        self.active == other.active && self.rays == other.rays && *self.parent == *other.parent
    }
}

impl<T: Scalar> Face<T> {
    /// Closes the active set: the face cut out by `active`, with every facet vanishing on it.
    pub fn from_active(parent: Arc<PolyhedralCone<T>>, active: &[usize]) -> Self {
        let rays: Vec<usize> = (0..parent.rays().len())
            .filter(|&r| active.iter().all(|&i| dot_sign(&parent.facets()[i], &parent.rays()[r]) == Ordering::Equal))
            .collect();
        Self::from_rays(parent, &rays)
    }

    fn from_rays(parent: Arc<PolyhedralCone<T>>, rays: &[usize]) -> Self {
        let active: Vec<usize> = (0..parent.facets().len())
            .filter(|&i| rays.iter().all(|&r| dot_sign(&parent.facets()[i], &parent.rays()[r]) == Ordering::Equal))
            .collect();
        let mut generators: Vec<Vec<T>> = Vec::new();
        for l in parent.lineality() {
            generators.push(l.clone());
            generators.push(neg(l));
        }
        generators.extend(rays.iter().map(|&r| parent.rays()[r].clone()));
        let dim = rank(&generators, parent.ambient_dim());
        Face { parent, active, rays: rays.to_vec(), generators, dim }
    }

    pub fn parent(&self) -> &PolyhedralCone<T> {
        &self.parent
    }

    pub fn active_set(&self) -> &[usize] {
        &self.active
    }

    /// Indices of the parent's extreme rays lying in the face.
    pub fn ray_indices(&self) -> &[usize] {
        &self.rays
    }

    pub fn generators(&self) -> &[Vec<T>] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.parent.ambient_dim()
    }

    pub fn as_cone(&self) -> PolyhedralCone<T> {
        PolyhedralCone::from_generators_in(self.ambient_dim(), &self.generators).expect("dimensions agree")
    }

    /// Basis of `F^⊥`.
    pub fn orthogonal_complement(&self) -> Vec<Vec<T>> {
        nullspace(&self.generators, self.ambient_dim())
    }

    pub fn is_subface_of(&self, other: &Face<T>) -> bool {
        self.rays.iter().all(|r| other.rays.contains(r)) && self.dim <= other.dim
    }

    pub fn contains(&self, x: &[T]) -> bool {
        self.parent.contains(x) && self.active.iter().all(|&i| dot_sign(&self.parent.facets()[i], x) == Ordering::Equal)
    }
}

/// All faces of a pointed cone ordered by `(dim, ray set)`, with the covering relation.
#[derive(Clone, Debug)]
pub struct FaceLattice<T: Scalar> {
    cone: Arc<PolyhedralCone<T>>,
    faces: Vec<Face<T>>,
    covers: Vec<(usize, usize)>,
}

impl<T: Scalar> FaceLattice<T> {
    pub fn cone(&self) -> &PolyhedralCone<T> {
        &self.cone
    }

    pub fn faces(&self) -> &[Face<T>] {
        &self.faces
    }

    /// Covering pairs `(lower, upper)` as face indices.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn dims(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.dim).collect()
    }

    /// Distinct face dimensions, increasing.
    pub fn distinct_dims(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.dim).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    /// Index of the face with exactly the given ray set.
    pub fn index_of_rays(&self, rays: &[usize]) -> Option<usize> {
        self.faces.iter().position(|f| f.rays == rays)
    }

    pub fn index_of(&self, face: &Face<T>) -> Option<usize> {
        self.index_of_rays(&face.rays)
    }

    /// Meet of two faces (intersection), which is again a face.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        let rays: Vec<usize> = self.faces[a].rays.iter().filter(|r| self.faces[b].rays.contains(r)).copied().collect();
        self.index_of_rays(&rays).expect("intersection of faces is a face")
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.faces[a].is_subface_of(&self.faces[b])
    }
}

const MAX_RAYS: usize = 128;

fn ray_mask(rays: &[usize]) -> u128 {
    rays.iter().fold(0u128, |m, &r| m | (1u128 << r))
}

pub fn face_lattice<T: Scalar>(cone: &PolyhedralCone<T>) -> Result<FaceLattice<T>> {
    if !cone.is_pointed() {
        return Err(Error::NotPointed);
    }
    if cone.rays().len() > MAX_RAYS {
        return Err(Error::TooLarge(format!("{} extreme rays", cone.rays().len())));
    }
    let parent = Arc::new(cone.clone());
    let m = parent.facets().len();
    // incidence: facet i contains ray r
    let incidence: Vec<u128> = (0..m)
        .map(|i| {
            let rs: Vec<usize> = (0..parent.rays().len())
                .filter(|&r| dot_sign(&parent.facets()[i], &parent.rays()[r]) == Ordering::Equal)
                .collect();
            ray_mask(&rs)
        })
        .collect();
    let all: u128 = ray_mask(&(0..parent.rays().len()).collect::<Vec<_>>());
    let mut seen: BTreeSet<u128> = BTreeSet::new();
    let mut queue: VecDeque<u128> = VecDeque::new();
    seen.insert(all);
    queue.push_back(all);
    while let Some(mask) = queue.pop_front() {
        for inc in &incidence {
            let next = mask & inc;
            if next != mask && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    let mut faces: Vec<Face<T>> = seen
        .into_iter()
        .map(|mask| {
            let rays: Vec<usize> = (0..parent.rays().len()).filter(|&r| mask >> r & 1 == 1).collect();
            Face::from_rays(parent.clone(), &rays)
        })
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.rays.cmp(&b.rays)));
    let masks: Vec<u128> = faces.iter().map(|f| ray_mask(&f.rays)).collect();
    let mut covers = Vec::new();
    for lo in 0..faces.len() {
        for hi in 0..faces.len() {
            let strict = masks[lo] & masks[hi] == masks[lo] && masks[lo] != masks[hi];
            if !strict {
                continue;
            }
            let between = (0..faces.len()).any(|k| {
                k != lo
                    && k != hi
                    && masks[lo] & masks[k] == masks[lo]
                    && masks[k] & masks[hi] == masks[k]
                    && masks[k] != masks[lo]
                    && masks[k] != masks[hi]
            });
            if !between {
                covers.push((lo, hi));
            }
        }
    }
    Ok(FaceLattice { cone: parent, faces, covers })
}

/// `F = C ∩ (C* ∩ x^⊥)^⊥`: the facets of `C` vanishing at `x` cut out the face.
pub fn exposed_face<T: Scalar>(cone: &PolyhedralCone<T>, x: &[T]) -> Result<Face<T>> {
    if x.len() != cone.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: cone.ambient_dim(), found: x.len() });
    }
    if !cone.contains(x) {
        return Err(Error::NotInCone);
    }
    let active: Vec<usize> = (0..cone.facets().len())
        .filter(|&i| dot_sign(&cone.facets()[i], x) == Ordering::Equal)
        .collect();
    Ok(Face::from_active(Arc::new(cone.clone()), &active))
}

/// `F̌ = F^⊥ ∩ Ω*` as a face of the dual cone.
pub fn dual_face<T: Scalar>(face: &Face<T>) -> Face<T> {
    let dual = Arc::new(face.parent().dual());
    let rays: Vec<usize> = (0..dual.rays().len())
        .filter(|&i| face.generators.iter().all(|g| dot_sign(&dual.rays()[i], g) == Ordering::Equal))
        .collect();
    Face::from_rays(dual, &rays)
}

/// `F^⊛ = span F ∩ F*`.
pub fn relative_dual<T: Scalar>(face: &Face<T>) -> PolyhedralCone<T> {
    face.as_cone().relative_dual()
}
