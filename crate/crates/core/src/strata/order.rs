use crate::cone::{dual_face, exposed_face, relative_dual, Face, PolyhedralCone};
use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, orthogonal_basis, project_orthogonal, sub};
use crate::scalar::Scalar;

use super::Strata;

/// A compactification point `x − F*`, stored as `(F, x)` with `F` a face of `Ω*` and `x ∈ F^⊛`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderPoint<T: Scalar> {
    pub face: Face<T>,
    pub point: Vec<T>,
}

/// The set `apex − cone`.
#[derive(Clone, Debug, PartialEq)]
pub struct TranslatedCone<T: Scalar> {
    pub apex: Vec<T>,
    pub cone: PolyhedralCone<T>,
}

impl<T: Scalar> TranslatedCone<T> {
    pub fn contains(&self, y: &[T]) -> bool {
        self.cone.contains(&sub(&self.apex, y))
    }
}

pub fn order_point<T: Scalar>(face: &Face<T>, x: &[T]) -> Result<OrderPoint<T>> {
    if x.len() != face.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: face.ambient_dim(), found: x.len() });
    }
    if !relative_dual(face).contains(x) {
        return Err(Error::NotOrderPoint("point does not lie in the relative dual of the face".into()));
    }
    Ok(OrderPoint { face: face.clone(), point: x.to_vec() })
}

impl<T: Scalar> OrderPoint<T> {
    /// The set `x − F*`.
    pub fn as_set(&self) -> TranslatedCone<T> {
        TranslatedCone { apex: self.point.clone(), cone: self.face.as_cone().dual() }
    }
}

/// Recovers `(F, x)` from `A = apex − K`: the support functional of `A` is finite exactly on
/// `K*`, which must be a face of `Ω*`, and `x` is the projection of the apex onto its span.
pub fn recover_face_point<T: Scalar>(s: &Strata<T>, set: &TranslatedCone<T>) -> Result<OrderPoint<T>> {
    let n = s.cone().ambient_dim();
    if set.apex.len() != n || set.cone.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: set.apex.len() });
    }
    let domain = set.cone.dual();
    let face = s
        .lattice()
        .faces()
        .iter()
        .find(|f| f.as_cone() == domain)
        .ok_or_else(|| Error::NotOrderPoint("support domain is not a face of the dual cone".into()))?;
    let q = orthogonal_basis(face.generators());
    let x = project_orthogonal(&set.apex, &q);
    // σ_A(e) = <e, apex> on span F, so x reproduces it
    debug_assert!(face.generators().iter().all(|e| dot(e, &x) == dot(e, &set.apex) || !T::EXACT));
    order_point(face, &x)
}

/// `lim_{λ→∞} (λx − Ω) = −F̌*` with `F` the exposed face of `Ω` generated by `x`.
pub fn ray_limit<T: Scalar>(omega: &PolyhedralCone<T>, x: &[T]) -> Result<PolyhedralCone<T>> {
    if x.len() != omega.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: omega.ambient_dim(), found: x.len() });
    }
    if is_zero_vec(x) {
        return Err(Error::ZeroVector);
    }
    let f = exposed_face(omega, x)?;
    Ok(dual_face(&f).as_cone().dual().negated())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational_vec, Rational};
    use crate::strata::strata;

    #[test]
    fn interior_translate() {
        let omega = PolyhedralCone::<Rational>::orthant(2);
        let s = strata(&omega).unwrap();
        let set = TranslatedCone { apex: rational_vec(&[1, 2]), cone: omega.dual() };
        let p = recover_face_point(&s, &set).unwrap();
        assert_eq!(p.face.dim(), 2);
        assert_eq!(p.point, rational_vec(&[1, 2]));
    }

    #[test]
    fn axis_translate() {
        let omega = PolyhedralCone::<Rational>::orthant(2);
        let s = strata(&omega).unwrap();
        let ray = PolyhedralCone::from_generators(&[rational_vec(&[1, 0])]).unwrap();
        let set = TranslatedCone { apex: rational_vec(&[3, 0]), cone: ray.dual() };
        let p = recover_face_point(&s, &set).unwrap();
        assert_eq!(p.face.generators(), &[rational_vec(&[1, 0])]);
        assert_eq!(p.point, rational_vec(&[3, 0]));
        // the apex may move along F^⊥ without changing the set
        let shifted = TranslatedCone { apex: rational_vec(&[3, 5]), cone: ray.dual() };
        assert_eq!(recover_face_point(&s, &shifted).unwrap(), p);
    }

    #[test]
    fn not_an_order_point() {
        let omega = PolyhedralCone::<Rational>::orthant(2);
        let s = strata(&omega).unwrap();
        let skew = PolyhedralCone::from_generators(&[rational_vec(&[1, 2]), rational_vec(&[2, 1])]).unwrap();
        let set = TranslatedCone { apex: rational_vec(&[0, 0]), cone: skew };
        assert!(matches!(recover_face_point(&s, &set), Err(Error::NotOrderPoint(_))));
        let ray = PolyhedralCone::from_generators(&[rational_vec(&[1, 0])]).unwrap();
        let bad = TranslatedCone { apex: rational_vec(&[-1, 0]), cone: ray.dual() };
        assert!(matches!(recover_face_point(&s, &bad), Err(Error::NotOrderPoint(_))));
    }

    #[test]
    fn ray_limits_of_quarter_plane() {
        let omega = PolyhedralCone::<Rational>::orthant(2);
        assert_eq!(ray_limit(&omega, &rational_vec(&[1, 1])).unwrap(), PolyhedralCone::full_space(2));
        let half = ray_limit(&omega, &rational_vec(&[1, 0])).unwrap();
        assert_eq!(half, PolyhedralCone::from_inequalities(&[rational_vec(&[0, -1])]).unwrap());
        assert_eq!(ray_limit(&omega, &rational_vec(&[0, 0])).unwrap_err(), Error::ZeroVector);
        let line = PolyhedralCone::<Rational>::orthant(1);
        assert_eq!(ray_limit(&line, &rational_vec(&[1])).unwrap(), PolyhedralCone::full_space(1));
    }
}
