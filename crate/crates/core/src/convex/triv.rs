//! Local trivialisations `ψ_F` carrying the relative dual of a nearby face `F` onto that of `E`.

use num_traits::Float;
use rand::Rng;

use super::gauge::{gauge, gauge_gradient};
use super::{sample_cone, slice_frame, ConvexBody, GaugeBody};
use crate::cone::PolyhedralCone;
use crate::error::{Error, Result};
use crate::linalg::{axpy, det, dot, norm_sq, orthogonal_basis, scale, sub};
use crate::scalar::Real;

/// `L = (R/r²)(1 + R(1 + R/r))`.
pub fn lipschitz_bound<T: Real>(r: T, big_r: T) -> Result<T> {
    if !(r > T::zero()) || big_r < r {
        return Err(Error::InvalidRadii { r: r.as_f64(), big_r: big_r.as_f64() });
    }
    Ok(big_r / (r * r) * (T::one() + big_r * (T::one() + big_r / r)))
}

fn projector<T: Real>(basis: &[Vec<T>], n: usize) -> Vec<Vec<T>> {
    let q = orthogonal_basis(basis);
    let mut p = vec![vec![T::zero(); n]; n];
    for v in &q {
        let s = norm_sq(v);
        for i in 0..n {
            for j in 0..n {
                p[i][j] = p[i][j] + v[i] * v[j] / s;
            }
        }
    }
    p
}

fn complement<T: Real>(p: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = p.len();
    (0..n).map(|i| (0..n).map(|j| if i == j { T::one() - p[i][j] } else { -p[i][j] }).collect()).collect()
}

fn mat_vec<T: Real>(m: &[Vec<T>], x: &[T]) -> Vec<T> {
    m.iter().map(|row| dot(row, x)).collect()
}

fn mat_mul<T: Real>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).fold(T::zero(), |s, (&x, br)| s + x * br[j])).collect())
        .collect()
}

fn mat_add<T: Real>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(&u, &v)| u + v).collect()).collect()
}

/// Rotation by `angle` in the `(i, j)` coordinate plane of `R^n`.
pub fn plane_rotation<T: Real>(n: usize, i: usize, j: usize, angle: T) -> Vec<Vec<T>> {
    let mut m: Vec<Vec<T>> = (0..n).map(|a| (0..n).map(|b| if a == b { T::one() } else { T::zero() }).collect()).collect();
    let (s, c) = angle.sin_cos();
    m[i][i] = c;
    m[i][j] = -s;
    m[j][i] = s;
    m[j][j] = c;
    m
}

/// Relative margin of `y` in `cone`: the smallest normalised facet value, lowered by any
/// violation of the equalities. Nonnegative exactly on the cone.
pub fn membership_margin<T: Real>(cone: &PolyhedralCone<T>, y: &[T]) -> T {
    let ny = norm_sq(y).sqrt();
    if ny == T::zero() {
        return T::zero();
    }
    let facet = cone
        .facets()
        .iter()
        .map(|g| dot(g, y) / (norm_sq(g).sqrt() * ny))
        .fold(T::infinity(), |m, v| m.min(v));
    let eq = cone
        .equalities()
        .iter()
        .map(|e| Float::abs(dot(e, y)) / (norm_sq(e).sqrt() * ny))
        .fold(T::zero(), |m, v| m.max(v));
    let facet = if facet.is_infinite() { T::zero() } else { facet };
    facet.min(-eq)
}

/// `ψ(x) = c·(B φ(Bᵀu) + <u, ξ0> ξ0 + p_{E⊥} p_{F⊥} x)` with `u = p_E p_F x` and
/// `φ(w) = (μ_F'/μ_E)(w)·w`, where `F' = p_E(F^⊛)` and the gauges are those of the slices
/// `H ∩ E^⊛ − ξ0`, `H ∩ F' − ξ0` in the frame `B` of `ξ0^⊥ ∩ span E`.
#[derive(Clone, Debug)]
pub struct Trivialization<T: Real> {
    n: usize,
    k: usize,
    xi0: Vec<T>,
    e_dual: PolyhedralCone<T>,
    f_dual: PolyhedralCone<T>,
    f_proj: PolyhedralCone<T>,
    frame: Vec<Vec<T>>,
    e_body: ConvexBody<T>,
    f_body: ConvexBody<T>,
    p_matrix: Vec<Vec<T>>,
    p_e: Vec<Vec<T>>,
    p_f: Vec<Vec<T>>,
    p_e_perp: Vec<Vec<T>>,
    p_f_perp: Vec<Vec<T>>,
    r: T,
    big_r: T,
    scale: T,
}

/// Trivialisation at `E` evaluated at the nearby face `F`; both are given as cones of the same
/// dimension, `ξ0` must lie inside `E` and `E^⊛` (relative interiors) and inside `p_E(F^⊛)`.
pub fn build_trivialization<T: Real>(
    e: &PolyhedralCone<T>,
    f: &PolyhedralCone<T>,
    xi0: &[T],
) -> Result<Trivialization<T>> {
    let n = e.ambient_dim();
    if f.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: f.ambient_dim() });
    }
    if e.dim() != f.dim() {
        return Err(Error::DifferentLevels(e.dim(), f.dim()));
    }
    let k = e.dim();
    let p_e = projector(&e.span_basis(), n);
    let p_f = projector(&f.span_basis(), n);
    let p_e_perp = complement(&p_e);
    let p_f_perp = complement(&p_f);
    let e_dual = e.relative_dual();
    let f_dual = f.relative_dual();
    let f_proj = f_dual.linear_image(&p_e)?;
    if f_proj.dim() != k {
        return Err(Error::BasePointNotAdmissible("p_E does not map span F onto span E".into()));
    }
    let len = norm_sq(xi0).sqrt();
    if len <= T::tolerance() {
        return Err(Error::BasePointNotAdmissible("base point is zero".into()));
    }
    let xi0: Vec<T> = scale(xi0, &(T::one() / len));
    if e.facets().iter().any(|g| dot(g, &xi0) <= T::of_f64(1e-12)) || !e.is_pointed() {
        return Err(Error::BasePointNotAdmissible("base point not interior to E".into()));
    }
    let frame = slice_frame(&e_dual, &xi0);
    let e_gauge = GaugeBody::with_frame(&e_dual, &xi0, Some(frame.clone()))?;
    let f_gauge = GaugeBody::with_frame(&f_proj, &xi0, Some(frame.clone()))?;
    let r = e_gauge.local().inradius_at_origin().min(f_gauge.local().inradius_at_origin());
    let big_r = e_gauge.local().circumradius_at_origin().max(f_gauge.local().circumradius_at_origin());
    let p_matrix = mat_add(&mat_mul(&p_e, &p_f), &mat_mul(&p_e_perp, &p_f_perp));
    Ok(Trivialization {
        n,
        k,
        xi0,
        e_dual,
        f_dual,
        f_proj,
        frame,
        e_body: ConvexBody::Polytope(e_gauge.local().clone()),
        f_body: ConvexBody::Polytope(f_gauge.local().clone()),
        p_matrix,
        p_e,
        p_f,
        p_e_perp,
        p_f_perp,
        r,
        big_r,
        scale: T::one(),
    })
}

impl<T: Real> Trivialization<T> {
    pub fn xi0(&self) -> &[T] {
        &self.xi0
    }

    /// Inner and outer slice radii `(r, R)` about `ξ0`, over both slices.
    pub fn radii(&self) -> (T, T) {
        (self.r, self.big_r)
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    /// `E^⊛`, the target.
    pub fn target(&self) -> &PolyhedralCone<T> {
        &self.e_dual
    }

    /// `F^⊛`, the source.
    pub fn source(&self) -> &PolyhedralCone<T> {
        &self.f_dual
    }

    pub fn projected_source(&self) -> &PolyhedralCone<T> {
        &self.f_proj
    }

    pub fn lipschitz_bound(&self) -> Result<T> {
        lipschitz_bound(self.r, self.big_r)
    }

    /// `√2·max(L, ‖ξ0‖)`, the bound for `ψ` itself.
    pub fn psi_lipschitz_bound(&self) -> Result<T> {
        Ok(T::of_f64(2.0).sqrt() * self.lipschitz_bound()?.max(T::one()))
    }

    fn local(&self, u: &[T]) -> Vec<T> {
        self.frame.iter().map(|b| dot(b, u)).collect()
    }

    fn ambient(&self, w: &[T]) -> Vec<T> {
        self.frame.iter().zip(w).fold(vec![T::zero(); self.n], |acc, (b, &c)| axpy(&acc, &c, b))
    }

    /// `μ_F'(w)/μ_E(w)` in frame coordinates (1 at the origin).
    pub fn ratio(&self, w: &[T]) -> Result<T> {
        if self.frame.is_empty() || norm_sq(w) == T::zero() {
            return Ok(T::one());
        }
        Ok(gauge(&self.f_body, w)? / gauge(&self.e_body, w)?)
    }

    /// The scalar `λ` at `x`.
    pub fn lambda(&self, x: &[T]) -> Result<T> {
        let u = mat_vec(&self.p_e, &mat_vec(&self.p_f, x));
        self.ratio(&self.local(&u))
    }

    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        let u = mat_vec(&self.p_e, &mat_vec(&self.p_f, x));
        let y_perp = mat_vec(&self.p_e_perp, &mat_vec(&self.p_f_perp, x));
        let rho = dot(&u, &self.xi0);
        let w = self.local(&u);
        let lam = self.ratio(&w)?;
        let phi = self.ambient(&scale(&w, &lam));
        let out = axpy(&axpy(&phi, &rho, &self.xi0), &T::one(), &y_perp);
        Ok(scale(&out, &self.scale))
    }

    /// `ψ'(x) = c·(B Φ Bᵀ + ξ0ξ0ᵀ + p_{E⊥})·(p_E p_F + p_{E⊥} p_{F⊥})` with
    /// `Φ = λ(I + w ϱᵀ)`, `ϱ = ∇μ_F'/μ_F' − ∇μ_E/μ_E`.
    pub fn jacobian(&self, x: &[T]) -> Result<Vec<Vec<T>>> {
        let u = mat_vec(&self.p_e, &mat_vec(&self.p_f, x));
        let w = self.local(&u);
        let m = w.len();
        let mut phi: Vec<Vec<T>> =
            (0..m).map(|i| (0..m).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
        if m > 0 {
            if norm_sq(&w) == T::zero() {
                return Err(Error::NotDifferentiable { generators: Vec::new() });
            }
            let mf = gauge(&self.f_body, &w)?;
            let me = gauge(&self.e_body, &w)?;
            let lam = mf / me;
            let gf = gauge_gradient(&self.f_body, &w)?;
            let ge = gauge_gradient(&self.e_body, &w)?;
            let varrho = sub(&scale(&gf, &(T::one() / mf)), &scale(&ge, &(T::one() / me)));
            for i in 0..m {
                for j in 0..m {
                    phi[i][j] = lam * (phi[i][j] + w[i] * varrho[j]);
                }
            }
        }
        let n = self.n;
        let mut inner = self.p_e_perp.clone();
        for a in 0..n {
            for b in 0..n {
                let mut s = self.xi0[a] * self.xi0[b];
                for i in 0..m {
                    for j in 0..m {
                        s = s + self.frame[i][a] * phi[i][j] * self.frame[j][b];
                    }
                }
                inner[a][b] = inner[a][b] + s;
            }
        }
        Ok(mat_mul(&inner, &self.p_matrix).into_iter().map(|row| scale(&row, &self.scale)).collect())
    }

    /// `det ψ'(x)`.
    pub fn det(&self, x: &[T]) -> Result<T> {
        Ok(det(&self.jacobian(x)?))
    }

    /// Closed form `c^n λ^{k−1} det P`, which is `λ^{n−1}` for solid faces and `c = 1`.
    pub fn det_formula(&self, x: &[T]) -> Result<T> {
        let lam = self.lambda(x)?;
        let k1 = self.k.saturating_sub(1) as i32;
        Ok(self.scale.powi(self.n as i32) * lam.powi(k1) * det(&self.p_matrix))
    }

    /// Random points of `F^⊛`.
    pub fn sample_source<R: Rng>(&self, rng: &mut R, count: usize) -> Vec<Vec<T>> {
        sample_cone(&self.f_dual, rng, count)
    }

    /// Rescales globally so the geometric mean of `det ψ'` over `samples` is 1; returns the
    /// normalised map and the range of its determinant over the samples.
    pub fn normalised(&self, samples: &[Vec<T>]) -> Result<(Self, (T, T))> {
        let mut logs = Vec::with_capacity(samples.len());
        for x in samples {
            let d = self.det(x)?;
            if d <= T::zero() {
                return Err(Error::InvalidInput("nonpositive determinant".into()));
            }
            logs.push(d.ln());
        }
        if logs.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mean = logs.iter().fold(T::zero(), |a, &b| a + b) / T::of_f64(logs.len() as f64);
        let mut out = self.clone();
        out.scale = self.scale * (-mean / T::of_f64(self.n as f64)).exp();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for x in samples {
            let d = out.det(x)?;
            lo = lo.min(d);
            hi = hi.max(d);
        }
        Ok((out, (lo, hi)))
    }

    /// Largest `‖ψ(x) − ψ(y)‖/‖x − y‖` over random pairs in `[−1, 1]^n`.
    pub fn empirical_lipschitz<R: Rng>(&self, rng: &mut R, pairs: usize) -> Result<T> {
        let mut best = T::zero();
        for _ in 0..pairs {
            let x: Vec<T> = (0..self.n).map(|_| T::of_f64(rng.random_range(-1.0..1.0))).collect();
            let y: Vec<T> = (0..self.n).map(|_| T::of_f64(rng.random_range(-1.0..1.0))).collect();
            let d = norm_sq(&sub(&x, &y)).sqrt();
            if d <= T::tolerance() {
                continue;
            }
            let q = norm_sq(&sub(&self.apply(&x)?, &self.apply(&y)?)).sqrt() / d;
            best = best.max(q);
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lipschitz_examples() {
        assert_eq!(lipschitz_bound(1.0, 1.0).unwrap(), 3.0);
        assert_eq!(lipschitz_bound(1.0, 2.0).unwrap(), 14.0);
        assert!(lipschitz_bound(0.0, 1.0).is_err());
        assert!(lipschitz_bound(2.0, 1.0).is_err());
    }

    #[test]
    fn identity_when_faces_agree() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let q = PolyhedralCone::<f64>::orthant(2);
        let t = build_trivialization(&q, &q, &[s, s]).unwrap();
        for x in [[1.0, 2.0], [-0.3, 0.7], [0.5, -4.0]] {
            let y = t.apply(&x).unwrap();
            assert!((y[0] - x[0]).abs() < 1e-12 && (y[1] - x[1]).abs() < 1e-12);
            assert!((t.det(&x).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rotated_quarter_plane_maps_into_target() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let q = PolyhedralCone::<f64>::orthant(2);
        let f = q.linear_image(&plane_rotation(2, 0, 1, 0.1)).unwrap();
        let t = build_trivialization(&q, &f, &[s, s]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for x in t.sample_source(&mut rng, 200) {
            let y = t.apply(&x).unwrap();
            assert!(membership_margin(t.target(), &y) > -1e-8);
            let d = t.det(&x).unwrap();
            let lam = t.lambda(&x).unwrap();
            assert!((d - lam).abs() < 1e-9 * lam);
        }
        for r in f.relative_dual().rays() {
            let y = t.apply(r).unwrap();
            assert!(membership_margin(t.target(), &y).abs() < 1e-9);
        }
    }

    #[test]
    fn different_levels_rejected() {
        let q = PolyhedralCone::<f64>::orthant(2);
        let ray = PolyhedralCone::from_generators(&[vec![1.0, 0.0]]).unwrap();
        assert_eq!(build_trivialization(&q, &ray, &[1.0, 1.0]).unwrap_err(), Error::DifferentLevels(2, 1));
    }
}
