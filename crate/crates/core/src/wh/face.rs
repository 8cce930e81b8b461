//! Face symbols `g(t) = ∫_{F^⊥} f(t s + w) dw` of quarter-plane kernels, their twisted
//! versions and the representations `L^{F,y}`.

use num_complex::Complex64;

use super::grid::SymbolGrid;
use crate::cone::Face;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Integer axis directions `(s, s⊥)` for an axis-aligned unit vector.
fn axes(s: &[f64]) -> Result<([i64; 2], [i64; 2])> {
    let tol = 1e-12;
    let near = |a: f64, b: f64| (a - b).abs() < tol;
    match s {
        [a, b] if near(*a, 1.0) && near(*b, 0.0) => Ok(([1, 0], [0, 1])),
        [a, b] if near(*a, -1.0) && near(*b, 0.0) => Ok(([-1, 0], [0, 1])),
        [a, b] if near(*a, 0.0) && near(*b, 1.0) => Ok(([0, 1], [1, 0])),
        [a, b] if near(*a, 0.0) && near(*b, -1.0) => Ok(([0, -1], [1, 0])),
        _ => Err(Error::UnsupportedFace("face must be an axis ray".into())),
    }
}

fn sample(s: &SymbolGrid, dir: [i64; 2], perp: [i64; 2], a: i64, b: i64) -> Complex64 {
    s.kernel_at(&[a * dir[0] + b * perp[0], a * dir[1] + b * perp[1]])
}

/// `g_y(t) = ∫ f(t s + u s⊥) e^{2πi u y} du`, so that `ĝ_y(ξ) = f̂(ξ s − y s⊥)`; `s⊥` is the
/// other coordinate axis, positively oriented.
pub fn twisted_face_symbol(s: &SymbolGrid, dir: &[f64], y: f64) -> Result<SymbolGrid> {
    if s.dim() != 2 {
        return Err(Error::InvalidGrid("face symbols need a two-dimensional grid".into()));
    }
    let (d, p) = axes(dir)?;
    let m = s.points_per_axis() as i64;
    let h = s.h();
    let half = m / 2;
    let twist: Vec<Complex64> =
        (-half..half).map(|b| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * b as f64 * h * y)).collect();
    let samples: Vec<Complex64> = (-half..half)
        .map(|a| (-half..half).zip(&twist).map(|(b, w)| sample(s, d, p, a, b) * w).sum::<Complex64>() * h)
        .collect();
    SymbolGrid::from_samples(samples, 1, h, s.window())
}

/// `r_F` on kernels: integrate out `F^⊥`.
pub fn face_symbol(s: &SymbolGrid, dir: &[f64]) -> Result<SymbolGrid> {
    twisted_face_symbol(s, dir, 0.0)
}

/// [`face_symbol`] for a one-dimensional face of the quarter plane's dual.
pub fn face_symbol_of<T: Scalar>(s: &SymbolGrid, face: &Face<T>) -> Result<SymbolGrid> {
    face_symbol(s, &face_direction(face)?)
}

/// Unit spanning vector of a ray face.
pub fn face_direction<T: Scalar>(face: &Face<T>) -> Result<Vec<f64>> {
    let gens = face.generators();
    if face.dim() != 1 || gens.len() != 1 {
        return Err(Error::UnsupportedFace("face must be an axis ray".into()));
    }
    let v: Vec<f64> = gens[0].iter().map(|x| x.as_f64()).collect();
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(v.iter().map(|x| x / n).collect())
}

/// `L^{F,y} h(v) = ∫_{F^⊥}∫_{F^⊛} f(v − w1 − w2) e^{−2πi<w2, y>} h(w1) dw1 dw2` by quadrature,
/// for `h` sampled at `v_j = j h` on the half-line `F^⊛`.
pub fn rep_l(s: &SymbolGrid, dir: &[f64], y: f64, h_in: &[Complex64]) -> Result<Vec<Complex64>> {
    if s.dim() != 2 {
        return Err(Error::InvalidGrid("face symbols need a two-dimensional grid".into()));
    }
    let (d, p) = axes(dir)?;
    let n = h_in.len() as i64;
    let h = s.h();
    if (n as f64 - 1.0) * h > s.window() + 1e-12 {
        return Err(Error::InvalidGrid("truncation exceeds the window".into()));
    }
    let half = s.points_per_axis() as i64 / 2;
    let twist: Vec<Complex64> =
        (-half..half).map(|k| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 * h * y)).collect();
    // the inner integral over F^⊥ only depends on the offset along F^⊛
    let inner: Vec<Complex64> = (-(n - 1)..n)
        .map(|o| (-half..half).zip(&twist).map(|(k, w)| sample(s, d, p, o, -k) * w).sum())
        .collect();
    let out = (0..n)
        .map(|i| (0..n).map(|j| inner[(i - j + n - 1) as usize] * h_in[j as usize]).sum::<Complex64>() * h * h)
        .collect();
    Ok(out)
}
