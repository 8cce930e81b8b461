//! Winding numbers of sampled closed curves and of compactified line symbols.

use num_complex::Complex64;

use super::grid::SymbolGrid;
use crate::error::{Error, Result};

/// Curves passing closer than this to the origin have no winding number.
pub const WINDING_TOL: f64 = 1e-8;

/// Total phase increment over `2π` of the closed polygon through the samples
/// (counterclockwise positive). Consecutive samples must be less than half a turn apart.
pub fn winding_number(curve: &[Complex64]) -> Result<i64> {
    if curve.is_empty() {
        return Err(Error::EmptyInput);
    }
    let min = curve.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if !(min > WINDING_TOL) {
        return Err(Error::WindingUndefined(min));
    }
    let n = curve.len();
    let total: f64 = (0..n).map(|k| (curve[(k + 1) % n] / curve[k]).arg()).sum();
    Ok((total / (2.0 * std::f64::consts::PI)).round() as i64)
}

/// `1 + f̂` along the dual grid with `ξ` decreasing, closed through the value `1` at infinity.
pub fn symbol_curve(s: &SymbolGrid) -> Result<Vec<Complex64>> {
    if s.dim() != 1 {
        return Err(Error::InvalidGrid("winding needs a one-dimensional symbol".into()));
    }
    let mut curve: Vec<Complex64> = s.sorted_frequencies().into_iter().rev().map(|j| s.fhat()[j] + 1.0).collect();
    curve.push(Complex64::new(1.0, 0.0));
    Ok(curve)
}

/// Winding number of the compactified symbol curve; with this orientation
/// `index(1 + W_f) = −winding`.
pub fn symbol_winding(s: &SymbolGrid) -> Result<i64> {
    winding_number(&symbol_curve(s)?)
}
