//! Sampled kernels on `[−T, T)^d` and their discrete Fourier transforms.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Kernels must fall below this outside `[−T/2, T/2]^d`.
pub const DECAY_TOL: f64 = 1e-8;
/// Relative discrete Plancherel tolerance.
pub const PLANCHEREL_TOL: f64 = 1e-10;

/// Kernel samples `f(x)` at `x_k = −T + k h` (`k < m`, `m = 2T/h`) per axis, row-major, and
/// `f̂(ξ) ≈ h^d Σ f(x_k) e^{−2πi<x_k, ξ>}` at `ξ_j = j/(m h)` in FFT order.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolGrid {
    dim: usize,
    h: f64,
    t: f64,
    m: usize,
    kernel: Vec<Complex64>,
    fhat: Vec<Complex64>,
}

fn check_grid(dim: usize, h: f64, t: f64) -> Result<usize> {
    if !(dim == 1 || dim == 2) || !(h > 0.0) || !(t >= 10.0 * h) || !t.is_finite() {
        return Err(Error::InvalidGrid("grid geometry".into()));
    }
    let half = t / h;
    if (half - half.round()).abs() > 1e-9 * half.max(1.0) {
        return Err(Error::InvalidGrid("grid geometry".into()));
    }
    Ok(2 * half.round() as usize)
}

fn fft_axes(data: &mut [Complex64], dim: usize, m: usize, inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse { planner.plan_fft_inverse(m) } else { planner.plan_fft_forward(m) };
    if dim == 1 {
        fft.process(data);
        return;
    }
    for row in data.chunks_mut(m) {
        fft.process(row);
    }
    let mut col = vec![Complex64::new(0.0, 0.0); m];
    for j in 0..m {
        for i in 0..m {
            col[i] = data[i * m + j];
        }
        fft.process(&mut col);
        for i in 0..m {
            data[i * m + j] = col[i];
        }
    }
}

/// `(−1)^j` for the signed frequency index: the phase `e^{2πiTξ_j}` of the shifted origin.
fn parity(j: usize, m: usize) -> f64 {
    let s = signed(j, m);
    if s.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn signed(j: usize, m: usize) -> i64 {
    if j < m / 2 {
        j as i64
    } else {
        j as i64 - m as i64
    }
}

impl SymbolGrid {
    /// Samples `f` and checks window decay and Plancherel consistency.
    pub fn from_fn(f: impl Fn(&[f64]) -> Complex64, dim: usize, h: f64, t: f64) -> Result<Self> {
        let m = check_grid(dim, h, t)?;
        let total = m.pow(dim as u32);
        let x = |i: usize| -t + i as f64 * h;
        let kernel: Vec<Complex64> = (0..total)
            .map(|k| if dim == 1 { f(&[x(k)]) } else { f(&[x(k / m), x(k % m)]) })
            .collect();
        let grid = Self::from_samples(kernel, dim, h, t)?;
        grid.check_decay()?;
        Ok(grid)
    }

    /// From kernel samples; no decay check.
    pub fn from_samples(kernel: Vec<Complex64>, dim: usize, h: f64, t: f64) -> Result<Self> {
        let m = check_grid(dim, h, t)?;
        if kernel.len() != m.pow(dim as u32) {
            return Err(Error::InvalidGrid("grid geometry".into()));
        }
        let mut fhat = kernel.clone();
        fft_axes(&mut fhat, dim, m, false);
        let hd = h.powi(dim as i32);
        for (k, v) in fhat.iter_mut().enumerate() {
            let p = if dim == 1 { parity(k, m) } else { parity(k / m, m) * parity(k % m, m) };
            *v *= hd * p;
        }
        let grid = SymbolGrid { dim, h, t, m, kernel, fhat };
        grid.check_plancherel()?;
        Ok(grid)
    }

    /// From transform samples in FFT order (inverse DFT).
    pub fn from_fhat(fhat: Vec<Complex64>, dim: usize, h: f64, t: f64) -> Result<Self> {
        let m = check_grid(dim, h, t)?;
        if fhat.len() != m.pow(dim as u32) {
            return Err(Error::InvalidGrid("grid geometry".into()));
        }
        let mut kernel = fhat.clone();
        let hd = h.powi(dim as i32);
        for (k, v) in kernel.iter_mut().enumerate() {
            let p = if dim == 1 { parity(k, m) } else { parity(k / m, m) * parity(k % m, m) };
            *v *= p / hd;
        }
        fft_axes(&mut kernel, dim, m, true);
        let norm = (m.pow(dim as u32)) as f64;
        for v in kernel.iter_mut() {
            *v /= norm;
        }
        let grid = SymbolGrid { dim, h, t, m, kernel, fhat };
        grid.check_plancherel()?;
        Ok(grid)
    }

    pub fn zero(dim: usize, h: f64, t: f64) -> Result<Self> {
        Self::from_fn(|_| Complex64::new(0.0, 0.0), dim, h, t)
    }

    fn check_decay(&self) -> Result<()> {
        let half = self.t / 2.0;
        let m = self.m;
        for (k, v) in self.kernel.iter().enumerate() {
            let r = if self.dim == 1 {
                self.x(k).abs()
            } else {
                self.x(k / m).abs().max(self.x(k % m).abs())
            };
            if r > half + 1e-12 && v.norm() >= DECAY_TOL {
                return Err(Error::KernelNotWindowCompatible(format!(
                    "|f| = {:.3e} at distance {r} > T/2 = {half}",
                    v.norm()
                )));
            }
        }
        Ok(())
    }

    fn check_plancherel(&self) -> Result<()> {
        let hd = self.h.powi(self.dim as i32);
        let space: f64 = hd * self.kernel.iter().map(|v| v.norm_sqr()).sum::<f64>();
        let dual = (1.0 / (self.m as f64 * self.h)).powi(self.dim as i32);
        let freq: f64 = dual * self.fhat.iter().map(|v| v.norm_sqr()).sum::<f64>();
        if (space - freq).abs() > PLANCHEREL_TOL * space.max(f64::MIN_POSITIVE) {
            return Err(Error::KernelNotWindowCompatible(format!("Plancherel mismatch {space} vs {freq}")));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Half-width `T` of the window.
    pub fn window(&self) -> f64 {
        self.t
    }

    /// Samples per axis.
    pub fn points_per_axis(&self) -> usize {
        self.m
    }

    pub fn kernel(&self) -> &[Complex64] {
        &self.kernel
    }

    pub fn fhat(&self) -> &[Complex64] {
        &self.fhat
    }

    /// Spatial coordinate of axis index `i`.
    pub fn x(&self, i: usize) -> f64 {
        -self.t + i as f64 * self.h
    }

    /// Frequency of axis index `j` in FFT order.
    pub fn xi(&self, j: usize) -> f64 {
        signed(j, self.m) as f64 / (self.m as f64 * self.h)
    }

    /// Axis index of frequency `k/(m h)` for signed `k`.
    pub fn freq_index(&self, k: i64) -> usize {
        k.rem_euclid(self.m as i64) as usize
    }

    /// Axis frequency indices sorted by increasing frequency.
    pub fn sorted_frequencies(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.m).collect();
        idx.sort_by_key(|&j| signed(j, self.m));
        idx
    }

    /// `f(o·h)` for integer grid offsets from the origin; zero outside the window.
    pub fn kernel_at(&self, offsets: &[i64]) -> Complex64 {
        let half = (self.m / 2) as i64;
        let mut k = 0usize;
        for &o in offsets {
            let i = half + o;
            if i < 0 || i >= self.m as i64 {
                return Complex64::new(0.0, 0.0);
            }
            k = k * self.m + i as usize;
        }
        self.kernel[k]
    }

    /// `f̂` at an arbitrary frequency by direct summation.
    pub fn fhat_at(&self, xi: &[f64]) -> Complex64 {
        let hd = self.h.powi(self.dim as i32);
        let m = self.m;
        let mut s = Complex64::new(0.0, 0.0);
        for (k, v) in self.kernel.iter().enumerate() {
            if *v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let phase = if self.dim == 1 {
                self.x(k) * xi[0]
            } else {
                self.x(k / m) * xi[0] + self.x(k % m) * xi[1]
            };
            s += v * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * phase);
        }
        s * hd
    }

    /// Discrete `L¹` norm `h^d Σ |f|`.
    pub fn l1_norm(&self) -> f64 {
        self.h.powi(self.dim as i32) * self.kernel.iter().map(|v| v.norm()).sum::<f64>()
    }

    /// `min |1 + f̂|` over the dual grid and the point at infinity.
    pub fn symbol_min_abs(&self) -> f64 {
        self.fhat.iter().map(|v| (v + 1.0).norm()).fold(1.0, f64::min)
    }

    /// Circular convolution `h^d Σ f(y) g(x − y)` via the transforms.
    pub fn convolve(&self, other: &SymbolGrid) -> Result<SymbolGrid> {
        if self.dim != other.dim || self.m != other.m || self.h != other.h {
            return Err(Error::InvalidGrid("grid geometry".into()));
        }
        let prod: Vec<Complex64> = self.fhat.iter().zip(&other.fhat).map(|(a, b)| a * b).collect();
        SymbolGrid::from_fhat(prod, self.dim, self.h, self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(x: &[f64]) -> Complex64 {
        Complex64::new((-std::f64::consts::PI * x[0] * x[0]).exp(), 0.0)
    }

    #[test]
    fn gaussian_is_self_dual() {
        let g = SymbolGrid::from_fn(gaussian, 1, 0.05, 20.0).unwrap();
        let mut err: f64 = 0.0;
        for (j, v) in g.fhat().iter().enumerate() {
            let xi = g.xi(j);
            err = err.max((v - Complex64::new((-std::f64::consts::PI * xi * xi).exp(), 0.0)).norm());
        }
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn zero_kernel() {
        let g = SymbolGrid::zero(1, 0.1, 2.0).unwrap();
        assert!(g.fhat().iter().all(|v| v.norm() == 0.0));
        assert_eq!(g.symbol_min_abs(), 1.0);
    }

    #[test]
    fn slow_decay_rejected() {
        let slow = |x: &[f64]| Complex64::new((-x[0].abs() / 10.0).exp(), 0.0);
        assert!(matches!(SymbolGrid::from_fn(slow, 1, 0.1, 10.0), Err(Error::KernelNotWindowCompatible(_))));
        assert_eq!(SymbolGrid::from_fn(gaussian, 1, 0.1, 0.5).unwrap_err(), Error::InvalidGrid("grid geometry".into()));
    }

    #[test]
    fn off_grid_transform_matches_fft() {
        let g = SymbolGrid::from_fn(gaussian, 1, 0.1, 5.0).unwrap();
        for j in [0, 3, 47] {
            assert!((g.fhat_at(&[g.xi(j)]) - g.fhat()[j]).norm() < 1e-12);
        }
    }

    #[test]
    fn two_dimensional_transform() {
        let g2 = |x: &[f64]| Complex64::new((-std::f64::consts::PI * (x[0] * x[0] + x[1] * x[1])).exp(), 0.0);
        let g = SymbolGrid::from_fn(g2, 2, 0.1, 6.0).unwrap();
        let m = g.points_per_axis();
        let k = 3 * m + (m - 2);
        let (a, b) = (g.xi(3), g.xi(m - 2));
        let exact = (-std::f64::consts::PI * (a * a + b * b)).exp();
        assert!((g.fhat()[k].re - exact).abs() < 1e-10);
        assert!((g.fhat_at(&[a, b]) - g.fhat()[k]).norm() < 1e-12);
    }
}
