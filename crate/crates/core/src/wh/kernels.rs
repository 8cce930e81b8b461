//! Named kernel families: rational symbols with real simple poles, Gaussians, separable products.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::SymbolGrid;
use crate::error::{Error, Result};

const PI: f64 = std::f64::consts::PI;

/// `1 + f̂ = Π (s − z_k)/(s − p_k)` in the variable `s = 2πiξ`; the poles are distinct, real
/// and nonzero, so `f` is a finite sum of one-sided exponentials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalSymbol {
    pub zeros: Vec<f64>,
    pub poles: Vec<f64>,
}

impl RationalSymbol {
    pub fn new(zeros: Vec<f64>, poles: Vec<f64>) -> Result<Self> {
        if zeros.len() != poles.len() {
            return Err(Error::InvalidInput("a rational symbol needs as many zeros as poles".into()));
        }
        for (i, &p) in poles.iter().enumerate() {
            if p == 0.0 || !p.is_finite() || poles[..i].iter().any(|&q| (q - p).abs() < 1e-12) {
                return Err(Error::InvalidInput(format!("poles must be distinct, real and nonzero: {poles:?}")));
            }
        }
        Ok(RationalSymbol { zeros, poles })
    }

    /// `(s − 1)/(s + 1)`: kernel `−2e^{−x}` on `x > 0`.
    pub fn blaschke() -> Self {
        RationalSymbol { zeros: vec![1.0], poles: vec![-1.0] }
    }

    /// Product of symbols (zeros and poles concatenated).
    pub fn product(&self, other: &Self) -> Result<Self> {
        Self::new([self.zeros.clone(), other.zeros.clone()].concat(), [self.poles.clone(), other.poles.clone()].concat())
    }

    pub fn reciprocal(&self) -> Result<Self> {
        Self::new(self.poles.clone(), self.zeros.clone())
    }

    /// Residues `A_p` of `1 + f̂` at the poles.
    pub fn residues(&self) -> Vec<f64> {
        self.poles
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let num: f64 = self.zeros.iter().map(|z| p - z).product();
                let den: f64 = self.poles.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| p - q).product();
                num / den
            })
            .collect()
    }

    /// `1 + f̂(ξ)` in closed form.
    pub fn eval(&self, xi: f64) -> Complex64 {
        let s = Complex64::new(0.0, 2.0 * PI * xi);
        self.zeros.iter().zip(&self.poles).fold(Complex64::new(1.0, 0.0), |acc, (z, p)| acc * (s - z) / (s - p))
    }

    /// `f(x) = Σ_{p<0} A_p e^{px} 1_{x>0} − Σ_{p>0} A_p e^{px} 1_{x<0}`, midpoint at the jump.
    pub fn kernel(&self, x: f64) -> f64 {
        self.poles
            .iter()
            .zip(self.residues())
            .map(|(&p, a)| {
                let e = a * (p * x).exp();
                let side = if p < 0.0 { x } else { -x };
                let sign = if p < 0.0 { 1.0 } else { -1.0 };
                if side > 0.0 {
                    sign * e
                } else if side == 0.0 {
                    sign * e / 2.0
                } else {
                    0.0
                }
            })
            .sum()
    }

    /// Argument-principle count in `Re s > 0`: zeros minus poles.
    pub fn right_half_plane_count(&self) -> i64 {
        self.zeros.iter().filter(|&&z| z > 0.0).count() as i64 - self.poles.iter().filter(|&&p| p > 0.0).count() as i64
    }
}

/// `a·e^{−π(x/w)²}/w`, with `f̂(ξ) = a·e^{−π w² ξ²}`.
pub fn gaussian_1d(amplitude: f64, width: f64, x: f64) -> f64 {
    amplitude * (-PI * (x / width).powi(2)).exp() / width
}

/// Kernel descriptions used by experiment specs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum KernelSpec {
    Zero { dim: usize },
    /// Radial Gaussian `a·e^{−π|x/w|²}/w^d`, so that `f̂(0) = a`.
    Gaussian { dim: usize, amplitude: f64, width: f64 },
    Rational { zeros: Vec<f64>, poles: Vec<f64> },
    /// `f(x, y) = g(x)·g'(y)` from two one-dimensional kernels.
    Separable { x: Box<KernelSpec>, y: Box<KernelSpec> },
}

impl KernelSpec {
    pub fn dim(&self) -> usize {
        match self {
            KernelSpec::Zero { dim } | KernelSpec::Gaussian { dim, .. } => *dim,
            KernelSpec::Rational { .. } => 1,
            KernelSpec::Separable { .. } => 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            KernelSpec::Zero { dim } | KernelSpec::Gaussian { dim, .. } if !(*dim == 1 || *dim == 2) => {
                Err(Error::InvalidInput(format!("kernel dimension must be 1 or 2, got {dim}")))
            }
            KernelSpec::Gaussian { width, .. } if !(*width > 0.0) => {
                Err(Error::InvalidInput("Gaussian width must be positive".into()))
            }
            KernelSpec::Rational { zeros, poles } => RationalSymbol::new(zeros.clone(), poles.clone()).map(|_| ()),
            KernelSpec::Separable { x, y } => {
                if x.dim() != 1 || y.dim() != 1 {
                    return Err(Error::InvalidInput("separable factors must be one-dimensional".into()));
                }
                x.validate()?;
                y.validate()
            }
            _ => Ok(()),
        }
    }

    /// Pointwise kernel value.
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            KernelSpec::Zero { .. } => 0.0,
            KernelSpec::Gaussian { dim, amplitude, width } => {
                let r2: f64 = x.iter().map(|v| v * v).sum();
                amplitude * (-PI * r2 / (width * width)).exp() / width.powi(*dim as i32)
            }
            KernelSpec::Rational { zeros, poles } => {
                RationalSymbol { zeros: zeros.clone(), poles: poles.clone() }.kernel(x[0])
            }
            KernelSpec::Separable { x: gx, y: gy } => gx.eval(&x[..1]) * gy.eval(&x[1..2]),
        }
    }

    pub fn sample(&self, h: f64, t: f64) -> Result<SymbolGrid> {
        self.validate()?;
        SymbolGrid::from_fn(|x| Complex64::new(self.eval(x), 0.0), self.dim(), h, t)
    }
}
