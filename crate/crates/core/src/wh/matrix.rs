//! Finite sections `(W_f)_{ij} = h^d f(x_i − x_j)` on `Ω ∩ [0, N h)^d`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::grid::SymbolGrid;
use crate::cone::PolyhedralCone;
use crate::error::{Error, Result};

/// Cones with rectangular discretisations.
#[derive(Clone, Debug, PartialEq)]
pub enum WhCone {
    HalfLine,
    QuarterPlane,
    /// A two-dimensional cone; only the quarter plane itself discretises directly, other cones
    /// go through [`pull_back_kernel`].
    Polyhedral(PolyhedralCone<f64>),
}

impl WhCone {
    pub fn dim(&self) -> usize {
        match self {
            WhCone::HalfLine => 1,
            WhCone::QuarterPlane => 2,
            WhCone::Polyhedral(c) => c.ambient_dim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WhMatrix {
    /// Grid index tuples of the discretised cone, in matrix order.
    pub index_set: Vec<Vec<usize>>,
    pub entries: DMatrix<Complex64>,
    pub identity_shift: bool,
}

impl WhMatrix {
    pub fn size(&self) -> usize {
        self.index_set.len()
    }

    /// `1 + W_f`.
    pub fn shifted(&self) -> WhMatrix {
        if self.identity_shift {
            return self.clone();
        }
        let n = self.size();
        WhMatrix {
            index_set: self.index_set.clone(),
            entries: &self.entries + DMatrix::<Complex64>::identity(n, n),
            identity_shift: true,
        }
    }

    /// Entries depend only on `i − j` (exact comparison).
    pub fn is_toeplitz(&self) -> bool {
        let n = self.entries.nrows();
        (1..n).all(|i| (1..n).all(|j| self.entries[(i, j)] == self.entries[(i - 1, j - 1)]))
    }

    /// Blocks `(a, b)` of size `N` depend only on `a − b`, and each block is Toeplitz.
    pub fn is_block_toeplitz(&self, block: usize) -> bool {
        let n = self.entries.nrows();
        if block == 0 || n % block != 0 {
            return false;
        }
        let e = &self.entries;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (a, r) = (i / block, i % block);
                let (b, c) = (j / block, j % block);
                let outer = a == 0 || b == 0 || e[(i, j)] == e[(i - block, j - block)];
                let inner = r == 0 || c == 0 || e[(i, j)] == e[(i - 1, j - 1)];
                outer && inner
            })
        })
    }

    /// Real part when every entry is real.
    pub fn real_entries(&self) -> Option<DMatrix<f64>> {
        if self.entries.iter().all(|v| v.im == 0.0) {
            Some(self.entries.map(|v| v.re))
        } else {
            None
        }
    }
}

/// The finite section of `W_f` on `Ω` with `N` points per axis.
pub fn wh_matrix(s: &SymbolGrid, cone: &WhCone, n: usize) -> Result<WhMatrix> {
    if cone.dim() != s.dim() {
        return Err(Error::GridConeMismatch("cone not supported by this grid".into()));
    }
    if let WhCone::Polyhedral(c) = cone {
        if !c.same_set(&PolyhedralCone::orthant(2)) {
            return Err(Error::GridConeMismatch("cone not supported by this grid".into()));
        }
    }
    if n == 0 || (n as f64 - 1.0) * s.h() > s.window() + 1e-12 {
        return Err(Error::InvalidGrid("truncation exceeds the window".into()));
    }
    let hd = s.h().powi(s.dim() as i32);
    let index_set: Vec<Vec<usize>> =
        if s.dim() == 1 { (0..n).map(|i| vec![i]).collect() } else { (0..n * n).map(|k| vec![k / n, k % n]).collect() };
    let size = index_set.len();
    let entries = DMatrix::from_fn(size, size, |i, j| {
        let off: Vec<i64> = index_set[i].iter().zip(&index_set[j]).map(|(&a, &b)| a as i64 - b as i64).collect();
        s.kernel_at(&off) * hd
    });
    Ok(WhMatrix { index_set, entries, identity_shift: false })
}

/// Kronecker product of two matrices.
pub fn kronecker(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.kronecker(b)
}

/// For a solid pointed cone `Ω = A·R²_+` (columns of `A` the two rays), the kernel
/// `|det A|·f(A z)` whose quarter-plane operator is unitarily equivalent to `W_f` on `Ω`.
pub fn pull_back_kernel(
    f: impl Fn(&[f64]) -> f64,
    cone: &PolyhedralCone<f64>,
) -> Result<impl Fn(&[f64]) -> f64> {
    if cone.ambient_dim() != 2 || !cone.is_pointed() || !cone.is_solid() || cone.rays().len() != 2 {
        return Err(Error::GridConeMismatch("cone not supported by this grid".into()));
    }
    let (r1, r2) = (cone.rays()[0].clone(), cone.rays()[1].clone());
    let jac = (r1[0] * r2[1] - r1[1] * r2[0]).abs();
    Ok(move |z: &[f64]| jac * f(&[r1[0] * z[0] + r2[0] * z[1], r1[1] * z[0] + r2[1] * z[1]]))
}
