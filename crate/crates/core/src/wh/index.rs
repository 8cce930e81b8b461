//! Finite-section index estimation and the classical Fredholm report.

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::grid::SymbolGrid;
use super::matrix::{wh_matrix, WhCone, WhMatrix};
use super::winding::{symbol_winding, WINDING_TOL};
use crate::error::{Error, Result};

/// Relative cut `δ = CUT·σ_max` below which a singular value counts as a kernel mode.
pub const CUT: f64 = 1e-8;
/// Required ratio between the first singular value above the cut and the last one below.
pub const GAP_RATIO: f64 = 1e3;

/// Singular values in increasing order with, per value, the share of the right and left
/// singular vectors' mass carried by the first half of the indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SvdSummary {
    pub sigma: Vec<f64>,
    pub right_front: Vec<f64>,
    pub left_front: Vec<f64>,
}

fn front_share<'a>(v: impl Iterator<Item = f64>, half: usize) -> f64 {
    let mut front = 0.0;
    let mut total = 0.0;
    for (i, x) in v.enumerate() {
        if i < half {
            front += x;
        }
        total += x;
    }
    if total > 0.0 {
        front / total
    } else {
        0.0
    }
}

macro_rules! summarise {
    ($svd:expr, $n:expr, $vectors:expr) => {{
        let svd = $svd;
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[a].partial_cmp(&svd.singular_values[b]).unwrap());
        let half = $n / 2;
        let sigma: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
        let (mut right_front, mut left_front) = (Vec::new(), Vec::new());
        if $vectors {
            let u = svd.u.as_ref().unwrap();
            let vt = svd.v_t.as_ref().unwrap();
            for &i in &order {
                left_front.push(front_share(u.column(i).iter().map(|z| z.clone().modulus_squared()), half));
                right_front.push(front_share(vt.row(i).iter().map(|z| z.clone().modulus_squared()), half));
            }
        }
        SvdSummary { sigma, right_front, left_front }
    }};
}

/// SVD, in real arithmetic when the matrix is real.
pub fn svd_summary(m: &DMatrix<Complex64>, vectors: bool) -> SvdSummary {
    let n = m.nrows();
    if m.iter().all(|z| z.im == 0.0) {
        summarise!(m.map(|z| z.re).svd(vectors, vectors), n, vectors)
    } else {
        summarise!(m.clone().svd(vectors, vectors), n, vectors)
    }
}

/// Diagnostics of one truncation `1 + W_f` of size `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncationStats {
    pub n: usize,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub cut: f64,
    /// Number of singular values below the cut.
    pub small: usize,
    /// Smallest singular value above the cut.
    pub sigma_above: f64,
    pub gap_ratio: f64,
    pub dim_ker: usize,
    pub dim_coker: usize,
}

impl TruncationStats {
    pub fn from_matrix(m: &DMatrix<Complex64>, vectors: bool) -> Self {
        let n = m.nrows();
        let svd = svd_summary(m, vectors);
        let sigma_max = svd.sigma.last().copied().unwrap_or(0.0);
        let cut = CUT * sigma_max;
        let small = svd.sigma.iter().filter(|&&s| s < cut).count();
        let sigma_above = svd.sigma.get(small).copied().unwrap_or(f64::INFINITY);
        let gap_ratio = if small == 0 {
            f64::INFINITY
        } else if svd.sigma[small - 1] == 0.0 {
            f64::INFINITY
        } else {
            sigma_above / svd.sigma[small - 1]
        };
        let (mut dim_ker, mut dim_coker) = (0, 0);
        if vectors {
            for i in 0..small {
                if svd.right_front[i] > 0.5 {
                    dim_ker += 1;
                }
                if svd.left_front[i] > 0.5 {
                    dim_coker += 1;
                }
            }
        }
        TruncationStats {
            n,
            sigma_min: svd.sigma.first().copied().unwrap_or(0.0),
            sigma_max,
            cut,
            small,
            sigma_above,
            gap_ratio,
            dim_ker,
            dim_coker,
        }
    }
}

/// Singular values of the `n`-point section of `1 + W_f` on `Ω`, increasing.
pub fn section_singular_values(s: &SymbolGrid, cone: &WhCone, n: usize) -> Result<Vec<f64>> {
    Ok(svd_summary(&wh_matrix(s, cone, n)?.shifted().entries, false).sigma)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexDiagnostics {
    pub stats: Vec<TruncationStats>,
    pub dim_ker: usize,
    pub dim_coker: usize,
    pub index: i64,
}

/// Kernel and cokernel counts of a family of sections; accepted when every member has a
/// clear gap at the cut and all counts agree.
pub fn index_from_matrices(family: &[WhMatrix]) -> Result<IndexDiagnostics> {
    if family.len() < 2 {
        return Err(Error::EmptyInput);
    }
    let stats: Vec<TruncationStats> =
        family.par_iter().map(|m| TruncationStats::from_matrix(&m.shifted().entries, true)).collect();
    for st in &stats {
        if st.small > 0 && !(st.gap_ratio > GAP_RATIO) {
            return Err(Error::IndexNotResolved(format!(
                "gap ratio {:.3e} at N = {} below {GAP_RATIO:e}",
                st.gap_ratio, st.n
            )));
        }
        if st.dim_ker + st.dim_coker != st.small {
            return Err(Error::IndexNotResolved(format!("{} small modes at N = {} are not localised", st.small, st.n)));
        }
    }
    let first = &stats[0];
    if stats.iter().any(|st| st.dim_ker != first.dim_ker || st.dim_coker != first.dim_coker) {
        return Err(Error::IndexNotResolved("kernel/cokernel counts change with N".into()));
    }
    Ok(IndexDiagnostics {
        dim_ker: first.dim_ker,
        dim_coker: first.dim_coker,
        index: first.dim_ker as i64 - first.dim_coker as i64,
        stats,
    })
}

/// [`index_from_matrices`] for the sections of `1 + W_f` at the given sizes.
pub fn numerical_index(s: &SymbolGrid, cone: &WhCone, sizes: &[usize]) -> Result<IndexDiagnostics> {
    let family: Vec<WhMatrix> = sizes.iter().map(|&n| wh_matrix(s, cone, n)).collect::<Result<_>>()?;
    index_from_matrices(&family)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Fredholm,
    NotFredholm,
    HierarchyFredholm,
    NotHierarchyFredholm,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Fredholm => "fredholm",
            Verdict::NotFredholm => "not-fredholm",
            Verdict::HierarchyFredholm => "hierarchy-fredholm",
            Verdict::NotHierarchyFredholm => "not-hierarchy-fredholm",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FredholmReport {
    pub symbol_nonvanishing: bool,
    pub min_abs_symbol: f64,
    pub winding: Option<i64>,
    /// `−winding` when Fredholm.
    pub index: Option<i64>,
    pub numerical: Option<IndexDiagnostics>,
    pub numerical_error: Option<String>,
    /// Section statistics at the requested sizes (also for non-Fredholm symbols).
    pub sections: Vec<TruncationStats>,
    pub face_reports: Vec<super::hierarchy::FaceReport>,
    pub neumann_margin: Option<f64>,
    pub verdict: Verdict,
}

/// Nonvanishing test, winding, `index = −winding`, and the finite-section cross-check.
pub fn classical_index(s: &SymbolGrid, sizes: &[usize]) -> Result<FredholmReport> {
    if s.dim() != 1 {
        return Err(Error::InvalidGrid("classical index needs a one-dimensional symbol".into()));
    }
    let min_abs_symbol = s.symbol_min_abs();
    let symbol_nonvanishing = min_abs_symbol > WINDING_TOL;
    let winding = if symbol_nonvanishing { symbol_winding(s).ok() } else { None };
    let mut report = FredholmReport {
        symbol_nonvanishing,
        min_abs_symbol,
        winding,
        index: winding.map(|w| -w),
        numerical: None,
        numerical_error: None,
        sections: Vec::new(),
        face_reports: Vec::new(),
        neumann_margin: None,
        verdict: if winding.is_some() { Verdict::Fredholm } else { Verdict::NotFredholm },
    };
    if winding.is_some() {
        match numerical_index(s, &WhCone::HalfLine, sizes) {
            Ok(d) => {
                report.sections = d.stats.clone();
                report.numerical = Some(d);
            }
            Err(e) => report.numerical_error = Some(e.to_string()),
        }
    }
    if report.sections.is_empty() {
        let mats: Vec<WhMatrix> = sizes.iter().map(|&n| wh_matrix(s, &WhCone::HalfLine, n)).collect::<Result<_>>()?;
        report.sections = mats.par_iter().map(|m| TruncationStats::from_matrix(&m.shifted().entries, false)).collect();
    }
    Ok(report)
}
