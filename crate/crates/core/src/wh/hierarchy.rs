//! Fredholm hierarchy on the quarter plane: the full symbol, then the twisted face families.

use rayon::prelude::*;
use serde::Serialize;

use super::face::twisted_face_symbol;
use super::grid::SymbolGrid;
use super::index::{section_singular_values, FredholmReport, Verdict};
use super::matrix::WhCone;
use super::winding::WINDING_TOL;
use crate::cone::PolyhedralCone;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct HierarchyConfig {
    /// Two truncation sizes for the face operators.
    pub sizes: (usize, usize),
    /// Fiber points `y ∈ F^⊥`; the last one is read as the point at infinity.
    pub ys: Vec<f64>,
    /// Smallest accepted `σ(N2)/σ(N1)`.
    pub min_ratio: f64,
    /// Smallest accepted `σ(N2)`.
    pub delta: f64,
}

impl HierarchyConfig {
    pub fn for_grid(s: &SymbolGrid) -> Self {
        let far = 0.4 / s.h();
        HierarchyConfig {
            sizes: (64, 128),
            ys: vec![0.0, 0.25, -0.25, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, far],
            min_ratio: 0.8,
            delta: 1e-8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceSample {
    pub y: f64,
    pub sigma_n1: f64,
    pub sigma_n2: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceReport {
    pub label: String,
    pub direction: Vec<f64>,
    pub samples: Vec<FaceSample>,
    /// Smallest `σ_min` at the larger size over the fiber samples.
    pub margin: f64,
    pub margin_at_infinity: f64,
    pub passed: bool,
}

fn face_report(s: &SymbolGrid, label: &str, dir: [f64; 2], cfg: &HierarchyConfig) -> Result<FaceReport> {
    let samples: Vec<FaceSample> = cfg
        .ys
        .par_iter()
        .map(|&y| {
            let g = twisted_face_symbol(s, &dir, y)?;
            let a = section_singular_values(&g, &WhCone::HalfLine, cfg.sizes.0)?[0];
            let b = section_singular_values(&g, &WhCone::HalfLine, cfg.sizes.1)?[0];
            Ok(FaceSample { y, sigma_n1: a, sigma_n2: b, passed: b >= cfg.delta && b >= cfg.min_ratio * a })
        })
        .collect::<Result<_>>()?;
    let margin = samples.iter().map(|x| x.sigma_n2).fold(f64::INFINITY, f64::min);
    let margin_at_infinity = samples.last().map_or(f64::NAN, |x| x.sigma_n2);
    let passed = samples.iter().all(|x| x.passed);
    Ok(FaceReport { label: label.into(), direction: dir.to_vec(), samples, margin, margin_at_infinity, passed })
}

/// Full-symbol test, face-family tests for the rays `e1`, `e2` of `Ω*`, and the Neumann
/// margin `1 − ‖f‖₁`.
pub fn hierarchy_fredholm(s: &SymbolGrid, cone: &WhCone, cfg: &HierarchyConfig) -> Result<FredholmReport> {
    match cone {
        WhCone::QuarterPlane => {}
        WhCone::Polyhedral(c) if c.same_set(&PolyhedralCone::orthant(2)) => {}
        _ => return Err(Error::GridConeMismatch("hierarchy implemented for the quarter plane".into())),
    }
    if s.dim() != 2 {
        return Err(Error::GridConeMismatch("hierarchy implemented for the quarter plane".into()));
    }
    let min_abs_symbol = s.symbol_min_abs();
    let symbol_nonvanishing = min_abs_symbol > WINDING_TOL;
    let faces = vec![face_report(s, "e1", [1.0, 0.0], cfg)?, face_report(s, "e2", [0.0, 1.0], cfg)?];
    let ok = symbol_nonvanishing && faces.iter().all(|f| f.passed);
    Ok(FredholmReport {
        symbol_nonvanishing,
        min_abs_symbol,
        winding: None,
        index: None,
        numerical: None,
        numerical_error: None,
        sections: Vec::new(),
        face_reports: faces,
        neumann_margin: Some(1.0 - s.l1_norm()),
        verdict: if ok { Verdict::HierarchyFredholm } else { Verdict::NotHierarchyFredholm },
    })
}

impl FredholmReport {
    /// Labels of the faces whose family test failed.
    pub fn failing_faces(&self) -> Vec<&str> {
        self.face_reports.iter().filter(|f| !f.passed).map(|f| f.label.as_str()).collect()
    }
}
