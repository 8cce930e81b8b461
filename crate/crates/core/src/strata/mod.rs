//! Dimension strata of the dual face lattice and the data attached to them.

mod order;
mod pk;
pub mod report;

pub use order::{order_point, ray_limit, recover_face_point, OrderPoint, TranslatedCone};
pub use pk::{hausdorff, pk_converges, pk_liminf, pk_limsup, sample_on_grid, window_hausdorff, PkGrid, SampledSet};

use crate::cone::{face_lattice, Face, FaceLattice, PolyhedralCone};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Levels `P_0 … P_d` of the face lattice of `Ω*`, where `P_j` holds the faces of dimension `n_{d−j}`.
#[derive(Clone, Debug)]
pub struct Strata<T: Scalar> {
    cone: PolyhedralCone<T>,
    lattice: FaceLattice<T>,
    dims: Vec<usize>,
    levels: Vec<Vec<usize>>,
}

pub fn strata<T: Scalar>(omega: &PolyhedralCone<T>) -> Result<Strata<T>> {
    if !omega.is_pointed() || !omega.is_solid() {
        return Err(Error::NotPointedSolid);
    }
    let lattice = face_lattice(&omega.dual())?;
    let dims = lattice.distinct_dims();
    let d = dims.len() - 1;
    let levels = (0..=d)
        .map(|j| (0..lattice.len()).filter(|&i| lattice.faces()[i].dim() == dims[d - j]).collect())
        .collect();
    Ok(Strata { cone: omega.clone(), lattice, dims, levels })
}

pub fn solvable_length<T: Scalar>(omega: &PolyhedralCone<T>) -> Result<usize> {
    Ok(strata(omega)?.d())
}

impl<T: Scalar> Strata<T> {
    pub fn cone(&self) -> &PolyhedralCone<T> {
        &self.cone
    }

    /// Face lattice of the dual cone.
    pub fn lattice(&self) -> &FaceLattice<T> {
        &self.lattice
    }

    /// `n_0 < n_1 < … < n_d`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn d(&self) -> usize {
        self.dims.len() - 1
    }

    /// Lattice indices of the faces in `P_j`.
    pub fn level(&self, j: usize) -> Result<&[usize]> {
        self.levels.get(j).map(|v| v.as_slice()).ok_or(Error::LevelOutOfRange { level: j, max: self.d() })
    }

    pub fn level_faces(&self, j: usize) -> Result<Vec<&Face<T>>> {
        Ok(self.level(j)?.iter().map(|&i| &self.lattice.faces()[i]).collect())
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    /// Level containing the lattice face `index`.
    pub fn level_of(&self, index: usize) -> usize {
        self.levels.iter().position(|l| l.contains(&index)).expect("every face lies in a level")
    }

    /// Face dimension attached to level `j`.
    pub fn level_dim(&self, j: usize) -> usize {
        self.dims[self.d() - j]
    }

    pub fn face(&self, index: usize) -> &Face<T> {
        &self.lattice.faces()[index]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaFiber<T> {
    pub face: usize,
    /// Basis of `F^⊥` (pairwise orthogonal, exact).
    pub basis: Vec<Vec<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaBundle<T> {
    pub level: usize,
    pub rank: usize,
    pub fibers: Vec<SigmaFiber<T>>,
}

pub fn sigma_bundle<T: Scalar>(s: &Strata<T>, j: usize) -> Result<SigmaBundle<T>> {
    let fibers: Vec<SigmaFiber<T>> = s
        .level(j)?
        .iter()
        .map(|&i| SigmaFiber { face: i, basis: crate::linalg::orthogonal_basis(&s.face(i).orthogonal_complement()) })
        .collect();
    let rank = s.cone.ambient_dim() - s.level_dim(j);
    debug_assert!(fibers.iter().all(|f| f.basis.len() == rank));
    Ok(SigmaBundle { level: j, rank, fibers })
}

/// Inclusion pairs `(E, F)` with `E ∈ P_{j−1}`, `F ∈ P_j`, `F ⊂ E`.
#[derive(Clone, Debug, PartialEq)]
pub struct IncidencePairs {
    pub level: usize,
    /// Lattice indices `(E, F)`.
    pub pairs: Vec<(usize, usize)>,
    /// Position of `E` within `P_{j−1}` for each pair.
    pub xi: Vec<usize>,
    /// Position of `F` within `P_j` for each pair.
    pub eta: Vec<usize>,
    /// Faces of `P_j` contained in no face of `P_{j−1}`.
    pub uncovered: Vec<usize>,
}

pub fn incidence_pairs<T: Scalar>(s: &Strata<T>, j: usize) -> Result<IncidencePairs> {
    if j == 0 || j > s.d() {
        return Err(Error::LevelOutOfRange { level: j, max: s.d() });
    }
    let upper = s.level(j - 1)?;
    let lower = s.level(j)?;
    let mut pairs = Vec::new();
    let mut xi = Vec::new();
    let mut eta = Vec::new();
    for (pe, &e) in upper.iter().enumerate() {
        for (pf, &f) in lower.iter().enumerate() {
            if s.lattice.leq(f, e) {
                pairs.push((e, f));
                xi.push(pe);
                eta.push(pf);
            }
        }
    }
    let uncovered = lower.iter().enumerate().filter(|(pf, _)| !eta.contains(pf)).map(|(_, &f)| f).collect();
    Ok(IncidencePairs { level: j, pairs, xi, eta, uncovered })
}

/// Level structure of the spectrum: strata `Σ_0 … Σ_d` with the specialisation order.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumPoset<T> {
    pub strata: Vec<SigmaBundle<T>>,
    /// `(i, j)` whenever `Σ_j` lies in the closure of `Σ_i` (all `i < j`).
    pub specializations: Vec<(usize, usize)>,
    /// Covering edges `(j, j+1)` of the level DAG.
    pub covers: Vec<(usize, usize)>,
    /// The level holding the dense point.
    pub dense_level: usize,
}

pub fn spectrum_poset<T: Scalar>(s: &Strata<T>) -> Result<SpectrumPoset<T>> {
    let d = s.d();
    let strata = (0..=d).map(|j| sigma_bundle(s, j)).collect::<Result<Vec<_>>>()?;
    let specializations = (0..=d).flat_map(|i| (i + 1..=d).map(move |j| (i, j))).collect();
    let covers = (0..d).map(|j| (j, j + 1)).collect();
    Ok(SpectrumPoset { strata, specializations, covers, dense_level: 0 })
}
