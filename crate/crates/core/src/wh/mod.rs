//! Discretised Wiener–Hopf operators on the half-line and the quarter plane: symbols, finite
//! sections, winding numbers, index estimates and face-symbol restrictions.

pub mod face;
pub mod grid;
pub mod hierarchy;
pub mod index;
pub mod kernels;
pub mod matrix;
pub mod winding;

pub use face::{face_direction, face_symbol, face_symbol_of, rep_l, twisted_face_symbol};
pub use grid::SymbolGrid;
pub use hierarchy::{hierarchy_fredholm, FaceReport, FaceSample, HierarchyConfig};
pub use index::{
    classical_index, index_from_matrices, numerical_index, section_singular_values, FredholmReport,
    IndexDiagnostics, TruncationStats, Verdict,
};
pub use kernels::{KernelSpec, RationalSymbol};
pub use matrix::{pull_back_kernel, wh_matrix, WhCone, WhMatrix};
pub use winding::{symbol_curve, symbol_winding, winding_number};
