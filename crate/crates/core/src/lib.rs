//! Polyhedral cone geometry, order-compactification strata, convex gauge calculus and
//! finite-section Wiener–Hopf numerics.
//!
//! The cone code is generic over [`Scalar`] and runs exactly over [`Rational`]; the convex
//! analysis is generic over [`Real`] (`f32`/`f64`); the Wiener–Hopf numerics use `f64`.

pub mod cone;
pub mod convex;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod strata;
pub mod wh;

pub use cone::{
    dual_face, exposed_face, face_lattice, project_cone, project_cone_fm, relative_dual, Face, FaceLattice,
    PolyhedralCone,
};
pub use error::{Error, Result};
pub use scalar::{parse_rational, rational_vec, Rational, Real, Scalar};

pub type RationalVector = Vec<Rational>;
pub type ExactCone = PolyhedralCone<Rational>;
pub type ExactFace = Face<Rational>;
pub type FloatCone = PolyhedralCone<f64>;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
