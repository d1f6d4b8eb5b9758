//! Computational differential geometry of SU(3)-structures on 6-dimensional
//! Lie algebras.
//!
//! The crate builds an SU(3)-structure from a nondegenerate 2-form κ and a
//! normalized κ-positive 3-form Ω on a 6-dimensional Lie algebra, extracts the
//! seven intrinsic torsion forms {π₀, σ₀, π₁, ν₁, π₂, σ₂, ν₃} from dκ, dΩ,
//! dJΩ, classifies the structure, and computes scalar and Ricci curvature two
//! independent ways: through closed-form expressions in the torsion forms, and
//! through the Koszul/Levi-Civita connection of the induced metric (the
//! oracle). Everything runs either over exact big-rational arithmetic or over
//! f64 with configurable tolerances.
//!
//! Module layering (each layer depends only on the ones above it):
//!
//! - [`scalar`]: the arithmetic abstraction (exact rationals / f64).
//! - [`linalg`]: small dense matrices, elimination, kernels.
//! - [`exterior`]: 6-dimensional exterior algebra, both star operators.
//! - [`su3`]: ε-tables, positivity, normalization, the structure itself.
//! - [`decomp`]: irreducible-module decompositions and the ι/γ isomorphisms.
//! - [`frame`]: Lie frames, Chevalley–Eilenberg differential, Koszul
//!   connection, curvature, and the coefficient tables (the oracle lives
//!   here).
//! - [`torsion`]: torsion extraction, classification, curvature from torsion.
//! - [`structfile`]: the JSON input format.
//! - [`report`]: the JSON/text analysis report.
//! - [`verify`]: seeded random structure generators and the property suites.

pub mod decomp;
pub mod exterior;
pub mod frame;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod structfile;
pub mod su3;
pub mod torsion;
pub mod verify;
