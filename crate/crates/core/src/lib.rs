//! Stanley–Reisner modules of relative simplicial complexes, Goto's submodule
//! `Σ(Θ; M)` computed degree by degree, and verifiers that check h″-vector,
//! duality, a-invariant, monotonicity and weak-Lefschetz statements on small
//! triangulations by exact linear algebra.

pub mod comb;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod graded;
pub mod homology;
pub mod io;
pub mod lefschetz;
pub mod linalg;
pub mod report;
pub mod sigma;
pub mod surgery;

pub use complex::{FVector, Face, HVector, RelativeComplex, SimplicialComplex, Vertex};
pub use error::{Error, Result};
pub use linalg::{FieldSpec, Matrix, Scalar};
pub use report::{Report, Settings, Verdict};
