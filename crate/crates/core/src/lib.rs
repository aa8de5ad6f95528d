//! Exact computations with Z2xZ2-graded Lie algebras over the cyclotomic
//! field Q(zeta8): axiom checks, the passage to Lie superalgebras with an
//! involution, enveloping algebras with their Hopf structure, truncated
//! Harish-Chandra data, and the deformed product on even/odd functions.

pub mod appendix;
pub mod catalog;
pub mod equivalence;
pub mod error;
pub mod exec;
pub mod hc;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod linear;
pub mod scalar;
pub mod uea;

pub use error::{Error, Result};
pub use exec::Exec;
pub use lie::{BiGradedAssocAlgebra, BiGradedLieAlgebra};
pub use linear::{BiGradedSpace, BilinearMap, LinearMap, Vector};
pub use scalar::{BiDegree, CycloScalar, Rational, Sign, SignRule};
pub use uea::{Uea, UeaElement, Word};
