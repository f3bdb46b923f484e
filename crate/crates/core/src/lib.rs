//! Exact Eilenberg–MacLane complexes on free associative and free Lie
//! algebras, together with an explicit chain homotopy built from simplex
//! integrals, and the per-bidegree cohomology computations it certifies.

pub mod cohomology;
pub mod error;
pub mod lie;
pub mod ncalg;
pub mod operators;
pub mod oracle;
pub mod series;
pub mod syntax;
pub mod verify;

pub use error::{Error, Result};
pub use ncalg::{Letter, NCPoly, Poly, Scalar, Word};
