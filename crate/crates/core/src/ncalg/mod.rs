//! Exact noncommutative polynomial arithmetic over the rationals.
//!
//! [`NCPoly`] is generic over its coefficient ring: plain rationals for the
//! algebra itself, [`CoefPoly`] while the projection evaluates its `t`/`ε`
//! integrals. Every operator of the crate is a [`LinearSubstitution`].

mod coef;
mod letter;
mod poly;
mod subst;

pub use coef::{simplex_monomial_integral, CoefPoly, Coefficient};
pub use letter::{word_basis, Letter, ParamId, Word};
pub use poly::{AuxPoly, NCPoly, Poly};
pub use subst::{lin, substitute, LetterImage, LinearSubstitution};

/// Exact rational scalar, always in lowest terms.
pub type Scalar = num::BigRational;

/// `a/b` as a [`Scalar`].
pub fn q(a: i64, b: i64) -> Scalar {
    Scalar::new(a.into(), b.into())
}

/// Integer as a [`Scalar`].
pub fn qi(a: i64) -> Scalar {
    Scalar::from_integer(a.into())
}
