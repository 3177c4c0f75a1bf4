//! Operator identities as noncommutative polynomials, checked against a
//! labelled quiver.
//!
//! The algebra is generic over a [`scalar::Coefficient`] field; the aliases
//! below fix it to exact rationals, which is what the file formats and the
//! command-line tool use.

pub mod alphabet;
pub mod completion;
pub mod consequence;
pub mod error;
pub mod io;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod quiver;
pub mod realization;
pub mod rewrite;
pub mod scalar;
#[doc(hidden)]
pub mod testing;

pub use alphabet::{Alphabet, Symbol};
pub use error::{Error, Result};
pub use monomial::Monomial;
pub use order::{DegLex, MonomialOrdering};
pub use poly::Polynomial;
pub use quiver::{LabelledQuiver, Signature, Vertex};

pub type Rational = num_rational::BigRational;
pub type RatPolynomial = Polynomial<Rational>;
pub type RatCertificate = consequence::Certificate<Rational>;
pub type RatMatrix = matrix::Matrix<Rational>;
pub type RatRepresentation = realization::Representation<Rational>;
pub type RatCompletion = completion::CompletionResult<Rational>;
