//! Coefficient fields.
//!
//! Everything above the parser is generic over [`Coefficient`]. Exact
//! certificates need an exact field, so the file formats and the CLI use
//! [`crate::Rational`]; floating point types satisfy the bound and are handy
//! for quick numeric experiments, but zero tests on them are only as good as
//! the arithmetic.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::Num;

/// A field of coefficients.
pub trait Coefficient:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> Coefficient for T where
    T: Clone + Debug + PartialEq + Num + Neg<Output = T> + Send + Sync + 'static
{
}
