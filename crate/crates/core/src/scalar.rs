//! Exact scalar fields used by the polynomial and linear-algebra layers.
//!
//! Every engine in this crate is generic over [`Scalar`]. The trait is only
//! implemented for exact fields: ranks and Molien averages must never be
//! subject to rounding.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(value: i64) -> Self;

    /// The value as an `i64`, if it is an integer that fits.
    fn to_exact_i64(&self) -> Option<i64>;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + ToPrimitive + From<i64> + Debug + Display + Send + Sync + 'static,
{
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(T::from(value))
    }

    fn to_exact_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}
