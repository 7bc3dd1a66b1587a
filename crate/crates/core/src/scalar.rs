//! Scalar abstractions.
//!
//! The coherence metrics only need ring operations, division and conversion from
//! counts, so they are written against [`Scalar`] and work for `f32`, `f64` and exact
//! rationals alike. Score transforms and retrieval measures need logarithms and powers
//! and are written against [`num_traits::Float`] instead.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, ToPrimitive};

pub trait Scalar:
    Num + FromPrimitive + ToPrimitive + Copy + PartialOrd + Debug + Send + Sync
{
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable in scalar type")
    }

    /// Arithmetic mean; zero for an empty slice.
    fn mean(values: &[Self]) -> Self {
        if values.is_empty() {
            return Self::zero();
        }
        let sum = values.iter().fold(Self::zero(), |acc, &v| acc + v);
        sum / Self::from_count(values.len())
    }
}

impl<T> Scalar for T where
    T: Num + FromPrimitive + ToPrimitive + Copy + PartialOrd + Debug + Send + Sync
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn mean_of_empty_is_zero() {
        assert_eq!(<f64 as Scalar>::mean(&[]), 0.0);
    }

    #[test]
    fn exact_mean() {
        let v = [Ratio::new(1i64, 2), Ratio::new(1, 3)];
        assert_eq!(Scalar::mean(&v), Ratio::new(5, 12));
    }
}
