//! Scalar and coefficient-ring abstractions.
//!
//! Everything in this crate is generic over a [`Scalar`] field. The exact
//! instantiation used for verification is [`crate::Rat`]; `f32`/`f64` are
//! supported for exploratory numerics but identity checks on them compare
//! with `==` and are therefore only meaningful on exactly representable data.
//!
//! [`Coeff`] is the weaker notion needed by truncated series: a commutative
//! ring with a partial inverse. It is implemented for scalars, polynomials
//! and (recursively) truncated series.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

/// Commutative ring element usable as a series coefficient.
///
/// Method names avoid `add`/`mul` so they never collide with the `std::ops`
/// traits that scalar types also implement.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Field: Scalar;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Embeds a field element into the same ring (and shape) as `self`.
    fn lift_like(&self, c: Self::Field) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &Self::Field) -> Self;
    /// Multiplicative inverse, if the element is a unit.
    fn inverse(&self) -> Option<Self>;

    fn is_one_coeff(&self) -> bool {
        *self == self.one_like()
    }
}

/// A field of characteristic zero.
pub trait Scalar: Coeff<Field = Self> + Num + Neg<Output = Self> + fmt::Display + 'static {
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

impl Coeff for BigRational {
    type Field = BigRational;

    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn lift_like(&self, c: Self) -> Self {
        c
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Self) -> Self {
        self * c
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Coeff for $t {
            type Field = $t;

            fn zero_like(&self) -> Self {
                0.0
            }
            fn one_like(&self) -> Self {
                1.0
            }
            fn lift_like(&self, c: Self) -> Self {
                c
            }
            fn is_zero_coeff(&self) -> bool {
                *self == 0.0
            }
            fn plus(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn minus(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn times(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn negated(&self) -> Self {
                -self
            }
            fn scaled(&self, c: &Self) -> Self {
                self * c
            }
            fn inverse(&self) -> Option<Self> {
                if *self == 0.0 {
                    None
                } else {
                    Some(1.0 / self)
                }
            }
        }

        impl Scalar for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }
            fn from_rational(r: &BigRational) -> Self {
                r.to_f64().unwrap_or(f64::NAN) as $t
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

pub(crate) fn big_factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn big_binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n!` in the field.
pub fn factorial<F: Scalar>(n: usize) -> F {
    F::from_rational(&BigRational::from_integer(big_factorial(n)))
}

/// `1/n!` in the field.
pub fn inv_factorial<F: Scalar>(n: usize) -> F {
    F::from_rational(&BigRational::new(BigInt::one(), big_factorial(n)))
}

/// Binomial coefficient `C(n, k)` in the field (zero when `k > n`).
pub fn binomial<F: Scalar>(n: usize, k: usize) -> F {
    F::from_rational(&BigRational::from_integer(big_binomial(n, k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        let row: Vec<BigRational> = (0..=5).map(|k| binomial(5, k)).collect();
        let expected: Vec<BigRational> = [1, 5, 10, 10, 5, 1]
            .iter()
            .map(|&v| BigRational::from_i64(v))
            .collect();
        assert_eq!(row, expected);
        assert!(binomial::<BigRational>(3, 4).is_zero());
    }

    #[test]
    fn factorials_agree_across_scalars() {
        assert_eq!(factorial::<BigRational>(6), BigRational::from_i64(720));
        assert_eq!(factorial::<f64>(6), 720.0);
        assert_eq!(inv_factorial::<BigRational>(3), BigRational::ratio(1, 6));
    }

    #[test]
    fn rational_inverse_of_zero_is_none() {
        assert!(BigRational::zero().inverse().is_none());
        assert_eq!(
            BigRational::ratio(2, 3).inverse(),
            Some(BigRational::ratio(3, 2))
        );
    }
}
