//! Exact operator calculus for families of monic polynomials.
//!
//! The crate builds monic polynomial families `p_n(x)` together with their
//! dual families and the series family `f_n(y)` characterised by
//! `e^{xy} = sum_n p_n(x) f_n(y) / n!`, represents the associated operators
//! (`G_P`, `U_P`, `D_P`, diagonal operators, the `y`-side transform) as
//! truncated matrices over the monomial basis, verifies the identities that
//! connect them, and expands the logarithmic derivative `x p_n'(x) / (n p_n(x))`
//! in powers of `1/x` from the generating function alone.
//!
//! All algorithms are generic over a [`Scalar`] field; the aliases below fix
//! the exact rational instantiation used for verification.

pub mod bivariate;
pub mod dsl;
pub mod error;
pub mod family;
pub mod json;
pub mod logderiv;
pub mod opcalc;
pub mod poly;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{Coeff, Scalar};

/// Exact rational scalar.
pub type Rat = num_rational::BigRational;
/// Dense polynomial in `x` over the rationals.
pub type XPoly = poly::Poly<Rat>;
/// Truncated power series in `y` over the rationals.
pub type YSeries = series::Series<Rat>;
/// Truncated `y`-series with polynomial coefficients, `C[x][[y]]`.
pub type BiSeries = bivariate::BiSeries<Rat>;
/// Monic family with exact rational data.
pub type MonicFamily = family::Family<Rat>;
/// Operator matrix with exact rational entries.
pub type OpMatrix = opcalc::Operator<Rat>;
