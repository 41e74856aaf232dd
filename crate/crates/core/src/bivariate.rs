//! Bivariate series in `C[x][[y]]`, stored as `y`-series of `x`-polynomials,
//! plus conversions to the transposed (`x`-indexed columns of `y`-series) view.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{inv_factorial, Scalar};
use crate::series::Series;

/// `y`-series with polynomial coefficients in `x`.
pub type BiSeries<F> = Series<Poly<F>>;

/// Truncated `e^{xy}`: the coefficient of `y^k` is `x^k / k!`.
pub fn exp_xy<F: Scalar>(order: usize) -> BiSeries<F> {
    Series::new(
        (0..=order)
            .map(|k| Poly::term(inv_factorial(k), k))
            .collect(),
    )
}

/// `sum_k polys[k] y^k / k!`, e.g. the generating function of a family.
pub fn egf<F: Scalar>(polys: &[Poly<F>]) -> BiSeries<F> {
    Series::new(
        polys
            .iter()
            .enumerate()
            .map(|(k, p)| p.scale(&inv_factorial(k)))
            .collect(),
    )
}

/// Coefficientwise `d/dx`.
pub fn deriv_x<F: Scalar>(b: &BiSeries<F>) -> BiSeries<F> {
    b.map(|p| p.deriv())
}

/// Coefficientwise exact division by `x`.
pub fn div_x<F: Scalar>(b: &BiSeries<F>) -> Result<BiSeries<F>> {
    let coeffs = b
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, p)| {
            p.div_x().ok_or_else(|| {
                Error::PreconditionViolated(format!(
                    "coefficient of y^{k} does not vanish at x = 0"
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Series::new(coeffs))
}

/// Coefficientwise multiplication by `x`.
pub fn mul_x<F: Scalar>(b: &BiSeries<F>) -> BiSeries<F> {
    b.map(|p| p.shift_up(1))
}

/// Largest `x`-degree among the known coefficients.
pub fn x_degree<F: Scalar>(b: &BiSeries<F>) -> Option<usize> {
    b.coeffs().iter().filter_map(|p| p.degree()).max()
}

/// Splits into `x^a`-columns, each a `y`-series of the same precision:
/// `b = sum_a x^a columns[a](y)` for `a` in `0..=max_degree`.
pub fn columns<F: Scalar>(b: &BiSeries<F>, max_degree: usize) -> Vec<Series<F>> {
    (0..=max_degree)
        .map(|a| Series::from_scalars(b.coeffs().iter().map(|p| p.coeff(a)).collect()))
        .collect()
}

/// Inverse of [`columns`]; the result has the smallest column precision.
pub fn from_columns<F: Scalar>(cols: &[Series<F>]) -> BiSeries<F> {
    let prec = cols.iter().map(Series::precision).min().unwrap_or(0);
    Series::new(
        (0..prec)
            .map(|k| Poly::new(cols.iter().map(|c| c.coeff(k).clone()).collect()))
            .collect(),
    )
}

/// First coefficient `(x^a, y^k)` where two bivariate series differ, comparing
/// `y`-powers up to `max_y` and `x`-powers up to `max_x`.
pub fn first_difference<F: Scalar>(
    lhs: &BiSeries<F>,
    rhs: &BiSeries<F>,
    max_x: usize,
    max_y: usize,
) -> Option<(usize, usize, F, F)> {
    for k in 0..=max_y {
        let (a, b) = (lhs.get(k)?, rhs.get(k)?);
        for d in 0..=max_x {
            let (u, v) = (a.coeff(d), b.coeff(d));
            if u != v {
                return Some((d, k, u, v));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    #[test]
    fn monomial_generating_function_is_exp_xy() {
        let polys: Vec<Poly<Rat>> = (0..6).map(Poly::monomial).collect();
        assert_eq!(egf(&polys), exp_xy(5));
    }

    #[test]
    fn y_derivative_of_exp_xy_is_x_times_it() {
        let q = exp_xy::<Rat>(8);
        assert_eq!(q.deriv(), mul_x(&q).truncate(7));
    }

    #[test]
    fn columns_round_trip() {
        let q = exp_xy::<Rat>(5);
        assert_eq!(from_columns(&columns(&q, 5)), q);
    }
}
