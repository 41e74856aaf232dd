//! Weight-graded form of the Neumann iteration.
//!
//! A bivariate series whose `s^j` coefficient is a series or polynomial in
//! `t` is stored as `B[j][u]`, the `t`-coefficient of weight `u >= 0`
//! relative to `s^j`. One Neumann step maps weight `u` to weight `u` and
//! products add weights, so keeping `u <= H` is exact for the first `H + 1`
//! coefficients of the expansion.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::Series;

pub type Banded<F> = Series<Series<F>>;

/// Polynomial coefficients of degree at most `j`: `B[j][u] = [x^{j-u}] c_j`.
pub fn primal_embed<F: Scalar>(coeffs: &[Poly<F>], h: usize) -> Result<Banded<F>> {
    let rows = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if c.degree().is_some_and(|d| d > j) {
                return Err(Error::InconsistentSystem(format!(
                    "coefficient of y^{j} has degree above {j}"
                )));
            }
            Ok(Series::from_scalars(
                (0..=h)
                    .map(|u| if u <= j { c.coeff(j - u) } else { F::zero() })
                    .collect(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Series::new(rows))
}

/// Series coefficients of valuation at least `j`: `B[j][u] = [y^{j+u}] c_j`.
pub fn dual_embed<F: Scalar>(coeffs: &[Series<F>], h: usize) -> Result<Banded<F>> {
    let rows = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if c.order() < (j + h) as isize {
                return Err(Error::OrderExhausted {
                    needed: j + h,
                    available: c.order().max(0) as usize,
                });
            }
            if let Some(v) = c.valuation() {
                if v < j {
                    return Err(Error::PreconditionViolated(format!(
                        "column {j} has a y^{v} term"
                    )));
                }
            }
            Ok(Series::from_scalars(
                (0..=h).map(|u| c.coeff(j + u).clone()).collect(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Series::new(rows))
}

/// `(d/ds - n L) V`, then division by `t`: weights are unchanged.
fn step<F: Scalar>(v: &Banded<F>, n: usize) -> Banded<F> {
    let rows = (0..v.precision().saturating_sub(1))
        .map(|j| v.coeff(j + 1).scale(&F::from_i64(j as i64 + 1 - n as i64)))
        .collect();
    Series::new(rows)
}

/// Rows `V_k[0]` for `k = 0..=depth`, where `V_0 = w0` and
/// `V_{k+1} = l (d/ds - n L) V_k / t`.
pub fn neumann_rows<F: Scalar>(
    l: &Banded<F>,
    w0: &Banded<F>,
    n: usize,
    depth: usize,
) -> Result<Vec<Series<F>>> {
    if w0.order() < depth as isize || l.order() + 1 < depth as isize {
        return Err(Error::OrderExhausted {
            needed: depth,
            available: w0.order().min(l.order() + 1).max(0) as usize,
        });
    }
    let mut v = w0.truncate(depth);
    let mut rows = vec![v.coeff(0).clone()];
    for _ in 0..depth {
        let s = step(&v, n);
        v = l.truncate(s.order() as usize).mul(&s);
        rows.push(v.coeff(0).clone());
    }
    Ok(rows)
}

/// `sum_k (-1)^k rows[k][h]` for `h = 0..=H`.
pub fn alternating_sum<F: Scalar>(rows: &[Series<F>], h: usize) -> Vec<F> {
    (0..=h)
        .map(|u| {
            rows.iter().enumerate().fold(F::zero(), |acc, (k, r)| {
                let c = r.coeff(u).clone();
                if k % 2 == 0 {
                    acc + c
                } else {
                    acc - c
                }
            })
        })
        .collect()
}
