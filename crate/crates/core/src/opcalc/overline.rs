use super::Operator;
use crate::error::{Error, Result};
use crate::scalar::{factorial, inv_factorial, Scalar};
use crate::series::Series;

/// The `y`-side operator `T̄` with `T_x e^{xy} = T̄_y e^{xy}`.
///
/// Column `i` holds `T̄ y^i = sum_n (i!/n!) T[i][n] y^n`. Row `n` needs
/// column `n` of `T`, so only rows up to `T`'s window are trusted; that
/// bound is the `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct OverlineOp<F> {
    dim: usize,
    entries: Vec<Vec<F>>,
    order: i64,
    raise: i64,
}

pub fn overline<F: Scalar>(t: &Operator<F>) -> OverlineOp<F> {
    let n = t.dim();
    let entries = (0..=n)
        .map(|row| {
            (0..=n)
                .map(|i| t.get(i, row).clone() * factorial::<F>(i) * inv_factorial::<F>(row))
                .collect()
        })
        .collect();
    OverlineOp {
        dim: n,
        entries,
        order: t.window(),
        raise: t.raise(),
    }
}

impl<F: Scalar> OverlineOp<F> {
    /// Rows of `y`-powers that are trusted.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficient of `y^row` in `T̄ y^col`.
    pub fn get(&self, row: usize, col: usize) -> &F {
        &self.entries[row][col]
    }

    /// `T̄ l`. The `y^n` coefficient needs `l` through `y^{n + raise}`, so the
    /// result is known through `min(order, order(l) - raise)`.
    pub fn apply(&self, l: &Series<F>) -> Result<Series<F>> {
        let last = self.order.min(l.order() as i64 - self.raise);
        if last < 0 {
            return Err(Error::WindowTooSmall(format!(
                "overline of order {} cannot act on a series of order {}",
                self.order,
                l.order()
            )));
        }
        let cols = l.precision().min(self.dim + 1);
        let out = (0..=last as usize)
            .map(|row| {
                let mut acc = F::zero();
                for i in 0..cols {
                    let (e, c) = (&self.entries[row][i], l.coeff(i));
                    if !e.is_zero() && !c.is_zero() {
                        acc = acc + e.clone() * c.clone();
                    }
                }
                acc
            })
            .collect();
        Ok(Series::from_scalars(out))
    }

    /// Recovers `T` on the trusted columns.
    pub fn to_operator(&self) -> Operator<F> {
        let n = self.dim;
        let rows = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|col| {
                        self.entries[col][i].clone() * factorial::<F>(col) * inv_factorial::<F>(i)
                    })
                    .collect()
            })
            .collect();
        Operator::from_rows(rows, self.raise, self.order).expect("square")
    }
}
