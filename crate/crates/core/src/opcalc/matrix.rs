use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Truncated linear operator on `span{x^0..x^N}`.
///
/// Column `j` holds the coordinates of `T x^j`. `raise` bounds the degree
/// change (`deg T x^j <= j + raise`) and `window` is the largest `j` for which
/// column `j` agrees with the untruncated operator; `-1` means no column is
/// trusted.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<F> {
    dim: usize,
    entries: Vec<F>,
    raise: i64,
    window: i64,
}

/// First entry where two operators differ inside a window.
#[derive(Clone, Debug, PartialEq)]
pub struct EntryMismatch<F> {
    pub column: usize,
    pub row: usize,
    pub lhs: F,
    pub rhs: F,
}

impl<F: Scalar> Operator<F> {
    /// `rows[i][j]` is the coefficient of `x^i` in `T x^j`.
    pub fn from_rows(rows: Vec<Vec<F>>, raise: i64, window: i64) -> Result<Self> {
        let size = rows.len();
        if size == 0 || rows.iter().any(|r| r.len() != size) {
            return Err(Error::DimensionMismatch(
                "operator rows must form a square matrix".into(),
            ));
        }
        let entries = rows.into_iter().flatten().collect();
        Ok(Operator {
            dim: size - 1,
            entries,
            raise,
            window,
        }
        .normalized())
    }

    pub fn zero(dim: usize) -> Self {
        Operator {
            dim,
            entries: vec![F::zero(); (dim + 1) * (dim + 1)],
            raise: 0,
            window: dim as i64,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![F::one(); dim + 1])
    }

    /// `x^n -> values[n] x^n`.
    pub fn diagonal(values: &[F]) -> Self {
        let dim = values.len() - 1;
        let mut op = Self::zero(dim);
        for (j, v) in values.iter().enumerate() {
            op.set(j, j, v.clone());
        }
        op
    }

    /// Operator with `T x^j = cols[j]`; terms above `x^N` are dropped.
    pub fn from_columns(dim: usize, cols: &[Poly<F>], raise: i64, window: i64) -> Self {
        let mut op = Self::zero(dim);
        for (j, p) in cols.iter().enumerate().take(dim + 1) {
            for (i, c) in p.coeffs().iter().enumerate().take(dim + 1) {
                op.set(i, j, c.clone());
            }
        }
        op.raise = raise;
        op.window = window;
        op.normalized()
    }

    fn normalized(mut self) -> Self {
        let n = self.dim as i64;
        self.window = self.window.min(n).min(n - self.raise).max(-1);
        self
    }

    /// `N`; the matrix is `(N+1) x (N+1)`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn raise(&self) -> i64 {
        self.raise
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn with_window(mut self, window: i64) -> Self {
        self.window = self.window.min(window);
        self.normalized()
    }

    pub fn with_raise(mut self, raise: i64) -> Self {
        self.raise = raise;
        self.normalized()
    }

    pub fn get(&self, row: usize, col: usize) -> &F {
        &self.entries[row * (self.dim + 1) + col]
    }

    fn set(&mut self, row: usize, col: usize, v: F) {
        let n = self.dim + 1;
        self.entries[row * n + col] = v;
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        self.entries
            .chunks(self.dim + 1)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn column(&self, j: usize) -> Poly<F> {
        Poly::new((0..=self.dim).map(|i| self.get(i, j).clone()).collect())
    }

    /// Applies the matrix to a polynomial of degree at most `N`.
    pub fn apply(&self, p: &Poly<F>) -> Poly<F> {
        let mut out = vec![F::zero(); self.dim + 1];
        for (j, c) in p.coeffs().iter().enumerate().take(self.dim + 1) {
            if c.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let e = self.get(i, j);
                if !e.is_zero() {
                    *o = o.clone() + e.clone() * c.clone();
                }
            }
        }
        Poly::new(out)
    }

    fn check_dim(&self, rhs: &Self) {
        assert_eq!(self.dim, rhs.dim, "operators of different sizes");
    }

    /// Composition `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Self {
        self.check_dim(rhs);
        let n = self.dim + 1;
        let mut out = vec![F::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] = out[i * n + j].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Operator {
            dim: self.dim,
            entries: out,
            raise: self.raise + rhs.raise,
            window: rhs.window.min(self.window - rhs.raise),
        }
        .normalized()
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        self.check_dim(rhs);
        Operator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
            raise: self.raise.max(rhs.raise),
            window: self.window.min(rhs.window),
        }
        .normalized()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Operator {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a.clone() * c.clone()).collect(),
            raise: self.raise,
            window: self.window,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    /// Compares all rows of columns `0..=window`.
    pub fn first_mismatch(&self, rhs: &Self, window: i64) -> Option<EntryMismatch<F>> {
        self.check_dim(rhs);
        if window < 0 {
            return None;
        }
        let last = (window as usize).min(self.dim);
        for j in 0..=last {
            for i in 0..=self.dim {
                let (a, b) = (self.get(i, j), rhs.get(i, j));
                if a != b {
                    return Some(EntryMismatch {
                        column: j,
                        row: i,
                        lhs: a.clone(),
                        rhs: b.clone(),
                    });
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn r(n: i64) -> Rat {
        Rat::from_i64(n)
    }

    fn x_op(dim: usize) -> Operator<Rat> {
        let cols: Vec<_> = (0..=dim).map(|j| Poly::monomial(j + 1)).collect();
        Operator::from_columns(dim, &cols, 1, dim as i64)
    }

    fn d_op(dim: usize) -> Operator<Rat> {
        let cols: Vec<_> = (0..=dim).map(|j| Poly::monomial(j).deriv()).collect();
        Operator::from_columns(dim, &cols, -1, dim as i64)
    }

    #[test]
    fn multiplication_by_x_loses_last_column() {
        assert_eq!(x_op(4).window(), 3);
    }

    #[test]
    fn canonical_commutator() {
        let (x, d) = (x_op(5), d_op(5));
        let c = d.compose(&x).sub(&x.compose(&d));
        assert_eq!(c.window(), 4);
        assert_eq!(c.first_mismatch(&Operator::identity(5), c.window()), None);
        // the last column is garbage
        assert!(c.first_mismatch(&Operator::identity(5), 5).is_some());
    }

    #[test]
    fn signed_raise_keeps_window() {
        // x D has raise 0 and is exact everywhere
        let theta = x_op(4).compose(&d_op(4));
        assert_eq!(theta.window(), 4);
        assert_eq!(theta, Operator::diagonal(&[r(0), r(1), r(2), r(3), r(4)]));
    }

    #[test]
    fn apply_and_columns() {
        let d = d_op(3);
        assert_eq!(
            d.apply(&Poly::new(vec![r(1), r(1), r(1), r(1)])),
            Poly::new(vec![r(1), r(2), r(3)])
        );
        assert_eq!(d.column(3), Poly::new(vec![r(0), r(0), r(3)]));
    }

    #[test]
    fn rows_round_trip() {
        let d = d_op(3);
        assert_eq!(Operator::from_rows(d.rows(), -1, 3).unwrap(), d);
        assert!(Operator::<Rat>::from_rows(vec![vec![r(1), r(2)]], 0, 0).is_err());
    }
}
