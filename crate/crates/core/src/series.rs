//! Truncated power series in a single variable (`y` unless stated otherwise)
//! over any [`Coeff`] ring.
//!
//! A series stores its known coefficients `c_0..c_N`; `N` is its order. Binary
//! operations truncate to the smaller operand order, unary calculus
//! operations (`deriv`, `zero_derivative`, `shift_down`) lose what they must,
//! and nothing is ever padded silently. An empty coefficient list means
//! "nothing known" and has order `-1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::write_terms;
use crate::scalar::{Coeff, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

impl<R: Coeff> Series<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        Series { coeffs }
    }

    /// Constant series `c + O(y^{order+1})`.
    pub fn constant(c: R, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = c;
        Series { coeffs }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Number of known coefficients.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn order(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn get(&self, k: usize) -> Option<&R> {
        self.coeffs.get(k)
    }

    /// Index of the first nonzero coefficient among the known ones.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero_coeff())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series {
            coeffs: self.coeffs.iter().take(order + 1).cloned().collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.plus(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.minus(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn scale(&self, c: &R::Field) -> Self {
        self.map(|a| a.scaled(c))
    }

    /// Multiplies every coefficient by a ring element.
    pub fn mul_coeff(&self, c: &R) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn map(&self, f: impl Fn(&R) -> R) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut out: Vec<R> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[0].zero_like();
            for i in 0..=k {
                let (a, b) = (&self.coeffs[i], &rhs.coeffs[k - i]);
                if a.is_zero_coeff() || b.is_zero_coeff() {
                    continue;
                }
                acc = acc.plus(&a.times(b));
            }
            out.push(acc);
        }
        Series { coeffs: out }
    }

    /// `self / rhs`; the constant term of `rhs` must be a unit.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        if n == 0 {
            return Ok(Series { coeffs: Vec::new() });
        }
        let inv = rhs.coeffs[0].inverse().ok_or(Error::NonUnitDivisor)?;
        let mut q: Vec<R> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                let b = &rhs.coeffs[i];
                if b.is_zero_coeff() || q[k - i].is_zero_coeff() {
                    continue;
                }
                acc = acc.minus(&b.times(&q[k - i]));
            }
            q.push(acc.times(&inv));
        }
        Ok(Series { coeffs: q })
    }

    pub fn recip(&self) -> Result<Self> {
        match self.coeffs.first() {
            None => Ok(self.clone()),
            Some(c0) => Series::constant(c0.one_like(), self.coeffs.len() - 1).div(self),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let Some(c0) = self.coeffs.first() else {
            return self.clone();
        };
        let mut acc = Series::constant(c0.one_like(), self.coeffs.len() - 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal derivative; the order drops by one.
    pub fn deriv(&self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scaled(&R::Field::from_i64(k as i64)))
                .collect(),
        }
    }

    /// The 0-derivative `L g = (g - g(0)) / y`: a plain coefficient shift.
    pub fn zero_derivative(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().skip(1).cloned().collect(),
        }
    }

    /// Exact division by `y^k`, failing if a coefficient below `y^k` is nonzero.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if let Some(index) = self.coeffs.iter().take(k).position(|c| !c.is_zero_coeff()) {
            return Err(Error::NonzeroLowTerms { shift: k, index });
        }
        Ok(Series {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    /// Multiplication by `y^k`; the order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let Some(c0) = self.coeffs.first() else {
            return self.clone();
        };
        let mut coeffs = vec![c0.zero_like(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Formal exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        let Some(c0) = self.coeffs.first() else {
            return Ok(self.clone());
        };
        if !c0.is_zero_coeff() {
            return Err(Error::BadConstantTerm("exp needs a zero constant term"));
        }
        // k e_k = sum_{j=1}^k j a_j e_{k-j}
        let n = self.coeffs.len();
        let mut e: Vec<R> = Vec::with_capacity(n);
        e.push(c0.one_like());
        for k in 1..n {
            let mut acc = c0.zero_like();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if a.is_zero_coeff() {
                    continue;
                }
                acc = acc.plus(&a.times(&e[k - j]).scaled(&R::Field::from_i64(j as i64)));
            }
            e.push(acc.scaled(&R::Field::ratio(1, k as i64)));
        }
        Ok(Series { coeffs: e })
    }

    /// Formal logarithm of a series with constant term one.
    pub fn log(&self) -> Result<Self> {
        let Some(c0) = self.coeffs.first() else {
            return Ok(self.clone());
        };
        if !c0.is_one_coeff() {
            return Err(Error::BadConstantTerm("log needs constant term 1"));
        }
        let ratio = self.deriv().div(self)?;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(c0.zero_like());
        for (k, c) in ratio.coeffs.iter().enumerate() {
            coeffs.push(c.scaled(&R::Field::ratio(1, k as i64 + 1)));
        }
        Ok(Series { coeffs })
    }

    /// Substitutes `self` (zero constant term) into a scalar series:
    /// `outer(self(y))`, truncated to the common order.
    pub fn substitute_into(&self, outer: &Series<R::Field>) -> Result<Self> {
        let Some(c0) = self.coeffs.first() else {
            return Ok(self.clone());
        };
        if !c0.is_zero_coeff() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.coeffs.len().min(outer.coeffs.len());
        if n == 0 {
            return Ok(Series { coeffs: Vec::new() });
        }
        let inner = self.truncate(n - 1);
        // Horner: (((o_m) s + o_{m-1}) s + ...) + o_0
        let mut acc = Series::constant(c0.lift_like(outer.coeffs[n - 1].clone()), n - 1);
        for k in (0..n - 1).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].plus(&c0.lift_like(outer.coeffs[k].clone()));
        }
        Ok(acc)
    }
}

impl<F: Scalar> Series<F> {
    pub fn zero(order: usize) -> Self {
        Series::constant(F::zero(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::constant(F::one(), order)
    }

    /// The series `y` at the given order (`order >= 1`).
    pub fn variable(order: usize) -> Self {
        Self::monomial(1, order)
    }

    /// `y^k + O(y^{order+1})`.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = F::one();
        }
        s
    }

    pub fn from_scalars(coeffs: Vec<F>) -> Self {
        Series { coeffs }
    }

    /// `exp(y)` to the given order.
    pub fn exp_y(order: usize) -> Self {
        let mut c = F::one();
        let mut coeffs = Vec::with_capacity(order + 1);
        for k in 0..=order {
            if k > 0 {
                c = c * F::ratio(1, k as i64);
            }
            coeffs.push(c.clone());
        }
        Series { coeffs }
    }

    /// Functional inverse of `f` in `y + y^2 F[[y]]` (an invertible linear
    /// coefficient is also accepted), by Newton iteration on composition.
    pub fn revert(&self) -> Result<Self> {
        if self.coeffs.len() < 2
            || !self.coeffs[0].is_zero_coeff()
            || self.coeffs[1].is_zero_coeff()
        {
            return Err(Error::BadLowestTerms);
        }
        let order = self.coeffs.len() - 1;
        let lin_inv = self.coeffs[1].inverse().ok_or(Error::BadLowestTerms)?;
        let df = self.deriv();
        // phi correct modulo y^{known}
        let mut phi = vec![F::zero(), lin_inv];
        let mut known = 2usize;
        while known < order + 1 {
            known = (2 * known).min(order + 1);
            phi.resize(known, F::zero());
            let phi_s = Series::from_scalars(phi.clone());
            let f_at = phi_s.substitute_into(&self.truncate(known - 1))?;
            let mut df_at = phi_s
                .truncate(known - 2)
                .substitute_into(&df.truncate(known - 2))?;
            // residual vanishes to order >= 2, so f'(phi) is needed one term short
            df_at.coeffs.push(F::zero());
            let mut residual = f_at;
            residual.coeffs[1] = residual.coeffs[1].clone() - F::one();
            let step = residual.div(&df_at)?;
            phi = phi_s.sub(&step).coeffs;
        }
        phi.truncate(order + 1);
        Ok(Series { coeffs: phi })
    }

    pub fn eval_zero(&self) -> F {
        self.coeffs.first().cloned().unwrap_or_else(F::zero)
    }
}

impl<F: Scalar> fmt::Display for Series<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().cloned().enumerate(), "y")?;
        write!(f, " + O(y^{})", self.coeffs.len())
    }
}

impl<R: Coeff> Coeff for Series<R> {
    type Field = R::Field;

    fn zero_like(&self) -> Self {
        self.map(|c| c.zero_like())
    }
    fn one_like(&self) -> Self {
        match self.coeffs.first() {
            None => self.clone(),
            Some(c0) => Series::constant(c0.one_like(), self.coeffs.len() - 1),
        }
    }
    fn lift_like(&self, c: R::Field) -> Self {
        match self.coeffs.first() {
            None => self.clone(),
            Some(c0) => Series::constant(c0.lift_like(c), self.coeffs.len() - 1),
        }
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, c: &R::Field) -> Self {
        self.scale(c)
    }
    fn inverse(&self) -> Option<Self> {
        self.coeffs.first()?.inverse()?;
        self.recip().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn s(cs: &[(i64, i64)]) -> Series<Rat> {
        Series::from_scalars(cs.iter().map(|&(n, d)| Rat::ratio(n, d)).collect())
    }

    fn ints(cs: &[i64]) -> Series<Rat> {
        Series::from_scalars(cs.iter().map(|&c| Rat::from_i64(c)).collect())
    }

    /// exp(y) - 1
    fn expm1(order: usize) -> Series<Rat> {
        let mut e = Series::<Rat>::exp_y(order);
        e.coeffs[0] = Rat::from_i64(0);
        e
    }

    /// ln(1 + y)
    fn log1p(order: usize) -> Series<Rat> {
        Series::from_scalars(
            (0..=order)
                .map(|k| match k {
                    0 => Rat::from_i64(0),
                    k if k % 2 == 1 => Rat::ratio(1, k as i64),
                    k => Rat::ratio(-1, k as i64),
                })
                .collect(),
        )
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(
            ints(&[1, 1, 0, 0]).mul(&ints(&[1, -1, 0, 0])),
            ints(&[1, 0, -1, 0])
        );
    }

    #[test]
    fn geometric_series_telescopes() {
        assert_eq!(
            ints(&[1; 6]).mul(&ints(&[1, -1, 0, 0, 0, 0])),
            Series::one(5)
        );
    }

    #[test]
    fn square_of_y_plus_y2() {
        let f = ints(&[0, 1, 1, 0, 0, 0]);
        assert_eq!(f.mul(&f), ints(&[0, 0, 1, 2, 1, 0]));
    }

    #[test]
    fn product_truncates_to_smaller_order() {
        assert_eq!(ints(&[1, 1, 1]).mul(&ints(&[1, 1])).order(), 1);
    }

    #[test]
    fn geometric_inverse() {
        assert_eq!(
            Series::one(5).div(&ints(&[1, -1, 0, 0, 0, 0])).unwrap(),
            ints(&[1; 6])
        );
    }

    #[test]
    fn division_after_explicit_shift() {
        let a = ints(&[0, 1, 1, 0]).shift_down(1).unwrap();
        let b = ints(&[0, 1, 0, 0]).shift_down(1).unwrap();
        assert_eq!(a.div(&b).unwrap(), ints(&[1, 1, 0]));
    }

    #[test]
    fn division_by_nonunit_is_rejected() {
        assert_eq!(
            ints(&[1, 2]).div(&ints(&[0, 1])),
            Err(Error::NonUnitDivisor)
        );
    }

    #[test]
    fn ratio_of_powers_of_expm1() {
        let f = expm1(8);
        let f1 = f.clone();
        let f2 = f.mul(&f);
        let q = f2
            .shift_down(1)
            .unwrap()
            .div(&f1.shift_down(1).unwrap())
            .unwrap();
        // multiply back
        assert_eq!(q.mul(&f1.shift_down(1).unwrap()), f2.shift_down(1).unwrap());
        assert_eq!(q, expm1(7));
    }

    #[test]
    fn compose_with_identity_inner() {
        let e = Series::<Rat>::exp_y(6);
        assert_eq!(Series::variable(6).substitute_into(&e).unwrap(), e);
    }

    #[test]
    fn expm1_after_log1p_is_y() {
        let r = log1p(8).substitute_into(&expm1(8)).unwrap();
        assert_eq!(r, Series::variable(8));
    }

    #[test]
    fn compose_square_into_y_plus_y2() {
        let outer = ints(&[0, 0, 1, 0, 0, 0]);
        let inner = ints(&[0, 1, 1, 0, 0, 0]);
        assert_eq!(
            inner.substitute_into(&outer).unwrap(),
            ints(&[0, 0, 1, 2, 1, 0])
        );
    }

    #[test]
    fn compose_rejects_constant_inner() {
        assert_eq!(
            ints(&[1, 1]).substitute_into(&ints(&[0, 1])),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn revert_identity() {
        assert_eq!(
            Series::<Rat>::variable(7).revert().unwrap(),
            Series::variable(7)
        );
    }

    #[test]
    fn revert_expm1_is_log1p() {
        let phi = expm1(9).revert().unwrap();
        assert_eq!(phi, log1p(9));
        assert_eq!(
            &phi.coeffs()[1..5],
            s(&[(1, 1), (-1, 2), (1, 3), (-1, 4)]).coeffs()
        );
    }

    #[test]
    fn revert_y_plus_y2_gives_signed_catalan() {
        let phi = ints(&[0, 1, 1, 0, 0, 0, 0]).revert().unwrap();
        assert_eq!(phi, ints(&[0, 1, -1, 2, -5, 14, -42]));
    }

    #[test]
    fn revert_rejects_bad_lowest_terms() {
        assert_eq!(ints(&[1, 1, 0]).revert(), Err(Error::BadLowestTerms));
        assert_eq!(ints(&[0, 0, 1]).revert(), Err(Error::BadLowestTerms));
    }

    #[test]
    fn exp_and_log_defining_series() {
        assert_eq!(Series::<Rat>::zero(4).exp().unwrap(), Series::one(4));
        assert_eq!(
            Series::<Rat>::variable(3).exp().unwrap(),
            s(&[(1, 1), (1, 1), (1, 2), (1, 6)])
        );
        assert_eq!(
            ints(&[1, 1, 0, 0]).log().unwrap(),
            s(&[(0, 1), (1, 1), (-1, 2), (1, 3)])
        );
    }

    #[test]
    fn exp_log_reject_bad_constants() {
        assert!(matches!(
            ints(&[1, 1]).exp(),
            Err(Error::BadConstantTerm(_))
        ));
        assert!(matches!(
            ints(&[2, 1]).log(),
            Err(Error::BadConstantTerm(_))
        ));
    }

    #[test]
    fn zero_derivative_shifts() {
        assert_eq!(ints(&[1, 2, 3]).zero_derivative(), ints(&[2, 3]));
        assert!(ints(&[7, 0, 0]).zero_derivative().is_zero());
    }

    #[test]
    fn derivative_of_cube() {
        assert_eq!(ints(&[0, 0, 0, 1]).deriv(), ints(&[0, 0, 3]));
    }

    #[test]
    fn shift_down_refuses_nonzero_low_terms() {
        assert_eq!(
            ints(&[0, 1, 1]).shift_down(2),
            Err(Error::NonzeroLowTerms { shift: 2, index: 1 })
        );
    }

    #[test]
    fn float_series_work_too() {
        let e: Series<f64> = Series::<f64>::variable(4).exp().unwrap();
        assert!((e.coeff(4) - 1.0 / 24.0).abs() < 1e-15);
        let back = e.log().unwrap();
        assert!((back.coeff(1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn display_shows_truncation() {
        assert_eq!(
            s(&[(1, 1), (-1, 2), (0, 1)]).to_string(),
            "1 - 1/2*y + O(y^3)"
        );
    }
}
