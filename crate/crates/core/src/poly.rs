//! Dense univariate polynomials in `x`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Coeff, Scalar};

/// Dense polynomial, coefficients indexed by degree with trailing zeros
/// trimmed. The zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_coeff()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        Self::term(F::one(), k)
    }

    /// `c x^k`.
    pub fn term(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic_of_degree(&self, n: usize) -> bool {
        self.degree() == Some(n) && self.coeffs[n].is_one_coeff()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.times(x).plus(c))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).plus(&rhs.coeff(k))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).minus(&rhs.coeff(k))).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_coeff() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.negated()).collect(),
        }
    }

    /// `d/dx`.
    pub fn deriv(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.times(&F::from_i64(k as i64)))
                .collect(),
        )
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Exact division by `x`; fails when the constant term is nonzero.
    pub fn div_x(&self) -> Option<Self> {
        match self.coeffs.first() {
            None => Some(Self::zero()),
            Some(c) if c.is_zero_coeff() => Some(Poly {
                coeffs: self.coeffs[1..].to_vec(),
            }),
            Some(_) => None,
        }
    }

    /// Division with remainder by a nonzero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::NonUnitDivisor)?;
        let lead_inv = divisor.coeffs[dd].inverse().ok_or(Error::NonUnitDivisor)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].times(&lead_inv);
            if !c.is_zero_coeff() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = rem[k + i].minus(&c.times(d));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Applies a constant-coefficient differential operator `sum_k c_k D^k`.
    pub fn apply_d_series(&self, coeffs: &[F]) -> Self {
        let mut acc = Self::zero();
        let mut current = self.clone();
        for c in coeffs {
            if current.is_zero() {
                break;
            }
            acc = acc.add(&current.scale(c));
            current = current.deriv();
        }
        acc
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<F: Scalar> Coeff for Poly<F> {
    type Field = F;

    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn lift_like(&self, c: F) -> Self {
        Self::constant(c)
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
    fn scaled(&self, c: &F) -> Self {
        self.scale(c)
    }
    fn inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => self.coeffs[0].inverse().map(Self::constant),
            _ => None,
        }
    }
}

impl<F: Scalar> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Writes `sum c_k var^k` from the highest degree down.
pub(crate) fn write_terms<F: Scalar>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, F)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if c.is_zero_coeff() {
            continue;
        }
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let unit = mag == "1";
        match k {
            0 => write!(f, "{mag}")?,
            _ => {
                if !unit {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{k}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<F: Scalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().cloned().enumerate().rev(), "x")
    }
}
