use crate::error::{Error, Result};
use crate::family::Family;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::Series;

/// `x p'(x) / (n p(x))` in powers of `1/x`, `n = deg p`, by long division of
/// the reversed coefficient lists.
pub fn oracle_poly<F: Scalar>(p: &Poly<F>, h: usize) -> Result<Vec<F>> {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => {
            return Err(Error::Invalid(
                "the oracle needs a polynomial of degree at least 1".into(),
            ))
        }
    };
    let cs = p.coeffs();
    let a: Vec<F> = (0..=n).map(|i| cs[n - i].clone()).collect();
    let nn = F::from_i64(n as i64);
    let lead = nn.clone() * a[0].clone();
    let mut c: Vec<F> = Vec::with_capacity(h + 1);
    for k in 0..=h {
        let mut acc = if k <= n {
            F::from_i64((n - k) as i64) * a[k].clone()
        } else {
            F::zero()
        };
        for i in 1..=k.min(n) {
            acc = acc - nn.clone() * a[i].clone() * c[k - i].clone();
        }
        c.push(acc / lead.clone());
    }
    Ok(c)
}

pub fn oracle_logderiv<F: Scalar>(fam: &Family<F>, n: usize, h: usize) -> Result<Vec<F>> {
    if n > fam.max_index() {
        return Err(Error::OrderExhausted {
            needed: n,
            available: fam.max_index(),
        });
    }
    oracle_poly(fam.poly(n), h)
}

/// The expansion for the binomial family of `f`, from `phi = f^{-1}`:
/// the Neumann iteration with `1/phi'` and `phi/(y phi')`, both free of `x`.
pub fn binomial_closed_form<F: Scalar>(f: &Series<F>, n: usize, h: usize) -> Result<Vec<F>> {
    if f.order() < h as isize + 1 {
        return Err(Error::OrderExhausted {
            needed: h + 1,
            available: f.order().max(0) as usize,
        });
    }
    let phi = f.truncate(h + 1).revert()?;
    let dphi = phi.deriv();
    let l = dphi.recip()?;
    let mut v = phi.shift_down(1)?.div(&dphi)?;
    let mut xi = vec![v.coeff(0).clone()];
    for _ in 0..h {
        let s = Series::from_scalars(
            (0..v.order().max(0) as usize)
                .map(|j| v.coeff(j + 1).clone() * F::from_i64(j as i64 + 1 - n as i64))
                .collect(),
        );
        v = l.truncate(s.order() as usize).mul(&s);
        xi.push(v.coeff(0).clone());
    }
    Ok(xi
        .into_iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 0 { c } else { -c })
        .collect())
}

/// [`binomial_closed_form`] for a family known to be binomial.
pub fn binomial_closed_form_family<F: Scalar>(
    fam: &Family<F>,
    n: usize,
    h: usize,
) -> Result<Vec<F>> {
    let f = fam
        .binomial_series()
        .cloned()
        .or_else(|| fam.as_binomial())
        .ok_or(Error::NotBinomial)?;
    binomial_closed_form(&f, n, h)
}
