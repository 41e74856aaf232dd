//! Monic polynomial families.
//!
//! A family is stored through all of its equivalent presentations at once:
//! the polynomials `p_0..p_M`, the binomially weighted coefficient table
//! `p_n = sum_k C(n,k) xi[n][k] x^{n-k}`, the dual table
//! `x^n = sum_k C(n,k) xi*[n][k] p_{n-k}`, the dual polynomials
//! `p*_n = G_P^{-1} x^n`, and the series family `f_n(y)` (each known through
//! `y^M`) satisfying `e^{xy} = sum_n p_n(x) f_n(y) / n!`.
//!
//! `M` (the table size) may exceed the operator dimension `N` used by
//! [`crate::opcalc`]; the log-derivative engine needs deeper tables than the
//! operator checks do.

mod construct;
mod source;

pub use construct::{random_xi_table, BUILTINS};
pub use source::FamilySpec;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{binomial, factorial, inv_factorial, Scalar};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq)]
pub struct Family<F: Scalar> {
    label: String,
    dim: usize,
    polys: Vec<Poly<F>>,
    xi: Vec<Vec<F>>,
    xi_star: Vec<Vec<F>>,
    duals: Vec<Poly<F>>,
    fns: Vec<Series<F>>,
    binomial: Option<Series<F>>,
}

impl<F: Scalar> Family<F> {
    /// Builds every presentation from `p_0..p_M`. `dim` is clamped to `M`.
    pub fn from_polys(label: impl Into<String>, polys: Vec<Poly<F>>, dim: usize) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::Invalid("a family needs at least p_0".into()));
        }
        for (n, p) in polys.iter().enumerate() {
            if !p.is_monic_of_degree(n) {
                return Err(Error::BadLeadingCoefficient { index: n });
            }
        }
        let xi = xi_from_polys(&polys);
        let duals = dual_polys(&polys);
        let xi_star = xi_from_polys(&duals);
        let max = polys.len() - 1;
        let fns = (0..=max)
            .map(|n| compute_fn(&xi_star, n, max))
            .collect::<Result<Vec<_>>>()?;
        Ok(Family {
            label: label.into(),
            dim: dim.min(max),
            polys,
            xi,
            xi_star,
            duals,
            fns,
            binomial: None,
        })
    }

    /// Builds from a `xi[n][k]` table (`k <= n`, `xi[n][0] = 1`).
    pub fn from_xi(label: impl Into<String>, table: &[Vec<F>], dim: usize) -> Result<Self> {
        let polys = polys_from_xi(table)?;
        Self::from_polys(label, polys, dim)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Operator dimension `N`: matrices act on `x^0..x^N`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn with_dim(mut self, dim: usize) -> Self {
        self.dim = dim.min(self.max_index());
        self
    }

    /// Table size `M`: polynomials `p_0..p_M` are known.
    pub fn max_index(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn polys(&self) -> &[Poly<F>] {
        &self.polys
    }

    pub fn poly(&self, n: usize) -> &Poly<F> {
        &self.polys[n]
    }

    pub fn xi_table(&self) -> &[Vec<F>] {
        &self.xi
    }

    pub fn xi_star_table(&self) -> &[Vec<F>] {
        &self.xi_star
    }

    /// `xi_k^n`, zero when `k > n`.
    pub fn xi(&self, n: usize, k: usize) -> F {
        self.xi[n].get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn xi_star(&self, n: usize, k: usize) -> F {
        self.xi_star[n].get(k).cloned().unwrap_or_else(F::zero)
    }

    /// Dual polynomials `p*_n = G_P^{-1} x^n`.
    pub fn dual_polys(&self) -> &[Poly<F>] {
        &self.duals
    }

    /// Series family `f_0..f_M`, each known through `y^M`.
    pub fn fns(&self) -> &[Series<F>] {
        &self.fns
    }

    pub fn f(&self, n: usize) -> &Series<F> {
        &self.fns[n]
    }

    /// The series `f` with `f_n = f^n`, when the family was built as binomial.
    pub fn binomial_series(&self) -> Option<&Series<F>> {
        self.binomial.as_ref()
    }

    /// The series `f` when `f_n = f^n` for every known `n`, whether or not the
    /// family was built as binomial.
    pub fn as_binomial(&self) -> Option<Series<F>> {
        if let Some(f) = &self.binomial {
            return Some(f.clone());
        }
        let f = self.fns.get(1)?.clone();
        let mut power = Series::one(self.max_index());
        for fnn in &self.fns {
            if fnn != &power {
                return None;
            }
            power = power.mul(&f);
        }
        Some(f)
    }

    pub(crate) fn set_binomial(&mut self, f: Series<F>) {
        self.binomial = Some(f);
    }

    /// The dual family `P*`. Its tables are this family's tables swapped.
    pub fn dual(&self) -> Result<Self> {
        let mut d = Family::from_polys(
            format!("dual({})", self.label),
            self.duals.clone(),
            self.dim,
        )?;
        if let Some(f) = &self.binomial {
            // Q^{P*} = exp(x f(y)), so the series of P* is the inverse of f.
            d.binomial = Some(f.revert()?);
        }
        Ok(d)
    }
}

/// `xi[n][k] = [x^{n-k}] p_n / C(n, k)`.
fn xi_from_polys<F: Scalar>(polys: &[Poly<F>]) -> Vec<Vec<F>> {
    polys
        .iter()
        .enumerate()
        .map(|(n, p)| {
            (0..=n)
                .map(|k| p.coeff(n - k) / binomial::<F>(n, k))
                .collect()
        })
        .collect()
}

fn polys_from_xi<F: Scalar>(table: &[Vec<F>]) -> Result<Vec<Poly<F>>> {
    table
        .iter()
        .enumerate()
        .map(|(n, row)| {
            if row.len() != n + 1 || !row[0].is_one() {
                return Err(Error::BadLeadingCoefficient { index: n });
            }
            let mut coeffs = vec![F::zero(); n + 1];
            for (k, xi) in row.iter().enumerate() {
                coeffs[n - k] = binomial::<F>(n, k) * xi.clone();
            }
            Ok(Poly::new(coeffs))
        })
        .collect()
}

/// `p*_n = x^n - sum_{m<n} [x^m] p_n * p*_m`, i.e. `G_P^{-1} x^n` by forward
/// substitution on the unitriangular change of basis.
fn dual_polys<F: Scalar>(polys: &[Poly<F>]) -> Vec<Poly<F>> {
    let mut duals: Vec<Poly<F>> = Vec::with_capacity(polys.len());
    for (n, p) in polys.iter().enumerate() {
        let mut acc = Poly::monomial(n);
        for (m, dual) in duals.iter().enumerate() {
            let c = p.coeff(m);
            if !c.is_zero() {
                acc = acc.sub(&dual.scale(&c));
            }
        }
        duals.push(acc);
    }
    duals
}

/// Inverts a `xi` table: returns the `xi*` table of the same family.
pub fn dual_xi<F: Scalar>(table: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
    let polys = polys_from_xi(table)?;
    Ok(xi_from_polys(&dual_polys(&polys)))
}

/// `f_n(y) = sum_k y^{n+k} xi*[n+k][k] / k!`, known through `y^order`.
pub fn compute_fn<F: Scalar>(xi_star: &[Vec<F>], n: usize, order: usize) -> Result<Series<F>> {
    if xi_star.len() < order + 1 {
        return Err(Error::InsufficientTable {
            needed: order,
            available: xi_star.len().saturating_sub(1),
        });
    }
    let mut coeffs = vec![F::zero(); order + 1];
    for m in n..=order {
        let k = m - n;
        coeffs[m] = xi_star[m][k].clone() * inv_factorial::<F>(k);
    }
    Ok(Series::from_scalars(coeffs))
}

/// Both sides of the vanishing lemma: `f_0 = 1` and `p_n(0) = 0` for `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub f0_is_one: bool,
    pub all_vanish: bool,
}

pub fn vanish_lemma_check<F: Scalar>(fam: &Family<F>) -> Result<LemmaReport> {
    let max = fam.max_index();
    let f0_is_one = fam.f(0) == &Series::one(max);
    let all_vanish = fam.polys()[1..].iter().all(|p| p.coeff(0).is_zero());
    if f0_is_one != all_vanish {
        return Err(Error::LemmaViolation {
            f0_is_one,
            all_vanish,
        });
    }
    Ok(LemmaReport {
        f0_is_one,
        all_vanish,
    })
}

/// The family `p~_n = f_0(D) p_{n+1}(x) / x` together with the series
/// `f~_n = (f_{n+1} / f_0)' / (n + 1)` computed directly from `f`.
#[derive(Clone, Debug)]
pub struct TildeFamily<F: Scalar> {
    pub family: Family<F>,
    pub fns_formula: Vec<Series<F>>,
}

pub fn tilde_family<F: Scalar>(fam: &Family<F>) -> Result<TildeFamily<F>> {
    let max = fam.max_index();
    if max < 1 {
        return Err(Error::InsufficientTable {
            needed: 1,
            available: max,
        });
    }
    let f0 = fam.f(0);
    let polys = (0..max)
        .map(|n| {
            fam.poly(n + 1)
                .apply_d_series(f0.coeffs())
                .div_x()
                .ok_or(Error::NonzeroRemainder { index: n + 1 })
        })
        .collect::<Result<Vec<_>>>()?;
    let family = Family::from_polys(format!("tilde({})", fam.label()), polys, fam.dim())?;
    let fns_formula = (0..max)
        .map(|n| {
            Ok(fam
                .f(n + 1)
                .div(f0)?
                .deriv()
                .scale(&F::ratio(1, n as i64 + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    if fns_formula != family.fns {
        return Err(Error::InconsistentSystem(
            "tilde series disagree with the synthesized series family".into(),
        ));
    }
    Ok(TildeFamily {
        family,
        fns_formula,
    })
}

/// A coefficient `x^a y^b` where `sum p_n f_n / n!` differs from `e^{xy}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GfMismatch<F> {
    pub x_power: usize,
    pub y_power: usize,
    pub lhs: F,
    pub rhs: F,
}

/// Compares `sum_{n <= window} p_n(x) f_n(y) / n!` with `e^{xy}` on all
/// monomials `x^a y^b` with `a, b <= window` (clamped to the table size).
pub fn check_gf_identity<F: Scalar>(fam: &Family<F>, window: usize) -> Option<GfMismatch<F>> {
    let window = window.min(fam.max_index());
    for b in 0..=window {
        for a in 0..=window {
            let mut lhs = F::zero();
            for n in a..=b {
                let c = fam.poly(n).coeff(a);
                if c.is_zero() {
                    continue;
                }
                lhs = lhs + c * fam.f(n).coeff(b).clone() * inv_factorial::<F>(n);
            }
            let rhs = if a == b {
                inv_factorial::<F>(a)
            } else {
                F::zero()
            };
            if lhs != rhs {
                return Some(GfMismatch {
                    x_power: a,
                    y_power: b,
                    lhs,
                    rhs,
                });
            }
        }
    }
    None
}

/// `m! / n!` for `n <= m`.
pub(crate) fn factorial_ratio<F: Scalar>(m: usize, n: usize) -> F {
    factorial::<F>(m) * inv_factorial::<F>(n)
}
