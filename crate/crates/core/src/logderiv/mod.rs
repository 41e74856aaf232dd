//! Expansion of the logarithmic derivative `x p_n'(x) / (n p_n(x))` in powers
//! of `1/x`, computed from the generating function `Q = sum p_n y^n / n!`
//! alone, and its dual for the series `f*_n`.
//!
//! With `l = x Q / Q_y` and `w0 = (x/y) Q_x / Q_y` the expansion is
//! `sum_k (-1)^k x^{-k} xi_k(x)`, where `xi_k` is the `y^0` coefficient of
//! `(l (d/dy - n L))^k w0`. Since `deg xi_k <= k(n-2)/(n-1)`, the `x^{-h}`
//! coefficient needs `k <= h(n-1)` only.
//!
//! Two engines compute the same numbers: [`LogDerivContext`] keeps the
//! polynomials `xi_k`, while [`assemble_expansion`] works in the
//! weight-graded form of [`banded`] and scales to the depths needed for
//! larger `n`.

pub mod banded;
mod oracle;

pub use oracle::{binomial_closed_form, binomial_closed_form_family, oracle_logderiv, oracle_poly};

use crate::scalar::Coeff;

use crate::bivariate::{self, BiSeries};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::poly::Poly;
use crate::scalar::{inv_factorial, Scalar};
use crate::series::Series;
use banded::{alternating_sum, dual_embed, neumann_rows, primal_embed, Banded};

fn check_vanishing<F: Scalar>(fam: &Family<F>, upto: usize) -> Result<()> {
    for (n, p) in fam.polys().iter().enumerate().take(upto + 1).skip(1) {
        if !p.coeff(0).is_zero() {
            return Err(Error::PreconditionViolated(format!("p_{n}(0) is not zero")));
        }
    }
    Ok(())
}

/// Neumann depth sufficient for the first `H + 1` coefficients.
pub fn default_depth(n: usize, h: usize) -> usize {
    h * n.saturating_sub(1)
}

/// The series `l` and `w0` as exact elements of `C[x][[y]]` through `y^order`.
#[derive(Clone, Debug)]
pub struct LogDerivContext<F: Scalar> {
    order: usize,
    q: BiSeries<F>,
    l: BiSeries<F>,
    w0: BiSeries<F>,
}

impl<F: Scalar> LogDerivContext<F> {
    /// Needs `p_0..p_{order+1}` and `p_n(0) = 0` for `n >= 1`.
    pub fn new(fam: &Family<F>, order: usize) -> Result<Self> {
        if fam.max_index() < order + 1 {
            return Err(Error::OrderExhausted {
                needed: order + 1,
                available: fam.max_index(),
            });
        }
        check_vanishing(fam, order + 1)?;
        let q = bivariate::egf(&fam.polys()[..=order + 1]);
        let den = bivariate::div_x(&q.deriv())?;
        let qx = bivariate::deriv_x(&q).shift_down(1)?;
        let l = q.truncate(order).div(&den)?;
        let w0 = qx.div(&den)?;
        for (name, s) in [("l", &l), ("w0", &w0)] {
            for (k, c) in s.coeffs().iter().enumerate() {
                let ok = match k {
                    0 => c.is_one_coeff(),
                    _ => c.degree().is_none_or(|d| d < k),
                };
                if !ok {
                    return Err(Error::InconsistentSystem(format!(
                        "{name}_{k} has degree at least {k}"
                    )));
                }
            }
        }
        Ok(LogDerivContext {
            order,
            q: q.truncate(order),
            l,
            w0,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `Q` through `y^order`.
    pub fn q(&self) -> &BiSeries<F> {
        &self.q
    }

    /// `x Q / Q_y`.
    pub fn l(&self) -> &BiSeries<F> {
        &self.l
    }

    /// `(x/y) Q_x / Q_y`.
    pub fn w0(&self) -> &BiSeries<F> {
        &self.w0
    }

    /// `xi_0..xi_depth`.
    pub fn neumann_xi(&self, n: usize, depth: usize) -> Result<Vec<Poly<F>>> {
        if depth > self.order {
            return Err(Error::OrderExhausted {
                needed: depth,
                available: self.order,
            });
        }
        let mut v = self.w0.truncate(depth);
        let mut xi = vec![v.coeff(0).clone()];
        for _ in 0..depth {
            let s: BiSeries<F> = Series::new(
                (0..v.order() as usize)
                    .map(|j| v.coeff(j + 1).scale(&F::from_i64(j as i64 + 1 - n as i64)))
                    .collect(),
            );
            v = self.l.truncate(s.order() as usize).mul(&s);
            xi.push(v.coeff(0).clone());
        }
        Ok(xi)
    }
}

/// `x^{-h}` coefficients `sum_k (-1)^k [x^{k-h}] xi_k` for `h = 0..=H`.
pub fn expansion_from_xi<F: Scalar>(xi: &[Poly<F>], h: usize) -> Vec<F> {
    (0..=h)
        .map(|u| {
            xi.iter()
                .enumerate()
                .skip(u)
                .fold(F::zero(), |acc, (k, p)| {
                    let c = p.coeff(k - u);
                    if k % 2 == 0 {
                        acc + c
                    } else {
                        acc - c
                    }
                })
        })
        .collect()
}

/// Outcome of the degree bound `deg xi_M <= floor(M(n-2)/(n-1))`; for
/// `n = 1` every `xi_M` with `M >= 1` must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degrees: Vec<Option<usize>>,
    /// First `M` exceeding the bound.
    pub violation: Option<usize>,
}

impl DegreeReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

pub fn degree_bound<F: Scalar>(xi: &[Poly<F>], n: usize) -> DegreeReport {
    let degrees: Vec<Option<usize>> = xi.iter().map(Poly::degree).collect();
    let violation = degrees.iter().enumerate().position(|(m, d)| match (d, n) {
        (None, _) => false,
        (Some(_), 1) => m >= 1,
        (Some(d), _) => *d > m * (n - 2) / (n - 1),
    });
    DegreeReport { degrees, violation }
}

/// Computes `xi_0..xi_depth` and checks the degree bound.
pub fn degree_bound_check<F: Scalar>(
    ctx: &LogDerivContext<F>,
    n: usize,
    depth: usize,
) -> Result<DegreeReport> {
    Ok(degree_bound(&ctx.neumann_xi(n, depth)?, n))
}

/// `x^{-h}` coefficients of `x p_n' / (n p_n)`, `h = 0..=H`, from `Q`.
pub fn assemble_expansion<F: Scalar>(fam: &Family<F>, n: usize, h: usize) -> Result<Vec<F>> {
    assemble_expansion_depth(fam, n, h, default_depth(n, h))
}

/// As [`assemble_expansion`] with an explicit Neumann depth. Needs the
/// family through index `depth + 1`.
pub fn assemble_expansion_depth<F: Scalar>(
    fam: &Family<F>,
    n: usize,
    h: usize,
    depth: usize,
) -> Result<Vec<F>> {
    if n == 0 {
        return Err(Error::Invalid("the expansion needs n >= 1".into()));
    }
    if fam.max_index() < depth + 1 {
        return Err(Error::OrderExhausted {
            needed: depth + 1,
            available: fam.max_index(),
        });
    }
    check_vanishing(fam, depth + 1)?;
    let p = fam.polys();
    let q: Vec<Poly<F>> = (0..=depth)
        .map(|j| p[j].scale(&inv_factorial::<F>(j)))
        .collect();
    let den = (0..=depth)
        .map(|j| {
            p[j + 1]
                .div_x()
                .map(|d| d.scale(&inv_factorial::<F>(j)))
                .ok_or_else(|| Error::PreconditionViolated(format!("p_{}(0) is not zero", j + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    let qx: Vec<Poly<F>> = (0..=depth)
        .map(|j| p[j + 1].deriv().scale(&inv_factorial::<F>(j + 1)))
        .collect();
    let den = primal_embed(&den, h)?;
    let l = primal_embed(&q, h)?.div(&den)?;
    let w0 = primal_embed(&qx, h)?.div(&den)?;
    Ok(alternating_sum(&neumann_rows(&l, &w0, n, depth)?, h))
}

/// Expansion of `(t/n) g_n'(t) / g_n(t)` in powers of `t` from the
/// generating function `sum_j s^j g_j(t) / j!`, where `g_j` has valuation `j`
/// and `g_0 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnExpansion<F> {
    pub coeffs: Vec<F>,
    /// `rows[k][u]`: the `t^{k+u}` coefficient of the `k`-th Neumann term.
    pub rows: Vec<Series<F>>,
}

impl<F: Scalar> ColumnExpansion<F> {
    /// First `(k, u)` with a nonzero `t^{k+u}` coefficient below `t^{ceil(kn/(n-1))}`.
    pub fn valuation_violation(&self, n: usize) -> Option<(usize, usize)> {
        if n < 2 {
            return self
                .rows
                .iter()
                .enumerate()
                .skip(1)
                .find_map(|(k, r)| r.valuation().map(|u| (k, u)));
        }
        self.rows.iter().enumerate().find_map(|(k, r)| {
            let bound = (k * n).div_ceil(n - 1) - k;
            (0..bound.min(r.precision()))
                .find(|&u| !r.coeff(u).is_zero())
                .map(|u| (k, u))
        })
    }
}

/// Needs columns `g_0..g_{K+1}` known through `t^{K+H+1}`, `K = H(n-1)`.
pub fn column_logderiv<F: Scalar>(
    cols: &[Series<F>],
    n: usize,
    h: usize,
) -> Result<ColumnExpansion<F>> {
    if n == 0 {
        return Err(Error::Invalid("the expansion needs n >= 1".into()));
    }
    let depth = default_depth(n, h);
    if cols.len() < depth + 2 {
        return Err(Error::OrderExhausted {
            needed: depth + 1,
            available: cols.len().saturating_sub(1),
        });
    }
    let g0 = &cols[0];
    if !g0.coeff(0).is_one_coeff() || g0.coeffs()[1..].iter().any(|c| !c.is_zero()) {
        return Err(Error::PreconditionViolated("g_0 is not 1".into()));
    }
    let q: Vec<Series<F>> = (0..=depth)
        .map(|j| cols[j].scale(&inv_factorial::<F>(j)))
        .collect();
    let den = (0..=depth)
        .map(|j| Ok(cols[j + 1].shift_down(1)?.scale(&inv_factorial::<F>(j))))
        .collect::<Result<Vec<_>>>()?;
    let qt: Vec<Series<F>> = (0..=depth)
        .map(|j| cols[j + 1].deriv().scale(&inv_factorial::<F>(j + 1)))
        .collect();
    let den: Banded<F> = dual_embed(&den, h)?;
    let l = dual_embed(&q, h)?.div(&den)?;
    let w0 = dual_embed(&qt, h)?.div(&den)?;
    let rows = neumann_rows(&l, &w0, n, depth)?;
    Ok(ColumnExpansion {
        coeffs: alternating_sum(&rows, h),
        rows,
    })
}

/// `(t/n) g'(t) / g(t)` through `t^H` for `g` of valuation `n`, directly.
pub fn direct_logderiv<F: Scalar>(g: &Series<F>, n: usize, h: usize) -> Result<Vec<F>> {
    if g.order() < (n + h) as isize {
        return Err(Error::OrderExhausted {
            needed: n + h,
            available: g.order().max(0) as usize,
        });
    }
    let g = g.truncate(n + h);
    let num = g
        .deriv()
        .shift_up(1)
        .shift_down(n)?
        .scale(&(F::one() / F::from_i64(n as i64)));
    Ok(num.div(&g.shift_down(n)?)?.into_coeffs())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualLogDeriv<F> {
    pub engine: ColumnExpansion<F>,
    pub direct: Vec<F>,
}

impl<F: Scalar> DualLogDeriv<F> {
    pub fn matches(&self) -> bool {
        self.engine.coeffs == self.direct
    }
}

/// `(y/n) f*_n' / f*_n` through the role-swapped engine on the columns
/// `f*_j` of `Q`, next to its direct expansion. Needs `f*_0 = 1`.
pub fn dual_fn_logderiv<F: Scalar>(fam: &Family<F>, n: usize, h: usize) -> Result<DualLogDeriv<F>> {
    let dual = fam.dual()?;
    let f0 = dual.f(0);
    if !f0.coeff(0).is_one_coeff() || f0.coeffs()[1..].iter().any(|c| !c.is_zero()) {
        return Err(Error::PreconditionViolated("f*_0 is not 1".into()));
    }
    let engine = column_logderiv(dual.fns(), n, h)?;
    let direct = direct_logderiv(dual.f(n), n, h)?;
    Ok(DualLogDeriv { engine, direct })
}

/// Engine against oracle for one `(n, H)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogDerivResult<F> {
    pub n: usize,
    pub h: usize,
    pub engine: Vec<F>,
    pub oracle: Vec<F>,
    /// Degrees of `xi_0..xi_K` for `K = min(H(n-1), 12)`.
    pub xi_degrees: Vec<Option<usize>>,
}

impl<F: Scalar> LogDerivResult<F> {
    pub fn matches(&self) -> bool {
        self.engine == self.oracle
    }
}

pub const XI_DEGREE_DEPTH: usize = 12;

pub fn run_logderiv<F: Scalar>(fam: &Family<F>, n: usize, h: usize) -> Result<LogDerivResult<F>> {
    let engine = assemble_expansion(fam, n, h)?;
    let oracle = oracle_logderiv(fam, n, h)?;
    let k = default_depth(n, h).min(XI_DEGREE_DEPTH);
    let xi = LogDerivContext::new(fam, k)?.neumann_xi(n, k)?;
    Ok(LogDerivResult {
        n,
        h,
        engine,
        oracle,
        xi_degrees: xi.iter().map(Poly::degree).collect(),
    })
}

/// Table size needed by [`run_logderiv`] and a depth check at `K + 2`.
pub fn required_size(n: usize, h: usize) -> usize {
    default_depth(n, h) + 3
}

/// Table size needed by [`dual_fn_logderiv`].
pub fn required_dual_size(n: usize, h: usize) -> usize {
    default_depth(n, h) + h + 2
}
