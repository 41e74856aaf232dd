use super::Operator;
use crate::bivariate::BiSeries;
use crate::family::Family;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::Series;

/// Multiplication by `x`.
pub fn op_x<F: Scalar>(dim: usize) -> Operator<F> {
    let cols: Vec<_> = (0..=dim).map(|j| Poly::monomial(j + 1)).collect();
    Operator::from_columns(dim, &cols, 1, dim as i64)
}

/// `D = d/dx`.
pub fn op_d<F: Scalar>(dim: usize) -> Operator<F> {
    let cols: Vec<_> = (0..=dim).map(|j| Poly::monomial(j).deriv()).collect();
    Operator::from_columns(dim, &cols, -1, dim as i64)
}

/// `theta = x D`.
pub fn op_theta<F: Scalar>(dim: usize) -> Operator<F> {
    Operator::diagonal(&(0..=dim).map(|j| F::from_i64(j as i64)).collect::<Vec<_>>())
}

/// `G_P x^n = p_n`.
pub fn op_g<F: Scalar>(fam: &Family<F>) -> Operator<F> {
    let n = fam.dim();
    Operator::from_columns(n, &fam.polys()[..=n], 0, n as i64)
}

/// `G_P^{-1} x^n = p*_n`.
pub fn op_ginv<F: Scalar>(fam: &Family<F>) -> Operator<F> {
    let n = fam.dim();
    Operator::from_columns(n, &fam.dual_polys()[..=n], 0, n as i64)
}

/// The standard operators of a family at its operator dimension.
#[derive(Clone, Debug)]
pub struct Calculus<F> {
    pub g: Operator<F>,
    pub ginv: Operator<F>,
    pub x: Operator<F>,
    pub d: Operator<F>,
    pub theta: Operator<F>,
    pub id: Operator<F>,
    /// `U_P = G x G^{-1}`.
    pub u: Operator<F>,
    /// `D_P = G D G^{-1}`.
    pub dp: Operator<F>,
}

impl<F: Scalar> Calculus<F> {
    pub fn new(fam: &Family<F>) -> Self {
        let n = fam.dim();
        let (g, ginv) = (op_g(fam), op_ginv(fam));
        let (x, d) = (op_x(n), op_d(n));
        let u = g.compose(&x.compose(&ginv));
        let dp = g.compose(&d.compose(&ginv));
        Calculus {
            theta: op_theta(n),
            id: Operator::identity(n),
            g,
            ginv,
            x,
            d,
            u,
            dp,
        }
    }

    pub fn dim(&self) -> usize {
        self.id.dim()
    }

    /// `a_{U_P D_P} = G_P a_theta G_P^{-1}`: acts on `p_n` by `values[n]`.
    pub fn diag_p(&self, values: &[F]) -> Operator<F> {
        self.g
            .compose(&Operator::diagonal(values).compose(&self.ginv))
    }
}

/// Which diagonal an index series is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagBasis {
    /// `a_theta`, diagonal on monomials.
    Monomial,
    /// `a_{U_P D_P}`, diagonal on the family.
    Family,
}

/// `ratios[n]` at index `n` evaluated as `sum_k diag(c_k(n)) R^k`, where
/// `c_k(n)` is the `y^k` coefficient of `ratios[n]`.
///
/// Column `j` uses `c_k(m)` for `m + k <= j` only, so the window is the
/// largest `j` with `order(ratios[m]) >= j - m` for every `m <= j`.
pub fn index_series<F: Scalar>(
    calc: &Calculus<F>,
    basis: DiagBasis,
    ratios: &[Series<F>],
    r: &Operator<F>,
) -> Operator<F> {
    let n = calc.dim();
    let mut window = -1i64;
    for j in 0..=n {
        let ok = (0..=j).all(|m| ratios.get(m).is_some_and(|s| s.order() >= (j - m) as isize));
        if !ok {
            break;
        }
        window = j as i64;
    }
    let mut acc: Option<Operator<F>> = None;
    let mut power = Operator::identity(n);
    for k in 0..=n {
        let values: Vec<F> = (0..=n)
            .map(|m| {
                ratios
                    .get(m)
                    .and_then(|s| s.get(k))
                    .cloned()
                    .unwrap_or_else(F::zero)
            })
            .collect();
        if values.iter().any(|v| !v.is_zero()) {
            let diag = match basis {
                DiagBasis::Monomial => Operator::diagonal(&values),
                DiagBasis::Family => calc.diag_p(&values),
            };
            let term = diag.compose(&power);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        power = r.compose(&power);
    }
    acc.unwrap_or_else(|| Operator::zero(n)).with_window(window)
}

/// `sum_k s_k R^k` for a scalar series.
pub fn series_of<F: Scalar>(s: &Series<F>, r: &Operator<F>) -> Operator<F> {
    let f: BiSeries<F> = Series::new(
        s.coeffs()
            .iter()
            .map(|c| Poly::constant(c.clone()))
            .collect(),
    );
    normal_order_subst(&f, &Operator::identity(r.dim()), r)
}

/// Normal-ordered substitution: `F = sum c_{ak} x^a y^k` becomes
/// `sum c_{ak} left^a right^k`.
///
/// Terms beyond the known order of `F` are unknown. When `right` strictly
/// lowers degree they vanish on columns `j <= order(F)`; otherwise no column
/// can be trusted.
pub fn normal_order_subst<F: Scalar>(
    f: &BiSeries<F>,
    left: &Operator<F>,
    right: &Operator<F>,
) -> Operator<F> {
    let n = left.dim();
    let cap = if right.raise() < 0 {
        f.order() as i64
    } else {
        -1
    };
    let max_a = f.coeffs().iter().filter_map(|p| p.degree()).max();
    let Some(max_a) = max_a else {
        return Operator::zero(n).with_window(cap);
    };
    let mut rpow = vec![Operator::identity(n)];
    for k in 1..f.precision() {
        rpow.push(right.compose(&rpow[k - 1]));
    }
    let mut acc: Option<Operator<F>> = None;
    let mut lpow = Operator::identity(n);
    for a in 0..=max_a {
        let mut inner: Option<Operator<F>> = None;
        for (k, p) in f.coeffs().iter().enumerate() {
            let c = p.coeff(a);
            if c.is_zero() {
                continue;
            }
            let term = rpow[k].scale(&c);
            inner = Some(match inner {
                None => term,
                Some(i) => i.add(&term),
            });
        }
        if let Some(inner) = inner {
            let term = lpow.compose(&inner);
            acc = Some(match acc {
                None => term,
                Some(s) => s.add(&term),
            });
        }
        lpow = left.compose(&lpow);
    }
    acc.unwrap_or_else(|| Operator::zero(n)).with_window(cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    #[test]
    fn monomial_family_gives_shift_and_derivative() {
        let calc = Calculus::new(&Family::<Rat>::monomial(6, 6));
        assert_eq!(calc.g, calc.id);
        assert_eq!(calc.u.first_mismatch(&calc.x, calc.u.window()), None);
        assert_eq!(calc.dp, calc.d);
    }

    #[test]
    fn falling_g_column() {
        let calc = Calculus::new(&Family::<Rat>::falling(8, 8));
        assert_eq!(
            calc.g.column(2),
            Poly::new([0, -1, 1].map(Rat::from_i64).to_vec())
        );
        assert_eq!(calc.g.compose(&calc.ginv), calc.id);
    }

    #[test]
    fn diag_with_index_values() {
        let calc = Calculus::new(&Family::<Rat>::qexp(8, 8));
        let values: Vec<Rat> = (0..=8).map(Rat::from_i64).collect();
        let lhs = calc.diag_p(&values);
        let rhs = calc.u.compose(&calc.dp);
        assert_eq!(lhs.first_mismatch(&rhs, rhs.window()), None);
        assert_eq!(rhs.window(), 8);
        assert_eq!(calc.diag_p(&vec![Rat::from_i64(1); 9]), calc.id);
    }

    #[test]
    fn xy_substitution_is_theta() {
        let calc = Calculus::new(&Family::<Rat>::monomial(6, 6));
        let f: BiSeries<Rat> = Series::new(vec![Poly::zero(), Poly::monomial(1), Poly::zero()]);
        let op = normal_order_subst(&f, &calc.x, &calc.d);
        assert_eq!(op.window(), 2);
        assert_eq!(op.first_mismatch(&calc.theta, 6), None);
    }

    #[test]
    fn y_free_substitution_is_left() {
        let calc = Calculus::new(&Family::<Rat>::monomial(6, 6));
        let f: BiSeries<Rat> = Series::new(vec![Poly::monomial(1), Poly::zero(), Poly::zero()]);
        let op = normal_order_subst(&f, &calc.x, &calc.d);
        assert_eq!(op.first_mismatch(&calc.x, op.window()), None);
        assert_eq!(op.window(), 2);
    }
}
