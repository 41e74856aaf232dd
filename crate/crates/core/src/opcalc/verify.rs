use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::build::{index_series, normal_order_subst, series_of, Calculus, DiagBasis};
use super::overline::overline;
use super::Operator;
use crate::bivariate::{self, BiSeries};
use crate::error::{Error, Result};
use crate::family::{tilde_family, Family};
use crate::poly::Poly;
use crate::scalar::{binomial, inv_factorial, Scalar};
use crate::series::Series;

/// Stable names of the identity catalog, in report order.
pub const CATALOG: [&str; 11] = [
    "commutator",
    "xi-repr",
    "change-of-basis",
    "prop-dp",
    "prop-x",
    "dpk",
    "conj-dp",
    "repr-theorem",
    "theta-corollary",
    "eigen-q",
    "overline-consistency",
];

pub const DEFAULT_SEED: u64 = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// First differing coefficient: `column` is the basis index acted on,
    /// `row` the output coordinate.
    Mismatch {
        column: usize,
        row: usize,
        lhs: String,
        rhs: String,
    },
    /// Nothing was compared, which never counts as a pass.
    EmptyWindow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub window: i64,
    pub status: Status,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub identity: String,
    pub family: String,
    pub dim: usize,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
}

impl Report {
    fn new<F: Scalar>(identity: &str, fam: &Family<F>) -> Self {
        Report {
            identity: identity.to_string(),
            family: fam.label().to_string(),
            dim: fam.dim(),
            seed: None,
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    fn ops<F: Scalar>(&mut self, name: impl Into<String>, lhs: &Operator<F>, rhs: &Operator<F>) {
        self.checks.push(compare_ops(name, lhs, rhs));
    }
}

/// Compares two operators on the columns both of them trust.
pub fn compare_ops<F: Scalar>(
    name: impl Into<String>,
    lhs: &Operator<F>,
    rhs: &Operator<F>,
) -> Check {
    let window = lhs.window().min(rhs.window());
    let status = if window < 0 {
        Status::EmptyWindow
    } else {
        match lhs.first_mismatch(rhs, window) {
            None => Status::Pass,
            Some(m) => Status::Mismatch {
                column: m.column,
                row: m.row,
                lhs: m.lhs.to_string(),
                rhs: m.rhs.to_string(),
            },
        }
    };
    Check {
        name: name.into(),
        window,
        status,
    }
}

/// Compares two lists of series (`lhs[j]` against `rhs[j]`) on common
/// precision; `window` is the smallest number of compared coefficients minus one.
fn compare_series<F: Scalar>(
    name: impl Into<String>,
    lhs: &[Series<F>],
    rhs: &[Series<F>],
) -> Check {
    let mut window = i64::MAX;
    for (j, (a, b)) in lhs.iter().zip(rhs).enumerate() {
        let n = a.precision().min(b.precision());
        window = window.min(n as i64 - 1);
        for k in 0..n {
            if a.coeff(k) != b.coeff(k) {
                return Check {
                    name: name.into(),
                    window: n as i64 - 1,
                    status: Status::Mismatch {
                        column: j,
                        row: k,
                        lhs: a.coeff(k).to_string(),
                        rhs: b.coeff(k).to_string(),
                    },
                };
            }
        }
    }
    let window = if window == i64::MAX { -1 } else { window };
    let status = if window < 0 {
        Status::EmptyWindow
    } else {
        Status::Pass
    };
    Check {
        name: name.into(),
        window,
        status,
    }
}

/// `f_{n+k} / f_n` with both sides divided by `y^n`. Unknown `f_{n+k}` is
/// treated as `O(y^k)`.
fn shift_ratio<F: Scalar>(fns: &[Series<F>], n: usize, k: usize) -> Result<Series<F>> {
    let den = fns[n]
        .shift_down(n)
        .map_err(|_| Error::RatioValuation { index: n })?;
    match fns.get(n + k) {
        Some(num) => num
            .shift_down(n)
            .map_err(|_| Error::RatioValuation { index: n })?
            .div(&den),
        None => Ok(Series::from_scalars(vec![F::zero(); k])),
    }
}

/// `num_n / den_n` after removing `y^n` from both.
fn valuation_ratio<F: Scalar>(num: &Series<F>, den: &Series<F>, n: usize) -> Result<Series<F>> {
    let num = if num.precision() <= n {
        Series::from_scalars(Vec::new())
    } else {
        num.shift_down(n)
            .map_err(|_| Error::RatioValuation { index: n })?
    };
    let den = den
        .shift_down(n)
        .map_err(|_| Error::RatioValuation { index: n })?;
    num.div(&den)
}

fn ratio_table<F: Scalar>(fam: &Family<F>, k: usize) -> Result<Vec<Series<F>>> {
    (0..=fam.dim())
        .map(|n| shift_ratio(fam.fns(), n, k))
        .collect()
}

/// `Q^P = sum_n p_n y^n / n!` for `n <= order`.
fn gen_fn<F: Scalar>(fam: &Family<F>, order: usize) -> BiSeries<F> {
    bivariate::egf(&fam.polys()[..=order.min(fam.max_index())])
}

/// `Q^{P*} = sum_j x^j f_j(y) / j!` through `y^order`; the `y^k` coefficient
/// only involves `j <= k`, so truncating `x`-degrees at `order` is exact.
fn dual_gen_fn<F: Scalar>(fam: &Family<F>, order: usize) -> BiSeries<F> {
    let cols: Vec<Series<F>> = (0..=order)
        .map(|j| fam.f(j).truncate(order).scale(&inv_factorial::<F>(j)))
        .collect();
    bivariate::from_columns(&cols)
}

fn is_qexp<F: Scalar>(fam: &Family<F>) -> bool {
    let m = fam.max_index();
    Family::<F>::qexp(m, fam.dim()).fns() == fam.fns()
}

/// Operator with `T x^j = cols[j]`, for columns that define `T` exactly.
fn tautology<F: Scalar>(dim: usize, cols: &[Poly<F>], raise: i64) -> Operator<F> {
    Operator::from_columns(dim, cols, raise, dim as i64)
}

/// `G_P G_P^{-1} = G_P^{-1} G_P = 1` and `D_P U_P - U_P D_P = 1`.
pub fn verify_commutator<F: Scalar>(fam: &Family<F>) -> Result<Report> {
    let c = Calculus::new(fam);
    let mut rep = Report::new("commutator", fam);
    rep.ops("G*GINV == ID", &c.g.compose(&c.ginv), &c.id);
    rep.ops("GINV*G == ID", &c.ginv.compose(&c.g), &c.id);
    let comm = c.dp.compose(&c.u).sub(&c.u.compose(&c.dp));
    rep.ops("DP*UP - UP*DP == ID", &comm, &c.id);
    Ok(rep)
}

/// `G_P = sum_k D^k/k! xi_k^theta` and the same for `G_P^{-1}` with `xi*`.
pub fn verify_xi_repr<F: Scalar>(fam: &Family<F>) -> Result<Report> {
    let c = Calculus::new(fam);
    let n = fam.dim();
    let build = |table: &dyn Fn(usize, usize) -> F| {
        let mut acc = Operator::zero(n);
        for k in 0..=n {
            let values: Vec<F> = (0..=n)
                .map(|m| if k <= m { table(m, k) } else { F::zero() })
                .collect();
            let term =
                c.d.pow(k)
                    .scale(&inv_factorial::<F>(k))
                    .compose(&Operator::diagonal(&values));
            acc = acc.add(&term);
        }
        acc
    };
    let mut rep = Report::new("xi-repr", fam);
    rep.ops(
        "G == sum D^k/k! xi_k(theta)",
        &c.g,
        &build(&|m, k| fam.xi(m, k)),
    );
    rep.ops(
        "GINV == sum D^k/k! xi*_k(theta)",
        &c.ginv,
        &build(&|m, k| fam.xi_star(m, k)),
    );
    Ok(rep)
}

/// `G_P G_Q^{-1}` three ways: as a product, through its action on `q_n`, and
/// as `(e_n/f_n)(D)` with `n = U_P D_P`.
pub fn verify_change_of_basis<F: Scalar>(p: &Family<F>, q: &Family<F>) -> Result<Report> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} has N = {}, {} has N = {}",
            p.label(),
            p.dim(),
            q.label(),
            q.dim()
        )));
    }
    let n = p.dim();
    let (cp, cq) = (Calculus::new(p), Calculus::new(q));
    let lhs = cp.g.compose(&cq.ginv);
    // x^j = sum C(j,k) xi*Q_k^j q_{j-k}, and q_m maps to p_m
    let cols: Vec<Poly<F>> = (0..=n)
        .map(|j| {
            (0..=j).fold(Poly::zero(), |acc, k| {
                acc.add(
                    &p.poly(j - k)
                        .scale(&(binomial::<F>(j, k) * q.xi_star(j, k))),
                )
            })
        })
        .collect();
    let ratios = (0..=n)
        .map(|m| valuation_ratio(q.f(m), p.f(m), m))
        .collect::<Result<Vec<_>>>()?;
    let series_form = index_series(&cp, DiagBasis::Family, &ratios, &cp.d);
    let mut rep = Report::new("change-of-basis", p);
    rep.family = format!("{} / {}", p.label(), q.label());
    rep.ops(
        "G_P*GINV_Q == (x)(p/q)(U_Q D_Q)",
        &lhs,
        &tautology(n, &cols, 0),
    );
    rep.ops("G_P*GINV_Q == (e/f)(U_P D_P)(D)", &lhs, &series_form);
    Ok(rep)
}

/// `D_P = (f_{n+1}/f_n)(D)` at `n = U_P D_P`, with the binomial and `qexp`
/// specialisations when they apply.
pub fn verify_prop_dp<F: Scalar>(fam: &Family<F>) -> Result<Report> {
    let c = Calculus::new(fam);
    let mut rep = Report::new("prop-dp", fam);
    let rhs = index_series(&c, DiagBasis::Family, &ratio_table(fam, 1)?, &c.d);
    rep.ops("DP == (f_{n+1}/f_n)(D)", &c.dp, &rhs);
    if let Some(f) = fam.as_binomial() {
        rep.ops("DP == f(D)", &c.dp, &series_of(&f, &c.d));
    }
    if is_qexp(fam) {
        rep.ops("DP == sum (UP*DP)^k D^{k+1}/k!", &c.dp, &qexp_dp_series(&c));
    }
    Ok(rep)
}

fn qexp_dp_series<F: Scalar>(c: &Calculus<F>) -> Operator<F> {
    let ud = c.u.compose(&c.dp);
    (0..=c.dim()).fold(Operator::zero(c.dim()), |acc, k| {
        acc.add(
            &ud.pow(k)
                .compose(&c.d.pow(k + 1))
                .scale(&inv_factorial::<F>(k)),
        )
    })
}

/// `x = f_0(D) U_P (f~_n/f_n)(D)` and `U_P = f_0(D)^{-1} x G_{P~} G_P^{-1}`.
pub fn verify_prop_x<F: Scalar>(fam: &Family<F>) -> Result<Report> {
    let c = Calculus::new(fam);
    let n = fam.dim();
    let tilde = tilde_family(fam)?;
    let ratios = (0..=n.min(tilde.fns_formula.len() - 1))
        .map(|m| valuation_ratio(&tilde.fns_formula[m], fam.f(m), m))
        .collect::<Result<Vec<_>>>()?;
    let f0 = fam.f(0);
    let rhs = series_of(f0, &c.d).compose(&c.u.compose(&index_series(
        &c,
        DiagBasis::Family,
        &ratios,
        &c.d,
    )));
    let mut rep = Report::new("prop-x", fam);
    rep.ops("X == f_0(D)*UP*(f~_n/f_n)(D)", &c.x, &rhs);
    let known = tilde.family.polys();
    let g_tilde = Operator::from_columns(n, known, 0, known.len() as i64 - 1);
    let u_rhs = series_of(&f0.recip()?, &c.d).compose(&c.x.compose(&g_tilde.compose(&c.ginv)));
    rep.ops("UP == f_0(D)^{-1}*X*G~*GINV", &c.u, &u_rhs);
    if let Some(f) = fam.as_binomial() {
        rep.ops(
            "X == UP*f'(D)",
            &c.x,
            &c.u.compose(&series_of(&f.deriv(), &c.d)),
        );
    }
    Ok(rep)
}

/// `D_P^k = (f_{n+k}/f_n)(D)`.
pub fn verify_dpk<F: Scalar>(fam: &Family<F>, powers: &[usize]) -> Result<Report> {
    let c = Calculus::new(fam);
    let mut rep = Report::new("dpk", fam);
    for &k in powers {
        let rhs = index_series(&c, DiagBasis::Family, &ratio_table(fam, k)?, &c.d);
        rep.ops(format!("DP^{k} == (f_(n+{k})/f_n)(D)"), &c.dp.pow(k), &rhs);
    }
    Ok(rep)
}

/// `D = (f*_{n+1}/f*_n)(D_P)` and `D = (f_{n+1}/f_n)(D_{P*})`, with the
/// index `n = theta`.
pub fn verify_conj_dp<F: Scalar>(fam: &Family<F>) -> Result<Report> {
    let c = Calculus::new(fam);
    let dual = fam.dual()?;
    let mut rep = Report::new("conj-dp", fam);
    let lhs1 = index_series(&c, DiagBasis::Monomial, &ratio_table(&dual, 1)?, &c.dp);
    rep.ops("D == (f*_{n+1}/f*_n)(DP)", &c.d, &lhs1);
    let d_dual = c.ginv.compose(&c.d.compose(&c.g));
    let lhs2 = index_series(&c, DiagBasis::Monomial, &ratio_table(fam, 1)?, &d_dual);
    rep.ops("D == (f_{n+1}/f_n)(D_P*)", &c.d, &lhs2);
    Ok(rep)
}

/// Seeded random operator that never raises degree (`T[i][j] = 0` for `i > j`).
pub fn random_operator<F: Scalar>(dim: usize, seed: u64) -> Operator<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..=dim)
        .map(|i| {
            (0..=dim)
                .map(|j| {
                    let num: i64 = rng.gen_range(-3..=3);
                    let den: i64 = rng.gen_range(1..=3);
                    if i <= j {
                        F::ratio(num, den)
                    } else {
                        F::zero()
                    }
                })
                .collect()
        })
        .collect();
    Operator::from_rows(rows, 0, dim as i64).expect("square")
}

/// The four representations of an arbitrary operator `T`:
/// `(x)(TQ/Q)(D_P)`, the action on `p_m`, `(U_P)(T̄Q*/Q*)(D)` and
/// `(T̄f_n/f_n)(D)` at `n = U_P D_P`. The last needs `raise(T) <= 0`.
pub fn verify_representation_theorem<F: Scalar>(
    fam: &Family<F>,
    name: &str,
    t: &Operator<F>,
) -> Result<Vec<Check>> {
    let c = Calculus::new(fam);
    let n = fam.dim();
    let w = t.window();
    if w < 0 {
        return Err(Error::WindowTooSmall(format!(
            "operator {name} has an empty window"
        )));
    }
    let mut checks = Vec::new();

    // form 1: coefficients p_k/k! are acted on for k <= window(T)
    let q = gen_fn(fam, w as usize);
    let tq = q.map(|p| t.apply(p));
    let form1 = normal_order_subst(&tq.div(&q)?, &c.x, &c.dp);
    checks.push(compare_ops(format!("{name}: (x)(TQ/Q)(DP)"), t, &form1));

    let cols: Vec<Poly<F>> = fam.polys()[..=n].iter().map(|p| t.apply(p)).collect();
    let form2 = Operator::from_columns(n, &cols, t.raise(), w).compose(&c.ginv);
    checks.push(compare_ops(
        format!("{name}: (x)(Tp_n/p_n)(UP DP)"),
        t,
        &form2,
    ));

    let bar = overline(t);
    let m = fam.max_index();
    let prec_order = bar.order().min(m as i64 - t.raise());
    if prec_order < 0 {
        return Err(Error::WindowTooSmall(format!(
            "overline of {name} has no trusted rows"
        )));
    }
    let order = prec_order as usize;
    let last_col = (order as i64 + t.raise().max(0)).min(m as i64) as usize;
    let num_cols = (0..=last_col)
        .map(|j| {
            Ok(bar
                .apply(fam.f(j))?
                .truncate(order)
                .scale(&inv_factorial::<F>(j)))
        })
        .collect::<Result<Vec<_>>>()?;
    let numer = bivariate::from_columns(&num_cols);
    let denom = dual_gen_fn(fam, order);
    let form3 = normal_order_subst(&numer.truncate(order).div(&denom)?, &c.u, &c.d);
    checks.push(compare_ops(format!("{name}: (UP)(T̄Q*/Q*)(D)"), t, &form3));

    if t.raise() <= 0 {
        let ratios = (0..=n)
            .map(|k| valuation_ratio(&bar.apply(fam.f(k))?, fam.f(k), k))
            .collect::<Result<Vec<_>>>()?;
        let form4 = index_series(&c, DiagBasis::Family, &ratios, &c.d);
        checks.push(compare_ops(format!("{name}: (T̄f_n/f_n)(D)"), t, &form4));
    }
    Ok(checks)
}

/// Representation theorem on the named operators plus `random` seeded ones.
pub fn verify_repr_catalog<F: Scalar>(fam: &Family<F>, seed: u64, random: usize) -> Result<Report> {
    let c = Calculus::new(fam);
    let mut rep = Report::new("repr-theorem", fam);
    rep.seed = Some(seed);
    let mut ops: Vec<(String, Operator<F>)> = vec![
        ("ID".into(), c.id.clone()),
        ("D".into(), c.d.clone()),
        ("X".into(), c.x.clone()),
        ("THETA".into(), c.theta.clone()),
        ("DP".into(), c.dp.clone()),
        ("UP".into(), c.u.clone()),
    ];
    for i in 0..random {
        let s = seed.wrapping_add(i as u64);
        ops.push((format!("random[{s}]"), random_operator(fam.dim(), s)));
    }
    for (name, t) in &ops {
        rep.checks
            .extend(verify_representation_theorem(fam, name, t)?);
    }
    Ok(rep)
}

/// The four representations of `theta = xD`, the binomial degenerations and
/// the `qexp` instance.
pub fn verify_theta_corollary<F: Scalar>(fam: &Family<F>) -> Result<Report> {
    let c = Calculus::new(fam);
    let n = fam.dim();
    let m = fam.max_index();
    let mut rep = Report::new("theta-corollary", fam);

    let q = gen_fn(fam, m);
    let ratio = bivariate::deriv_x(&q).div(&q)?;
    let f1 = c.x.compose(&normal_order_subst(&ratio, &c.x, &c.dp));
    rep.ops("THETA == x(x)(Q'/Q)(DP)", &c.theta, &f1);

    let qs = dual_gen_fn(fam, m);
    let log_deriv = qs.deriv().div(&qs.truncate(m - 1))?.shift_up(1);
    let f2 = normal_order_subst(&log_deriv, &c.u, &c.d);
    rep.ops("THETA == (UP)(y d/dy ln Q*)(D)", &c.theta, &f2);

    let cols: Vec<Poly<F>> = fam.polys()[..=n]
        .iter()
        .map(|p| p.deriv().shift_up(1))
        .collect();
    let f3 = tautology(n, &cols, 0).compose(&c.ginv);
    rep.ops("THETA == x(x)(p'_n/p_n)(UP DP)", &c.theta, &f3);

    let ratios = (0..=n)
        .map(|k| valuation_ratio(&fam.f(k).deriv().shift_up(1), fam.f(k), k))
        .collect::<Result<Vec<_>>>()?;
    let f4 = index_series(&c, DiagBasis::Family, &ratios, &c.d);
    rep.ops("THETA == (f'_n/f_n)(D) D", &c.theta, &f4);

    if let Some(f) = fam.as_binomial() {
        let phi = f.revert()?;
        rep.ops(
            "THETA == x phi(DP)",
            &c.theta,
            &c.x.compose(&series_of(&phi, &c.dp)),
        );
        let b2 = c.u.compose(&c.d.compose(&series_of(&f.deriv(), &c.d)));
        rep.ops("THETA == UP D f'(D)", &c.theta, &b2);
        let s = valuation_ratio(&f.deriv().shift_up(1), &f, 1)?;
        let b3 = c.u.compose(&c.dp.compose(&series_of(&s, &c.d)));
        rep.ops("THETA == UP DP f'(D) D / f(D)", &c.theta, &b3);
    }
    if is_qexp(fam) {
        rep.ops(
            "THETA == UP*DP + 1/2*UP^2*DP^2*D",
            &c.theta,
            &qexp_theta(&c),
        );
    }
    Ok(rep)
}

fn qexp_theta<F: Scalar>(c: &Calculus<F>) -> Operator<F> {
    let ud = c.u.compose(&c.dp);
    let second =
        c.u.pow(2)
            .compose(&c.dp.pow(2).compose(&c.d))
            .scale(&F::ratio(1, 2));
    ud.add(&second)
}

/// Worked `qexp` identities as plain checks, for any family.
pub fn verify_qexp_examples<F: Scalar>(fam: &Family<F>) -> Report {
    let c = Calculus::new(fam);
    let mut rep = Report::new("qexp-examples", fam);
    rep.ops("DP == sum (UP*DP)^k D^{k+1}/k!", &c.dp, &qexp_dp_series(&c));
    rep.ops(
        "THETA == UP*DP + 1/2*UP^2*DP^2*D",
        &c.theta,
        &qexp_theta(&c),
    );
    rep
}

/// `D_P Q = y Q` and `d_{P*} Q = x Q` on truncated generating functions.
pub fn verify_eigen_q<F: Scalar>(fam: &Family<F>) -> Result<Report> {
    let c = Calculus::new(fam);
    let n = fam.dim();
    let mut rep = Report::new("eigen-q", fam);

    let q = gen_fn(fam, n);
    let dq: BiSeries<F> = Series::new(q.coeffs().iter().map(|p| c.dp.apply(p)).collect());
    let yq = q.shift_up(1).truncate(n);
    rep.checks.push(compare_series(
        "DP Q == y Q",
        &bivariate::columns(&dq, n),
        &bivariate::columns(&yq, n),
    ));

    let u_dual = c.ginv.compose(&c.x.compose(&c.g));
    let bar = overline(&u_dual);
    let full = gen_fn(fam, fam.max_index());
    let cols = bivariate::columns(&full, n);
    let lhs = cols
        .iter()
        .map(|col| bar.apply(col))
        .collect::<Result<Vec<_>>>()?;
    let rhs: Vec<Series<F>> = (0..=n)
        .map(|j| {
            if j == 0 {
                Series::zero(fam.max_index())
            } else {
                cols[j - 1].clone()
            }
        })
        .collect();
    rep.checks.push(compare_series("d_P* Q == x Q", &lhs, &rhs));
    Ok(rep)
}

/// Overline transform: the canonical pairs `D <-> y` and `x <-> d/dy`,
/// reconstruction, the kernel identity on `e^{xy}`, and the binomial forms
/// `d_P = (1/f') d/dy`, `u_P = f`.
pub fn verify_overline_consistency<F: Scalar>(fam: &Family<F>, seed: u64) -> Result<Report> {
    let c = Calculus::new(fam);
    let n = fam.dim();
    let mut rep = Report::new("overline-consistency", fam);
    rep.seed = Some(seed);
    let monomials: Vec<Series<F>> = (0..=n).map(|i| Series::monomial(i, n)).collect();
    let act = |t: &Operator<F>| {
        monomials
            .iter()
            .map(|m| overline(t).apply(m))
            .collect::<Result<Vec<_>>>()
    };

    let by_y: Vec<Series<F>> = monomials
        .iter()
        .map(|m| m.shift_up(1).truncate(n))
        .collect();
    rep.checks
        .push(compare_series("bar(D) == y", &act(&c.d)?, &by_y));
    let dy: Vec<Series<F>> = monomials.iter().map(|m| m.deriv()).collect();
    rep.checks
        .push(compare_series("bar(X) == d/dy", &act(&c.x)?, &dy));

    let named = [
        ("G", c.g.clone()),
        ("GINV", c.ginv.clone()),
        ("UP", c.u.clone()),
        ("DP", c.dp.clone()),
        ("random", random_operator(n, seed)),
    ];
    for (name, t) in &named {
        rep.ops(
            format!("unbar(bar({name})) == {name}"),
            &overline(t).to_operator(),
            t,
        );
        // T e^{xy} against T̄ e^{xy}, compared coefficient by coefficient in x
        let w = t.window().max(0) as usize;
        let x_side: BiSeries<F> = Series::new(
            (0..=w)
                .map(|k| t.apply(&Poly::monomial(k)).scale(&inv_factorial::<F>(k)))
                .collect(),
        );
        let bar = overline(t);
        let y_cols = (0..=n)
            .map(|i| {
                Ok(bar
                    .apply(&Series::monomial(i, n))?
                    .scale(&inv_factorial::<F>(i)))
            })
            .collect::<Result<Vec<_>>>()?;
        rep.checks.push(compare_series(
            format!("{name} e^(xy) == bar({name}) e^(xy)"),
            &bivariate::columns(&x_side, n),
            &y_cols,
        ));
    }

    if let Some(f) = fam.as_binomial() {
        let fp = f.deriv();
        let expected_d: Vec<Series<F>> = monomials
            .iter()
            .map(|m| m.deriv().div(&fp.truncate(n - 1)))
            .collect::<Result<_>>()?;
        rep.checks.push(compare_series(
            "bar(UP) == (1/f') d/dy",
            &act(&c.u)?,
            &expected_d,
        ));
        let expected_u: Vec<Series<F>> = monomials.iter().map(|m| m.mul(&f.truncate(n))).collect();
        rep.checks
            .push(compare_series("bar(DP) == f", &act(&c.dp)?, &expected_u));
    }
    Ok(rep)
}

/// Options for [`run_catalog`].
#[derive(Clone, Debug)]
pub struct CatalogConfig<F: Scalar> {
    pub seed: u64,
    pub random_operators: usize,
    /// Families paired with the subject in `change-of-basis`, in both orders.
    pub partners: Vec<Family<F>>,
}

impl<F: Scalar> Default for CatalogConfig<F> {
    fn default() -> Self {
        CatalogConfig {
            seed: DEFAULT_SEED,
            random_operators: 5,
            partners: Vec::new(),
        }
    }
}

pub fn run_identity<F: Scalar>(
    id: &str,
    fam: &Family<F>,
    cfg: &CatalogConfig<F>,
) -> Result<Vec<Report>> {
    Ok(match id {
        "commutator" => vec![verify_commutator(fam)?],
        "xi-repr" => vec![verify_xi_repr(fam)?],
        "change-of-basis" => {
            let mut out = vec![verify_change_of_basis(fam, fam)?];
            for q in &cfg.partners {
                out.push(verify_change_of_basis(fam, q)?);
                out.push(verify_change_of_basis(q, fam)?);
            }
            out
        }
        "prop-dp" => vec![verify_prop_dp(fam)?],
        "prop-x" => vec![verify_prop_x(fam)?],
        "dpk" => vec![verify_dpk(fam, &[2, 3])?],
        "conj-dp" => vec![verify_conj_dp(fam)?],
        "repr-theorem" => vec![verify_repr_catalog(fam, cfg.seed, cfg.random_operators)?],
        "theta-corollary" => vec![verify_theta_corollary(fam)?],
        "eigen-q" => vec![verify_eigen_q(fam)?],
        "overline-consistency" => vec![verify_overline_consistency(fam, cfg.seed)?],
        other => return Err(Error::UnknownIdentity(other.to_string())),
    })
}

/// Runs the given identities concurrently; reports come back in input order.
pub fn run_catalog<F: Scalar>(
    ids: &[&str],
    fam: &Family<F>,
    cfg: &CatalogConfig<F>,
) -> Result<Vec<Report>> {
    for id in ids {
        if !CATALOG.contains(id) {
            return Err(Error::UnknownIdentity(id.to_string()));
        }
    }
    let results: Vec<Result<Vec<Report>>> = std::thread::scope(|s| {
        let handles: Vec<_> = ids
            .iter()
            .map(|id| s.spawn(move || run_identity(id, fam, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("identity check panicked"))
            .collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
