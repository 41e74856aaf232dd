use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{factorial_ratio, Family};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{factorial, inv_factorial, Scalar};
use crate::series::Series;

/// Names accepted by [`Family::builtin`].
pub const BUILTINS: [&str; 3] = ["monomial", "falling", "qexp"];

impl<F: Scalar> Family<F> {
    /// Family of binomial type with `f_n = f^n`: `p_n = n! [y^n] exp(x phi(y))`
    /// where `phi` is the compositional inverse of `f`. Needs `f` to order `max`.
    pub fn binomial(
        label: impl Into<String>,
        f: &Series<F>,
        max: usize,
        dim: usize,
    ) -> Result<Self> {
        if f.order() < max as isize {
            return Err(Error::OrderExhausted {
                needed: max,
                available: f.order().max(0) as usize,
            });
        }
        let f = f.truncate(max.max(1));
        let phi = f.revert()?;
        let mut polys = vec![Poly::one()];
        let mut powers = vec![Series::one(max)];
        for k in 1..=max {
            powers.push(powers[k - 1].mul(&phi.truncate(max)));
        }
        for n in 1..=max {
            let coeffs = (0..=n)
                .map(|k| powers[k].coeff(n).clone() * inv_factorial::<F>(k))
                .collect();
            polys.push(Poly::new(coeffs).scale(&factorial::<F>(n)));
        }
        let mut fam = Family::from_polys(label, polys, dim)?;
        fam.set_binomial(f.truncate(max));
        Ok(fam)
    }

    /// Family determined by its series `f_0..f_M` (each known to order `M`),
    /// by forward substitution in `e^{xy} = sum p_n f_n / n!`.
    pub fn from_fns(label: impl Into<String>, fns: &[Series<F>], dim: usize) -> Result<Self> {
        let max = fns
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Invalid("no series given".into()))?;
        for (n, f) in fns.iter().enumerate() {
            if f.order() < max as isize {
                return Err(Error::OrderExhausted {
                    needed: max,
                    available: f.order().max(0) as usize,
                });
            }
            let low_ok = (0..n).all(|k| f.coeff(k).is_zero());
            if !low_ok || !f.coeff(n).is_one() {
                return Err(Error::BadValuation { index: n });
            }
        }
        // x^m / m! = sum_{n<=m} p_n [y^m] f_n / n!
        let mut polys: Vec<Poly<F>> = Vec::with_capacity(max + 1);
        for m in 0..=max {
            let mut p = Poly::monomial(m);
            for (n, pn) in polys.iter().enumerate() {
                let c = fns[n].coeff(m).clone();
                if !c.is_zero() {
                    p = p.sub(&pn.scale(&(c * factorial_ratio::<F>(m, n))));
                }
            }
            polys.push(p);
        }
        let fam = Family::from_polys(label, polys, dim)?;
        if fns
            .iter()
            .zip(fam.fns())
            .any(|(given, got)| &given.truncate(max) != got)
        {
            return Err(Error::InconsistentSystem(
                "series family does not reproduce itself".into(),
            ));
        }
        Ok(fam)
    }

    /// `p_n = x^n`.
    pub fn monomial(max: usize, dim: usize) -> Self {
        let polys = (0..=max).map(Poly::monomial).collect();
        Family::from_polys("monomial", polys, dim)
            .expect("monomials are monic")
            .with_binomial(Series::variable(max.max(1)))
    }

    /// Falling factorials, the binomial family of `f = e^y - 1`.
    pub fn falling(max: usize, dim: usize) -> Self {
        let mut f = Series::exp_y(max.max(1));
        f = f.sub(&Series::one(max.max(1)));
        Family::binomial("falling", &f, max, dim).expect("e^y - 1 is invertible")
    }

    /// `f_n = y^n exp(n(n-1) y / 2)`.
    pub fn qexp(max: usize, dim: usize) -> Self {
        let fns: Vec<Series<F>> = (0..=max)
            .map(|n| {
                let rate = F::ratio((n * n.saturating_sub(1)) as i64, 2);
                let e = Series::variable(max.max(1))
                    .scale(&rate)
                    .exp()
                    .expect("zero constant term");
                e.truncate(max).shift_up(n).truncate(max)
            })
            .collect();
        Family::from_fns("qexp", &fns, dim).expect("qexp series have exact valuations")
    }

    pub fn builtin(name: &str, max: usize, dim: usize) -> Result<Self> {
        match name {
            "monomial" => Ok(Self::monomial(max, dim)),
            "falling" => Ok(Self::falling(max, dim)),
            "qexp" => Ok(Self::qexp(max, dim)),
            _ => Err(Error::UnknownFamily(name.to_string())),
        }
    }

    fn with_binomial(mut self, f: Series<F>) -> Self {
        self.set_binomial(f);
        self
    }
}

/// Seeded random `xi` table with rows `0..=max`. Entries are `a/b` with
/// `a` in `-3..=3`, `b` in `1..=3`. With `vanishing`, `xi[n][n] = 0`, i.e.
/// `p_n(0) = 0` for `n >= 1`. Rows are drawn in order, so a larger `max`
/// extends a smaller one.
pub fn random_xi_table<F: Scalar>(seed: u64, max: usize, vanishing: bool) -> Vec<Vec<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..=max)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let num: i64 = rng.gen_range(-3..=3);
                    let den: i64 = rng.gen_range(1..=3);
                    match k {
                        0 => F::one(),
                        _ if vanishing && k == n => F::zero(),
                        _ => F::ratio(num, den),
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{check_gf_identity, vanish_lemma_check};
    use crate::Rat;

    fn poly(cs: &[i64]) -> Poly<Rat> {
        Poly::new(cs.iter().map(|&c| Rat::from_i64(c)).collect())
    }

    #[test]
    fn binomial_of_y_is_monomial() {
        let fam = Family::<Rat>::binomial("y", &Series::variable(6), 6, 6).unwrap();
        assert_eq!(fam.polys(), Family::<Rat>::monomial(6, 6).polys());
    }

    #[test]
    fn falling_factorials() {
        let fam = Family::<Rat>::falling(5, 5);
        assert_eq!(fam.poly(2), &poly(&[0, -1, 1]));
        assert_eq!(fam.poly(3), &poly(&[0, 2, -3, 1]));
    }

    #[test]
    fn binomial_y_plus_y2() {
        let f = Series::from_scalars([0, 1, 1, 0, 0, 0].map(Rat::from_i64).to_vec());
        let fam = Family::binomial("y+y^2", &f, 5, 5).unwrap();
        assert_eq!(fam.poly(2), &poly(&[0, -2, 1]));
        for n in 0..=5 {
            assert_eq!(fam.f(n), &f.pow(n));
        }
    }

    #[test]
    fn binomial_rejects_bad_lowest_terms() {
        let f = Series::from_scalars([0, 0, 1, 0].map(Rat::from_i64).to_vec());
        assert_eq!(
            Family::binomial("y^2", &f, 3, 3),
            Err(Error::BadLowestTerms)
        );
    }

    #[test]
    fn qexp_polys() {
        let fam = Family::<Rat>::qexp(6, 6);
        assert_eq!(fam.poly(2), &poly(&[0, 0, 1]));
        assert_eq!(fam.poly(3), &poly(&[0, 0, -3, 1]));
        assert_eq!(fam.poly(4), &poly(&[0, 0, 30, -12, 1]));
    }

    #[test]
    fn fns_of_expm1_powers_match_binomial_constructor() {
        let falling = Family::<Rat>::falling(7, 7);
        let fns: Vec<_> = (0..=7)
            .map(|n| falling.binomial_series().unwrap().pow(n))
            .collect();
        let from_fns = Family::from_fns("falling", &fns, 7).unwrap();
        assert_eq!(from_fns.polys(), falling.polys());
    }

    #[test]
    fn from_fns_rejects_bad_valuation() {
        let fns = vec![
            Series::<Rat>::one(2),
            Series::monomial(2, 2),
            Series::monomial(2, 2),
        ];
        assert_eq!(
            Family::from_fns("bad", &fns, 2),
            Err(Error::BadValuation { index: 1 })
        );
    }

    #[test]
    fn builtins_satisfy_gf_identity() {
        for name in BUILTINS {
            let fam = Family::<Rat>::builtin(name, 8, 8).unwrap();
            assert_eq!(check_gf_identity(&fam, 8), None, "{name}");
        }
        assert_eq!(
            Family::<Rat>::builtin("nope", 3, 3),
            Err(Error::UnknownFamily("nope".into()))
        );
    }

    #[test]
    fn random_tables_are_prefix_stable() {
        let small: Vec<Vec<Rat>> = random_xi_table(3, 4, false);
        let big: Vec<Vec<Rat>> = random_xi_table(3, 9, false);
        assert_eq!(&big[..5], &small[..]);
    }

    #[test]
    fn vanishing_random_tables_satisfy_lemma() {
        let table = random_xi_table::<Rat>(11, 8, true);
        let fam = Family::from_xi("r", &table, 8).unwrap();
        let rep = vanish_lemma_check(&fam).unwrap();
        assert!(rep.f0_is_one && rep.all_vanish);
    }
}
