use proptest::prelude::*;
use umbra_core::family::{random_xi_table, Family};
use umbra_core::logderiv::*;
use umbra_core::poly::Poly;
use umbra_core::series::Series;
use umbra_core::{Error, Rat, Scalar};

fn r(n: i64, d: i64) -> Rat {
    Rat::ratio(n, d)
}

fn ints(cs: &[i64]) -> Vec<Rat> {
    cs.iter().map(|&c| Rat::from_i64(c)).collect()
}

fn fam(name: &str, max: usize) -> Family<Rat> {
    Family::builtin(name, max, max.min(10)).unwrap()
}

fn random_family(seed: u64, max: usize) -> Family<Rat> {
    Family::from_xi(
        format!("random:{seed}"),
        &random_xi_table(seed, max, true),
        max.min(10),
    )
    .unwrap()
}

/// `(x - a)/(x - b) = 1 + (b - a) sum_{h>=1} b^{h-1} x^{-h}`.
fn mobius_expansion(a: Rat, b: Rat, h: usize) -> Vec<Rat> {
    let mut out = vec![Rat::from_i64(1)];
    let mut p = Rat::from_i64(1);
    for _ in 1..=h {
        out.push((b.clone() - a.clone()) * p.clone());
        p *= b.clone();
    }
    out
}

#[test]
fn context_series() {
    let mono = LogDerivContext::new(&fam("monomial", 10), 8).unwrap();
    assert!(mono
        .l()
        .coeffs()
        .iter()
        .enumerate()
        .all(|(k, c)| if k == 0 {
            *c == Poly::one()
        } else {
            c.is_zero()
        }));
    assert!(mono
        .w0()
        .coeffs()
        .iter()
        .enumerate()
        .all(|(k, c)| if k == 0 {
            *c == Poly::one()
        } else {
            c.is_zero()
        }));
    let qexp = LogDerivContext::new(&fam("qexp", 12), 10).unwrap();
    assert!(qexp.l().coeff(1).degree().unwrap_or(0) == 0);
    assert!(qexp.w0().coeff(1).degree().unwrap_or(0) == 0);
    let falling = LogDerivContext::new(&fam("falling", 10), 8).unwrap();
    for k in 1..=8 {
        assert!(falling.l().coeff(k).degree().is_none_or(|d| d < k));
        assert!(falling.w0().coeff(k).degree().is_none_or(|d| d < k));
    }
    let shifted =
        Family::from_polys("shifted", vec![Poly::one(), Poly::new(ints(&[1, 1]))], 1).unwrap();
    assert!(matches!(
        LogDerivContext::new(&shifted, 0),
        Err(Error::PreconditionViolated(_))
    ));
    assert!(matches!(
        LogDerivContext::new(&fam("qexp", 6), 6),
        Err(Error::OrderExhausted { .. })
    ));
}

#[test]
fn neumann_polynomials() {
    let mono = LogDerivContext::new(&fam("monomial", 10), 8).unwrap();
    for n in 1..=5 {
        let xi = mono.neumann_xi(n, 8).unwrap();
        assert_eq!(xi[0], Poly::one());
        assert!(xi[1..].iter().all(Poly::is_zero));
    }
    for f in [fam("qexp", 10), fam("falling", 10), random_family(5, 10)] {
        let xi = LogDerivContext::new(&f, 8)
            .unwrap()
            .neumann_xi(1, 8)
            .unwrap();
        assert!(xi[1..].iter().all(Poly::is_zero), "{}", f.label());
    }
    let xi = LogDerivContext::new(&fam("qexp", 8), 6)
        .unwrap()
        .neumann_xi(3, 6)
        .unwrap();
    for (k, p) in xi.iter().enumerate() {
        assert!(p.degree().is_none_or(|d| d <= k / 2), "xi_{k} = {p}");
    }
    assert!(matches!(
        mono.neumann_xi(2, 9),
        Err(Error::OrderExhausted { .. })
    ));
}

#[test]
fn oracle_values() {
    let x5 = Poly::<Rat>::monomial(5);
    assert_eq!(oracle_poly(&x5, 3).unwrap(), ints(&[1, 0, 0, 0]));
    let p3 = Poly::new(ints(&[0, 0, -3, 1]));
    assert_eq!(oracle_poly(&p3, 3).unwrap(), ints(&[1, 1, 3, 9]));
    let p2 = Poly::new(ints(&[0, -1, 1]));
    assert_eq!(
        oracle_poly(&p2, 2).unwrap(),
        vec![r(1, 1), r(1, 2), r(1, 2)]
    );
    assert!(oracle_poly(&Poly::<Rat>::one(), 2).is_err());
}

#[test]
fn expansion_examples() {
    for n in 1..=5 {
        assert_eq!(
            assemble_expansion(&fam("monomial", 30), n, 4).unwrap(),
            ints(&[1, 0, 0, 0, 0])
        );
    }
    // p_3 = x^2 (x - 3), so x p_3' / (3 p_3) = (x - 2)/(x - 3)
    let q = fam("qexp", 20);
    assert_eq!(
        assemble_expansion(&q, 3, 4).unwrap(),
        mobius_expansion(r(2, 1), r(3, 1), 4)
    );
    assert_eq!(
        assemble_expansion(&q, 3, 4).unwrap(),
        ints(&[1, 1, 3, 9, 27])
    );
    // p_2 = x (x - 1), so x p_2' / (2 p_2) = (x - 1/2)/(x - 1)
    let f = fam("falling", 20);
    assert_eq!(
        assemble_expansion(&f, 2, 3).unwrap(),
        mobius_expansion(r(1, 2), r(1, 1), 3)
    );
    assert!(matches!(
        assemble_expansion(&q, 4, 10),
        Err(Error::OrderExhausted { .. })
    ));
    assert!(assemble_expansion(&q, 0, 2).is_err());
}

#[test]
fn both_engines_agree_with_the_oracle() {
    for f in [fam("qexp", 14), fam("falling", 14), random_family(9, 14)] {
        for n in 1..=4 {
            let h = 12 / n.max(2);
            let k = default_depth(n, h).min(12);
            let h = if n > 1 { k / (n - 1) } else { h };
            let xi = LogDerivContext::new(&f, k)
                .unwrap()
                .neumann_xi(n, k)
                .unwrap();
            let full = expansion_from_xi(&xi, h);
            assert_eq!(
                full,
                assemble_expansion(&f, n, h).unwrap(),
                "{} n={n}",
                f.label()
            );
            assert_eq!(
                full,
                oracle_logderiv(&f, n, h).unwrap(),
                "{} n={n}",
                f.label()
            );
        }
    }
}

#[test]
fn binomial_closed_form_examples() {
    let y = Series::<Rat>::variable(8);
    assert_eq!(
        binomial_closed_form(&y, 3, 5).unwrap(),
        ints(&[1, 0, 0, 0, 0, 0])
    );
    let expm1 = Series::<Rat>::exp_y(8).sub(&Series::one(8));
    assert_eq!(
        binomial_closed_form(&expm1, 2, 2).unwrap(),
        vec![r(1, 1), r(1, 2), r(1, 2)]
    );
    let f = Series::from_scalars(ints(&[0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
    let family = Family::binomial("y+y^2", &f, 11, 10).unwrap();
    let closed = binomial_closed_form(&f, 2, 5).unwrap();
    assert_eq!(closed, assemble_expansion(&family, 2, 5).unwrap());
    assert_eq!(closed, oracle_logderiv(&family, 2, 5).unwrap());
    assert_eq!(binomial_closed_form_family(&family, 2, 5).unwrap(), closed);
    assert_eq!(
        binomial_closed_form_family(&fam("qexp", 8), 2, 3),
        Err(Error::NotBinomial)
    );
}

#[test]
fn degree_bounds() {
    let falling = LogDerivContext::new(&fam("falling", 14), 12).unwrap();
    let rep = degree_bound_check(&falling, 2, 12).unwrap();
    assert!(rep.holds());
    assert!(rep.degrees.iter().all(|d| d.is_none_or(|d| d == 0)));
    let qexp = LogDerivContext::new(&fam("qexp", 14), 12).unwrap();
    assert!(degree_bound_check(&qexp, 3, 12).unwrap().holds());
    assert!(degree_bound_check(&qexp, 1, 12).unwrap().holds());
    let bad = vec![Poly::<Rat>::one(), Poly::monomial(1)];
    assert_eq!(degree_bound(&bad, 2).violation, Some(1));
    assert_eq!(degree_bound(&bad, 1).violation, Some(1));
}

#[test]
fn depth_stability() {
    let q = fam("qexp", 24);
    for n in 2..=4 {
        let h = 5;
        let k = default_depth(n, h);
        assert_eq!(
            assemble_expansion_depth(&q, n, h, k).unwrap(),
            assemble_expansion_depth(&q, n, h, k + 2).unwrap()
        );
    }
}

#[test]
fn dual_formula() {
    let mono = dual_fn_logderiv(&fam("monomial", 40), 4, 6).unwrap();
    assert!(mono.matches());
    assert_eq!(mono.engine.coeffs, ints(&[1, 0, 0, 0, 0, 0, 0]));
    let falling = fam("falling", 40);
    for n in 1..=5 {
        let d = dual_fn_logderiv(&falling, n, 6).unwrap();
        assert!(d.matches(), "n={n}");
        assert_eq!(d.engine.valuation_violation(n), None);
    }
    let qexp = dual_fn_logderiv(&fam("qexp", 24), 3, 4).unwrap();
    assert!(qexp.matches());
    assert_eq!(qexp.engine.valuation_violation(3), None);
    assert!(matches!(
        dual_fn_logderiv(&fam("falling", 30), 6, 6),
        Err(Error::OrderExhausted { .. })
    ));
}

#[test]
fn general_columns() {
    // g_j = t^j: the log-derivative is 1
    let cols: Vec<Series<Rat>> = (0..=12).map(|j| Series::monomial(j, 14)).collect();
    assert_eq!(
        column_logderiv(&cols, 3, 4).unwrap().coeffs,
        ints(&[1, 0, 0, 0, 0])
    );
    let mut bad = cols.clone();
    bad[0] = Series::from_scalars(ints(&[1, 1, 0]));
    assert!(matches!(
        column_logderiv(&bad, 3, 4),
        Err(Error::PreconditionViolated(_))
    ));
    let g = Series::from_scalars(ints(&[0, 0, 1, 1, 0, 0]));
    assert_eq!(
        direct_logderiv(&g, 2, 3).unwrap(),
        vec![r(1, 1), r(1, 2), r(-1, 2), r(1, 2)]
    );
}

#[test]
fn result_summary() {
    let res = run_logderiv(&fam("qexp", 16), 3, 4).unwrap();
    assert!(res.matches());
    assert_eq!(res.xi_degrees.len(), 9);
    assert_eq!(res.xi_degrees[0], Some(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn engine_matches_oracle_on_random_families(seed in 0u64..10_000, n in 1usize..=4) {
        let h = 4;
        let f = random_family(seed, required_size(n, h));
        prop_assert_eq!(assemble_expansion(&f, n, h).unwrap(), oracle_logderiv(&f, n, h).unwrap());
    }

    #[test]
    fn degree_bound_on_random_families(seed in 0u64..10_000, n in 2usize..=6) {
        let f = random_family(seed, 10);
        let ctx = LogDerivContext::new(&f, 8).unwrap();
        prop_assert!(degree_bound_check(&ctx, n, 8).unwrap().holds());
    }
}
