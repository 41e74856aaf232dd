use proptest::prelude::*;
use umbra_core::family::{
    check_gf_identity, compute_fn, dual_xi, random_xi_table, tilde_family, vanish_lemma_check,
    Family, FamilySpec, LemmaReport,
};
use umbra_core::poly::Poly;
use umbra_core::series::Series;
use umbra_core::{Error, Rat, Scalar};

fn r(n: i64, d: i64) -> Rat {
    Rat::ratio(n, d)
}

fn poly(cs: &[i64]) -> Poly<Rat> {
    Poly::new(cs.iter().map(|&c| Rat::from_i64(c)).collect())
}

/// `x (x-1) ... (x-n+1)` by repeated multiplication.
fn falling_product(n: usize) -> Poly<Rat> {
    (0..n).fold(Poly::one(), |acc, k| acc.mul(&poly(&[-(k as i64), 1])))
}

fn fact(n: usize) -> Rat {
    (1..=n).fold(Rat::from_i64(1), |acc, k| acc * Rat::from_i64(k as i64))
}

/// Solves `x^m / m! = sum_{n<=m} p_n [y^m] f_n / n!` for the family with
/// `[y^m] f_n = c(n, m)`, on raw coefficient vectors.
fn solve_from_fns(max: usize, c: impl Fn(usize, usize) -> Rat) -> Vec<Vec<Rat>> {
    let mut ps: Vec<Vec<Rat>> = Vec::new();
    for m in 0..=max {
        let mut p = vec![Rat::from_i64(0); m + 1];
        p[m] = Rat::from_i64(1);
        for (n, pn) in ps.iter().enumerate() {
            let k = c(n, m) * fact(m) / fact(n);
            for (i, a) in pn.iter().enumerate() {
                p[i] = p[i].clone() - k.clone() * a.clone();
            }
        }
        ps.push(p);
    }
    ps
}

/// `e^{xy}` against `sum p_n f_n / n!` on every `x^a y^b`, without using the
/// degree structure.
fn gf_brute_force(fam: &Family<Rat>, window: usize) -> bool {
    (0..=window).all(|a| {
        (0..=window).all(|b| {
            let lhs = (0..=window).fold(Rat::from_i64(0), |acc, n| {
                acc + fam.poly(n).coeff(a) * fam.f(n).coeff(b).clone() / fact(n)
            });
            let rhs = if a == b {
                Rat::from_i64(1) / fact(a)
            } else {
                Rat::from_i64(0)
            };
            lhs == rhs
        })
    })
}

#[test]
fn zero_xi_table_is_monomial() {
    let table: Vec<Vec<Rat>> = (0..6)
        .map(|n| (0..=n).map(|k| Rat::from_i64((k == 0) as i64)).collect())
        .collect();
    let fam = Family::from_xi("zero", &table, 5).unwrap();
    assert_eq!(fam.polys(), Family::<Rat>::monomial(5, 5).polys());
}

#[test]
fn falling_from_xi() {
    let table = vec![
        vec![r(1, 1)],
        vec![r(1, 1), r(0, 1)],
        vec![r(1, 1), r(-1, 2), r(0, 1)],
        vec![r(1, 1), r(-1, 1), r(2, 3), r(0, 1)],
    ];
    let fam = Family::from_xi("xi", &table, 3).unwrap();
    for n in 0..=3 {
        assert_eq!(fam.poly(n), &falling_product(n));
    }
    assert_eq!(
        Family::from_xi("bad", &[vec![r(2, 1)]], 0),
        Err(Error::BadLeadingCoefficient { index: 0 })
    );
}

#[test]
fn shifted_family_violates_vanishing() {
    let polys = vec![poly(&[1]), poly(&[1, 1]), poly(&[1, 2, 1])];
    let fam = Family::from_polys("shifted", polys, 2).unwrap();
    assert_eq!(
        vanish_lemma_check(&fam).unwrap(),
        LemmaReport {
            f0_is_one: false,
            all_vanish: false
        }
    );
    assert_ne!(fam.f(0).coeff(1), &r(0, 1));
}

#[test]
fn binomial_constructor_matches_products() {
    let f = Series::<Rat>::exp_y(8).sub(&Series::one(8));
    let fam = Family::binomial("expm1", &f, 8, 8).unwrap();
    for n in 0..=8 {
        assert_eq!(fam.poly(n), &falling_product(n));
        assert_eq!(fam.f(n), &f.pow(n));
    }
    let y = Series::<Rat>::variable(5);
    assert_eq!(
        Family::binomial("y", &y, 5, 5).unwrap().polys(),
        Family::<Rat>::monomial(5, 5).polys()
    );
}

#[test]
fn binomial_y_plus_y2_second_polynomial() {
    let f = Series::from_scalars([0, 1, 1, 0, 0].map(Rat::from_i64).to_vec());
    let fam = Family::binomial("y+y^2", &f, 4, 4).unwrap();
    // 2! [y^2] exp(x (y - y^2 + ...)) = x^2 - 2x
    assert_eq!(fam.poly(2), &poly(&[0, -2, 1]));
}

#[test]
fn qexp_matches_triangular_solve() {
    let max = 8;
    let expected = solve_from_fns(max, |n, m| {
        if m < n {
            return Rat::from_i64(0);
        }
        let rate = r((n * n.saturating_sub(1)) as i64, 2);
        (0..m - n).fold(Rat::from_i64(1), |acc, _| acc * rate.clone()) / fact(m - n)
    });
    let fam = Family::<Rat>::qexp(max, max);
    for n in 0..=max {
        assert_eq!(
            fam.poly(n).coeffs(),
            Poly::new(expected[n].clone()).coeffs(),
            "p_{n}"
        );
    }
    assert_eq!(fam.poly(4), &poly(&[0, 0, 30, -12, 1]));
}

#[test]
fn fns_constructor_agrees_with_binomial() {
    let falling = Family::<Rat>::falling(7, 7);
    let f = falling.binomial_series().unwrap().clone();
    let fns: Vec<_> = (0..=7).map(|n| f.pow(n)).collect();
    assert_eq!(
        Family::from_fns("fns", &fns, 7).unwrap().polys(),
        falling.polys()
    );
    let monomial_fns: Vec<_> = (0..=5).map(|n| Series::<Rat>::monomial(n, 5)).collect();
    assert_eq!(
        Family::from_fns("y^n", &monomial_fns, 5).unwrap().polys(),
        Family::<Rat>::monomial(5, 5).polys()
    );
}

#[test]
fn dual_tables() {
    let mono = Family::<Rat>::monomial(5, 5);
    assert!(mono
        .xi_star_table()
        .iter()
        .all(|row| row[1..].iter().all(|c| *c == r(0, 1))));
    let falling = Family::<Rat>::falling(6, 6);
    // x^2 = p_2 + p_1 = C(2,0) p_2 + C(2,1) xi*_1^2 p_1
    assert_eq!(falling.xi_star(2, 1), r(1, 2));
    let star = dual_xi(falling.xi_table()).unwrap();
    assert_eq!(star, falling.xi_star_table());
    assert_eq!(dual_xi(&star).unwrap(), falling.xi_table());
    assert_eq!(
        falling.dual().unwrap().dual().unwrap().polys(),
        falling.polys()
    );
}

#[test]
fn dual_change_of_basis_matrices_are_inverse() {
    let fam = Family::<Rat>::qexp(6, 6);
    let dual = fam.dual().unwrap();
    // G_P G_{P*} = 1 on monomials: sum_k [x^k] p*_n p_k = x^n
    for n in 0..=6 {
        let back = (0..=n).fold(Poly::zero(), |acc, k| {
            acc.add(&fam.poly(k).scale(&dual.poly(n).coeff(k)))
        });
        assert_eq!(back, Poly::monomial(n));
    }
}

#[test]
fn series_from_dual_table() {
    let mono = Family::<Rat>::monomial(6, 6);
    for n in 0..=6 {
        assert_eq!(
            compute_fn(mono.xi_star_table(), n, 6).unwrap(),
            Series::monomial(n, 6)
        );
    }
    let falling = Family::<Rat>::falling(6, 6);
    let f1 = compute_fn(falling.xi_star_table(), 1, 3).unwrap();
    assert_eq!(f1.coeffs(), &[r(0, 1), r(1, 1), r(1, 2), r(1, 6)]);
    assert_eq!(
        compute_fn(falling.xi_star_table(), 1, 9),
        Err(Error::InsufficientTable {
            needed: 9,
            available: 6
        })
    );
}

#[test]
fn f0_is_one_exactly_when_polynomials_vanish() {
    let fam = Family::<Rat>::falling(8, 8);
    assert_eq!(
        vanish_lemma_check(&fam).unwrap(),
        LemmaReport {
            f0_is_one: true,
            all_vanish: true
        }
    );
    let fam = Family::<Rat>::monomial(8, 8);
    assert!(vanish_lemma_check(&fam).unwrap().f0_is_one);
}

#[test]
fn tilde_examples() {
    let mono = tilde_family(&Family::<Rat>::monomial(6, 6)).unwrap();
    assert_eq!(mono.family.polys(), Family::<Rat>::monomial(5, 5).polys());
    assert_eq!(mono.family.fns()[3], Series::monomial(3, 5));
    let falling = Family::<Rat>::falling(7, 7);
    let tilde = tilde_family(&falling).unwrap();
    assert_eq!(tilde.family.poly(1), &poly(&[-1, 1]));
    // f~_n / f_n = f'
    let fp = falling.binomial_series().unwrap().deriv();
    for n in 0..6 {
        let ratio = tilde.fns_formula[n]
            .shift_down(n)
            .unwrap()
            .div(&falling.f(n).shift_down(n).unwrap())
            .unwrap();
        assert_eq!(ratio, fp.truncate(ratio.order() as usize));
    }
    // with f_0 = 1 the tilde family is p_{n+1} / x
    for n in 0..6 {
        assert_eq!(
            Some(tilde.family.poly(n).clone()),
            falling.poly(n + 1).div_x()
        );
    }
}

#[test]
fn gf_identity_on_builtins() {
    for name in ["monomial", "falling", "qexp"] {
        let fam = Family::<Rat>::builtin(name, 8, 8).unwrap();
        assert_eq!(check_gf_identity(&fam, 8), None, "{name}");
        assert!(gf_brute_force(&fam, 8), "{name}");
    }
}

#[test]
fn specs_build_families() {
    let spec = FamilySpec::parse("binomial:exp(y)-1").unwrap();
    let fam: Family<Rat> = spec.build(6, 6).unwrap();
    assert_eq!(fam.polys(), Family::<Rat>::falling(6, 6).polys());
    assert_eq!(
        FamilySpec::parse("builtin:nope"),
        Err(Error::UnknownFamily("nope".into()))
    );
    assert!(FamilySpec::parse("qexp").is_err());
    let v = serde_json::json!({"kind": "xi", "N": 2, "data": [[["1","1"]], [["1","1"], ["0","1"]], [["1","1"], ["-1","2"], ["0","1"]]]});
    let spec = FamilySpec::from_json(&v).unwrap();
    assert_eq!(spec.dim, Some(2));
    // fixed tables are used at the size they have
    let fam: Family<Rat> = spec.build(10, 10).unwrap();
    assert_eq!(fam.max_index(), 2);
    assert_eq!(fam.poly(2), &poly(&[0, -1, 1]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructors_agree(tail in prop::collection::vec((-3i64..=3, 1i64..=3), 5)) {
        let mut c = vec![Rat::from_i64(0), Rat::from_i64(1)];
        c.extend(tail.iter().map(|&(n, d)| Rat::ratio(n, d)));
        let f = Series::from_scalars(c);
        let a = Family::binomial("f", &f, 6, 6).unwrap();
        let fns: Vec<_> = (0..=6).map(|n| f.pow(n)).collect();
        let b = Family::from_fns("f", &fns, 6).unwrap();
        prop_assert_eq!(a.polys(), b.polys());
        prop_assert_eq!(a.xi_table(), b.xi_table());
        prop_assert_eq!(a.fns(), b.fns());
    }

    #[test]
    fn random_families_satisfy_gf_identity(seed in 0u64..1000, vanishing in any::<bool>()) {
        let fam = Family::from_xi("r", &random_xi_table::<Rat>(seed, 7, vanishing), 7).unwrap();
        prop_assert!(check_gf_identity(&fam, 7).is_none());
        prop_assert!(gf_brute_force(&fam, 7));
        let lemma = vanish_lemma_check(&fam).unwrap();
        prop_assert_eq!(lemma.f0_is_one, lemma.all_vanish);
    }

    #[test]
    fn duality_round_trip(seed in 0u64..1000) {
        let table = random_xi_table::<Rat>(seed, 6, false);
        let fam = Family::from_xi("r", &table, 6).unwrap();
        let dual = Family::from_xi("d", &dual_xi(&table).unwrap(), 6).unwrap();
        prop_assert_eq!(dual.polys(), fam.dual_polys());
        prop_assert_eq!(dual.xi_star_table(), fam.xi_table());
    }
}
