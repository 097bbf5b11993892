//! Values computed independently (high-precision floats, exact fractions)
//! and frozen here.

use macsym::arith::{binomial, cmp_rational, rational_to_f64};
use macsym::cf::{certified_prefix, extract_digits, parse_alpha};
use macsym::constants::{gauss_kuzmin_floor, gauss_kuzmin_mass, gauss_kuzmin_pmf, holder_kp, khinchin_k0};
use macsym::periodic::{
    f_periodic, holder_half_limit, hyp2f1_terminating, legendre_p, legendre_p_explicit, scaled_legendre,
    scaled_legendre_limit, three_scaled, two_periodic_via_hyp2f1, xd_counts, PeriodicSeq,
};
use macsym::proxy::{
    binomial_tail_check, exp_integral_e1, heavy_tail_block_experiment, laplace_closed_form, laplace_quadrature,
    BinomialLaw, CoupledStream, TailBound,
};
use macsym::symmetric::{esp_multiplicity, harmonic_mean, MultiplicityTable};
use macsym::Error;
use num_rational::BigRational;
use std::cmp::Ordering;

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

#[test]
fn holder_constants() {
    let cases = [
        (0.0, 1e-12, 2.685_452_001_065_306_4),
        (-1.0, 1e-12, 1.745_405_662_407_346_9),
        (-2.0, 1e-12, 1.450_340_328_495_630_4),
        (-0.5, 1e-10, 2.054_840_868_357_144_3),
    ];
    for (p, tol, want) in cases {
        let v = if p == 0.0 { khinchin_k0(tol) } else { holder_kp(p, tol) }.unwrap();
        assert!((v.value - want).abs() <= 2.0 * tol, "p={p}: {} vs {want}", v.value);
        assert!(v.error_bound <= tol);
    }
    let v = holder_kp(0.5, 1e-7).unwrap();
    assert!((v.value - 4.533_095_11).abs() < 1e-7, "{}", v.value);
    assert!(matches!(holder_kp(0.5, 1e-12), Err(Error::PrecisionExhausted { .. })));
}

#[test]
fn gauss_kuzmin() {
    assert!((gauss_kuzmin_pmf(1).unwrap().value - 0.415_037_499_278_843_8).abs() < 1e-15);
    let gap = (1.0 + 1.0 / 1_000_001.0f64).log2();
    assert!((1.0 - gauss_kuzmin_mass(1_000_000) - gap).abs() < 1e-12);
    // ⌊n·log2(4/3)⌋ at n = 1000 is 415
    assert_eq!(gauss_kuzmin_floor(1, 1000).unwrap(), 415);
    assert_eq!(gauss_kuzmin_floor(2, 1000).unwrap(), 169);
}

#[test]
fn pi_data_certifies_a_fixed_prefix() {
    let d = certified_prefix(&parse_alpha("pi-3").unwrap(), 8000).unwrap();
    assert_eq!(d.len(), 7846);
    assert_eq!(d.digits[..12], [7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14]);
}

#[test]
fn e_minus_two_harmonic_mean() {
    let d = extract_digits(&parse_alpha("e-2").unwrap(), 10_000).unwrap();
    let h = rational_to_f64(&harmonic_mean(&d.digits).unwrap());
    assert!((h - 1.498_948_226_205_9).abs() < 1e-12, "{h}");
}

#[test]
fn one_two_periodic_at_one_third() {
    let x = PeriodicSeq::from_digits(&[1, 2]).unwrap();
    let want = [1.5, 1.471_960_144_387_974, 1.483_239_697_419_132, 1.475_802_220_209_295, 1.471_648_980_615_303];
    let mut f = Vec::new();
    for (k, w) in (1..=5).zip(want) {
        let v = f_periodic(&x, k, &rat(1, 3), 14).unwrap();
        assert!((v.value.to_f64() - w).abs() < 1e-13, "k={k}");
        f.push(v);
    }
    let s = |i: usize| f[i].s.clone();
    // exact order of the first four, compared through S^(1/deg)
    let gt = |a: usize, b: usize| {
        let (da, db) = (f[a].degree as usize, f[b].degree as usize);
        cmp_rational(&num_traits::pow(s(a), db), &num_traits::pow(s(b), da)) == Ordering::Greater
    };
    // F1 > F3 > F4 > F2
    assert!(gt(0, 2) && gt(2, 3) && gt(3, 1));
    // the ordering F1 < F3 < F4 < F2 cannot hold: F1 is the arithmetic mean
    assert!(!(gt(2, 0) && gt(3, 2) && gt(1, 3)));
}

#[test]
fn half_limit_surd() {
    let h = holder_half_limit(&rat(1, 1), &rat(2, 1), 14).unwrap();
    assert!(h.rational.is_none());
    assert!(h.value.matches_literal("1.45710678118654"));
    let h = holder_half_limit(&rat(1, 1), &rat(4, 1), 6).unwrap();
    assert_eq!(h.rational, Some(rat(9, 4)));
}

#[test]
fn legendre_forms_agree() {
    for k in 0..=14 {
        for u in [rat(3, 1), rat(-1, 2), rat(7, 5)] {
            assert_eq!(legendre_p(k, &u), legendre_p_explicit(k, &u));
        }
    }
    // P_3(u) = (5u³ - 3u)/2 at u = 3
    assert_eq!(legendre_p(3, &rat(3, 1)), rat(63, 1));
    let lim = scaled_legendre_limit(3.0);
    assert!((lim - 1.457_106_781_186_547_5).abs() < 1e-15);
    let near = scaled_legendre(4000, 3.0).unwrap();
    let far = scaled_legendre(400, 3.0).unwrap();
    assert!((near - lim).abs() < (far - lim).abs());
    assert!((near - lim).abs() < 1e-3);
}

#[test]
fn hypergeometric_forms_match_subset_sums() {
    for (x, y) in [(rat(1, 1), rat(2, 1)), (rat(2, 3), rat(5, 1)), (rat(7, 2), rat(1, 9))] {
        for k in 1..=6u64 {
            let forms = [(6 * k - 2, 2 * k), (6 * k, 2 * k), (6 * k + 2, 2 * k + 1)];
            for (which, (n, m)) in forms.into_iter().enumerate() {
                let table = MultiplicityTable::from_pairs(&[(x.clone(), n / 2), (y.clone(), n / 2)]).unwrap();
                let direct = esp_multiplicity(&table, m).unwrap() / BigRational::from_integer(binomial(n, m).into());
                assert_eq!(two_periodic_via_hyp2f1(&x, &y, k, which).unwrap(), direct, "k={k} form {which}");
            }
        }
    }
}

#[test]
fn hypergeometric_pole() {
    assert!(matches!(hyp2f1_terminating(-3, -2, &rat(-1, 1), &rat(1, 2)), Err(Error::Pole { index: 2 })));
    // ₂F₁(-2, b; c; 1) = (c-b)_2 / (c)_2 with b = -3, c = 2: (5·6)/(2·3) = 5
    assert_eq!(hyp2f1_terminating(-2, -3, &rat(2, 1), &rat(1, 1)).unwrap(), rat(5, 1));
}

#[test]
fn three_prefactor_roots() {
    let t = three_scaled(10_000, None, 14).unwrap();
    let want = ["0.38490131289603", "0.38490684923584", "0.38490408094109"];
    for (d, w) in t.prefactor_roots.iter().zip(want) {
        assert!(d.matches_literal(w), "{d} vs {w}");
    }
}

#[test]
fn xd_frequencies() {
    assert_eq!(xd_counts(2).unwrap(), [(2, 6), (1, 34)]);
    assert_eq!(xd_counts(3).unwrap(), [(2, 15), (3, 8), (1, 67)]);
    for d in 2..=6 {
        let total: u64 = xd_counts(d).unwrap().iter().map(|c| c.1).sum();
        assert_eq!(total, 10 * d * d);
    }
}

#[test]
fn binomial_tails() {
    let law = BinomialLaw::new(100, &rat(1, 2)).unwrap();
    assert!((rational_to_f64(&law.upper_tail(70)) - 3.925_069_822_796_835e-5).abs() < 1e-18);
    let law = BinomialLaw::new(100, &rat(1, 4)).unwrap();
    assert!((rational_to_f64(&law.lower_tail(15)) - 0.011_083_267_507_460_144).abs() < 1e-16);
    assert_eq!(law.upper_tail(0), rat(1, 1));

    let law = BinomialLaw::new(64, &rat(1, 8)).unwrap();
    let c = binomial_tail_check(&law, TailBound::Moment { m: 16, tau: rat(4, 1) }).unwrap();
    assert!((rational_to_f64(&c.tail) - 0.004_654_595_768_052_329).abs() < 1e-15);
    assert!(c.holds);
}

#[test]
fn laplace_transform() {
    assert!((exp_integral_e1(1.0) - 0.219_383_934_395_520_3).abs() < 1e-13);
    assert!((laplace_closed_form(1.0) - 0.148_495_506_775_922).abs() < 1e-13);
    assert!((exp_integral_e1(3.0) - 0.013_048_381_094_197_04).abs() < 1e-16);
    for s in [0.1, 0.5, 1.0, 2.0] {
        assert!((laplace_quadrature(s) - laplace_closed_form(s)).abs() < 1e-12, "s={s}");
    }
    let reference = [
        (5.0, 9.964_690_427_088_381e-4),
        (10.0, 3.830_240_465_631_609e-6),
        (20.0, 9.404_856_430_858_149e-11),
    ];
    for (s, want) in reference {
        let q = laplace_quadrature(s);
        let c = laplace_closed_form(s);
        assert!((q / want - 1.0).abs() < 1e-12, "s={s}");
        // e^{-s} and s·E_1(s) cancel, losing about log10(s) digits
        assert!((c / want - 1.0).abs() < 1e-11, "s={s}");
    }
}

#[test]
fn heavy_tail_blocks() {
    let rep = heavy_tail_block_experiment(16, 2000, 7).unwrap();
    assert_eq!(rep.shortfalls, 0);
    assert!(rep.laplace.iter().all(|p| p.holds()));
}

#[test]
fn coupled_example_and_theta() {
    let s = CoupledStream::from_uniforms(&[0.37, 0.19, 0.88]).unwrap();
    assert_eq!(s.alpha_digits, [2, 7, 1]);
    assert_eq!(s.beta_digits, [4, 8, 2]);
    // θ = [1, 7, 2] = 1/(1 + 1/(7 + 1/2)) = 15/17
    assert_eq!(s.theta_exact(), rat(15, 17));
    assert!((s.theta - 15.0 / 17.0).abs() < 1e-15);
}
