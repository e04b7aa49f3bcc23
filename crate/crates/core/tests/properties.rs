//! Property-based invariants over randomized inputs.

mod common;

use proptest::prelude::*;

use solwave::decayometer::predicted_rates;
use solwave::grid::{
    forward_transform, inverse_transform, l2_norm, sample_1d, Domain, Field,
};
use solwave::multiplier::{self, SobolevIndex};
use solwave::solver::{fixed_point_solve, Nonlinearity, SolveConfig};
use solwave::symbols::{HomogeneousTerm, PolyhomogeneousSymbol, SymbolDerivativeSpec};
use solwave::{Complex64, GridSpec};

fn field_strategy(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_map(|pairs| pairs.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

fn rel_l2(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum::<f64>().sqrt();
    num / den.max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn transform_round_trip(values in field_strategy(128), l in 2.0f64..50.0) {
        let g = GridSpec::line(l, 128).unwrap();
        let f = Field::new(g, Domain::Space, values).unwrap();
        let back = inverse_transform(&forward_transform(&f).unwrap()).unwrap();
        prop_assert!(rel_l2(back.values(), f.values()) < 1e-12);
    }

    #[test]
    fn transform_linearity(
        u in field_strategy(64),
        v in field_strategy(64),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
    ) {
        let g = GridSpec::line(10.0, 64).unwrap();
        let fu = Field::new(g, Domain::Space, u.clone()).unwrap();
        let fv = Field::new(g, Domain::Space, v.clone()).unwrap();
        let combo: Vec<Complex64> = u.iter().zip(&v).map(|(x, y)| a * x + b * y).collect();
        let fc = Field::new(g, Domain::Space, combo).unwrap();
        let lhs = forward_transform(&fc).unwrap();
        let hu = forward_transform(&fu).unwrap();
        let hv = forward_transform(&fv).unwrap();
        let rhs: Vec<Complex64> = hu
            .values()
            .iter()
            .zip(hv.values())
            .map(|(x, y)| a * x + b * y)
            .collect();
        prop_assert!(rel_l2(lhs.values(), &rhs) < 1e-12);
    }

    #[test]
    fn inverse_transform_linearity(
        u in field_strategy(64),
        v in field_strategy(64),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
    ) {
        let g = GridSpec::line(10.0, 64).unwrap();
        let fu = Field::new(g, Domain::Frequency, u.clone()).unwrap();
        let fv = Field::new(g, Domain::Frequency, v.clone()).unwrap();
        let combo: Vec<Complex64> = u.iter().zip(&v).map(|(x, y)| a * x + b * y).collect();
        let fc = Field::new(g, Domain::Frequency, combo).unwrap();
        let lhs = inverse_transform(&fc).unwrap();
        let iu = inverse_transform(&fu).unwrap();
        let iv = inverse_transform(&fv).unwrap();
        let rhs: Vec<Complex64> = iu
            .values()
            .iter()
            .zip(iv.values())
            .map(|(x, y)| a * x + b * y)
            .collect();
        prop_assert!(rel_l2(lhs.values(), &rhs) < 1e-12);
    }

    #[test]
    fn parseval_on_random_fields(values in field_strategy(128)) {
        let g = GridSpec::line(16.0, 128).unwrap();
        let f = Field::new(g, Domain::Space, values).unwrap();
        let hat = forward_transform(&f).unwrap();
        let lhs = l2_norm(&f).unwrap().powi(2);
        let rhs = g.freq_spacing() / (2.0 * std::f64::consts::PI)
            * hat.values().iter().map(|z| z.norm_sqr()).sum::<f64>();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.max(1e-30));
    }

    #[test]
    fn weighted_norm_at_zero_indices_is_l2(values in field_strategy(64)) {
        let g = GridSpec::line(10.0, 64).unwrap();
        let f = Field::new(g, Domain::Space, values).unwrap();
        let a = multiplier::weighted_sobolev_norm(&f, SobolevIndex::new(0.0, 0.0)).unwrap();
        let b = l2_norm(&f).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn homogeneous_scaling_random_terms(
        order in 0.0f64..3.0,
        re_p in -2.0f64..2.0,
        im_p in -2.0f64..2.0,
        re_m in -2.0f64..2.0,
        im_m in -2.0f64..2.0,
        xi in 0.01f64..10.0,
        sign in prop::bool::ANY,
    ) {
        let t = HomogeneousTerm::line(
            order,
            Complex64::new(re_p, im_p),
            Complex64::new(re_m, im_m),
        ).unwrap();
        let x = if sign { xi } else { -xi };
        for lambda in [2.0, 10.0, 100.0] {
            let lhs = t.eval_1d(lambda * x);
            let rhs = t.eval_1d(x) * lambda.powf(order);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1e-300));
        }
    }

    #[test]
    fn derived_order_bookkeeping(
        order in 1.0f64..3.0,
        gamma in 0usize..3,
        sigma in 0usize..2,
    ) {
        let t = HomogeneousTerm::abs_power(order).unwrap();
        let spec = SymbolDerivativeSpec::new(gamma, gamma, sigma);
        if let Ok(d) = t.derived(&spec) {
            prop_assert!((d.order() - (order - sigma as f64)).abs() < 1e-12);
        }
    }

    #[test]
    fn critical_integer_brackets(m in 1.0f64..4.0, two_d in prop::bool::ANY) {
        let dim = if two_d { 2 } else { 1 };
        let term = if two_d {
            HomogeneousTerm::radial(m, Complex64::new(1.0, 0.0)).unwrap()
        } else {
            HomogeneousTerm::abs_power(m).unwrap()
        };
        let p = PolyhomogeneousSymbol::new(Complex64::new(1.0, 0.0), vec![term], dim).unwrap();
        if let Some(r) = predicted_rates(&p) {
            let k = r.critical_integer as f64;
            prop_assert!(k < r.weight_threshold && r.weight_threshold <= k + 1.0);
        }
    }

    #[test]
    fn manufactured_solutions_recovered(
        m in 1.0f64..2.5,
        p0 in 0.5f64..3.0,
        width in 1.0f64..4.0,
    ) {
        let g = GridSpec::line(30.0, 256).unwrap();
        let p = PolyhomogeneousSymbol::new(
            Complex64::new(p0, 0.0),
            vec![HomogeneousTerm::abs_power(m).unwrap()],
            1,
        ).unwrap();
        let nl = Nonlinearity::monomial(2, Complex64::new(1.0, 0.0)).unwrap();
        let target = sample_1d(g, move |x| (-x * x / (2.0 * width)).exp()).unwrap();
        let mut f = multiplier::apply(&p, &target).unwrap();
        let ft = nl.evaluate(&target).unwrap();
        for (v, &w) in f.values_mut().iter_mut().zip(ft.values()) {
            *v -= w;
        }
        let out = fixed_point_solve(&p, &nl, Some(&f), &target, &SolveConfig::default()).unwrap();
        prop_assert!(out.converged);
        prop_assert_eq!(out.iterations_used, 1);
        prop_assert!(rel_l2(out.profile.values(), target.values()) < 1e-10);
    }

    #[test]
    fn translation_covariance_random_shift(shift in 0usize..256, seed in 0u64..1000) {
        let g = GridSpec::line(25.0, 256).unwrap();
        // cheap deterministic pseudo-random smooth field
        let s = seed as f64;
        let u = sample_1d(g, move |x| {
            (-x * x / 30.0).exp() * ((0.3 + s * 0.001) * x).sin()
        }).unwrap();
        let p = PolyhomogeneousSymbol::new(
            Complex64::new(1.0, 0.0),
            vec![HomogeneousTerm::abs_power(1.0).unwrap()],
            1,
        ).unwrap();
        let mut shifted = u.clone();
        shifted.values_mut().rotate_right(shift);
        let a = multiplier::apply(&p, &shifted).unwrap();
        let mut b = multiplier::apply(&p, &u).unwrap();
        b.values_mut().rotate_right(shift);
        prop_assert!(rel_l2(a.values(), b.values()) < 1e-11);
    }
}

#[test]
fn oracle_matches_half_order_closed_form() {
    // anchor the quadrature oracle itself against the elementary K_{1/2}
    for x in [0.1, 0.7, 3.0, 11.0, 20.0] {
        let closed = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
        let quad = common::bessel_k_quadrature(0.5, x);
        assert!(common::rel_err(quad, closed) < 1e-12, "x={x}");
    }
}
