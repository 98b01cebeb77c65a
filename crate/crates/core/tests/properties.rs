use cuntz_core::approx::summable_decomposition;
use cuntz_core::elliott::{functor_g_mor, functor_g_obj, validate_morphism};
use cuntz_core::goodearl::{cutdown, dim_fn, DiagonalElement, MeasureSpec};
use cuntz_core::sample;
use cuntz_core::wmodel::{oracle::oracle_leq, WModel};
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

type Q = BigRational;

fn model(seed: u64) -> (WModel<Q>, rand_chacha::ChaCha8Rng) {
    let mut rng = sample::rng(seed);
    let m = sample::wmodel(&mut rng, 4, 4);
    (m, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compare_matches_rule_oracle(seed in any::<u64>()) {
        let (m, mut rng) = model(seed);
        for _ in 0..50 {
            let x = sample::class(&mut rng, &m);
            let y = sample::class(&mut rng, &m);
            prop_assert_eq!(m.compare(&x, &y).unwrap(), oracle_leq(&m, &x, &y));
        }
    }

    #[test]
    fn order_is_reflexive_and_transitive(seed in any::<u64>()) {
        let (m, mut rng) = model(seed);
        let xs: Vec<_> = (0..12).map(|_| sample::class(&mut rng, &m)).collect();
        let le: Vec<Vec<bool>> = xs
            .iter()
            .map(|a| xs.iter().map(|b| m.compare(a, b).unwrap()).collect())
            .collect();
        for i in 0..xs.len() {
            prop_assert!(le[i][i]);
            for j in 0..xs.len() {
                for k in 0..xs.len() {
                    prop_assert!(!(le[i][j] && le[j][k]) || le[i][k]);
                }
            }
        }
    }

    #[test]
    fn addition_respects_the_order(seed in any::<u64>()) {
        let (m, mut rng) = model(seed);
        for _ in 0..30 {
            let (x, y) = sample::ordered_pair(&mut rng, &m);
            let z = sample::class(&mut rng, &m);
            let xz = m.add(&x, &z).unwrap();
            let yz = m.add(&y, &z).unwrap();
            prop_assert!(m.compare(&xz, &yz).unwrap(), "{:?} {:?} {:?}", x, y, z);
        }
    }

    #[test]
    fn gamma_is_additive(seed in any::<u64>()) {
        let (m, mut rng) = model(seed);
        for _ in 0..30 {
            let x = sample::class(&mut rng, &m);
            let y = sample::class(&mut rng, &m);
            let sum = m.gamma(&m.add(&x, &y).unwrap()).unwrap();
            let parts: Vec<Q> = m.gamma(&x).unwrap().into_iter()
                .zip(m.gamma(&y).unwrap())
                .map(|(a, b)| a + b)
                .collect();
            prop_assert_eq!(sum, parts);
        }
    }

    #[test]
    fn complements_add_back(seed in any::<u64>()) {
        let (m, mut rng) = model(seed);
        for _ in 0..30 {
            let (x, y) = sample::ordered_pair(&mut rng, &m);
            if let Some(z) = m.complement(&x, &y).unwrap() {
                prop_assert_eq!(m.add(&x, &z).unwrap(), y);
            }
        }
    }

    #[test]
    fn induced_maps_preserve_order_and_unit(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let a = sample::invariant::<Q, _>(&mut rng, 4, 3);
        let (theta, b) = sample::morphism_from(&mut rng, &a, 4);
        prop_assert!(validate_morphism(&theta, &a, &b).unwrap().is_valid());
        let (wa, wb) = (functor_g_obj(&a).unwrap(), functor_g_obj(&b).unwrap());
        let phi = functor_g_mor(&theta, &a, &b).unwrap();
        prop_assert_eq!(phi.apply(&wa.unit_class()).unwrap(), wb.unit_class());
        for _ in 0..30 {
            let (x, y) = sample::ordered_pair(&mut rng, &wa);
            let (fx, fy) = (phi.apply(&x).unwrap(), phi.apply(&y).unwrap());
            prop_assert!(wb.compare(&fx, &fy).unwrap());
        }
    }

    #[test]
    fn dyadic_decomposition_is_certified(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let f: Vec<Q> = sample::target(&mut rng, 5);
        let report = summable_decomposition(&f, 14).unwrap();
        prop_assert!(report.certificate.all(), "{:?}", report.certificate);
    }

    #[test]
    fn step_approximants_refine(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let f = sample::step_target::<Q, _>(&mut rng);
        let grid: Vec<Q> = (0..=48).map(|k| Q::new(k.into(), 48.into())).collect();
        let coarse = f.step_approximant(4).unwrap();
        let fine = f.step_approximant(8).unwrap();
        for x in &grid {
            let gap = f.eval(x) - fine.eval(x);
            prop_assert!(!gap.is_negative() && gap <= Q::new(1.into(), 8.into()));
            prop_assert!(coarse.eval(x) <= fine.eval(x));
        }
    }

    #[test]
    fn dimension_functions_are_monotone_and_additive(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let a = DiagonalElement::new((0..3).map(|_| sample::plfn::<Q, _>(&mut rng)).collect()).unwrap();
        let b = DiagonalElement::new(vec![sample::plfn::<Q, _>(&mut rng)]).unwrap();
        let mu: MeasureSpec<Q> = sample::full_support_measure(&mut rng);
        let mut last = dim_fn(&a, &mu);
        for k in 1..=8 {
            let d = dim_fn(&cutdown(&a, &Q::new(k.into(), 8.into())).unwrap(), &mu);
            prop_assert!(d <= last);
            last = d;
        }
        let weighted = (dim_fn(&a, &mu) * Q::from_integer(3.into()) + dim_fn(&b, &mu))
            / Q::from_integer(4.into());
        prop_assert_eq!(dim_fn(&a.direct_sum(&b), &mu), weighted);
    }
}
