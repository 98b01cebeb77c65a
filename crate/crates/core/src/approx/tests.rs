use num_rational::BigRational;

use super::*;
use crate::linalg::Matrix;
use crate::scalar::{frac, int};

type Q = BigRational;

fn v(xs: &[(i64, i64)]) -> Vec<Q> {
    xs.iter().map(|&(p, q)| frac(p, q)).collect()
}

#[test]
fn dyadic_examples() {
    assert_eq!(dyadic_below(&v(&[(1, 1)]), 2).unwrap(), v(&[(3, 4)]));
    assert_eq!(
        dyadic_below(&v(&[(1, 3), (1, 1)]), 3).unwrap(),
        v(&[(1, 8), (7, 8)])
    );
    assert_eq!(first_stage(&v(&[(1, 3), (1, 1)])).unwrap(), 3);
    assert_eq!(first_stage(&v(&[(5, 1)])).unwrap(), 0);
    assert_eq!(
        dyadic_below(&v(&[(1, 3)]), 2),
        Err(Error::StageBelowStart { stage: 2, first: 3 })
    );
    for i in 1..=12 {
        let g = dyadic_below(&v(&[(1, 1)]), i).unwrap();
        assert_eq!(int::<Q>(1) - g[0].clone(), Q::pow2(i).recip());
    }
}

#[test]
fn decomposition_of_one() {
    let r = summable_decomposition(&v(&[(1, 1)]), 5).unwrap();
    assert!(r.certificate.all());
    assert!(r.h_norm_sum <= int(3));
    assert_eq!(r.first_stage, 1);
    assert_eq!(r.stages.len(), 5);
    assert!(r.to_tsv().starts_with("stage\ttrace\tf\tg\th\tf_minus_g\n"));
}

#[test]
fn constant_targets_give_constant_stages() {
    let r = summable_decomposition(&v(&[(2, 3), (2, 3), (2, 3)]), 10).unwrap();
    for s in &r.stages {
        assert!(s.g.iter().all(|x| *x == s.g[0]));
    }
}

#[test]
fn decomposition_rejects_early_stop() {
    assert!(summable_decomposition(&v(&[(1, 100)]), 3).is_err());
    assert!(summable_decomposition(&v(&[(0, 1)]), 3).is_err());
}

#[test]
fn projection_suprema() {
    let spec = DenseSubgroupSpec::dyadic(4).unwrap();
    let st = projection_sup_realization(&v(&[(1, 1)]), &spec, 4).unwrap();
    let vals: Vec<Q> = st.iter().map(|s| s.values[0].clone()).collect();
    assert_eq!(vals, v(&[(1, 2), (3, 4), (7, 8), (15, 16)]));
    let one = DenseSubgroupSpec::new(vec![2]).unwrap();
    assert_eq!(
        projection_sup_realization(&v(&[(3, 2)]), &one, 1).unwrap()[0].values,
        v(&[(1, 1)])
    );
    // exact k/m target stays strictly below
    let st = projection_sup_realization(&v(&[(3, 4)]), &spec, 2).unwrap();
    assert_eq!(st[1].values, v(&[(2, 4)]));
    assert!(projection_sup_realization(&v(&[(1, 1)]), &spec, 0).is_err());
}

#[test]
fn subgroup_spec_validation() {
    assert!(DenseSubgroupSpec::new(vec![]).is_err());
    assert!(DenseSubgroupSpec::new(vec![2, 3]).is_err());
    assert!(DenseSubgroupSpec::new(vec![2, 2]).is_err());
    assert!(DenseSubgroupSpec::with_max(vec![2, 4, 8], 4).is_err());
    assert!(DenseSubgroupSpec::new(vec![3, 6, 12]).is_ok());
}

#[test]
fn condition_d_examples() {
    let z = K0Model::<Q>::new(Matrix::from_rows(vec![vec![int(1)]]).unwrap(), vec![1]).unwrap();
    let eps = frac(1, 8);
    let dy = DenseSubgroupSpec::dyadic(4).unwrap();
    assert_eq!(
        condition_d_check(&z, &dy, &eps, 4).unwrap().verdict,
        ConditionD::Plausible
    );
    let coarse = DenseSubgroupSpec::new(vec![2]).unwrap();
    assert_eq!(
        condition_d_check(&z, &coarse, &eps, 4).unwrap().verdict,
        ConditionD::Refuted
    );
    let trivial = DenseSubgroupSpec::new(vec![1]).unwrap();
    let r = condition_d_check(&z, &trivial, &frac(49, 100), 4).unwrap();
    assert_eq!(
        (r.verdict, r.covering_radius),
        (ConditionD::Refuted, frac(1, 2))
    );
    assert_eq!(
        condition_d_check(&z, &trivial, &frac(1, 2), 4)
            .unwrap()
            .verdict,
        ConditionD::Plausible
    );
}

#[test]
fn condition_d_uses_state_values() {
    // states (1/3) on a rank-one lattice with unit 3: values k/3 fill the gaps of {0, 1}
    let k = K0Model::<Q>::new(Matrix::from_rows(vec![vec![frac(1, 3)]]).unwrap(), vec![3]).unwrap();
    let trivial = DenseSubgroupSpec::new(vec![1]).unwrap();
    let r = condition_d_check(&k, &trivial, &frac(1, 6), 4).unwrap();
    assert_eq!(
        (r.verdict, r.covering_radius),
        (ConditionD::Plausible, frac(1, 6))
    );
}
