use num_rational::BigRational;

use super::*;
use crate::scalar::{frac, int};

type Q = BigRational;

fn two_trace() -> ElliottInvariant<Q> {
    let r = Matrix::from_rows(vec![
        vec![frac(1, 2), frac(1, 2)],
        vec![frac(1, 4), frac(3, 4)],
    ])
    .unwrap();
    ElliottInvariant {
        states: r,
        unit: vec![1, 1],
        k1: AbelianGroupData::trivial(),
        traces: TraceSimplex::numbered(2).unwrap(),
    }
}

/// One trace averaging the two traces of `two_trace`.
fn collapsed() -> ElliottInvariant<Q> {
    let r = Matrix::from_rows(vec![vec![frac(3, 8), frac(5, 8)]]).unwrap();
    ElliottInvariant {
        states: r,
        unit: vec![1, 1],
        k1: AbelianGroupData::trivial(),
        traces: TraceSimplex::numbered(1).unwrap(),
    }
}

fn collapse_morphism() -> InvariantMorphism<Q> {
    InvariantMorphism {
        theta0: Matrix::int_identity(2),
        theta1: Matrix::from_rows(vec![]).unwrap(),
        gamma: Matrix::from_rows(vec![vec![frac(1, 2)], vec![frac(1, 2)]]).unwrap(),
    }
}

#[test]
fn jiang_su_invariant_is_valid() {
    let z = ElliottInvariant::<Q>::jiang_su();
    assert!(validate_invariant(&z).is_valid());
    assert_eq!(functor_g_obj(&z).unwrap(), WModel::w_of_z());
}

#[test]
fn unnormalized_pairing_is_reported() {
    let mut z = ElliottInvariant::<Q>::jiang_su();
    z.states = Matrix::from_rows(vec![vec![frac(1, 2)]]).unwrap();
    let report = validate_invariant(&z);
    assert_eq!(report.violations.len(), 1);
    assert!(functor_g_obj(&z).is_err());
}

#[test]
fn identity_morphism_is_valid_and_maps_to_identity() {
    let a = two_trace();
    let id = InvariantMorphism::identity(&a);
    assert!(validate_morphism(&id, &a, &a).unwrap().is_valid());
    assert!(functor_g_mor(&id, &a, &a).unwrap().is_identity());
}

#[test]
fn doubling_the_unit_is_rejected() {
    let z = ElliottInvariant::<Q>::jiang_su();
    let theta = InvariantMorphism {
        theta0: Matrix::from_rows(vec![vec![2]]).unwrap(),
        theta1: Matrix::from_rows(vec![]).unwrap(),
        gamma: Matrix::from_rows(vec![vec![int(1)]]).unwrap(),
    };
    let report = validate_morphism(&theta, &z, &z).unwrap();
    assert!(report
        .violations
        .iter()
        .any(|v| v.contains("unit not preserved")));
}

#[test]
fn trace_collapse() {
    let (a, b) = (two_trace(), collapsed());
    let theta = collapse_morphism();
    assert!(validate_morphism(&theta, &a, &b).unwrap().is_valid());
    let g = functor_g_mor(&theta, &a, &b).unwrap();
    let f = CuntzClass::soft(vec![frac(1, 2), frac(3, 4)]).unwrap();
    assert_eq!(
        g.apply(&f).unwrap(),
        CuntzClass::soft(vec![frac(5, 8)]).unwrap()
    );
    assert_eq!(
        g.apply(&CuntzClass::Proj(vec![1, 1])).unwrap(),
        CuntzClass::Proj(vec![1, 1])
    );

    let mut bad = collapse_morphism();
    bad.gamma = Matrix::from_rows(vec![vec![frac(1, 3)], vec![frac(2, 3)]]).unwrap();
    let report = validate_morphism(&bad, &a, &b).unwrap();
    assert!(report
        .violations
        .iter()
        .any(|v| v.contains("does not commute")));
}

#[test]
fn shape_mismatch_is_an_error() {
    let (a, b) = (two_trace(), collapsed());
    let mut theta = collapse_morphism();
    theta.gamma = Matrix::identity(2);
    assert!(validate_morphism(&theta, &a, &b).is_err());
}

#[test]
fn torsion_well_definedness() {
    let mut a = ElliottInvariant::<Q>::jiang_su();
    a.k1 = AbelianGroupData {
        free_rank: 0,
        torsion: vec![2],
    };
    let mut b = ElliottInvariant::<Q>::jiang_su();
    b.k1 = AbelianGroupData {
        free_rank: 1,
        torsion: vec![4],
    };
    let mut theta = InvariantMorphism::identity(&ElliottInvariant::<Q>::jiang_su());
    // Z/2 -> Z ⊕ Z/4 sending the generator to (0, 2) is fine, to (0, 1) is not
    theta.theta1 = Matrix::from_rows(vec![vec![0], vec![2]]).unwrap();
    assert!(validate_morphism(&theta, &a, &b).unwrap().is_valid());
    theta.theta1 = Matrix::from_rows(vec![vec![0], vec![1]]).unwrap();
    assert!(!validate_morphism(&theta, &a, &b).unwrap().is_valid());
    assert!(!validate_invariant(&ElliottInvariant::<Q> {
        k1: AbelianGroupData {
            free_rank: 0,
            torsion: vec![4, 6]
        },
        ..ElliottInvariant::jiang_su()
    })
    .is_valid());
}

#[test]
fn composition_matches_functor_of_composite() {
    let (a, b) = (two_trace(), collapsed());
    let theta = collapse_morphism();
    let id_b = InvariantMorphism::identity(&b);
    let composite = theta.then(&id_b, &b.k1).unwrap();
    let lhs = functor_g_mor(&composite, &a, &b).unwrap();
    let rhs = functor_g_mor(&theta, &a, &b)
        .unwrap()
        .then(&functor_g_mor(&id_b, &b, &b).unwrap())
        .unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn pairing_is_recovered_from_the_model() {
    let a = two_trace();
    let w = functor_g_obj(&a).unwrap();
    assert_eq!(w.recover_state_matrix().unwrap(), a.states);
    assert!(w
        .is_projection_class(&CuntzClass::Proj(vec![1, 0]))
        .unwrap());
}
