use num_rational::BigRational;

use super::oracle::oracle_leq;
use super::*;
use crate::ordmon::{
    archimedean_witness, is_almost_unperforated, is_weakly_unperforated, Membership,
};
use crate::scalar::{frac, int};

type Q = BigRational;
type W = WModel<Q>;
type C = CuntzClass<Q>;

fn soft(vals: &[(i64, i64)]) -> C {
    C::soft(vals.iter().map(|&(p, q)| frac(p, q)).collect()).unwrap()
}

fn two_trace() -> W {
    let r = Matrix::from_rows(vec![
        vec![frac(1, 2), frac(1, 2)],
        vec![frac(1, 4), frac(3, 4)],
    ])
    .unwrap();
    W::finite(
        K0Model::new(r, vec![1, 1]).unwrap(),
        TraceSimplex::numbered(2).unwrap(),
    )
    .unwrap()
}

fn half_half() -> W {
    // single generator with p̂ = (1/2, 1/2), unit 2
    let r = Matrix::from_rows(vec![vec![frac(1, 2)], vec![frac(1, 2)]]).unwrap();
    W::finite(
        K0Model::new(r, vec![2]).unwrap(),
        TraceSimplex::numbered(2).unwrap(),
    )
    .unwrap()
}

#[test]
fn hat_examples() {
    let z = W::w_of_z();
    assert_eq!(z.hat(&[1]).unwrap().values(), &[int::<Q>(1)]);
    let w = two_trace();
    assert_eq!(w.hat(&[1, 1]).unwrap().values(), &[int::<Q>(1), int(1)]);
    assert_eq!(w.hat(&[2, 0]).unwrap().values(), &[int::<Q>(1), frac(1, 2)]);
    assert!(w.hat(&[0, 0]).is_err());
    assert!(w.hat(&[1, -1]).is_err());
}

#[test]
fn addition_examples() {
    let z = W::w_of_z();
    let x = soft(&[(1, 2)]);
    assert_eq!(z.add(&x, &C::Proj(vec![0])).unwrap(), x);
    assert_eq!(z.add(&C::Proj(vec![1]), &x).unwrap(), soft(&[(3, 2)]));
    assert_eq!(
        z.add(&C::Proj(vec![1]), &C::Proj(vec![1])).unwrap(),
        C::Proj(vec![2])
    );
    let w = two_trace();
    assert_eq!(
        w.add(&soft(&[(1, 4), (1, 4)]), &soft(&[(1, 4), (1, 2)]))
            .unwrap(),
        soft(&[(1, 2), (3, 4)])
    );
}

#[test]
fn order_examples_in_w_of_z() {
    let z = W::w_of_z();
    let p1 = C::Proj(vec![1]);
    assert!(z.compare(&soft(&[(1, 1)]), &p1).unwrap());
    assert!(!z.compare(&p1, &soft(&[(1, 1)])).unwrap());
    assert!(z.compare(&p1, &soft(&[(5, 4)])).unwrap());
    assert!(!z.compare(&C::Proj(vec![2]), &soft(&[(2, 1)])).unwrap());
    assert!(z.compare(&soft(&[(2, 1)]), &C::Proj(vec![2])).unwrap());
}

#[test]
fn incomparable_pair_on_two_traces() {
    let w = half_half();
    let p = C::Proj(vec![1]);
    let f = soft(&[(1, 2), (3, 5)]);
    let (a, ra) = w.compare_with_rule(&p, &f).unwrap();
    let (b, rb) = w.compare_with_rule(&f, &p).unwrap();
    assert_eq!((a, b), (false, false));
    assert_eq!(
        (ra, rb),
        (OrderRule::ProjBelowSoft, OrderRule::SoftBelowProj)
    );
}

#[test]
fn scaling() {
    let z = W::w_of_z();
    assert_eq!(
        z.scale(&soft(&[(1, 1)]), &frac(1, 2)).unwrap(),
        soft(&[(1, 2)])
    );
    let w = two_trace();
    let f = soft(&[(1, 2), (3, 4)]);
    assert_eq!(w.scale(&f, &int(1)).unwrap(), f);
    assert_eq!(w.scale(&f, &int(2)).unwrap(), soft(&[(1, 1), (3, 2)]));
    assert!(w.scale(&C::Proj(vec![1, 1]), &int(2)).is_err());
    assert!(w.scale(&f, &int(0)).is_err());
}

#[test]
fn softening() {
    let z = W::w_of_z();
    let p1 = C::Proj(vec![1]);
    let s = z.soften(&p1).unwrap();
    assert_eq!(s, soft(&[(1, 1)]));
    assert!(z.compare(&s, &p1).unwrap());
    assert!(!z.compare(&p1, &s).unwrap());
    assert_eq!(z.soften(&s).unwrap(), s);
    assert!(z.soften(&C::Proj(vec![0])).is_err());
    assert!(!z
        .is_projection_class(&z.soften(&z.unit_class()).unwrap())
        .unwrap());
}

#[test]
fn complements() {
    let z = W::w_of_z();
    let y = soft(&[(3, 2)]);
    assert_eq!(
        z.complement(&C::Proj(vec![0]), &y).unwrap(),
        Some(y.clone())
    );
    assert_eq!(
        z.complement(&C::Proj(vec![1]), &y).unwrap(),
        Some(soft(&[(1, 2)]))
    );
    assert_eq!(
        z.complement(&C::Proj(vec![1]), &C::Proj(vec![3])).unwrap(),
        Some(C::Proj(vec![2]))
    );
    let w = two_trace();
    assert_eq!(
        w.complement(&soft(&[(1, 2), (1, 2)]), &soft(&[(1, 2), (3, 4)]))
            .unwrap(),
        None
    );
    assert_eq!(
        w.complement(&soft(&[(1, 2), (1, 2)]), &soft(&[(1, 2), (1, 2)]))
            .unwrap(),
        Some(C::Proj(vec![0, 0]))
    );
    // soft plus anything is soft
    assert_eq!(
        z.complement(&soft(&[(1, 2)]), &C::Proj(vec![1])).unwrap(),
        None
    );
    assert!(z.complement(&C::Proj(vec![2]), &C::Proj(vec![1])).is_err());
}

#[test]
fn gamma_examples() {
    let z = W::w_of_z();
    assert_eq!(z.gamma(&C::Proj(vec![0])).unwrap(), vec![int::<Q>(0)]);
    assert_eq!(
        z.gamma(&C::Proj(vec![1])).unwrap(),
        z.gamma(&soft(&[(1, 1)])).unwrap()
    );
    let w = two_trace();
    let x = C::Proj(vec![2, 1]);
    let c1 = soft(&[(1, 3), (2, 1)]);
    let c2 = soft(&[(7, 5), (1, 9)]);
    assert_eq!(w.gamma_via(&x, &c1).unwrap(), w.gamma(&x).unwrap());
    assert_eq!(w.gamma_via(&x, &c2).unwrap(), w.gamma(&x).unwrap());
    assert_eq!(w.recover_state_matrix().unwrap(), *w.k0().unwrap().states());
    assert!(W::purely_infinite().gamma(&C::Proj(vec![1])).is_err());
}

#[test]
fn k0star_cones_and_order_units() {
    let k = two_trace().k0star();
    assert!(!k.cone_plus(&[int(1), int(-1)]).unwrap());
    assert!(k.cone_plusplus(&[int(1), int(0)]).unwrap());
    assert!(!k.cone_plus(&[int(1), int(0)]).unwrap());
    assert!(k.is_order_unit(&k.unit()).unwrap());
    assert_eq!(
        k.order_unit_margin(&[frac(3, 10), frac(1, 5)]).unwrap(),
        Some(frac(1, 5))
    );
    assert!(!k.is_order_unit(&[frac(3, 10), int(0)]).unwrap());
    assert!(k.is_order_unit(&[int(-1), int(1)]).is_err());
    assert_eq!(W::w_of_z().k0star().dimension(), 1);
    assert!(W::purely_infinite().k0star().is_zero_group());
}

#[test]
fn k0star_is_unperforated_and_archimedean() {
    let k = two_trace().k0star();
    let mut sample = Vec::new();
    for a in -3..=3 {
        for b in -3..=3 {
            sample.push(vec![frac::<Q>(a, 2), frac(b, 3)]);
        }
    }
    assert!(is_weakly_unperforated(&k.ordered(K0StarCone::Plus), &sample, 20).holds());
    assert_eq!(
        archimedean_witness(&k.ordered(K0StarCone::PlusPlus), &sample, 20),
        None
    );
}

#[test]
fn purely_infinite_model() {
    let w = W::purely_infinite();
    let one = C::Proj(vec![1]);
    let zero = C::Proj(vec![0]);
    assert_eq!(w.add(&one, &one).unwrap(), one);
    assert!(w.compare(&zero, &one).unwrap());
    assert!(!w.compare(&one, &zero).unwrap());
    assert!(w.validate_class(&C::Proj(vec![2])).is_err());
}

#[test]
fn w_of_z_order_unit_and_almost_unperforation() {
    let z = W::w_of_z();
    let x = soft(&[(17, 4)]);
    assert_eq!(z.unit_multiple_dominating(&x, 10).unwrap(), Some(5));
    let mut elems: Vec<C> = (0..=4).map(|k| C::Proj(vec![k])).collect();
    elems.extend((1..=8).map(|k| soft(&[(k, 2)])));
    assert!(is_almost_unperforated(&z, &elems, 6).holds());
}

#[test]
fn oracle_agrees_on_fixed_examples() {
    let w = two_trace();
    let classes = vec![
        C::Proj(vec![0, 0]),
        C::Proj(vec![1, 1]),
        C::Proj(vec![2, 0]),
        C::Proj(vec![4, -1]),
        soft(&[(1, 1), (1, 1)]),
        soft(&[(1, 1), (1, 2)]),
        soft(&[(1, 2), (3, 4)]),
    ];
    for x in &classes {
        for y in &classes {
            assert_eq!(
                w.compare(x, y).unwrap(),
                oracle_leq(&w, x, y),
                "{x:?} {y:?}"
            );
        }
    }
}

#[test]
fn presentation_of_w_of_z() {
    let z = W::w_of_z();
    let p = z
        .presentation_from_classes(&[C::Proj(vec![1]), soft(&[(1, 1)])])
        .unwrap();
    let g = p.grothendieck_group();
    assert_eq!((g.free_rank, g.torsion.clone()), (1, vec![]));
    let d = g.sub(&g.gamma_images[0], &g.gamma_images[1]);
    assert_eq!(p.cone_plusplus_member(&d, 3).unwrap(), Membership::Yes);
    let report = p
        .check_strict_cone(
            &p.elements_up_to(2)
                .iter()
                .map(|e| g.class_of(&e.iter().map(|&c| c as i64).collect::<Vec<_>>()))
                .collect::<Vec<_>>(),
            3,
        )
        .unwrap();
    assert!(report.is_clean());
}

#[test]
fn validation_errors() {
    let r = Matrix::from_rows(vec![vec![frac::<Q>(1, 2), frac(1, 3)]]).unwrap();
    assert!(K0Model::new(r, vec![1, 1]).is_err());
    assert!(K0Model::<Q>::from_simplicial(vec![1, 1], 2).is_err());
    assert!(K0Model::<Q>::from_simplicial(vec![2], 1).is_ok());
    assert!(TraceSimplex::new(vec!["a".into(), "a".into()]).is_err());
    assert!(C::soft(vec![int::<Q>(0)]).is_err());
    let w = two_trace();
    assert!(w.validate_class(&C::Proj(vec![1])).is_err());
    assert!(w.validate_class(&soft(&[(1, 1)])).is_err());
}
