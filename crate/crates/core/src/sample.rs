//! Seeded random instances for property suites.
//!
//! Every generator takes the caller's RNG, so a fixed seed reproduces the
//! same instances on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elliott::{AbelianGroupData, ElliottInvariant, InvariantMorphism};
use crate::goodearl::{DensityPiece, DiagonalElement, MeasureSpec, PLFn, StepFn};
use crate::linalg::{add_int, IntVec, Matrix};
use crate::scalar::Scalar;
use crate::wmodel::{CuntzClass, K0Model, TraceSimplex, WModel};

/// The RNG used by every randomized suite.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const DENOMINATORS: [i64; 6] = [1, 2, 3, 4, 6, 8];

/// A rational in `[lo, hi]` with a small denominator.
pub fn rational<T: Scalar, R: Rng>(rng: &mut R, lo: i64, hi: i64) -> T {
    let d = DENOMINATORS[rng.random_range(0..DENOMINATORS.len())];
    T::ratio(rng.random_range(lo * d..=hi * d), d)
}

/// A rational strictly between `lo` and `hi`.
pub fn between<T: Scalar, R: Rng>(rng: &mut R, lo: &T, hi: &T) -> T {
    let t = T::ratio(rng.random_range(1..16), 16);
    lo.clone() + (hi.clone() - lo.clone()) * t
}

/// A simple `K₀` model with `n ≤ max_traces` traces and rank `k ≤ max_rank`.
///
/// The unit has entries in `1..=3` and each state row is a positive weight
/// vector normalized to take the value 1 on the unit.
pub fn k0_model<T: Scalar, R: Rng>(rng: &mut R, max_traces: usize, max_rank: usize) -> K0Model<T> {
    let n = rng.random_range(1..=max_traces);
    let k = rng.random_range(1..=max_rank);
    let unit: IntVec = (0..k).map(|_| rng.random_range(1..=3)).collect();
    let rows: Vec<Vec<T>> = (0..n)
        .map(|_| {
            let w: Vec<i64> = (0..k).map(|_| rng.random_range(1..=8)).collect();
            let total: i64 = w.iter().zip(&unit).map(|(a, b)| a * b).sum();
            w.iter().map(|&a| T::ratio(a, total)).collect()
        })
        .collect();
    K0Model::new(Matrix::from_rows(rows).expect("rectangular"), unit).expect("normalized")
}

pub fn wmodel<T: Scalar, R: Rng>(rng: &mut R, max_traces: usize, max_rank: usize) -> WModel<T> {
    let k0 = k0_model(rng, max_traces, max_rank);
    let traces = TraceSimplex::numbered(k0.trace_count()).expect("non-empty");
    WModel::finite(k0, traces).expect("consistent")
}

/// A cone element of `K₀`, zero with small probability.
pub fn cone_element<R: Rng, T: Scalar>(rng: &mut R, k0: &K0Model<T>) -> IntVec {
    if rng.random_bool(0.1) {
        return vec![0; k0.rank()];
    }
    for _ in 0..64 {
        let v: IntVec = (0..k0.rank()).map(|_| rng.random_range(-2..=4)).collect();
        if k0.in_cone(&v).expect("rank matches") {
            return v;
        }
    }
    k0.unit()
        .iter()
        .map(|u| u * rng.random_range(1..=3))
        .collect()
}

/// Strictly positive trace values in `(0, 4]`.
pub fn soft_values<T: Scalar, R: Rng>(rng: &mut R, n: usize) -> Vec<T> {
    (0..n)
        .map(|_| {
            let d = DENOMINATORS[rng.random_range(0..DENOMINATORS.len())];
            T::ratio(rng.random_range(1..=4 * d), d)
        })
        .collect()
}

/// A projection or soft class of the model, each with probability 1/2.
pub fn class<T: Scalar, R: Rng>(rng: &mut R, model: &WModel<T>) -> CuntzClass<T> {
    match model {
        WModel::PurelyInfinite => CuntzClass::Proj(vec![rng.random_range(0..=1)]),
        WModel::Finite { k0, .. } => {
            if rng.random_bool(0.5) {
                CuntzClass::Proj(cone_element(rng, k0))
            } else {
                CuntzClass::soft(soft_values(rng, k0.trace_count())).expect("positive")
            }
        }
    }
}

/// A pair `x ≤ y`, cycling through the four kinds of comparison.
///
/// Soft–soft pairs sometimes share coordinates, so that the difference has
/// zeros without vanishing.
pub fn ordered_pair<T: Scalar, R: Rng>(
    rng: &mut R,
    model: &WModel<T>,
) -> (CuntzClass<T>, CuntzClass<T>) {
    let WModel::Finite { k0, .. } = model else {
        let x = class(rng, model);
        return (x, CuntzClass::Proj(vec![1]));
    };
    let n = k0.trace_count();
    match rng.random_range(0..4) {
        0 => {
            let v = cone_element(rng, k0);
            let w = add_int(&v, &cone_element(rng, k0));
            (CuntzClass::Proj(v), CuntzClass::Proj(w))
        }
        1 => {
            let v = cone_element(rng, k0);
            let rv = k0.pairing(&v).expect("rank matches");
            let g = rv
                .into_iter()
                .zip(soft_values::<T, R>(rng, n))
                .map(|(a, b)| a + b)
                .collect();
            (CuntzClass::Proj(v), CuntzClass::soft(g).expect("positive"))
        }
        2 => {
            let f: Vec<T> = soft_values(rng, n);
            let g = f
                .iter()
                .map(|a| {
                    if rng.random_bool(0.3) {
                        a.clone()
                    } else {
                        a.clone() + rational::<T, R>(rng, 0, 2)
                    }
                })
                .collect();
            (
                CuntzClass::soft(f).expect("positive"),
                CuntzClass::soft(g).expect("positive"),
            )
        }
        _ => {
            let f: Vec<T> = soft_values(rng, n);
            let top = f.iter().max().expect("non-empty").ceil();
            let m = top.to_i64_exact().expect("small integer");
            let extra = cone_element(rng, k0);
            let w: IntVec = k0
                .unit()
                .iter()
                .zip(&extra)
                .map(|(u, e)| m * u + e)
                .collect();
            (CuntzClass::soft(f).expect("positive"), CuntzClass::Proj(w))
        }
    }
}

/// A non-negative vector of `K₀*` with entries in `[0, 2]`, zero entries
/// appearing with probability 1/5.
pub fn nonnegative_vector<T: Scalar, R: Rng>(rng: &mut R, n: usize) -> Vec<T> {
    (0..n)
        .map(|_| {
            if rng.random_bool(0.2) {
                T::zero()
            } else {
                let d = 1i64 << rng.random_range(0..=6);
                T::ratio(rng.random_range(1..=2 * d), d)
            }
        })
        .collect()
}

/// A strictly positive target vector of length `1..=max_len`.
pub fn target<T: Scalar, R: Rng>(rng: &mut R, max_len: usize) -> Vec<T> {
    let n = rng.random_range(1..=max_len);
    (0..n)
        .map(|_| {
            let d = rng.random_range(1..=12);
            T::ratio(rng.random_range(1..=4 * d), d)
        })
        .collect()
}

/// An invariant with at most `max_traces` traces, rank at most `max_rank`
/// and `K₁` one of `0`, `Z`, `Z/2`, `Z ⊕ Z/3`.
pub fn invariant<T: Scalar, R: Rng>(
    rng: &mut R,
    max_traces: usize,
    max_rank: usize,
) -> ElliottInvariant<T> {
    let k0 = k0_model(rng, max_traces, max_rank);
    let k1 = match rng.random_range(0..4) {
        0 => AbelianGroupData::trivial(),
        1 => AbelianGroupData {
            free_rank: 1,
            torsion: vec![],
        },
        2 => AbelianGroupData {
            free_rank: 0,
            torsion: vec![2],
        },
        _ => AbelianGroupData {
            free_rank: 1,
            torsion: vec![3],
        },
    };
    let traces = TraceSimplex::numbered(k0.trace_count()).expect("non-empty");
    ElliottInvariant::new(&k0, k1, traces)
}

/// A random unimodular `k x k` matrix with its inverse.
fn unimodular<R: Rng>(rng: &mut R, k: usize) -> (Matrix<i64>, Matrix<i64>) {
    let mut u = Matrix::int_identity(k).to_rows();
    let mut inv = u.clone();
    if k < 2 {
        return (Matrix::int_identity(k), Matrix::int_identity(k));
    }
    for _ in 0..rng.random_range(0..=3) {
        let i = rng.random_range(0..k);
        let j = (i + rng.random_range(1..k)) % k;
        let c = if rng.random_bool(0.5) { 1 } else { -1 };
        // rows: U ← E·U with E = I + c·e_i e_jᵀ; columns: U⁻¹ ← U⁻¹·E⁻¹
        let source = u[j].clone();
        for (a, b) in u[i].iter_mut().zip(&source) {
            *a += c * b;
        }
        for row in inv.iter_mut() {
            row[j] -= c * row[i];
        }
    }
    let mut perm: Vec<usize> = (0..k).collect();
    perm.shuffle(rng);
    let u: Vec<Vec<i64>> = perm.iter().map(|&p| u[p].clone()).collect();
    let inv: Vec<Vec<i64>> = inv
        .iter()
        .map(|row| perm.iter().map(|&p| row[p]).collect())
        .collect();
    (
        Matrix::from_rows(u).expect("square"),
        Matrix::from_rows(inv).expect("square"),
    )
}

/// A valid morphism out of `source` together with its target.
///
/// The target's `K₀` is `U·K₀(A)` for a random unimodular `U = θ₀`, its
/// traces are random convex combinations of those of `A` (the columns of
/// `γ`), and its pairing is `γᵀ·R_A·U⁻¹`. Commutativity and positivity then
/// hold by construction. `K₁` is carried along identically.
pub fn morphism_from<T: Scalar, R: Rng>(
    rng: &mut R,
    source: &ElliottInvariant<T>,
    max_traces: usize,
) -> (InvariantMorphism<T>, ElliottInvariant<T>) {
    let na = source.trace_count();
    let nb = rng.random_range(1..=max_traces);
    let mut cols: Vec<Vec<T>> = Vec::with_capacity(nb);
    for _ in 0..nb {
        let w: Vec<i64> = (0..na)
            .map(|_| {
                if rng.random_bool(0.3) {
                    0
                } else {
                    rng.random_range(1..=4)
                }
            })
            .collect();
        let total: i64 = w.iter().sum();
        cols.push(if total == 0 {
            let mut e = vec![T::zero(); na];
            e[rng.random_range(0..na)] = T::one();
            e
        } else {
            w.iter().map(|&a| T::ratio(a, total)).collect()
        });
    }
    let gamma = Matrix::from_fn(na, nb, |i, j| cols[j][i].clone());
    let (u, u_inv) = unimodular(rng, source.rank());
    let inv_t = Matrix::from_fn(u_inv.nrows(), u_inv.ncols(), |i, j| {
        T::from_int(*u_inv.get(i, j))
    });
    let states = gamma
        .transpose()
        .mul(&source.states)
        .and_then(|m| m.mul(&inv_t))
        .expect("shapes agree");
    let unit = u.int_mul_vec(&source.unit).expect("shapes agree");
    let target = ElliottInvariant {
        states,
        unit,
        k1: source.k1.clone(),
        traces: TraceSimplex::numbered(nb).expect("non-empty"),
    };
    let theta = InvariantMorphism {
        theta0: u,
        theta1: Matrix::int_identity(source.k1.generator_count()),
        gamma,
    };
    (theta, target)
}

/// A non-zero piecewise-linear function on `[0, 1]` with values in `[0, 1]`.
pub fn plfn<T: Scalar, R: Rng>(rng: &mut R) -> PLFn<T> {
    let pieces = rng.random_range(1..=4);
    let mut xs: Vec<T> = (1..pieces)
        .map(|_| T::ratio(rng.random_range(1..32), 32))
        .collect();
    xs.push(T::zero());
    xs.push(T::one());
    xs.sort();
    xs.dedup();
    loop {
        let ys: Vec<T> = xs
            .iter()
            .map(|_| T::ratio(rng.random_range(0..=8), 8))
            .collect();
        if ys.iter().any(|y| y.is_positive()) {
            return PLFn::new(xs, ys).expect("sorted breakpoints");
        }
    }
}

/// Inputs of one comparison-lemma case: a diagonal element, a chain
/// `0 < ε < η < δ` inside its spectrum, and an atom-free measure with
/// positive density everywhere.
pub struct ComparisonCase<T> {
    pub element: DiagonalElement<T>,
    pub eps: T,
    pub eta: T,
    pub delta: T,
    pub measure: MeasureSpec<T>,
}

pub fn comparison_case<T: Scalar, R: Rng>(rng: &mut R) -> ComparisonCase<T> {
    let size = rng.random_range(1..=3);
    let mut entries: Vec<PLFn<T>> = (0..size).map(|_| plfn(rng)).collect();
    // one entry with a non-degenerate range carries the chain
    let carrier = loop {
        let g: PLFn<T> = plfn(rng);
        if g.inf() < g.sup() {
            break g;
        }
    };
    let (lo, hi) = (carrier.inf(), carrier.sup());
    let eta = between(rng, &lo, &hi);
    let eps = between(rng, &lo, &eta);
    let delta = between(rng, &eta, &hi);
    let slot = rng.random_range(0..=entries.len());
    entries.insert(slot, carrier);
    ComparisonCase {
        element: DiagonalElement::new(entries).expect("non-empty"),
        eps,
        eta,
        delta,
        measure: full_support_measure(rng),
    }
}

/// A piecewise-constant probability density, positive on all of `[0, 1]`.
pub fn full_support_measure<T: Scalar, R: Rng>(rng: &mut R) -> MeasureSpec<T> {
    let mut cuts: Vec<T> = (0..rng.random_range(0..=3))
        .map(|_| T::ratio(rng.random_range(1..16), 16))
        .collect();
    cuts.push(T::zero());
    cuts.push(T::one());
    cuts.sort();
    cuts.dedup();
    let weights: Vec<T> = cuts
        .windows(2)
        .map(|_| T::from_int(rng.random_range(1..=5)))
        .collect();
    let mass = cuts
        .windows(2)
        .zip(&weights)
        .fold(T::zero(), |acc, (w, d)| {
            acc + d.clone() * (w[1].clone() - w[0].clone())
        });
    let pieces = cuts
        .windows(2)
        .zip(weights)
        .map(|(w, d)| DensityPiece {
            lo: w[0].clone(),
            hi: w[1].clone(),
            density: d / mass.clone(),
        })
        .collect();
    MeasureSpec::new(pieces, Vec::new()).expect("mass normalized")
}

/// A lower semicontinuous step function with values in `[0, 1]`.
pub fn step_target<T: Scalar, R: Rng>(rng: &mut R) -> StepFn<T> {
    let mut cuts: Vec<T> = (0..rng.random_range(0..=4))
        .map(|_| T::ratio(rng.random_range(1..24), 24))
        .collect();
    cuts.push(T::zero());
    cuts.push(T::one());
    cuts.sort();
    cuts.dedup();
    let values: Vec<T> = (1..cuts.len())
        .map(|_| T::ratio(rng.random_range(0..=12), 12))
        .collect();
    let points: Vec<T> = (0..cuts.len())
        .map(|k| {
            let left = k.checked_sub(1).map(|j| values[j].clone());
            let right = values.get(k).cloned();
            let cap = match (left, right) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => unreachable!("at least one interval"),
            };
            // lsc: the value at a cut may drop below both neighbours
            if rng.random_bool(0.5) {
                cap
            } else {
                T::ratio(rng.random_range(0..=12), 12).min(cap)
            }
        })
        .collect();
    StepFn::new(cuts, values, points).expect("lower semicontinuous")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Signed;

    type Q = BigRational;

    #[test]
    fn generators_produce_valid_instances() {
        let mut r = rng(7);
        for _ in 0..50 {
            let m: WModel<Q> = wmodel(&mut r, 4, 4);
            let x = class(&mut r, &m);
            m.validate_class(&x).unwrap();
            let (a, b) = ordered_pair(&mut r, &m);
            assert!(m.compare(&a, &b).unwrap(), "{a:?} {b:?}");
            let _: StepFn<Q> = step_target(&mut r);
            let c: ComparisonCase<Q> = comparison_case(&mut r);
            assert!(c.eps.is_positive() && c.eps < c.eta && c.eta < c.delta);
        }
    }

    #[test]
    fn sampled_morphisms_validate() {
        let mut r = rng(11);
        for _ in 0..30 {
            let a: ElliottInvariant<Q> = invariant(&mut r, 4, 4);
            let (theta, b) = morphism_from(&mut r, &a, 4);
            let report = crate::elliott::validate_morphism(&theta, &a, &b).unwrap();
            assert!(report.is_valid(), "{:?}", report.violations);
            assert!(crate::elliott::validate_invariant(&b).is_valid());
        }
    }

    #[test]
    fn same_seed_same_instances() {
        let a: Vec<WModel<Q>> = (0..5)
            .map({
                let mut r = rng(3);
                move |_| wmodel(&mut r, 4, 4)
            })
            .collect();
        let b: Vec<WModel<Q>> = (0..5)
            .map({
                let mut r = rng(3);
                move |_| wmodel(&mut r, 4, 4)
            })
            .collect();
        assert_eq!(a, b);
    }
}
