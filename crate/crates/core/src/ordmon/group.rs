//! Partially ordered abelian groups on integer lattices.

use std::collections::HashSet;

use num_traits::Zero;

use super::{Membership, OrderedGroup};
use crate::error::{Error, Result};
use crate::linalg::{sub_int, IntVec, Matrix};
use crate::scalar::Scalar;

/// Positive cone of a partially ordered group `Z^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cone<T> {
    /// Coordinatewise non-negative vectors.
    Simplicial,
    /// `{0} ∪ {x : Sx > 0 in every row}`.
    StrictState(Matrix<T>),
    /// Non-negative integer span of the generators. Membership is decided
    /// by exhaustive search over coefficient vectors whose sum is at most
    /// `coefficient_bound`.
    Generated {
        generators: Vec<IntVec>,
        coefficient_bound: u32,
    },
    /// Rank-2 lexicographic order: `x ≥ 0` iff `x0 > 0`, or `x0 = 0` and `x1 ≥ 0`.
    Lexicographic,
}

/// A partially ordered abelian group `(Z^rank, cone, u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoGroup<T> {
    rank: usize,
    cone: Cone<T>,
    order_unit: IntVec,
}

impl<T: Scalar> PoGroup<T> {
    pub fn new(rank: usize, cone: Cone<T>, order_unit: IntVec) -> Result<Self> {
        if rank == 0 {
            return Err(Error::invalid("rank must be positive"));
        }
        if order_unit.len() != rank {
            return Err(Error::dim(rank, order_unit.len()));
        }
        match &cone {
            Cone::Simplicial => {}
            Cone::StrictState(s) => {
                if s.ncols() != rank || s.nrows() == 0 {
                    return Err(Error::Shape(format!(
                        "state matrix must be r x {rank} with r > 0"
                    )));
                }
                let vals = s.mul_int_vec(&order_unit)?;
                if vals.iter().any(|v| !v.is_one()) {
                    return Err(Error::invalid(
                        "every state must take the value 1 on the order unit",
                    ));
                }
            }
            Cone::Generated { generators, .. } => {
                if let Some(g) = generators.iter().find(|g| g.len() != rank) {
                    return Err(Error::dim(rank, g.len()));
                }
            }
            Cone::Lexicographic => {
                if rank != 2 {
                    return Err(Error::invalid("lexicographic cone is defined on Z^2 only"));
                }
            }
        }
        let g = PoGroup {
            rank,
            cone,
            order_unit,
        };
        if g.order_unit.iter().all(|&c| c == 0) {
            return Err(Error::invalid("order unit must be nonzero"));
        }
        match g.cone_member(&g.order_unit)? {
            Membership::Yes => Ok(g),
            Membership::No => Err(Error::invalid("order unit is not in the cone")),
            Membership::BoundExceeded => Err(Error::BoundExceeded),
        }
    }

    pub fn simplicial(order_unit: IntVec) -> Result<Self> {
        PoGroup::new(order_unit.len(), Cone::Simplicial, order_unit)
    }

    pub fn strict_state(states: Matrix<T>, order_unit: IntVec) -> Result<Self> {
        PoGroup::new(order_unit.len(), Cone::StrictState(states), order_unit)
    }

    pub fn lexicographic() -> Self {
        PoGroup::new(2, Cone::Lexicographic, vec![1, 0]).expect("valid fixture")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cone(&self) -> &Cone<T> {
        &self.cone
    }

    pub fn order_unit(&self) -> &[i64] {
        &self.order_unit
    }

    pub fn cone_member(&self, x: &[i64]) -> Result<Membership> {
        if x.len() != self.rank {
            return Err(Error::dim(self.rank, x.len()));
        }
        if x.iter().all(|&c| c == 0) {
            return Ok(Membership::Yes);
        }
        Ok(match &self.cone {
            Cone::Simplicial => x.iter().all(|&c| c >= 0).into(),
            Cone::StrictState(s) => s.mul_int_vec(x)?.iter().all(|v| v.is_positive()).into(),
            Cone::Lexicographic => (x[0] > 0 || (x[0] == 0 && x[1] >= 0)).into(),
            Cone::Generated {
                generators,
                coefficient_bound,
            } => generated_member(generators, *coefficient_bound, x),
        })
    }

    /// `x ≤ y` iff `y - x` is in the cone. An inconclusive generated-cone
    /// search surfaces as [`Error::BoundExceeded`].
    pub fn leq(&self, x: &[i64], y: &[i64]) -> Result<bool> {
        if x.len() != self.rank {
            return Err(Error::dim(self.rank, x.len()));
        }
        if y.len() != self.rank {
            return Err(Error::dim(self.rank, y.len()));
        }
        match self.cone_member(&sub_int(y, x))? {
            Membership::Yes => Ok(true),
            Membership::No => Ok(false),
            Membership::BoundExceeded => Err(Error::BoundExceeded),
        }
    }

    fn states(&self) -> Result<&Matrix<T>> {
        match &self.cone {
            Cone::StrictState(s) => Ok(s),
            _ => Err(Error::NotStrictState),
        }
    }

    /// `Sx`, the values of the extreme states at `x`.
    pub fn evaluate_states(&self, x: &[i64]) -> Result<Vec<T>> {
        self.states()?.mul_int_vec(x)
    }

    /// Order unit test through states: every extreme state is strictly
    /// positive at `x`.
    pub fn is_order_unit_via_states(&self, x: &[i64]) -> Result<bool> {
        Ok(self.evaluate_states(x)?.iter().all(|v| v.is_positive()))
    }

    /// Least `n ≤ limit` with `y ≤ n·x`, if any.
    pub fn dominating_multiple(&self, x: &[i64], y: &[i64], limit: u32) -> Result<Option<u32>> {
        for n in 0..=limit {
            let nx: IntVec = x.iter().map(|c| c * i64::from(n)).collect();
            if self.leq(y, &nx)? {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// All lattice points of the box `[-bound, bound]^rank`, ordered by sup
    /// norm and then lexicographically.
    pub fn box_elements(&self, bound: i64) -> Vec<IntVec> {
        box_elements(self.rank, bound)
    }
}

pub fn box_elements(rank: usize, bound: i64) -> Vec<IntVec> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow(rank as u32);
    let mut out: Vec<IntVec> = (0..total)
        .map(|mut idx| {
            let mut v = vec![0; rank];
            for c in v.iter_mut().rev() {
                *c = (idx % side) as i64 - bound;
                idx /= side;
            }
            v
        })
        .collect();
    out.sort_by_key(|v| (v.iter().map(|c| c.abs()).max().unwrap_or(0), v.clone()));
    out
}

/// A linear functional strictly positive on every generator, chosen from
/// `±(sum of coordinates)` and `±e_j`. Bounds the coefficient sum of any
/// representation of `x` by `φ(x) / min φ(g)`.
fn positive_functional(generators: &[IntVec], rank: usize) -> Option<IntVec> {
    let mut candidates: Vec<IntVec> = vec![vec![1; rank], vec![-1; rank]];
    for j in 0..rank {
        for s in [1, -1] {
            let mut e = vec![0; rank];
            e[j] = s;
            candidates.push(e);
        }
    }
    candidates.into_iter().find(|phi| {
        generators
            .iter()
            .all(|g| g.iter().zip(phi).map(|(a, b)| a * b).sum::<i64>() > 0)
    })
}

fn generated_member(generators: &[IntVec], bound: u32, x: &[i64]) -> Membership {
    let rank = x.len();
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<i64>();
    // cap on the coefficient sum when the cone is pointed by a simple functional
    let complete_cap = positive_functional(generators, rank).map(|phi| {
        let px = dot(&phi, x);
        let min_g = generators.iter().map(|g| dot(&phi, g)).min().unwrap_or(1);
        if px < 0 {
            -1
        } else {
            px / min_g
        }
    });
    if complete_cap == Some(-1) || generators.is_empty() {
        return Membership::No;
    }
    let limit = match complete_cap {
        Some(c) => (c as u64).min(u64::from(bound)),
        None => u64::from(bound),
    };

    let target: IntVec = x.to_vec();
    let mut seen: HashSet<IntVec> = HashSet::new();
    let mut frontier: Vec<IntVec> = vec![vec![0; rank]];
    seen.insert(vec![0; rank]);
    for _ in 0..limit {
        let mut next = Vec::new();
        for v in &frontier {
            for g in generators {
                let w: IntVec = v.iter().zip(g).map(|(a, b)| a + b).collect();
                if w == target {
                    return Membership::Yes;
                }
                if seen.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    match complete_cap {
        Some(c) if (c as u64) <= u64::from(bound) => Membership::No,
        _ => Membership::BoundExceeded,
    }
}

impl<T: Scalar> OrderedGroup for PoGroup<T> {
    type Elem = IntVec;

    fn zero(&self) -> IntVec {
        vec![0; self.rank]
    }

    fn add(&self, a: &IntVec, b: &IntVec) -> IntVec {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn neg(&self, a: &IntVec) -> IntVec {
        a.iter().map(|x| -x).collect()
    }

    fn is_positive(&self, x: &IntVec) -> Membership {
        self.cone_member(x).unwrap_or(Membership::No)
    }

    fn is_zero(&self, x: &IntVec) -> bool {
        x.iter().all(|c| c.is_zero())
    }
}
