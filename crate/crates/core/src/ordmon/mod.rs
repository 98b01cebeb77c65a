//! Partially ordered abelian monoids and groups.
//!
//! Grothendieck enveloping groups of finitely presented monoids (with the
//! image cone `γ(M)` and the order-difference cone `{γ(x) − γ(y) : y ≤ x}`),
//! cones on integer lattices, states, and bounded-scale checkers for
//! almost/weak unperforation and the Archimedean property.
//!
//! The checkers are falsifiers: they search a finite sample and either
//! return a counterexample or report that the property held on the sample.

mod checks;
mod group;
mod presentation;
pub mod smith;

pub use checks::{
    archimedean_witness, is_almost_unperforated, is_weakly_unperforated, AlmostWitness,
    ArchimedeanWitness, Verdict, WeakWitness,
};
pub use group::{box_elements, Cone, PoGroup};
pub use presentation::{
    ConePlusPlusIndex, GrothendieckResult, GroupElem, MonoidPresentation, OrderOracle,
    StrictConeReport,
};

use std::fmt::Debug;

/// Three-valued membership answer of a bounded search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Yes,
    No,
    BoundExceeded,
}

impl From<bool> for Membership {
    fn from(b: bool) -> Self {
        if b {
            Membership::Yes
        } else {
            Membership::No
        }
    }
}

impl Membership {
    pub fn is_yes(self) -> bool {
        self == Membership::Yes
    }

    pub fn is_no(self) -> bool {
        self == Membership::No
    }
}

/// A partially ordered abelian group, seen through its positive cone.
pub trait OrderedGroup {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_positive(&self, x: &Self::Elem) -> Membership;

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn times(&self, n: u32, x: &Self::Elem) -> Self::Elem {
        (0..n).fold(self.zero(), |acc, _| self.add(&acc, x))
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> Membership {
        self.is_positive(&self.sub(y, x))
    }
}

/// A partially ordered abelian monoid with decidable order.
pub trait OrderedMonoid {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn times(&self, n: u32, x: &Self::Elem) -> Self::Elem {
        (0..n).fold(self.zero(), |acc, _| self.add(&acc, x))
    }
}

/// A submonoid of `(Z, +)` carrying the order inherited from `Z`.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntegerOrder;

impl OrderedMonoid for IntegerOrder {
    type Elem = i64;

    fn zero(&self) -> i64 {
        0
    }

    fn add(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }

    fn leq(&self, a: &i64, b: &i64) -> bool {
        a <= b
    }
}
