use std::marker::PhantomData;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{add_vec, scale_vec};
use crate::ordmon::{Membership, OrderedGroup};
use crate::scalar::{min_of, Scalar};

/// The Grothendieck group `K₀* ≅ Qⁿ` of the model, with its two cones.
///
/// `n = 0` is the zero group of the purely infinite model.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K0Star<T> {
    n: usize,
    _scalar: PhantomData<T>,
}

/// Which positive cone an ordered view of `K₀*` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum K0StarCone {
    /// `{0} ∪ {d : d > 0 pointwise}`, the image of the model.
    Plus,
    /// `{d : d ≥ 0 pointwise}`, differences `γ(x) − γ(y)` with `y ≤ x`.
    PlusPlus,
}

impl<T: Scalar> K0Star<T> {
    pub fn new(n: usize) -> Self {
        K0Star {
            n,
            _scalar: PhantomData,
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero_group(&self) -> bool {
        self.n == 0
    }

    pub fn unit(&self) -> Vec<T> {
        vec![T::one(); self.n]
    }

    fn check(&self, d: &[T]) -> Result<()> {
        if d.len() != self.n {
            return Err(Error::dim(self.n, d.len()));
        }
        Ok(())
    }

    pub fn cone_plus(&self, d: &[T]) -> Result<bool> {
        self.check(d)?;
        Ok(d.iter().all(Zero::is_zero) || d.iter().all(|c| c.is_positive()))
    }

    pub fn cone_plusplus(&self, d: &[T]) -> Result<bool> {
        self.check(d)?;
        Ok(d.iter().all(|c| !c.is_negative()))
    }

    pub fn in_cone(&self, cone: K0StarCone, d: &[T]) -> Result<bool> {
        match cone {
            K0StarCone::Plus => self.cone_plus(d),
            K0StarCone::PlusPlus => self.cone_plusplus(d),
        }
    }

    /// `d` is an order unit of `(K₀*, K₀*⁺⁺)` iff some `ε > 0` lies below
    /// every coordinate, i.e. iff the minimum coordinate is positive.
    pub fn is_order_unit(&self, d: &[T]) -> Result<bool> {
        if !self.cone_plusplus(d)? {
            return Err(Error::pre("order-unit test requires d in the cone K0*++"));
        }
        Ok(min_of(d).is_some_and(|m| m.is_positive()))
    }

    /// The largest `ε` with `d ≥ ε` pointwise, when positive.
    pub fn order_unit_margin(&self, d: &[T]) -> Result<Option<T>> {
        if self.is_order_unit(d)? {
            Ok(min_of(d))
        } else {
            Ok(None)
        }
    }

    pub fn ordered(&self, cone: K0StarCone) -> K0StarOrder<T> {
        K0StarOrder {
            group: self.clone(),
            cone,
        }
    }
}

/// `K₀*` with a chosen cone, as an [`OrderedGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K0StarOrder<T> {
    group: K0Star<T>,
    cone: K0StarCone,
}

impl<T: Scalar> OrderedGroup for K0StarOrder<T> {
    type Elem = Vec<T>;

    fn zero(&self) -> Vec<T> {
        vec![T::zero(); self.group.n]
    }

    fn add(&self, a: &Vec<T>, b: &Vec<T>) -> Vec<T> {
        add_vec(a, b)
    }

    fn neg(&self, a: &Vec<T>) -> Vec<T> {
        scale_vec(a, &-T::one())
    }

    fn is_positive(&self, x: &Vec<T>) -> Membership {
        self.group
            .in_cone(self.cone, x)
            .expect("element of the right dimension")
            .into()
    }
}
