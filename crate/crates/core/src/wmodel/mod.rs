//! The model `W̃ = V ⊔ LAff_b(T)⁺⁺` over a finite trace simplex.
//!
//! Projection classes are cone elements of an ordered `K₀` lattice; soft
//! classes are strictly positive functions on the extreme traces. The order
//! mixes strict and non-strict comparisons:
//!
//! | x \ y | `Proj(w)`              | `Soft(g)`              |
//! |-------|------------------------|------------------------|
//! | `Proj(v)` | `w − v ∈ K₀⁺`      | `τ(v) < g(τ)` for all τ |
//! | `Soft(f)` | `f(τ) ≤ τ(w)` for all τ | `f ≤ g` pointwise   |
//!
//! Affine functions on a finite simplex are determined by their values on
//! the extreme points, so a soft class is stored as that value vector.

mod k0star;
pub mod oracle;
mod presentation;

pub use k0star::{K0Star, K0StarCone, K0StarOrder};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{add_int, add_vec, scale_vec, sub_int, sub_vec, IntVec, Matrix};
use crate::ordmon::OrderedMonoid;
use crate::scalar::Scalar;

/// Labels of the extreme tracial states.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceSimplex {
    labels: Vec<String>,
}

impl TraceSimplex {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::invalid(
                "a trace simplex needs at least one extreme trace",
            ));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::invalid("trace labels must be distinct"));
        }
        Ok(TraceSimplex { labels })
    }

    /// `n` traces labelled `tau1, ..., taun`.
    pub fn numbered(n: usize) -> Result<Self> {
        TraceSimplex::new((1..=n).map(|i| format!("tau{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// A simple ordered `K₀` group with strict-state cone.
///
/// `states` is `n x k` (one row per extreme trace); the cone is
/// `{0} ∪ {v : states·v > 0}` and `states·unit` is the all-ones vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K0Model<T> {
    states: Matrix<T>,
    unit: IntVec,
}

impl<T: Scalar> K0Model<T> {
    pub fn new(states: Matrix<T>, unit: IntVec) -> Result<Self> {
        if states.nrows() == 0 || states.ncols() == 0 {
            return Err(Error::Shape("state matrix must be non-empty".into()));
        }
        if unit.len() != states.ncols() {
            return Err(Error::dim(states.ncols(), unit.len()));
        }
        let at_unit = states.mul_int_vec(&unit)?;
        if let Some(i) = at_unit.iter().position(|v| !v.is_one()) {
            return Err(Error::invalid(format!(
                "state {i} takes the value {} on the unit, expected 1",
                at_unit[i]
            )));
        }
        Ok(K0Model { states, unit })
    }

    /// Rank-one simplicial `(Z, Z⁺, u)`. Simplicial lattices of higher rank
    /// have cones that no finite strict-state description reproduces and
    /// are rejected.
    pub fn from_simplicial(unit: IntVec, traces: usize) -> Result<Self> {
        if unit.len() != 1 {
            return Err(Error::invalid(
                "simplicial K0 of rank > 1 is not a strict-state cone",
            ));
        }
        if unit[0] <= 0 {
            return Err(Error::invalid("order unit must be positive"));
        }
        let s = T::ratio(1, unit[0]);
        K0Model::new(Matrix::from_fn(traces, 1, |_, _| s.clone()), unit)
    }

    pub fn rank(&self) -> usize {
        self.states.ncols()
    }

    pub fn trace_count(&self) -> usize {
        self.states.nrows()
    }

    pub fn states(&self) -> &Matrix<T> {
        &self.states
    }

    pub fn unit(&self) -> &[i64] {
        &self.unit
    }

    /// `τ(v)` for every extreme trace.
    pub fn pairing(&self, v: &[i64]) -> Result<Vec<T>> {
        self.states.mul_int_vec(v)
    }

    pub fn in_cone(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.rank() {
            return Err(Error::dim(self.rank(), v.len()));
        }
        if v.iter().all(|&c| c == 0) {
            return Ok(true);
        }
        Ok(self.pairing(v)?.iter().all(|x| x.is_positive()))
    }
}

/// A strictly positive function on the extreme traces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SoftFn<T>(Vec<T>);

impl<T: Scalar> SoftFn<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("soft function needs at least one value"));
        }
        if let Some(v) = values.iter().find(|v| !v.is_positive()) {
            return Err(Error::invalid(format!(
                "soft function values must be strictly positive, found {v}"
            )));
        }
        Ok(SoftFn(values))
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn into_values(self) -> Vec<T> {
        self.0
    }
}

/// Element of `W̃`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CuntzClass<T> {
    Proj(IntVec),
    Soft(SoftFn<T>),
}

impl<T: Scalar> CuntzClass<T> {
    pub fn soft(values: Vec<T>) -> Result<Self> {
        Ok(CuntzClass::Soft(SoftFn::new(values)?))
    }

    pub fn is_proj(&self) -> bool {
        matches!(self, CuntzClass::Proj(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CuntzClass::Proj(v) if v.iter().all(|&c| c == 0))
    }
}

/// Which clause of the order decided a comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderRule {
    /// Projection against projection: algebraic order of `K₀⁺`.
    ProjProj,
    /// Soft against soft: pointwise `≤`.
    SoftSoft,
    /// Soft below projection: pointwise `≤`.
    SoftBelowProj,
    /// Projection below soft: pointwise strict `<`.
    ProjBelowSoft,
    /// Two-element idempotent semigroup `{0, ⟨1⟩}`.
    Idempotent,
}

impl OrderRule {
    pub fn label(self) -> &'static str {
        match self {
            OrderRule::ProjProj => "(i) proj-proj",
            OrderRule::SoftSoft => "(ii) soft-soft",
            OrderRule::SoftBelowProj => "(iii) soft<=proj",
            OrderRule::ProjBelowSoft => "(iv) proj<soft strict",
            OrderRule::Idempotent => "idempotent {0,<1>}",
        }
    }
}

/// A Cuntz-semigroup model.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WModel<T> {
    /// `V ⊔ LAff_b(T)⁺⁺` over a strict-state `K₀` and finitely many traces.
    Finite {
        k0: K0Model<T>,
        traces: TraceSimplex,
    },
    /// `{0, ⟨1⟩}` with `⟨1⟩ + ⟨1⟩ = ⟨1⟩`; classes are `Proj([0])`, `Proj([1])`.
    PurelyInfinite,
}

impl<T: Scalar> WModel<T> {
    pub fn finite(k0: K0Model<T>, traces: TraceSimplex) -> Result<Self> {
        if k0.trace_count() != traces.len() {
            return Err(Error::invalid(format!(
                "state matrix has {} rows but the simplex has {} traces",
                k0.trace_count(),
                traces.len()
            )));
        }
        Ok(WModel::Finite { k0, traces })
    }

    /// `Z⁺ ⊔ Q⁺⁺` with the order `≤_Z`.
    pub fn w_of_z() -> Self {
        let k0 = K0Model::new(Matrix::from_fn(1, 1, |_, _| T::one()), vec![1]).expect("valid");
        let traces = TraceSimplex::new(vec!["tau_Z".into()]).expect("valid");
        WModel::Finite { k0, traces }
    }

    pub fn purely_infinite() -> Self {
        WModel::PurelyInfinite
    }

    pub fn k0(&self) -> Result<&K0Model<T>> {
        match self {
            WModel::Finite { k0, .. } => Ok(k0),
            WModel::PurelyInfinite => Err(Error::PurelyInfinite),
        }
    }

    pub fn traces(&self) -> Result<&TraceSimplex> {
        match self {
            WModel::Finite { traces, .. } => Ok(traces),
            WModel::PurelyInfinite => Err(Error::PurelyInfinite),
        }
    }

    pub fn is_purely_infinite(&self) -> bool {
        matches!(self, WModel::PurelyInfinite)
    }

    pub fn trace_count(&self) -> usize {
        match self {
            WModel::Finite { traces, .. } => traces.len(),
            WModel::PurelyInfinite => 0,
        }
    }

    pub fn unit_class(&self) -> CuntzClass<T> {
        match self {
            WModel::Finite { k0, .. } => CuntzClass::Proj(k0.unit.clone()),
            WModel::PurelyInfinite => CuntzClass::Proj(vec![1]),
        }
    }

    pub fn zero_class(&self) -> CuntzClass<T> {
        match self {
            WModel::Finite { k0, .. } => CuntzClass::Proj(vec![0; k0.rank()]),
            WModel::PurelyInfinite => CuntzClass::Proj(vec![0]),
        }
    }

    /// Checks that `x` is a valid class of this model.
    pub fn validate_class(&self, x: &CuntzClass<T>) -> Result<()> {
        match (self, x) {
            (WModel::PurelyInfinite, CuntzClass::Proj(v)) if v == &[0] || v == &[1] => Ok(()),
            (WModel::PurelyInfinite, _) => Err(Error::ModelMismatch(
                "the purely infinite model has only the classes 0 and <1>".into(),
            )),
            (WModel::Finite { k0, .. }, CuntzClass::Proj(v)) => {
                if v.len() != k0.rank() {
                    return Err(Error::ModelMismatch(format!(
                        "projection class has length {}, K0 rank is {}",
                        v.len(),
                        k0.rank()
                    )));
                }
                if !k0.in_cone(v)? {
                    return Err(Error::ModelMismatch(format!("{v:?} is not in the K0 cone")));
                }
                Ok(())
            }
            (WModel::Finite { traces, .. }, CuntzClass::Soft(f)) => {
                if f.values().len() != traces.len() {
                    return Err(Error::ModelMismatch(format!(
                        "soft class has {} values, model has {} traces",
                        f.values().len(),
                        traces.len()
                    )));
                }
                Ok(())
            }
        }
    }

    fn validate_pair(&self, x: &CuntzClass<T>, y: &CuntzClass<T>) -> Result<()> {
        self.validate_class(x)?;
        self.validate_class(y)
    }

    /// `p̂(τ) = τ(p)` for a nonzero cone element.
    pub fn hat(&self, v: &[i64]) -> Result<SoftFn<T>> {
        let k0 = self.k0()?;
        if v.iter().all(|&c| c == 0) {
            return Err(Error::pre(
                "hat of the zero projection is not strictly positive",
            ));
        }
        if !k0.in_cone(v)? {
            return Err(Error::ModelMismatch(format!("{v:?} is not in the K0 cone")));
        }
        SoftFn::new(k0.pairing(v)?)
    }

    pub fn add(&self, x: &CuntzClass<T>, y: &CuntzClass<T>) -> Result<CuntzClass<T>> {
        self.validate_pair(x, y)?;
        if self.is_purely_infinite() {
            let (CuntzClass::Proj(a), CuntzClass::Proj(b)) = (x, y) else {
                unreachable!("validated")
            };
            return Ok(CuntzClass::Proj(vec![a[0].max(b[0])]));
        }
        let k0 = self.k0()?;
        Ok(match (x, y) {
            (CuntzClass::Proj(v), CuntzClass::Proj(w)) => CuntzClass::Proj(add_int(v, w)),
            (CuntzClass::Proj(v), CuntzClass::Soft(f))
            | (CuntzClass::Soft(f), CuntzClass::Proj(v)) => {
                CuntzClass::Soft(SoftFn(add_vec(&k0.pairing(v)?, f.values())))
            }
            (CuntzClass::Soft(f), CuntzClass::Soft(g)) => {
                CuntzClass::Soft(SoftFn(add_vec(f.values(), g.values())))
            }
        })
    }

    /// `x ≤ y` together with the clause that decided it.
    pub fn compare_with_rule(
        &self,
        x: &CuntzClass<T>,
        y: &CuntzClass<T>,
    ) -> Result<(bool, OrderRule)> {
        self.validate_pair(x, y)?;
        if self.is_purely_infinite() {
            let (CuntzClass::Proj(a), CuntzClass::Proj(b)) = (x, y) else {
                unreachable!("validated")
            };
            return Ok((a[0] <= b[0], OrderRule::Idempotent));
        }
        let k0 = self.k0()?;
        Ok(match (x, y) {
            (CuntzClass::Proj(v), CuntzClass::Proj(w)) => {
                (k0.in_cone(&sub_int(w, v))?, OrderRule::ProjProj)
            }
            (CuntzClass::Soft(f), CuntzClass::Soft(g)) => (
                f.values().iter().zip(g.values()).all(|(a, b)| a <= b),
                OrderRule::SoftSoft,
            ),
            (CuntzClass::Soft(f), CuntzClass::Proj(w)) => (
                f.values().iter().zip(&k0.pairing(w)?).all(|(a, b)| a <= b),
                OrderRule::SoftBelowProj,
            ),
            (CuntzClass::Proj(v), CuntzClass::Soft(g)) => (
                k0.pairing(v)?.iter().zip(g.values()).all(|(a, b)| a < b),
                OrderRule::ProjBelowSoft,
            ),
        })
    }

    pub fn compare(&self, x: &CuntzClass<T>, y: &CuntzClass<T>) -> Result<bool> {
        Ok(self.compare_with_rule(x, y)?.0)
    }

    /// `λ·f` for a soft class and rational `λ > 0`.
    pub fn scale(&self, x: &CuntzClass<T>, lambda: &T) -> Result<CuntzClass<T>> {
        self.validate_class(x)?;
        if !lambda.is_positive() {
            return Err(Error::pre("scaling factor must be strictly positive"));
        }
        match x {
            CuntzClass::Soft(f) => Ok(CuntzClass::Soft(SoftFn(scale_vec(f.values(), lambda)))),
            CuntzClass::Proj(_) => Err(Error::pre(
                "only soft classes scale by rationals; soften the projection first",
            )),
        }
    }

    /// `Proj(v) ↦ Soft(v̂)`, soft classes unchanged.
    pub fn soften(&self, x: &CuntzClass<T>) -> Result<CuntzClass<T>> {
        self.validate_class(x)?;
        self.k0()?;
        match x {
            _ if x.is_zero() => Err(Error::pre("the zero class has no soft counterpart")),
            CuntzClass::Proj(v) => Ok(CuntzClass::Soft(self.hat(v)?)),
            CuntzClass::Soft(_) => Ok(x.clone()),
        }
    }

    /// A class `z` with `x + z = y`, given `x ≤ y`.
    ///
    /// A soft class plus anything is soft, so `Soft ≤ Proj` never has a
    /// complement. For `Soft ≤ Soft` a complement exists exactly when the
    /// difference is identically zero or strictly positive.
    pub fn complement(
        &self,
        x: &CuntzClass<T>,
        y: &CuntzClass<T>,
    ) -> Result<Option<CuntzClass<T>>> {
        if !self.compare(x, y)? {
            return Err(Error::pre("complement requires x <= y"));
        }
        if self.is_purely_infinite() {
            // 0 + y = y; <1> + <1> = <1>
            return Ok(Some(y.clone()));
        }
        let k0 = self.k0()?;
        Ok(match (x, y) {
            (CuntzClass::Proj(v), CuntzClass::Proj(w)) => Some(CuntzClass::Proj(sub_int(w, v))),
            (CuntzClass::Proj(v), CuntzClass::Soft(g)) => {
                if v.iter().all(|&c| c == 0) {
                    Some(y.clone())
                } else {
                    Some(CuntzClass::Soft(SoftFn(sub_vec(
                        g.values(),
                        &k0.pairing(v)?,
                    ))))
                }
            }
            (CuntzClass::Soft(f), CuntzClass::Soft(g)) => {
                let d = sub_vec(g.values(), f.values());
                if d.iter().all(Zero::is_zero) {
                    Some(self.zero_class())
                } else if d.iter().all(|c| c.is_positive()) {
                    Some(CuntzClass::Soft(SoftFn(d)))
                } else {
                    None
                }
            }
            (CuntzClass::Soft(_), CuntzClass::Proj(_)) => None,
        })
    }

    pub fn is_projection_class(&self, x: &CuntzClass<T>) -> Result<bool> {
        self.validate_class(x)?;
        Ok(x.is_proj())
    }

    /// Image in `K₀* ≅ Qⁿ`: `Proj(v) ↦ τ(v)`, `Soft(f) ↦ f`.
    pub fn gamma(&self, x: &CuntzClass<T>) -> Result<Vec<T>> {
        self.validate_class(x)?;
        let k0 = self.k0()?;
        Ok(match x {
            CuntzClass::Proj(v) => k0.pairing(v)?,
            CuntzClass::Soft(f) => f.values().to_vec(),
        })
    }

    /// `γ(x + c) − γ(c)` computed inside the soft part, for an auxiliary
    /// soft class `c`. Independent of `c`.
    pub fn gamma_via(&self, x: &CuntzClass<T>, c: &CuntzClass<T>) -> Result<Vec<T>> {
        let CuntzClass::Soft(cf) = c else {
            return Err(Error::pre("auxiliary class must be soft"));
        };
        match self.add(x, c)? {
            CuntzClass::Soft(s) => Ok(sub_vec(s.values(), cf.values())),
            CuntzClass::Proj(_) => unreachable!("soft plus anything is soft"),
        }
    }

    /// Extends `γ` to the whole `K₀` lattice: `v = (v + Nu) − Nu` with
    /// `v + Nu` in the cone.
    pub fn gamma_of_k0_element(&self, v: &[i64]) -> Result<Vec<T>> {
        let k0 = self.k0()?;
        if v.len() != k0.rank() {
            return Err(Error::dim(k0.rank(), v.len()));
        }
        let mut n = 0i64;
        loop {
            let shifted: IntVec = v.iter().zip(&k0.unit).map(|(a, u)| a + n * u).collect();
            if k0.in_cone(&shifted)? {
                let nu: IntVec = k0.unit.iter().map(|u| n * u).collect();
                let a = self.gamma(&CuntzClass::Proj(shifted))?;
                let b = self.gamma(&CuntzClass::Proj(nu))?;
                return Ok(sub_vec(&a, &b));
            }
            n += 1;
        }
    }

    /// Reads the trace/K₀ pairing back from the model: column `j` is the
    /// `K₀*` image of the `j`-th basis vector.
    pub fn recover_state_matrix(&self) -> Result<Matrix<T>> {
        let k0 = self.k0()?;
        let k = k0.rank();
        let cols: Vec<Vec<T>> = (0..k)
            .map(|j| {
                let mut e = vec![0; k];
                e[j] = 1;
                self.gamma_of_k0_element(&e)
            })
            .collect::<Result<_>>()?;
        Ok(Matrix::from_fn(k0.trace_count(), k, |i, j| {
            cols[j][i].clone()
        }))
    }

    pub fn k0star(&self) -> K0Star<T> {
        K0Star::new(self.trace_count())
    }

    /// Smallest `n ≤ limit` with `x ≤ n·⟨1⟩`.
    pub fn unit_multiple_dominating(&self, x: &CuntzClass<T>, limit: u32) -> Result<Option<u32>> {
        let unit = self.unit_class();
        let mut acc = self.zero_class();
        for n in 0..=limit {
            if self.compare(x, &acc)? {
                return Ok(Some(n));
            }
            acc = self.add(&acc, &unit)?;
        }
        Ok(None)
    }
}

/// Ordered-monoid view for the generic checkers. Classes are assumed valid;
/// invalid input panics.
impl<T: Scalar> OrderedMonoid for WModel<T> {
    type Elem = CuntzClass<T>;

    fn zero(&self) -> CuntzClass<T> {
        self.zero_class()
    }

    fn add(&self, a: &CuntzClass<T>, b: &CuntzClass<T>) -> CuntzClass<T> {
        WModel::add(self, a, b).expect("classes of this model")
    }

    fn leq(&self, a: &CuntzClass<T>, b: &CuntzClass<T>) -> bool {
        self.compare(a, b).expect("classes of this model")
    }
}

#[cfg(test)]
mod tests;
