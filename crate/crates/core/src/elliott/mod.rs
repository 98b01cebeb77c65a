//! Elliott invariants over finitely many extreme traces, their morphisms,
//! and the functor sending them to model Cuntz semigroups.
//!
//! A morphism `Θ = (θ₀, θ₁, γ)` from the invariant of `A` to that of `B`
//! carries `θ₀: K₀(A) → K₀(B)` as a `k_B x k_A` integer matrix, a `K₁` map,
//! and `γ: T(B) → T(A)` as an `n_A x n_B` matrix whose columns are convex
//! coefficients. The state/trace square commutes iff
//! `γᵀ·R_A = R_B·θ₀`.

use crate::error::{Error, Result};
use crate::linalg::{IntVec, Matrix};
use crate::ordmon::box_elements;
use crate::scalar::Scalar;
use crate::wmodel::{CuntzClass, K0Model, SoftFn, TraceSimplex, WModel};

/// A finitely generated abelian group `Z^r ⊕ Z/t₁ ⊕ … ⊕ Z/t_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupData {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianGroupData {
    pub fn trivial() -> Self {
        AbelianGroupData {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// Number of generators: free ones first, then one per torsion factor.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(t) = self.torsion.iter().find(|&&t| t <= 1) {
            out.push(format!("torsion factor {t} must exceed 1"));
        }
        for w in self.torsion.windows(2) {
            if w[0] > 1 && w[1] % w[0] != 0 {
                out.push(format!(
                    "torsion factors {} and {} are not in divisibility order",
                    w[0], w[1]
                ));
            }
        }
        out
    }

    /// Order of the `j`-th generator's coordinate, `0` for a free one.
    fn modulus(&self, j: usize) -> i64 {
        if j < self.free_rank {
            0
        } else {
            self.torsion[j - self.free_rank]
        }
    }

    /// Reduces each torsion coordinate of a column into `[0, t)`.
    fn reduce(&self, m: &Matrix<i64>) -> Matrix<i64> {
        Matrix::from_fn(m.nrows(), m.ncols(), |i, j| {
            let t = self.modulus(i);
            if t == 0 {
                *m.get(i, j)
            } else {
                m.get(i, j).rem_euclid(t)
            }
        })
    }
}

/// `((K₀, K₀⁺, [1]), K₁, T, r)` with `K₀⁺` given by strict states.
///
/// Fields are public so that malformed data can be represented and
/// reported by [`validate_invariant`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElliottInvariant<T> {
    /// Pairing `r`: one row per extreme trace, one column per `K₀` generator.
    pub states: Matrix<T>,
    pub unit: IntVec,
    pub k1: AbelianGroupData,
    pub traces: TraceSimplex,
}

impl<T: Scalar> ElliottInvariant<T> {
    pub fn new(k0: &K0Model<T>, k1: AbelianGroupData, traces: TraceSimplex) -> Self {
        ElliottInvariant {
            states: k0.states().clone(),
            unit: k0.unit().to_vec(),
            k1,
            traces,
        }
    }

    /// The invariant of the Jiang–Su algebra: `(Z, Z⁺, 1)`, `K₁ = 0`, one trace.
    pub fn jiang_su() -> Self {
        ElliottInvariant {
            states: Matrix::from_fn(1, 1, |_, _| T::one()),
            unit: vec![1],
            k1: AbelianGroupData::trivial(),
            traces: TraceSimplex::new(vec!["tau_Z".into()]).expect("valid"),
        }
    }

    pub fn rank(&self) -> usize {
        self.states.ncols()
    }

    pub fn trace_count(&self) -> usize {
        self.states.nrows()
    }

    pub fn k0_model(&self) -> Result<K0Model<T>> {
        if self.states.nrows() != self.traces.len() {
            return Err(Error::invalid(format!(
                "pairing has {} rows but there are {} traces",
                self.states.nrows(),
                self.traces.len()
            )));
        }
        K0Model::new(self.states.clone(), self.unit.clone())
    }
}

/// List of violated invariants; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::invalid(self.violations.join("; ")))
        }
    }
}

pub fn validate_invariant<T: Scalar>(inv: &ElliottInvariant<T>) -> ValidationReport {
    let mut report = ValidationReport::default();
    if inv.states.nrows() != inv.traces.len() {
        report.push(format!(
            "pairing has {} rows but there are {} traces",
            inv.states.nrows(),
            inv.traces.len()
        ));
    }
    if inv.unit.len() != inv.states.ncols() {
        report.push(format!(
            "unit has length {}, K0 rank is {}",
            inv.unit.len(),
            inv.states.ncols()
        ));
    } else {
        let at_unit = inv.states.mul_int_vec(&inv.unit).expect("lengths checked");
        for (i, v) in at_unit.iter().enumerate() {
            if !v.is_one() {
                report.push(format!(
                    "state {i} takes the value {v} on the unit, expected 1"
                ));
            }
        }
    }
    for v in inv.k1.violations() {
        report.push(format!("K1: {v}"));
    }
    report
}

/// `Θ = (θ₀, θ₁, γ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantMorphism<T> {
    /// `k_B x k_A`.
    pub theta0: Matrix<i64>,
    /// Generators of `K₁(A)` to generators of `K₁(B)`: `g_B x g_A`.
    pub theta1: Matrix<i64>,
    /// `n_A x n_B`; column `j` is the image of the `j`-th extreme trace of `B`.
    pub gamma: Matrix<T>,
}

impl<T: Scalar> InvariantMorphism<T> {
    pub fn identity(inv: &ElliottInvariant<T>) -> Self {
        InvariantMorphism {
            theta0: Matrix::int_identity(inv.rank()),
            theta1: Matrix::int_identity(inv.k1.generator_count()),
            gamma: Matrix::identity(inv.trace_count()),
        }
    }

    /// `next ∘ self`, for `self: A → B` and `next: B → C`.
    pub fn then(&self, next: &InvariantMorphism<T>, k1_target: &AbelianGroupData) -> Result<Self> {
        Ok(InvariantMorphism {
            theta0: next.theta0.int_mul(&self.theta0)?,
            theta1: k1_target.reduce(&next.theta1.int_mul(&self.theta1)?),
            gamma: self.gamma.mul(&next.gamma)?,
        })
    }
}

/// Checks `Θ` against its source and target: shapes, unit preservation,
/// `θ₁` well-definedness on torsion, column-stochastic `γ`, commutativity
/// `γᵀ·R_A = R_B·θ₀`, and positivity of `θ₀` on a box of cone elements.
pub fn validate_morphism<T: Scalar>(
    theta: &InvariantMorphism<T>,
    source: &ElliottInvariant<T>,
    target: &ElliottInvariant<T>,
) -> Result<ValidationReport> {
    let (ka, kb) = (source.rank(), target.rank());
    let (na, nb) = (source.trace_count(), target.trace_count());
    let (ga, gb) = (source.k1.generator_count(), target.k1.generator_count());
    if (theta.theta0.nrows(), theta.theta0.ncols()) != (kb, ka) {
        return Err(Error::Shape(format!(
            "theta0 is {}x{}, expected {kb}x{ka}",
            theta.theta0.nrows(),
            theta.theta0.ncols()
        )));
    }
    if (theta.theta1.nrows(), theta.theta1.ncols()) != (gb, ga) {
        return Err(Error::Shape(format!(
            "theta1 is {}x{}, expected {gb}x{ga}",
            theta.theta1.nrows(),
            theta.theta1.ncols()
        )));
    }
    if (theta.gamma.nrows(), theta.gamma.ncols()) != (na, nb) {
        return Err(Error::Shape(format!(
            "gamma is {}x{}, expected {na}x{nb}",
            theta.gamma.nrows(),
            theta.gamma.ncols()
        )));
    }

    let mut report = ValidationReport::default();
    let image = theta.theta0.int_mul_vec(&source.unit)?;
    if image != target.unit {
        report.push(format!(
            "unit not preserved: theta0 sends {:?} to {image:?}, expected {:?}",
            source.unit, target.unit
        ));
    }

    for j in 0..ga {
        let t = source.k1.modulus(j);
        if t == 0 {
            continue;
        }
        for i in 0..gb {
            let entry = t * theta.theta1.get(i, j);
            let m = target.k1.modulus(i);
            let vanishes = if m == 0 { entry == 0 } else { entry % m == 0 };
            if !vanishes {
                report.push(format!(
                    "theta1 is not well defined on the torsion generator {j}"
                ));
                break;
            }
        }
    }

    for j in 0..nb {
        let col = theta.gamma.column(j);
        if col.iter().any(|c| c.is_negative()) {
            report.push(format!("gamma column {j} has a negative entry"));
        }
        let sum = col.iter().fold(T::zero(), |a, c| a + c.clone());
        if !sum.is_one() {
            report.push(format!("gamma column {j} sums to {sum}, expected 1"));
        }
    }

    let lhs = theta.gamma.transpose().mul(&source.states)?;
    let rhs = target.states.mul_int(&theta.theta0)?;
    if lhs != rhs {
        report.push("state/trace square does not commute: gamma^T R_A != R_B theta0");
    }

    if let (Ok(ka_model), Ok(kb_model)) = (source.k0_model(), target.k0_model()) {
        for v in box_elements(ka, 3) {
            if ka_model.in_cone(&v)? && !kb_model.in_cone(&theta.theta0.int_mul_vec(&v)?)? {
                report.push(format!(
                    "theta0 sends the positive element {v:?} outside the cone"
                ));
                break;
            }
        }
    }
    Ok(report)
}

/// `F(I)`: the model over the invariant's `K₀` and trace simplex.
pub fn functor_g_obj<T: Scalar>(inv: &ElliottInvariant<T>) -> Result<WModel<T>> {
    validate_invariant(inv).into_result()?;
    WModel::finite(inv.k0_model()?, inv.traces.clone())
}

/// `F(Θ)`: `θ₀` on projection classes and `f ↦ γᵀf` on soft classes.
pub fn functor_g_mor<T: Scalar>(
    theta: &InvariantMorphism<T>,
    source: &ElliottInvariant<T>,
    target: &ElliottInvariant<T>,
) -> Result<WModelMorphism<T>> {
    validate_morphism(theta, source, target)?.into_result()?;
    Ok(WModelMorphism {
        source: functor_g_obj(source)?,
        target: functor_g_obj(target)?,
        theta0: theta.theta0.clone(),
        gamma: theta.gamma.clone(),
    })
}

/// A morphism of models induced by `(θ₀, γ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WModelMorphism<T> {
    pub source: WModel<T>,
    pub target: WModel<T>,
    pub theta0: Matrix<i64>,
    pub gamma: Matrix<T>,
}

impl<T: Scalar> WModelMorphism<T> {
    pub fn identity(model: &WModel<T>) -> Result<Self> {
        let k0 = model.k0()?;
        Ok(WModelMorphism {
            source: model.clone(),
            target: model.clone(),
            theta0: Matrix::int_identity(k0.rank()),
            gamma: Matrix::identity(model.trace_count()),
        })
    }

    /// The soft action `f ↦ γᵀf`.
    pub fn soft_action(&self) -> Matrix<T> {
        self.gamma.transpose()
    }

    pub fn apply(&self, x: &CuntzClass<T>) -> Result<CuntzClass<T>> {
        self.source.validate_class(x)?;
        match x {
            CuntzClass::Proj(v) => Ok(CuntzClass::Proj(self.theta0.int_mul_vec(v)?)),
            CuntzClass::Soft(f) => Ok(CuntzClass::Soft(SoftFn::new(
                self.soft_action().mul_vec(f.values())?,
            )?)),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &WModelMorphism<T>) -> Result<Self> {
        if self.target != next.source {
            return Err(Error::ModelMismatch("morphisms are not composable".into()));
        }
        Ok(WModelMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            theta0: next.theta0.int_mul(&self.theta0)?,
            gamma: self.gamma.mul(&next.gamma)?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.theta0 == Matrix::int_identity(self.theta0.nrows())
            && self.gamma == Matrix::identity(self.gamma.nrows())
    }
}

#[cfg(test)]
mod tests;
