use super::interval::{Interval, IntervalSet};
use super::measure::MeasureSpec;
use super::plfn::PLFn;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `diag(g₁, …, g_n)` in `M_n(C[0, 1])₊`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalElement<T> {
    entries: Vec<PLFn<T>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectrumClass {
    /// `0` is isolated in `σ(a) ∪ {0}`: Cuntz equivalent to a projection.
    ProjectionLike,
    /// `0` is an accumulation point of `σ(a)`.
    PurelyPositive,
}

impl<T: Scalar> DiagonalElement<T> {
    pub fn new(entries: Vec<PLFn<T>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid(
                "a diagonal element needs at least one entry",
            ));
        }
        Ok(DiagonalElement { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[PLFn<T>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(PLFn::is_zero)
    }

    pub fn norm(&self) -> T {
        self.entries.iter().map(PLFn::sup).max().expect("non-empty")
    }

    pub fn direct_sum(&self, other: &DiagonalElement<T>) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        DiagonalElement { entries }
    }

    /// `σ(a) = ⋃ g_j([0, 1]) = ⋃ [min g_j, max g_j]`.
    pub fn spectrum(&self) -> IntervalSet<T> {
        IntervalSet::from_intervals(
            self.entries
                .iter()
                .map(|g| Interval::closed(g.inf(), g.sup()).expect("inf <= sup"))
                .collect(),
        )
    }

    /// Entrywise `≤` after an exact breakpoint comparison.
    pub fn le(&self, other: &DiagonalElement<T>) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::dim(self.size(), other.size()));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| a.le(b)))
    }

    /// Operator norm of the difference of two diagonal elements.
    pub fn distance(&self, other: &DiagonalElement<T>) -> Result<T> {
        if self.size() != other.size() {
            return Err(Error::dim(self.size(), other.size()));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sup_distance(b))
            .max()
            .expect("non-empty"))
    }
}

/// `d_τ(a) = (1/n)·Σ_j μ(Coz(g_j))` for `τ = μ ⊗ tr_n`.
pub fn dim_fn<T: Scalar>(a: &DiagonalElement<T>, mu: &MeasureSpec<T>) -> T {
    let total = a
        .entries
        .iter()
        .map(|g| mu.measure(&g.coz()))
        .fold(T::zero(), |x, y| x + y);
    total / T::from_int(a.size() as i64)
}

/// `(a − ε)₊`, entrywise.
pub fn cutdown<T: Scalar>(a: &DiagonalElement<T>, eps: &T) -> Result<DiagonalElement<T>> {
    if !eps.is_positive() {
        return Err(Error::pre("epsilon must be strictly positive"));
    }
    Ok(DiagonalElement {
        entries: a.entries.iter().map(|g| g.cutdown(eps)).collect(),
    })
}

/// Each entry is continuous on the connected space `[0, 1]`, so its range
/// is `[min, max]`; `0` is isolated in `σ(a) ∪ {0}` iff every entry is
/// either identically zero or bounded away from zero.
pub fn spectrum_classify<T: Scalar>(a: &DiagonalElement<T>) -> SpectrumClass {
    let touches_zero = a
        .entries
        .iter()
        .any(|g| g.inf().is_zero() && g.sup().is_positive());
    if touches_zero {
        SpectrumClass::PurelyPositive
    } else {
        SpectrumClass::ProjectionLike
    }
}

/// Model-level comparison `a ≾ b` through dimension functions over the
/// traces in `traces`: non-strict when `a` is purely positive or both are
/// projection-like, strict when a nonzero projection-like `a` meets a purely
/// positive `b`. The zero element is below everything.
pub fn compare_elements<T: Scalar>(
    a: &DiagonalElement<T>,
    b: &DiagonalElement<T>,
    traces: &[MeasureSpec<T>],
) -> Result<bool> {
    if traces.is_empty() {
        return Err(Error::pre("need at least one trace"));
    }
    if a.is_zero() {
        return Ok(true);
    }
    let strict = spectrum_classify(a) == SpectrumClass::ProjectionLike
        && spectrum_classify(b) == SpectrumClass::PurelyPositive;
    Ok(traces.iter().all(|mu| {
        let (da, db) = (dim_fn(a, mu), dim_fn(b, mu));
        if strict {
            da < db
        } else {
            da <= db
        }
    }))
}

/// `d_τ((a − δ)₊) < d_τ((a − ε)₊)` for `ε < η < δ` in `σ(a)` and an
/// atom-free `μ` charging every open interval.
pub fn comparison_lemma_check<T: Scalar>(
    a: &DiagonalElement<T>,
    eps: &T,
    eta: &T,
    delta: &T,
    mu: &MeasureSpec<T>,
) -> Result<bool> {
    if !(eps.is_positive() && eps < eta && eta < delta) {
        return Err(Error::pre("need 0 < epsilon < eta < delta"));
    }
    let spec = a.spectrum();
    for (name, v) in [("epsilon", eps), ("eta", eta), ("delta", delta)] {
        if !spec.contains(v) {
            return Err(Error::pre(format!("{name} = {v} is not in the spectrum")));
        }
    }
    if !mu.is_atom_free() || !mu.has_full_support() {
        return Err(Error::pre("measure must be atom-free with full support"));
    }
    Ok(dim_fn(&cutdown(a, delta)?, mu) < dim_fn(&cutdown(a, eps)?, mu))
}
