use super::interval::{Interval, IntervalSet, OpenSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A constant density on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DensityPiece<T> {
    pub lo: T,
    pub hi: T,
    pub density: T,
}

/// A Borel probability measure on `[0, 1]`: a piecewise-constant density
/// plus finitely many atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MeasureSpec<T> {
    pieces: Vec<DensityPiece<T>>,
    atoms: Vec<(T, T)>,
}

impl<T: Scalar> MeasureSpec<T> {
    /// Density pieces must be non-overlapping and in order.
    pub fn new(pieces: Vec<DensityPiece<T>>, atoms: Vec<(T, T)>) -> Result<Self> {
        let mut cursor = T::zero();
        for p in &pieces {
            if p.lo < cursor || p.hi <= p.lo || p.hi > T::one() {
                return Err(Error::invalid(format!(
                    "density pieces must be ordered, disjoint and inside [0, 1]; got [{}, {}]",
                    p.lo, p.hi
                )));
            }
            if p.density.is_negative() {
                return Err(Error::invalid("densities must be non-negative"));
            }
            cursor = p.hi.clone();
        }
        for (x, w) in &atoms {
            if x.is_negative() || *x > T::one() {
                return Err(Error::invalid(format!("atom at {x} is outside [0, 1]")));
            }
            if !w.is_positive() {
                return Err(Error::invalid("atom weights must be positive"));
            }
        }
        let mass = pieces
            .iter()
            .map(|p| p.density.clone() * (p.hi.clone() - p.lo.clone()))
            .chain(atoms.iter().map(|(_, w)| w.clone()))
            .fold(T::zero(), |a, b| a + b);
        if mass != T::one() {
            return Err(Error::invalid(format!("total mass is {mass}, expected 1")));
        }
        Ok(MeasureSpec { pieces, atoms })
    }

    pub fn lebesgue() -> Self {
        MeasureSpec::weighted(T::one(), Vec::new()).expect("valid")
    }

    pub fn dirac(x: T) -> Result<Self> {
        MeasureSpec::new(Vec::new(), vec![(x, T::one())])
    }

    /// `w·Lebesgue + Σ atoms`.
    pub fn weighted(lebesgue_weight: T, atoms: Vec<(T, T)>) -> Result<Self> {
        let pieces = if lebesgue_weight.is_zero() {
            Vec::new()
        } else {
            vec![DensityPiece {
                lo: T::zero(),
                hi: T::one(),
                density: lebesgue_weight,
            }]
        };
        MeasureSpec::new(pieces, atoms)
    }

    pub fn pieces(&self) -> &[DensityPiece<T>] {
        &self.pieces
    }

    pub fn atoms(&self) -> &[(T, T)] {
        &self.atoms
    }

    pub fn is_atom_free(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atom-free with a density that is positive almost everywhere, so every
    /// open subinterval has positive mass.
    pub fn has_full_support(&self) -> bool {
        let mut cursor = T::zero();
        for p in &self.pieces {
            if p.lo != cursor || !p.density.is_positive() {
                return false;
            }
            cursor = p.hi.clone();
        }
        cursor == T::one()
    }

    pub fn measure_interval(&self, i: &Interval<T>) -> T {
        let continuous = self
            .pieces
            .iter()
            .map(|p| p.density.clone() * i.overlap_length(&p.lo, &p.hi))
            .fold(T::zero(), |a, b| a + b);
        self.atoms
            .iter()
            .filter(|(x, _)| i.contains(x))
            .fold(continuous, |a, (_, w)| a + w.clone())
    }

    pub fn measure_set(&self, s: &IntervalSet<T>) -> T {
        s.intervals()
            .iter()
            .map(|i| self.measure_interval(i))
            .fold(T::zero(), |a, b| a + b)
    }

    pub fn measure(&self, o: &OpenSet<T>) -> T {
        self.measure_set(o.set())
    }

    /// `μ([0, t])` for an atom-free measure.
    fn cdf(&self, t: &T) -> T {
        self.pieces
            .iter()
            .map(|p| {
                p.density.clone()
                    * Interval::closed(T::zero(), t.clone())
                        .expect("t in range")
                        .overlap_length(&p.lo, &p.hi)
            })
            .fold(T::zero(), |a, b| a + b)
    }
}

/// The left-anchored open set `(0, t)` with `μ((0, t)) = λ`.
pub fn open_set_of_measure<T: Scalar>(mu: &MeasureSpec<T>, lambda: &T) -> Result<OpenSet<T>> {
    if !mu.is_atom_free() {
        return Err(Error::pre("measure has atoms"));
    }
    if !lambda.is_positive() || *lambda > T::one() {
        return Err(Error::pre("lambda must lie in (0, 1]"));
    }
    // The first piece whose right end reaches lambda starts below it, so
    // its density is positive and the cdf is invertible there.
    for p in mu.pieces() {
        let at_hi = mu.cdf(&p.hi);
        if at_hi >= *lambda {
            let at_lo = mu.cdf(&p.lo);
            let t = p.lo.clone() + (lambda.clone() - at_lo) / p.density.clone();
            let set = IntervalSet::from_intervals(vec![Interval::open(T::zero(), t)?]);
            return OpenSet::new(set);
        }
    }
    unreachable!("total mass is 1")
}
