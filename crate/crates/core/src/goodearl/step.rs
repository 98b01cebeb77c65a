use super::interval::{Interval, IntervalSet, OpenSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A lower semicontinuous step function on `[0, 1]`.
///
/// `interval_values[k]` is the value on `(x_k, x_{k+1})` and
/// `point_values[k]` the value at `x_k`; lower semicontinuity means each
/// point value is at most the values on the adjacent open intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepFn<T> {
    partition: Vec<T>,
    interval_values: Vec<T>,
    point_values: Vec<T>,
}

impl<T: Scalar> StepFn<T> {
    pub fn new(partition: Vec<T>, interval_values: Vec<T>, point_values: Vec<T>) -> Result<Self> {
        let m = partition.len();
        if m < 2 || interval_values.len() != m - 1 || point_values.len() != m {
            return Err(Error::Shape(
                "need M+1 partition points, M interval values and M+1 point values".into(),
            ));
        }
        if !partition[0].is_zero() || partition[m - 1] != T::one() {
            return Err(Error::invalid("partition must start at 0 and end at 1"));
        }
        if partition.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("partition must be strictly increasing"));
        }
        if let Some(v) = interval_values
            .iter()
            .chain(&point_values)
            .find(|v| v.is_negative())
        {
            return Err(Error::invalid(format!(
                "values must be non-negative, found {v}"
            )));
        }
        for k in 0..m {
            let left = k.checked_sub(1).map(|j| &interval_values[j]);
            let right = interval_values.get(k);
            let p = &point_values[k];
            if left.is_some_and(|l| p > l) || right.is_some_and(|r| p > r) {
                return Err(Error::invalid(format!(
                    "not lower semicontinuous at {}: point value {p} exceeds a neighbouring value",
                    partition[k]
                )));
            }
        }
        Ok(StepFn {
            partition,
            interval_values,
            point_values,
        })
    }

    pub fn constant(c: T) -> Result<Self> {
        StepFn::new(
            vec![T::zero(), T::one()],
            vec![c.clone()],
            vec![c.clone(), c],
        )
    }

    pub fn partition(&self) -> &[T] {
        &self.partition
    }

    pub fn interval_values(&self) -> &[T] {
        &self.interval_values
    }

    pub fn point_values(&self) -> &[T] {
        &self.point_values
    }

    pub fn eval(&self, x: &T) -> T {
        match self.partition.binary_search(x) {
            Ok(k) => self.point_values[k].clone(),
            Err(k) if k == 0 || k == self.partition.len() => panic!("{x} is outside [0, 1]"),
            Err(k) => self.interval_values[k - 1].clone(),
        }
    }

    pub fn sup(&self) -> T {
        self.interval_values
            .iter()
            .chain(&self.point_values)
            .max()
            .expect("non-empty")
            .clone()
    }

    /// Pieces of `[0, 1]` with the value on each: points and open intervals.
    fn pieces(&self) -> impl Iterator<Item = (Interval<T>, &T)> + '_ {
        let m = self.partition.len();
        (0..m).flat_map(move |k| {
            let point = (
                Interval::point(self.partition[k].clone()).expect("in range"),
                &self.point_values[k],
            );
            let open = (k + 1 < m).then(|| {
                (
                    Interval::open(self.partition[k].clone(), self.partition[k + 1].clone())
                        .expect("increasing"),
                    &self.interval_values[k],
                )
            });
            std::iter::once(point).chain(open)
        })
    }

    /// `{x : f(x) ≤ q}`, closed by lower semicontinuity.
    pub fn sublevel(&self, q: &T) -> IntervalSet<T> {
        IntervalSet::from_intervals(
            self.pieces()
                .filter(|(_, v)| *v <= q)
                .map(|(i, _)| i)
                .collect(),
        )
    }

    /// `{x : f(x) > q}`, open by lower semicontinuity.
    pub fn superlevel(&self, q: &T) -> OpenSet<T> {
        let set = IntervalSet::from_intervals(
            self.pieces()
                .filter(|(_, v)| *v > q)
                .map(|(i, _)| i)
                .collect(),
        );
        OpenSet::new(set).expect("superlevel sets of lsc functions are open")
    }

    /// `f_n = (k − 1)/n` on `F_k ∖ F_{k−1}` and `0` on `F_1`, where
    /// `F_k = {f ≤ k/n}`. Equivalently `(max(⌈n·f⌉, 1) − 1)/n`, a
    /// non-decreasing map of values, so lower semicontinuity is kept.
    pub fn step_approximant(&self, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("size must be positive"));
        }
        if self.sup() > T::one() {
            return Err(Error::pre("step approximation needs sup f <= 1"));
        }
        let nt = T::from_int(n);
        let level = |v: &T| {
            let k = (v.clone() * nt.clone()).ceil().max(T::one());
            (k - T::one()) / nt.clone()
        };
        Ok(StepFn {
            partition: self.partition.clone(),
            interval_values: self.interval_values.iter().map(level).collect(),
            point_values: self.point_values.iter().map(level).collect(),
        })
    }
}
