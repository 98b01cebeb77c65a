use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An interval in `[0, 1]` with explicit endpoint flags. `[a, a]` is a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if lo.is_negative() || hi > T::one() {
            return Err(Error::invalid(format!(
                "interval ({lo}, {hi}) leaves [0, 1]"
            )));
        }
        let ok = match lo.cmp(&hi) {
            Ordering::Less => true,
            Ordering::Equal => lo_closed && hi_closed,
            Ordering::Greater => false,
        };
        if !ok {
            return Err(Error::invalid(format!(
                "empty or reversed interval ({lo}, {hi})"
            )));
        }
        Ok(Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn open(lo: T, hi: T) -> Result<Self> {
        Interval::new(lo, hi, false, false)
    }

    pub fn closed(lo: T, hi: T) -> Result<Self> {
        Interval::new(lo, hi, true, true)
    }

    pub fn point(x: T) -> Result<Self> {
        Interval::closed(x.clone(), x)
    }

    pub fn contains(&self, x: &T) -> bool {
        let above = if self.lo_closed {
            *x >= self.lo
        } else {
            *x > self.lo
        };
        let below = if self.hi_closed {
            *x <= self.hi
        } else {
            *x < self.hi
        };
        above && below
    }

    pub fn length(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    /// Relatively open in `[0, 1]`: closed ends only at `0` or `1`.
    pub fn is_relatively_open(&self) -> bool {
        (!self.lo_closed || self.lo.is_zero()) && (!self.hi_closed || self.hi == T::one())
    }

    /// Length of the overlap with `[a, b]`.
    pub fn overlap_length(&self, a: &T, b: &T) -> T {
        let lo = if self.lo > *a {
            self.lo.clone()
        } else {
            a.clone()
        };
        let hi = if self.hi < *b {
            self.hi.clone()
        } else {
            b.clone()
        };
        if hi > lo {
            hi - lo
        } else {
            T::zero()
        }
    }
}

impl<T: Scalar> std::fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// A finite union of pairwise disjoint, non-adjacent intervals, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet<T> {
    intervals: Vec<Interval<T>>,
}

impl<T: Scalar> IntervalSet<T> {
    pub fn empty() -> Self {
        IntervalSet {
            intervals: Vec::new(),
        }
    }

    pub fn full() -> Self {
        IntervalSet {
            intervals: vec![Interval::closed(T::zero(), T::one()).expect("valid")],
        }
    }

    /// Normalizing union of arbitrary intervals.
    pub fn from_intervals(mut parts: Vec<Interval<T>>) -> Self {
        parts.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Interval<T>> = Vec::new();
        for p in parts {
            if let Some(last) = out.last_mut() {
                let joins = match p.lo.cmp(&last.hi) {
                    Ordering::Less => true,
                    Ordering::Equal => last.hi_closed || p.lo_closed,
                    Ordering::Greater => false,
                };
                if joins {
                    match p.hi.cmp(&last.hi) {
                        Ordering::Greater => {
                            last.hi = p.hi;
                            last.hi_closed = p.hi_closed;
                        }
                        Ordering::Equal => last.hi_closed |= p.hi_closed,
                        Ordering::Less => {}
                    }
                    continue;
                }
            }
            out.push(p);
        }
        IntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval<T>] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    /// Lebesgue measure.
    pub fn length(&self) -> T {
        self.intervals
            .iter()
            .fold(T::zero(), |acc, i| acc + i.length())
    }

    pub fn union(&self, other: &IntervalSet<T>) -> Self {
        let mut all = self.intervals.clone();
        all.extend(other.intervals.iter().cloned());
        IntervalSet::from_intervals(all)
    }

    /// Complement in `[0, 1]`.
    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut cursor = T::zero();
        let mut cursor_closed = true;
        for i in &self.intervals {
            let lo_closed = cursor_closed;
            let hi_closed = !i.lo_closed;
            if let Ok(gap) = Interval::new(cursor.clone(), i.lo.clone(), lo_closed, hi_closed) {
                out.push(gap);
            }
            cursor = i.hi.clone();
            cursor_closed = !i.hi_closed;
        }
        if let Ok(gap) = Interval::new(cursor, T::one(), cursor_closed, true) {
            out.push(gap);
        }
        IntervalSet::from_intervals(out)
    }
}

impl<T: Scalar> std::fmt::Display for IntervalSet<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.intervals.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

/// A relatively open subset of `[0, 1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpenSet<T>(IntervalSet<T>);

impl<T: Scalar> OpenSet<T> {
    pub fn new(set: IntervalSet<T>) -> Result<Self> {
        if let Some(i) = set.intervals().iter().find(|i| !i.is_relatively_open()) {
            return Err(Error::invalid(format!(
                "{i} is not relatively open in [0, 1]"
            )));
        }
        Ok(OpenSet(set))
    }

    pub fn empty() -> Self {
        OpenSet(IntervalSet::empty())
    }

    pub fn full() -> Self {
        OpenSet(IntervalSet::full())
    }

    pub fn set(&self) -> &IntervalSet<T> {
        &self.0
    }

    pub fn contains(&self, x: &T) -> bool {
        self.0.contains(x)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<T: Scalar> std::fmt::Display for OpenSet<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}
