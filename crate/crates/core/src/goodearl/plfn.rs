use super::interval::{Interval, IntervalSet, OpenSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A continuous piecewise-linear function `[0, 1] → [0, ∞)` given by its
/// values at breakpoints `0 = x₀ < … < x_m = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLFn<T> {
    xs: Vec<T>,
    ys: Vec<T>,
}

impl<T: Scalar> PLFn<T> {
    pub fn new(xs: Vec<T>, ys: Vec<T>) -> Result<Self> {
        if xs.len() < 2 || xs.len() != ys.len() {
            return Err(Error::invalid(
                "need at least two breakpoints, one value each",
            ));
        }
        if !xs[0].is_zero() || xs[xs.len() - 1] != T::one() {
            return Err(Error::invalid("breakpoints must start at 0 and end at 1"));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("breakpoints must be strictly increasing"));
        }
        if let Some(y) = ys.iter().find(|y| y.is_negative()) {
            return Err(Error::invalid(format!(
                "values must be non-negative, found {y}"
            )));
        }
        Ok(PLFn { xs, ys }.simplified())
    }

    pub fn constant(c: T) -> Result<Self> {
        PLFn::new(vec![T::zero(), T::one()], vec![c.clone(), c])
    }

    pub fn zero() -> Self {
        PLFn::constant(T::zero()).expect("valid")
    }

    /// Height `h` on the component `I` of an open set, vanishing exactly
    /// off `I`: a tent on `(a, b)`, a ramp on `[0, b)` or `(a, 1]`, and the
    /// constant `h` on `[0, 1]`.
    pub fn bump(component: &Interval<T>, h: &T) -> Result<Self> {
        if !component.is_relatively_open() || component.lo == component.hi {
            return Err(Error::invalid(format!(
                "{component} is not an open component"
            )));
        }
        if !h.is_positive() {
            return Err(Error::invalid("bump height must be positive"));
        }
        let (a, b) = (component.lo.clone(), component.hi.clone());
        let z = T::zero();
        let mut pts: Vec<(T, T)> = Vec::new();
        match (component.lo_closed, component.hi_closed) {
            (true, true) => return PLFn::constant(h.clone()),
            (true, false) => {
                pts.push((a, h.clone()));
                pts.push((b.clone(), z.clone()));
            }
            (false, true) => {
                pts.push((a, z.clone()));
                pts.push((b.clone(), h.clone()));
            }
            (false, false) => {
                let mid = (a.clone() + b.clone()) / T::from_int(2);
                pts.push((a, z.clone()));
                pts.push((mid, h.clone()));
                pts.push((b.clone(), z.clone()));
            }
        }
        if !pts[0].0.is_zero() {
            pts.insert(0, (T::zero(), z.clone()));
        }
        if pts[pts.len() - 1].0 != T::one() {
            pts.push((T::one(), z));
        }
        let (xs, ys) = pts.into_iter().unzip();
        PLFn::new(xs, ys)
    }

    /// A bump of height `h` on each component of `o`; its cozero set is `o`.
    pub fn supported_on(o: &OpenSet<T>, h: &T) -> Result<Self> {
        let mut acc = PLFn::zero();
        for c in o.set().intervals() {
            acc = acc.max(&PLFn::bump(c, h)?);
        }
        Ok(acc)
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.xs
    }

    pub fn values(&self) -> &[T] {
        &self.ys
    }

    pub fn eval(&self, x: &T) -> T {
        let idx = match self.xs.binary_search(x) {
            Ok(i) => return self.ys[i].clone(),
            Err(i) => i,
        };
        if idx == 0 || idx == self.xs.len() {
            panic!("{x} is outside [0, 1]");
        }
        let (x0, x1) = (&self.xs[idx - 1], &self.xs[idx]);
        let (y0, y1) = (&self.ys[idx - 1], &self.ys[idx]);
        y0.clone()
            + (y1.clone() - y0.clone()) * (x.clone() - x0.clone()) / (x1.clone() - x0.clone())
    }

    pub fn sup(&self) -> T {
        self.ys.iter().max().expect("non-empty").clone()
    }

    pub fn inf(&self) -> T {
        self.ys.iter().min().expect("non-empty").clone()
    }

    pub fn is_zero(&self) -> bool {
        self.ys.iter().all(|y| y.is_zero())
    }

    /// The exact cozero set `{x : g(x) > 0}`.
    pub fn coz(&self) -> OpenSet<T> {
        let mut parts = Vec::new();
        for k in 0..self.xs.len() - 1 {
            let (y0, y1) = (&self.ys[k], &self.ys[k + 1]);
            if y0.is_zero() && y1.is_zero() {
                continue;
            }
            parts.push(
                Interval::new(
                    self.xs[k].clone(),
                    self.xs[k + 1].clone(),
                    y0.is_positive(),
                    y1.is_positive(),
                )
                .expect("proper segment"),
            );
        }
        OpenSet::new(IntervalSet::from_intervals(parts)).expect("cozero sets are open")
    }

    /// `(g − ε)₊`.
    pub fn cutdown(&self, eps: &T) -> Self {
        self.map_pointwise(&PLFn::constant_unchecked(eps.clone()), |a, b| {
            let d = a - b;
            if d.is_negative() {
                T::zero()
            } else {
                d
            }
        })
    }

    /// Pointwise maximum.
    pub fn max(&self, other: &PLFn<T>) -> Self {
        self.map_pointwise(other, |a, b| if a >= b { a } else { b })
    }

    /// `‖g − h‖∞`, attained at a breakpoint of one of the two.
    pub fn sup_distance(&self, other: &PLFn<T>) -> T {
        let xs = merge_breakpoints(&self.xs, &other.xs);
        xs.iter()
            .map(|x| (self.eval(x) - other.eval(x)).abs())
            .max()
            .expect("non-empty")
    }

    /// `self ≤ other` everywhere; exact since both are linear between the
    /// merged breakpoints.
    pub fn le(&self, other: &PLFn<T>) -> bool {
        merge_breakpoints(&self.xs, &other.xs)
            .iter()
            .all(|x| self.eval(x) <= other.eval(x))
    }

    fn constant_unchecked(c: T) -> Self {
        PLFn {
            xs: vec![T::zero(), T::one()],
            ys: vec![c.clone(), c],
        }
    }

    /// Applies `op` to two functions for which `op` of two linear pieces is
    /// linear wherever their difference keeps a sign; crossings are added.
    fn map_pointwise(&self, other: &PLFn<T>, op: impl Fn(T, T) -> T) -> Self {
        let base = merge_breakpoints(&self.xs, &other.xs);
        let mut xs: Vec<T> = Vec::with_capacity(base.len() * 2);
        for k in 0..base.len() {
            if k > 0 {
                let (a, b) = (&base[k - 1], &base[k]);
                let da = self.eval(a) - other.eval(a);
                let db = self.eval(b) - other.eval(b);
                if (da.is_positive() && db.is_negative()) || (da.is_negative() && db.is_positive())
                {
                    // root of the linear difference on (a, b)
                    let t = da.clone() / (da - db);
                    xs.push(a.clone() + (b.clone() - a.clone()) * t);
                }
            }
            xs.push(base[k].clone());
        }
        let ys = xs.iter().map(|x| op(self.eval(x), other.eval(x))).collect();
        PLFn { xs, ys }.simplified()
    }

    /// Drops breakpoints in the interior of a straight segment.
    fn simplified(self) -> Self {
        let n = self.xs.len();
        if n <= 2 {
            return self;
        }
        let mut xs = vec![self.xs[0].clone()];
        let mut ys = vec![self.ys[0].clone()];
        for k in 1..n - 1 {
            let (x0, y0) = (xs.last().expect("non-empty"), ys.last().expect("non-empty"));
            let (x1, y1) = (&self.xs[k], &self.ys[k]);
            let (x2, y2) = (&self.xs[k + 1], &self.ys[k + 1]);
            let collinear = (y1.clone() - y0.clone()) * (x2.clone() - x1.clone())
                == (y2.clone() - y1.clone()) * (x1.clone() - x0.clone());
            if !collinear {
                xs.push(x1.clone());
                ys.push(y1.clone());
            }
        }
        xs.push(self.xs[n - 1].clone());
        ys.push(self.ys[n - 1].clone());
        PLFn { xs, ys }
    }
}

fn merge_breakpoints<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(x), Some(y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(y)) => {
                j += 1;
                y
            }
            (Some(x), None) => {
                i += 1;
                x
            }
            (None, Some(y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next.clone());
    }
    out
}
