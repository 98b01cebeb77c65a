use std::fmt::Write as _;

use super::element::DiagonalElement;
use super::plfn::PLFn;
use super::step::StepFn;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Matrix sizes `n_1 | n_2 | … | n_L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealizationSchedule {
    sizes: Vec<i64>,
}

impl RealizationSchedule {
    pub fn new(sizes: Vec<i64>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::invalid("schedule is empty"));
        }
        if sizes[0] < 1 {
            return Err(Error::invalid("sizes must be positive"));
        }
        if let Some(w) = sizes.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::invalid(format!("{} does not divide {}", w[0], w[1])));
        }
        Ok(RealizationSchedule { sizes })
    }

    /// `n_i = 2ⁱ` for `i = 1..=len`.
    pub fn dyadic(len: u32) -> Result<Self> {
        if len == 0 || len > 30 {
            return Err(Error::invalid("dyadic schedule length must be in 1..=30"));
        }
        RealizationSchedule::new((1..=len).map(|i| 1i64 << i).collect())
    }

    pub fn sizes(&self) -> &[i64] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }
}

/// Stage `i` (1-based) of the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationStage<T> {
    pub index: u32,
    pub size: i64,
    /// `f_i`.
    pub approximant: StepFn<T>,
    /// `ã_i`: bumps of height `2⁻ⁱ` on `{f > (k−1)/n_i}` in slot `k ≥ 2`.
    pub bumps: DiagonalElement<T>,
    /// `a_i = max(φ(a_{i−1}), ã_i)`.
    pub element: DiagonalElement<T>,
}

/// Diagonal position of the copies of an old slot after the connecting
/// map of multiplicity `r`.
///
/// Slot `k ≥ 2` of `a_i` has cozero set `{f > (k−1)/n_i}`, which equals
/// `{f > (k−1)r/n_{i+1}}`; it lies inside the cozero set of the new bump in
/// slot `l` exactly when `l ≤ (k−1)r + 1`. The `r` copies of slot `k` go to
/// `(k−2)r + 2 ..= (k−1)r + 1`, and the zero slot fills the rest. Returns the
/// old slot (1-based) feeding new slot `l` (1-based).
pub fn source_slot(l: i64, r: i64, old_size: i64) -> i64 {
    if l == 1 || l > (old_size - 1) * r + 1 {
        1
    } else {
        (l - 1 + r - 1) / r + 1
    }
}

/// `φ(a)`: `r` copies of every entry, placed by [`source_slot`].
pub fn embed<T: Scalar>(a: &DiagonalElement<T>, r: i64) -> DiagonalElement<T> {
    let n = a.size() as i64;
    let entries = (1..=n * r)
        .map(|l| a.entries()[(source_slot(l, r, n) - 1) as usize].clone())
        .collect();
    DiagonalElement::new(entries).expect("non-empty")
}

fn bumps<T: Scalar>(f: &StepFn<T>, n: i64, height: &T) -> Result<DiagonalElement<T>> {
    let nt = T::from_int(n);
    let mut entries = vec![PLFn::zero()];
    for k in 2..=n {
        let support = f.superlevel(&(T::from_int(k - 1) / nt.clone()));
        entries.push(PLFn::supported_on(&support, height)?);
    }
    DiagonalElement::new(entries)
}

/// Builds `a_1, …, a_L` for the target `f` along the schedule.
pub fn realize<T: Scalar>(
    f: &StepFn<T>,
    schedule: &RealizationSchedule,
    stages: usize,
) -> Result<Vec<RealizationStage<T>>> {
    if f.sup() > T::one() {
        return Err(Error::pre("target must satisfy sup f <= 1"));
    }
    if stages == 0 || stages > schedule.len() {
        return Err(Error::pre(format!(
            "need 1 <= stages <= {}, got {stages}",
            schedule.len()
        )));
    }
    let mut out: Vec<RealizationStage<T>> = Vec::with_capacity(stages);
    for (idx, &n) in schedule.sizes()[..stages].iter().enumerate() {
        let index = idx as u32 + 1;
        let height = T::one() / T::pow2(index);
        let fresh = bumps(f, n, &height)?;
        let element = match out.last() {
            None => fresh.clone(),
            Some(prev) => {
                let lifted = embed(&prev.element, n / prev.size);
                let merged = lifted
                    .entries()
                    .iter()
                    .zip(fresh.entries())
                    .map(|(a, b)| a.max(b))
                    .collect();
                DiagonalElement::new(merged)?
            }
        };
        out.push(RealizationStage {
            index,
            size: n,
            approximant: f.step_approximant(n)?,
            bumps: fresh,
            element,
        });
    }
    Ok(out)
}

/// Per-stage verification results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageCheck<T> {
    pub index: u32,
    pub size: i64,
    pub grid_points: usize,
    /// Grid points where `d_{τ_x}(a_i) ≠ f_i(x)`.
    pub dimension_mismatches: Vec<T>,
    /// `0 ≤ f − f_i ≤ 1/n_i` on the grid.
    pub approximant_gap_ok: bool,
    /// `φ(a_{i−1}) ≤ a_i` entrywise.
    pub increasing: bool,
    /// `‖a_i − φ(a_{i−1})‖`, or `‖a_1‖` at the first stage.
    pub increment: T,
    pub increment_bound: T,
}

impl<T: Scalar> StageCheck<T> {
    pub fn ok(&self) -> bool {
        self.dimension_mismatches.is_empty()
            && self.approximant_gap_ok
            && self.increasing
            && self.increment <= self.increment_bound
    }
}

/// `d_{τ_x}(a) = (1/n)·#{j : g_j(x) > 0}`.
pub fn dim_at_point<T: Scalar>(a: &DiagonalElement<T>, x: &T) -> T {
    let count = a.entries().iter().filter(|g| g.coz().contains(x)).count();
    T::from_int(count as i64) / T::from_int(a.size() as i64)
}

/// `{k/(points−1)}` together with the partition points of `f`.
pub fn verification_grid<T: Scalar>(f: &StepFn<T>, points: usize) -> Vec<T> {
    let d = T::from_int(points.max(2) as i64 - 1);
    let mut grid: Vec<T> = (0..points.max(2))
        .map(|k| T::from_int(k as i64) / d.clone())
        .chain(f.partition().iter().cloned())
        .collect();
    grid.sort();
    grid.dedup();
    grid
}

/// Checks every stage on the grid: exact dimension values, the approximant
/// gap, monotonicity, and the norm increment `≤ 2⁻ⁱ`.
pub fn verify_realization<T: Scalar>(
    f: &StepFn<T>,
    stages: &[RealizationStage<T>],
    grid: &[T],
) -> Vec<StageCheck<T>> {
    let mut out = Vec::with_capacity(stages.len());
    for (idx, st) in stages.iter().enumerate() {
        let cozs: Vec<_> = st.element.entries().iter().map(PLFn::coz).collect();
        let n = T::from_int(st.size);
        let mut mismatches = Vec::new();
        let mut gap_ok = true;
        for x in grid {
            let count = cozs.iter().filter(|o| o.contains(x)).count();
            let d = T::from_int(count as i64) / n.clone();
            let fi = st.approximant.eval(x);
            if d != fi {
                mismatches.push(x.clone());
            }
            let gap = f.eval(x) - fi;
            gap_ok &= !gap.is_negative() && gap <= T::one() / n.clone();
        }
        let (increasing, increment) = match idx.checked_sub(1).map(|j| &stages[j]) {
            None => (true, st.element.norm()),
            Some(prev) => {
                let lifted = embed(&prev.element, st.size / prev.size);
                (
                    lifted.le(&st.element).unwrap_or(false),
                    lifted.distance(&st.element).expect("same size"),
                )
            }
        };
        out.push(StageCheck {
            index: st.index,
            size: st.size,
            grid_points: grid.len(),
            dimension_mismatches: mismatches,
            approximant_gap_ok: gap_ok,
            increasing,
            increment,
            increment_bound: T::one() / T::pow2(st.index),
        });
    }
    out
}

/// Columns: `stage, n, x, f, f_i, d`, one row per stage and grid point.
pub fn realization_table<T: Scalar>(
    f: &StepFn<T>,
    stages: &[RealizationStage<T>],
    grid: &[T],
) -> String {
    let mut out = String::from("stage\tn\tx\tf\tf_i\td\n");
    for st in stages {
        let cozs: Vec<_> = st.element.entries().iter().map(PLFn::coz).collect();
        for x in grid {
            let count = cozs.iter().filter(|o| o.contains(x)).count();
            let d = T::from_int(count as i64) / T::from_int(st.size);
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                st.index,
                st.size,
                x,
                f.eval(x),
                st.approximant.eval(x),
                d
            );
        }
    }
    out
}
