//! Realization of strictly positive functions on a finite trace simplex by
//! increasing sequences with explicit, certified bounds.
//!
//! The dyadic stage `g_i = (⌊2ⁱf⌋ − 1)/2ⁱ` satisfies, coordinatewise and for
//! every `i ≥ i₀(f)`:
//!
//! * `2⁻ⁱ ≤ f − g_i < 2¹⁻ⁱ`, so `g_i < f` strictly;
//! * `g_{i+1} − g_i ∈ {2^{−(i+1)}, 2·2^{−(i+1)}}`, since
//!   `⌊2^{i+1}f⌋ − 2⌊2ⁱf⌋ ∈ {0, 1}`;
//! * `Σ_i ‖h_i‖ ≤ ‖f‖ + 2^{1−i₀}`, where `h_{i₀} = g_{i₀}` and
//!   `h_i = g_i − g_{i−1}` afterwards.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::{sub_vec, IntVec};
use crate::scalar::{max_of, min_of, sup_norm, Scalar};
use crate::wmodel::K0Model;

fn check_positive<T: Scalar>(f: &[T]) -> Result<()> {
    if f.is_empty() {
        return Err(Error::invalid("target must have at least one coordinate"));
    }
    if let Some(v) = f.iter().find(|v| !v.is_positive()) {
        return Err(Error::invalid(format!(
            "target values must be strictly positive, found {v}"
        )));
    }
    Ok(())
}

/// Least `i ≥ 0` with `⌊2ⁱf_j⌋ − 1 > 0` in every coordinate.
pub fn first_stage<T: Scalar>(f: &[T]) -> Result<u32> {
    check_positive(f)?;
    let m = min_of(f).expect("non-empty");
    let two = T::from_int(2);
    let mut i = 0u32;
    let mut scaled = m;
    while scaled < two {
        scaled = scaled * two.clone();
        i += 1;
    }
    Ok(i)
}

/// `g_i = (⌊2ⁱf⌋ − 1)/2ⁱ`, defined from `i₀(f)` on.
pub fn dyadic_below<T: Scalar>(f: &[T], i: u32) -> Result<Vec<T>> {
    let first = first_stage(f)?;
    if i < first {
        return Err(Error::StageBelowStart { stage: i, first });
    }
    let p = T::pow2(i);
    Ok(f.iter()
        .map(|v| ((v.clone() * p.clone()).floor() - T::one()) / p.clone())
        .collect())
}

/// One stage of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage<T> {
    pub index: u32,
    pub g: Vec<T>,
    pub h: Vec<T>,
    /// `‖f − g‖∞`.
    pub gap: T,
}

/// Which certified property failed, if any.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub strictly_positive: bool,
    pub strictly_below_target: bool,
    pub strictly_increasing: bool,
    pub gap_bound: bool,
    pub summable: bool,
}

impl Certificate {
    pub fn all(&self) -> bool {
        self.strictly_positive
            && self.strictly_below_target
            && self.strictly_increasing
            && self.gap_bound
            && self.summable
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport<T> {
    pub target: Vec<T>,
    pub first_stage: u32,
    pub stages: Vec<Stage<T>>,
    /// `Σ ‖h_i‖∞` over the reported stages.
    pub h_norm_sum: T,
    /// `‖f‖∞ + 2^{1−i₀}`.
    pub h_norm_bound: T,
    pub certificate: Certificate,
}

impl<T: Scalar> DecompositionReport<T> {
    /// Columns: `stage, trace, f, g, h, f-g`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("stage\ttrace\tf\tg\th\tf_minus_g\n");
        for s in &self.stages {
            for (j, f) in self.target.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    s.index,
                    j + 1,
                    f,
                    s.g[j],
                    s.h[j],
                    f.clone() - s.g[j].clone()
                );
            }
        }
        out
    }
}

/// Dyadic stages `g_{i₀}, …, g_{i_max}` with increments `h_i` and a
/// certificate of the bounds stated in the module docs.
pub fn summable_decomposition<T: Scalar>(f: &[T], i_max: u32) -> Result<DecompositionReport<T>> {
    let first = first_stage(f)?;
    if i_max < first {
        return Err(Error::StageBelowStart {
            stage: i_max,
            first,
        });
    }
    let mut stages: Vec<Stage<T>> = Vec::new();
    let mut cert = Certificate {
        strictly_positive: true,
        strictly_below_target: true,
        strictly_increasing: true,
        gap_bound: true,
        summable: true,
    };
    let mut h_sum = T::zero();
    for i in first..=i_max {
        let g = dyadic_below(f, i)?;
        let h = match stages.last() {
            Some(prev) => sub_vec(&g, &prev.g),
            None => g.clone(),
        };
        let diff = sub_vec(f, &g);
        let gap = sup_norm(&diff);
        cert.strictly_positive &= g.iter().all(|v| v.is_positive());
        cert.strictly_below_target &= diff.iter().all(|v| v.is_positive());
        if !stages.is_empty() {
            cert.strictly_increasing &= h.iter().all(|v| v.is_positive());
        }
        cert.gap_bound &= gap <= T::one() / T::pow2(i) * T::from_int(2);
        h_sum = h_sum + sup_norm(&h);
        stages.push(Stage {
            index: i,
            g,
            h,
            gap,
        });
    }
    let bound = max_of(f).expect("non-empty") + T::from_int(2) / T::pow2(first);
    cert.summable = h_sum <= bound;
    Ok(DecompositionReport {
        target: f.to_vec(),
        first_stage: first,
        stages,
        h_norm_sum: h_sum,
        h_norm_bound: bound,
        certificate: cert,
    })
}

/// A divisibility chain `m_1 | m_2 | … | m_L` of denominators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseSubgroupSpec {
    denominators: Vec<i64>,
}

impl DenseSubgroupSpec {
    /// Largest accepted denominator.
    pub const MAX_DENOMINATOR: i64 = 1 << 48;

    pub fn new(denominators: Vec<i64>) -> Result<Self> {
        Self::with_max(denominators, Self::MAX_DENOMINATOR)
    }

    pub fn with_max(denominators: Vec<i64>, max: i64) -> Result<Self> {
        if denominators.is_empty() {
            return Err(Error::invalid("denominator chain is empty"));
        }
        if denominators[0] < 1 {
            return Err(Error::invalid("denominators must be positive"));
        }
        for w in denominators.windows(2) {
            if w[1] <= w[0] || w[1] % w[0] != 0 {
                return Err(Error::invalid(format!(
                    "{} does not properly divide {}",
                    w[0], w[1]
                )));
            }
        }
        let last = *denominators.last().expect("non-empty");
        if last > max {
            return Err(Error::invalid(format!(
                "denominator {last} exceeds the maximum {max}"
            )));
        }
        Ok(DenseSubgroupSpec { denominators })
    }

    /// `m_i = 2ⁱ` for `i = 1..=len`.
    pub fn dyadic(len: u32) -> Result<Self> {
        Self::new((1..=len).map(|i| 1i64 << i).collect())
    }

    pub fn denominators(&self) -> &[i64] {
        &self.denominators
    }

    pub fn finest(&self) -> i64 {
        *self.denominators.last().expect("non-empty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionStage<T> {
    pub denominator: i64,
    pub numerators: IntVec,
    pub values: Vec<T>,
    pub gap: T,
}

/// `p_i = (⌈m_i f⌉ − 1)/m_i`, kept non-decreasing by a coordinatewise
/// maximum with the previous stage. Every stage satisfies `p_i < f` and
/// `f − p_i ≤ 1/m_i`.
pub fn projection_sup_realization<T: Scalar>(
    f: &[T],
    spec: &DenseSubgroupSpec,
    i_max: usize,
) -> Result<Vec<ProjectionStage<T>>> {
    check_positive(f)?;
    if i_max == 0 || i_max > spec.denominators.len() {
        return Err(Error::pre(format!(
            "need 1 <= stages <= {}, got {i_max}",
            spec.denominators.len()
        )));
    }
    let mut out: Vec<ProjectionStage<T>> = Vec::with_capacity(i_max);
    for &m in &spec.denominators[..i_max] {
        let mt = T::from_int(m);
        let mut values: Vec<T> = f
            .iter()
            .map(|v| ((v.clone() * mt.clone()).ceil() - T::one()) / mt.clone())
            .collect();
        if let Some(prev) = out.last() {
            for (v, p) in values.iter_mut().zip(&prev.values) {
                if *v < *p {
                    *v = p.clone();
                }
            }
        }
        let numerators = values
            .iter()
            .map(|v| {
                (v.clone() * mt.clone())
                    .to_i64_exact()
                    .ok_or_else(|| Error::invalid("stage value leaves the subgroup (1/m)Z"))
            })
            .collect::<Result<_>>()?;
        let gap = sup_norm(&sub_vec(f, &values));
        out.push(ProjectionStage {
            denominator: m,
            numerators,
            values,
            gap,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConditionD {
    Plausible,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionDReport<T> {
    pub verdict: ConditionD,
    /// Largest distance from a point of `[0, 1]` to the tested value set,
    /// over all states.
    pub covering_radius: T,
    /// State attaining the radius.
    pub worst_state: usize,
}

/// Bounded-scale heuristic for density of the state values.
///
/// For each extreme state `s`, the tested value set is
/// `{k/m_L : 0 ≤ k ≤ m_L} ∪ ({s(v) : v ∈ K₀⁺, ‖v‖∞ ≤ bound} ∩ [0, 1])`.
/// Its widest gap is found cell by cell without materializing the grid.
/// The verdict is `Refuted` when some point of `[0, 1]` is farther than `ε`
/// from that set.
pub fn condition_d_check<T: Scalar>(
    k0: &K0Model<T>,
    spec: &DenseSubgroupSpec,
    epsilon: &T,
    bound: i64,
) -> Result<ConditionDReport<T>> {
    if !epsilon.is_positive() {
        return Err(Error::pre("epsilon must be strictly positive"));
    }
    let m = spec.finest();
    let mt = T::from_int(m);
    let elements: Vec<IntVec> = crate::ordmon::box_elements(k0.rank(), bound)
        .into_iter()
        .filter(|v| k0.in_cone(v).unwrap_or(false))
        .collect();
    let mut worst = (T::zero(), 0usize);
    for i in 0..k0.trace_count() {
        // Values strictly inside each grid cell (k/m, (k+1)/m).
        let mut cells: BTreeMap<i64, Vec<T>> = BTreeMap::new();
        for v in &elements {
            let s = k0.pairing(v)?[i].clone();
            if s.is_negative() || s > T::one() {
                continue;
            }
            let scaled = s.clone() * mt.clone();
            if scaled.to_i64_exact().is_some() {
                continue;
            }
            let k = scaled.floor().to_i64_exact().expect("cell index fits");
            cells.entry(k).or_default().push(s);
        }
        let gap = if (cells.len() as i64) < m {
            T::one() / mt.clone()
        } else {
            let mut widest = T::zero();
            for (k, mut inside) in cells {
                inside.push(T::from_int(k) / mt.clone());
                inside.push(T::from_int(k + 1) / mt.clone());
                inside.sort();
                for w in inside.windows(2) {
                    let d = w[1].clone() - w[0].clone();
                    if d > widest {
                        widest = d;
                    }
                }
            }
            widest
        };
        let radius = gap / T::from_int(2);
        if radius > worst.0 {
            worst = (radius, i);
        }
    }
    let verdict = if worst.0 > *epsilon {
        ConditionD::Refuted
    } else {
        ConditionD::Plausible
    };
    Ok(ConditionDReport {
        verdict,
        covering_radius: worst.0,
        worst_state: worst.1,
    })
}

#[cfg(test)]
mod tests;
