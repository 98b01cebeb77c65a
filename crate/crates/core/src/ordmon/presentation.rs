//! Finitely presented commutative monoids and their enveloping groups.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::smith::smith_form;
use super::Membership;
use crate::error::{Error, Result};
use crate::linalg::{IntVec, Matrix};

/// Decides `lhs ≤ rhs` for monoid elements given by generator coefficients.
pub type OrderOracle = Arc<dyn Fn(&[u64], &[u64]) -> bool + Send + Sync>;

/// Element of a computed Grothendieck group: torsion coordinates (reduced
/// modulo the invariant factors) followed by free coordinates.
pub type GroupElem = IntVec;

/// `M = N^m / relations`, optionally with an order oracle.
#[derive(Clone)]
pub struct MonoidPresentation {
    generator_count: usize,
    relations: Vec<(Vec<u64>, Vec<u64>)>,
    oracle: Option<OrderOracle>,
}

impl fmt::Debug for MonoidPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonoidPresentation")
            .field("generator_count", &self.generator_count)
            .field("relations", &self.relations)
            .field("oracle", &self.oracle.as_ref().map(|_| "<fn>"))
            .finish()
    }
}

impl MonoidPresentation {
    pub fn new(generator_count: usize, relations: Vec<(Vec<u64>, Vec<u64>)>) -> Result<Self> {
        if generator_count == 0 {
            return Err(Error::invalid(
                "a presentation needs at least one generator",
            ));
        }
        for (l, r) in &relations {
            if l.len() != generator_count {
                return Err(Error::dim(generator_count, l.len()));
            }
            if r.len() != generator_count {
                return Err(Error::dim(generator_count, r.len()));
            }
        }
        Ok(MonoidPresentation {
            generator_count,
            relations,
            oracle: None,
        })
    }

    pub fn with_oracle(mut self, oracle: OrderOracle) -> Self {
        self.oracle = Some(oracle);
        self
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relations(&self) -> &[(Vec<u64>, Vec<u64>)] {
        &self.relations
    }

    pub fn oracle(&self) -> Option<&OrderOracle> {
        self.oracle.as_ref()
    }

    /// Reflexivity and transitivity of the oracle on a sample. Returns the
    /// offending element tuples.
    pub fn oracle_preorder_violations(&self, sample: &[Vec<u64>]) -> Result<Vec<Vec<Vec<u64>>>> {
        let le = self.oracle.as_ref().ok_or(Error::MissingOracle)?;
        let mut bad = Vec::new();
        for a in sample {
            if !le(a, a) {
                bad.push(vec![a.clone()]);
            }
        }
        for a in sample {
            for b in sample {
                if !le(a, b) {
                    continue;
                }
                for c in sample {
                    if le(b, c) && !le(a, c) {
                        bad.push(vec![a.clone(), b.clone(), c.clone()]);
                    }
                }
            }
        }
        Ok(bad)
    }

    /// `Z^m` modulo the subgroup generated by `lhs − rhs` over all relations.
    pub fn grothendieck_group(&self) -> GrothendieckResult {
        let m = self.generator_count;
        let rows: Vec<IntVec> = self
            .relations
            .iter()
            .map(|(l, r)| {
                l.iter()
                    .zip(r)
                    .map(|(a, b)| *a as i64 - *b as i64)
                    .collect()
            })
            .collect();
        let snf = smith_form(&rows, m);
        let rank = snf.rank();
        let torsion_positions: Vec<usize> = (0..rank).filter(|&i| snf.diagonal[i] > 1).collect();
        let torsion: Vec<i64> = torsion_positions.iter().map(|&i| snf.diagonal[i]).collect();
        let mut g = GrothendieckResult {
            free_rank: m - rank,
            torsion,
            gamma_images: Vec::new(),
            transform: snf.column_transform,
            torsion_positions,
            rank,
        };
        g.gamma_images = (0..m)
            .map(|j| {
                let mut e = vec![0; m];
                e[j] = 1;
                g.class_of(&e)
            })
            .collect();
        g
    }

    /// Every monoid element (as a coefficient vector) with coefficient sum at
    /// most `bound`.
    pub fn elements_up_to(&self, bound: u32) -> Vec<Vec<u64>> {
        let m = self.generator_count;
        let mut out = Vec::new();
        let mut cur = vec![0u64; m];
        fn rec(i: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            for c in 0..=left {
                cur[i] = c;
                rec(i + 1, left - c, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, u64::from(bound), &mut cur, &mut out);
        out
    }

    /// Precomputes every difference `γ(x) − γ(y)` with `y ≤ x` and both
    /// coefficient sums at most `search_bound`.
    pub fn cone_plusplus_index(&self, search_bound: u32) -> Result<ConePlusPlusIndex> {
        let le = self.oracle.as_ref().ok_or(Error::MissingOracle)?;
        let group = self.grothendieck_group();
        let elements = self.elements_up_to(search_bound);
        let images: Vec<GroupElem> = elements
            .iter()
            .map(|x| group.class_of(&x.iter().map(|&c| c as i64).collect::<IntVec>()))
            .collect();
        let mut witnessed = HashSet::new();
        for (x, gx) in elements.iter().zip(&images) {
            for (y, gy) in elements.iter().zip(&images) {
                let d = group.sub(gx, gy);
                if !witnessed.contains(&d) && le(y, x) {
                    witnessed.insert(d);
                }
            }
        }
        Ok(ConePlusPlusIndex { group, witnessed })
    }

    /// Is `d` of the form `γ(x) − γ(y)` with `y ≤ x`, searching coefficient
    /// sums up to `search_bound`? A failed search is `BoundExceeded`, never `No`.
    pub fn cone_plusplus_member(&self, d: &[i64], search_bound: u32) -> Result<Membership> {
        self.cone_plusplus_index(search_bound)?.member(d)
    }

    /// Strictness of the order-difference cone on the given samples.
    pub fn check_strict_cone(
        &self,
        samples: &[GroupElem],
        search_bound: u32,
    ) -> Result<StrictConeReport> {
        self.cone_plusplus_index(search_bound)?
            .check_strict(samples)
    }
}

/// Computed enveloping group `Z^free ⊕ ⊕ Z/t_i` and the Grothendieck map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothendieckResult {
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<i64>,
    pub gamma_images: Vec<GroupElem>,
    transform: Matrix<i64>,
    torsion_positions: Vec<usize>,
    rank: usize,
}

impl GrothendieckResult {
    pub fn dimension(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn zero(&self) -> GroupElem {
        vec![0; self.dimension()]
    }

    fn reduce(&self, mut x: GroupElem) -> GroupElem {
        for (c, t) in x.iter_mut().zip(&self.torsion) {
            *c = c.rem_euclid(*t);
        }
        x
    }

    /// Class of an integer combination of generators.
    pub fn class_of(&self, coeffs: &[i64]) -> GroupElem {
        let m = self.transform.nrows();
        let row: IntVec = (0..m)
            .map(|j| (0..m).map(|i| coeffs[i] * self.transform.get(i, j)).sum())
            .collect();
        let mut out: IntVec = self.torsion_positions.iter().map(|&i| row[i]).collect();
        out.extend_from_slice(&row[self.rank..]);
        self.reduce(out)
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> GroupElem {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &[i64]) -> GroupElem {
        self.reduce(a.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> GroupElem {
        self.reduce(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        a.iter().all(|&c| c == 0)
    }
}

/// Finite index of witnessed order differences.
#[derive(Clone, Debug)]
pub struct ConePlusPlusIndex {
    group: GrothendieckResult,
    witnessed: HashSet<GroupElem>,
}

impl ConePlusPlusIndex {
    pub fn group(&self) -> &GrothendieckResult {
        &self.group
    }

    pub fn witnessed(&self) -> usize {
        self.witnessed.len()
    }

    pub fn member(&self, d: &[i64]) -> Result<Membership> {
        if d.len() != self.group.dimension() {
            return Err(Error::dim(self.group.dimension(), d.len()));
        }
        let d = self.group.reduce(d.to_vec());
        Ok(if self.witnessed.contains(&d) {
            Membership::Yes
        } else {
            Membership::BoundExceeded
        })
    }

    pub fn check_strict(&self, samples: &[GroupElem]) -> Result<StrictConeReport> {
        let mut report = StrictConeReport::default();
        let mut seen: HashSet<GroupElem> = HashSet::new();
        for d in samples {
            let d = self.group.reduce(d.clone());
            if self.group.is_zero(&d) || !seen.insert(d.clone()) {
                report.checked += 1;
                continue;
            }
            let pos = self.member(&d)?;
            let neg = self.member(&self.group.neg(&d))?;
            report.checked += 1;
            match (pos, neg) {
                (Membership::Yes, Membership::Yes) => report.violations.push(d),
                (Membership::Yes, _) | (_, Membership::Yes) => report.one_sided += 1,
                _ => report.inconclusive += 1,
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrictConeReport {
    pub checked: usize,
    /// Nonzero `d` with both `d` and `−d` witnessed in the cone.
    pub violations: Vec<GroupElem>,
    /// Exactly one of `d`, `−d` witnessed.
    pub one_sided: usize,
    /// Neither direction witnessed within the bound.
    pub inconclusive: usize,
}

impl StrictConeReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}
