use super::{Membership, OrderedGroup, OrderedMonoid};

/// Outcome of a bounded-scale property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    HoldsOnSample,
    Counterexample(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::HoldsOnSample)
    }

    pub fn counterexample(&self) -> Option<&W> {
        match self {
            Verdict::Counterexample(w) => Some(w),
            Verdict::HoldsOnSample => None,
        }
    }
}

/// `(n+1)x ≤ ny` but not `x ≤ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostWitness<E> {
    pub x: E,
    pub y: E,
    pub n: u32,
}

/// `nx ∈ G⁺∖{0}` but `x ∉ G⁺∖{0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakWitness<E> {
    pub x: E,
    pub n: u32,
}

/// `nx ≤ y` for every `n ≤ n_max` although `x ≰ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchimedeanWitness<E> {
    pub x: E,
    pub y: E,
}

/// Searches `x, y` in `elements` and `1 ≤ n ≤ n_max` for a failure of
/// almost unperforation.
pub fn is_almost_unperforated<M: OrderedMonoid>(
    monoid: &M,
    elements: &[M::Elem],
    n_max: u32,
) -> Verdict<AlmostWitness<M::Elem>> {
    for x in elements {
        for y in elements {
            if monoid.leq(x, y) {
                continue;
            }
            for n in 1..=n_max {
                let lhs = monoid.times(n + 1, x);
                let rhs = monoid.times(n, y);
                if monoid.leq(&lhs, &rhs) {
                    return Verdict::Counterexample(AlmostWitness {
                        x: x.clone(),
                        y: y.clone(),
                        n,
                    });
                }
            }
        }
    }
    Verdict::HoldsOnSample
}

/// Searches `x` in `elements` and `2 ≤ n ≤ n_max` for a failure of weak
/// unperforation. Inconclusive memberships are skipped.
pub fn is_weakly_unperforated<G: OrderedGroup>(
    group: &G,
    elements: &[G::Elem],
    n_max: u32,
) -> Verdict<WeakWitness<G::Elem>> {
    for x in elements {
        if group.is_zero(x) {
            continue;
        }
        // x ∈ G⁺∖{0} already; nothing to refute
        match group.is_positive(x) {
            Membership::Yes | Membership::BoundExceeded => continue,
            Membership::No => {}
        }
        for n in 2..=n_max {
            let nx = group.times(n, x);
            if !group.is_zero(&nx) && group.is_positive(&nx) == Membership::Yes {
                return Verdict::Counterexample(WeakWitness { x: x.clone(), n });
            }
        }
    }
    Verdict::HoldsOnSample
}

/// Searches pairs `x, y` in `elements` with `x ≰ 0` and `nx ≤ y` for every
/// `1 ≤ n ≤ n_max`. Such a pair is evidence of a non-Archimedean order at
/// the tested scale; it is only meaningful when `n_max` exceeds the dynamic
/// range of the sample.
pub fn archimedean_witness<G: OrderedGroup>(
    group: &G,
    elements: &[G::Elem],
    n_max: u32,
) -> Option<ArchimedeanWitness<G::Elem>> {
    let zero = group.zero();
    for x in elements {
        if group.leq(x, &zero) != Membership::No {
            continue;
        }
        let multiples: Vec<G::Elem> = (1..=n_max).map(|n| group.times(n, x)).collect();
        for y in elements {
            if multiples
                .iter()
                .all(|nx| group.leq(nx, y) == Membership::Yes)
            {
                return Some(ArchimedeanWitness {
                    x: x.clone(),
                    y: y.clone(),
                });
            }
        }
    }
    None
}
