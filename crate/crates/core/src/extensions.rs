//! Most reliable consistent sets, the set R of all of them, and skeptical /
//! credulous consequence.

use std::collections::BTreeSet;

use crate::arguments::minimal_unsat_subsets;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::search;
use crate::{PremiseSet, PreparedTheory, TotalOrder};

/// The members of R, sorted by size then index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSet {
    pub members: Vec<PremiseSet>,
}

impl ExtensionSet {
    fn from_sets(sets: impl IntoIterator<Item = PremiseSet>) -> Self {
        let unique: BTreeSet<PremiseSet> = sets.into_iter().collect();
        let mut members: Vec<PremiseSet> = unique.into_iter().collect();
        search::sort_sets(&mut members);
        ExtensionSet { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &PremiseSet) -> bool {
        self.members.contains(s)
    }
}

/// Greedy accumulation: walk `order` most reliable first and keep each
/// premise that is consistent with those kept so far.
pub fn most_reliable_set(t: &PreparedTheory, order: &TotalOrder) -> PremiseSet {
    let mut d = PremiseSet::new();
    for &i in order.ranking() {
        let next = d.with(i);
        if t.is_consistent(&next) {
            d = next;
        }
    }
    d
}

/// R, by the cheapest available route. Small theories go through the MUS
/// characterization below; larger ones enumerate linear extensions.
pub fn all_extensions(t: &PreparedTheory) -> Result<ExtensionSet> {
    match realizable_extensions(t) {
        Err(Error::MusBudgetExceeded { .. }) => all_extensions_enumerated(t),
        other => other,
    }
}

/// R as `{ most_reliable_set(o) | o a linear extension }`.
pub fn all_extensions_enumerated(t: &PreparedTheory) -> Result<ExtensionSet> {
    let orders = t.linear_extensions()?;
    Ok(ExtensionSet::from_sets(
        orders.iter().map(|o| most_reliable_set(t, o)),
    ))
}

/// R without enumerating linear extensions.
///
/// A maximal consistent Δ is produced by some linear extension iff every
/// excluded premise φ can be given a MUS `M ∋ φ` with `M \ {φ} ⊆ Δ` such that
/// putting φ below all of `M \ {φ}` keeps the order acyclic.
pub fn realizable_extensions(t: &PreparedTheory) -> Result<ExtensionSet> {
    let muses = minimal_unsat_subsets(t)?;
    let all = t.all();
    let candidates: Vec<PremiseSet> = search::minimal_hitting_sets(muses)
        .into_iter()
        .map(|h| all.difference(&h))
        .collect();
    let members = candidates
        .into_iter()
        .filter(|delta| realizable(t, muses, delta));
    Ok(ExtensionSet::from_sets(members))
}

/// Whether the undermining choices for `delta` can be made acyclic.
pub(crate) fn realizable(t: &PreparedTheory, muses: &[PremiseSet], delta: &PremiseSet) -> bool {
    let mut options: Vec<(usize, Vec<PremiseSet>)> = t
        .all()
        .difference(delta)
        .iter()
        .map(|phi| {
            let supports = muses
                .iter()
                .filter(|m| m.contains(phi))
                .map(|m| m.without(phi))
                .filter(|s| s.is_subset(delta))
                .collect();
            (phi, supports)
        })
        .collect();
    if options.iter().any(|(_, s): &(usize, Vec<_>)| s.is_empty()) {
        return false;
    }
    options.sort_by_key(|(_, s)| s.len());
    let above: Vec<PremiseSet> = (0..t.len())
        .map(|x| t.more_reliable_than(x).clone())
        .collect();
    acyclic_choice(&options, above)
}

/// Picks one support per victim so that `victim ≺ every support member` can
/// be added to the order rows in `above` without a cycle.
pub(crate) fn acyclic_choice(options: &[(usize, Vec<PremiseSet>)], above: Vec<PremiseSet>) -> bool {
    let Some(((phi, supports), rest)) = options.split_first() else {
        return true;
    };
    for support in supports {
        if let Some(next) = add_below(&above, *phi, support) {
            if acyclic_choice(rest, next) {
                return true;
            }
        }
    }
    false
}

/// Closed rows after adding `phi ≺ y` for every `y ∈ ys`, or `None` on a
/// cycle.
pub(crate) fn add_below(
    above: &[PremiseSet],
    phi: usize,
    ys: &PremiseSet,
) -> Option<Vec<PremiseSet>> {
    let mut gained = ys.clone();
    for y in ys.iter() {
        if y == phi || above[y].contains(phi) {
            return None;
        }
        gained = gained.union(&above[y]);
    }
    let mut next = above.to_vec();
    for (x, row) in next.iter_mut().enumerate() {
        if x == phi || row.contains(phi) {
            *row = row.union(&gained);
        }
    }
    Some(next)
}

/// True iff every member of R entails `goal`.
pub fn skeptical_entails(t: &PreparedTheory, goal: &Formula) -> Result<bool> {
    let r = all_extensions(t)?;
    Ok(r.members.iter().all(|d| t.entails(d, goal)))
}

/// True iff some member of R entails `goal`.
pub fn credulous_entails(t: &PreparedTheory, goal: &Formula) -> Result<bool> {
    let r = all_extensions(t)?;
    Ok(r.members.iter().any(|d| t.entails(d, goal)))
}
