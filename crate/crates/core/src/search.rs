//! Minimal-subset search shared by MUS enumeration, minimal supports and the
//! ATMS queries.
//!
//! A subset of the universe is "good" when a witness pattern (a set of
//! premises made true by one interpretation) contains it. The minimal bad
//! subsets are the minimal hitting sets of the complements of the maximal
//! good sets, and the loop below discovers maximal good sets until every
//! candidate hitting set is bad.

use std::collections::HashSet;

use crate::formula::TruthTable;
use crate::PremiseSet;

/// Maximal sets `{ j | tables[j] holds at i }` over interpretations
/// `0..count`.
pub(crate) fn maximal_patterns(tables: &[TruthTable], count: usize) -> Vec<PremiseSet> {
    if tables.len() <= 64 {
        let mut seen: HashSet<u64> = HashSet::new();
        for i in 0..count {
            let mut mask = 0u64;
            for (j, t) in tables.iter().enumerate() {
                mask |= (t.get(i) as u64) << j;
            }
            seen.insert(mask);
        }
        return maximal_only(seen.into_iter().map(PremiseSet::from_mask).collect());
    }
    let mut seen: HashSet<PremiseSet> = HashSet::new();
    for i in 0..count {
        let pattern: PremiseSet = tables
            .iter()
            .enumerate()
            .filter(|(_, t)| t.get(i))
            .map(|(j, _)| j)
            .collect();
        seen.insert(pattern);
    }
    maximal_only(seen.into_iter().collect())
}

/// Drops every set that is a proper subset of another.
pub(crate) fn maximal_only(mut sets: Vec<PremiseSet>) -> Vec<PremiseSet> {
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut kept: Vec<PremiseSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Drops every set that is a proper superset of another, sorted by size then
/// members.
pub(crate) fn minimal_only(mut sets: Vec<PremiseSet>) -> Vec<PremiseSet> {
    sets.sort_by_key(|s| s.len());
    let mut kept: Vec<PremiseSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    sort_sets(&mut kept);
    kept
}

pub(crate) fn sort_sets(sets: &mut [PremiseSet]) {
    sets.sort_by_cached_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
}

/// All minimal hitting sets of `family` (Berge's incremental construction).
/// An empty member makes the result empty; an empty family gives `{∅}`.
pub(crate) fn minimal_hitting_sets(family: &[PremiseSet]) -> Vec<PremiseSet> {
    let mut family: Vec<&PremiseSet> = family.iter().collect();
    family.sort_by_key(|s| s.len());
    let mut current = vec![PremiseSet::new()];
    for set in family {
        if set.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for h in &current {
            if !h.is_disjoint(set) {
                if seen.insert(h.clone()) {
                    next.push(h.clone());
                }
                continue;
            }
            for e in set.iter() {
                let grown = h.with(e);
                if seen.insert(grown.clone()) {
                    next.push(grown);
                }
            }
        }
        current = minimal_only(next);
    }
    sort_sets(&mut current);
    current
}

/// Minimal subsets of `universe` that no witness pattern contains.
///
/// `witness(s)` returns a pattern containing `s` when `s` is good and `None`
/// otherwise. `seed` may hold known good sets; when it already contains every
/// maximal good set no further witness calls are needed to grow them.
pub(crate) fn minimal_bad_subsets(
    universe: &PremiseSet,
    seed: Vec<PremiseSet>,
    mut witness: impl FnMut(&PremiseSet) -> Option<PremiseSet>,
) -> Vec<PremiseSet> {
    let mut good: Vec<PremiseSet> =
        maximal_only(seed.iter().map(|s| s.intersection(universe)).collect());
    let mut bad: HashSet<PremiseSet> = HashSet::new();
    loop {
        let complements: Vec<PremiseSet> = good.iter().map(|g| universe.difference(g)).collect();
        let candidates = minimal_hitting_sets(&complements);
        let mut grew = false;
        for h in &candidates {
            if bad.contains(h) {
                continue;
            }
            let Some(pattern) = witness(h) else {
                bad.insert(h.clone());
                continue;
            };
            let grown = grow(universe, pattern.intersection(universe), &mut witness);
            good.push(grown);
            grew = true;
            break;
        }
        if !grew {
            return minimal_only(candidates);
        }
        good = maximal_only(good);
    }
}

fn grow(
    universe: &PremiseSet,
    mut current: PremiseSet,
    witness: &mut impl FnMut(&PremiseSet) -> Option<PremiseSet>,
) -> PremiseSet {
    for e in universe.iter() {
        if current.contains(e) {
            continue;
        }
        if let Some(p) = witness(&current.with(e)) {
            current = p.intersection(universe);
        }
    }
    current
}
