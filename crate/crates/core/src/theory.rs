//! Reliability theories: identified premises with a strict partial
//! reliability order, validation, and linear extensions.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{Error, Result};
use crate::formula::{evaluate, parse_formula, AtomUniverse, Formula, Interpretation, Oracle};
use crate::{Limits, PremiseSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Premise {
    pub id: String,
    pub formula: Formula,
}

/// A premise list and a generating set of reliability pairs. A pair
/// `(x, y)` reads "x is less reliable than y". The relation is closed
/// transitively when the theory is prepared.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReliabilityTheory {
    pub premises: Vec<Premise>,
    pub order: BTreeSet<(String, String)>,
}

impl ReliabilityTheory {
    pub fn new() -> Self {
        ReliabilityTheory::default()
    }

    pub fn with_premise(mut self, id: impl Into<String>, formula: Formula) -> Self {
        self.premises.push(Premise {
            id: id.into(),
            formula,
        });
        self
    }

    /// Adds a premise given in formula syntax. Panics on a syntax error;
    /// meant for fixtures and tests.
    pub fn with(self, id: &str, formula: &str) -> Self {
        let f = parse_formula(formula).unwrap_or_else(|e| panic!("{formula}: {e}"));
        self.with_premise(id, f)
    }

    /// Records `lower ≺ higher`.
    pub fn with_order(mut self, lower: impl Into<String>, higher: impl Into<String>) -> Self {
        self.order.insert((lower.into(), higher.into()));
        self
    }

    pub fn validate(&self) -> ValidationReport {
        self.validate_with(&Oracle::default())
    }

    pub fn validate_with(&self, oracle: &Oracle) -> ValidationReport {
        let mut report = ValidationReport::default();

        let mut seen = BTreeSet::new();
        for p in &self.premises {
            if !seen.insert(p.id.as_str()) && !report.duplicates.contains(&p.id) {
                report.duplicates.push(p.id.clone());
            }
        }
        let mut dangling = BTreeSet::new();
        for (x, y) in &self.order {
            for id in [x, y] {
                if !seen.contains(id.as_str()) {
                    dangling.insert(id.clone());
                }
            }
        }
        report.dangling = dangling.into_iter().collect();
        report.cycles = find_cycles(&self.order);
        report.unsatisfiable = self
            .premises
            .iter()
            .filter(|p| !oracle.is_consistent([&p.formula]))
            .map(|p| p.id.clone())
            .collect();
        report
    }

    /// Validates, closes the order and indexes the premises.
    pub fn prepare(&self, limits: Limits) -> Result<PreparedTheory> {
        let report = ValidationReport {
            unsatisfiable: Vec::new(),
            ..self.validate_with(&Oracle::new(0).with_backend(crate::formula::Backend::Dpll))
        };
        if !report.is_valid() {
            return Err(Error::InvalidTheory(report));
        }
        PreparedTheory::build(self.premises.clone(), &self.order, limits)
    }
}

/// Smallest transitive superset of `pairs`.
pub fn transitive_closure(pairs: &BTreeSet<(String, String)>) -> BTreeSet<(String, String)> {
    let mut closed = pairs.clone();
    loop {
        let mut added = Vec::new();
        for (a, b) in &closed {
            for (c, d) in closed.range((b.clone(), String::new())..) {
                if c != b {
                    break;
                }
                let pair = (a.clone(), d.clone());
                if !closed.contains(&pair) {
                    added.push(pair);
                }
            }
        }
        if added.is_empty() {
            return closed;
        }
        closed.extend(added);
    }
}

// One witness cycle per strongly connected component of the order graph.
fn find_cycles(order: &BTreeSet<(String, String)>) -> Vec<Vec<String>> {
    let mut graph: DiGraph<&str, ()> = DiGraph::new();
    let mut nodes: HashMap<&str, NodeIndex> = HashMap::new();
    let ids: BTreeSet<&str> = order
        .iter()
        .flat_map(|(x, y)| [x.as_str(), y.as_str()])
        .collect();
    for id in ids {
        nodes.insert(id, graph.add_node(id));
    }
    for (x, y) in order {
        graph.add_edge(nodes[x.as_str()], nodes[y.as_str()], ());
    }

    let mut cycles = Vec::new();
    for scc in tarjan_scc(&graph) {
        let start = *scc.iter().min_by_key(|n| graph[**n]).unwrap();
        if scc.len() == 1 && graph.find_edge(start, start).is_none() {
            continue;
        }
        let members: BTreeSet<NodeIndex> = scc.iter().copied().collect();
        // BFS inside the component from `start` back to itself.
        let mut parent: HashMap<NodeIndex, NodeIndex> = HashMap::new();
        let mut queue = VecDeque::from([start]);
        let mut closing = None;
        'bfs: while let Some(n) = queue.pop_front() {
            let mut next: Vec<NodeIndex> =
                graph.neighbors(n).filter(|m| members.contains(m)).collect();
            next.sort_by_key(|m| graph[*m]);
            for m in next {
                if m == start {
                    closing = Some(n);
                    break 'bfs;
                }
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(m) {
                    e.insert(n);
                    queue.push_back(m);
                }
            }
        }
        let mut path = vec![graph[start].to_string()];
        let mut n = closing.expect("strongly connected");
        let mut back = Vec::new();
        while n != start {
            back.push(graph[n].to_string());
            n = parent[&n];
        }
        back.reverse();
        path.extend(back);
        cycles.push(path);
    }
    cycles.sort();
    cycles
}

/// Structured validation outcome. Each cycle lists its members once, starting
/// from the smallest id. Unsatisfiable premises are warnings: the
/// theory stays valid but those premises can never be believed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub duplicates: Vec<String>,
    pub dangling: Vec<String>,
    pub cycles: Vec<Vec<String>>,
    pub unsatisfiable: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.duplicates.is_empty() && self.dangling.is_empty() && self.cycles.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines = Vec::new();
        for id in &self.duplicates {
            lines.push(format!("duplicate: {id}"));
        }
        for id in &self.dangling {
            lines.push(format!("dangling: {id}"));
        }
        for cycle in &self.cycles {
            lines.push(format!("cycle: {} < {}", cycle.join(" < "), cycle[0]));
        }
        if self.is_valid() {
            lines.push("valid".to_string());
        }
        for id in &self.unsatisfiable {
            lines.push(format!(
                "warning: premise {id} is unsatisfiable and is never believed"
            ));
        }
        f.write_str(&lines.join("\n"))
    }
}

/// A linear extension of the reliability order: premise indices, most
/// reliable first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalOrder {
    ranking: Vec<usize>,
}

impl TotalOrder {
    /// A ranking over premise indices `0..n`, most reliable first. Only
    /// checks that it is a permutation.
    pub fn from_ranking(ranking: Vec<usize>) -> Result<Self> {
        let seen: PremiseSet = ranking.iter().copied().collect();
        if seen.len() != ranking.len() || seen != PremiseSet::full(ranking.len()) {
            return Err(Error::Precondition("ranking must be a permutation of 0..n"));
        }
        Ok(TotalOrder { ranking })
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// Rank of each premise index (0 = most reliable).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.ranking.len()];
        for (rank, &i) in self.ranking.iter().enumerate() {
            pos[i] = rank;
        }
        pos
    }
}

/// A validated theory with its order closed and premises indexed. Every
/// reasoning operation works on this type.
#[derive(Debug)]
pub struct PreparedTheory {
    premises: Vec<Premise>,
    index: HashMap<String, usize>,
    // above[x] = { y | x ≺ y }, below[x] = { y | y ≺ x }
    above: Vec<PremiseSet>,
    below: Vec<PremiseSet>,
    by_id: Vec<usize>,
    limits: Limits,
    universe_atoms: usize,
    maximal_consistent: OnceLock<Option<Vec<PremiseSet>>>,
    pub(crate) muses: OnceLock<Vec<PremiseSet>>,
}

impl PreparedTheory {
    fn build(
        premises: Vec<Premise>,
        order: &BTreeSet<(String, String)>,
        limits: Limits,
    ) -> Result<Self> {
        let n = premises.len();
        let index: HashMap<String, usize> = premises
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.clone(), i))
            .collect();
        let mut above = vec![PremiseSet::new(); n];
        for (x, y) in order {
            above[index[x]].insert(index[y]);
        }
        // Warshall closure on bitset rows.
        for k in 0..n {
            for i in 0..n {
                if above[i].contains(k) {
                    let row = above[k].clone();
                    above[i] = above[i].union(&row);
                }
            }
        }
        let mut below = vec![PremiseSet::new(); n];
        for (x, row) in above.iter().enumerate() {
            if row.contains(x) {
                return Err(Error::Precondition("reliability order is cyclic"));
            }
            for y in row.iter() {
                below[y].insert(x);
            }
        }
        let mut by_id: Vec<usize> = (0..n).collect();
        by_id.sort_by(|a, b| premises[*a].id.cmp(&premises[*b].id));
        let universe_atoms = AtomUniverse::of(premises.iter().map(|p| &p.formula)).len();
        Ok(PreparedTheory {
            premises,
            index,
            above,
            below,
            by_id,
            limits,
            universe_atoms,
            maximal_consistent: OnceLock::new(),
            muses: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.premises.len()
    }

    pub fn is_empty(&self) -> bool {
        self.premises.is_empty()
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn oracle(&self) -> Oracle {
        Oracle::new(self.limits.max_atoms)
    }

    pub fn premises(&self) -> &[Premise] {
        &self.premises
    }

    pub fn id(&self, i: usize) -> &str {
        &self.premises[i].id
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.premises[i].formula
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownPremise(id.to_string()))
    }

    pub fn set_of<'a>(&self, ids: impl IntoIterator<Item = &'a str>) -> Result<PremiseSet> {
        ids.into_iter().map(|id| self.index_of(id)).collect()
    }

    pub fn all(&self) -> PremiseSet {
        PremiseSet::full(self.len())
    }

    /// Ids of `set`, sorted.
    pub fn ids(&self, set: &PremiseSet) -> Vec<&str> {
        let mut ids: Vec<&str> = set.iter().map(|i| self.id(i)).collect();
        ids.sort_unstable();
        ids
    }

    /// `{a, b, c}` with sorted ids.
    pub fn format_set(&self, set: &PremiseSet) -> String {
        format!("{{{}}}", self.ids(set).join(", "))
    }

    pub fn formulas<'a>(&'a self, set: &'a PremiseSet) -> impl Iterator<Item = &'a Formula> + 'a {
        set.iter().map(move |i| self.formula(i))
    }

    /// `x ≺ y` in the closed order.
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    /// `{ y | x ≺ y }`.
    pub fn more_reliable_than(&self, x: usize) -> &PremiseSet {
        &self.above[x]
    }

    pub fn less_reliable_than(&self, x: usize) -> &PremiseSet {
        &self.below[x]
    }

    /// The closed order as id pairs.
    pub fn closed_order(&self) -> BTreeSet<(String, String)> {
        let mut out = BTreeSet::new();
        for (x, row) in self.above.iter().enumerate() {
            for y in row.iter() {
                out.insert((self.id(x).to_string(), self.id(y).to_string()));
            }
        }
        out
    }

    /// A raw theory with the closed order, suitable for printing.
    pub fn to_theory(&self) -> ReliabilityTheory {
        ReliabilityTheory {
            premises: self.premises.clone(),
            order: self.closed_order(),
        }
    }

    /// Checks that `ids` is a linear extension and converts it.
    pub fn total_order<'a>(&self, ids: impl IntoIterator<Item = &'a str>) -> Result<TotalOrder> {
        let ranking: Vec<usize> = ids
            .into_iter()
            .map(|id| self.index_of(id))
            .collect::<Result<_>>()?;
        let seen: PremiseSet = ranking.iter().copied().collect();
        if ranking.len() != self.len() || seen.len() != self.len() {
            return Err(Error::Precondition(
                "total order must list every premise exactly once",
            ));
        }
        let order = TotalOrder { ranking };
        let pos = order.positions();
        for x in 0..self.len() {
            if self.above[x].iter().any(|y| pos[y] > pos[x]) {
                return Err(Error::Precondition(
                    "total order contradicts the reliability order",
                ));
            }
        }
        Ok(order)
    }

    /// Every linear extension, most reliable first, in lexicographic order of
    /// id sequences.
    pub fn linear_extensions(&self) -> Result<Vec<TotalOrder>> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.len());
        let mut placed = PremiseSet::new();
        self.extend_orders(&mut prefix, &mut placed, &mut out)?;
        Ok(out)
    }

    /// The lexicographically first linear extension.
    pub fn first_linear_extension(&self) -> TotalOrder {
        let mut ranking = Vec::with_capacity(self.len());
        let mut placed = PremiseSet::new();
        while ranking.len() < self.len() {
            let x = self
                .by_id
                .iter()
                .copied()
                .find(|&x| !placed.contains(x) && self.above[x].is_subset(&placed))
                .expect("acyclic order");
            ranking.push(x);
            placed.insert(x);
        }
        TotalOrder { ranking }
    }

    fn extend_orders(
        &self,
        prefix: &mut Vec<usize>,
        placed: &mut PremiseSet,
        out: &mut Vec<TotalOrder>,
    ) -> Result<()> {
        if prefix.len() == self.len() {
            if out.len() == self.limits.max_extensions {
                return Err(Error::ExtensionCapExceeded {
                    cap: self.limits.max_extensions,
                });
            }
            out.push(TotalOrder {
                ranking: prefix.clone(),
            });
            return Ok(());
        }
        for &x in &self.by_id {
            // x is available once everything more reliable has been placed.
            if placed.contains(x) || !self.above[x].is_subset(placed) {
                continue;
            }
            prefix.push(x);
            placed.insert(x);
            self.extend_orders(prefix, placed, out)?;
            placed.remove(x);
            prefix.pop();
        }
        Ok(())
    }

    /// The least reliable member of `ids` under `order`.
    pub fn min_under(&self, order: &TotalOrder, ids: &PremiseSet) -> Result<usize> {
        if ids.is_empty() {
            return Err(Error::Precondition("min_under of an empty set"));
        }
        order
            .ranking
            .iter()
            .rev()
            .copied()
            .find(|&i| ids.contains(i))
            .ok_or(Error::Precondition("set member missing from the order"))
    }

    /// `{ x ∈ ids | no y ∈ ids with y ≺ x }`: the least reliable members.
    pub fn minimal_elements(&self, ids: &PremiseSet) -> Result<PremiseSet> {
        if ids.is_empty() {
            return Err(Error::Precondition("minimal_elements of an empty set"));
        }
        Ok(ids
            .iter()
            .filter(|&x| self.below[x].is_disjoint(ids))
            .collect())
    }

    /// Premises satisfied by `m`.
    pub fn prem_of(&self, m: &Interpretation) -> PremiseSet {
        (0..self.len())
            .filter(|&i| evaluate(self.formula(i), m))
            .collect()
    }

    pub(crate) fn tables_apply(&self) -> bool {
        self.oracle().uses_tables(self.universe_atoms)
    }

    /// The maximal sets `Prem(M)` over all interpretations of the theory's
    /// atoms, when the atom count allows truth tables.
    pub(crate) fn maximal_consistent_patterns(&self) -> Option<&[PremiseSet]> {
        self.maximal_consistent
            .get_or_init(|| {
                if !self.tables_apply() {
                    return None;
                }
                let universe = AtomUniverse::of(self.premises.iter().map(|p| &p.formula));
                let tables: Vec<_> = self
                    .premises
                    .iter()
                    .map(|p| universe.table(&p.formula))
                    .collect();
                Some(crate::search::maximal_patterns(
                    &tables,
                    universe.interpretation_count(),
                ))
            })
            .as_deref()
    }

    /// `Prem(M)` for some model `M` of `set`, or `None` if `set` is
    /// inconsistent.
    pub fn witness(&self, set: &PremiseSet) -> Option<PremiseSet> {
        match self.maximal_consistent_patterns() {
            Some(patterns) => patterns.iter().find(|p| set.is_subset(p)).cloned(),
            None => crate::formula::dpll_solve(self.formulas(set)).map(|m| self.prem_of(&m)),
        }
    }

    pub fn is_consistent(&self, set: &PremiseSet) -> bool {
        match self.maximal_consistent_patterns() {
            Some(patterns) => patterns.iter().any(|p| set.is_subset(p)),
            None => self.witness(set).is_some(),
        }
    }

    /// Classical consequence from the formulas of `set`.
    pub fn entails(&self, set: &PremiseSet, goal: &Formula) -> bool {
        self.oracle().entails(self.formulas(set), goal)
    }
}
