//! Seeded generators and brute-force oracles shared by the integration tests.
//!
//! The oracles only use the public `Formula` tree and the raw premise list:
//! their own evaluator, interpretation enumeration, transitive closure and
//! permutation filter.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use inconlog::{Formula, ReliabilityTheory};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Valuation = BTreeSet<String>;
pub type Indices = BTreeSet<usize>;

pub const ATOMS: [&str; 4] = ["a", "b", "c", "d"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn random_formula(rng: &mut impl Rng, atoms: &[&str], depth: usize) -> Formula {
    let leaf = |rng: &mut dyn rand::RngCore| {
        let a = Formula::atom(*atoms.choose(rng).unwrap());
        if rng.random_bool(0.4) {
            Formula::not(a)
        } else {
            a
        }
    };
    if depth == 0 || rng.random_bool(0.35) {
        return leaf(rng);
    }
    let l = random_formula(rng, atoms, depth - 1);
    match rng.random_range(0..4) {
        0 => Formula::not(l),
        1 => Formula::implies(l, random_formula(rng, atoms, depth - 1)),
        2 => Formula::and(l, random_formula(rng, atoms, depth - 1)),
        _ => Formula::or(l, random_formula(rng, atoms, depth - 1)),
    }
}

/// A random strict partial order: a hidden permutation and each compatible
/// pair with probability `p`.
pub fn random_order(rng: &mut impl Rng, ids: &[String], p: f64) -> BTreeSet<(String, String)> {
    let mut perm: Vec<&String> = ids.iter().collect();
    perm.shuffle(rng);
    let mut order = BTreeSet::new();
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if rng.random_bool(p) {
                order.insert((perm[j].clone(), perm[i].clone()));
            }
        }
    }
    order
}

/// Premises `p0..` over the first `atoms` atoms.
pub fn random_theory(
    rng: &mut impl Rng,
    max_premises: usize,
    max_atoms: usize,
) -> ReliabilityTheory {
    let n = rng.random_range(1..=max_premises);
    let k = rng.random_range(1..=max_atoms);
    let atoms = &ATOMS[..k];
    let mut t = ReliabilityTheory::new();
    for i in 0..n {
        t = t.with_premise(format!("p{i}"), random_formula(rng, atoms, 2));
    }
    let ids: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let p = rng.random_range(0.0..0.6);
    t.order = random_order(rng, &ids, p);
    t
}

pub fn eval(f: &Formula, m: &Valuation) -> bool {
    match f {
        Formula::Atom(a) => m.contains(a),
        Formula::Not(g) => !eval(g, m),
        Formula::Implies(l, r) => !eval(l, m) || eval(r, m),
    }
}

pub fn atoms_of<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<String> {
    fn walk(f: &Formula, out: &mut BTreeSet<String>) {
        match f {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(g) => walk(g, out),
            Formula::Implies(l, r) => {
                walk(l, out);
                walk(r, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    for f in fs {
        walk(f, &mut out);
    }
    out
}

pub fn valuations(atoms: &BTreeSet<String>) -> Vec<Valuation> {
    let atoms: Vec<&String> = atoms.iter().collect();
    (0..1usize << atoms.len())
        .map(|mask| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, a)| (*a).clone())
                .collect()
        })
        .collect()
}

pub fn satisfiable(fs: &[&Formula]) -> bool {
    valuations(&atoms_of(fs.iter().copied()))
        .iter()
        .any(|m| fs.iter().all(|f| eval(f, m)))
}

pub fn entails(fs: &[&Formula], goal: &Formula) -> bool {
    let atoms = atoms_of(fs.iter().copied().chain([goal]));
    valuations(&atoms)
        .iter()
        .all(|m| !fs.iter().all(|f| eval(f, m)) || eval(goal, m))
}

pub fn equivalent(a: &Formula, b: &Formula) -> bool {
    entails(&[a], b) && entails(&[b], a)
}

pub fn formulas_of<'a>(t: &'a ReliabilityTheory, set: &Indices) -> Vec<&'a Formula> {
    set.iter().map(|&i| &t.premises[i].formula).collect()
}

/// `less[x][y]` iff `x ≺ y` in the transitive closure, by premise index.
pub fn closure(t: &ReliabilityTheory) -> Vec<Vec<bool>> {
    let n = t.premises.len();
    let index = |id: &str| t.premises.iter().position(|p| p.id == id).unwrap();
    let mut less = vec![vec![false; n]; n];
    for (x, y) in &t.order {
        less[index(x)][index(y)] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if less[i][k] && less[k][j] {
                    less[i][j] = true;
                }
            }
        }
    }
    less
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Rankings, most reliable first, that respect the order.
pub fn linear_extensions(t: &ReliabilityTheory) -> Vec<Vec<usize>> {
    let less = closure(t);
    permutations(t.premises.len())
        .into_iter()
        .filter(|perm| {
            let mut pos = vec![0; perm.len()];
            for (i, &x) in perm.iter().enumerate() {
                pos[x] = i;
            }
            (0..perm.len()).all(|x| (0..perm.len()).all(|y| !less[x][y] || pos[y] < pos[x]))
        })
        .collect()
}

/// Most-reliable-first greedy consistent set for one ranking.
pub fn greedy(t: &ReliabilityTheory, ranking: &[usize]) -> Indices {
    let mut kept = Indices::new();
    for &x in ranking {
        let mut next = kept.clone();
        next.insert(x);
        if satisfiable(&formulas_of(t, &next)) {
            kept = next;
        }
    }
    kept
}

pub fn brute_r(t: &ReliabilityTheory) -> BTreeSet<Indices> {
    linear_extensions(t).iter().map(|r| greedy(t, r)).collect()
}

pub fn subsets(n: usize) -> impl Iterator<Item = Indices> {
    (0..1usize << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

pub fn brute_muses(t: &ReliabilityTheory) -> BTreeSet<Indices> {
    let bad: Vec<Indices> = subsets(t.premises.len())
        .filter(|s| !satisfiable(&formulas_of(t, s)))
        .collect();
    bad.iter()
        .filter(|s| !bad.iter().any(|b| b != *s && b.is_subset(s)))
        .cloned()
        .collect()
}

pub fn prem(t: &ReliabilityTheory, m: &Valuation) -> Indices {
    (0..t.premises.len())
        .filter(|&i| eval(&t.premises[i].formula, m))
        .collect()
}

/// `m ⊑ n` from its definition.
pub fn below(less: &[Vec<bool>], pm: &Indices, pn: &Indices) -> bool {
    pm != pn
        && pm
            .difference(pn)
            .all(|&phi| pn.difference(pm).any(|&psi| less[phi][psi]))
}

/// The ⊑-maximal valuations over the premise atoms plus `extra`.
pub fn brute_preferred_models(
    t: &ReliabilityTheory,
    extra: &BTreeSet<String>,
) -> BTreeSet<Valuation> {
    let less = closure(t);
    let mut atoms = atoms_of(t.premises.iter().map(|p| &p.formula));
    atoms.extend(extra.iter().cloned());
    let all = valuations(&atoms);
    let pats: Vec<Indices> = all.iter().map(|m| prem(t, m)).collect();
    all.iter()
        .zip(&pats)
        .filter(|(_, pm)| !pats.iter().any(|pn| below(&less, pm, pn)))
        .map(|(m, _)| m.clone())
        .collect()
}

/// Models over the premise atoms of some member of `r`.
pub fn union_of_models(t: &ReliabilityTheory, r: &BTreeSet<Indices>) -> BTreeSet<Valuation> {
    let atoms = atoms_of(t.premises.iter().map(|p| &p.formula));
    valuations(&atoms)
        .into_iter()
        .filter(|m| {
            r.iter()
                .any(|d| d.iter().all(|&i| eval(&t.premises[i].formula, m)))
        })
        .collect()
}

/// Indices of a library premise set.
pub fn indices(set: &inconlog::PremiseSet) -> Indices {
    set.iter().collect()
}

pub fn id_sets(t: &ReliabilityTheory, sets: &BTreeSet<Indices>) -> Vec<Vec<String>> {
    sets.iter()
        .map(|s| s.iter().map(|&i| t.premises[i].id.clone()).collect())
        .collect()
}
