//! A propositional ATMS as a reliability theory: assumptions become atomic
//! premises, justifications become implications, and every justification is
//! more reliable than every assumption.
//!
//! Input format, one statement per line, `#` starts a comment:
//!
//! ```text
//! assume a1.
//! node n.
//! just a1, m -> n.
//! deny a1, a2 -> n.
//! ```
//!
//! `deny body -> n` is a constraint: the body implies `!n`.

use std::collections::BTreeSet;

use crate::arguments::{minimal_supports, minimal_unsat_subsets, undermining_args_linear};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::search::minimal_only;
use crate::{Limits, PremiseSet, PreparedTheory, ReliabilityTheory, TotalOrder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Justification {
    pub body: Vec<String>,
    pub head: String,
    /// A constraint whose head is the negated node.
    pub deny: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AtmsProblem {
    pub assumptions: BTreeSet<String>,
    pub nodes: BTreeSet<String>,
    pub justifications: Vec<Justification>,
}

/// A set of assumption names.
pub type Environment = BTreeSet<String>;

pub fn parse_atms(text: &str) -> Result<AtmsProblem> {
    let mut p = AtmsProblem::default();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |message: String| Error::File {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let body = line
            .strip_suffix('.')
            .ok_or_else(|| err("statement must end with '.'".into()))?
            .trim();
        let (keyword, rest) = body
            .split_once(char::is_whitespace)
            .ok_or_else(|| err(format!("incomplete statement: {line}")))?;
        let rest = rest.trim();
        match keyword {
            "assume" => {
                p.assumptions.insert(identifier(rest).map_err(err)?);
            }
            "node" => {
                p.nodes.insert(identifier(rest).map_err(err)?);
            }
            "just" | "deny" => {
                let (lhs, head) = rest
                    .split_once("->")
                    .ok_or_else(|| err("expected '->'".into()))?;
                let body = lhs
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(identifier)
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(err)?;
                p.justifications.push(Justification {
                    body,
                    head: identifier(head.trim()).map_err(err)?,
                    deny: keyword == "deny",
                });
            }
            other => return Err(err(format!("unknown keyword: {other}"))),
        }
    }
    p.validate()?;
    Ok(p)
}

fn identifier(s: &str) -> std::result::Result<String, String> {
    let mut chars = s.chars();
    let ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(s.to_string())
    } else {
        Err(format!("invalid identifier: {s:?}"))
    }
}

impl AtmsProblem {
    /// Heads are nodes, bodies use declared names, and no name is both an
    /// assumption and a node.
    pub fn validate(&self) -> Result<()> {
        if let Some(x) = self.assumptions.intersection(&self.nodes).next() {
            return Err(Error::Atms(format!("{x} is both an assumption and a node")));
        }
        for j in &self.justifications {
            if !self.nodes.contains(&j.head) {
                return Err(Error::Atms(format!("head {} is not a node", j.head)));
            }
            for b in &j.body {
                if !self.assumptions.contains(b) && !self.nodes.contains(b) {
                    return Err(Error::Atms(format!("undeclared name {b}")));
                }
            }
        }
        Ok(())
    }
}

fn assumption_id(name: &str) -> String {
    format!("assume_{name}")
}

/// Premises `assume_<a>` for assumptions and `just_<k>` for justifications,
/// with every `assume_*` below every `just_*`.
pub fn atms_encode(p: &AtmsProblem) -> Result<ReliabilityTheory> {
    p.validate()?;
    let mut t = ReliabilityTheory::new();
    for a in &p.assumptions {
        t = t.with_premise(assumption_id(a), Formula::atom(a.as_str()));
    }
    for (k, j) in p.justifications.iter().enumerate() {
        let head = if j.deny {
            Formula::not(Formula::atom(j.head.as_str()))
        } else {
            Formula::atom(j.head.as_str())
        };
        let formula = match Formula::conjunction(j.body.iter().map(|b| Formula::atom(b.as_str()))) {
            Some(body) => Formula::implies(body, head),
            None => head,
        };
        let id = format!("just_{k}");
        for a in &p.assumptions {
            t.order.insert((assumption_id(a), id.clone()));
        }
        t = t.with_premise(id, formula);
    }
    Ok(t)
}

fn prepared(p: &AtmsProblem, limits: Limits) -> Result<PreparedTheory> {
    atms_encode(p)?.prepare(limits)
}

fn assumption_set(t: &PreparedTheory) -> PremiseSet {
    (0..t.len())
        .filter(|&i| t.id(i).starts_with("assume_"))
        .collect()
}

fn environments(t: &PreparedTheory, sets: Vec<PremiseSet>) -> Vec<Environment> {
    let mut out: Vec<Environment> = minimal_only(sets)
        .iter()
        .map(|s| {
            s.iter()
                .map(|i| t.id(i).trim_start_matches("assume_").to_string())
                .collect()
        })
        .collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Minimal assumption sets that together with the justifications are
/// inconsistent, read off the undermining arguments of `order`.
pub fn nogoods_under(t: &PreparedTheory, order: &TotalOrder) -> Result<Vec<Environment>> {
    let assumptions = assumption_set(t);
    let projected = undermining_args_linear(t, order)?
        .into_iter()
        .map(|a| a.support.with(a.victim).intersection(&assumptions))
        .collect();
    Ok(environments(t, projected))
}

/// Minimal consistent assumption sets deriving `node`, from the minimal
/// supporting arguments for it, filtered by the nogoods of `order`.
pub fn labels_under(
    t: &PreparedTheory,
    order: &TotalOrder,
    node: &str,
) -> Result<Vec<Environment>> {
    let assumptions = assumption_set(t);
    let args = undermining_args_linear(t, order)?;
    let nogoods: Vec<PremiseSet> = args
        .iter()
        .map(|a| a.support.with(a.victim).intersection(&assumptions))
        .collect();
    let projected = minimal_supports(t, &t.all(), &Formula::atom(node))
        .into_iter()
        .map(|s| s.intersection(&assumptions))
        .filter(|e| !nogoods.iter().any(|g| g.is_subset(e)))
        .collect();
    Ok(environments(t, projected))
}

/// The label of `node`.
pub fn atms_labels(p: &AtmsProblem, node: &str, limits: Limits) -> Result<Vec<Environment>> {
    if !p.nodes.contains(node) {
        return Err(Error::Atms(format!("unknown node {node}")));
    }
    let t = prepared(p, limits)?;
    labels_under(&t, &t.first_linear_extension(), node)
}

/// The minimal nogood environments.
pub fn atms_nogoods(p: &AtmsProblem, limits: Limits) -> Result<Vec<Environment>> {
    let t = prepared(p, limits)?;
    nogoods_under(&t, &t.first_linear_extension())
}

/// Maximal consistent assumption sets.
pub fn maximal_environments(p: &AtmsProblem, limits: Limits) -> Result<Vec<Environment>> {
    let t = prepared(p, limits)?;
    let assumptions = assumption_set(&t);
    let muses = minimal_unsat_subsets(&t)?;
    let nogoods: Vec<PremiseSet> = muses.iter().map(|m| m.intersection(&assumptions)).collect();
    let mut out: Vec<Environment> = crate::search::minimal_hitting_sets(&nogoods)
        .into_iter()
        .map(|h| {
            assumptions
                .difference(&h)
                .iter()
                .map(|i| t.id(i).trim_start_matches("assume_").to_string())
                .collect()
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(names: &[&str]) -> Environment {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_the_format() {
        let p = parse_atms(
            "# sample\nassume a1.\nassume a2.\nnode m.\nnode n.\njust a1 -> m.\njust m, a2 -> n.\ndeny a1, a2 -> n.\n",
        )
        .unwrap();
        assert_eq!(p.assumptions, env(&["a1", "a2"]));
        assert_eq!(p.justifications.len(), 3);
        assert!(p.justifications[2].deny);
        assert!(matches!(
            parse_atms("assume a1"),
            Err(Error::File { line: 1, .. })
        ));
        assert!(matches!(
            parse_atms("node n.\njust x -> n."),
            Err(Error::Atms(_))
        ));
        assert!(matches!(
            parse_atms("assume a.\nnode a."),
            Err(Error::Atms(_))
        ));
    }

    #[test]
    fn direct_encoding() {
        let p = parse_atms("assume a1.\nnode n.\njust a1 -> n.").unwrap();
        let t = atms_encode(&p).unwrap();
        assert_eq!(t.premises.len(), 2);
        assert_eq!(t.order.len(), 1);
        let pt = t.prepare(Limits::default()).unwrap();
        let r = crate::extensions::all_extensions(&pt).unwrap();
        assert_eq!(r.members, vec![pt.all()]);
    }

    #[test]
    fn label_examples() {
        let two =
            parse_atms("assume a1.\nassume a2.\nnode n.\njust a1 -> n.\njust a2 -> n.").unwrap();
        assert_eq!(
            atms_labels(&two, "n", Limits::default()).unwrap(),
            [env(&["a1"]), env(&["a2"])]
        );
        let chain =
            parse_atms("assume a1.\nnode m.\nnode n.\njust a1 -> m.\njust m -> n.").unwrap();
        assert_eq!(
            atms_labels(&chain, "n", Limits::default()).unwrap(),
            [env(&["a1"])]
        );
        let idle = parse_atms("assume a1.\nnode n.\nnode k.\njust a1 -> n.").unwrap();
        assert!(atms_labels(&idle, "k", Limits::default())
            .unwrap()
            .is_empty());
        assert!(atms_labels(&idle, "zz", Limits::default()).is_err());
    }

    #[test]
    fn nogood_examples() {
        let consistent = parse_atms("assume a1.\nnode n.\njust a1 -> n.").unwrap();
        assert!(atms_nogoods(&consistent, Limits::default())
            .unwrap()
            .is_empty());

        let clash =
            parse_atms("assume a1.\nassume a2.\nnode n.\njust a1 -> n.\ndeny a2 -> n.").unwrap();
        assert_eq!(
            atms_nogoods(&clash, Limits::default()).unwrap(),
            [env(&["a1", "a2"])]
        );
        assert_eq!(
            maximal_environments(&clash, Limits::default()).unwrap(),
            [env(&["a1"]), env(&["a2"])]
        );

        // {a1, a2, a3} also clashes but is not minimal.
        let superset = parse_atms(
            "assume a1.\nassume a2.\nassume a3.\nnode n.\njust a1 -> n.\ndeny a2 -> n.\ndeny a2, a3 -> n.\njust a3 -> n.",
        )
        .unwrap();
        assert_eq!(
            atms_nogoods(&superset, Limits::default()).unwrap(),
            [env(&["a1", "a2"]), env(&["a2", "a3"])]
        );
        // Labels drop environments containing a nogood.
        let both = parse_atms(
            "assume a1.\nassume a2.\nnode n.\nnode m.\njust a1, a2 -> m.\njust a1 -> n.\ndeny a2 -> n.",
        )
        .unwrap();
        assert!(atms_labels(&both, "m", Limits::default())
            .unwrap()
            .is_empty());
    }
}
