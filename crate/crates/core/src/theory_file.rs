//! The line-oriented theory file format:
//!
//! ```text
//! # comment
//! premise p1: phi -> psi
//! order p3 < p1
//! ```
//!
//! `order x < y` says `x` is less reliable than `y`.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::formula::parse_formula;
use crate::ReliabilityTheory;

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a theory. Validation of the order is left to the caller.
pub fn parse_theory(text: &str) -> Result<ReliabilityTheory> {
    let mut theory = ReliabilityTheory::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |message: String| Error::File {
            line: line_no,
            message,
        };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("premise ") {
            let (id, formula) = rest
                .split_once(':')
                .ok_or_else(|| err("expected 'premise ID: FORMULA'".into()))?;
            let id = id.trim();
            if !is_identifier(id) {
                return Err(err(format!("invalid premise id {id:?}")));
            }
            let formula = parse_formula(formula).map_err(|e| err(e.to_string()))?;
            theory = theory.with_premise(id, formula);
        } else if let Some(rest) = line.strip_prefix("order ") {
            let (lower, higher) = rest
                .split_once('<')
                .ok_or_else(|| err("expected 'order ID1 < ID2'".into()))?;
            let (lower, higher) = (lower.trim(), higher.trim());
            for id in [lower, higher] {
                if !is_identifier(id) {
                    return Err(err(format!("invalid premise id {id:?}")));
                }
            }
            theory = theory.with_order(lower, higher);
        } else {
            return Err(err(format!("unrecognized line: {line}")));
        }
    }
    Ok(theory)
}

pub fn read_theory(path: impl AsRef<Path>) -> Result<ReliabilityTheory> {
    parse_theory(&fs::read_to_string(path)?)
}

/// Premises in declaration order, then the order pairs sorted.
pub fn print_theory(t: &ReliabilityTheory) -> String {
    let mut out = String::new();
    for p in &t.premises {
        out.push_str(&format!("premise {}: {}\n", p.id, p.formula));
    }
    for (x, y) in &t.order {
        out.push_str(&format!("order {x} < {y}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_example() {
        let t = parse_theory(
            "# Example\npremise p1: phi\n\npremise p2: phi -> psi\n  premise p3: !psi\norder p3 < p1\n",
        )
        .unwrap();
        assert_eq!(t.premises.len(), 3);
        assert!(t.order.contains(&("p3".to_string(), "p1".to_string())));
    }

    #[test]
    fn reports_line_numbers() {
        assert!(matches!(
            parse_theory("premise a: x\npremise b x"),
            Err(Error::File { line: 2, .. })
        ));
        assert!(matches!(
            parse_theory("premise a: x &"),
            Err(Error::File { line: 1, .. })
        ));
        assert!(matches!(
            parse_theory("order a b"),
            Err(Error::File { line: 1, .. })
        ));
        assert!(matches!(
            parse_theory("premise 1a: x"),
            Err(Error::File { line: 1, .. })
        ));
        assert!(matches!(
            parse_theory("bogus"),
            Err(Error::File { line: 1, .. })
        ));
    }

    fn formula_text() -> impl Strategy<Value = String> {
        let leaf = prop::sample::select(vec!["a", "b", "c", "d"]).prop_map(String::from);
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|f| format!("!({f})")),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| format!("({l}) -> ({r})")),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| format!("({l}) & ({r})")),
                (inner.clone(), inner).prop_map(|(l, r)| format!("({l}) | ({r})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_round_trips(
            formulas in proptest::collection::vec(formula_text(), 0..5),
            pairs in proptest::collection::vec((0usize..5, 0usize..5), 0..5),
        ) {
            let mut t = ReliabilityTheory::new();
            for (i, f) in formulas.iter().enumerate() {
                t = t.with(&format!("p{i}"), f);
            }
            for (x, y) in pairs {
                t = t.with_order(format!("p{x}"), format!("p{y}"));
            }
            prop_assert_eq!(parse_theory(&print_theory(&t)).unwrap(), t);
        }
    }
}
