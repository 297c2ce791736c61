use crate::{Premise, ReliabilityTheory};

/// Layers of premises, most reliable first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModalCategories {
    pub layers: Vec<Vec<Premise>>,
}

/// Every premise of layer `i` is more reliable than every premise of a later
/// layer; premises within a layer are incomparable.
pub fn from_modal_categories(mc: &ModalCategories) -> ReliabilityTheory {
    let mut theory = ReliabilityTheory::new();
    for (i, layer) in mc.layers.iter().enumerate() {
        theory.premises.extend(layer.iter().cloned());
        for lower in mc.layers[i + 1..].iter().flatten() {
            for higher in layer {
                theory.order.insert((lower.id.clone(), higher.id.clone()));
            }
        }
    }
    theory
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::all_extensions;
    use crate::formula::parse_formula;
    use crate::Limits;

    fn premise(id: &str, f: &str) -> Premise {
        Premise {
            id: id.to_string(),
            formula: parse_formula(f).unwrap(),
        }
    }

    fn extensions(mc: &ModalCategories) -> Vec<Vec<String>> {
        let t = from_modal_categories(mc)
            .prepare(Limits::default())
            .unwrap();
        let r = all_extensions(&t).unwrap();
        let mut out: Vec<Vec<String>> = r
            .members
            .iter()
            .map(|s| t.ids(s).into_iter().map(String::from).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn single_layer_has_no_order() {
        let mc = ModalCategories {
            layers: vec![vec![premise("f", "phi")]],
        };
        assert!(from_modal_categories(&mc).order.is_empty());
    }

    #[test]
    fn upper_layer_wins() {
        let mc = ModalCategories {
            layers: vec![
                vec![premise("f", "phi")],
                vec![premise("nf", "!phi"), premise("g", "psi")],
            ],
        };
        let t = from_modal_categories(&mc);
        assert_eq!(t.order.len(), 2);
        assert_eq!(extensions(&mc), [["f", "g"]]);
    }

    #[test]
    fn bizet_and_verdi() {
        let mc = ModalCategories {
            layers: vec![
                vec![premise("h", "compatriots")],
                vec![premise(
                    "b3",
                    "compatriots -> !(bizet_french & verdi_italian)",
                )],
                vec![
                    premise("b1", "bizet_french"),
                    premise("b2", "verdi_italian"),
                ],
            ],
        };
        assert_eq!(extensions(&mc), [["b1", "b3", "h"], ["b2", "b3", "h"]]);
    }
}
