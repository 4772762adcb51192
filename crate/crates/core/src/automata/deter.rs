//! Splitting relational edges into ordinary ones, and the normal form
//! obtained from a cofibrant replacement.

use std::sync::Arc;

use serde::Serialize;

use super::{cofibrant_replacement, RelAutomaton};
use crate::error::Result;
use crate::toolkit::{quotient, Carrier};

/// One edge `(u,e,v)` for every source `u` and target `v` of each edge `e`,
/// ordered by `e`, then `u`, then `v`. States are unchanged.
pub fn deter(a: &RelAutomaton) -> RelAutomaton {
    let mut out = RelAutomaton::new(a.alphabet().iter().copied());
    for s in a.states() {
        out.add_state(s.name.clone(), s.initial, s.accepting)
            .expect("names are unique in the input");
    }
    for e in a.edges() {
        for u in &e.sources {
            for v in &e.targets {
                let name = format!(
                    "({},{},{})",
                    a.states()[*u].name,
                    e.name,
                    a.states()[*v].name
                );
                out.add_edge(name, e.label, [*u], [*v])
                    .expect("triples are distinct");
            }
        }
    }
    out
}

/// `deter` of the replacement with all initial states merged into one.
/// Without initial states the input is returned as is.
pub fn normalize(a: &Arc<RelAutomaton>) -> Result<RelAutomaton> {
    let initial: Vec<usize> = a.initial_states().collect();
    if initial.is_empty() {
        log::warn!("normalize: no initial state, returning the input unchanged");
        return Ok((**a).clone());
    }
    let r = cofibrant_replacement(a)?;
    let inits: Vec<usize> = r.object.initial_states().collect();
    let pairs: Vec<(usize, usize)> = inits.iter().skip(1).map(|s| (inits[0], *s)).collect();
    let merged = quotient(&r.object, &pairs)?;
    Ok(deter(merged.target()))
}

/// The first violated shape condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum ConditionWitness {
    /// An initial state is the target of an edge.
    InitialHasInEdge { state: String, edge: String },
    /// A non-initial accepting state is the source of an edge.
    AcceptingHasOutEdge { state: String, edge: String },
}

/// Initial states have no incoming edges, and accepting non-initial states
/// have no outgoing edges.
pub fn check_conditions(a: &RelAutomaton) -> std::result::Result<(), ConditionWitness> {
    for v in a.initial_states() {
        if let Some(e) = a.in_edges(v).next() {
            return Err(ConditionWitness::InitialHasInEdge {
                state: a.states()[v].name.clone(),
                edge: a.cell_name(a.edge_cell(e)),
            });
        }
    }
    for v in a.accepting_states().filter(|v| !a.states()[*v].initial) {
        if let Some(e) = a.out_edges(v).next() {
            return Err(ConditionWitness::AcceptingHasOutEdge {
                state: a.states()[v].name.clone(),
                edge: a.cell_name(a.edge_cell(e)),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deter_splits_a_relational_edge() {
        let mut a = RelAutomaton::new(['a']);
        for s in ["p", "q", "r"] {
            a.add_state(s, s == "p", s == "r").unwrap();
        }
        a.add_edge("e", 'a', [0, 1], [1, 2]).unwrap();
        let d = deter(&a);
        let names: Vec<&str> = d.edges().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["(p,e,q)", "(p,e,r)", "(q,e,q)", "(q,e,r)"]);
        assert!(d.is_non_relational());
        assert_eq!(d.language_upto(4), a.language_upto(4));
    }

    #[test]
    fn conditions_catch_both_shapes() {
        let mut a = RelAutomaton::new(['a']);
        a.add_state("i", true, false).unwrap();
        a.add_state("f", false, true).unwrap();
        a.add_edge("x", 'a', [0], [1]).unwrap();
        assert_eq!(check_conditions(&a), Ok(()));
        a.add_edge("y", 'a', [1], [0]).unwrap();
        assert!(matches!(
            check_conditions(&a),
            Err(ConditionWitness::InitialHasInEdge { .. })
        ));
    }

    #[test]
    fn normalize_has_one_initial_state() {
        let mut a = RelAutomaton::new(['a', 'b']);
        a.add_state("u", true, false).unwrap();
        a.add_state("v", true, true).unwrap();
        a.add_edge("x", 'a', [0, 1], [1]).unwrap();
        a.add_edge("y", 'b', [1], [0]).unwrap();
        let a = Arc::new(a);
        let n = normalize(&a).unwrap();
        assert_eq!(n.initial_states().count(), 1);
        assert!(n.is_non_relational());
        assert_eq!(check_conditions(&n), Ok(()));
        assert_eq!(n.language_upto(5), a.language_upto(5));
    }

    #[test]
    fn normalize_without_initial_state_is_identity() {
        let mut a = RelAutomaton::new(['a']);
        a.add_state("v", false, true).unwrap();
        a.add_edge("x", 'a', [0], [0]).unwrap();
        let a = Arc::new(a);
        assert_eq!(normalize(&a).unwrap(), *a);
    }
}
