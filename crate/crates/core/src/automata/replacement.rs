//! Cofibrant replacement `β: Ã → A`.
//!
//! `Ã` has one initial copy `init(v)` per initial state, one accepting copy
//! `acc(e,v)` per edge `e` and accepting target `v`, and one interior copy
//! `int(v)` per state with both in- and out-edges, carrying its whole star.
//! Edges are kept one for one. The certificate lists the generator
//! pushouts that build `Ã` from the empty automaton.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{check_conditions, generators_for, AutMorphism, GeneratorSpec, RelAutomaton};
use crate::error::{malformed, Error, Result};
use crate::toolkit::{pushout, unique_rlp, Carrier, RlpReport};

/// One pushout along a generator. `attach` sends each domain cell of the
/// generator to a cell of the automaton built so far; `rename` names the
/// new cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertStep {
    pub generator: GeneratorSpec,
    pub attach: Vec<(String, String)>,
    pub rename: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CofibCertificate {
    pub alphabet: Vec<char>,
    pub steps: Vec<CertStep>,
}

pub struct Replacement {
    pub object: Arc<RelAutomaton>,
    pub beta: AutMorphism,
    pub certificate: CofibCertificate,
}

fn star_order(a: &RelAutomaton, edges: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = edges.collect();
    v.sort_by_key(|e| (a.edges()[*e].label, *e));
    v
}

/// Whether `v` gets an interior copy.
fn interior(a: &RelAutomaton, v: usize) -> bool {
    a.in_edges(v).next().is_some() && a.out_edges(v).next().is_some()
}

pub fn cofibrant_replacement(a: &Arc<RelAutomaton>) -> Result<Replacement> {
    let mut r = RelAutomaton::new(a.alphabet().iter().copied());
    let mut beta = Vec::new();
    let mut steps = Vec::new();
    let state = |v: usize| a.states()[v].name.as_str();

    let mut init = vec![None; a.state_count()];
    for v in a.initial_states() {
        let name = format!("init({})", state(v));
        let accepting = a.states()[v].accepting;
        init[v] = Some(r.add_state(name.clone(), true, accepting)?);
        beta.push(v);
        steps.push(CertStep {
            generator: if accepting {
                GeneratorSpec::InitialAccepting
            } else {
                GeneratorSpec::Initial
            },
            attach: Vec::new(),
            rename: vec![("q".into(), name)],
        });
    }
    let mut acc = Vec::new();
    for (e, edge) in a.edges().iter().enumerate() {
        for v in edge.targets.iter().filter(|v| a.states()[**v].accepting) {
            let name = format!("acc({},{})", edge.name, state(*v));
            acc.push((e, r.add_state(name.clone(), false, true)?));
            beta.push(*v);
        }
    }
    let mut int = vec![None; a.state_count()];
    for v in (0..a.state_count()).filter(|v| interior(a, *v)) {
        int[v] = Some(r.add_state(format!("int({})", state(v)), false, false)?);
        beta.push(v);
    }
    for (e, edge) in a.edges().iter().enumerate() {
        let sources = edge
            .sources
            .iter()
            .flat_map(|u| [init[*u], int[*u]])
            .flatten();
        let targets = acc
            .iter()
            .filter(|(e2, _)| *e2 == e)
            .map(|(_, s)| *s)
            .chain(edge.targets.iter().filter_map(|v| int[*v]));
        r.add_edge(
            edge.name.clone(),
            edge.label,
            sources.collect::<Vec<_>>(),
            targets.collect::<Vec<_>>(),
        )?;
        beta.push(a.edge_cell(e));
        steps.push(CertStep {
            generator: GeneratorSpec::Edge { label: edge.label },
            attach: Vec::new(),
            rename: vec![("e".into(), edge.name.clone())],
        });
    }
    for (e, edge) in a.edges().iter().enumerate() {
        for u in edge.sources.iter().filter(|u| init[**u].is_some()) {
            steps.push(CertStep {
                generator: GeneratorSpec::Source { label: edge.label },
                attach: vec![
                    ("s".into(), format!("init({})", state(*u))),
                    ("e".into(), a.edges()[e].name.clone()),
                ],
                rename: Vec::new(),
            });
        }
    }
    for (e, edge) in a.edges().iter().enumerate() {
        for v in edge.targets.iter().filter(|v| a.states()[**v].accepting) {
            steps.push(CertStep {
                generator: GeneratorSpec::Accepting { label: edge.label },
                attach: vec![("e".into(), a.edges()[e].name.clone())],
                rename: vec![("t".into(), format!("acc({},{})", edge.name, state(*v)))],
            });
        }
    }
    for v in (0..a.state_count()).filter(|v| interior(a, *v)) {
        let ins = star_order(a, a.in_edges(v));
        let outs = star_order(a, a.out_edges(v));
        let mut attach: Vec<(String, String)> = ins
            .iter()
            .enumerate()
            .map(|(k, e)| (format!("in{k}"), a.edges()[*e].name.clone()))
            .collect();
        attach.extend(
            outs.iter()
                .enumerate()
                .map(|(k, e)| (format!("out{k}"), a.edges()[*e].name.clone())),
        );
        let labels = |es: &[usize]| es.iter().map(|e| a.edges()[*e].label).collect();
        steps.push(CertStep {
            generator: GeneratorSpec::Star {
                ins: labels(&ins),
                outs: labels(&outs),
            },
            attach,
            rename: vec![("c".into(), format!("int({})", state(v)))],
        });
    }

    let object = Arc::new(r);
    let beta = AutMorphism::new(object.clone(), a.clone(), beta)?;
    Ok(Replacement {
        object,
        beta,
        certificate: CofibCertificate {
            alphabet: a.alphabet().iter().copied().collect(),
            steps,
        },
    })
}

/// The cell of `x` called `name`, of the same kind (state or edge) as
/// `cell` of `kind_of`.
fn typed_cell(x: &RelAutomaton, kind_of: &RelAutomaton, cell: usize, name: &str) -> Result<usize> {
    let found = if cell < kind_of.state_count() {
        x.states().iter().position(|s| s.name == name)
    } else {
        x.edges()
            .iter()
            .position(|e| e.name == name)
            .map(|e| x.edge_cell(e))
    };
    found.ok_or_else(|| Error::UnknownCell(name.to_string()))
}

fn named_cell(x: &RelAutomaton, name: &str) -> Result<usize> {
    (0..x.cell_count())
        .find(|c| x.cell_name(*c) == name)
        .ok_or_else(|| Error::UnknownCell(name.to_string()))
}

/// Rebuilds an automaton by performing the certified pushouts in order.
pub fn replay(cert: &CofibCertificate) -> Result<RelAutomaton> {
    let alphabet: BTreeSet<char> = cert.alphabet.iter().copied().collect();
    let mut current = Arc::new(RelAutomaton::new(alphabet.iter().copied()));
    for step in &cert.steps {
        let generator = step.generator.build(&alphabet);
        let (d, c) = (generator.arrow.source(), generator.arrow.target());
        let mut attach = vec![usize::MAX; d.cell_count()];
        for (from, to) in &step.attach {
            let cell = named_cell(d, from)?;
            attach[cell] = typed_cell(&current, d, cell, to)?;
        }
        if attach.contains(&usize::MAX) {
            return Err(malformed(
                "certificate",
                format!("{} is not fully attached", step.generator),
            ));
        }
        let attach = AutMorphism::new(d.clone(), current.clone(), attach)?;
        let po = pushout(&attach, &generator.arrow)?;
        let mut next = (*po.object).clone();
        for (from, to) in &step.rename {
            let cell = po.right.apply(named_cell(c, from)?);
            next.rename_cell(cell, to)?;
        }
        current = Arc::new(next);
    }
    Ok(Arc::try_unwrap(current).unwrap_or_else(|a| (*a).clone()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplacementReport {
    pub states: usize,
    pub expected_states: usize,
    pub edges: usize,
    pub input_edges: usize,
    pub conditions: bool,
    pub trivial_fibration: RlpReport,
    pub language_len: usize,
    pub languages_agree: bool,
    pub certificate_replays: bool,
}

impl ReplacementReport {
    pub fn holds(&self) -> bool {
        self.states == self.expected_states
            && self.edges == self.input_edges
            && self.conditions
            && self.trivial_fibration.holds
            && self.languages_agree
            && self.certificate_replays
    }
}

/// `|I| + Σ_e |tgt(e) ∩ T| + #{v : v has in- and out-edges}`
pub fn expected_state_count(a: &RelAutomaton) -> usize {
    a.initial_states().count()
        + a.edges()
            .iter()
            .map(|e| {
                e.targets
                    .iter()
                    .filter(|v| a.states()[**v].accepting)
                    .count()
            })
            .sum::<usize>()
        + (0..a.state_count()).filter(|v| interior(a, *v)).count()
}

/// Checks every stated property of a replacement of `a`, comparing
/// languages up to `language_len`.
pub fn verify_replacement(
    a: &Arc<RelAutomaton>,
    r: &Replacement,
    language_len: usize,
) -> Result<ReplacementReport> {
    let gens = generators_for(&r.beta)?;
    let replayed = replay(&r.certificate)?;
    Ok(ReplacementReport {
        states: r.object.state_count(),
        expected_states: expected_state_count(a),
        edges: r.object.edge_count(),
        input_edges: a.edge_count(),
        conditions: check_conditions(&r.object).is_ok(),
        trivial_fibration: unique_rlp(&r.beta, &gens),
        language_len,
        languages_agree: r.object.language_upto(language_len) == a.language_upto(language_len),
        certificate_replays: replayed.to_json_string() == r.object.to_json_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_automaton() -> Arc<RelAutomaton> {
        let mut a = RelAutomaton::new(['a']);
        a.add_state("v", true, true).unwrap();
        a.add_edge("l", 'a', [0], [0]).unwrap();
        Arc::new(a)
    }

    #[test]
    fn loop_replacement_unrolls_the_loop() {
        let a = loop_automaton();
        let r = cofibrant_replacement(&a).unwrap();
        let names: Vec<&str> = r.object.states().iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["init(v)", "acc(l,v)", "int(v)"]);
        let l = &r.object.edges()[0];
        assert_eq!(l.sources, [0, 2].into());
        assert_eq!(l.targets, [1, 2].into());
        let report = verify_replacement(&a, &r, 5).unwrap();
        assert!(report.holds(), "{report:?}");
    }

    #[test]
    fn replay_reproduces_the_object() {
        let a = loop_automaton();
        let r = cofibrant_replacement(&a).unwrap();
        assert_eq!(replay(&r.certificate).unwrap(), *r.object);
    }

    #[test]
    fn replay_rejects_a_partial_attachment() {
        let cert = CofibCertificate {
            alphabet: vec!['a'],
            steps: vec![CertStep {
                generator: GeneratorSpec::Accepting { label: 'a' },
                attach: Vec::new(),
                rename: Vec::new(),
            }],
        };
        assert!(replay(&cert).is_err());
    }
}
