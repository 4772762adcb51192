//! The generating cofibrations of relational automata.
//!
//! `i_{m,n}` attaches an unmarked state to `m` bare in-edges and `n` bare
//! out-edges. Edges with equal labels and equal direction are
//! interchangeable, so the lifting search only visits tops that are
//! increasing on those groups. A top that identifies two of them factors
//! through a smaller `i_{m,n}`; an in-edge and an out-edge are never
//! grouped because identifying them creates a loop instead.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AutMorphism, RelAutomaton};
use crate::error::Result;
use crate::toolkit::{Generator, GeneratorSet};

/// Names one generating cofibration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// `∅ → ⊙`
    Initial,
    /// `∅ → ⊛`
    InitialAccepting,
    /// `∅ → (-a->)`
    Edge { label: char },
    /// `⊙ + (-a->) → (⊙ -a->)`
    Source { label: char },
    /// `(-a->) → (-a-> ⊗)`
    Accepting { label: char },
    /// `i_{m,n}`, labels sorted.
    Star { ins: Vec<char>, outs: Vec<char> },
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Initial => write!(f, "i_⊙"),
            GeneratorSpec::InitialAccepting => write!(f, "i_⊛"),
            GeneratorSpec::Edge { label } => write!(f, "i_→({label})"),
            GeneratorSpec::Source { label } => write!(f, "i_s({label})"),
            GeneratorSpec::Accepting { label } => write!(f, "i_⊗({label})"),
            GeneratorSpec::Star { ins, outs } => {
                let s = |v: &[char]| v.iter().collect::<String>();
                write!(
                    f,
                    "i_{{{},{}}}({};{})",
                    ins.len(),
                    outs.len(),
                    s(ins),
                    s(outs)
                )
            }
        }
    }
}

impl GeneratorSpec {
    pub fn labels(&self) -> Vec<char> {
        match self {
            GeneratorSpec::Initial | GeneratorSpec::InitialAccepting => Vec::new(),
            GeneratorSpec::Edge { label }
            | GeneratorSpec::Source { label }
            | GeneratorSpec::Accepting { label } => vec![*label],
            GeneratorSpec::Star { ins, outs } => ins.iter().chain(outs).copied().collect(),
        }
    }

    /// The generator over the given alphabet, which must contain its labels.
    pub fn build(&self, alphabet: &BTreeSet<char>) -> Generator<RelAutomaton> {
        let sigma: BTreeSet<char> = alphabet.iter().copied().chain(self.labels()).collect();
        match self {
            GeneratorSpec::Initial => from_empty(self, &sigma, true, false),
            GeneratorSpec::InitialAccepting => from_empty(self, &sigma, true, true),
            GeneratorSpec::Edge { label } => {
                let mut c = RelAutomaton::new(sigma.iter().copied());
                c.add_edge("e", *label, [], []).expect("valid");
                Generator::new(self.to_string(), AutMorphism::from_empty(Arc::new(c)))
            }
            GeneratorSpec::Source { label } => {
                let mut d = RelAutomaton::new(sigma.iter().copied());
                d.add_state("s", true, false).expect("valid");
                d.add_edge("e", *label, [], []).expect("valid");
                let mut c = RelAutomaton::new(sigma.iter().copied());
                c.add_state("s", true, false).expect("valid");
                c.add_edge("e", *label, [0], []).expect("valid");
                inclusion(self, d, c, vec![0, 1])
            }
            GeneratorSpec::Accepting { label } => {
                let mut d = RelAutomaton::new(sigma.iter().copied());
                d.add_edge("e", *label, [], []).expect("valid");
                let mut c = RelAutomaton::new(sigma.iter().copied());
                c.add_state("t", false, true).expect("valid");
                c.add_edge("e", *label, [], [0]).expect("valid");
                inclusion(self, d, c, vec![1])
            }
            GeneratorSpec::Star { ins, outs } => {
                let mut d = RelAutomaton::new(sigma.iter().copied());
                let mut c = RelAutomaton::new(sigma.iter().copied());
                c.add_state("c", false, false).expect("valid");
                for (k, l) in ins.iter().enumerate() {
                    d.add_edge(format!("in{k}"), *l, [], []).expect("valid");
                    c.add_edge(format!("in{k}"), *l, [], [0]).expect("valid");
                }
                for (k, l) in outs.iter().enumerate() {
                    d.add_edge(format!("out{k}"), *l, [], []).expect("valid");
                    c.add_edge(format!("out{k}"), *l, [0], []).expect("valid");
                }
                let map = (1..=ins.len() + outs.len()).collect();
                let mut groups = label_runs(ins, 0);
                groups.extend(label_runs(outs, ins.len()));
                inclusion(self, d, c, map).with_symmetric_top(groups)
            }
        }
    }
}

/// Maximal runs of equal labels of length ≥ 2, as cell indices.
fn label_runs(labels: &[char], offset: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (k, l) in labels.iter().enumerate() {
        match out.last_mut() {
            Some(run) if labels[run[0] - offset] == *l => run.push(offset + k),
            _ => out.push(vec![offset + k]),
        }
    }
    out.retain(|r| r.len() > 1);
    out
}

fn from_empty(
    spec: &GeneratorSpec,
    sigma: &BTreeSet<char>,
    initial: bool,
    accepting: bool,
) -> Generator<RelAutomaton> {
    let mut c = RelAutomaton::new(sigma.iter().copied());
    c.add_state("q", initial, accepting).expect("valid");
    Generator::new(spec.to_string(), AutMorphism::from_empty(Arc::new(c)))
}

fn inclusion(
    spec: &GeneratorSpec,
    d: RelAutomaton,
    c: RelAutomaton,
    map: Vec<usize>,
) -> Generator<RelAutomaton> {
    let arrow = AutMorphism::new(Arc::new(d), Arc::new(c), map).expect("generators are morphisms");
    Generator::new(spec.to_string(), arrow)
}

pub fn i_odot(alphabet: &BTreeSet<char>) -> Generator<RelAutomaton> {
    GeneratorSpec::Initial.build(alphabet)
}

pub fn i_circledast(alphabet: &BTreeSet<char>) -> Generator<RelAutomaton> {
    GeneratorSpec::InitialAccepting.build(alphabet)
}

pub fn i_to(alphabet: &BTreeSet<char>, label: char) -> Generator<RelAutomaton> {
    GeneratorSpec::Edge { label }.build(alphabet)
}

pub fn i_s(alphabet: &BTreeSet<char>, label: char) -> Generator<RelAutomaton> {
    GeneratorSpec::Source { label }.build(alphabet)
}

pub fn i_otimes(alphabet: &BTreeSet<char>, label: char) -> Generator<RelAutomaton> {
    GeneratorSpec::Accepting { label }.build(alphabet)
}

/// `i_{m,n}` with the given in- and out-labels (sorted internally), `m, n > 0`.
pub fn i_mn(alphabet: &BTreeSet<char>, ins: &[char], outs: &[char]) -> Generator<RelAutomaton> {
    let (mut ins, mut outs) = (ins.to_vec(), outs.to_vec());
    ins.sort_unstable();
    outs.sort_unstable();
    GeneratorSpec::Star { ins, outs }.build(alphabet)
}

/// Sorted multisets over `alphabet` with at most `max` elements.
fn multisets(alphabet: &[char], max: usize) -> Vec<Vec<char>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for m in &frontier {
            let from = m
                .last()
                .map_or(0, |l| alphabet.iter().position(|a| a == l).expect("in Σ"));
            for a in &alphabet[from..] {
                let mut m2: Vec<char> = m.clone();
                m2.push(*a);
                next.push(m2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Sorted sub-multisets of a label multiset given as counts.
fn sub_multisets(counts: &BTreeMap<char, usize>) -> Vec<Vec<char>> {
    let mut out = vec![Vec::new()];
    for (l, c) in counts {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=*c).map(move |k| {
                    let mut m = m.clone();
                    m.extend(std::iter::repeat_n(*l, k));
                    m
                })
            })
            .collect();
    }
    out
}

fn spec_set(
    specs: BTreeSet<GeneratorSpec>,
    alphabet: &BTreeSet<char>,
) -> Result<GeneratorSet<RelAutomaton>> {
    GeneratorSet::new(specs.iter().map(|s| s.build(alphabet)).collect())
}

/// The generators for `Σ` with `i_{m,n}` truncated at `0 < m ≤ max_m`,
/// `0 < n ≤ max_n`.
pub fn automata_generators(
    alphabet: &BTreeSet<char>,
    max_m: usize,
    max_n: usize,
) -> Result<GeneratorSet<RelAutomaton>> {
    let sigma: Vec<char> = alphabet.iter().copied().collect();
    let mut specs: BTreeSet<GeneratorSpec> =
        [GeneratorSpec::Initial, GeneratorSpec::InitialAccepting].into();
    for l in &sigma {
        specs.insert(GeneratorSpec::Edge { label: *l });
        specs.insert(GeneratorSpec::Source { label: *l });
        specs.insert(GeneratorSpec::Accepting { label: *l });
    }
    for ins in multisets(&sigma, max_m)
        .into_iter()
        .filter(|m| !m.is_empty())
    {
        for outs in multisets(&sigma, max_n)
            .into_iter()
            .filter(|m| !m.is_empty())
        {
            specs.insert(GeneratorSpec::Star {
                ins: ins.clone(),
                outs,
            });
        }
    }
    spec_set(specs, alphabet)
}

/// Every generator that admits a commuting square against `p: X → Y`.
///
/// A square against `i_{m,n}` sends its bare edges to edges of `X` that `p`
/// maps into `In(y)` and `Out(y)` for a single state `y` of `Y`, injectively
/// within each label group; so only label multisets realized that way occur.
pub fn generators_for(p: &AutMorphism) -> Result<GeneratorSet<RelAutomaton>> {
    let (x, y) = (p.source(), p.target());
    let alphabet: BTreeSet<char> = x.alphabet().union(y.alphabet()).copied().collect();
    let mut specs: BTreeSet<GeneratorSpec> =
        [GeneratorSpec::Initial, GeneratorSpec::InitialAccepting].into();
    for l in &alphabet {
        specs.insert(GeneratorSpec::Edge { label: *l });
        specs.insert(GeneratorSpec::Source { label: *l });
        specs.insert(GeneratorSpec::Accepting { label: *l });
    }
    let image = |e: usize| p.apply(x.edge_cell(e)) - y.state_count();
    for v in 0..y.state_count() {
        let mut ins: BTreeMap<char, usize> = BTreeMap::new();
        let mut outs: BTreeMap<char, usize> = BTreeMap::new();
        for (e, edge) in x.edges().iter().enumerate() {
            let target = &y.edges()[image(e)];
            if target.targets.contains(&v) {
                *ins.entry(edge.label).or_default() += 1;
            }
            if target.sources.contains(&v) {
                *outs.entry(edge.label).or_default() += 1;
            }
        }
        for i in sub_multisets(&ins).into_iter().filter(|m| !m.is_empty()) {
            for o in sub_multisets(&outs).into_iter().filter(|m| !m.is_empty()) {
                specs.insert(GeneratorSpec::Star {
                    ins: i.clone(),
                    outs: o,
                });
            }
        }
    }
    spec_set(specs, &alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> BTreeSet<char> {
        ['a', 'b'].into()
    }

    #[test]
    fn multisets_are_counted_by_stars_and_bars() {
        // multisets of size ≤ 2 over 2 letters: 1 + 2 + 3
        assert_eq!(multisets(&['a', 'b'], 2).len(), 6);
        assert_eq!(multisets(&['a', 'b', 'c'], 3).len(), 1 + 3 + 6 + 10);
    }

    #[test]
    fn sub_multisets_of_counts() {
        let counts: BTreeMap<char, usize> = [('a', 2), ('b', 1)].into();
        assert_eq!(sub_multisets(&counts).len(), 6);
    }

    #[test]
    fn star_generator_shape() {
        let g = i_mn(&ab(), &['b', 'a', 'a'], &['a']);
        assert_eq!(g.name, "i_{3,1}(aab;a)");
        assert_eq!(g.arrow.source().edge_count(), 4);
        assert_eq!(g.arrow.target().state_count(), 1);
        assert_eq!(g.symmetric_top, vec![vec![0, 1]]);
        assert!(g.arrow.is_injective());
    }

    #[test]
    fn truncated_family_size() {
        let gens = automata_generators(&ab(), 1, 1).unwrap();
        // ⊙, ⊛, three per letter, and 2 × 2 stars with m, n = 1
        assert_eq!(gens.len(), 2 + 6 + 4);
    }

    #[test]
    fn codiagonal_of_source_generator_folds_the_edge() {
        let g = i_s(&ab(), 'a');
        let nabla = g.codiagonal().unwrap();
        assert_eq!(nabla.arrow.source().edge_count(), 1);
        assert_eq!(nabla.arrow.target().edge_count(), 1);
        assert!(nabla.arrow.is_iso());
    }
}
