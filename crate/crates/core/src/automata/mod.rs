//! Relational Σ-automata: labelled graphs whose edges carry sets of sources
//! and targets, with initial and accepting states.
//!
//! As a [`Carrier`], an automaton lists its states first and its edges
//! after them; the incidences are `(edge, Source, state)` and
//! `(edge, Target, state)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{malformed, Error, Result};
use crate::toolkit::{Carrier, HomSearch, Morphism};

mod deter;
pub mod fixtures;
mod generators;
pub mod random;
mod replacement;

pub use deter::{check_conditions, deter, normalize, ConditionWitness};
pub use generators::{
    automata_generators, generators_for, i_circledast, i_mn, i_odot, i_otimes, i_s, i_to,
    GeneratorSpec,
};
pub use replacement::{
    cofibrant_replacement, expected_state_count, replay, verify_replacement, CertStep,
    CofibCertificate, Replacement, ReplacementReport,
};

pub type AutMorphism = Morphism<RelAutomaton>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Incidence {
    Source,
    Target,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub name: String,
    pub initial: bool,
    pub accepting: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub label: char,
    pub sources: BTreeSet<usize>,
    pub targets: BTreeSet<usize>,
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct RelAutomaton {
    alphabet: BTreeSet<char>,
    states: Vec<State>,
    edges: Vec<Edge>,
}

impl fmt::Debug for RelAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, s) in self.states.iter().enumerate() {
            let mark = match (s.initial, s.accepting) {
                (true, true) => "⊛",
                (true, false) => "⊙",
                (false, true) => "⊗",
                (false, false) => "∘",
            };
            write!(f, "{}{}{mark}", if k > 0 { " " } else { "" }, s.name)?;
        }
        for e in &self.edges {
            let names = |set: &BTreeSet<usize>| {
                set.iter()
                    .map(|s| self.states[*s].name.as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            write!(
                f,
                "; {}:{{{}}}-{}->{{{}}}",
                e.name,
                names(&e.sources),
                e.label,
                names(&e.targets)
            )?;
        }
        write!(f, "}}")
    }
}

impl RelAutomaton {
    pub fn new(alphabet: impl IntoIterator<Item = char>) -> Self {
        RelAutomaton {
            alphabet: alphabet.into_iter().collect(),
            ..Default::default()
        }
    }

    pub fn add_state(
        &mut self,
        name: impl Into<String>,
        initial: bool,
        accepting: bool,
    ) -> Result<usize> {
        let name = name.into();
        if self.states.iter().any(|s| s.name == name) {
            return Err(Error::DuplicateCell(name));
        }
        self.states.push(State {
            name,
            initial,
            accepting,
        });
        Ok(self.states.len() - 1)
    }

    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        label: char,
        sources: impl IntoIterator<Item = usize>,
        targets: impl IntoIterator<Item = usize>,
    ) -> Result<usize> {
        let name = name.into();
        if self.edges.iter().any(|e| e.name == name) {
            return Err(Error::DuplicateCell(name));
        }
        if !self.alphabet.contains(&label) {
            return Err(malformed(
                "automaton",
                format!("label {label:?} is not in the alphabet"),
            ));
        }
        let sources: BTreeSet<usize> = sources.into_iter().collect();
        let targets: BTreeSet<usize> = targets.into_iter().collect();
        if sources
            .iter()
            .chain(&targets)
            .any(|s| *s >= self.states.len())
        {
            return Err(malformed(
                "automaton",
                format!("edge {name} has an unknown endpoint"),
            ));
        }
        self.edges.push(Edge {
            name,
            label,
            sources,
            targets,
        });
        Ok(self.edges.len() - 1)
    }

    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn state_id(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| Error::UnknownCell(name.to_string()))
    }

    pub fn initial_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states.len()).filter(|s| self.states[*s].initial)
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states.len()).filter(|s| self.states[*s].accepting)
    }

    /// Cell index of edge `e`.
    pub fn edge_cell(&self, e: usize) -> usize {
        self.states.len() + e
    }

    /// Edges with `v` among their targets.
    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |e| self.edges[*e].targets.contains(&v))
    }

    /// Edges with `v` among their sources.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |e| self.edges[*e].sources.contains(&v))
    }

    /// Every edge has exactly one source and one target.
    pub fn is_non_relational(&self) -> bool {
        self.edges
            .iter()
            .all(|e| e.sources.len() == 1 && e.targets.len() == 1)
    }

    pub fn set_initial(&mut self, s: usize, v: bool) {
        self.states[s].initial = v;
    }

    pub fn set_accepting(&mut self, s: usize, v: bool) {
        self.states[s].accepting = v;
    }

    /// Renames a state or edge; names stay unique within each kind.
    pub fn rename_cell(&mut self, cell: usize, name: &str) -> Result<()> {
        let ns = self.states.len();
        let clash = if cell < ns {
            self.states
                .iter()
                .enumerate()
                .any(|(k, s)| k != cell && s.name == name)
        } else {
            self.edges
                .iter()
                .enumerate()
                .any(|(k, e)| ns + k != cell && e.name == name)
        };
        if clash {
            return Err(Error::DuplicateCell(name.to_string()));
        }
        if cell < ns {
            self.states[cell].name = name.to_string();
        } else {
            self.edges[cell - ns].name = name.to_string();
        }
        Ok(())
    }

    /// The sub-automaton on the kept states and edges, with the cell map of
    /// its inclusion. Incidences to dropped states are dropped.
    pub fn restrict(
        &self,
        keep_states: &[bool],
        keep_edges: &[bool],
    ) -> (RelAutomaton, Vec<usize>) {
        let mut out = RelAutomaton::new(self.alphabet.iter().copied());
        let mut index = vec![None; self.states.len()];
        let mut cells = Vec::new();
        for (k, s) in self
            .states
            .iter()
            .enumerate()
            .filter(|(k, _)| keep_states[*k])
        {
            index[k] = Some(out.states.len());
            out.states.push(s.clone());
            cells.push(k);
        }
        for (k, e) in self
            .edges
            .iter()
            .enumerate()
            .filter(|(k, _)| keep_edges[*k])
        {
            let kept = |set: &BTreeSet<usize>| set.iter().filter_map(|s| index[*s]).collect();
            out.edges.push(Edge {
                name: e.name.clone(),
                label: e.label,
                sources: kept(&e.sources),
                targets: kept(&e.targets),
            });
            cells.push(self.states.len() + k);
        }
        (out, cells)
    }

    /// States renamed `q0, q1, …` and edges `e0, e1, …`, in order.
    pub fn renumbered(&self) -> RelAutomaton {
        let mut out = self.clone();
        for (k, s) in out.states.iter_mut().enumerate() {
            s.name = format!("q{k}");
        }
        for (k, e) in out.edges.iter_mut().enumerate() {
            e.name = format!("e{k}");
        }
        out
    }

    /// Words of length at most `max_len` read along some path from an
    /// initial to an accepting state.
    pub fn language_upto(&self, max_len: usize) -> BTreeSet<String> {
        let mut by_label: BTreeMap<char, Vec<usize>> = BTreeMap::new();
        for (k, e) in self.edges.iter().enumerate() {
            by_label.entry(e.label).or_default().push(k);
        }
        let start: BTreeSet<usize> = self.initial_states().collect();
        let mut out = BTreeSet::new();
        let mut word = String::new();
        self.extend_words(&by_label, &start, &mut word, max_len, &mut out);
        out
    }

    fn extend_words(
        &self,
        by_label: &BTreeMap<char, Vec<usize>>,
        current: &BTreeSet<usize>,
        word: &mut String,
        budget: usize,
        out: &mut BTreeSet<String>,
    ) {
        if current.iter().any(|s| self.states[*s].accepting) {
            out.insert(word.clone());
        }
        if budget == 0 {
            return;
        }
        for (label, edges) in by_label {
            let next: BTreeSet<usize> = edges
                .iter()
                .filter(|e| !self.edges[**e].sources.is_disjoint(current))
                .flat_map(|e| self.edges[*e].targets.iter().copied())
                .collect();
            if !next.is_empty() {
                word.push(*label);
                self.extend_words(by_label, &next, word, budget - 1, out);
                word.pop();
            }
        }
    }

    fn fresh_state_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.states.iter().any(|s| s.name == name) {
            name.push('\'');
        }
        name
    }

    fn fresh_edge_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.edges.iter().any(|e| e.name == name) {
            name.push('\'');
        }
        name
    }
}

/// `⊙ -w_1-> ∘ -w_2-> ⋯ -w_k-> ⊗`, or `⊛` for the empty word.
pub fn path_automaton(word: &str, alphabet: &BTreeSet<char>) -> RelAutomaton {
    let letters: Vec<char> = word.chars().collect();
    let mut a = RelAutomaton::new(alphabet.iter().copied().chain(letters.iter().copied()));
    for k in 0..=letters.len() {
        a.add_state(format!("p{k}"), k == 0, k == letters.len())
            .expect("distinct");
    }
    for (k, l) in letters.iter().enumerate() {
        a.add_edge(format!("w{k}"), *l, [k], [k + 1])
            .expect("valid");
    }
    a
}

/// Whether some morphism from the path automaton of `word` reaches `a`.
pub fn accepts_via_paths(a: &RelAutomaton, word: &str) -> bool {
    let path = path_automaton(word, a.alphabet());
    HomSearch::new(&path, a).exists()
}

impl Carrier for RelAutomaton {
    type Rel = Incidence;

    fn cell_count(&self) -> usize {
        self.states.len() + self.edges.len()
    }

    fn cell_name(&self, cell: usize) -> String {
        if cell < self.states.len() {
            self.states[cell].name.clone()
        } else {
            self.edges[cell - self.states.len()].name.clone()
        }
    }

    fn admissible(&self, cell: usize, target: &Self, image: usize) -> bool {
        let (ns, nt) = (self.states.len(), target.states.len());
        match (cell < ns, image < nt) {
            (true, true) => {
                let (a, b) = (&self.states[cell], &target.states[image]);
                (!a.initial || b.initial) && (!a.accepting || b.accepting)
            }
            (false, false) => self.edges[cell - ns].label == target.edges[image - nt].label,
            _ => false,
        }
    }

    fn incidences(&self) -> Vec<(usize, Incidence, usize)> {
        let ns = self.states.len();
        let mut out = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            out.extend(e.sources.iter().map(|s| (ns + k, Incidence::Source, *s)));
            out.extend(e.targets.iter().map(|s| (ns + k, Incidence::Target, *s)));
        }
        out
    }

    fn has_incidence(&self, a: usize, rel: &Incidence, b: usize) -> bool {
        let ns = self.states.len();
        if a < ns || b >= ns {
            return false;
        }
        let e = &self.edges[a - ns];
        match rel {
            Incidence::Source => e.sources.contains(&b),
            Incidence::Target => e.targets.contains(&b),
        }
    }

    fn empty_like(&self) -> Self {
        RelAutomaton::new(self.alphabet.iter().copied())
    }

    fn coproduct(&self, other: &Self) -> (Self, Vec<usize>, Vec<usize>) {
        let mut out = RelAutomaton::new(self.alphabet.union(&other.alphabet).copied());
        let (ns, no) = (self.states.len(), other.states.len());
        out.states = self.states.clone();
        for s in &other.states {
            let name = out.fresh_state_name(&s.name);
            out.states.push(State { name, ..s.clone() });
        }
        out.edges = self.edges.clone();
        for e in &other.edges {
            let name = out.fresh_edge_name(&e.name);
            out.edges.push(Edge {
                name,
                label: e.label,
                sources: e.sources.iter().map(|s| s + ns).collect(),
                targets: e.targets.iter().map(|s| s + ns).collect(),
            });
        }
        let total_states = ns + no;
        let left = (0..ns)
            .chain((0..self.edges.len()).map(|e| total_states + e))
            .collect();
        let right = (0..no)
            .map(|s| ns + s)
            .chain((0..other.edges.len()).map(|e| total_states + self.edges.len() + e))
            .collect();
        (out, left, right)
    }

    fn glue(&self, classes: &[usize], class_count: usize) -> Result<Self> {
        let ns = self.states.len();
        let mut rep: Vec<Option<usize>> = vec![None; class_count];
        for (c, k) in classes.iter().enumerate() {
            match rep[*k] {
                None => rep[*k] = Some(c),
                Some(r) => {
                    let compatible = if r < ns {
                        c < ns
                    } else {
                        c >= ns && self.edges[r - ns].label == self.edges[c - ns].label
                    };
                    if !compatible {
                        return Err(Error::IncompatibleGlue(
                            self.cell_name(r),
                            self.cell_name(c),
                        ));
                    }
                }
            }
        }
        let new_states = rep.iter().filter(|r| r.is_some_and(|r| r < ns)).count();
        if rep[..new_states].iter().any(|r| r.is_none_or(|r| r >= ns)) {
            return Err(Error::Contract(
                "state classes must precede edge classes".into(),
            ));
        }
        let mut out = RelAutomaton::new(self.alphabet.iter().copied());
        for r in rep.iter().take(new_states) {
            let r = r.expect("classes are onto");
            out.states.push(State {
                initial: false,
                accepting: false,
                ..self.states[r].clone()
            });
        }
        for (s, st) in self.states.iter().enumerate() {
            let k = classes[s];
            out.states[k].initial |= st.initial;
            out.states[k].accepting |= st.accepting;
        }
        for r in rep.iter().skip(new_states) {
            let r = r.expect("classes are onto") - ns;
            out.edges.push(Edge {
                sources: BTreeSet::new(),
                targets: BTreeSet::new(),
                ..self.edges[r].clone()
            });
        }
        for (k, e) in self.edges.iter().enumerate() {
            let target = classes[ns + k] - new_states;
            out.edges[target]
                .sources
                .extend(e.sources.iter().map(|s| classes[*s]));
            out.edges[target]
                .targets
                .extend(e.targets.iter().map(|s| classes[*s]));
        }
        Ok(out)
    }

    fn search_key(&self, cell: usize) -> (usize, String) {
        (usize::from(cell >= self.states.len()), self.cell_name(cell))
    }
}

/// Serialized form. Labels are one-character strings; edge names are
/// optional on input and default to `e0, e1, …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutJson {
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    #[serde(default)]
    pub initial: Vec<String>,
    #[serde(default)]
    pub accepting: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub label: String,
    #[serde(default)]
    pub sources: Vec<String>,
    #[serde(default)]
    pub targets: Vec<String>,
}

fn single_char(s: &str) -> Result<char> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(malformed(
            "automaton",
            format!("label {s:?} is not a single character"),
        )),
    }
}

impl AutJson {
    pub fn to_automaton(&self) -> Result<RelAutomaton> {
        let alphabet = self
            .alphabet
            .iter()
            .map(|s| single_char(s))
            .collect::<Result<Vec<_>>>()?;
        let mut a = RelAutomaton::new(alphabet);
        let initial: BTreeSet<&String> = self.initial.iter().collect();
        let accepting: BTreeSet<&String> = self.accepting.iter().collect();
        let mut ids = HashMap::new();
        for s in &self.states {
            let id = a.add_state(s.clone(), initial.contains(s), accepting.contains(s))?;
            ids.insert(s.as_str(), id);
        }
        for s in initial.iter().chain(accepting.iter()) {
            if !ids.contains_key(s.as_str()) {
                return Err(Error::UnknownCell(s.to_string()));
            }
        }
        let lookup = |names: &[String]| {
            names
                .iter()
                .map(|n| {
                    ids.get(n.as_str())
                        .copied()
                        .ok_or_else(|| Error::UnknownCell(n.clone()))
                })
                .collect::<Result<Vec<_>>>()
        };
        for (k, e) in self.edges.iter().enumerate() {
            let name = e.name.clone().unwrap_or_else(|| format!("e{k}"));
            a.add_edge(
                name,
                single_char(&e.label)?,
                lookup(&e.sources)?,
                lookup(&e.targets)?,
            )?;
        }
        Ok(a)
    }
}

impl RelAutomaton {
    pub fn from_json_str(s: &str) -> Result<RelAutomaton> {
        let j: AutJson = serde_json::from_str(s)?;
        j.to_automaton()
    }

    pub fn to_json(&self) -> AutJson {
        let names =
            |set: &BTreeSet<usize>| set.iter().map(|s| self.states[*s].name.clone()).collect();
        AutJson {
            alphabet: self.alphabet.iter().map(|c| c.to_string()).collect(),
            states: self.states.iter().map(|s| s.name.clone()).collect(),
            initial: self
                .initial_states()
                .map(|s| self.states[s].name.clone())
                .collect(),
            accepting: self
                .accepting_states()
                .map(|s| self.states[s].name.clone())
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    name: Some(e.name.clone()),
                    label: e.label.to_string(),
                    sources: names(&e.sources),
                    targets: names(&e.targets),
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("plain data")
    }
}
