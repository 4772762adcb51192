//! Seeded random relational automata.

use rand::Rng;

use super::RelAutomaton;

#[derive(Clone, Debug)]
pub struct RandomShape {
    pub max_states: usize,
    pub max_edges: usize,
    pub alphabet: Vec<char>,
    /// Chance that a given state is a source (or target) of a given edge.
    pub incidence: f64,
    pub marker: f64,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            max_states: 5,
            max_edges: 8,
            alphabet: vec!['a', 'b'],
            incidence: 0.35,
            marker: 0.35,
        }
    }
}

pub fn random_automaton<R: Rng>(rng: &mut R, shape: &RandomShape) -> RelAutomaton {
    let mut a = RelAutomaton::new(shape.alphabet.iter().copied());
    let states = rng.random_range(0..=shape.max_states);
    for k in 0..states {
        let initial = rng.random_bool(shape.marker);
        let accepting = rng.random_bool(shape.marker);
        a.add_state(format!("q{k}"), initial, accepting)
            .expect("fresh");
    }
    let edges = rng.random_range(0..=shape.max_edges);
    for k in 0..edges {
        let label = shape.alphabet[rng.random_range(0..shape.alphabet.len())];
        let sources: Vec<usize> = (0..states)
            .filter(|_| rng.random_bool(shape.incidence))
            .collect();
        let targets: Vec<usize> = (0..states)
            .filter(|_| rng.random_bool(shape.incidence))
            .collect();
        a.add_edge(format!("e{k}"), label, sources, targets)
            .expect("fresh");
    }
    a
}
