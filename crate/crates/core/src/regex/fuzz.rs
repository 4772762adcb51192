use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{compile, regex_lang_upto, Regex};
use crate::error::Result;

/// A random expression of depth at most `depth` over `alphabet`.
pub fn random_regex<R: Rng>(rng: &mut R, depth: usize, alphabet: &[char]) -> Regex {
    if depth == 0 || rng.random_bool(0.2) {
        return match rng.random_range(0..10) {
            0 => Regex::Empty,
            1 => Regex::Epsilon,
            _ => Regex::Literal(alphabet[rng.random_range(0..alphabet.len())]),
        };
    }
    match rng.random_range(0..3) {
        0 => Regex::union(
            random_regex(rng, depth - 1, alphabet),
            random_regex(rng, depth - 1, alphabet),
        ),
        1 => Regex::concat(
            random_regex(rng, depth - 1, alphabet),
            random_regex(rng, depth - 1, alphabet),
        ),
        _ => Regex::star(random_regex(rng, depth - 1, alphabet)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub regex: String,
    /// First word in exactly one of the two truncations.
    pub word: String,
    pub compiled: BTreeSet<String>,
    pub oracle: BTreeSet<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub count: usize,
    pub depth: usize,
    pub max_len: usize,
    pub mismatches: Vec<Mismatch>,
    /// Largest compiled automaton, as `(regex size, states, edges)`.
    pub largest: (usize, usize, usize),
}

/// Compares `compile` with the set semantics on `count` random expressions.
pub fn kleene_fuzz(
    seed: u64,
    count: usize,
    depth: usize,
    max_len: usize,
    alphabet: &[char],
) -> Result<FuzzReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    let mut largest = (0, 0, 0);
    for _ in 0..count {
        let r = random_regex(&mut rng, depth, alphabet);
        let a = compile(&r)?;
        if (a.state_count(), a.edge_count()) > (largest.1, largest.2) {
            largest = (r.size(), a.state_count(), a.edge_count());
        }
        let compiled = a.language_upto(max_len);
        let oracle = regex_lang_upto(&r, max_len);
        if compiled != oracle {
            let word = compiled
                .symmetric_difference(&oracle)
                .next()
                .cloned()
                .unwrap_or_default();
            mismatches.push(Mismatch {
                regex: r.to_string(),
                word,
                compiled,
                oracle,
            });
        }
    }
    Ok(FuzzReport {
        seed,
        count,
        depth,
        max_len,
        mismatches,
        largest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_zero_is_exact() {
        let report = kleene_fuzz(1, 50, 0, 3, &['a', 'b']).unwrap();
        assert!(report.mismatches.is_empty());
    }

    #[test]
    fn generation_is_seeded() {
        let a: Vec<Regex> = {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            (0..5)
                .map(|_| random_regex(&mut rng, 3, &['a', 'b']))
                .collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b: Vec<Regex> = (0..5)
            .map(|_| random_regex(&mut rng, 3, &['a', 'b']))
            .collect();
        assert_eq!(a, b);
    }
}
