use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{brick, upward, Brick, PcsMorphism, RelPcs};
use crate::toolkit::HomSearch;
use crate::words::BrickIndex;

/// Two distinct cubes sharing a face `c` along the same word, identified by
/// the morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalEmbeddingWitness {
    pub a: String,
    pub b: String,
    pub word: String,
    pub face: String,
}

/// `α(a) ≠ α(b)` whenever `a ≠ b`, `a →_w c` and `b →_w c`.
pub fn is_local_embedding(alpha: &PcsMorphism) -> Result<(), LocalEmbeddingWitness> {
    let p = alpha.source();
    let mut seen: BTreeMap<(usize, &crate::words::CubeWord, usize), usize> = BTreeMap::new();
    for (a, w, c) in p.relations() {
        if let Some(prev) = seen.insert((c, w, alpha.apply(a)), a) {
            if prev != a {
                return Err(LocalEmbeddingWitness {
                    a: p.name(prev).to_string(),
                    b: p.name(a).to_string(),
                    word: w.to_string(),
                    face: p.name(c).to_string(),
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub cube: String,
    pub epsilon: String,
    /// brick cell ↦ cell of `↑cube`
    pub chart: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EuclidReport {
    pub euclidean: bool,
    pub charts: Vec<Chart>,
    /// First cube without a chart.
    pub counterexample: Option<String>,
}

/// Finds, for every cube `c`, a brick `B_ε` with `n - codim ε = dim c` and a
/// surjective local embedding `B_ε → ↑c`.
pub fn euclidean_check(p: &Arc<RelPcs>, n: usize) -> EuclidReport {
    let bricks: Vec<Brick> = BrickIndex::all(n).iter().map(brick).collect();
    let mut charts = Vec::new();
    for c in 0..p.len() {
        let up = upward(p, c);
        let mut found = None;
        for b in bricks.iter().filter(|b| b.eps.min_dim() == p.dim(c)) {
            if b.object.len() < up.object.len() {
                continue;
            }
            HomSearch::new(&*b.object, &*up.object).run(&mut |m| {
                let phi =
                    PcsMorphism::new_unchecked(b.object.clone(), up.object.clone(), m.to_vec());
                if phi.is_surjective() && is_local_embedding(&phi).is_ok() {
                    found = Some(Chart {
                        cube: p.name(c).to_string(),
                        epsilon: b.eps.to_string(),
                        chart: phi.named_pairs().into_iter().collect(),
                    });
                    false
                } else {
                    true
                }
            });
            if found.is_some() {
                break;
            }
        }
        match found {
            Some(chart) => charts.push(chart),
            None => {
                return EuclidReport {
                    euclidean: false,
                    charts,
                    counterexample: Some(p.name(c).to_string()),
                }
            }
        }
    }
    EuclidReport {
        euclidean: true,
        charts,
        counterexample: None,
    }
}
