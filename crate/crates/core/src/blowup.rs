//! The n-blowup of a relational precubical set: one cube per brick-shaped
//! probe `f: B_ε → P`, in dimension `n - codim ε`, with `β(ε, f) = f(min)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pcs::{
    brick, euclidean_check, iota, Brick, EuclidReport, PcsBuilder, PcsMorphism, RelPcs,
};
use crate::toolkit::{
    colimit, find_isomorphism, hom_enumerate, induced, unique_rlp, Generator, GeneratorSet,
    RlpReport,
};
use crate::words::{d_epsilon, g_w, BrickIndex};

/// Origin of a blowup cube.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub cube: String,
    pub epsilon: String,
    /// brick cell ↦ cube of the input
    pub chart: BTreeMap<String, String>,
}

pub struct BlowupResult {
    pub blowup: Arc<RelPcs>,
    pub beta: PcsMorphism,
    /// Indexed like the cells of `blowup`.
    pub provenance: Vec<Provenance>,
    /// Probe behind each cell of `blowup`.
    pub probes: Vec<(BrickIndex, PcsMorphism)>,
}

/// Every brick of ambient dimension `n`, with each `ι_w` for `w ≠ ε`.
struct BrickAtlas {
    bricks: HashMap<BrickIndex, Brick>,
}

impl BrickAtlas {
    fn new(n: usize) -> Self {
        BrickAtlas {
            bricks: BrickIndex::all(n)
                .into_iter()
                .map(|e| (e.clone(), brick(&e)))
                .collect(),
        }
    }

    fn get(&self, eps: &BrickIndex) -> &Brick {
        &self.bricks[eps]
    }
}

pub fn blowup(p: &Arc<RelPcs>, n: usize) -> Result<BlowupResult> {
    p.validate().map_err(Error::from)?;
    let atlas = BrickAtlas::new(n);
    let indices = BrickIndex::all(n);

    let mut homs: HashMap<BrickIndex, Vec<PcsMorphism>> = HashMap::new();
    let mut lookup: HashMap<BrickIndex, HashMap<Vec<usize>, usize>> = HashMap::new();
    for eps in &indices {
        let hs = hom_enumerate(&atlas.get(eps).object, p);
        lookup.insert(
            eps.clone(),
            hs.iter()
                .enumerate()
                .map(|(k, h)| (h.map().to_vec(), k))
                .collect(),
        );
        homs.insert(eps.clone(), hs);
    }

    let name = |eps: &BrickIndex, k: usize| format!("{eps}#{k}");
    let mut b = PcsBuilder::new(n);
    let mut ids: HashMap<(BrickIndex, usize), usize> = HashMap::new();
    for eps in &indices {
        for k in 0..homs[eps].len() {
            let id = b.cube(name(eps, k), eps.min_dim())?;
            ids.insert((eps.clone(), k), id);
        }
    }
    for eps in &indices {
        let big = atlas.get(eps);
        for w in d_epsilon(eps).elements().iter().filter(|w| !w.is_max()) {
            let pw = w.p();
            let small = atlas.get(&pw);
            let inclusion = iota(big, small, w)?;
            let word = g_w(eps, w)?;
            for (k, f) in homs[eps].iter().enumerate() {
                let restricted = inclusion.then(f)?;
                let j = lookup[&pw][restricted.map()];
                b.relate(ids[&(pw.clone(), j)], word.clone(), ids[&(eps.clone(), k)]);
            }
        }
    }
    let blowup = Arc::new(b.build()?);

    let mut beta = vec![0; blowup.len()];
    let mut provenance = vec![None; blowup.len()];
    let mut probes = vec![None; blowup.len()];
    for eps in &indices {
        let min = atlas.get(eps).min();
        for (k, f) in homs[eps].iter().enumerate() {
            let cell = blowup.id(&name(eps, k))?;
            beta[cell] = f.apply(min);
            provenance[cell] = Some(Provenance {
                cube: name(eps, k),
                epsilon: eps.to_string(),
                chart: f.named_pairs().into_iter().collect(),
            });
            probes[cell] = Some((eps.clone(), f.clone()));
        }
    }
    let beta = PcsMorphism::new(blowup.clone(), p.clone(), beta)?;
    Ok(BlowupResult {
        blowup,
        beta,
        provenance: provenance
            .into_iter()
            .map(|x| x.expect("every cell"))
            .collect(),
        probes: probes.into_iter().map(|x| x.expect("every cell")).collect(),
    })
}

/// `I₊ = {i_ε : B_ε ∖ {min} ↪ B_ε}` for every `ε` of length `n`, with codiagonals.
pub fn brick_generators(n: usize) -> GeneratorSet<RelPcs> {
    let positive = BrickIndex::all(n)
        .iter()
        .map(|eps| Generator::new(format!("i_{eps}"), brick(eps).boundary_inclusion()))
        .collect();
    GeneratorSet::new(positive).expect("codiagonals of inclusions exist")
}

#[derive(Clone, Debug, Serialize)]
pub struct BlowupReport {
    pub counts: Vec<usize>,
    /// the blowup is euclidean
    pub euclidean: EuclidReport,
    /// `β` has unique lifts against every `i_ε`
    pub trivial_fibration: RlpReport,
    /// `β` has lifts against every `∇_{i_ε}`
    pub codiagonals: RlpReport,
    pub input_euclidean: bool,
    pub beta_iso: bool,
}

impl BlowupReport {
    /// Euclidean blowup, trivial fibration and codiagonal checks, plus `β` iso for euclidean inputs.
    pub fn passes(&self) -> bool {
        self.euclidean.euclidean
            && self.trivial_fibration.holds
            && self.codiagonals.holds
            && (!self.input_euclidean || self.beta_iso)
    }
}

pub fn verify_blowup(p: &Arc<RelPcs>, n: usize) -> Result<BlowupReport> {
    let res = blowup(p, n)?;
    let gens = brick_generators(n);
    let codiagonals = crate::toolkit::rlp(&res.beta, &gens.closure);
    Ok(BlowupReport {
        counts: res.blowup.counts(),
        euclidean: euclidean_check(&res.blowup, n),
        trivial_fibration: unique_rlp(&res.beta, &gens),
        codiagonals,
        input_euclidean: euclidean_check(p, n).euclidean,
        beta_iso: res.beta.is_iso(),
    })
}

/// The blowup map induced by `α: P → Q` through `f ↦ α∘f`.
pub fn blowup_map(
    alpha: &PcsMorphism,
    bp: &BlowupResult,
    bq: &BlowupResult,
) -> Result<PcsMorphism> {
    let mut index: HashMap<(BrickIndex, Vec<usize>), usize> = HashMap::new();
    for (cell, (eps, f)) in bq.probes.iter().enumerate() {
        index.insert((eps.clone(), f.map().to_vec()), cell);
    }
    let map = bp
        .probes
        .iter()
        .map(|(eps, f)| {
            let g = f.then(alpha)?;
            index
                .get(&(eps.clone(), g.map().to_vec()))
                .copied()
                .ok_or_else(|| Error::Contract("postcomposite probe missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    PcsMorphism::new(bp.blowup.clone(), bq.blowup.clone(), map)
}

#[derive(Clone, Debug, Serialize)]
pub struct BrickColimitReport {
    pub epsilon: String,
    pub diagram_objects: usize,
    pub diagram_arrows: usize,
    pub colimit_cells: usize,
    pub holds: bool,
}

/// Colimit of `w ↦ B_{p(w)}` over `D_ε ∖ {ε}` with transition maps
/// `ι_{w∧p(w')}`, compared with `B_ε ∖ {min}` through the maps `ι_w`.
pub fn brick_colimit_check(eps: &BrickIndex) -> Result<BrickColimitReport> {
    let big = brick(eps);
    let boundary = big.boundary_inclusion();
    let mut position = vec![usize::MAX; big.object.len()];
    for (k, c) in boundary.map().iter().enumerate() {
        position[*c] = k;
    }
    let shape: Vec<_> = d_epsilon(eps)
        .elements()
        .iter()
        .filter(|w| !w.is_max())
        .cloned()
        .collect();
    let smalls: Vec<Brick> = shape.iter().map(|w| brick(&w.p())).collect();
    let objects: Vec<Arc<RelPcs>> = smalls.iter().map(|b| b.object.clone()).collect();

    let mut arrows = Vec::new();
    for (a, w) in shape.iter().enumerate() {
        for (b, w2) in shape.iter().enumerate() {
            if a != b && w.le(w2) {
                let via = w.project(&w2.p())?;
                arrows.push((a, b, iota(&smalls[b], &smalls[a], &via)?));
            }
        }
    }
    let col = colimit(&RelPcs::empty(eps.n()), &objects, &arrows)?;

    let legs_into_boundary = shape
        .iter()
        .zip(&smalls)
        .map(|(w, small)| {
            let m = iota(&big, small, w)?;
            let map = m.map().iter().map(|c| position[*c]).collect();
            PcsMorphism::new(small.object.clone(), boundary.source().clone(), map)
        })
        .collect::<Result<Vec<_>>>()?;
    let holds = if shape.is_empty() {
        col.object.is_empty() && boundary.source().is_empty()
    } else {
        let legs: Vec<&PcsMorphism> = col.legs.iter().collect();
        let maps: Vec<&PcsMorphism> = legs_into_boundary.iter().collect();
        match induced(&legs, &maps) {
            Ok(alpha) => alpha.is_iso(),
            Err(_) => false,
        }
    };
    Ok(BrickColimitReport {
        epsilon: eps.to_string(),
        diagram_objects: objects.len(),
        diagram_arrows: arrows.len(),
        colimit_cells: col.object.len(),
        holds,
    })
}

/// Whether the blowup of `P` is isomorphic to `P`.
pub fn blowup_isomorphic(p: &Arc<RelPcs>, n: usize) -> Result<bool> {
    let res = blowup(p, n)?;
    Ok(find_isomorphism(&res.blowup, p).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcs::fixtures::named;

    fn fixture(name: &str) -> Arc<RelPcs> {
        Arc::new(named(name).unwrap().pcs)
    }

    fn eps(s: &str) -> BrickIndex {
        s.parse().unwrap()
    }

    #[test]
    fn torus_from_one_square() {
        let x = fixture("one-square");
        let res = blowup(&x, 2).unwrap();
        assert_eq!(res.blowup.counts(), [1, 2, 1]);
        let e = x.id("e").unwrap();
        for c in res.blowup.cubes_of_dim(1) {
            assert_eq!(res.beta.apply(c), e);
        }
        let p = &res.provenance[res.blowup.cubes_of_dim(0).next().unwrap()];
        assert_eq!(p.epsilon, "11");
        assert_eq!(p.chart["11"], "v");
        assert!(verify_blowup(&x, 2).unwrap().passes());
    }

    #[test]
    fn small_blowups() {
        assert!(blowup(&fixture("lone-vertex"), 1)
            .unwrap()
            .blowup
            .is_empty());

        let interval = fixture("interval");
        let res = blowup(&interval, 1).unwrap();
        assert_eq!(res.blowup.counts(), [0, 1]);
        assert_eq!(res.beta.apply(0), interval.id("e").unwrap());

        let circle = fixture("circle");
        assert!(blowup(&circle, 1).unwrap().beta.is_iso());
    }

    #[test]
    fn y_graph_splits_at_the_branch_point() {
        // One edge enters v and two leave it: B_1 probes pair the incoming
        // edge with each outgoing one, and every edge is a C_1 probe.
        let y = fixture("y-graph");
        let res = blowup(&y, 1).unwrap();
        assert_eq!(res.blowup.counts(), [2, 3]);
        let report = verify_blowup(&y, 1).unwrap();
        assert!(report.euclidean.euclidean && report.trivial_fibration.holds);
        assert!(!report.input_euclidean && !report.beta_iso);
        assert!(report.passes());
    }

    #[test]
    fn brick_colimits() {
        for e in ["11", "00", "101", "1", "0"] {
            let report = brick_colimit_check(&eps(e)).unwrap();
            assert!(report.holds, "{e}");
        }
        let empty = brick_colimit_check(&eps("00")).unwrap();
        assert_eq!((empty.diagram_objects, empty.colimit_cells), (0, 0));
    }

    #[test]
    fn generators_are_the_boundary_inclusions() {
        let gens = brick_generators(2);
        assert_eq!(gens.positive.len(), 4);
        assert_eq!(gens.closure.len(), 4);
    }
}
