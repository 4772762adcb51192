//! Seeded configurations for the codiagonal identities, the unique-lift
//! equivalence and 2-out-of-3, over both carriers.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::random::{random_automaton, RandomShape};
use crate::automata::{cofibrant_replacement, generators_for, AutMorphism, RelAutomaton};
use crate::blowup::{blowup, brick_generators};
use crate::error::Result;
use crate::pcs::{fixtures, PcsMorphism, RelPcs};
use crate::toolkit::{
    coproduct, AppendixSample, Carrier, Generator, GeneratorSet, HomSearch, Morphism,
};

/// Sizes of a sample; the appendix suite sums every pair of `arrows`.
#[derive(Clone, Copy, Debug)]
pub struct SampleSizes {
    pub arrows: usize,
    pub pushouts: usize,
    pub compositions: usize,
    pub lifting: usize,
    pub two_of_three: usize,
}

impl Default for SampleSizes {
    fn default() -> Self {
        SampleSizes {
            arrows: 10,
            pushouts: 15,
            compositions: 15,
            lifting: 120,
            two_of_three: 30,
        }
    }
}

fn pcs_generators(p: &PcsMorphism) -> Result<GeneratorSet<RelPcs>> {
    Ok(brick_generators(p.source().dim_bound()))
}

fn aut_generators(p: &AutMorphism) -> Result<GeneratorSet<RelAutomaton>> {
    generators_for(p)
}

/// Up to `limit` morphisms `a → b`, canonically ordered.
fn homs<C: Carrier>(a: &Arc<C>, b: &Arc<C>, limit: usize) -> Vec<Morphism<C>> {
    HomSearch::new(&**a, &**b)
        .limit(limit)
        .maps()
        .into_iter()
        .map(|m| Morphism::new(a.clone(), b.clone(), m).expect("search yields morphisms"))
        .collect()
}

fn pick<'a, T, R: Rng>(rng: &mut R, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("non-empty pool")
}

fn random_sub_pcs<R: Rng>(rng: &mut R, x: &Arc<RelPcs>) -> PcsMorphism {
    let keep: Vec<bool> = (0..x.len()).map(|_| rng.random_bool(0.6)).collect();
    let (sub, kept) = x.restrict(&keep);
    PcsMorphism::new(Arc::new(sub), x.clone(), kept).expect("restrictions include")
}

fn random_sub_aut<R: Rng>(rng: &mut R, x: &Arc<RelAutomaton>) -> AutMorphism {
    let ks: Vec<bool> = (0..x.state_count()).map(|_| rng.random_bool(0.6)).collect();
    let ke: Vec<bool> = (0..x.edge_count()).map(|_| rng.random_bool(0.6)).collect();
    let (sub, cells) = x.restrict(&ks, &ke);
    AutMorphism::new(Arc::new(sub), x.clone(), cells).expect("restrictions include")
}

/// Precubical fixtures with at most 8 cells, grouped by ambient dimension.
fn pcs_pool() -> Vec<Vec<Arc<RelPcs>>> {
    let mut by_n = vec![Vec::new(), Vec::new(), Vec::new()];
    for f in fixtures::all() {
        if f.pcs.len() <= 8 {
            by_n[f.n].push(Arc::new(f.pcs));
        }
    }
    by_n.retain(|v| !v.is_empty());
    by_n
}

/// A random morphism `a → y` for some object `y` of `pool`, or the left
/// injection into `a ⊔ y` when no such morphism exists.
fn random_map_out<C: Carrier, R: Rng>(rng: &mut R, a: &Arc<C>, pool: &[Arc<C>]) -> Morphism<C> {
    let y = pick(rng, pool);
    let hs = homs(a, y, 64);
    match hs.choose(rng) {
        Some(h) => h.clone(),
        None => coproduct(a, y).left,
    }
}

pub fn pcs_sample(seed: u64, sizes: SampleSizes) -> Result<AppendixSample<'static, RelPcs>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = pcs_pool();
    let mut arrows: Vec<Generator<RelPcs>> = Vec::new();
    for n in 1..=2 {
        arrows.extend(brick_generators(n).positive);
    }
    for k in 0..sizes.arrows {
        let group = pick(&mut rng, &pool);
        let x = pick(&mut rng, group);
        arrows.push(Generator::new(
            format!("sub{k}"),
            random_sub_pcs(&mut rng, x),
        ));
    }

    let mut pushouts = Vec::new();
    for k in 0..sizes.pushouts {
        let group = pick(&mut rng, &pool);
        let i = {
            let x = pick(&mut rng, group).clone();
            random_sub_pcs(&mut rng, &x)
        };
        let f = random_map_out(&mut rng, i.source(), group);
        pushouts.push((Generator::new(format!("sub{k}"), i), f));
    }

    let mut compositions = Vec::new();
    for _ in 0..sizes.compositions {
        let group = pick(&mut rng, &pool);
        let x = pick(&mut rng, group);
        let i2 = random_sub_pcs(&mut rng, x);
        let i1 = random_sub_pcs(&mut rng, i2.source());
        compositions.push((i1, i2));
    }

    // maps to test: blowup projections, morphisms between fixtures, inclusions
    let mut maps: Vec<PcsMorphism> = Vec::new();
    for group in &pool {
        for x in group {
            maps.push(blowup(x, x.dim_bound())?.beta);
            for y in group {
                maps.extend(homs(x, y, 3));
            }
        }
    }
    let mut lifting = Vec::new();
    for k in 0..sizes.lifting {
        let p = pick(&mut rng, &maps).clone();
        let n = p.source().dim_bound();
        let i = if rng.random_bool(0.5) {
            pick(&mut rng, &brick_generators(n).positive).clone()
        } else {
            let group = pool
                .iter()
                .find(|g| g[0].dim_bound() == n)
                .expect("pool has every n");
            Generator::new(format!("sub{k}"), {
                let x = pick(&mut rng, group).clone();
                random_sub_pcs(&mut rng, &x)
            })
        };
        lifting.push((p, i));
    }

    let two_of_three = composable_pairs(&mut rng, &maps, sizes.two_of_three);
    Ok(AppendixSample {
        arrows,
        pushouts,
        compositions,
        lifting,
        two_of_three,
        generators: &pcs_generators,
    })
}

/// Random composable `(g, f)`, with `f` drawn among the maps out of the
/// target of `g` (including its identity).
fn composable_pairs<C: Carrier, R: Rng>(
    rng: &mut R,
    maps: &[Morphism<C>],
    count: usize,
) -> Vec<(Morphism<C>, Morphism<C>)> {
    let mut out = Vec::new();
    while out.len() < count {
        let g = pick(rng, maps);
        let mut next: Vec<Morphism<C>> = maps
            .iter()
            .filter(|f| Arc::ptr_eq(f.source(), g.target()) || **f.source() == **g.target())
            .map(|f| Morphism::new(g.target().clone(), f.target().clone(), f.map().to_vec()))
            .collect::<Result<Vec<_>>>()
            .expect("equal objects");
        next.push(Morphism::identity(g.target().clone()));
        let f = pick(rng, &next).clone();
        out.push((g.clone(), f));
    }
    out
}

fn aut_pool<R: Rng>(rng: &mut R) -> Vec<Arc<RelAutomaton>> {
    let shape = RandomShape {
        max_states: 4,
        max_edges: 5,
        ..Default::default()
    };
    let mut pool: Vec<Arc<RelAutomaton>> = crate::automata::fixtures::all()
        .into_iter()
        .map(|f| Arc::new(f.automaton))
        .collect();
    for _ in 0..8 {
        pool.push(Arc::new(random_automaton(rng, &shape)));
    }
    pool
}

pub fn automata_sample(
    seed: u64,
    sizes: SampleSizes,
) -> Result<AppendixSample<'static, RelAutomaton>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = aut_pool(&mut rng);
    let sigma = ['a', 'b'].into();
    let mut arrows: Vec<Generator<RelAutomaton>> =
        crate::automata::automata_generators(&sigma, 1, 2)?
            .positive
            .into_iter()
            .filter(|g| g.arrow.target().cell_count() <= 4)
            .collect();
    for k in 0..sizes.arrows {
        let x = pick(&mut rng, &pool);
        arrows.push(Generator::new(
            format!("sub{k}"),
            random_sub_aut(&mut rng, x),
        ));
    }

    let mut pushouts = Vec::new();
    for k in 0..sizes.pushouts {
        let i = {
            let x = pick(&mut rng, &pool).clone();
            random_sub_aut(&mut rng, &x)
        };
        let f = random_map_out(&mut rng, i.source(), &pool);
        pushouts.push((Generator::new(format!("sub{k}"), i), f));
    }

    let mut compositions = Vec::new();
    for _ in 0..sizes.compositions {
        let i2 = {
            let x = pick(&mut rng, &pool).clone();
            random_sub_aut(&mut rng, &x)
        };
        let i1 = random_sub_aut(&mut rng, i2.source());
        compositions.push((i1, i2));
    }

    let mut maps: Vec<AutMorphism> = Vec::new();
    for x in &pool {
        maps.push(cofibrant_replacement(x)?.beta);
        for y in &pool {
            maps.extend(homs(x, y, 2));
        }
    }
    let mut lifting = Vec::new();
    for k in 0..sizes.lifting {
        let p = pick(&mut rng, &maps).clone();
        let i = if rng.random_bool(0.5) {
            pick(&mut rng, &generators_for(&p)?.positive).clone()
        } else {
            Generator::new(format!("sub{k}"), {
                let x = pick(&mut rng, &pool).clone();
                random_sub_aut(&mut rng, &x)
            })
        };
        lifting.push((p, i));
    }

    let two_of_three = composable_pairs(&mut rng, &maps, sizes.two_of_three);
    Ok(AppendixSample {
        arrows,
        pushouts,
        compositions,
        lifting,
        two_of_three,
        generators: &aut_generators,
    })
}
