//! Finite colimits as quotients of disjoint unions.

use std::sync::Arc;

use super::{same_object, Carrier, Morphism, Partition};
use crate::error::{Error, Result};

pub struct Coproduct<C> {
    pub object: Arc<C>,
    pub left: Morphism<C>,
    pub right: Morphism<C>,
}

pub fn coproduct<C: Carrier>(a: &Arc<C>, b: &Arc<C>) -> Coproduct<C> {
    let (obj, l, r) = a.coproduct(b);
    let object = Arc::new(obj);
    Coproduct {
        left: Morphism::new_unchecked(a.clone(), object.clone(), l),
        right: Morphism::new_unchecked(b.clone(), object.clone(), r),
        object,
    }
}

/// The quotient map `obj → obj/~` for the equivalence generated by `pairs`.
pub fn quotient<C: Carrier>(obj: &Arc<C>, pairs: &[(usize, usize)]) -> Result<Morphism<C>> {
    let mut part = Partition::new(obj.cell_count());
    for (a, b) in pairs {
        part.union(*a, *b);
    }
    let (classes, count) = part.classes();
    let glued = Arc::new(obj.glue(&classes, count)?);
    Ok(Morphism::new_unchecked(obj.clone(), glued, classes))
}

pub struct Pushout<C> {
    pub object: Arc<C>,
    /// `A → P` for the span leg `f: C → A`
    pub left: Morphism<C>,
    /// `B → P` for the span leg `g: C → B`
    pub right: Morphism<C>,
}

/// Pushout of the span `A <-f- C -g-> B`.
pub fn pushout<C: Carrier>(f: &Morphism<C>, g: &Morphism<C>) -> Result<Pushout<C>> {
    if !same_object(f.source(), g.source()) {
        return Err(Error::InvalidMorphism("pushout of a non-span".into()));
    }
    let sum = coproduct(f.target(), g.target());
    let pairs: Vec<(usize, usize)> = (0..f.source().cell_count())
        .map(|c| (sum.left.apply(f.apply(c)), sum.right.apply(g.apply(c))))
        .collect();
    let q = quotient(&sum.object, &pairs)?;
    Ok(Pushout {
        left: sum.left.then(&q)?,
        right: sum.right.then(&q)?,
        object: q.target().clone(),
    })
}

/// `∇_f: D ⊔_C D → D`, the fold map `(id, id)` out of the self-pushout of
/// `f: C → D`.
pub fn codiagonal<C: Carrier>(f: &Morphism<C>) -> Result<Morphism<C>> {
    let po = pushout(f, f)?;
    let mut fold = vec![usize::MAX; po.object.cell_count()];
    for d in 0..f.target().cell_count() {
        fold[po.left.apply(d)] = d;
        fold[po.right.apply(d)] = d;
    }
    Morphism::new(po.object.clone(), f.target().clone(), fold)
}

pub struct Colimit<C> {
    pub object: Arc<C>,
    /// One leg per diagram object.
    pub legs: Vec<Morphism<C>>,
}

/// Colimit of a finite diagram. `arrows` holds `(from, to, morphism)` with
/// indices into `objects`.
pub fn colimit<C: Carrier>(
    empty: &C,
    objects: &[Arc<C>],
    arrows: &[(usize, usize, Morphism<C>)],
) -> Result<Colimit<C>> {
    let mut total = Arc::new(empty.empty_like());
    let mut injections: Vec<Vec<usize>> = Vec::with_capacity(objects.len());
    for obj in objects {
        let (sum, left, right) = total.coproduct(obj);
        for inj in injections.iter_mut() {
            for c in inj.iter_mut() {
                *c = left[*c];
            }
        }
        injections.push(right);
        total = Arc::new(sum);
    }
    let mut pairs = Vec::new();
    for (from, to, m) in arrows {
        if !same_object(m.source(), &objects[*from]) || !same_object(m.target(), &objects[*to]) {
            return Err(Error::InvalidMorphism(format!(
                "diagram arrow {from} -> {to} has the wrong endpoints"
            )));
        }
        for c in 0..m.source().cell_count() {
            pairs.push((injections[*from][c], injections[*to][m.apply(c)]));
        }
    }
    let q = quotient(&total, &pairs)?;
    let legs = objects
        .iter()
        .zip(&injections)
        .map(|(obj, inj)| {
            Morphism::new_unchecked(
                obj.clone(),
                q.target().clone(),
                inj.iter().map(|c| q.apply(*c)).collect(),
            )
        })
        .collect();
    Ok(Colimit {
        object: q.target().clone(),
        legs,
    })
}

/// The map `Q → T` out of a colimit `Q` determined by `legs[k]: S_k → Q` and
/// `maps[k]: S_k → T`. Fails when the legs do not cover `Q` or the maps
/// disagree on a cell.
pub fn induced<C: Carrier>(legs: &[&Morphism<C>], maps: &[&Morphism<C>]) -> Result<Morphism<C>> {
    let (q, t) = match (legs.first(), maps.first()) {
        (Some(l), Some(m)) => (l.target().clone(), m.target().clone()),
        _ => {
            return Err(Error::InvalidMorphism(
                "induced map of an empty cocone".into(),
            ))
        }
    };
    let mut out = vec![None; q.cell_count()];
    for (leg, map) in legs.iter().zip(maps) {
        for c in 0..leg.source().cell_count() {
            let slot = &mut out[leg.apply(c)];
            match slot {
                Some(prev) if *prev != map.apply(c) => {
                    return Err(Error::InvalidMorphism(format!(
                        "cocone disagrees on {}",
                        q.cell_name(leg.apply(c))
                    )))
                }
                _ => *slot = Some(map.apply(c)),
            }
        }
    }
    let map = out
        .into_iter()
        .enumerate()
        .map(|(c, v)| {
            v.ok_or_else(|| Error::InvalidMorphism(format!("{} is not covered", q.cell_name(c))))
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(q, t, map)
}

/// `f ⊔ g: A ⊔ C → B ⊔ D`.
pub fn sum_of_arrows<C: Carrier>(f: &Morphism<C>, g: &Morphism<C>) -> Result<Morphism<C>> {
    let src = coproduct(f.source(), g.source());
    let tgt = coproduct(f.target(), g.target());
    let left = f.then(&tgt.left)?;
    let right = g.then(&tgt.right)?;
    induced(&[&src.left, &src.right], &[&left, &right])
}
