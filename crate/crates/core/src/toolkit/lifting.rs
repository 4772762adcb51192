//! Lifting problems and (unique) right lifting properties, decided by
//! enumerating every commuting square.

use std::sync::Arc;

use serde::Serialize;

use super::{codiagonal, same_object, Carrier, HomSearch, Morphism};
use crate::error::{Error, Result};

/// A named morphism of a generating family.
#[derive(Clone)]
pub struct Generator<C> {
    pub name: String,
    pub arrow: Morphism<C>,
    /// Groups of interchangeable domain cells; only squares whose top is
    /// strictly increasing on each group are enumerated. Sound when permuting
    /// a group is an automorphism of the generator and a square identifying
    /// two cells of a group factors through a smaller member of the family.
    pub symmetric_top: Vec<Vec<usize>>,
}

impl<C: Carrier> Generator<C> {
    pub fn new(name: impl Into<String>, arrow: Morphism<C>) -> Self {
        Generator {
            name: name.into(),
            arrow,
            symmetric_top: Vec::new(),
        }
    }

    pub fn with_symmetric_top(mut self, groups: Vec<Vec<usize>>) -> Self {
        self.symmetric_top = groups;
        self
    }

    /// `∇_i`, keeping the symmetry groups: cells of `i`'s domain have a single
    /// copy in `d ⊔_c d`.
    pub fn codiagonal(&self) -> Result<Generator<C>> {
        let nabla = codiagonal(&self.arrow)?;
        let mut copies: Vec<Vec<usize>> = vec![Vec::new(); self.arrow.target().cell_count()];
        for (c, img) in nabla.map().iter().enumerate() {
            copies[*img].push(c);
        }
        let symmetric_top = self
            .symmetric_top
            .iter()
            .filter_map(|g| {
                g.iter()
                    .map(|a| match copies[self.arrow.apply(*a)].as_slice() {
                        [single] => Some(*single),
                        _ => None,
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .collect();
        Ok(Generator {
            name: format!("∇({})", self.name),
            arrow: nabla,
            symmetric_top,
        })
    }
}

impl<C: Carrier> std::fmt::Debug for Generator<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {:?}", self.name, self.arrow)
    }
}

/// `I = I₊ ∪ {∇_i | i ∈ I₊}`, with every codiagonal computed by pushout and
/// fold.
#[derive(Clone)]
pub struct GeneratorSet<C> {
    pub positive: Vec<Generator<C>>,
    pub closure: Vec<Generator<C>>,
}

impl<C: Carrier> std::fmt::Debug for GeneratorSet<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

impl<C: Carrier> GeneratorSet<C> {
    pub fn new(positive: Vec<Generator<C>>) -> Result<Self> {
        let closure = positive
            .iter()
            .map(Generator::codiagonal)
            .collect::<Result<_>>()?;
        Ok(GeneratorSet { positive, closure })
    }

    pub fn len(&self) -> usize {
        self.positive.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positive.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.positive.iter().map(|g| g.name.as_str()).collect()
    }

    /// `I₊` followed by the codiagonals.
    pub fn all(&self) -> impl Iterator<Item = &Generator<C>> {
        self.positive.iter().chain(self.closure.iter())
    }
}

/// A commuting square `p ∘ top = bottom ∘ i`.
#[derive(Clone)]
pub struct LiftingProblem<C> {
    pub i: Morphism<C>,
    pub p: Morphism<C>,
    pub top: Morphism<C>,
    pub bottom: Morphism<C>,
}

impl<C: Carrier> LiftingProblem<C> {
    pub fn new(
        i: Morphism<C>,
        p: Morphism<C>,
        top: Morphism<C>,
        bottom: Morphism<C>,
    ) -> Result<Self> {
        let ends = same_object(top.source(), i.source())
            && same_object(top.target(), p.source())
            && same_object(bottom.source(), i.target())
            && same_object(bottom.target(), p.target());
        if !ends {
            return Err(Error::InvalidMorphism(
                "square with mismatched corners".into(),
            ));
        }
        let commutes =
            (0..i.source().cell_count()).all(|a| p.apply(top.apply(a)) == bottom.apply(i.apply(a)));
        if !commutes {
            return Err(Error::InvalidMorphism("square does not commute".into()));
        }
        Ok(LiftingProblem { i, p, top, bottom })
    }
}

impl<C: Carrier> std::fmt::Debug for LiftingProblem<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LiftingProblem")
            .field("top", &self.top)
            .field("bottom", &self.bottom)
            .finish()
    }
}

/// Allowed images of each cell of `B` for a diagonal filler, or `None` when
/// `top` identifies cells that `i` does not (no filler can exist).
fn filler_domains<C: Carrier>(
    i: &Morphism<C>,
    p: &Morphism<C>,
    top: &[usize],
    bottom: &[usize],
) -> Option<Vec<Vec<usize>>> {
    let x = p.source();
    let mut fixed: Vec<Option<usize>> = vec![None; i.target().cell_count()];
    for (a, t) in top.iter().enumerate() {
        let b = i.apply(a);
        match fixed[b] {
            Some(prev) if prev != *t => return None,
            _ => fixed[b] = Some(*t),
        }
    }
    Some(
        (0..i.target().cell_count())
            .map(|b| match fixed[b] {
                Some(t) => vec![t],
                None => (0..x.cell_count())
                    .filter(|c| p.apply(*c) == bottom[b])
                    .collect(),
            })
            .collect(),
    )
}

fn count_fillers<C: Carrier>(
    i: &Morphism<C>,
    p: &Morphism<C>,
    top: &[usize],
    bottom: &[usize],
    limit: usize,
) -> usize {
    match filler_domains(i, p, top, bottom) {
        None => 0,
        Some(domains) => HomSearch::new(&**i.target(), &**p.source())
            .with_domains(&domains)
            .limit(limit)
            .count(),
    }
}

/// Every diagonal filler `h` with `h ∘ i = top` and `p ∘ h = bottom`.
pub fn solve_lifts<C: Carrier>(q: &LiftingProblem<C>) -> Vec<Morphism<C>> {
    match filler_domains(&q.i, &q.p, q.top.map(), q.bottom.map()) {
        None => Vec::new(),
        Some(domains) => HomSearch::new(&**q.i.target(), &**q.p.source())
            .with_domains(&domains)
            .maps()
            .into_iter()
            .map(|m| Morphism::new_unchecked(q.i.target().clone(), q.p.source().clone(), m))
            .collect(),
    }
}

/// Visits every commuting square of `gen` against `p` as `(top, bottom)`
/// until `visit` returns `false`.
fn for_each_square<C: Carrier>(
    gen: &Generator<C>,
    p: &Morphism<C>,
    visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
) {
    let i = &gen.arrow;
    let (a, b) = (i.source(), i.target());
    let (x, y) = (p.source(), p.target());
    let mut preimages: Vec<Vec<usize>> = vec![Vec::new(); b.cell_count()];
    for c in 0..a.cell_count() {
        preimages[i.apply(c)].push(c);
    }
    let mut stop = false;
    HomSearch::new(&**a, &**x)
        .increasing(&gen.symmetric_top)
        .run(&mut |top| {
            let mut domains = Vec::with_capacity(b.cell_count());
            for pre in &preimages {
                match pre.split_first() {
                    None => domains.push((0..y.cell_count()).collect()),
                    Some((first, rest)) => {
                        let want = p.apply(top[*first]);
                        if rest.iter().any(|c| p.apply(top[*c]) != want) {
                            return true;
                        }
                        domains.push(vec![want]);
                    }
                }
            }
            HomSearch::new(&**b, &**y)
                .with_domains(&domains)
                .run(&mut |bottom| {
                    stop = !visit(top, bottom);
                    !stop
                });
            !stop
        });
}

/// A square whose lifts are not as required.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    pub generator: String,
    pub top: Vec<(String, String)>,
    pub bottom: Vec<(String, String)>,
    /// Number of fillers found, capped at 2.
    pub lifts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RlpReport {
    pub holds: bool,
    pub squares: usize,
    pub witness: Option<SquareWitness>,
}

fn witness<C: Carrier>(
    gen: &Generator<C>,
    p: &Morphism<C>,
    top: &[usize],
    bottom: &[usize],
    lifts: usize,
) -> SquareWitness {
    let i = &gen.arrow;
    let named = |src: &Arc<C>, tgt: &Arc<C>, m: &[usize]| {
        m.iter()
            .enumerate()
            .map(|(c, img)| (src.cell_name(c), tgt.cell_name(*img)))
            .collect()
    };
    SquareWitness {
        generator: gen.name.clone(),
        top: named(i.source(), p.source(), top),
        bottom: named(i.target(), p.target(), bottom),
        lifts,
    }
}

fn check_lifts<'g, C: Carrier>(
    p: &Morphism<C>,
    gens: impl IntoIterator<Item = &'g Generator<C>>,
    ok: impl Fn(usize) -> bool,
) -> RlpReport {
    let mut squares = 0;
    for gen in gens {
        let mut failure = None;
        for_each_square(gen, p, &mut |top, bottom| {
            squares += 1;
            let n = count_fillers(&gen.arrow, p, top, bottom, 2);
            if ok(n) {
                true
            } else {
                failure = Some(witness(gen, p, top, bottom, n));
                false
            }
        });
        if failure.is_some() {
            return RlpReport {
                holds: false,
                squares,
                witness: failure,
            };
        }
    }
    RlpReport {
        holds: true,
        squares,
        witness: None,
    }
}

/// Whether every square of `p` against every member of `I₊` has exactly one
/// filler.
pub fn unique_rlp<C: Carrier>(p: &Morphism<C>, gens: &GeneratorSet<C>) -> RlpReport {
    check_lifts(p, &gens.positive, |n| n == 1)
}

/// Whether every square of `p` against each of `gens` has some filler.
pub fn rlp<C: Carrier>(p: &Morphism<C>, gens: &[Generator<C>]) -> RlpReport {
    check_lifts(p, gens, |n| n >= 1)
}

/// Plain right lifting property against `I₊ ∪ {∇_i}`.
pub fn rlp_against_closure<C: Carrier>(p: &Morphism<C>, gens: &GeneratorSet<C>) -> RlpReport {
    check_lifts(p, gens.all(), |n| n >= 1)
}
