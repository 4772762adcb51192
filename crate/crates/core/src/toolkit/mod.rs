//! Carrier-agnostic machinery for finite relational presheaves: morphisms,
//! colimits, codiagonals, lifting problems and (unique) right lifting
//! properties.
//!
//! Both carriers of this crate, [`RelPcs`](crate::pcs::RelPcs) and
//! [`RelAutomaton`](crate::automata::RelAutomaton), are finite sets of
//! *cells* related by *incidences* `(a, r, b)` ("`b` is an `r`-face of `a`").
//! A morphism is a cell map that respects the sort of every cell and sends
//! incidences to incidences; everything in this module is written against
//! that view.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};

mod appendix;
mod colimit;
mod lifting;
mod search;

pub use appendix::{
    appendix_identity_suite, AppendixReport, AppendixSample, IdentityCheck, IdentityKind,
};
pub use colimit::{
    codiagonal, colimit, coproduct, induced, pushout, quotient, sum_of_arrows, Colimit, Coproduct,
    Pushout,
};
pub use lifting::{
    rlp, rlp_against_closure, solve_lifts, unique_rlp, Generator, GeneratorSet, LiftingProblem,
    RlpReport, SquareWitness,
};
pub use search::{arrows_isomorphic, find_isomorphism, hom_enumerate, HomSearch, IsoCache};

/// A category of finite relational presheaves, seen through its cells.
pub trait Carrier: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// Label of an incidence (a cube word, or source/target).
    type Rel: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn cell_count(&self) -> usize;

    fn cell_name(&self, cell: usize) -> String;

    /// Whether `cell` may be sent to `image` in `target`: same sort, same
    /// dimension or label, markers preserved.
    fn admissible(&self, cell: usize, target: &Self, image: usize) -> bool;

    /// Every stored incidence `(a, r, b)`.
    fn incidences(&self) -> Vec<(usize, Self::Rel, usize)>;

    fn has_incidence(&self, a: usize, rel: &Self::Rel, b: usize) -> bool;

    /// The initial object with the same ambient parameters.
    fn empty_like(&self) -> Self;

    /// Disjoint union, with the two injections as cell maps.
    fn coproduct(&self, other: &Self) -> (Self, Vec<usize>, Vec<usize>);

    /// Identifies cells by class. `classes[c]` is the class of cell `c`, and
    /// classes are numbered in order of their first member, so the glued
    /// object lists cell `k` for class `k`.
    fn glue(&self, classes: &[usize], class_count: usize) -> Result<Self>;

    /// Search priority of a cell; smaller keys are assigned first and give
    /// the canonical order of enumerated morphisms.
    fn search_key(&self, cell: usize) -> (usize, String) {
        (0, self.cell_name(cell))
    }
}

/// A morphism of a [`Carrier`], stored as a cell map.
#[derive(Clone)]
pub struct Morphism<C> {
    source: Arc<C>,
    target: Arc<C>,
    map: Vec<usize>,
}

impl<C: Carrier> Morphism<C> {
    /// Checked constructor.
    pub fn new(source: Arc<C>, target: Arc<C>, map: Vec<usize>) -> Result<Self> {
        let m = Morphism {
            source,
            target,
            map,
        };
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Arc<C>, target: Arc<C>, map: Vec<usize>) -> Self {
        debug_assert_eq!(map.len(), source.cell_count());
        Morphism {
            source,
            target,
            map,
        }
    }

    pub fn identity(object: Arc<C>) -> Self {
        let map = (0..object.cell_count()).collect();
        Morphism {
            source: object.clone(),
            target: object,
            map,
        }
    }

    /// The unique morphism out of the empty object.
    pub fn from_empty(target: Arc<C>) -> Self {
        Morphism {
            source: Arc::new(target.empty_like()),
            target,
            map: Vec::new(),
        }
    }

    pub fn source(&self) -> &Arc<C> {
        &self.source
    }

    pub fn target(&self) -> &Arc<C> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, cell: usize) -> usize {
        self.map[cell]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism<C>) -> Result<Morphism<C>> {
        if !same_object(&self.target, &other.source) {
            return Err(Error::InvalidMorphism(
                "composition of non-composable morphisms".into(),
            ));
        }
        Ok(Morphism {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|c| other.map[*c]).collect(),
        })
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    fn check(&self) -> Result<()> {
        if self.map.len() != self.source.cell_count() {
            return Err(Error::InvalidMorphism(format!(
                "cell map has {} entries for {} cells",
                self.map.len(),
                self.source.cell_count()
            )));
        }
        for (c, img) in self.map.iter().enumerate() {
            if *img >= self.target.cell_count() || !self.source.admissible(c, &self.target, *img) {
                return Err(Error::InvalidMorphism(format!(
                    "cell {} cannot be sent to {}",
                    self.source.cell_name(c),
                    if *img < self.target.cell_count() {
                        self.target.cell_name(*img)
                    } else {
                        format!("#{img}")
                    }
                )));
            }
        }
        for (a, r, b) in self.source.incidences() {
            if !self.target.has_incidence(self.map[a], &r, self.map[b]) {
                return Err(Error::InvalidMorphism(format!(
                    "incidence {} -{:?}-> {} is not preserved",
                    self.source.cell_name(a),
                    r,
                    self.source.cell_name(b)
                )));
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.cell_count()];
        self.map
            .iter()
            .all(|c| !std::mem::replace(&mut seen[*c], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.cell_count()];
        for c in &self.map {
            seen[*c] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// The inverse cell map, when this morphism is a bijection on cells.
    pub fn inverse_map(&self) -> Option<Vec<usize>> {
        if self.map.len() != self.target.cell_count() || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (c, img) in self.map.iter().enumerate() {
            inv[*img] = c;
        }
        Some(inv)
    }

    /// Bijective on cells, and the inverse is again a morphism (incidences and
    /// markers are reflected).
    pub fn is_iso(&self) -> bool {
        self.inverse().is_some()
    }

    pub fn inverse(&self) -> Option<Morphism<C>> {
        let inv = self.inverse_map()?;
        Morphism::new(self.target.clone(), self.source.clone(), inv).ok()
    }

    /// Cell assignments by name, in source order.
    pub fn named_pairs(&self) -> Vec<(String, String)> {
        self.map
            .iter()
            .enumerate()
            .map(|(c, img)| (self.source.cell_name(c), self.target.cell_name(*img)))
            .collect()
    }
}

impl<C: Carrier> PartialEq for Morphism<C> {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
            && same_object(&self.source, &other.source)
            && same_object(&self.target, &other.target)
    }
}

impl<C: Carrier> fmt::Debug for Morphism<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.named_pairs()).finish()
    }
}

pub(crate) fn same_object<C: Carrier>(a: &Arc<C>, b: &Arc<C>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Small union-find over cell indices, used by every quotient.
#[derive(Clone, Debug)]
pub(crate) struct Partition {
    parent: Vec<usize>,
}

impl Partition {
    pub(crate) fn new(n: usize) -> Self {
        Partition {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // the smaller index stays the root so classes keep their first member
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }

    /// Class of each element, numbered by first occurrence.
    pub(crate) fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut number = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if number[r] == usize::MAX {
                number[r] = count;
                count += 1;
            }
            out.push(number[r]);
        }
        (out, count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{fixtures as aut_fixtures, i_otimes, i_s, RelAutomaton};
    use crate::blowup::{blowup, brick_generators};
    use crate::pcs::{brick, fixtures as pcs_fixtures, RelPcs};
    use crate::words::BrickIndex;

    /// Every cell map, kept when the checked constructor accepts it.
    fn naive_homs<C: Carrier>(x: &Arc<C>, y: &Arc<C>) -> Vec<Vec<usize>> {
        let (n, m) = (x.cell_count(), y.cell_count());
        let mut out = Vec::new();
        if n > 0 && m == 0 {
            return out;
        }
        let mut map = vec![0; n];
        loop {
            if Morphism::new(x.clone(), y.clone(), map.clone()).is_ok() {
                out.push(map.clone());
            }
            let mut k = 0;
            while k < n {
                map[k] += 1;
                if map[k] < m {
                    break;
                }
                map[k] = 0;
                k += 1;
            }
            if k == n {
                return out;
            }
        }
    }

    fn sorted<C: Carrier>(ms: Vec<Morphism<C>>) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = ms.into_iter().map(|m| m.map().to_vec()).collect();
        v.sort();
        v
    }

    fn check_hom_oracle<C: Carrier>(objects: &[Arc<C>]) -> usize {
        let mut pairs = 0;
        for x in objects.iter().filter(|x| x.cell_count() <= 4) {
            for y in objects.iter().filter(|y| y.cell_count() <= 6) {
                let mut naive = naive_homs(x, y);
                naive.sort();
                assert_eq!(sorted(hom_enumerate(x, y)), naive, "{x:?} -> {y:?}");
                pairs += 1;
            }
        }
        pairs
    }

    fn pcs_objects() -> Vec<Arc<RelPcs>> {
        pcs_fixtures::all()
            .into_iter()
            .map(|f| Arc::new(f.pcs))
            .collect()
    }

    fn aut_objects() -> Vec<Arc<RelAutomaton>> {
        aut_fixtures::all()
            .into_iter()
            .map(|f| Arc::new(f.automaton))
            .collect()
    }

    #[test]
    fn hom_search_matches_exhaustive_filter() {
        assert!(check_hom_oracle(&pcs_objects()) > 100);
        assert!(check_hom_oracle(&aut_objects()) > 100);
    }

    #[test]
    fn composites_of_homs_are_homs() {
        let objects: Vec<Arc<RelPcs>> =
            pcs_objects().into_iter().filter(|p| p.len() <= 4).collect();
        for x in &objects {
            for y in &objects {
                for f in hom_enumerate(x, y) {
                    for z in &objects {
                        for g in hom_enumerate(y, z) {
                            assert!(f.then(&g).unwrap().is_valid());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn empty_quotient_is_the_identity() {
        for p in pcs_objects() {
            let q = quotient(&p, &[]).unwrap();
            assert_eq!(**q.target(), *p);
            assert!(q.is_iso());
        }
    }

    /// Cocones under `A <-f- C -g-> B` into `z` biject with maps out of the
    /// pushout.
    fn pushout_is_universal<C: Carrier>(f: &Morphism<C>, g: &Morphism<C>, tests: &[Arc<C>]) {
        let po = pushout(f, g).unwrap();
        for z in tests {
            let mut cocones = 0;
            for u in hom_enumerate(f.target(), z) {
                for v in hom_enumerate(g.target(), z) {
                    if f.then(&u).unwrap().map() == g.then(&v).unwrap().map() {
                        cocones += 1;
                        let out = induced(&[&po.left, &po.right], &[&u, &v]).unwrap();
                        assert_eq!(po.left.then(&out).unwrap().map(), u.map());
                        assert_eq!(po.right.then(&out).unwrap().map(), v.map());
                    }
                }
            }
            assert_eq!(hom_enumerate(&po.object, z).len(), cocones);
        }
    }

    #[test]
    fn pushouts_are_universal() {
        let b = brick(&"11".parse::<BrickIndex>().unwrap());
        let i = b.boundary_inclusion();
        let tests: Vec<Arc<RelPcs>> = [
            "torus",
            "one-square",
            "figure-eight",
            "circle",
            "pinched-square",
        ]
        .iter()
        .map(|n| Arc::new(pcs_fixtures::named(n).unwrap().pcs))
        .collect();
        pushout_is_universal(&i, &i, &tests);

        let ab: std::collections::BTreeSet<char> = ['a', 'b'].into();
        let t = i_otimes(&ab, 'a').arrow;
        pushout_is_universal(&t, &t, &aut_objects());
    }

    #[test]
    fn coproduct_injections_are_disjoint() {
        let objects = pcs_objects();
        let s = coproduct(&objects[3], &objects[4]);
        assert_eq!(s.object.len(), objects[3].len() + objects[4].len());
        assert!(s.left.is_injective() && s.right.is_injective());
        assert!(s.left.map().iter().all(|c| !s.right.map().contains(c)));
    }

    #[test]
    fn codiagonal_shapes() {
        for p in pcs_objects() {
            assert!(codiagonal(&Morphism::identity(p)).unwrap().is_iso());
        }
        let ab: std::collections::BTreeSet<char> = ['a', 'b'].into();
        let t = i_otimes(&ab, 'a').arrow;
        let nabla = codiagonal(&t).unwrap();
        let d = nabla.source();
        assert_eq!((d.state_count(), d.edge_count()), (2, 1));
        assert_eq!(d.edges()[0].targets.len(), 2);
        assert_eq!(nabla.target().edges()[0].targets.len(), 1);
        assert!(codiagonal(&nabla).unwrap().is_iso());
        assert!(codiagonal(&i_s(&ab, 'b').arrow).unwrap().is_iso());
    }

    #[test]
    fn lifts_against_isomorphisms_and_identities() {
        let torus = Arc::new(pcs_fixtures::named("one-square").unwrap().pcs);
        let res = blowup(&torus, 2).unwrap();
        let x = res.blowup.clone();
        let id = Morphism::identity(x.clone());
        let problem =
            LiftingProblem::new(id.clone(), res.beta.clone(), id.clone(), res.beta.clone())
                .unwrap();
        assert_eq!(solve_lifts(&problem).len(), 1);

        let b = brick(&"11".parse::<BrickIndex>().unwrap());
        let i = b.boundary_inclusion();
        for bottom in hom_enumerate(&b.object, &torus) {
            let top = i.then(&bottom).unwrap();
            let ident = Morphism::identity(torus.clone());
            let lifts =
                solve_lifts(&LiftingProblem::new(i.clone(), ident, top, bottom.clone()).unwrap());
            assert_eq!(lifts.len(), 1);
            assert_eq!(lifts[0].map(), bottom.map());
        }
    }

    #[test]
    fn torus_projection_has_unique_lifts() {
        let torus = Arc::new(pcs_fixtures::named("one-square").unwrap().pcs);
        let res = blowup(&torus, 2).unwrap();
        let gens = brick_generators(2);
        let report = unique_rlp(&res.beta, &gens);
        assert!(report.holds && report.squares > 0);
        let i11 = gens
            .positive
            .iter()
            .find(|g| g.name.contains("11"))
            .unwrap();
        for bottom in hom_enumerate(i11.arrow.target(), &torus) {
            for top in hom_enumerate(i11.arrow.source(), &res.blowup) {
                if top.then(&res.beta).unwrap().map() == i11.arrow.then(&bottom).unwrap().map() {
                    let q = LiftingProblem::new(
                        i11.arrow.clone(),
                        res.beta.clone(),
                        top,
                        bottom.clone(),
                    )
                    .unwrap();
                    assert_eq!(solve_lifts(&q).len(), 1);
                }
            }
        }
    }

    #[test]
    fn identity_of_the_empty_object_lifts_vacuously() {
        let empty = Arc::new(RelPcs::empty(2));
        let report = unique_rlp(&Morphism::identity(empty), &brick_generators(2));
        assert!(report.holds);
        assert_eq!(report.squares, 0);
    }
}
