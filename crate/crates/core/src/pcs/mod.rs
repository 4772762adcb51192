//! Finite relational precubical sets.
//!
//! A [`RelPcs`] is a graded set of cubes together with, for every cube `a`
//! and every cube word `g: m → dim(a)` of positive degree, a set of
//! `m`-cubes `b` with `a →_g b` ("`b` is a `g`-face of `a`"). Identity
//! relations are implicit. Relations are stored extensionally for every
//! word, and a well-formed object is closed under composition of relations.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::toolkit::{Carrier, Morphism};
use crate::words::{compose_words, CubeWord};

mod construct;
mod euclid;
pub mod export;
pub mod fixtures;
mod json;

pub use construct::{
    brick, interval_v0, interval_v1, iota, tensor, tensor_all, upward, Brick, Upward,
};
pub use euclid::{euclidean_check, is_local_embedding, Chart, EuclidReport, LocalEmbeddingWitness};
pub use json::PcsJson;

pub type PcsMorphism = Morphism<RelPcs>;

/// A finite relational precubical set. Cells are kept grouped by dimension.
#[derive(Clone)]
pub struct RelPcs {
    dim_bound: usize,
    names: Vec<String>,
    dims: Vec<usize>,
    faces: Vec<BTreeMap<CubeWord, BTreeSet<usize>>>,
    index: HashMap<String, usize>,
}

impl PartialEq for RelPcs {
    fn eq(&self, other: &Self) -> bool {
        self.dim_bound == other.dim_bound
            && self.names == other.names
            && self.dims == other.dims
            && self.faces == other.faces
    }
}

impl fmt::Debug for RelPcs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for c in 0..self.len() {
            let faces: Vec<String> = self.faces[c]
                .iter()
                .map(|(w, bs)| {
                    let ts: Vec<&str> = bs.iter().map(|b| self.names[*b].as_str()).collect();
                    format!("{w}:{}", ts.join(","))
                })
                .collect();
            m.entry(
                &format!("{}@{}", self.names[c], self.dims[c]),
                &faces.join(" "),
            );
        }
        m.finish()
    }
}

/// Why an object fails to be a relational precubical set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// A stored relation whose word does not fit the dimensions.
    Grading {
        cube: String,
        word: String,
        face: String,
        reason: String,
    },
    /// `cube →_word face` is implied by composition but missing.
    Closure {
        cube: String,
        word: String,
        face: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Grading {
                cube,
                word,
                face,
                reason,
            } => write!(f, "grading: {cube} --{word}--> {face}: {reason}"),
            Violation::Closure { cube, word, face } => {
                write!(
                    f,
                    "closure: {cube} --{word}--> {face} is implied but missing"
                )
            }
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        match v {
            Violation::Grading { reason, .. } => Error::Grading(reason),
            Violation::Closure { cube, word, face } => Error::Laxity { cube, word, face },
        }
    }
}

/// Accumulates cubes and relations in any order.
#[derive(Clone, Debug, Default)]
pub struct PcsBuilder {
    dim_bound: usize,
    cells: Vec<(String, usize)>,
    index: HashMap<String, usize>,
    faces: Vec<(usize, CubeWord, usize)>,
}

impl PcsBuilder {
    pub fn new(dim_bound: usize) -> Self {
        PcsBuilder {
            dim_bound,
            ..Default::default()
        }
    }

    pub fn cube(&mut self, name: impl Into<String>, dim: usize) -> Result<usize> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateCell(name));
        }
        let id = self.cells.len();
        self.index.insert(name.clone(), id);
        self.cells.push((name, dim));
        Ok(id)
    }

    pub fn id(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownCell(name.to_string()))
    }

    /// Records `cube →_word face` by builder ids, unchecked.
    pub fn relate(&mut self, cube: usize, word: CubeWord, face: usize) {
        self.faces.push((cube, word, face));
    }

    pub fn face(&mut self, cube: &str, word: &str, face: &str) -> Result<()> {
        let (a, b) = (self.id(cube)?, self.id(face)?);
        self.relate(a, word.parse()?, b);
        Ok(())
    }

    /// The object exactly as recorded, possibly not closed or graded.
    pub fn build_raw(self) -> RelPcs {
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        order.sort_by_key(|c| self.cells[*c].1);
        let mut position = vec![0; order.len()];
        for (k, c) in order.iter().enumerate() {
            position[*c] = k;
        }
        let mut obj = RelPcs::empty(self.dim_bound);
        for c in &order {
            let (name, dim) = &self.cells[*c];
            obj.push_cell(name.clone(), *dim);
        }
        for (a, w, b) in self.faces {
            obj.faces[position[a]]
                .entry(w)
                .or_default()
                .insert(position[b]);
        }
        obj
    }

    /// Checks grading and closes the recorded relations under composition.
    pub fn build(self) -> Result<RelPcs> {
        let mut obj = self.build_raw();
        obj.check_grading().map_err(Error::from)?;
        obj.saturate();
        Ok(obj)
    }
}

impl RelPcs {
    pub fn empty(dim_bound: usize) -> Self {
        RelPcs {
            dim_bound,
            names: Vec::new(),
            dims: Vec::new(),
            faces: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn push_cell(&mut self, name: String, dim: usize) -> usize {
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.dims.push(dim);
        self.faces.push(BTreeMap::new());
        id
    }

    pub fn dim_bound(&self) -> usize {
        self.dim_bound
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, c: usize) -> &str {
        &self.names[c]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dim(&self, c: usize) -> usize {
        self.dims[c]
    }

    pub fn id(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownCell(name.to_string()))
    }

    /// Cubes of dimension `d`.
    pub fn cubes_of_dim(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |c| self.dims[*c] == d)
    }

    /// Number of cubes per dimension `0..=max`.
    pub fn counts(&self) -> Vec<usize> {
        let top = self.dims.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![0; top];
        for d in &self.dims {
            out[*d] += 1;
        }
        out
    }

    /// Stored relations of cube `a`, by word.
    pub fn faces_of(&self, a: usize) -> &BTreeMap<CubeWord, BTreeSet<usize>> {
        &self.faces[a]
    }

    /// `faces(a, g)`, with the identity word answered by reflexivity.
    pub fn faces_at(&self, a: usize, g: &CubeWord) -> BTreeSet<usize> {
        if g.is_identity() && g.codomain_dim() == self.dims[a] {
            return BTreeSet::from([a]);
        }
        self.faces[a].get(g).cloned().unwrap_or_default()
    }

    /// Whether `a →_g b`, including identities.
    pub fn related(&self, a: usize, g: &CubeWord, b: usize) -> bool {
        if g.is_identity() {
            return a == b && g.codomain_dim() == self.dims[a];
        }
        self.faces[a].get(g).is_some_and(|s| s.contains(&b))
    }

    /// Every stored `(a, g, b)`.
    pub fn relations(&self) -> impl Iterator<Item = (usize, &CubeWord, usize)> + '_ {
        self.faces.iter().enumerate().flat_map(|(a, m)| {
            m.iter()
                .flat_map(move |(w, bs)| bs.iter().map(move |b| (a, w, *b)))
        })
    }

    /// Cells `(d, f)` with `d →_f c`, `f` of positive degree.
    pub fn cofaces(&self, c: usize) -> Vec<(usize, CubeWord)> {
        let mut out = Vec::new();
        for (d, m) in self.faces.iter().enumerate() {
            for (w, bs) in m {
                if bs.contains(&c) {
                    out.push((d, w.clone()));
                }
            }
        }
        out
    }

    fn check_grading(&self) -> Result<(), Violation> {
        for (a, w, b) in self.relations() {
            let bad = |reason: String| Violation::Grading {
                cube: self.names[a].clone(),
                word: w.to_string(),
                face: self.names[b].clone(),
                reason,
            };
            if w.degree() == 0 {
                return Err(bad("identity words are implicit".into()));
            }
            if w.codomain_dim() != self.dims[a] {
                return Err(bad(format!(
                    "word of length {} on a {}-cube",
                    w.codomain_dim(),
                    self.dims[a]
                )));
            }
            if w.domain_dim() != self.dims[b] {
                return Err(bad(format!(
                    "word with domain {} reaches a {}-cube",
                    w.domain_dim(),
                    self.dims[b]
                )));
            }
        }
        for c in 0..self.len() {
            if self.dims[c] > self.dim_bound {
                return Err(Violation::Grading {
                    cube: self.names[c].clone(),
                    word: String::new(),
                    face: String::new(),
                    reason: format!(
                        "dimension {} exceeds dim_bound {}",
                        self.dims[c], self.dim_bound
                    ),
                });
            }
        }
        Ok(())
    }

    /// First missing composite `a →_{g∘g'} c` with `a →_g b →_{g'} c`.
    fn first_closure_gap(&self) -> Option<(usize, CubeWord, usize)> {
        for (a, g, b) in self.relations() {
            for (g2, cs) in &self.faces[b] {
                let h = compose_words(g2, g).expect("graded");
                for c in cs {
                    if !self.related(a, &h, *c) {
                        return Some((a, h, *c));
                    }
                }
            }
        }
        None
    }

    /// Grading and closure, with the first witness of failure.
    pub fn validate(&self) -> Result<(), Violation> {
        self.check_grading()?;
        match self.first_closure_gap() {
            None => Ok(()),
            Some((a, w, c)) => Err(Violation::Closure {
                cube: self.names[a].clone(),
                word: w.to_string(),
                face: self.names[c].clone(),
            }),
        }
    }

    /// Closes the relations under composition. Assumes grading holds.
    pub fn saturate(&mut self) {
        loop {
            let mut added = Vec::new();
            for (a, g, b) in self.relations() {
                for (g2, cs) in &self.faces[b] {
                    let h = compose_words(g2, g).expect("graded");
                    for c in cs {
                        if !self.related(a, &h, *c) {
                            added.push((a, h.clone(), *c));
                        }
                    }
                }
            }
            if added.is_empty() {
                return;
            }
            for (a, w, c) in added {
                self.faces[a].entry(w).or_default().insert(c);
            }
        }
    }

    /// Same object with cells renamed.
    pub fn renamed(&self, names: Vec<String>) -> Result<RelPcs> {
        assert_eq!(names.len(), self.len());
        let mut index = HashMap::new();
        for (k, n) in names.iter().enumerate() {
            if index.insert(n.clone(), k).is_some() {
                return Err(Error::DuplicateCell(n.clone()));
            }
        }
        Ok(RelPcs {
            names,
            index,
            ..self.clone()
        })
    }

    /// Sub-object on the cells with `keep[c]`, with every relation among them.
    pub fn restrict(&self, keep: &[bool]) -> (RelPcs, Vec<usize>) {
        let mut obj = RelPcs::empty(self.dim_bound);
        let mut kept = Vec::new();
        let mut new_id = vec![usize::MAX; self.len()];
        for c in 0..self.len() {
            if keep[c] {
                new_id[c] = obj.push_cell(self.names[c].clone(), self.dims[c]);
                kept.push(c);
            }
        }
        for (a, w, b) in self.relations() {
            if keep[a] && keep[b] {
                obj.faces[new_id[a]]
                    .entry(w.clone())
                    .or_default()
                    .insert(new_id[b]);
            }
        }
        (obj, kept)
    }

    fn fresh_name(&self, base: &str, taken: &HashMap<String, usize>) -> String {
        let mut name = base.to_string();
        while taken.contains_key(&name) || self.index.contains_key(&name) {
            name.push('\'');
        }
        name
    }
}

impl Carrier for RelPcs {
    type Rel = CubeWord;

    fn cell_count(&self) -> usize {
        self.len()
    }

    fn cell_name(&self, cell: usize) -> String {
        self.names[cell].clone()
    }

    fn admissible(&self, cell: usize, target: &Self, image: usize) -> bool {
        self.dims[cell] == target.dims[image]
    }

    fn incidences(&self) -> Vec<(usize, CubeWord, usize)> {
        self.relations()
            .map(|(a, w, b)| (a, w.clone(), b))
            .collect()
    }

    fn has_incidence(&self, a: usize, rel: &CubeWord, b: usize) -> bool {
        self.related(a, rel, b)
    }

    fn empty_like(&self) -> Self {
        RelPcs::empty(self.dim_bound)
    }

    fn coproduct(&self, other: &Self) -> (Self, Vec<usize>, Vec<usize>) {
        let mut obj = RelPcs::empty(self.dim_bound.max(other.dim_bound));
        let mut left = vec![0; self.len()];
        let mut right = vec![0; other.len()];
        let top = self.dims.iter().chain(&other.dims).copied().max();
        for d in 0..top.map_or(0, |t| t + 1) {
            for c in self.cubes_of_dim(d) {
                left[c] = obj.push_cell(self.names[c].clone(), d);
            }
            for c in other.cubes_of_dim(d) {
                let name = obj.fresh_name(&other.names[c], &self.index);
                right[c] = obj.push_cell(name, d);
            }
        }
        for (a, w, b) in self.relations() {
            obj.faces[left[a]]
                .entry(w.clone())
                .or_default()
                .insert(left[b]);
        }
        for (a, w, b) in other.relations() {
            obj.faces[right[a]]
                .entry(w.clone())
                .or_default()
                .insert(right[b]);
        }
        (obj, left, right)
    }

    fn glue(&self, classes: &[usize], class_count: usize) -> Result<Self> {
        let mut rep: Vec<Option<usize>> = vec![None; class_count];
        for (c, k) in classes.iter().enumerate() {
            match rep[*k] {
                None => rep[*k] = Some(c),
                Some(r) if self.dims[r] != self.dims[c] => {
                    return Err(Error::IncompatibleGlue(
                        self.names[r].clone(),
                        self.names[c].clone(),
                    ))
                }
                Some(_) => {}
            }
        }
        let mut obj = RelPcs::empty(self.dim_bound);
        for r in rep {
            let r = r.expect("classes are onto");
            obj.push_cell(self.names[r].clone(), self.dims[r]);
        }
        for (a, w, b) in self.relations() {
            obj.faces[classes[a]]
                .entry(w.clone())
                .or_default()
                .insert(classes[b]);
        }
        obj.saturate();
        Ok(obj)
    }

    fn search_key(&self, cell: usize) -> (usize, String) {
        (usize::MAX - self.dims[cell], self.names[cell].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcs::fixtures::named;
    use crate::toolkit::{hom_enumerate, quotient};
    use crate::words::BrickIndex;
    use std::sync::Arc;

    fn eps(s: &str) -> BrickIndex {
        s.parse().unwrap()
    }

    fn fixture(name: &str) -> Arc<RelPcs> {
        Arc::new(named(name).unwrap().pcs)
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut b = PcsBuilder::new(2);
        b.cube("a", 2).unwrap();
        b.cube("b", 1).unwrap();
        b.cube("c", 0).unwrap();
        b.face("a", "0-", "b").unwrap();
        b.face("b", "-", "c").unwrap();
        let p = b.build_raw();
        assert_eq!(
            p.validate(),
            Err(Violation::Closure {
                cube: "a".into(),
                word: "--".into(),
                face: "c".into(),
            })
        );
    }

    #[test]
    fn constructed_objects_validate() {
        assert_eq!(brick(&eps("11")).object.validate(), Ok(()));
        assert_eq!(fixture("one-square").validate(), Ok(()));
        assert_eq!(fixture("one-square").counts(), [1, 1, 1]);
    }

    #[test]
    fn tensor_counts() {
        let (v0, v1) = (interval_v0(), interval_v1());
        assert_eq!(tensor(&v0, &v0).counts(), [4, 4, 1]);
        assert_eq!(tensor(&v1, &v1).counts(), [9, 12, 4]);
        assert!(tensor(&v0, &RelPcs::empty(1)).is_empty());
    }

    #[test]
    fn upward_neighborhoods() {
        let square = Arc::new(tensor(&interval_v0(), &interval_v0()));
        let top = square.cubes_of_dim(2).next().unwrap();
        assert_eq!(upward(&square, top).object.counts(), [0, 0, 1]);

        let grid = Arc::new(tensor(&interval_v1(), &interval_v1()));
        let centre = grid.id("(c,c)").unwrap();
        let up = upward(&grid, centre);
        assert_eq!(up.object.counts(), [1, 4, 4]);
        assert!(up.projection.is_valid());

        let circle = fixture("circle");
        let up = upward(&circle, circle.id("v").unwrap());
        assert_eq!(up.object.counts(), [1, 2]);
        let words: BTreeSet<String> = up.pairs.iter().map(|(_, f)| f.to_string()).collect();
        assert_eq!(words, ["", "-", "+"].map(String::from).into());
    }

    #[test]
    fn brick_shapes() {
        assert_eq!(brick(&eps("00")).object.counts(), [0, 0, 1]);
        assert_eq!(brick(&eps("11")).object.counts(), [1, 4, 4]);
        assert_eq!(brick(&eps("10")).object.counts(), [0, 1, 2]);
        let b = brick(&eps("10"));
        assert_eq!(b.object.dim(b.min()), 1);
    }

    #[test]
    fn every_brick_maps_uniquely_to_the_torus() {
        let torus = fixture("one-square");
        for e in BrickIndex::all(2) {
            assert_eq!(hom_enumerate(&brick(&e).object, &torus).len(), 1, "{e}");
        }
    }

    #[test]
    fn hom_counts_with_no_maps() {
        let open_square = brick(&eps("00")).object;
        assert!(hom_enumerate(&open_square, &Arc::new(RelPcs::empty(2))).is_empty());
        let b1 = brick(&eps("1")).object;
        assert!(hom_enumerate(&b1, &fixture("interval")).is_empty());
    }

    #[test]
    fn folding_two_edges_into_the_centre_is_not_a_local_embedding() {
        let b = brick(&eps("11"));
        let min = b.min();
        let plus: CubeWord = "+".parse().unwrap();
        let ends: Vec<usize> = b
            .object
            .cubes_of_dim(1)
            .filter(|e| b.object.faces_at(*e, &plus).contains(&min))
            .collect();
        assert_eq!(ends.len(), 2);
        let fold = quotient(&b.object, &[(ends[0], ends[1])]).unwrap();
        let w = is_local_embedding(&fold).unwrap_err();
        assert_eq!(
            (w.word.as_str(), w.face.as_str()),
            ("+", b.object.name(min))
        );

        let id = PcsMorphism::identity(b.object.clone());
        assert_eq!(is_local_embedding(&id), Ok(()));
        assert_eq!(is_local_embedding(&b.boundary_inclusion()), Ok(()));
    }

    #[test]
    fn euclidean_examples() {
        assert!(euclidean_check(&fixture("circle"), 1).euclidean);
        let y = euclidean_check(&fixture("y-graph"), 1);
        assert!(!y.euclidean);
        assert_eq!(y.counterexample.as_deref(), Some("v"));
    }

    #[test]
    fn punctured_bricks_are_euclidean() {
        for n in 1..=2 {
            for e in BrickIndex::all(n) {
                let inclusion = brick(&e).boundary_inclusion();
                let report = euclidean_check(inclusion.source(), n);
                assert!(report.euclidean, "{e}");
                assert_eq!(report.charts.len(), inclusion.source().len());
            }
        }
    }
}
