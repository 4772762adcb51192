use std::sync::Arc;

use super::{PcsBuilder, PcsMorphism, RelPcs};
use crate::error::Result;
use crate::words::{compose_words, d_epsilon, BrickIndex, CubeWord, DEpsilonElement, DLetter};

/// Cells of a tensor product as tuples of factor cells, in output order.
fn tensor_with_tuples(factors: &[&RelPcs]) -> (RelPcs, Vec<Vec<usize>>) {
    let dim_bound = factors.iter().map(|f| f.dim_bound()).sum();
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for f in factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..f.len()).map(move |c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    let mut b = PcsBuilder::new(dim_bound);
    let mut ids = std::collections::HashMap::new();
    for t in &tuples {
        let name = format!(
            "({})",
            t.iter()
                .zip(factors)
                .map(|(c, f)| f.name(*c))
                .collect::<Vec<_>>()
                .join(",")
        );
        let dim = t.iter().zip(factors).map(|(c, f)| f.dim(*c)).sum();
        let id = b.cube(name, dim).expect("tuple names are distinct");
        ids.insert(t.clone(), id);
    }
    for t in &tuples {
        // per factor: the identity, or any stored face
        let mut options: Vec<Vec<(CubeWord, usize)>> = Vec::new();
        for (c, f) in t.iter().zip(factors) {
            let mut o = vec![(CubeWord::identity(f.dim(*c)), *c)];
            for (w, bs) in f.faces_of(*c) {
                o.extend(bs.iter().map(|b| (w.clone(), *b)));
            }
            options.push(o);
        }
        let mut partial: Vec<(CubeWord, Vec<usize>)> = vec![(CubeWord::default(), Vec::new())];
        for o in &options {
            partial = partial
                .into_iter()
                .flat_map(|(w, face)| {
                    o.iter().map(move |(w2, b)| {
                        let mut face = face.clone();
                        face.push(*b);
                        (w.concat(w2), face)
                    })
                })
                .collect();
        }
        for (w, face) in partial {
            if !w.is_identity() {
                b.relate(ids[t], w, ids[&face]);
            }
        }
    }
    let obj = b.build_raw();
    // build_raw regroups by dimension; recover the tuple of each final cell
    let mut out_tuples = vec![Vec::new(); tuples.len()];
    for t in tuples {
        let name = format!(
            "({})",
            t.iter()
                .zip(factors)
                .map(|(c, f)| f.name(*c))
                .collect::<Vec<_>>()
                .join(",")
        );
        let id = obj.id(&name).expect("present");
        out_tuples[id] = t;
    }
    (obj, out_tuples)
}

/// `P ⊗ Q`: cubes are pairs `(p,q)` of dimension `dim p + dim q`, and a word
/// acts on a pair by its first `dim p` letters on `p` and the rest on `q`.
pub fn tensor(p: &RelPcs, q: &RelPcs) -> RelPcs {
    tensor_all(&[p, q])
}

/// The n-ary tensor product, with cells named by flat tuples.
pub fn tensor_all(factors: &[&RelPcs]) -> RelPcs {
    tensor_with_tuples(factors).0
}

/// The upward neighborhood `↑c` with its projection `(d, f) ↦ d`.
pub struct Upward {
    pub object: Arc<RelPcs>,
    pub projection: PcsMorphism,
    /// `(d, f)` for every cell of `object`.
    pub pairs: Vec<(usize, CubeWord)>,
}

/// Cubes `(d, f)` with `d →_f c`, plus `(c, id)`; `(d', f∘g) →_g (d, f)`
/// whenever `d' →_g d`.
pub fn upward(p: &Arc<RelPcs>, c: usize) -> Upward {
    let mut pairs = vec![(c, CubeWord::identity(p.dim(c)))];
    pairs.extend(p.cofaces(c));
    let name = |(d, f): &(usize, CubeWord)| format!("{}|{}", p.name(*d), f);
    let mut b = PcsBuilder::new(p.dim_bound());
    let ids: Vec<usize> = pairs
        .iter()
        .map(|pair| {
            b.cube(name(pair), p.dim(pair.0))
                .expect("pairs are distinct")
        })
        .collect();
    for (hi, (d2, h)) in pairs.iter().enumerate() {
        for (lo, (d, f)) in pairs.iter().enumerate() {
            if p.dim(*d2) <= p.dim(*d) {
                continue;
            }
            for (g, targets) in p.faces_of(*d2) {
                if targets.contains(d)
                    && g.domain_dim() == p.dim(*d)
                    && compose_words(f, g).is_ok_and(|x| &x == h)
                {
                    b.relate(ids[hi], g.clone(), ids[lo]);
                }
            }
        }
    }
    let object = b.build_raw();
    let mut ordered = vec![(0, CubeWord::default()); pairs.len()];
    let mut map = vec![0; pairs.len()];
    for pair in pairs {
        let id = object.id(&name(&pair)).expect("present");
        map[id] = pair.0;
        ordered[id] = pair;
    }
    let object = Arc::new(object);
    Upward {
        projection: PcsMorphism::new_unchecked(object.clone(), p.clone(), map),
        object,
        pairs: ordered,
    }
}

/// `V_0`: the closed interval.
pub fn interval_v0() -> RelPcs {
    let mut b = PcsBuilder::new(1);
    for (n, d) in [("s", 0), ("t", 0), ("e", 1)] {
        b.cube(n, d).expect("distinct");
    }
    b.face("e", "-", "s").expect("present");
    b.face("e", "+", "t").expect("present");
    b.build().expect("graded")
}

/// `V_1`: two closed intervals `l`, `r` sharing the vertex `c`.
pub fn interval_v1() -> RelPcs {
    let mut b = PcsBuilder::new(1);
    for (n, d) in [("s", 0), ("c", 0), ("t", 0), ("l", 1), ("r", 1)] {
        b.cube(n, d).expect("distinct");
    }
    b.face("l", "-", "s").expect("present");
    b.face("l", "+", "c").expect("present");
    b.face("r", "-", "c").expect("present");
    b.face("r", "+", "t").expect("present");
    b.build().expect("graded")
}

/// A euclidean brick, with cells named by the elements of `D_ε`.
#[derive(Clone, Debug)]
pub struct Brick {
    pub eps: BrickIndex,
    pub object: Arc<RelPcs>,
    /// `D_ε` element of each cell.
    pub elements: Vec<DEpsilonElement>,
}

impl Brick {
    pub fn cell(&self, w: &DEpsilonElement) -> usize {
        self.object.id(&w.to_string()).expect("w ∈ D_ε")
    }

    /// The minimal cube, named `ε`.
    pub fn min(&self) -> usize {
        self.cell(&self.eps.max_element())
    }

    /// `B_ε ∖ {min}` and its inclusion `i_ε`.
    pub fn boundary_inclusion(&self) -> PcsMorphism {
        let min = self.min();
        let keep: Vec<bool> = (0..self.object.len()).map(|c| c != min).collect();
        let (sub, kept) = self.object.restrict(&keep);
        PcsMorphism::new_unchecked(Arc::new(sub), self.object.clone(), kept)
    }
}

/// `B_ε = ↑c(ε)` inside `⊗_i V_{ε_i}`, renamed by `D_ε`.
pub fn brick(eps: &BrickIndex) -> Brick {
    let (v0, v1) = (interval_v0(), interval_v1());
    let factors: Vec<&RelPcs> = eps
        .bits()
        .iter()
        .map(|b| if *b { &v1 } else { &v0 })
        .collect();
    let (ambient, tuples) = tensor_with_tuples(&factors);
    let centre: Vec<usize> = eps
        .bits()
        .iter()
        .map(|b| {
            if *b {
                v1.id("c").expect("present")
            } else {
                v0.id("e").expect("present")
            }
        })
        .collect();
    let c = tuples
        .iter()
        .position(|t| *t == centre)
        .expect("centre cell");
    let up = upward(&Arc::new(ambient), c);
    let letter = |bit: bool, name: &str| match (bit, name) {
        (false, _) => DLetter::Zero,
        (true, "c") => DLetter::One,
        (true, "l") => DLetter::Minus,
        (true, "r") => DLetter::Plus,
        _ => unreachable!("only cofaces of the centre occur"),
    };
    let elements: Vec<DEpsilonElement> = up
        .pairs
        .iter()
        .map(|(d, _)| {
            let letters = tuples[*d]
                .iter()
                .zip(eps.bits())
                .map(|(x, bit)| letter(*bit, if *bit { v1.name(*x) } else { v0.name(*x) }))
                .collect();
            DEpsilonElement::new(eps, letters).expect("cells of ↑c(ε) lie in D_ε")
        })
        .collect();
    debug_assert_eq!(elements.len(), d_epsilon(eps).len());
    let object = up
        .object
        .renamed(elements.iter().map(|w| w.to_string()).collect())
        .expect("D_ε names are distinct");
    Brick {
        eps: eps.clone(),
        object: Arc::new(object),
        elements,
    }
}

/// The inclusion `ι_w: B_{p(w)} → B_ε` from its cell formula.
pub fn iota(big: &Brick, small: &Brick, w: &DEpsilonElement) -> Result<PcsMorphism> {
    let map = small
        .elements
        .iter()
        .map(|u| Ok(big.cell(&crate::words::iota_cell(&big.eps, w, u)?)))
        .collect::<Result<Vec<_>>>()?;
    PcsMorphism::new(small.object.clone(), big.object.clone(), map)
}
