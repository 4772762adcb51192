use std::collections::HashMap;
use std::sync::Arc;

use super::{Carrier, Morphism};

#[derive(Clone, Copy)]
enum Direction {
    /// the other cell is an `r`-face of the one being placed
    Face,
    /// the cell being placed is an `r`-face of the other cell
    Coface,
}

/// Backtracking enumeration of the morphisms between two finite objects.
///
/// Cells are placed in an order that follows incidences from already placed
/// cells, so the candidates of a cell are read off the target's incidence
/// index instead of scanning every cell. Results come out in canonical
/// order: lexicographic in the images of the source cells sorted by
/// [`Carrier::search_key`].
pub struct HomSearch<'a, C: Carrier> {
    source: &'a C,
    target: &'a C,
    allowed: Vec<Vec<bool>>,
    injective: bool,
    /// `(a, b)`: the image of `a` must be smaller than the image of `b`
    increasing: Vec<(usize, usize)>,
    limit: Option<usize>,
}

impl<'a, C: Carrier> HomSearch<'a, C> {
    pub fn new(source: &'a C, target: &'a C) -> Self {
        let allowed = (0..source.cell_count())
            .map(|c| {
                (0..target.cell_count())
                    .map(|t| source.admissible(c, target, t))
                    .collect()
            })
            .collect();
        HomSearch {
            source,
            target,
            allowed,
            injective: false,
            increasing: Vec::new(),
            limit: None,
        }
    }

    /// Restricts the images of `cell` to `images`.
    pub fn restrict(mut self, cell: usize, images: &[usize]) -> Self {
        let mut keep = vec![false; self.target.cell_count()];
        for i in images {
            keep[*i] = true;
        }
        for (slot, k) in self.allowed[cell].iter_mut().zip(keep) {
            *slot &= k;
        }
        self
    }

    /// Restricts every cell at once; `domains[c]` lists the admissible images of `c`.
    pub fn with_domains(mut self, domains: &[Vec<usize>]) -> Self {
        for (c, d) in domains.iter().enumerate() {
            self = self.restrict(c, d);
        }
        self
    }

    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Requires the images of each group, in the listed order, to be strictly
    /// increasing.
    pub fn increasing(mut self, groups: &[Vec<usize>]) -> Self {
        for g in groups {
            self.increasing.extend(g.windows(2).map(|w| (w[0], w[1])));
        }
        self
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    /// Every morphism, as cell maps in canonical order.
    pub fn maps(self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let limit = self.limit;
        self.run(&mut |m| {
            out.push(m.to_vec());
            limit.is_none_or(|l| out.len() < l)
        });
        let src_order = sorted_cells(self.source);
        let mut tgt_rank = vec![0; self.target.cell_count()];
        for (pos, c) in sorted_cells(self.target).into_iter().enumerate() {
            tgt_rank[c] = pos;
        }
        out.sort_by_cached_key(|m| {
            src_order
                .iter()
                .map(|c| tgt_rank[m[*c]])
                .collect::<Vec<_>>()
        });
        out
    }

    pub fn count(self) -> usize {
        let mut n = 0;
        let limit = self.limit;
        self.run(&mut |_| {
            n += 1;
            limit.is_none_or(|l| n < l)
        });
        n
    }

    pub fn exists(self) -> bool {
        self.limit(1).count() > 0
    }

    /// Visits morphisms until `visit` returns `false`.
    pub fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let n = self.source.cell_count();
        if n == 0 {
            visit(&[]);
            return;
        }
        if self.allowed.iter().any(|row| !row.contains(&true)) {
            return;
        }

        let mut forward: HashMap<(usize, C::Rel), Vec<usize>> = HashMap::new();
        let mut backward: HashMap<(usize, C::Rel), Vec<usize>> = HashMap::new();
        for (a, r, b) in self.target.incidences() {
            forward.entry((a, r.clone())).or_default().push(b);
            backward.entry((b, r)).or_default().push(a);
        }

        let mut around: Vec<Vec<(usize, C::Rel, Direction)>> = vec![Vec::new(); n];
        for (a, r, b) in self.source.incidences() {
            around[a].push((b, r.clone(), Direction::Face));
            around[b].push((a, r, Direction::Coface));
        }

        let order = self.placement_order(&around);
        let mut position = vec![0; n];
        for (k, c) in order.iter().enumerate() {
            position[*c] = k;
        }
        let constraints: Vec<Vec<(usize, C::Rel, Direction)>> = order
            .iter()
            .map(|c| {
                around[*c]
                    .iter()
                    .filter(|(other, _, _)| position[*other] < position[*c])
                    .cloned()
                    .collect()
            })
            .collect();

        let all: Vec<Vec<usize>> = self
            .allowed
            .iter()
            .map(|row| (0..row.len()).filter(|t| row[*t]).collect())
            .collect();

        // per cell: (other, whether this cell's image must be the larger)
        let mut ordered: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for (a, b) in &self.increasing {
            ordered[*a].push((*b, false));
            ordered[*b].push((*a, true));
        }

        let mut state = SearchState {
            assign: vec![usize::MAX; n],
            used: vec![false; self.target.cell_count()],
            stop: false,
        };
        let ctx = Context {
            search: self,
            order: &order,
            constraints: &constraints,
            ordered: &ordered,
            forward: &forward,
            backward: &backward,
            all: &all,
        };
        ctx.descend(0, &mut state, visit);
    }

    fn placement_order(&self, around: &[Vec<(usize, C::Rel, Direction)>]) -> Vec<usize> {
        let n = self.source.cell_count();
        let keys: Vec<(usize, String)> = (0..n).map(|c| self.source.search_key(c)).collect();
        let sizes: Vec<usize> = self
            .allowed
            .iter()
            .map(|row| row.iter().filter(|b| **b).count())
            .collect();
        let mut placed = vec![false; n];
        let mut connected = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|c| !placed[*c])
                .min_by_key(|c| (!connected[*c], keys[*c].0, sizes[*c], &keys[*c].1))
                .expect("cells remain");
            placed[next] = true;
            order.push(next);
            for (other, _, _) in &around[next] {
                connected[*other] = true;
            }
        }
        order
    }
}

struct SearchState {
    assign: Vec<usize>,
    used: Vec<bool>,
    stop: bool,
}

struct Context<'s, 'a, C: Carrier> {
    search: &'s HomSearch<'a, C>,
    order: &'s [usize],
    constraints: &'s [Vec<(usize, C::Rel, Direction)>],
    ordered: &'s [Vec<(usize, bool)>],
    forward: &'s HashMap<(usize, C::Rel), Vec<usize>>,
    backward: &'s HashMap<(usize, C::Rel), Vec<usize>>,
    all: &'s [Vec<usize>],
}

impl<C: Carrier> Context<'_, '_, C> {
    fn descend(&self, k: usize, st: &mut SearchState, visit: &mut dyn FnMut(&[usize]) -> bool) {
        if k == self.order.len() {
            if !visit(&st.assign) {
                st.stop = true;
            }
            return;
        }
        let cell = self.order[k];
        let cons = &self.constraints[k];
        let empty = Vec::new();
        let pool: &Vec<usize> = match cons.first() {
            Some((other, r, Direction::Face)) => self
                .backward
                .get(&(st.assign[*other], r.clone()))
                .unwrap_or(&empty),
            Some((other, r, Direction::Coface)) => self
                .forward
                .get(&(st.assign[*other], r.clone()))
                .unwrap_or(&empty),
            None => &self.all[cell],
        };
        let target = self.search.target;
        let allowed = &self.search.allowed[cell];
        for &x in pool {
            if !allowed[x] || (self.search.injective && st.used[x]) {
                continue;
            }
            let in_order = self.ordered[cell].iter().all(|(other, larger)| {
                let y = st.assign[*other];
                y == usize::MAX || if *larger { x > y } else { x < y }
            });
            if !in_order {
                continue;
            }
            let fits = cons.iter().skip(1).all(|(other, r, dir)| match dir {
                Direction::Face => target.has_incidence(x, r, st.assign[*other]),
                Direction::Coface => target.has_incidence(st.assign[*other], r, x),
            });
            if !fits {
                continue;
            }
            st.assign[cell] = x;
            st.used[x] = true;
            self.descend(k + 1, st, visit);
            st.used[x] = false;
            if st.stop {
                break;
            }
        }
        st.assign[cell] = usize::MAX;
    }
}

fn sorted_cells<C: Carrier>(obj: &C) -> Vec<usize> {
    let mut cells: Vec<usize> = (0..obj.cell_count()).collect();
    cells.sort_by_cached_key(|c| obj.search_key(*c));
    cells
}

/// All morphisms `source → target`, in canonical order.
pub fn hom_enumerate<C: Carrier>(source: &Arc<C>, target: &Arc<C>) -> Vec<Morphism<C>> {
    HomSearch::new(&**source, &**target)
        .maps()
        .into_iter()
        .map(|m| Morphism::new_unchecked(source.clone(), target.clone(), m))
        .collect()
}

/// Some isomorphism `a → b`, if one exists.
pub fn find_isomorphism<C: Carrier>(a: &Arc<C>, b: &Arc<C>) -> Option<Morphism<C>> {
    if a.cell_count() != b.cell_count() {
        return None;
    }
    let mut found = None;
    HomSearch::new(&**a, &**b).injective().run(&mut |m| {
        let f = Morphism::new_unchecked(a.clone(), b.clone(), m.to_vec());
        if f.is_iso() {
            found = Some(f);
            false
        } else {
            true
        }
    });
    found
}

/// Whether the arrows `f1: A1 → B1` and `f2: A2 → B2` are isomorphic in the
/// arrow category: there are isos `φ: A1 → A2` and `ψ: B1 → B2` with
/// `f2 ∘ φ = ψ ∘ f1`.
pub fn arrows_isomorphic<C: Carrier>(f1: &Morphism<C>, f2: &Morphism<C>) -> bool {
    let (a1, b1) = (f1.source(), f1.target());
    let (a2, b2) = (f2.source(), f2.target());
    if a1.cell_count() != a2.cell_count() || b1.cell_count() != b2.cell_count() {
        return false;
    }
    let mut found = false;
    HomSearch::new(&**b1, &**b2).injective().run(&mut |psi| {
        let psi_m = Morphism::new_unchecked(b1.clone(), b2.clone(), psi.to_vec());
        if !psi_m.is_iso() {
            return true;
        }
        let domains: Vec<Vec<usize>> = (0..a1.cell_count())
            .map(|x| {
                let want = psi[f1.apply(x)];
                (0..a2.cell_count())
                    .filter(|y| f2.apply(*y) == want)
                    .collect()
            })
            .collect();
        HomSearch::new(&**a1, &**a2)
            .with_domains(&domains)
            .injective()
            .run(&mut |phi| {
                let phi_m = Morphism::new_unchecked(a1.clone(), a2.clone(), phi.to_vec());
                if phi_m.is_iso() {
                    found = true;
                }
                !found
            });
        !found
    });
    found
}

/// Memoised isomorphism tests between small objects.
#[derive(Default)]
pub struct IsoCache {
    memo: HashMap<(String, String), bool>,
}

impl IsoCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn isomorphic<C: Carrier>(&mut self, a: &Arc<C>, b: &Arc<C>) -> bool {
        let key = (format!("{a:?}"), format!("{b:?}"));
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let v = find_isomorphism(a, b).is_some();
        self.memo.insert(key, v);
        v
    }
}
