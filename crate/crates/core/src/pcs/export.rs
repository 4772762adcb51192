//! DOT and TikZ drawings. Only relations that are not composites of other
//! stored relations are drawn.

use std::fmt::Write;

use super::RelPcs;
use crate::error::{malformed, Result};
use crate::words::{compose_words, CubeWord};

/// `(a, w, targets)` for every stored relation set, keeping only targets
/// not reachable through an intermediate cube.
fn covering(p: &RelPcs) -> Vec<(usize, CubeWord, Vec<usize>)> {
    let mut out = Vec::new();
    for a in 0..p.len() {
        for (w, targets) in p.faces_of(a) {
            let kept: Vec<usize> = targets
                .iter()
                .copied()
                .filter(|c| {
                    !p.faces_of(a).iter().any(|(g, bs)| {
                        bs.iter().any(|b| {
                            p.faces_of(*b).iter().any(|(g2, cs)| {
                                cs.contains(c) && compose_words(g2, g).is_ok_and(|x| &x == w)
                            })
                        })
                    })
                })
                .collect();
            if !kept.is_empty() {
                out.push((a, w.clone(), kept));
            }
        }
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One cluster per dimension, highest first; every relation set becomes a
/// point node with one incoming and several outgoing arrows.
pub fn to_dot(p: &RelPcs) -> String {
    let mut s = String::from("digraph pcs {\n  rankdir=TB;\n  node [shape=box];\n");
    let top = p.counts().len();
    for d in (0..top).rev() {
        let _ = writeln!(
            s,
            "  subgraph cluster_dim{d} {{\n    label=\"dimension {d}\";"
        );
        for c in p.cubes_of_dim(d) {
            let _ = writeln!(s, "    c{c} [label=\"{}\"];", escape(p.name(c)));
        }
        s.push_str("  }\n");
    }
    for (k, (a, w, targets)) in covering(p).into_iter().enumerate() {
        let _ = writeln!(s, "  r{k} [shape=point, xlabel=\"{w}\"];");
        let _ = writeln!(s, "  c{a} -> r{k} [arrowhead=none];");
        for t in targets {
            let _ = writeln!(s, "  r{k} -> c{t};");
        }
    }
    s.push_str("}\n");
    s
}

/// A layered drawing: dimension `d` on row `d`, arrows labelled by words.
pub fn to_tikz(p: &RelPcs) -> Result<String> {
    if p.dim_bound() > 2 || p.counts().len() > 3 {
        return Err(malformed(
            "TikZ export",
            "only dimensions up to 2 are drawn",
        ));
    }
    let mut s = String::from("\\begin{tikzpicture}[cube/.style={draw, rounded corners}]\n");
    for d in 0..p.counts().len() {
        let _ = writeln!(s, "  % dimension {d}");
        for (k, c) in p.cubes_of_dim(d).enumerate() {
            let _ = writeln!(
                s,
                "  \\node[cube] (c{c}) at ({}, {}) {{${}$}};",
                2 * k,
                2 * d,
                p.name(c).replace('-', "{-}")
            );
        }
    }
    for (a, w, targets) in covering(p) {
        for t in targets {
            let _ = writeln!(
                s,
                "  \\draw[->] (c{a}) -- node[midway, fill=white, font=\\tiny] {{${}$}} (c{t});",
                w.to_string().replace('-', "{-}")
            );
        }
    }
    s.push_str("\\end{tikzpicture}\n");
    Ok(s)
}
