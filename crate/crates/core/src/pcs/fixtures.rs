//! Small named precubical sets, each with its ambient dimension and whether
//! it is euclidean.

use super::{PcsBuilder, RelPcs};

pub struct Fixture {
    pub name: &'static str,
    pub n: usize,
    pub euclidean: bool,
    pub pcs: RelPcs,
}

fn build(n: usize, cubes: &[(&str, usize)], faces: &[(&str, &str, &str)]) -> RelPcs {
    let mut b = PcsBuilder::new(n);
    for (name, d) in cubes {
        b.cube(*name, *d).expect("distinct fixture names");
    }
    for (a, w, f) in faces {
        b.face(a, w, f).expect("fixture cells exist");
    }
    b.build().expect("fixtures are graded")
}

const SQUARE_SIDES: [&str; 4] = ["-0", "+0", "0-", "0+"];

fn fixture(name: &'static str, n: usize, euclidean: bool, pcs: RelPcs) -> Fixture {
    Fixture {
        name,
        n,
        euclidean,
        pcs,
    }
}

/// Every fixture, in a fixed order.
pub fn all() -> Vec<Fixture> {
    let torus_faces: Vec<(&str, &str, &str)> = SQUARE_SIDES
        .iter()
        .map(|w| ("c", *w, "e"))
        .chain([("e", "-", "v"), ("e", "+", "v")])
        .collect();
    vec![
        fixture("empty", 1, true, build(1, &[], &[])),
        fixture("lone-vertex", 1, false, build(1, &[("v", 0)], &[])),
        fixture(
            "interval",
            1,
            false,
            build(
                1,
                &[("s", 0), ("t", 0), ("e", 1)],
                &[("e", "-", "s"), ("e", "+", "t")],
            ),
        ),
        fixture("open-edge", 1, true, build(1, &[("e", 1)], &[])),
        fixture(
            "circle",
            1,
            true,
            build(
                1,
                &[("v", 0), ("e", 1)],
                &[("e", "-", "v"), ("e", "+", "v")],
            ),
        ),
        fixture(
            "y-graph",
            1,
            false,
            build(
                1,
                &[("v", 0), ("a", 1), ("b", 1), ("c", 1)],
                &[("a", "+", "v"), ("b", "-", "v"), ("c", "-", "v")],
            ),
        ),
        fixture(
            "figure-eight",
            1,
            false,
            build(
                1,
                &[("v", 0), ("a", 1), ("b", 1)],
                &[
                    ("a", "-", "v"),
                    ("a", "+", "v"),
                    ("b", "-", "v"),
                    ("b", "+", "v"),
                ],
            ),
        ),
        fixture(
            "path-2",
            1,
            false,
            build(
                1,
                &[("s", 0), ("m", 0), ("t", 0), ("a", 1), ("b", 1)],
                &[
                    ("a", "-", "s"),
                    ("a", "+", "m"),
                    ("b", "-", "m"),
                    ("b", "+", "t"),
                ],
            ),
        ),
        fixture(
            "open-path",
            1,
            true,
            build(
                1,
                &[("v", 0), ("a", 1), ("b", 1)],
                &[("a", "+", "v"), ("b", "-", "v")],
            ),
        ),
        fixture(
            "two-cycle",
            1,
            true,
            build(
                1,
                &[("u", 0), ("v", 0), ("a", 1), ("b", 1)],
                &[
                    ("a", "-", "u"),
                    ("a", "+", "v"),
                    ("b", "-", "v"),
                    ("b", "+", "u"),
                ],
            ),
        ),
        fixture(
            "forked-edge",
            1,
            false,
            build(
                1,
                &[("s", 0), ("t1", 0), ("t2", 0), ("e", 1)],
                &[("e", "-", "s"), ("e", "+", "t1"), ("e", "+", "t2")],
            ),
        ),
        fixture(
            "half-open-edge",
            1,
            false,
            build(1, &[("v", 0), ("e", 1)], &[("e", "+", "v")]),
        ),
        fixture(
            "double-edge",
            1,
            false,
            build(
                1,
                &[("u", 0), ("v", 0), ("a", 1), ("b", 1)],
                &[
                    ("a", "-", "u"),
                    ("a", "+", "v"),
                    ("b", "-", "u"),
                    ("b", "+", "v"),
                ],
            ),
        ),
        fixture(
            "relational-loop",
            1,
            false,
            build(
                1,
                &[("v", 0), ("w", 0), ("e", 1)],
                &[("e", "-", "v"), ("e", "+", "v"), ("e", "+", "w")],
            ),
        ),
        fixture(
            "one-square",
            2,
            false,
            build(2, &[("v", 0), ("e", 1), ("c", 2)], &torus_faces),
        ),
        fixture("open-square", 2, true, build(2, &[("c", 2)], &[])),
        fixture(
            "square-open-sides",
            2,
            false,
            build(
                2,
                &[("a", 1), ("b", 1), ("l", 1), ("r", 1), ("c", 2)],
                &[
                    ("c", "-0", "a"),
                    ("c", "+0", "b"),
                    ("c", "0-", "l"),
                    ("c", "0+", "r"),
                ],
            ),
        ),
        fixture(
            "cylinder",
            2,
            true,
            build(
                2,
                &[("e", 1), ("c", 2)],
                &[("c", "-0", "e"), ("c", "+0", "e")],
            ),
        ),
        fixture(
            "punctured-torus",
            2,
            false,
            build(
                2,
                &[("e", 1), ("c", 2)],
                &SQUARE_SIDES.map(|w| ("c", w, "e")),
            ),
        ),
        fixture(
            "torus",
            2,
            true,
            build(
                2,
                &[("v", 0), ("e1", 1), ("e2", 1), ("c", 2)],
                &[
                    ("c", "-0", "e1"),
                    ("c", "+0", "e1"),
                    ("c", "0-", "e2"),
                    ("c", "0+", "e2"),
                    ("e1", "-", "v"),
                    ("e1", "+", "v"),
                    ("e2", "-", "v"),
                    ("e2", "+", "v"),
                ],
            ),
        ),
        fixture(
            "pinched-square",
            2,
            false,
            build(
                2,
                &[("v", 0), ("a", 1), ("b", 1), ("l", 1), ("r", 1), ("c", 2)],
                &[
                    ("c", "-0", "a"),
                    ("c", "+0", "b"),
                    ("c", "0-", "l"),
                    ("c", "0+", "r"),
                    ("a", "-", "v"),
                    ("a", "+", "v"),
                    ("b", "-", "v"),
                    ("b", "+", "v"),
                    ("l", "-", "v"),
                    ("l", "+", "v"),
                    ("r", "-", "v"),
                    ("r", "+", "v"),
                ],
            ),
        ),
        fixture(
            "strip",
            2,
            true,
            build(
                2,
                &[("e", 1), ("c1", 2), ("c2", 2)],
                &[("c1", "+0", "e"), ("c2", "-0", "e")],
            ),
        ),
        fixture(
            "folded-strip",
            2,
            false,
            build(
                2,
                &[("e", 1), ("c1", 2), ("c2", 2)],
                &[("c1", "+0", "e"), ("c2", "+0", "e")],
            ),
        ),
        fixture("empty-2", 2, true, build(2, &[], &[])),
        fixture("lone-vertex-2", 2, false, build(2, &[("v", 0)], &[])),
        fixture(
            "interval-2",
            2,
            false,
            build(
                2,
                &[("s", 0), ("t", 0), ("e", 1)],
                &[("e", "-", "s"), ("e", "+", "t")],
            ),
        ),
        fixture(
            "circle-2",
            2,
            false,
            build(
                2,
                &[("v", 0), ("e", 1)],
                &[("e", "-", "v"), ("e", "+", "v")],
            ),
        ),
    ]
}

/// The fixture called `name`.
pub fn named(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
