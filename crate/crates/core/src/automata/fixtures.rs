//! Small named automata, each with at most four states.

use super::RelAutomaton;

pub struct AutFixture {
    pub name: &'static str,
    pub automaton: RelAutomaton,
}

type StateSpec<'a> = (&'a str, bool, bool);
type EdgeSpec<'a> = (&'a str, char, &'a [&'a str], &'a [&'a str]);

fn build(alphabet: &str, states: &[StateSpec<'_>], edges: &[EdgeSpec<'_>]) -> RelAutomaton {
    let mut a = RelAutomaton::new(alphabet.chars());
    for (name, i, t) in states {
        a.add_state(*name, *i, *t).expect("distinct fixture names");
    }
    let ids = |names: &[&str]| {
        names
            .iter()
            .map(|n| a.state_id(n).expect("fixture states exist"))
            .collect::<Vec<_>>()
    };
    let resolved: Vec<_> = edges
        .iter()
        .map(|(name, l, s, t)| (*name, *l, ids(s), ids(t)))
        .collect();
    for (name, l, s, t) in resolved {
        a.add_edge(name, l, s, t).expect("valid fixture edge");
    }
    a
}

fn fixture(name: &'static str, automaton: RelAutomaton) -> AutFixture {
    AutFixture { name, automaton }
}

/// Every fixture, in a fixed order.
pub fn all() -> Vec<AutFixture> {
    vec![
        fixture("empty", build("ab", &[], &[])),
        fixture("initial", build("ab", &[("i", true, false)], &[])),
        fixture("initial-accepting", build("ab", &[("v", true, true)], &[])),
        fixture("isolated", build("ab", &[("s", false, false)], &[])),
        fixture(
            "intro-loops",
            build(
                "ab",
                &[("v", true, true)],
                &[("a", 'a', &["v"], &["v"]), ("b", 'b', &["v"], &["v"])],
            ),
        ),
        fixture(
            "a-loop",
            build("ab", &[("v", true, true)], &[("a", 'a', &["v"], &["v"])]),
        ),
        fixture(
            "path-a",
            build(
                "ab",
                &[("i", true, false), ("f", false, true)],
                &[("a", 'a', &["i"], &["f"])],
            ),
        ),
        fixture(
            "path-ab",
            build(
                "ab",
                &[
                    ("p0", true, false),
                    ("p1", false, false),
                    ("p2", false, true),
                ],
                &[("w0", 'a', &["p0"], &["p1"]), ("w1", 'b', &["p1"], &["p2"])],
            ),
        ),
        fixture(
            "cycle-ab",
            build(
                "ab",
                &[("u", true, false), ("v", false, true)],
                &[("x", 'a', &["u"], &["v"]), ("y", 'b', &["v"], &["u"])],
            ),
        ),
        fixture(
            "two-initial",
            build(
                "ab",
                &[
                    ("i1", true, false),
                    ("i2", true, false),
                    ("f1", false, true),
                    ("f2", false, true),
                ],
                &[("x", 'a', &["i1"], &["f1"]), ("y", 'b', &["i2"], &["f2"])],
            ),
        ),
        fixture(
            "bare-edge",
            build("ab", &[("v", false, true)], &[("e", 'a', &[], &["v"])]),
        ),
        fixture(
            "relational-fork",
            build(
                "ab",
                &[("i", true, false), ("m", false, false), ("f", false, true)],
                &[("e", 'a', &["i"], &["m", "f"]), ("g", 'b', &["m"], &["f"])],
            ),
        ),
        fixture(
            "relational-merge",
            build(
                "ab",
                &[("i", true, false), ("j", true, true), ("f", false, true)],
                &[("e", 'a', &["i", "j"], &["f"]), ("g", 'a', &["f"], &["j"])],
            ),
        ),
        fixture(
            "sourceless",
            build(
                "ab",
                &[("i", true, false), ("f", false, true)],
                &[("e", 'a', &[], &["f"]), ("g", 'b', &["i"], &[])],
            ),
        ),
        fixture(
            "double-a",
            build(
                "ab",
                &[("u", true, false), ("v", false, true)],
                &[("x", 'a', &["u"], &["v"]), ("y", 'a', &["u"], &["v"])],
            ),
        ),
        fixture(
            "square",
            build(
                "ab",
                &[
                    ("s", true, false),
                    ("l", false, false),
                    ("r", false, false),
                    ("t", false, true),
                ],
                &[
                    ("x", 'a', &["s"], &["l"]),
                    ("y", 'b', &["s"], &["r"]),
                    ("z", 'b', &["l"], &["t"]),
                    ("w", 'a', &["r"], &["t"]),
                    ("u", 'a', &["t"], &["t"]),
                ],
            ),
        ),
    ]
}

/// The fixture called `name`.
pub fn named(name: &str) -> Option<AutFixture> {
    all().into_iter().find(|f| f.name == name)
}
