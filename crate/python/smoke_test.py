"""Smoke test for the extension module.

Build it with
    cargo build --release -p combman-python --features extension-module
    cp target/release/libcombman.so python/combman.so
and run this script from the repository root.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

import combman  # noqa: E402

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main() -> None:
    square = combman.Pcs.from_json((ROOT / "fixtures" / "one-square.json").read_text())
    torus, beta = square.blowup(2)
    assert torus.counts() == [1, 2, 1], torus.counts()
    assert sorted(target for _, target in beta).count("e") == 2
    assert square.verify_blowup(2)["passes"]

    y = combman.Pcs.from_json((ROOT / "fixtures" / "pcs" / "y-graph.json").read_text())
    assert not y.euclid(1)["euclidean"]

    brick = combman.Pcs.brick("11")
    assert json.loads(brick.to_json())["dim_bound"] == 2
    assert combman.brick_colimit_check("11")["holds"]

    a = combman.Automaton.compile("a*b*")
    assert a.language(2) == ["", "a", "aa", "ab", "b", "bb"]
    assert not a.accepts("ba")
    assert combman.Automaton.compile("0|()", ascii=True).language(1) == [""]

    glue = combman.Automaton.from_json((ROOT / "fixtures" / "naive-glue.json").read_text())
    assert glue.accepts("ba")
    assert glue.conditions()["condition"] == "initial_has_in_edge"

    replaced, pairs, report = glue.cofibrant_replacement()
    assert report["holds"], report
    assert replaced.conditions() is None
    assert replaced.edge_count == glue.edge_count
    assert replaced.language(4) == glue.language(4)
    assert len(pairs) == replaced.state_count + replaced.edge_count

    n = glue.normalize()
    assert n.is_non_relational() and n.conditions() is None

    fuzz = combman.kleene_fuzz(7, count=50, max_len=6)
    assert not fuzz["mismatches"], fuzz

    checks, failures = combman.appendix(1)
    assert checks > 0 and failures == 0

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
