//! The ten acceptance criteria, one line each. Runs without the libtest
//! harness so the report prints in a fixed order; exits non-zero if any
//! criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use combman::automata::fixtures as aut_fixtures;
use combman::automata::random::{random_automaton, RandomShape};
use combman::automata::{
    check_conditions, cofibrant_replacement, deter, normalize, verify_replacement, RelAutomaton,
};
use combman::blowup::{blowup, brick_colimit_check, verify_blowup};
use combman::pcs::fixtures as pcs_fixtures;
use combman::pcs::RelPcs;
use combman::regex::{compile, kleene_fuzz, parse};
use combman::samples::{automata_sample, pcs_sample, SampleSizes};
use combman::toolkit::{appendix_identity_suite, hom_enumerate, IdentityKind};
use combman::words::{BrickIndex, CubeWord};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn torus_blowup() -> Outcome {
    let text = std::fs::read_to_string(fixtures_dir().join("one-square.json")).unwrap();
    let x = Arc::new(RelPcs::from_json_str(&text).unwrap());
    let res = blowup(&x, 2).unwrap();
    let b = &res.blowup;
    let counts = b.counts();
    let e = x.id("e").unwrap();
    let edges: Vec<usize> = b.cubes_of_dim(1).collect();
    let square = b.cubes_of_dim(2).next();
    let face =
        |s: usize, w: &str| -> BTreeSet<usize> { b.faces_at(s, &w.parse::<CubeWord>().unwrap()) };
    let opposite = square.is_some_and(|s| {
        let first = face(s, "-0");
        let second = face(s, "0-");
        first.len() == 1
            && second.len() == 1
            && first == face(s, "+0")
            && second == face(s, "0+")
            && first != second
            && first.union(&second).copied().collect::<Vec<_>>() == edges
    });
    let beta_edges = edges.iter().all(|c| res.beta.apply(*c) == e);
    outcome(
        counts == [1, 2, 1] && opposite && beta_edges,
        format!(
            "counts {counts:?}, opposite sides identified: {opposite}, both edges to e: {beta_edges}"
        ),
    )
}

fn small_pcs_fixtures() -> Vec<pcs_fixtures::Fixture> {
    pcs_fixtures::all()
        .into_iter()
        .filter(|f| f.n <= 2 && f.pcs.len() <= 8)
        .collect()
}

fn bup_suite() -> Outcome {
    let corpus = small_pcs_fixtures();
    let names: BTreeSet<&str> = corpus.iter().map(|f| f.name).collect();
    let required = ["circle", "y-graph", "interval", "lone-vertex", "torus"];
    let covered = required.iter().all(|r| names.contains(r));
    let mut failures = Vec::new();
    for f in &corpus {
        let report = verify_blowup(&Arc::new(f.pcs.clone()), f.n).unwrap();
        if !(report.trivial_fibration.holds && report.euclidean.euclidean) {
            failures.push(f.name);
        }
    }
    outcome(
        corpus.len() >= 20 && covered && failures.is_empty(),
        format!(
            "{} fixtures, required shapes present: {covered}, failures: {failures:?}",
            corpus.len()
        ),
    )
}

fn cofibrant_is_euclidean() -> Outcome {
    let mut failures = Vec::new();
    let (mut iso, mut non_iso) = (0, 0);
    for f in pcs_fixtures::all() {
        let res = blowup(&Arc::new(f.pcs.clone()), f.n).unwrap();
        let is_iso = res.beta.is_iso();
        if is_iso {
            iso += 1;
        } else {
            non_iso += 1;
        }
        if is_iso != f.euclidean {
            failures.push(f.name);
        }
    }
    outcome(
        failures.is_empty(),
        format!("{iso} euclidean with β iso, {non_iso} non-euclidean with β not iso, failures: {failures:?}"),
    )
}

fn brick_colimits() -> Outcome {
    let mut checked = 0;
    let mut nontrivial = 0;
    let mut failures = Vec::new();
    for n in 0..=3 {
        for eps in BrickIndex::all(n) {
            let report = brick_colimit_check(&eps).unwrap();
            checked += 1;
            if report.diagram_objects > 0 {
                nontrivial += 1;
            }
            if !report.holds {
                failures.push(eps.to_string());
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{checked} indices (n ≤ 3), {nontrivial} with a nonempty diagram, failures: {failures:?}"),
    )
}

/// `(checks, failures)` per identity kind.
type Tally = BTreeMap<IdentityKind, (usize, usize)>;

fn appendix_counts(seed: u64) -> (Tally, Tally) {
    let tally = |r: &combman::toolkit::AppendixReport| {
        let mut m: Tally = BTreeMap::new();
        for c in &r.checks {
            let e = m.entry(c.kind).or_default();
            e.0 += 1;
            if !c.holds {
                e.1 += 1;
            }
        }
        m
    };
    let pcs = appendix_identity_suite(&pcs_sample(seed, SampleSizes::default()).unwrap());
    let aut = appendix_identity_suite(&automata_sample(seed, SampleSizes::default()).unwrap());
    (tally(&pcs), tally(&aut))
}

fn unique_lift_equivalence(pcs: &Tally, aut: &Tally) -> Outcome {
    let get = |m: &Tally| {
        m.get(&IdentityKind::UniqueLift)
            .copied()
            .unwrap_or_default()
    };
    let (p, a) = (get(pcs), get(aut));
    outcome(
        p.0 >= 100 && a.0 >= 100 && p.1 == 0 && a.1 == 0,
        format!(
            "precubical {} pairs ({} failures), automata {} pairs ({} failures)",
            p.0, p.1, a.0, a.1
        ),
    )
}

fn appendix_identities(pcs: &Tally, aut: &Tally) -> Outcome {
    let kinds = [
        IdentityKind::Sum,
        IdentityKind::Pushout,
        IdentityKind::Composition,
        IdentityKind::Retract,
        IdentityKind::NablaNabla,
    ];
    let (mut total, mut failed) = (0, 0);
    let mut per_kind = Vec::new();
    for k in kinds {
        let p = pcs.get(&k).copied().unwrap_or_default();
        let a = aut.get(&k).copied().unwrap_or_default();
        total += p.0 + a.0;
        failed += p.1 + a.1;
        per_kind.push(format!("{k:?} {}", p.0 + a.0));
    }
    let two_of_three = [pcs, aut]
        .iter()
        .map(|m| {
            m.get(&IdentityKind::TwoOfThree)
                .copied()
                .unwrap_or_default()
        })
        .fold((0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    let every_kind = kinds
        .iter()
        .all(|k| pcs.get(k).is_some_and(|c| c.0 > 0) || aut.get(k).is_some_and(|c| c.0 > 0));
    outcome(
        total >= 50 && failed == 0 && every_kind && two_of_three.1 == 0,
        format!(
            "{total} configurations ({}), {failed} failures; 2-out-of-3 {} checks, {} failures",
            per_kind.join(", "),
            two_of_three.0,
            two_of_three.1
        ),
    )
}

/// 200 automata with up to 5 states and 8 edges, alphabets of size 1 to 3.
fn random_corpus() -> Vec<Arc<RelAutomaton>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..200)
        .map(|_| {
            let size = rng.random_range(1..=3);
            let shape = RandomShape {
                alphabet: ['a', 'b', 'c'][..size].to_vec(),
                ..RandomShape::default()
            };
            Arc::new(random_automaton(&mut rng, &shape))
        })
        .collect()
}

fn replacement_suite(corpus: &[Arc<RelAutomaton>]) -> Outcome {
    let mut failures = Vec::new();
    for (k, a) in corpus.iter().enumerate() {
        let r = cofibrant_replacement(a).unwrap();
        let report = verify_replacement(a, &r, 6).unwrap();
        if !report.holds() {
            failures.push(k);
        }
    }
    let largest = corpus
        .iter()
        .map(|a| (a.state_count(), a.edge_count()))
        .max()
        .unwrap_or_default();
    outcome(
        failures.is_empty(),
        format!(
            "{} automata (largest {} states / {} edges), failures at {failures:?}",
            corpus.len(),
            largest.0,
            largest.1
        ),
    )
}

fn normalize_suite(corpus: &[Arc<RelAutomaton>]) -> Outcome {
    let mut failures = Vec::new();
    let mut vacuous = 0;
    for (k, a) in corpus.iter().enumerate() {
        let n = normalize(a).unwrap();
        if a.initial_states().next().is_none() {
            vacuous += 1;
            if n != **a {
                failures.push(k);
            }
            continue;
        }
        let ok = n.is_non_relational()
            && n.initial_states().count() == 1
            && check_conditions(&n).is_ok()
            && n.language_upto(6) == a.language_upto(6);
        if !ok {
            failures.push(k);
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} automata ({vacuous} without initial states returned unchanged), failures at {failures:?}",
            corpus.len()
        ),
    )
}

/// `|Hom_rel(H, G)|` for non-relational `H`: a marker-preserving state map
/// times, for every edge `u -a-> v` of `H`, the number of `a`-edges of `G`
/// with `f(u)` among its sources and `f(v)` among its targets.
fn relational_hom_count(h: &RelAutomaton, g: &RelAutomaton) -> usize {
    let (hs, gs) = (h.state_count(), g.state_count());
    if hs == 0 {
        return edge_choices(h, g, &[]);
    }
    if gs == 0 {
        return 0;
    }
    let mut total = 0;
    let mut f = vec![0; hs];
    loop {
        let markers = (0..hs).all(|s| {
            let (x, y) = (&h.states()[s], &g.states()[f[s]]);
            (!x.initial || y.initial) && (!x.accepting || y.accepting)
        });
        if markers {
            total += edge_choices(h, g, &f);
        }
        let mut k = 0;
        while k < hs {
            f[k] += 1;
            if f[k] < gs {
                break;
            }
            f[k] = 0;
            k += 1;
        }
        if k == hs {
            return total;
        }
    }
}

fn edge_choices(h: &RelAutomaton, g: &RelAutomaton, f: &[usize]) -> usize {
    h.edges()
        .iter()
        .map(|e| {
            g.edges()
                .iter()
                .filter(|d| {
                    d.label == e.label
                        && e.sources.iter().all(|u| d.sources.contains(&f[*u]))
                        && e.targets.iter().all(|v| d.targets.contains(&f[*v]))
                })
                .count()
        })
        .product()
}

fn deter_adjunction() -> Outcome {
    let objects: Vec<Arc<RelAutomaton>> = aut_fixtures::all()
        .into_iter()
        .map(|f| Arc::new(f.automaton))
        .filter(|a| a.state_count() <= 4)
        .collect();
    let sources: Vec<&Arc<RelAutomaton>> =
        objects.iter().filter(|a| a.is_non_relational()).collect();
    let mut failures = 0;
    let mut pairs = 0;
    let mut nonzero = 0;
    for h in &sources {
        for g in &objects {
            let via_deter = hom_enumerate(h, &Arc::new(deter(g))).len();
            let direct = relational_hom_count(h, g);
            pairs += 1;
            if direct > 0 {
                nonzero += 1;
            }
            if via_deter != direct {
                failures += 1;
            }
        }
    }
    outcome(
        failures == 0,
        format!(
            "{pairs} pairs ({} non-relational H × {} G, {nonzero} with morphisms), {failures} failures",
            sources.len(),
            objects.len()
        ),
    )
}

fn kleene() -> Outcome {
    let report = kleene_fuzz(7, 200, 4, 8, &['a', 'b']).unwrap();
    let compiled = compile(&parse("a*b*").unwrap()).unwrap();
    let rejected = !compiled.language_upto(2).contains("ba");
    let text = std::fs::read_to_string(fixtures_dir().join("naive-glue.json")).unwrap();
    let glued = RelAutomaton::from_json_str(&text).unwrap();
    let accepted = glued.language_upto(2).contains("ba");
    outcome(
        report.mismatches.is_empty() && rejected && accepted,
        format!(
            "{} regexes, {} mismatches; ba rejected by a*b*: {rejected}, accepted by the naive glue: {accepted}",
            report.count,
            report.mismatches.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut all = true;
    let mut report =
        |id: usize, name: &str, limit: Option<Duration>, run: &mut dyn FnMut() -> Outcome| {
            let start = Instant::now();
            let o = run();
            let elapsed = start.elapsed();
            let in_time = limit.is_none_or(|l| elapsed < l);
            let pass = o.pass && in_time;
            all &= pass;
            let budget = limit.map_or(String::new(), |l| format!(" / {l:.0?}"));
            println!(
                "[{}] {id:>2}. {name}: {} ({elapsed:.2?}{budget})",
                if pass { "PASS" } else { "FAIL" },
                o.detail
            );
        };

    report(
        1,
        "torus blowup",
        Some(Duration::from_secs(1)),
        &mut torus_blowup,
    );
    report(
        2,
        "blowup suite",
        Some(Duration::from_secs(30)),
        &mut bup_suite,
    );
    report(
        3,
        "cofibrant iff euclidean",
        None,
        &mut cofibrant_is_euclidean,
    );
    report(4, "brick colimits", None, &mut brick_colimits);
    let mut tallies = None;
    report(5, "unique-lift equivalence", None, &mut || {
        let (pcs, aut) = tallies.insert(appendix_counts(1));
        unique_lift_equivalence(pcs, aut)
    });
    let (pcs, aut) = tallies.expect("criterion 5 samples");
    report(6, "codiagonal identities", None, &mut || {
        appendix_identities(&pcs, &aut)
    });
    let corpus = random_corpus();
    report(
        7,
        "automata replacement",
        Some(Duration::from_secs(60)),
        &mut || replacement_suite(&corpus),
    );
    report(8, "normalization", None, &mut || normalize_suite(&corpus));
    report(9, "deter adjunction", None, &mut deter_adjunction);
    report(
        10,
        "kleene fuzz",
        Some(Duration::from_secs(60)),
        &mut kleene,
    );

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
