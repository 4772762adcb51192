use std::path::PathBuf;
use std::sync::Arc;

use combman::automata::fixtures as aut_fixtures;
use combman::automata::RelAutomaton;
use combman::blowup::{blowup, blowup_map};
use combman::pcs::fixtures::{self as pcs_fixtures, Fixture};
use combman::pcs::{tensor, RelPcs};
use combman::toolkit::{find_isomorphism, hom_enumerate, Carrier};

fn small() -> impl Iterator<Item = Fixture> {
    pcs_fixtures::all()
        .into_iter()
        .filter(|f| f.n <= 2 && f.pcs.len() <= 8)
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn blowup_preserves_the_dimension_bound() {
    for f in small() {
        let p = Arc::new(f.pcs);
        let b = blowup(&p, f.n).unwrap();
        assert!(b.blowup.counts().len() <= f.n + 1, "{}", f.name);
        assert!(b.blowup.validate().is_ok(), "{}", f.name);
    }
}

#[test]
fn blowup_is_idempotent() {
    for f in small() {
        let p = Arc::new(f.pcs);
        let once = blowup(&p, f.n).unwrap();
        let twice = blowup(&once.blowup, f.n).unwrap();
        assert!(
            find_isomorphism(&twice.blowup, &once.blowup).is_some(),
            "{}",
            f.name
        );
        assert!(twice.beta.is_iso(), "{}", f.name);
    }
}

/// `β_Q ∘ Bl(α) = α ∘ β_P` for every map between small fixtures.
#[test]
fn blowup_maps_commute_with_the_projections() {
    let objects: Vec<(usize, Arc<RelPcs>)> = small()
        .filter(|f| f.pcs.len() <= 5)
        .map(|f| (f.n, Arc::new(f.pcs)))
        .collect();
    let mut squares = 0;
    for (np, p) in &objects {
        for (nq, q) in &objects {
            let n = (*np).max(*nq);
            let bp = blowup(p, n).unwrap();
            let bq = blowup(q, n).unwrap();
            for alpha in hom_enumerate(p, q).into_iter().take(6) {
                let bl = blowup_map(&alpha, &bp, &bq).unwrap();
                let left = bl.then(&bq.beta).unwrap();
                let right = bp.beta.then(&alpha).unwrap();
                assert_eq!(left.map(), right.map());
                squares += 1;
            }
        }
    }
    assert!(squares > 50, "{squares}");
}

#[test]
fn tensors_of_fixtures_validate() {
    let fs: Vec<Fixture> = pcs_fixtures::all()
        .into_iter()
        .filter(|f| f.pcs.len() <= 6)
        .collect();
    for a in &fs {
        for b in &fs {
            let t = tensor(&a.pcs, &b.pcs);
            assert_eq!(t.len(), a.pcs.len() * b.pcs.len());
            assert!(t.validate().is_ok(), "{} ⊗ {}", a.name, b.name);
        }
    }
}

#[test]
fn fixture_files_match_the_built_in_catalogue() {
    let dir = fixture_dir();
    for f in pcs_fixtures::all() {
        let text = std::fs::read_to_string(dir.join(format!("pcs/{}.json", f.name))).unwrap();
        assert_eq!(RelPcs::from_json_str(&text).unwrap(), f.pcs, "{}", f.name);
    }
    for f in aut_fixtures::all() {
        let text = std::fs::read_to_string(dir.join(format!("automata/{}.json", f.name))).unwrap();
        assert_eq!(
            RelAutomaton::from_json_str(&text).unwrap(),
            f.automaton,
            "{}",
            f.name
        );
    }
    let square = std::fs::read_to_string(dir.join("one-square.json")).unwrap();
    let square = RelPcs::from_json_str(&square).unwrap();
    assert_eq!(square.counts(), [1, 1, 1]);
    assert_eq!(square.cell_count(), 3);
}
