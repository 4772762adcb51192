use std::collections::BTreeSet;

use std::sync::Arc;

use combman::automata::{check_conditions, normalize};
use combman::regex::{compile, concat_automata, naive_glue, parse, parse_with, ParseOptions};

fn lang(src: &str, len: usize) -> BTreeSet<String> {
    compile(&parse(src).unwrap()).unwrap().language_upto(len)
}

fn words(ws: &[&str]) -> BTreeSet<String> {
    ws.iter().map(|w| w.to_string()).collect()
}

#[test]
fn small_languages() {
    assert_eq!(lang("(a|b)*a", 2), words(&["a", "aa", "ba"]));
    assert_eq!(lang("(ab)*", 4), words(&["", "ab", "abab"]));
    assert_eq!(lang("a**", 3), lang("a*", 3));
    assert_eq!(lang("a*b*", 2), words(&["", "a", "aa", "ab", "b", "bb"]));
}

#[test]
fn ascii_constants() {
    let ascii = ParseOptions { ascii: true };
    let empty = compile(&parse_with("0", ascii).unwrap()).unwrap();
    assert!(empty.language_upto(3).is_empty());
    let eps = compile(&parse_with("()", ascii).unwrap()).unwrap();
    assert_eq!(eps.language_upto(3), words(&[""]));
    assert_eq!(
        compile(&parse_with("0*", ascii).unwrap())
            .unwrap()
            .language_upto(2),
        words(&[""])
    );
}

#[test]
fn normalized_compiled_automata_satisfy_the_conditions() {
    for src in ["a", "a*", "(a|b)*a", "(ab)*", "a*b*", "(a*b)*|b"] {
        let a = Arc::new(compile(&parse(src).unwrap()).unwrap());
        let n = normalize(&a).unwrap();
        assert!(check_conditions(&n).is_ok(), "{src}");
        assert_eq!(n.initial_states().count(), 1, "{src}");
        assert_eq!(n.language_upto(5), a.language_upto(5), "{src}");
    }
}

/// With no non-initial accepting state on the left, the glued part is empty
/// and only the `B` summand contributes.
#[test]
fn concatenation_after_the_empty_word() {
    let ascii = ParseOptions { ascii: true };
    let eps = compile(&parse_with("()", ascii).unwrap()).unwrap();
    let b = compile(&parse("b*").unwrap()).unwrap();
    let c = concat_automata(&eps, &b).unwrap();
    assert_eq!(c.language_upto(3), words(&["", "b", "bb", "bbb"]));
    let empty = compile(&parse_with("0", ascii).unwrap()).unwrap();
    assert!(concat_automata(&empty, &b)
        .unwrap()
        .language_upto(3)
        .is_empty());
    assert!(concat_automata(&b, &empty)
        .unwrap()
        .language_upto(3)
        .is_empty());
}

#[test]
fn gluing_without_replacement_overshoots() {
    let a = compile(&parse("a*").unwrap()).unwrap();
    let b = compile(&parse("b*").unwrap()).unwrap();
    let glued = naive_glue(&a, &b).unwrap();
    let l = glued.language_upto(2);
    assert!(l.contains("ba"));
    assert!(lang("a*b*", 2).is_subset(&l));
}

#[test]
fn parse_errors() {
    for bad in ["(a", "a)", "|a", "*"] {
        assert!(parse(bad).is_err(), "{bad}");
    }
}
