use std::sync::Arc;

use super::Regex;
use crate::automata::{normalize, RelAutomaton};
use crate::error::Result;
use crate::toolkit::{coproduct, quotient};

pub fn compile(r: &Regex) -> Result<RelAutomaton> {
    match r {
        Regex::Empty => Ok(RelAutomaton::new([])),
        Regex::Epsilon => {
            let mut a = RelAutomaton::new([]);
            a.add_state("q", true, true)?;
            Ok(a)
        }
        Regex::Literal(c) => {
            let mut a = RelAutomaton::new([*c]);
            a.add_state("i", true, false)?;
            a.add_state("f", false, true)?;
            a.add_edge(c.to_string(), *c, [0], [1])?;
            Ok(a)
        }
        Regex::Union(r, s) => Ok(union_automata(&compile(r)?, &compile(s)?)),
        Regex::Concat(r, s) => concat_automata(&compile(r)?, &compile(s)?),
        Regex::Star(r) => star_automaton(&compile(r)?),
    }
}

pub fn union_automata(a: &RelAutomaton, b: &RelAutomaton) -> RelAutomaton {
    (*coproduct(&Arc::new(a.clone()), &Arc::new(b.clone())).object).clone()
}

fn unique_initial(a: &RelAutomaton) -> usize {
    a.initial_states()
        .next()
        .expect("normalized automata have an initial state")
}

/// Normalize both sides, forget the accepting states of `A` and the initial
/// state `v` of `B`, and identify `v` with every non-initial accepting state
/// of `A`. When `A` accepts `ε`, add `B` as a coproduct summand.
pub fn concat_automata(a: &RelAutomaton, b: &RelAutomaton) -> Result<RelAutomaton> {
    if a.initial_states().next().is_none() || b.initial_states().next().is_none() {
        return Ok(RelAutomaton::new(a.alphabet().union(b.alphabet()).copied()));
    }
    let mut an = normalize(&Arc::new(a.clone()))?;
    let mut bn = normalize(&Arc::new(b.clone()))?;
    let i = unique_initial(&an);
    let epsilon_in_a = an.states()[i].accepting;
    let xs: Vec<usize> = an.accepting_states().filter(|x| *x != i).collect();
    for s in 0..an.state_count() {
        an.set_accepting(s, false);
    }
    let v = unique_initial(&bn);
    bn.set_initial(v, false);
    let sum = coproduct(&Arc::new(an), &Arc::new(bn));
    let pairs: Vec<(usize, usize)> = xs
        .iter()
        .map(|x| (sum.left.apply(*x), sum.right.apply(v)))
        .collect();
    let glued = quotient(&sum.object, &pairs)?;
    if epsilon_in_a {
        Ok(union_automata(glued.target(), b))
    } else {
        Ok((**glued.target()).clone())
    }
}

/// Normalize, identify the initial state with every non-initial accepting
/// state, and make it accepting. Without initial states the result is `⊛`.
pub fn star_automaton(a: &RelAutomaton) -> Result<RelAutomaton> {
    if a.initial_states().next().is_none() {
        let mut out = RelAutomaton::new(a.alphabet().iter().copied());
        out.add_state("q", true, true)?;
        return Ok(out);
    }
    let an = Arc::new(normalize(&Arc::new(a.clone()))?);
    let i = unique_initial(&an);
    let pairs: Vec<(usize, usize)> = an
        .accepting_states()
        .filter(|x| *x != i)
        .map(|x| (i, x))
        .collect();
    let merged = quotient(&an, &pairs)?;
    let mut out = (**merged.target()).clone();
    out.set_accepting(merged.apply(i), true);
    Ok(out)
}

/// Glue every accepting state of `A` to every initial state of `B` directly,
/// forgetting the accepting marks of `A` and the initial marks of `B`.
/// Correct only when the conditions on initial and accepting states hold.
pub fn naive_glue(a: &RelAutomaton, b: &RelAutomaton) -> Result<RelAutomaton> {
    let mut a2 = a.clone();
    let mut b2 = b.clone();
    let xs: Vec<usize> = a.accepting_states().collect();
    let vs: Vec<usize> = b.initial_states().collect();
    for x in &xs {
        a2.set_accepting(*x, false);
    }
    for v in &vs {
        b2.set_initial(*v, false);
    }
    let sum = coproduct(&Arc::new(a2), &Arc::new(b2));
    let mut pairs = Vec::new();
    for x in &xs {
        for v in &vs {
            pairs.push((sum.left.apply(*x), sum.right.apply(*v)));
        }
    }
    Ok((**quotient(&sum.object, &pairs)?.target()).clone())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::automata::check_conditions;
    use crate::regex::{parse, regex_lang_upto};

    fn words(ws: &[&str]) -> BTreeSet<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn star_concat_refutes_naive_glue() {
        let r = parse("a*b*").unwrap();
        let a = compile(&r).unwrap();
        let lang = a.language_upto(3);
        assert_eq!(
            lang,
            words(&["", "a", "b", "aa", "ab", "bb", "aaa", "aab", "abb", "bbb"])
        );
        assert!(!lang.contains("ba"));
        let naive = naive_glue(&loop_on('a'), &loop_on('b')).unwrap();
        assert_eq!(naive.state_count(), 1);
        assert!(naive.language_upto(2).contains("ba"));
    }

    /// One state, initial and accepting, with a loop.
    fn loop_on(c: char) -> RelAutomaton {
        let mut a = RelAutomaton::new([c]);
        a.add_state("v", true, true).unwrap();
        a.add_edge("l", c, [0], [0]).unwrap();
        a
    }

    #[test]
    fn leaves_and_star_of_empty() {
        assert_eq!(
            compile(&Regex::Literal('a')).unwrap().language_upto(2),
            words(&["a"])
        );
        assert_eq!(
            compile(&parse("∅*").unwrap()).unwrap().language_upto(3),
            words(&[""])
        );
        assert!(compile(&Regex::Empty).unwrap().language_upto(3).is_empty());
    }

    #[test]
    fn concat_with_no_nonempty_word_on_the_left() {
        for src in ["εb", "(ε|∅)b*", "∅b"] {
            let r = parse(src).unwrap();
            assert_eq!(
                compile(&r).unwrap().language_upto(4),
                regex_lang_upto(&r, 4),
                "{src}"
            );
        }
    }

    #[test]
    fn normalized_output_satisfies_the_conditions() {
        let r = parse("(a|b)*a(ab)*").unwrap();
        let a = compile(&r).unwrap();
        let n = normalize(&Arc::new(a.clone())).unwrap();
        assert_eq!(check_conditions(&n), Ok(()));
        assert_eq!(n.initial_states().count(), 1);
        assert_eq!(n.language_upto(6), regex_lang_upto(&r, 6));
    }
}
