//! Regular expressions, their compilation into finite automata through
//! normalization, and a direct set semantics used as an independent oracle.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

mod compile;
mod fuzz;
mod parse;

pub use compile::{compile, concat_automata, naive_glue, star_automaton, union_automata};
pub use fuzz::{kleene_fuzz, random_regex, FuzzReport, Mismatch};
pub use parse::{parse, parse_with, ParseOptions};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Regex {
    Empty,
    Epsilon,
    Literal(char),
    Union(Box<Regex>, Box<Regex>),
    Concat(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn union(r: Regex, s: Regex) -> Regex {
        Regex::Union(Box::new(r), Box::new(s))
    }

    pub fn concat(r: Regex, s: Regex) -> Regex {
        Regex::Concat(Box::new(r), Box::new(s))
    }

    pub fn star(r: Regex) -> Regex {
        Regex::Star(Box::new(r))
    }

    pub fn literals(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_literals(&mut out);
        out
    }

    fn collect_literals(&self, out: &mut BTreeSet<char>) {
        match self {
            Regex::Empty | Regex::Epsilon => {}
            Regex::Literal(a) => {
                out.insert(*a);
            }
            Regex::Union(r, s) | Regex::Concat(r, s) => {
                r.collect_literals(out);
                s.collect_literals(out);
            }
            Regex::Star(r) => r.collect_literals(out),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Literal(_) => 1,
            Regex::Union(r, s) | Regex::Concat(r, s) => 1 + r.size() + s.size(),
            Regex::Star(r) => 1 + r.size(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Union(..) => 0,
            Regex::Concat(..) => 1,
            Regex::Star(_) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, r: &Regex, min: u8| {
            if r.precedence() < min {
                write!(f, "({r})")
            } else {
                write!(f, "{r}")
            }
        };
        match self {
            Regex::Empty => write!(f, "∅"),
            Regex::Epsilon => write!(f, "ε"),
            Regex::Literal(a) => write!(f, "{a}"),
            Regex::Union(r, s) => {
                wrap(f, r, 0)?;
                write!(f, "|")?;
                wrap(f, s, 1)
            }
            Regex::Concat(r, s) => {
                wrap(f, r, 1)?;
                wrap(f, s, 2)
            }
            Regex::Star(r) => {
                wrap(f, r, 3)?;
                write!(f, "*")
            }
        }
    }
}

/// Words of length at most `max_len` in the language of `r`, by structural
/// recursion on sets.
pub fn regex_lang_upto(r: &Regex, max_len: usize) -> BTreeSet<String> {
    match r {
        Regex::Empty => BTreeSet::new(),
        Regex::Epsilon => [String::new()].into(),
        Regex::Literal(a) => {
            if max_len >= 1 {
                [a.to_string()].into()
            } else {
                BTreeSet::new()
            }
        }
        Regex::Union(r, s) => {
            let mut out = regex_lang_upto(r, max_len);
            out.extend(regex_lang_upto(s, max_len));
            out
        }
        Regex::Concat(r, s) => {
            let (left, right) = (regex_lang_upto(r, max_len), regex_lang_upto(s, max_len));
            product(&left, &right, max_len)
        }
        Regex::Star(r) => {
            let base: BTreeSet<String> = regex_lang_upto(r, max_len)
                .into_iter()
                .filter(|w| !w.is_empty())
                .collect();
            let mut out: BTreeSet<String> = [String::new()].into();
            loop {
                let next = product(&base, &out, max_len);
                let before = out.len();
                out.extend(next);
                if out.len() == before {
                    return out;
                }
            }
        }
    }
}

fn product(left: &BTreeSet<String>, right: &BTreeSet<String>, max_len: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for u in left {
        for v in right {
            if u.chars().count() + v.chars().count() <= max_len {
                out.insert(format!("{u}{v}"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(ws: &[&str]) -> BTreeSet<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn oracle_on_small_expressions() {
        let ab = Regex::union(Regex::Literal('a'), Regex::Literal('b'));
        assert_eq!(regex_lang_upto(&ab, 1), words(&["a", "b"]));
        let abstar = Regex::star(Regex::concat(Regex::Literal('a'), Regex::Literal('b')));
        assert_eq!(regex_lang_upto(&abstar, 4), words(&["", "ab", "abab"]));
        let tail = Regex::concat(Regex::star(ab), Regex::Literal('a'));
        assert_eq!(regex_lang_upto(&tail, 2), words(&["a", "aa", "ba"]));
        assert_eq!(regex_lang_upto(&Regex::star(Regex::Empty), 3), words(&[""]));
    }

    #[test]
    fn display_parenthesizes_by_precedence() {
        let r = Regex::star(Regex::concat(
            Regex::union(Regex::Literal('a'), Regex::Epsilon),
            Regex::Literal('b'),
        ));
        assert_eq!(r.to_string(), "((a|ε)b)*");
        assert_eq!(parse(&r.to_string()).unwrap(), r);
    }
}
