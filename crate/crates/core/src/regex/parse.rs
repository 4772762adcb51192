//! Concrete syntax: `∅`, `ε`, single-character literals, `|`, juxtaposition,
//! postfix `*` and parentheses. Whitespace is ignored. Union and
//! concatenation associate to the left.

use std::iter::Peekable;
use std::str::Chars;

use super::Regex;
use crate::error::{malformed, Result};

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Also read `0` as `∅` and `()` as `ε`.
    pub ascii: bool,
}

pub fn parse(input: &str) -> Result<Regex> {
    parse_with(input, ParseOptions::default())
}

pub fn parse_with(input: &str, options: ParseOptions) -> Result<Regex> {
    let filtered: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        chars: filtered.chars().peekable(),
        options,
    };
    let r = p.union()?;
    match p.chars.next() {
        None => Ok(r),
        Some(c) => Err(malformed("regex", format!("unexpected {c:?}"))),
    }
}

struct Parser<'a> {
    chars: Peekable<Chars<'a>>,
    options: ParseOptions,
}

impl Parser<'_> {
    fn union(&mut self) -> Result<Regex> {
        let mut r = self.concat()?;
        while self.chars.peek() == Some(&'|') {
            self.chars.next();
            r = Regex::union(r, self.concat()?);
        }
        Ok(r)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut r = self.postfix()?;
        while matches!(self.chars.peek(), Some(c) if *c != '|' && *c != ')') {
            r = Regex::concat(r, self.postfix()?);
        }
        Ok(r)
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while self.chars.peek() == Some(&'*') {
            self.chars.next();
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.chars.next() {
            None => Err(malformed("regex", "unexpected end of input")),
            Some('∅') => Ok(Regex::Empty),
            Some('ε') => Ok(Regex::Epsilon),
            Some('0') if self.options.ascii => Ok(Regex::Empty),
            Some('(') => {
                if self.options.ascii && self.chars.peek() == Some(&')') {
                    self.chars.next();
                    return Ok(Regex::Epsilon);
                }
                let r = self.union()?;
                match self.chars.next() {
                    Some(')') => Ok(r),
                    _ => Err(malformed("regex", "unbalanced parenthesis")),
                }
            }
            Some(c @ ('|' | '*' | ')')) => Err(malformed("regex", format!("unexpected {c:?}"))),
            Some(c) => Ok(Regex::Literal(c)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_associativity() {
        let r = parse("ab*|c").unwrap();
        let expected = Regex::union(
            Regex::concat(Regex::Literal('a'), Regex::star(Regex::Literal('b'))),
            Regex::Literal('c'),
        );
        assert_eq!(r, expected);
        assert_eq!(parse(" a b ").unwrap(), parse("ab").unwrap());
    }

    #[test]
    fn ascii_fallbacks_need_the_flag() {
        let ascii = ParseOptions { ascii: true };
        assert_eq!(
            parse_with("0|()", ascii).unwrap(),
            Regex::union(Regex::Empty, Regex::Epsilon)
        );
        assert_eq!(parse("0").unwrap(), Regex::Literal('0'));
        assert!(parse("()").is_err());
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "(a", "a)", "|a", "*", "a||b"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }
}
