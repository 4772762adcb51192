//! Morphisms of the cube category as normal-form sign words, and the
//! poset `D_ε` that indexes the cells of a euclidean brick.
//!
//! A morphism `m → m+k` of the (precubical) cube category is a composite of
//! coface maps `d^η_{n,i}`. It has a unique normal form with strictly
//! increasing insertion positions, which we store as a word of length `m+k`
//! over `{-, +, 0}`: position `i` carries the sign inserted there, and the
//! `m` zero letters are the free coordinates of the domain, in order.

use std::fmt;
use std::str::FromStr;

use crate::error::{malformed, Error, Result};

/// One letter of a [`CubeWord`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Zero,
    Minus,
    Plus,
}

impl Sign {
    /// `+* = -` and `-* = +`; zero is fixed.
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Zero => '0',
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '0' => Some(Sign::Zero),
            '-' | '−' => Some(Sign::Minus),
            '+' => Some(Sign::Plus),
            _ => None,
        }
    }
}

/// Normal form of a morphism `m → m+k` of the cube category.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CubeWord(Vec<Sign>);

impl CubeWord {
    pub fn new(letters: Vec<Sign>) -> Self {
        CubeWord(letters)
    }

    /// The identity on `m`: the all-zero word of length `m`.
    pub fn identity(m: usize) -> Self {
        CubeWord(vec![Sign::Zero; m])
    }

    /// The generator `d^η_{n,i}: n → n+1`.
    pub fn coface(sign: Sign, n: usize, i: usize) -> Result<Self> {
        if sign == Sign::Zero || i > n {
            return Err(malformed(
                "coface",
                format!("d^{}_{{{n},{i}}} is not a generator", sign.as_char()),
            ));
        }
        let mut letters = vec![Sign::Zero; n + 1];
        letters[i] = sign;
        Ok(CubeWord(letters))
    }

    pub fn letters(&self) -> &[Sign] {
        &self.0
    }

    pub fn codomain_dim(&self) -> usize {
        self.0.len()
    }

    pub fn domain_dim(&self) -> usize {
        self.0.iter().filter(|s| **s == Sign::Zero).count()
    }

    /// Number of coface maps in the normal form.
    pub fn degree(&self) -> usize {
        self.0.len() - self.domain_dim()
    }

    pub fn is_identity(&self) -> bool {
        self.degree() == 0
    }

    /// The normal-form factorisation, in application order: the `j`-th entry
    /// is `(η_j, m+j-1, i_j)`.
    pub fn cofaces(&self) -> Vec<(Sign, usize, usize)> {
        let m = self.domain_dim();
        self.0
            .iter()
            .enumerate()
            .filter(|(_, s)| **s != Sign::Zero)
            .enumerate()
            .map(|(j, (i, s))| (*s, m + j, i))
            .collect()
    }

    /// Splits the word positionally, as for a face of a tensor product.
    pub fn split_at(&self, k: usize) -> (CubeWord, CubeWord) {
        let (a, b) = self.0.split_at(k);
        (CubeWord(a.to_vec()), CubeWord(b.to_vec()))
    }

    pub fn concat(&self, other: &CubeWord) -> CubeWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        CubeWord(letters)
    }

    /// `other ∘ self`, see [`compose_words`].
    pub fn then(&self, other: &CubeWord) -> Result<CubeWord> {
        compose_words(self, other)
    }

    /// Every word with the given codomain dimension, in lexicographic order.
    pub fn all_of_length(len: usize) -> Vec<CubeWord> {
        let mut out = vec![CubeWord::default()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    [Sign::Zero, Sign::Minus, Sign::Plus]
                        .into_iter()
                        .map(move |s| {
                            let mut l = w.0.clone();
                            l.push(s);
                            CubeWord(l)
                        })
                })
                .collect();
        }
        out
    }
}

/// Composite `v ∘ u` of `u: m → m+k` and `v: m+k → m+k+l`.
///
/// The result keeps the nonzero letters of `v` and writes the letters of `u`,
/// in order, into the zero positions of `v`.
pub fn compose_words(u: &CubeWord, v: &CubeWord) -> Result<CubeWord> {
    if v.domain_dim() != u.codomain_dim() {
        return Err(Error::DimensionMismatch {
            inner: u.to_string(),
            outer: v.to_string(),
            inner_cod: u.codomain_dim(),
            outer_dom: v.domain_dim(),
        });
    }
    let mut inner = u.0.iter();
    let letters =
        v.0.iter()
            .map(|s| match s {
                Sign::Zero => *inner.next().expect("domain checked"),
                other => *other,
            })
            .collect();
    Ok(CubeWord(letters))
}

impl fmt::Display for CubeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for CubeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for CubeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                Sign::from_char(c)
                    .ok_or_else(|| malformed("cube word", format!("bad letter {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(CubeWord)
    }
}

/// `ε ∈ {0,1}^n`, indexing the euclidean brick `B_ε`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrickIndex(Vec<bool>);

impl BrickIndex {
    pub fn new(bits: Vec<bool>) -> Self {
        BrickIndex(bits)
    }

    pub fn zeros(n: usize) -> Self {
        BrickIndex(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        BrickIndex(vec![true; n])
    }

    /// All `2^n` indices of ambient dimension `n`, in binary order.
    pub fn all(n: usize) -> Vec<BrickIndex> {
        (0..1usize << n)
            .map(|code| BrickIndex((0..n).map(|i| code >> (n - 1 - i) & 1 == 1).collect()))
            .collect()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// The ambient dimension.
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn codimension(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    /// Dimension of the minimal cube of `B_ε`.
    pub fn min_dim(&self) -> usize {
        self.n() - self.codimension()
    }

    /// `ε` itself, read as the maximum of `D_ε`.
    pub fn max_element(&self) -> DEpsilonElement {
        DEpsilonElement {
            letters: self
                .0
                .iter()
                .map(|b| if *b { DLetter::One } else { DLetter::Zero })
                .collect(),
            eps: self.clone(),
        }
    }
}

impl fmt::Display for BrickIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{}", if *b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BrickIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ε{self}")
    }
}

impl FromStr for BrickIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(malformed(
                    "brick index",
                    format!("bad digit {c:?} in {s:?}"),
                )),
            })
            .collect::<Result<Vec<_>>>()
            .map(BrickIndex)
    }
}

/// A letter of `{+,-,0,1}`, ordered by `0 < +,- < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DLetter {
    Zero,
    Minus,
    Plus,
    One,
}

impl DLetter {
    pub fn le(self, other: DLetter) -> bool {
        self == other || self == DLetter::Zero || other == DLetter::One
    }

    pub fn as_char(self) -> char {
        match self {
            DLetter::Zero => '0',
            DLetter::Minus => '-',
            DLetter::Plus => '+',
            DLetter::One => '1',
        }
    }

    pub fn from_char(c: char) -> Option<DLetter> {
        match c {
            '0' => Some(DLetter::Zero),
            '-' | '−' => Some(DLetter::Minus),
            '+' => Some(DLetter::Plus),
            '1' => Some(DLetter::One),
            _ => None,
        }
    }

    fn sign(self) -> Option<Sign> {
        match self {
            DLetter::Minus => Some(Sign::Minus),
            DLetter::Plus => Some(Sign::Plus),
            _ => None,
        }
    }
}

/// An element `w` of `D_ε`: `w_i = 0` exactly where `ε_i = 0`.
///
/// Each element names one cell of `B_ε`; the cell has dimension
/// `n - #{i : w_i = 1}` and `ε` itself names the minimal cube.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DEpsilonElement {
    letters: Vec<DLetter>,
    eps: BrickIndex,
}

impl DEpsilonElement {
    pub fn new(eps: &BrickIndex, letters: Vec<DLetter>) -> Result<Self> {
        let ok = letters.len() == eps.n()
            && letters
                .iter()
                .zip(eps.bits())
                .all(|(l, b)| (*l == DLetter::Zero) == !*b);
        if !ok {
            return Err(Error::NotInDEpsilon {
                element: letters.iter().map(|l| l.as_char()).collect(),
                eps: eps.to_string(),
            });
        }
        Ok(DEpsilonElement {
            letters,
            eps: eps.clone(),
        })
    }

    pub fn parse(eps: &BrickIndex, s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| DLetter::from_char(c).ok_or_else(|| malformed("D_ε element", s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        DEpsilonElement::new(eps, letters)
    }

    pub fn letters(&self) -> &[DLetter] {
        &self.letters
    }

    pub fn eps(&self) -> &BrickIndex {
        &self.eps
    }

    /// `p(w)`: `0,+,-` to `0` and `1` to `1`.
    pub fn p(&self) -> BrickIndex {
        BrickIndex(self.letters.iter().map(|l| *l == DLetter::One).collect())
    }

    /// Number of `±` letters.
    pub fn signed_count(&self) -> usize {
        self.letters.iter().filter(|l| l.sign().is_some()).count()
    }

    /// Dimension of the cell of `B_ε` named by this element.
    pub fn cell_dim(&self) -> usize {
        self.eps.n() - self.letters.iter().filter(|l| **l == DLetter::One).count()
    }

    pub fn le(&self, other: &DEpsilonElement) -> bool {
        self.eps == other.eps
            && self
                .letters
                .iter()
                .zip(&other.letters)
                .all(|(a, b)| DLetter::le(*a, *b))
    }

    pub fn is_max(&self) -> bool {
        self.letters
            .iter()
            .all(|l| *l != DLetter::Minus && *l != DLetter::Plus)
    }

    /// The pointwise meet `w ∧ ε'`, not necessarily a member of `D_ε'`.
    pub fn meet(&self, other: &BrickIndex) -> Vec<DLetter> {
        self.letters
            .iter()
            .zip(other.bits())
            .map(|(l, b)| if *b { *l } else { DLetter::Zero })
            .collect()
    }

    /// `w ∧ ε'` as an element of `D_ε'`, when it is one.
    pub fn project(&self, other: &BrickIndex) -> Result<DEpsilonElement> {
        if other.n() != self.eps.n() {
            return Err(Error::NotInDEpsilon {
                element: self.to_string(),
                eps: other.to_string(),
            });
        }
        DEpsilonElement::new(other, self.meet(other))
    }
}

impl fmt::Display for DEpsilonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for DEpsilonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}∈D_{}", self.eps)
    }
}

/// The finite poset `D_ε`.
#[derive(Clone, Debug)]
pub struct DEpsilon {
    eps: BrickIndex,
    elements: Vec<DEpsilonElement>,
}

impl DEpsilon {
    pub fn eps(&self) -> &BrickIndex {
        &self.eps
    }

    /// Elements in lexicographic order of `- < + < 1` per position; the
    /// maximum `ε` comes last.
    pub fn elements(&self) -> &[DEpsilonElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max(&self) -> DEpsilonElement {
        self.eps.max_element()
    }

    /// All strictly comparable pairs `(w, w')` with `w < w'`.
    pub fn order(&self) -> Vec<(DEpsilonElement, DEpsilonElement)> {
        let mut out = Vec::new();
        for a in &self.elements {
            for b in &self.elements {
                if a != b && a.le(b) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    pub fn contains(&self, w: &DEpsilonElement) -> bool {
        w.eps == self.eps
    }
}

/// Builds `D_ε`.
pub fn d_epsilon(eps: &BrickIndex) -> DEpsilon {
    let mut elements: Vec<Vec<DLetter>> = vec![Vec::new()];
    for bit in eps.bits() {
        let options: &[DLetter] = if *bit {
            &[DLetter::Minus, DLetter::Plus, DLetter::One]
        } else {
            &[DLetter::Zero]
        };
        elements = elements
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |l| {
                    let mut v = prefix.clone();
                    v.push(*l);
                    v
                })
            })
            .collect();
    }
    DEpsilon {
        eps: eps.clone(),
        elements: elements
            .into_iter()
            .map(|letters| DEpsilonElement {
                letters,
                eps: eps.clone(),
            })
            .collect(),
    }
}

/// `g_w: m → m+k`, the word along which the cell `w` of `B_ε` has the
/// minimal cube `ε` as a face.
pub fn g_w(eps: &BrickIndex, w: &DEpsilonElement) -> Result<CubeWord> {
    if w.eps() != eps {
        return Err(Error::NotInDEpsilon {
            element: w.to_string(),
            eps: eps.to_string(),
        });
    }
    Ok(CubeWord(
        w.letters
            .iter()
            .filter(|l| **l != DLetter::One)
            .map(|l| l.sign().map_or(Sign::Zero, Sign::flipped))
            .collect(),
    ))
}

/// The cell map of `ι_w: B_{p(w)} → B_ε`.
pub fn iota_cell(
    eps: &BrickIndex,
    w: &DEpsilonElement,
    u: &DEpsilonElement,
) -> Result<DEpsilonElement> {
    if w.eps() != eps {
        return Err(Error::NotInDEpsilon {
            element: w.to_string(),
            eps: eps.to_string(),
        });
    }
    let pw = w.p();
    if u.eps() != &pw {
        return Err(Error::NotInDEpsilon {
            element: u.to_string(),
            eps: pw.to_string(),
        });
    }
    let letters = w
        .letters
        .iter()
        .zip(&u.letters)
        .map(|(wl, ul)| match wl {
            DLetter::One => *ul,
            other => *other,
        })
        .collect();
    Ok(DEpsilonElement {
        letters,
        eps: eps.clone(),
    })
}
