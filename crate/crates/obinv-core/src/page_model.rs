//! Pages, curve words, Dehn twists and open books.
//!
//! A page of signature (g, h) is a compact surface of genus `g` with `h + 1`
//! boundary components. Curves on the page are recorded combinatorially as
//! cyclic words in the letters `α_i^{±1}`, `β_i^{±1}` — the signed sequence of
//! intersections with the dual arc basis `a_i`, `b_i`, read off while
//! traversing the curve. There are α-letters for indices `1..=g` and β-letters
//! for `1..=g+h`.
//!
//! Validation here is deliberately limited to index-range checks. Whether a
//! word is actually realizable by an embedded, non-isolating simple closed
//! curve in the canonical curve position is the caller's obligation: the word
//! calculus below does not (and cannot cheaply) certify it, and the tangency
//! counts downstream are only meaningful for words that do come from such
//! curves.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PageError {
    #[error("a page needs genus + holes >= 1; the disc carries no non-isolating closed curve")]
    EmptyPage,
    #[error("curve words must be non-empty")]
    EmptyWord,
    #[error("letter {letter} out of range: {family} letters on this page have index 1..={max}")]
    IndexOutOfRange {
        letter: String,
        family: &'static str,
        max: usize,
    },
    #[error("cannot parse letter token {0:?}: expected e.g. \"a3\", \"A3\", \"b2\", \"B2\"")]
    BadToken(String),
    #[error("twist powers must be >= 1")]
    ZeroPower,
}

/// Orientation sign, used both for letter exponents and Dehn twist signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Alpha,
    Beta,
}

/// Genus and hole count of a page; the surface has `holes + 1` boundary
/// components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PageSignature {
    genus: usize,
    holes: usize,
}

impl PageSignature {
    pub fn new(genus: usize, holes: usize) -> Result<Self, PageError> {
        if genus + holes == 0 {
            return Err(PageError::EmptyPage);
        }
        Ok(Self { genus, holes })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn holes(&self) -> usize {
        self.holes
    }

    pub fn boundary_components(&self) -> usize {
        self.holes + 1
    }

    /// Number of β-curves (and of dual arc pairs indices), `g + h`.
    pub fn arc_count(&self) -> usize {
        self.genus + self.holes
    }

    pub fn is_planar(&self) -> bool {
        self.genus == 0
    }

    fn max_index(&self, family: Family) -> usize {
        match family {
            Family::Alpha => self.genus,
            Family::Beta => self.arc_count(),
        }
    }
}

/// One letter of a curve word: `α_i` / `β_i` with exponent ±1.
///
/// Text encoding: `a3` = α₃, `A3` = α₃⁻¹, `b2` = β₂, `B2` = β₂⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub family: Family,
    /// 1-based curve index.
    pub index: usize,
    pub exponent: Sign,
}

impl Letter {
    pub fn alpha(index: usize) -> Self {
        Self {
            family: Family::Alpha,
            index,
            exponent: Sign::Positive,
        }
    }

    pub fn beta(index: usize) -> Self {
        Self {
            family: Family::Beta,
            index,
            exponent: Sign::Positive,
        }
    }

    pub fn inverse(mut self) -> Self {
        self.exponent = self.exponent.flip();
        self
    }

    pub fn is_inverse(&self) -> bool {
        self.exponent == Sign::Negative
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match (self.family, self.exponent) {
            (Family::Alpha, Sign::Positive) => 'a',
            (Family::Alpha, Sign::Negative) => 'A',
            (Family::Beta, Sign::Positive) => 'b',
            (Family::Beta, Sign::Negative) => 'B',
        };
        write!(f, "{c}{}", self.index)
    }
}

impl FromStr for Letter {
    type Err = PageError;

    fn from_str(s: &str) -> Result<Self, PageError> {
        let bad = || PageError::BadToken(s.to_string());
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let (family, exponent) = match head {
            'a' => (Family::Alpha, Sign::Positive),
            'A' => (Family::Alpha, Sign::Negative),
            'b' => (Family::Beta, Sign::Positive),
            'B' => (Family::Beta, Sign::Negative),
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: usize = rest.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Letter {
            family,
            index,
            exponent,
        })
    }
}

/// Non-empty cyclic word in the letters `α_i^{±1}`, `β_i^{±1}`.
///
/// All adjacency-based computations treat the step from the last letter back
/// to the first as an adjacency.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveWord {
    letters: Vec<Letter>,
}

impl CurveWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self, PageError> {
        if letters.is_empty() {
            return Err(PageError::EmptyWord);
        }
        Ok(Self { letters })
    }

    /// Parses a whitespace-separated list of letter tokens.
    pub fn parse_str(s: &str) -> Result<Self, PageError> {
        let letters = s
            .split_whitespace()
            .map(Letter::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(letters)
    }

    pub fn parse_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self, PageError> {
        let letters = tokens
            .iter()
            .map(|t| Letter::from_str(t.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction
    }

    /// Cyclically adjacent pairs, including last -> first.
    pub fn cyclic_pairs(&self) -> impl Iterator<Item = (Letter, Letter)> + '_ {
        let n = self.letters.len();
        (0..n).map(move |i| (self.letters[i], self.letters[(i + 1) % n]))
    }

    /// The same curve with reversed orientation: reversed order, all
    /// exponents flipped.
    pub fn reversed(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn rotated(&self, by: usize) -> Self {
        let n = self.letters.len();
        let mut letters = self.letters.clone();
        letters.rotate_left(by % n);
        Self { letters }
    }
}

impl fmt::Display for CurveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// Checks every letter of `word` against the index ranges of `page`.
pub fn validate_word(page: PageSignature, word: &CurveWord) -> Result<(), PageError> {
    for letter in word.letters() {
        let max = page.max_index(letter.family);
        if letter.index > max {
            return Err(PageError::IndexOutOfRange {
                letter: letter.to_string(),
                family: match letter.family {
                    Family::Alpha => "alpha",
                    Family::Beta => "beta",
                },
                max,
            });
        }
    }
    Ok(())
}

/// The class of a curve in the first homology of the page, as coefficient
/// vectors over the basis `α_1..α_g, β_1..β_{g+h}`: signed exponent sums per
/// letter family and index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClassVector {
    /// `K • a_k` for k = 1..=g.
    pub a_coeffs: Vec<i64>,
    /// `K • b_k` for k = 1..=g+h.
    pub b_coeffs: Vec<i64>,
}

impl HomologyClassVector {
    pub fn zero(page: PageSignature) -> Self {
        Self {
            a_coeffs: vec![0; page.genus()],
            b_coeffs: vec![0; page.arc_count()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a_coeffs.iter().all(|&c| c == 0) && self.b_coeffs.iter().all(|&c| c == 0)
    }

    /// `K • a_k`, zero beyond the genus range.
    pub fn a(&self, k: usize) -> i64 {
        self.a_coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn b(&self, k: usize) -> i64 {
        self.b_coeffs.get(k).copied().unwrap_or(0)
    }
}

/// Reads off the homology class of a validated word.
pub fn homology_class(page: PageSignature, word: &CurveWord) -> HomologyClassVector {
    let mut class = HomologyClassVector::zero(page);
    for letter in word.letters() {
        let slot = letter.index - 1;
        match letter.family {
            Family::Alpha => class.a_coeffs[slot] += letter.exponent.value(),
            Family::Beta => class.b_coeffs[slot] += letter.exponent.value(),
        }
    }
    class
}

/// `n` positive or negative Dehn twists along a curve word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DehnTwist {
    pub curve: CurveWord,
    pub sign: Sign,
    pub power: u32,
}

impl DehnTwist {
    pub fn new(curve: CurveWord, sign: Sign, power: u32) -> Result<Self, PageError> {
        if power == 0 {
            return Err(PageError::ZeroPower);
        }
        Ok(Self { curve, sign, power })
    }
}

/// An abstract open book: a page and an ordered product of Dehn twists, the
/// first list entry being applied first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenBookSpec {
    pub page: PageSignature,
    pub monodromy: Vec<DehnTwist>,
}

impl OpenBookSpec {
    pub fn new(page: PageSignature, monodromy: Vec<DehnTwist>) -> Result<Self, PageError> {
        for twist in &monodromy {
            validate_word(page, &twist.curve)?;
        }
        Ok(Self { page, monodromy })
    }
}

/// Whether the knot's page sits above or below all monodromy twists in the
/// associated surgery picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Level {
    #[default]
    High,
    Low,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotOnPage {
    pub word: CurveWord,
    pub level: Level,
}

impl KnotOnPage {
    pub fn new(word: CurveWord, level: Level) -> Self {
        Self { word, level }
    }

    pub fn validated(self, page: PageSignature) -> Result<Self, PageError> {
        validate_word(page, &self.word)?;
        Ok(self)
    }
}
