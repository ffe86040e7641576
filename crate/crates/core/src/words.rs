//! Strings and bands over the algebra `K[x,y]/(xy, x^a, y^b)`.
//!
//! A word is a sequence over `{x, y}`. It is a *string* when it contains no
//! run `x^a` or `y^b`; the empty string is written `1`. The words here always
//! carry the algebra bounds they were validated against.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct AlgebraParams {
    a: usize,
    b: usize,
}

#[derive(Deserialize)]
struct RawParams {
    a: usize,
    b: usize,
}

impl TryFrom<RawParams> for AlgebraParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        AlgebraParams::new(raw.a, raw.b)
    }
}

impl AlgebraParams {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a < 2 || b < 2 {
            return Err(Error::InvalidParams { a, b });
        }
        Ok(AlgebraParams { a, b })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Dimension of the algebra, `a + b - 1`.
    pub fn d(&self) -> usize {
        self.a + self.b - 1
    }

    /// Replaces `(a, b)` by `(min(a, n), min(b, n))`; on `n x n` nilpotent
    /// matrices `A^a = 0` and `A^min(a,n) = 0` are equivalent. Bounds never
    /// drop below 2.
    pub fn normalized_for(&self, n: usize) -> AlgebraParams {
        AlgebraParams {
            a: self.a.min(n).max(2),
            b: self.b.min(n).max(2),
        }
    }
}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a = {}, b = {})", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    params: AlgebraParams,
    letters: Vec<Letter>,
}

fn runs_valid(letters: &[Letter], params: AlgebraParams) -> bool {
    let mut run = 0usize;
    let mut prev: Option<Letter> = None;
    for &l in letters {
        run = if prev == Some(l) { run + 1 } else { 1 };
        prev = Some(l);
        let bound = match l {
            Letter::X => params.a,
            Letter::Y => params.b,
        };
        if run >= bound {
            return false;
        }
    }
    true
}

impl Word {
    pub fn empty(params: AlgebraParams) -> Self {
        Word {
            params,
            letters: Vec::new(),
        }
    }

    pub fn from_letters(params: AlgebraParams, letters: Vec<Letter>) -> Result<Self> {
        if !runs_valid(&letters, params) {
            let text: String = letters.iter().map(|l| l.as_char()).collect();
            return Err(Error::InvalidWord(format!(
                "{text} contains x^{} or y^{}",
                params.a, params.b
            )));
        }
        Ok(Word { params, letters })
    }

    /// The word `x^i y^j`.
    pub fn x_y(params: AlgebraParams, i: usize, j: usize) -> Result<Self> {
        let mut letters = vec![Letter::X; i];
        letters.extend(std::iter::repeat_n(Letter::Y, j));
        Word::from_letters(params, letters)
    }

    /// The string `x^{a-1} y^{b-1}` of the indecomposable projective module.
    pub fn projective(params: AlgebraParams) -> Self {
        Word::x_y(params, params.a - 1, params.b - 1).expect("x^(a-1)y^(b-1) is a string")
    }

    pub fn parse(text: &str, params: AlgebraParams) -> Result<Self> {
        let letters = parse_letters(text)?;
        Word::from_letters(params, letters)
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Plain `{x,y}` spelling; the empty string gives `""`.
    pub fn plain(&self) -> String {
        self.letters.iter().map(|l| l.as_char()).collect()
    }

    /// Caret-exponent spelling, e.g. `x^2yx^2y^2`.
    pub fn caret(&self) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            out.push(l.as_char());
            if j - i > 1 {
                out.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        out
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::from_letters(self.params, letters)
    }

    pub fn power(&self, m: usize) -> Result<Word> {
        let letters = self.letters.repeat(m);
        Word::from_letters(self.params, letters)
    }

    pub fn reverse(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            params: self.params,
            letters,
        }
    }

    /// The letters in `start..end` as a word.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word {
            params: self.params,
            letters: self.letters[start..end].to_vec(),
        }
    }

    fn rotation(&self, k: usize) -> Word {
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word {
            params: self.params,
            letters,
        }
    }

    /// Lengths `(c, d)` of the blocks `x^c y^d` when the word starts with `x`
    /// and ends with `y`.
    pub fn xy_blocks(&self) -> Option<Vec<(usize, usize)>> {
        if self.first() != Some(Letter::X) || self.last() != Some(Letter::Y) {
            return None;
        }
        let mut blocks = Vec::new();
        let mut i = 0;
        let ls = &self.letters;
        while i < ls.len() {
            let mut c = 0;
            while i < ls.len() && ls[i] == Letter::X {
                c += 1;
                i += 1;
            }
            let mut d = 0;
            while i < ls.len() && ls[i] == Letter::Y {
                d += 1;
                i += 1;
            }
            blocks.push((c, d));
        }
        Some(blocks)
    }

    pub fn is_projective(&self) -> bool {
        *self == Word::projective(self.params)
    }

    pub fn band_class(&self) -> Result<BandClass> {
        if self.is_empty() {
            return Err(Error::Precondition("band_class of the empty word".into()));
        }
        // A one-letter word can have a valid square without all powers being valid.
        let has_both = self.letters.contains(&Letter::X) && self.letters.contains(&Letter::Y);
        if !has_both || !runs_valid(&self.letters.repeat(2), self.params) {
            return Ok(BandClass::NotBand);
        }
        let n = self.len();
        let period = (1..=n)
            .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| self.letters[i] == self.letters[i % p]))
            .unwrap_or(n);
        if period < n {
            return Ok(BandClass::Periodic);
        }
        let canonical = (0..n).map(|k| self.rotation(k)).min().expect("nonempty");
        Ok(BandClass::Primitive(canonical))
    }

    pub fn semi_kind(&self) -> SemiKind {
        let (a, b) = (self.params.a, self.params.b);
        if self.is_empty() || self.len() < a + b - 2 {
            return SemiKind::Neither;
        }
        let ls = &self.letters;
        let n = ls.len();
        let starts = |l: Letter, k: usize| ls[..k].iter().all(|&c| c == l);
        let ends = |l: Letter, k: usize| ls[n - k..].iter().all(|&c| c == l);
        if starts(Letter::X, a - 1) && ends(Letter::Y, b - 1) {
            SemiKind::SemiProjective
        } else if starts(Letter::Y, b - 1) && ends(Letter::X, a - 1) {
            SemiKind::SemiInjective
        } else {
            SemiKind::Neither
        }
    }

    /// `x^{a-1} y C x y^{b-1}`, the inverse translate of a semi-projective string.
    pub fn tau_inverse(&self) -> Result<Word> {
        if self.semi_kind() != SemiKind::SemiProjective {
            return Err(Error::Precondition(format!("{self} is not semi-projective")));
        }
        let (a, b) = (self.params.a, self.params.b);
        let mut letters = vec![Letter::X; a - 1];
        letters.push(Letter::Y);
        letters.extend_from_slice(&self.letters);
        letters.push(Letter::X);
        letters.extend(std::iter::repeat_n(Letter::Y, b - 1));
        Word::from_letters(self.params, letters)
    }

    /// Recognizes the three families of strings whose module has an open orbit,
    /// on the semi-projective side or (via reversal) the semi-injective side.
    pub fn open_type(&self) -> Option<OpenType> {
        if let Some(pattern) = match_open_pattern(self) {
            return Some(OpenType {
                pattern,
                side: Side::SemiProjective,
            });
        }
        match_open_pattern(&self.reverse()).map(|pattern| OpenType {
            pattern,
            side: Side::SemiInjective,
        })
    }

    /// All factorizations `C = D E F`, ordered by `(|D|, |E|)`.
    pub fn triples(&self) -> Vec<Triple> {
        let n = self.len();
        let mut out = Vec::with_capacity((n + 1) * (n + 2) / 2);
        for i in 0..=n {
            for j in i..=n {
                out.push(Triple {
                    d: self.slice(0, i),
                    e: self.slice(i, j),
                    f: self.slice(j, n),
                });
            }
        }
        out
    }

    /// Factor strings: `D` is empty or ends in `x`, `F` is empty or starts with `y`.
    pub fn factor_triples(&self) -> Vec<Triple> {
        self.triples()
            .into_iter()
            .filter(|t| t.d.last().is_none_or(|l| l == Letter::X) && t.f.first().is_none_or(|l| l == Letter::Y))
            .collect()
    }

    /// Substrings: `D` is empty or ends in `y`, `F` is empty or starts with `x`.
    pub fn sub_triples(&self) -> Vec<Triple> {
        self.triples()
            .into_iter()
            .filter(|t| t.d.last().is_none_or(|l| l == Letter::Y) && t.f.first().is_none_or(|l| l == Letter::X))
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.plain())
        }
    }
}

/// Free-function form of [`Word::parse`].
pub fn parse_word(text: &str, params: AlgebraParams) -> Result<Word> {
    Word::parse(text, params)
}

/// Parses `xxy`, `x^2y`, `(xxy)^2xyy`, `1` or the empty text into letters.
fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() || chars == ['1'] {
        return Ok(Vec::new());
    }
    let mut pos = 0;
    let letters = parse_seq(&chars, &mut pos, 0)?;
    if pos != chars.len() {
        return Err(Error::InvalidWord(format!("unexpected {:?} in {text:?}", chars[pos])));
    }
    Ok(letters)
}

fn parse_seq(chars: &[char], pos: &mut usize, depth: usize) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    while *pos < chars.len() {
        let unit = match chars[*pos] {
            'x' => {
                *pos += 1;
                vec![Letter::X]
            }
            'y' => {
                *pos += 1;
                vec![Letter::Y]
            }
            '(' => {
                *pos += 1;
                let inner = parse_seq(chars, pos, depth + 1)?;
                if chars.get(*pos) != Some(&')') {
                    return Err(Error::InvalidWord("unbalanced parenthesis".into()));
                }
                *pos += 1;
                inner
            }
            ')' if depth > 0 => return Ok(out),
            c => return Err(Error::InvalidWord(format!("invalid character {c:?}"))),
        };
        let mut reps = 1;
        if chars.get(*pos) == Some(&'^') {
            *pos += 1;
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                return Err(Error::InvalidWord("missing exponent after '^'".into()));
            }
            let digits: String = chars[start..*pos].iter().collect();
            reps = digits
                .parse()
                .map_err(|_| Error::InvalidWord(format!("bad exponent {digits}")))?;
        }
        for _ in 0..reps {
            out.extend_from_slice(&unit);
        }
    }
    if depth > 0 {
        return Err(Error::InvalidWord("unbalanced parenthesis".into()));
    }
    Ok(out)
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.plain())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BandClass {
    NotBand,
    Periodic,
    /// Primitive band with its lexicographically least rotation (`x < y`).
    Primitive(Word),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiKind {
    SemiProjective,
    SemiInjective,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "semi-projective")]
    SemiProjective,
    #[serde(rename = "semi-injective")]
    SemiInjective,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::SemiProjective => write!(f, "semi-projective"),
            Side::SemiInjective => write!(f, "semi-injective"),
        }
    }
}

/// Exponents of a matched open-orbit pattern; `i` and `j` are the free
/// exponents of the optional middle blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpenPattern {
    /// `(x^{a-1}y)^r (x^{a-1}y^{b-1})^s (xy^{b-1})^t`
    Type1 { r: usize, s: usize, t: usize },
    /// `(x^{a-1}y)^r (x^{a-1}y^i)^α (x^{a-1}y^{b-1})^s (x^j y^{b-1})^β (xy^{b-1})^t`
    Type2 {
        r: usize,
        i: Option<usize>,
        s: usize,
        j: Option<usize>,
        t: usize,
    },
    /// `(x^{a-1}y)^r x^i y^j (xy^{b-1})^t`
    Type3 { r: usize, i: usize, j: usize, t: usize },
}

impl OpenPattern {
    pub fn type_number(&self) -> u8 {
        match self {
            OpenPattern::Type1 { .. } => 1,
            OpenPattern::Type2 { .. } => 2,
            OpenPattern::Type3 { .. } => 3,
        }
    }

    /// Spells the pattern as a string over `params`.
    pub fn word(&self, params: AlgebraParams) -> Result<Word> {
        let (a, b) = (params.a, params.b);
        let mut blocks: Vec<(usize, usize)> = Vec::new();
        let mut push = |count: usize, block: (usize, usize)| blocks.extend(std::iter::repeat_n(block, count));
        match *self {
            OpenPattern::Type1 { r, s, t } => {
                push(r, (a - 1, 1));
                push(s, (a - 1, b - 1));
                push(t, (1, b - 1));
            }
            OpenPattern::Type2 { r, i, s, j, t } => {
                push(r, (a - 1, 1));
                if let Some(i) = i {
                    push(1, (a - 1, i));
                }
                push(s, (a - 1, b - 1));
                if let Some(j) = j {
                    push(1, (j, b - 1));
                }
                push(t, (1, b - 1));
            }
            OpenPattern::Type3 { r, i, j, t } => {
                push(r, (a - 1, 1));
                push(1, (i, j));
                push(t, (1, b - 1));
            }
        }
        let mut letters = Vec::new();
        for (c, d) in blocks {
            letters.extend(std::iter::repeat_n(Letter::X, c));
            letters.extend(std::iter::repeat_n(Letter::Y, d));
        }
        Word::from_letters(params, letters)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpenType {
    pub pattern: OpenPattern,
    pub side: Side,
}

fn all_eq(blocks: &[(usize, usize)], block: (usize, usize)) -> bool {
    blocks.iter().all(|&b| b == block)
}

/// Matches `c` itself (not its reversal) against the three patterns, in type order.
fn match_open_pattern(c: &Word) -> Option<OpenPattern> {
    let (a, b) = (c.params.a, c.params.b);
    let blocks = c.xy_blocks()?;
    let n = blocks.len();
    let lead = (a - 1, 1);
    let proj = (a - 1, b - 1);
    let tail = (1, b - 1);

    for r in 0..=n {
        for s in 0..=n - r {
            let t = n - r - s;
            if r + s >= 1
                && s + t >= 1
                && all_eq(&blocks[..r], lead)
                && all_eq(&blocks[r..r + s], proj)
                && all_eq(&blocks[r + s..], tail)
            {
                return Some(OpenPattern::Type1 { r, s, t });
            }
        }
    }

    for r in 0..=n {
        if !all_eq(&blocks[..r], lead) {
            break;
        }
        for alpha in 0..=1usize {
            if r + alpha > n {
                continue;
            }
            let i = if alpha == 1 {
                let (c0, d0) = blocks[r];
                if c0 != a - 1 || d0 < 2 || d0 + 2 > b {
                    continue;
                }
                Some(d0)
            } else {
                None
            };
            for s in 0..=n - r - alpha {
                let mid = r + alpha;
                if !all_eq(&blocks[mid..mid + s], proj) {
                    break;
                }
                for beta in 0..=1usize {
                    if mid + s + beta > n {
                        continue;
                    }
                    let j = if beta == 1 {
                        let (c1, d1) = blocks[mid + s];
                        if d1 != b - 1 || c1 < 2 || c1 + 2 > a {
                            continue;
                        }
                        Some(c1)
                    } else {
                        None
                    };
                    let rest = &blocks[mid + s + beta..];
                    let t = rest.len();
                    if alpha + beta >= 1 && r + alpha + s >= 1 && s + beta + t >= 1 && all_eq(rest, tail) {
                        return Some(OpenPattern::Type2 { r, i, s, j, t });
                    }
                }
            }
        }
    }

    for r in 1..n {
        let t = n - r - 1;
        let (i, j) = blocks[r];
        if t >= 1
            && (1..=a.saturating_sub(2)).contains(&i)
            && (1..=b.saturating_sub(2)).contains(&j)
            && all_eq(&blocks[..r], lead)
            && all_eq(&blocks[r + 1..], tail)
        {
            return Some(OpenPattern::Type3 { r, i, j, t });
        }
    }
    None
}

/// All semi-projective strings `C` with `|C| + 1 = dim` matching one of the
/// open-orbit patterns, deduplicated and sorted.
pub fn enumerate_open_strings(dim: usize, params: AlgebraParams) -> Vec<Word> {
    let mut found = BTreeSet::new();
    if dim == 0 {
        return Vec::new();
    }
    let len = dim - 1;
    let (a, b) = (params.a, params.b);
    let lead_len = a;
    let proj_len = a + b - 2;
    let tail_len = b;
    let mut add = |pattern: OpenPattern| {
        let w = pattern.word(params).expect("pattern words are strings");
        debug_assert_eq!(w.len(), len);
        found.insert(w);
    };

    for r in 0..=len / lead_len {
        for s in 0..=(len - r * lead_len) / proj_len {
            let rest = len - r * lead_len - s * proj_len;
            if rest.is_multiple_of(tail_len) {
                let t = rest / tail_len;
                if r + s >= 1 && s + t >= 1 {
                    add(OpenPattern::Type1 { r, s, t });
                }
            }
        }
    }

    let is: Vec<Option<usize>> = std::iter::once(None)
        .chain((2..b.saturating_sub(1)).map(Some))
        .collect();
    let js: Vec<Option<usize>> = std::iter::once(None)
        .chain((2..a.saturating_sub(1)).map(Some))
        .collect();
    for &i in &is {
        for &j in &js {
            let alpha = usize::from(i.is_some());
            let beta = usize::from(j.is_some());
            if alpha + beta == 0 {
                continue;
            }
            let fixed = i.map_or(0, |i| a - 1 + i) + j.map_or(0, |j| j + b - 1);
            if fixed > len {
                continue;
            }
            let free = len - fixed;
            for r in 0..=free / lead_len {
                for s in 0..=(free - r * lead_len) / proj_len {
                    let rest = free - r * lead_len - s * proj_len;
                    if rest.is_multiple_of(tail_len) {
                        let t = rest / tail_len;
                        if r + alpha + s >= 1 && s + beta + t >= 1 {
                            add(OpenPattern::Type2 { r, i, s, j, t });
                        }
                    }
                }
            }
        }
    }

    for i in 1..a.saturating_sub(1) {
        for j in 1..b.saturating_sub(1) {
            if i + j > len {
                continue;
            }
            let free = len - i - j;
            for r in 1..=free / lead_len {
                let rest = free - r * lead_len;
                if rest.is_multiple_of(tail_len) && rest / tail_len >= 1 {
                    add(OpenPattern::Type3 {
                        r,
                        i,
                        j,
                        t: rest / tail_len,
                    });
                }
            }
        }
    }
    found.into_iter().collect()
}

/// A factorization `C = D E F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    pub d: Word,
    pub e: Word,
    pub f: Word,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.d, self.e, self.f)
    }
}

/// Pairs (factor string of `c1`, substring of `c2`) sharing the middle word.
pub fn admissible_pairs(c1: &Word, c2: &Word) -> Vec<(Triple, Triple)> {
    let subs = c2.sub_triples();
    let mut out = Vec::new();
    for fac in c1.factor_triples() {
        for sub in &subs {
            if fac.e.letters == sub.e.letters {
                out.push((fac.clone(), sub.clone()));
            }
        }
    }
    out
}

/// Every string of length at most `max_len`, shortest first, then lexicographic.
pub fn all_strings(params: AlgebraParams, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty(params)];
    let mut frontier = vec![Word::empty(params)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in [Letter::X, Letter::Y] {
                let mut letters = w.letters.clone();
                letters.push(l);
                if runs_valid(&letters, params) {
                    next.push(Word { params, letters });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p33() -> AlgebraParams {
        AlgebraParams::new(3, 3).unwrap()
    }

    fn w(text: &str) -> Word {
        Word::parse(text, p33()).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(w("xxy").plain(), "xxy");
        assert!(Word::parse("xxx", p33()).is_err());
        assert!(w("").is_empty());
        assert!(w("1").is_empty());
        assert_eq!(w("x^2yx^2y^2").plain(), "xxyxxyy");
        assert_eq!(w("(xxy)^2xyy").plain(), "xxyxxyxyy");
        assert!(Word::parse("xz", p33()).is_err());
        assert!(Word::parse("x^", p33()).is_err());
        assert!(Word::parse("(xy", p33()).is_err());
    }

    #[test]
    fn caret_round_trip() {
        for c in all_strings(p33(), 7) {
            assert_eq!(Word::parse(&c.caret(), p33()).unwrap(), c);
        }
        assert_eq!(w("xxyxxyy").caret(), "x^2yx^2y^2");
    }

    #[test]
    fn band_class_examples() {
        assert_eq!(w("xxy").band_class().unwrap(), BandClass::Primitive(w("xxy")));
        assert_eq!(w("xyxy").band_class().unwrap(), BandClass::Periodic);
        assert_eq!(w("xx").band_class().unwrap(), BandClass::NotBand);
        assert_eq!(w("x").band_class().unwrap(), BandClass::NotBand);
        assert_eq!(w("xyx").band_class().unwrap(), BandClass::Primitive(w("xxy")));
        assert_eq!(w("yyxx").band_class().unwrap(), BandClass::Primitive(w("xxyy")));
        assert_eq!(w("xxyx").band_class().unwrap(), BandClass::NotBand);
        assert!(w("").band_class().is_err());
    }

    #[test]
    fn rotations_share_canonical_form() {
        for c in all_strings(p33(), 8) {
            if c.is_empty() {
                continue;
            }
            if let BandClass::Primitive(canon) = c.band_class().unwrap() {
                for k in 0..c.len() {
                    assert_eq!(c.rotation(k).band_class().unwrap(), BandClass::Primitive(canon.clone()));
                }
            }
        }
    }

    #[test]
    fn tau_inverse_examples() {
        assert_eq!(w("xxyy").tau_inverse().unwrap(), w("xxyxxyyxyy"));
        assert_eq!(w("xxyxyy").tau_inverse().unwrap(), w("xxyxxyxyyxyy"));
        assert!(w("xy").tau_inverse().is_err());
    }

    #[test]
    fn semi_kind_examples() {
        assert_eq!(w("xxyy").semi_kind(), SemiKind::SemiProjective);
        assert_eq!(w("yyxx").semi_kind(), SemiKind::SemiInjective);
        assert_eq!(w("xy").semi_kind(), SemiKind::Neither);
        assert_eq!(w("").semi_kind(), SemiKind::Neither);
        let p22 = AlgebraParams::new(2, 2).unwrap();
        assert_eq!(Word::parse("", p22).unwrap().semi_kind(), SemiKind::Neither);
        assert_eq!(Word::parse("xy", p22).unwrap().semi_kind(), SemiKind::SemiProjective);
        assert_eq!(Word::parse("yx", p22).unwrap().semi_kind(), SemiKind::SemiInjective);
    }

    #[test]
    fn semi_kind_swaps_under_reversal() {
        for params in [
            p33(),
            AlgebraParams::new(2, 3).unwrap(),
            AlgebraParams::new(4, 3).unwrap(),
        ] {
            for c in all_strings(params, 9) {
                let expected = match c.semi_kind() {
                    SemiKind::SemiProjective => SemiKind::SemiInjective,
                    SemiKind::SemiInjective => SemiKind::SemiProjective,
                    SemiKind::Neither => SemiKind::Neither,
                };
                assert_eq!(c.reverse().semi_kind(), expected);
                if c.semi_kind() == SemiKind::SemiProjective {
                    assert_eq!(c.tau_inverse().unwrap().semi_kind(), SemiKind::SemiProjective);
                }
            }
        }
    }

    #[test]
    fn open_type_examples() {
        assert_eq!(
            w("xxyy").open_type(),
            Some(OpenType {
                pattern: OpenPattern::Type1 { r: 0, s: 1, t: 0 },
                side: Side::SemiProjective
            })
        );
        assert_eq!(
            w("xxyxyxyy").open_type(),
            Some(OpenType {
                pattern: OpenPattern::Type3 { r: 1, i: 1, j: 1, t: 1 },
                side: Side::SemiProjective
            })
        );
        assert_eq!(w("xyxy").open_type(), None);
        assert_eq!(w("yyxx").open_type().map(|t| t.side), Some(Side::SemiInjective));
        // (x^2y)(xy)(xy)(xy^2) is not open
        assert_eq!(w("xxyxyxyxyy").open_type(), None);
    }

    #[test]
    fn type_two_needs_larger_bounds() {
        let p55 = AlgebraParams::new(5, 5).unwrap();
        let c = Word::parse("x^4y^2x^4y^4", p55).unwrap();
        assert_eq!(
            c.open_type().unwrap().pattern,
            OpenPattern::Type2 {
                r: 0,
                i: Some(2),
                s: 1,
                j: None,
                t: 0
            }
        );
    }

    #[test]
    fn open_strings_examples() {
        assert_eq!(enumerate_open_strings(5, p33()), vec![w("xxyy")]);
        assert_eq!(enumerate_open_strings(7, p33()), vec![w("xxyxyy")]);
        assert!(enumerate_open_strings(6, p33()).is_empty());
        assert!(enumerate_open_strings(4, p33()).is_empty());
        let mut nine = enumerate_open_strings(9, p33());
        nine.sort();
        let mut expected = vec![w("xxyyxxyy"), w("xxyxyxyy")];
        expected.sort();
        assert_eq!(nine, expected);
    }

    #[test]
    fn open_strings_match_and_are_semi_projective() {
        for (a, b) in [(2, 2), (2, 3), (3, 3), (4, 3), (4, 4), (5, 4), (5, 6)] {
            let params = AlgebraParams::new(a, b).unwrap();
            for dim in 1..=16 {
                for c in enumerate_open_strings(dim, params) {
                    assert_eq!(c.len() + 1, dim);
                    assert_eq!(c.semi_kind(), SemiKind::SemiProjective, "{c}");
                    assert_eq!(c.open_type().map(|t| t.side), Some(Side::SemiProjective), "{c}");
                }
            }
        }
    }

    #[test]
    fn open_strings_agree_with_matcher_exhaustively() {
        for (a, b) in [(2, 2), (3, 3), (4, 3), (5, 5)] {
            let params = AlgebraParams::new(a, b).unwrap();
            let strings = all_strings(params, 11);
            for dim in 1..=12 {
                let mut by_matcher: Vec<Word> = strings
                    .iter()
                    .filter(|c| c.len() + 1 == dim)
                    .filter(|c| c.open_type().map(|t| t.side) == Some(Side::SemiProjective))
                    .cloned()
                    .collect();
                by_matcher.sort();
                assert_eq!(by_matcher, enumerate_open_strings(dim, params), "a={a} b={b} dim={dim}");
            }
        }
    }

    #[test]
    fn admissible_pairs_example() {
        let pairs = admissible_pairs(&w("xxy"), &w("xyxx"));
        let rendered: Vec<String> = pairs.iter().map(|(f, s)| format!("({f},{s})")).collect();
        let mut expected = vec![
            "((xx,1,y),(1,1,xyxx))",
            "((xx,1,y),(xy,1,xx))",
            "((1,xx,y),(xy,xx,1))",
            "((x,x,y),(xy,x,x))",
            "((x,xy,1),(1,xy,xx))",
        ];
        let mut got: Vec<&str> = rendered.iter().map(String::as_str).collect();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn admissible_pairs_small() {
        let pairs = admissible_pairs(&w(""), &w(""));
        assert_eq!(pairs.len(), 1);
        let pairs = admissible_pairs(&w("x"), &w("y"));
        assert_eq!(pairs.len(), 1);
        assert_eq!(format!("{}", pairs[0].0), "(x,1,1)");
        assert_eq!(format!("{}", pairs[0].1), "(y,1,1)");
    }

    #[test]
    fn identity_pair_always_admissible() {
        for c in all_strings(p33(), 6) {
            let pairs = admissible_pairs(&c, &c);
            assert!(pairs
                .iter()
                .any(|(f, s)| f.d.is_empty() && f.f.is_empty() && s.d.is_empty() && s.f.is_empty()));
        }
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(w("xxy").reverse(), w("yxx"));
        assert_eq!(w("").reverse(), w(""));
        assert_eq!(w("xxyy").reverse().reverse(), w("xxyy"));
    }

    #[test]
    fn string_counts() {
        // a = b = 2: alternating words, two per positive length
        let p22 = AlgebraParams::new(2, 2).unwrap();
        assert_eq!(all_strings(p22, 5).len(), 1 + 2 * 5);
    }
}
