//! Alphabets, letters and words over `X ∪ X⁻¹`.
//!
//! Words are plain letter sequences; they do not carry their alphabet.
//! Validation against an [`Alphabet`] happens where words enter the
//! library (parsing, instance construction).

use std::fmt;
use std::iter::FromIterator;
use std::ops::Index;

use crate::error::{Error, Result};

/// A generator or its formal inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    generator: u32,
    inverse: bool,
}

impl Letter {
    pub const fn pos(generator: u32) -> Self {
        Letter { generator, inverse: false }
    }

    pub const fn neg(generator: u32) -> Self {
        Letter { generator, inverse: true }
    }

    /// Builds a letter from a generator index and a sign (`+1` or `-1`).
    pub fn new(generator: u32, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter { generator, inverse: sign < 0 }
    }

    pub fn generator(self) -> u32 {
        self.generator
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// Dense code in `0..2n`: `2g` for `g`, `2g + 1` for `g⁻¹`.
    pub fn code(self) -> usize {
        2 * self.generator as usize + self.inverse as usize
    }

    pub fn from_code(code: usize) -> Self {
        Letter { generator: (code / 2) as u32, inverse: code % 2 == 1 }
    }
}

/// A finite word; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Word from `(generator, sign)` pairs.
    pub fn from_pairs(pairs: &[(u32, i8)]) -> Self {
        pairs.iter().map(|&(g, s)| Letter::new(g, s)).collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Reverses the letter order and flips every sign.
    pub fn inverse(&self) -> Word {
        self.0.iter().rev().map(|l| l.inverse()).collect()
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self` repeated `n` times, unreduced.
    pub fn pow(&self, n: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.0);
        }
        Word(letters)
    }

    /// The freely reduced form: no adjacent `x x⁻¹` pair.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            push_reduced(&mut stack, l);
        }
        Word(stack)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    pub fn is_freely_trivial(&self) -> bool {
        self.free_reduce().is_empty()
    }

    /// Free reduction followed by peeling matched end pairs `x … x⁻¹`.
    pub fn cyclic_reduce(&self) -> CyclicDecomposition {
        let reduced = self.free_reduce().0;
        let mut lo = 0;
        let mut hi = reduced.len();
        while hi - lo >= 2 && reduced[lo] == reduced[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        let core = Word(reduced[lo..hi].to_vec());
        let conjugator = Word(reduced[..lo].to_vec()).inverse();
        CyclicDecomposition { core, conjugator }
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<u32> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Exponent sum of every generator `0..rank`.
    pub fn abelianization(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for l in &self.0 {
            v[l.generator as usize] += l.sign() as i64;
        }
        v
    }
}

/// Appends a letter to an already reduced stack, cancelling if possible.
pub(crate) fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last() == Some(&l.inverse()) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

impl Index<usize> for Word {
    type Output = Letter;
    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Word {
    /// Letter syntax when every generator fits in `a..z`, token syntax
    /// (`g0G1`) otherwise. The empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let letters = self.0.iter().all(|l| l.generator < 26);
        for l in &self.0 {
            if letters {
                let base = if l.inverse { b'A' } else { b'a' };
                write!(f, "{}", (base + l.generator as u8) as char)?;
            } else {
                write!(f, "{}{}", if l.inverse { 'G' } else { 'g' }, l.generator)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// `original = conjugator⁻¹ · core · conjugator` in the free group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub core: Word,
    pub conjugator: Word,
}

impl CyclicDecomposition {
    pub fn reassemble(&self) -> Word {
        self.conjugator.inverse().concat(&self.core).concat(&self.conjugator)
    }
}

/// The generating set `X`, optionally with printable names.
///
/// Without names, generator `i` is written as the `i`-th lowercase letter
/// and its inverse in uppercase. Named generators use lowercase names and
/// their uppercase spelling for inverses (`x`/`X`, `t`/`T`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: u32,
    names: Option<Vec<String>>,
}

impl Alphabet {
    pub fn new(size: u32) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet { size, names: None })
    }

    pub fn with_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().trim().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let mut chars = n.chars();
            let ok = matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
                && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit());
            if !ok {
                return Err(Error::InvalidNames(format!(
                    "{n:?}: names must be lowercase ASCII identifiers"
                )));
            }
            if n.starts_with('g') && n[1..].chars().next().is_some_and(|c| c.is_ascii_digit()) {
                return Err(Error::InvalidNames(format!("{n:?} collides with token syntax")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidNames(format!("duplicate name {n:?}")));
            }
        }
        Ok(Alphabet { size: names.len() as u32, names: Some(names) })
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// All `2n` letters, generators before inverses for each index.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.size).flat_map(|g| [Letter::pos(g), Letter::neg(g)])
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.iter().all(|l| l.generator < self.size)
    }

    pub fn validate(&self, w: &Word) -> Result<()> {
        match w.iter().find(|l| l.generator >= self.size) {
            Some(l) => Err(Error::LetterOutOfRange { generator: l.generator, size: self.size }),
            None => Ok(()),
        }
    }

    /// Parses letter syntax (`aB`, or names) or token syntax (`g0G1`).
    /// `""` and `"1"` denote the empty word.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let chars: Vec<char> = text.chars().collect();
        let start = chars.iter().position(|c| !c.is_whitespace());
        let Some(start) = start else {
            return Ok(Word::empty());
        };
        let trimmed: String = chars[start..].iter().collect::<String>().trim_end().to_string();
        if trimmed == "1" {
            return Ok(Word::empty());
        }
        let token_mode = matches!(chars[start], 'g' | 'G')
            && chars.get(start + 1).is_some_and(|c| c.is_ascii_digit());
        if token_mode {
            self.parse_tokens(&chars, start)
        } else {
            self.parse_letters(&chars, start)
        }
    }

    fn parse_tokens(&self, chars: &[char], start: usize) -> Result<Word> {
        let mut out = Vec::new();
        let mut i = start;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let inverse = match c {
                'g' => false,
                'G' => true,
                _ => {
                    return Err(Error::Parse {
                        position: i,
                        message: format!("unexpected {c:?} in token syntax"),
                    })
                }
            };
            let digits_start = i + 1;
            let mut j = digits_start;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j == digits_start {
                return Err(Error::Parse { position: i, message: "missing generator index".into() });
            }
            let digits: String = chars[digits_start..j].iter().collect();
            let generator: u32 = digits.parse().map_err(|_| Error::Parse {
                position: digits_start,
                message: "generator index too large".into(),
            })?;
            if generator >= self.size {
                return Err(Error::Parse {
                    position: i,
                    message: format!("generator {generator} out of range for alphabet of size {}", self.size),
                });
            }
            out.push(Letter { generator, inverse });
            i = j;
        }
        Ok(Word(out))
    }

    fn parse_letters(&self, chars: &[char], start: usize) -> Result<Word> {
        let mut out = Vec::new();
        let mut i = start;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            match &self.names {
                None => {
                    let (base, inverse) = if c.is_ascii_lowercase() {
                        (b'a', false)
                    } else if c.is_ascii_uppercase() {
                        (b'A', true)
                    } else {
                        return Err(Error::Parse { position: i, message: format!("unexpected {c:?}") });
                    };
                    let generator = (c as u8 - base) as u32;
                    if generator >= self.size {
                        return Err(Error::Parse {
                            position: i,
                            message: format!("letter {c:?} out of range for alphabet of size {}", self.size),
                        });
                    }
                    out.push(Letter { generator, inverse });
                    i += 1;
                }
                Some(names) => {
                    let mut best: Option<(usize, Letter)> = None;
                    for (g, name) in names.iter().enumerate() {
                        let n = name.len();
                        if i + n > chars.len() {
                            continue;
                        }
                        let piece: String = chars[i..i + n].iter().collect();
                        let inverse = if piece == *name {
                            false
                        } else if piece == name.to_ascii_uppercase() {
                            true
                        } else {
                            continue;
                        };
                        if best.map_or(true, |(len, _)| n > len) {
                            best = Some((n, Letter { generator: g as u32, inverse }));
                        }
                    }
                    match best {
                        Some((n, l)) => {
                            out.push(l);
                            i += n;
                        }
                        None => {
                            return Err(Error::Parse {
                                position: i,
                                message: format!("unknown generator at {c:?}"),
                            })
                        }
                    }
                }
            }
        }
        Ok(Word(out))
    }

    /// Formats with this alphabet's names; falls back to [`Word`]'s
    /// `Display` for unnamed alphabets.
    pub fn format(&self, w: &Word) -> String {
        match &self.names {
            None => w.to_string(),
            Some(_) if w.is_empty() => "1".to_string(),
            Some(names) => w
                .iter()
                .map(|l| {
                    let n = &names[l.generator as usize];
                    if l.inverse {
                        n.to_ascii_uppercase()
                    } else {
                        n.clone()
                    }
                })
                .collect(),
        }
    }
}
