//! Alphabets and finite words.
//!
//! Letters are dense indices into an [`Alphabet`]; symbol names are only used
//! for parsing and rendering. Words compare in shortlex order (length first,
//! then lexicographically by letter index), which is the canonical order used
//! for every sorted output in the crate.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if names.len() > Letter::MAX as usize {
            return Err(Error::InvalidAlphabet(format!("{} letters is too many", names.len())));
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ',') {
                return Err(Error::InvalidAlphabet(format!("bad symbol name {name:?}")));
            }
            if index.insert(name.clone(), i as Letter).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{name}`")));
            }
        }
        Ok(Alphabet { names, index })
    }

    /// Alphabet whose symbols are the characters of `s`.
    pub fn from_chars(s: &str) -> Result<Self> {
        Self::new(s.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter as usize]
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        0..self.names.len() as Letter
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses one word token.
    ///
    /// A token containing a comma is a comma-separated symbol list; otherwise
    /// single-character alphabets split it into characters and other
    /// alphabets read it as one symbol. `ε` and the empty string denote the
    /// empty word.
    pub fn parse_word(&self, token: &str) -> Result<Word> {
        let token = token.trim();
        if token.is_empty() || (token == "ε" && !self.index.contains_key("ε")) {
            return Ok(Word::empty());
        }
        if token.contains(',') {
            return token
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| self.letter(s.trim()))
                .collect();
        }
        if let Ok(l) = self.letter(token) {
            return Ok(Word::from(vec![l]));
        }
        if self.single_char() {
            return token.chars().map(|c| self.letter(&c.to_string())).collect();
        }
        Err(Error::UnknownSymbol(token.to_string()))
    }

    /// Parses a whitespace-separated list of word tokens.
    pub fn parse_words(&self, text: &str) -> Result<Vec<Word>> {
        text.split_whitespace().map(|t| self.parse_word(t)).collect()
    }

    pub fn word_from_symbols<S: AsRef<str>>(&self, symbols: &[S]) -> Result<Word> {
        symbols.iter().map(|s| self.letter(s.as_ref())).collect()
    }

    pub fn symbols(&self, word: &[Letter]) -> Vec<String> {
        word.iter().map(|&l| self.names[l as usize].clone()).collect()
    }

    /// Renders a word: concatenated for single-character alphabets,
    /// comma-joined otherwise, `ε` for the empty word.
    pub fn render(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char() { "" } else { "," };
        word.iter()
            .map(|&l| self.names[l as usize].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn render_all<'a, I>(&self, words: I) -> String
    where
        I: IntoIterator<Item = &'a Word>,
    {
        words
            .into_iter()
            .map(|w| self.render(w))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(","))
    }
}

/// A finite word over some alphabet, ordered shortlex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn pop(&mut self) -> Option<Letter> {
        self.0.pop()
    }

    pub fn prepend(&self, l: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(l);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn append(&self, l: Letter) -> Word {
        let mut w = self.clone();
        w.0.push(l);
        w
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn is_proper_prefix(p: &[Letter], w: &[Letter]) -> bool {
    p.len() < w.len() && w.starts_with(p)
}

pub fn is_proper_suffix(s: &[Letter], w: &[Letter]) -> bool {
    s.len() < w.len() && w.ends_with(s)
}

/// Does `needle` occur as a factor of `hay`?
pub fn is_factor(needle: &[Letter], hay: &[Letter]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}
