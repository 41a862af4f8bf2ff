//! Letter-to-word morphisms and their fixpoints.

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// Longest word any morphism iteration is allowed to produce.
pub const MAX_WORD_LEN: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    /// Builds a morphism from `(letter, image)` rules given by symbol name.
    /// Every source letter needs exactly one rule.
    pub fn from_rules<S, T>(source: &Alphabet, target: &Alphabet, rules: &[(S, Vec<T>)]) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut images: Vec<Option<Word>> = vec![None; source.len()];
        for (letter, image) in rules {
            let l = source.letter(letter.as_ref())?;
            if images[l as usize].is_some() {
                return Err(Error::DuplicateRule(letter.as_ref().to_string()));
            }
            images[l as usize] = Some(target.word_from_symbols(image)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| img.ok_or_else(|| Error::MissingRule(source.name(i as Letter).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism { source: source.clone(), target: target.clone(), images })
    }

    /// Endomorphism from compact rules such as `[("a", "ab"), ("b", "a")]`
    /// over a single-character alphabet.
    pub fn from_compact(alphabet: &Alphabet, rules: &[(&str, &str)]) -> Result<Self> {
        let rules: Vec<(&str, Vec<String>)> = rules
            .iter()
            .map(|(l, img)| (*l, img.chars().map(String::from).collect()))
            .collect();
        Self::from_rules(alphabet, alphabet, &rules)
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image(&self, letter: Letter) -> &Word {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn is_nonerasing(&self) -> bool {
        self.images.iter().all(|w| !w.is_empty())
    }

    pub fn is_prolongable_on(&self, letter: Letter) -> bool {
        self.is_endomorphism() && {
            let img = &self.images[letter as usize];
            img.len() >= 2 && img[0] == letter
        }
    }

    pub fn apply(&self, word: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(word.len() * 2);
        for &l in word {
            out.extend_from_slice(&self.images[l as usize]);
        }
        Word::from(out)
    }

    /// Primitivity test: the incidence relation raised to the Wielandt bound
    /// `n² − 2n + 2` must be everywhere positive.
    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_endomorphism() {
            return Err(Error::AlphabetMismatch(format!(
                "primitivity needs an endomorphism, got {} -> {}",
                self.source, self.target
            )));
        }
        let n = self.source.len();
        let bound = n * n - 2 * n + 2;
        let mut m = BoolMatrix::incidence(self);
        let mut power = 1;
        while power < bound {
            m = m.mul(&m);
            power *= 2;
        }
        Ok(m.is_positive())
    }

    /// `f^k(seed)` for the least `k` with `|f^k(seed)| >= min_len`.
    pub fn fixpoint_prefix(&self, seed: Letter, min_len: usize) -> Result<Word> {
        if !self.is_prolongable_on(seed) {
            return Err(Error::NotProlongable(self.source.name(seed).to_string()));
        }
        let mut w = Word::from(vec![seed]);
        while w.len() < min_len {
            let next = self.apply(&w);
            if next.len() <= w.len() {
                return Err(Error::NotProlongable(self.source.name(seed).to_string()));
            }
            if next.len() > MAX_WORD_LEN {
                return Err(Error::LengthOverflow(MAX_WORD_LEN));
            }
            w = next;
        }
        Ok(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BoolMatrix {
    n: usize,
    cells: Vec<bool>,
}

impl BoolMatrix {
    /// `m[a][b]` iff `b` occurs in the image of `a`.
    pub(crate) fn incidence(m: &Morphism) -> Self {
        let n = m.source.len();
        let mut cells = vec![false; n * n];
        for (a, img) in m.images.iter().enumerate() {
            for &b in img.iter() {
                cells[a * n + b as usize] = true;
            }
        }
        BoolMatrix { n, cells }
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut cells = vec![false; n * n];
        for i in 0..n {
            for k in 0..n {
                if self.cells[i * n + k] {
                    for j in 0..n {
                        cells[i * n + j] |= other.cells[k * n + j];
                    }
                }
            }
        }
        BoolMatrix { n, cells }
    }

    pub(crate) fn is_positive(&self) -> bool {
        self.cells.iter().all(|&c| c)
    }
}
