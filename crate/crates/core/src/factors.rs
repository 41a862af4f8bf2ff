//! Horizon-bounded factorial languages.
//!
//! A [`FactorSet`] stores every word of length at most its horizon `N` in a
//! trie. Membership of longer words is unknown; operations that would need
//! them fail with [`Error::HorizonInsufficient`] instead of guessing.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::alphabet::{is_factor, Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::morphism::{Morphism, MAX_WORD_LEN};

pub(crate) const NONE: u32 = u32::MAX;

/// Iteration cap for the fixpoint stabilization loop.
pub const STABILIZATION_CAP: usize = 64;

/// How a factor set was obtained; carried along as its evidence basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Factors of `f^k(seed)` (after the optional post image) where the
    /// length-`N` factors of iterates `k-1` and `k` coincide.
    Fixpoint { iterations: usize, prefix_len: usize },
    /// Factorial closure of an explicit finite word list.
    Words { count: usize },
    /// Preimage of a factor set under a coding morphism.
    Decoded { source_horizon: usize, code_size: usize },
}

#[derive(Clone, Debug)]
pub struct FactorSet {
    alphabet: Alphabet,
    horizon: usize,
    // children[node * k + letter]
    children: Vec<u32>,
    by_length: Vec<Vec<Word>>,
    provenance: Provenance,
}

impl FactorSet {
    fn empty(alphabet: Alphabet, horizon: usize, provenance: Provenance) -> Self {
        let k = alphabet.len();
        FactorSet {
            alphabet,
            horizon,
            children: vec![NONE; k],
            by_length: Vec::new(),
            provenance,
        }
    }

    fn insert(&mut self, word: &[Letter]) {
        let k = self.alphabet.len();
        let mut node = 0usize;
        for &l in word {
            let slot = node * k + l as usize;
            let next = self.children[slot];
            node = if next == NONE {
                let id = self.children.len() / k;
                self.children.extend(std::iter::repeat(NONE).take(k));
                self.children[slot] = id as u32;
                id
            } else {
                next as usize
            };
        }
    }

    /// Inserts every factor of `text` of length at most the horizon.
    fn insert_factors(&mut self, text: &[Letter]) {
        for i in 0..text.len() {
            let end = (i + self.horizon).min(text.len());
            self.insert(&text[i..end]);
        }
    }

    fn finish(mut self) -> Self {
        let k = self.alphabet.len();
        let mut by_length: Vec<Vec<Word>> = vec![vec![Word::empty()]];
        let mut frontier = vec![(0usize, Word::empty())];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (node, w) in &frontier {
                for l in 0..k {
                    let c = self.children[node * k + l];
                    if c != NONE {
                        next.push((c as usize, w.append(l as Letter)));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            by_length.push(next.iter().map(|(_, w)| w.clone()).collect());
            frontier = next;
        }
        self.by_length = by_length;
        self
    }

    /// Factorial closure of `words`, truncated at `horizon`.
    pub fn from_words(alphabet: &Alphabet, words: &[Word], horizon: usize) -> Self {
        let mut s = Self::empty(alphabet.clone(), horizon, Provenance::Words { count: words.len() });
        for w in words {
            s.insert_factors(w);
        }
        s.finish()
    }

    pub(crate) fn from_prefix_closed(
        alphabet: &Alphabet,
        words: &[Word],
        horizon: usize,
        provenance: Provenance,
    ) -> Self {
        let mut s = Self::empty(alphabet.clone(), horizon, provenance);
        for w in words {
            s.insert(w);
        }
        s.finish()
    }

    /// Factors of length at most `horizon` of the fixpoint `m^ω(seed)`, or of
    /// its image under `post_image` when given.
    ///
    /// Iterates are generated until two consecutive ones have the same
    /// length-`horizon` factors and the current one is at least
    /// `4 * horizon` long.
    pub fn of_fixpoint(m: &Morphism, seed: Letter, post_image: Option<&Morphism>, horizon: usize) -> Result<Self> {
        if !m.is_prolongable_on(seed) {
            return Err(Error::NotProlongable(m.source().name(seed).to_string()));
        }
        if let Some(p) = post_image {
            if p.source() != m.source() {
                return Err(Error::AlphabetMismatch("post image must start from the fixpoint alphabet".into()));
            }
            if !p.is_nonerasing() {
                return Err(Error::Precondition("post image must be nonerasing".into()));
            }
        }
        let alphabet = post_image.map_or(m.source(), |p| p.target()).clone();
        let mut u = Word::from(vec![seed]);
        let mut prev: Option<HashSet<Vec<Letter>>> = None;
        for iteration in 0..STABILIZATION_CAP {
            let text = match post_image {
                Some(p) => p.apply(&u),
                None => u.clone(),
            };
            let windows: HashSet<Vec<Letter>> = if horizon == 0 {
                std::iter::once(Vec::new()).collect()
            } else {
                text.windows(horizon).map(<[Letter]>::to_vec).collect()
            };
            if prev.as_ref() == Some(&windows) && text.len() >= 4 * horizon {
                let mut s = Self::empty(
                    alphabet,
                    horizon,
                    Provenance::Fixpoint { iterations: iteration, prefix_len: text.len() },
                );
                s.insert_factors(&text);
                return Ok(s.finish());
            }
            prev = Some(windows);
            let next = m.apply(&u);
            if next.len() > MAX_WORD_LEN {
                return Err(Error::LengthOverflow(MAX_WORD_LEN));
            }
            u = next;
        }
        Err(Error::StabilizationFailed(STABILIZATION_CAP))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Fails unless words of length `needed` are stored.
    pub fn require_horizon(&self, needed: usize, context: &str) -> Result<()> {
        if needed > self.horizon {
            Err(Error::HorizonInsufficient { context: context.to_string(), needed, available: self.horizon })
        } else {
            Ok(())
        }
    }

    pub(crate) fn root(&self) -> u32 {
        0
    }

    pub(crate) fn child(&self, node: u32, letter: Letter) -> Option<u32> {
        let c = self.children[node as usize * self.alphabet.len() + letter as usize];
        (c != NONE).then_some(c)
    }

    pub(crate) fn node_of(&self, word: &[Letter]) -> Option<u32> {
        let mut node = 0;
        for &l in word {
            node = self.child(node, l)?;
        }
        Some(node)
    }

    /// Membership; always false beyond the horizon.
    pub fn contains(&self, word: &[Letter]) -> bool {
        word.len() <= self.horizon && self.node_of(word).is_some()
    }

    pub fn right_extensions(&self, word: &[Letter]) -> Vec<Letter> {
        match self.node_of(word) {
            Some(node) => self.alphabet.letters().filter(|&l| self.child(node, l).is_some()).collect(),
            None => Vec::new(),
        }
    }

    pub fn left_extensions(&self, word: &[Letter]) -> Vec<Letter> {
        let mut buf = Vec::with_capacity(word.len() + 1);
        self.alphabet
            .letters()
            .filter(|&a| {
                buf.clear();
                buf.push(a);
                buf.extend_from_slice(word);
                self.contains(&buf)
            })
            .collect()
    }

    /// `S ∩ A^n`, sorted. Empty beyond the horizon.
    pub fn words_of_length(&self, n: usize) -> &[Word] {
        self.by_length.get(n).map_or(&[], Vec::as_slice)
    }

    /// All stored words of length at most `n`, shortlex.
    pub fn words_up_to(&self, n: usize) -> impl Iterator<Item = &Word> {
        self.by_length.iter().take(n + 1).flatten()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.by_length.iter().flatten()
    }

    /// Number of stored words, including ε.
    pub fn len(&self) -> usize {
        self.by_length.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Length of the longest stored word (at most the horizon).
    pub fn max_stored_len(&self) -> usize {
        self.by_length.len().saturating_sub(1)
    }

    /// Does `S` contain every letter of its alphabet?
    pub fn contains_alphabet(&self) -> bool {
        self.words_of_length(1).len() == self.alphabet.len()
    }

    /// `Card(S ∩ A) − 1`.
    pub fn k(&self) -> i64 {
        self.words_of_length(1).len() as i64 - 1
    }

    pub fn complexity_profile(&self) -> ComplexityProfile {
        let p: Vec<usize> = (0..=self.horizon).map(|n| self.words_of_length(n).len()).collect();
        ComplexityProfile::from_counts(p)
    }

    /// For each `u` with `|u| <= up_to`, the least `n <= N` such that `u` is a
    /// factor of every word of `S ∩ A^n`, or `None` when no such `n` exists
    /// within the horizon.
    pub fn uniform_recurrence_report(&self, up_to: usize) -> Result<Vec<RecurrenceWitness>> {
        if up_to >= self.horizon {
            return Err(Error::HorizonInsufficient {
                context: "uniform recurrence report".into(),
                needed: up_to + 1,
                available: self.horizon,
            });
        }
        Ok(self
            .words_up_to(up_to)
            .map(|u| {
                // Occurring in every word of length n implies the same for n + 1.
                let witness = (u.len()..=self.horizon)
                    .find(|&n| self.words_of_length(n).iter().all(|w| is_factor(u, w)));
                RecurrenceWitness { word: u.clone(), witness }
            })
            .collect())
    }

    /// Biextendability below the horizon: every word shorter than `N` has a
    /// left and a right extension. Returns the first violating word.
    pub fn biextendability_violation(&self) -> Option<&Word> {
        self.words_up_to(self.horizon.saturating_sub(1))
            .find(|w| self.right_extensions(w).is_empty() || self.left_extensions(w).is_empty())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceWitness {
    pub word: Word,
    pub witness: Option<usize>,
}

/// `p_n`, its first differences `s_n` and second differences `b_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    pub p: Vec<usize>,
    pub s: Vec<i64>,
    pub b: Vec<i64>,
}

impl ComplexityProfile {
    pub fn from_counts(p: Vec<usize>) -> Self {
        let s: Vec<i64> = p.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
        let b: Vec<i64> = s.windows(2).map(|w| w[1] - w[0]).collect();
        ComplexityProfile { p, s, b }
    }

    /// Is `p_n = k n + 1` for every stored `n`?
    pub fn is_affine(&self, k: i64) -> bool {
        self.p.iter().enumerate().all(|(n, &p)| p as i64 == k * n as i64 + 1)
    }
}
