//! Bifix codes inside a factorial set: predicates, parses, S-maximality,
//! S-degree, internal factors and kernel.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::alphabet::{is_proper_prefix, is_proper_suffix, Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::factors::FactorSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodePredicates {
    pub prefix: bool,
    pub suffix: bool,
    pub bifix: bool,
    /// `(p, w)` with `p` a proper prefix of `w`.
    pub prefix_witness: Option<(Word, Word)>,
    /// `(s, w)` with `s` a proper suffix of `w`.
    pub suffix_witness: Option<(Word, Word)>,
}

pub fn code_predicates(words: &[Word]) -> Result<CodePredicates> {
    if words.iter().any(|w| w.is_empty()) {
        return Err(Error::EmptyWordInCode);
    }
    let mut sorted = words.to_vec();
    sorted.sort();
    sorted.dedup();
    let find = |rel: fn(&[Letter], &[Letter]) -> bool| {
        sorted.iter().find_map(|u| sorted.iter().find(|w| rel(u, w)).map(|w| (u.clone(), w.clone())))
    };
    let prefix_witness = find(is_proper_prefix);
    let suffix_witness = find(is_proper_suffix);
    let prefix = prefix_witness.is_none();
    let suffix = suffix_witness.is_none();
    Ok(CodePredicates { prefix, suffix, bifix: prefix && suffix, prefix_witness, suffix_witness })
}

/// A finite bifix code, stored shortlex.
#[derive(Clone, Debug)]
pub struct BifixCode {
    words: Vec<Word>,
    lookup: HashSet<Vec<Letter>>,
    max_len: usize,
}

impl PartialEq for BifixCode {
    fn eq(&self, other: &Self) -> bool {
        self.words == other.words
    }
}

impl Eq for BifixCode {}

impl BifixCode {
    pub fn new(words: impl IntoIterator<Item = Word>) -> Result<Self> {
        Self::build(words.into_iter().collect(), |w| format!("{:?}", w))
    }

    /// Like [`BifixCode::new`], rendering error words with `alphabet`.
    pub fn with_alphabet(words: Vec<Word>, alphabet: &Alphabet) -> Result<Self> {
        Self::build(words, |w| alphabet.render(w))
    }

    /// Parses a whitespace-separated word list.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        Self::with_alphabet(alphabet.parse_words(text)?, alphabet)
    }

    fn build(mut words: Vec<Word>, render: impl Fn(&[Letter]) -> String) -> Result<Self> {
        words.sort();
        words.dedup();
        let p = code_predicates(&words)?;
        if let Some((u, w)) = p.prefix_witness {
            return Err(Error::NotBifix(render(&u), "prefix", render(&w)));
        }
        if let Some((u, w)) = p.suffix_witness {
            return Err(Error::NotBifix(render(&u), "suffix", render(&w)));
        }
        Ok(Self::new_unchecked(words))
    }

    pub(crate) fn new_unchecked(mut words: Vec<Word>) -> Self {
        words.sort();
        let lookup = words.iter().map(|w| w.to_vec()).collect();
        let max_len = words.iter().map(|w| w.len()).max().unwrap_or(0);
        BifixCode { words, lookup, max_len }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.lookup.contains(w)
    }

    /// Does some prefix of `w` (including `w`) belong to the code?
    pub fn has_prefix_in(&self, w: &[Letter]) -> bool {
        (1..=w.len().min(self.max_len)).any(|i| self.lookup.contains(&w[..i]))
    }

    /// Does some suffix of `w` (including `w`) belong to the code?
    pub fn has_suffix_in(&self, w: &[Letter]) -> bool {
        (1..=w.len().min(self.max_len)).any(|i| self.lookup.contains(&w[w.len() - i..]))
    }

    /// Membership in the submonoid `X*`.
    pub fn in_star(&self, w: &[Letter]) -> bool {
        let mut reach = vec![false; w.len() + 1];
        reach[0] = true;
        for i in 0..w.len() {
            if !reach[i] {
                continue;
            }
            for j in i + 1..=w.len().min(i + self.max_len) {
                if self.lookup.contains(&w[i..j]) {
                    reach[j] = true;
                }
            }
        }
        reach[w.len()]
    }

    /// `δ_X(w)`: the number of suffixes of `w` with no prefix in the code.
    pub fn parse_count(&self, w: &[Letter]) -> usize {
        (0..=w.len()).filter(|&i| !self.has_prefix_in(&w[i..])).count()
    }

    /// All parses `(v, x, u)` of `w`: `w = v x u`, `v` without suffix in the
    /// code, `u` without prefix in the code, `x ∈ X*`.
    pub fn parses(&self, w: &[Letter]) -> Vec<Parse> {
        let mut out = Vec::new();
        for i in 0..=w.len() {
            if self.has_suffix_in(&w[..i]) {
                continue;
            }
            for j in i..=w.len() {
                if !self.has_prefix_in(&w[j..]) && self.in_star(&w[i..j]) {
                    out.push(Parse {
                        left: Word::from(&w[..i]),
                        middle: Word::from(&w[i..j]),
                        right: Word::from(&w[j..]),
                    });
                }
            }
        }
        out
    }

    /// Proper prefixes of code words, including ε.
    pub fn proper_prefixes(&self) -> BTreeSet<Word> {
        self.words
            .iter()
            .flat_map(|w| (0..w.len()).map(move |i| Word::from(&w[..i])))
            .collect()
    }

    /// `I(X)`: words `w` with `u w v` in the code for nonempty `u`, `v`.
    pub fn internal_factors(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for w in &self.words {
            for i in 1..w.len() {
                for j in i..w.len() {
                    out.insert(Word::from(&w[i..j]));
                }
            }
        }
        out
    }

    /// `K(X) = I(X) ∩ X`.
    pub fn kernel(&self) -> BifixCode {
        let internal = self.internal_factors();
        BifixCode::new_unchecked(self.words.iter().filter(|w| internal.contains(*w)).cloned().collect())
    }

    /// Words in lexicographic order, as a set is usually written.
    pub fn lex_sorted(&self) -> Vec<Word> {
        let mut words = self.words.clone();
        words.sort_by(|u, v| u.letters().cmp(v.letters()));
        words
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        alphabet.render_all(&self.lex_sorted())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parse {
    pub left: Word,
    pub middle: Word,
    pub right: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SMaximality {
    pub maximal: bool,
    /// First word of `S ∩ A^{max_len}` with no prefix in the code.
    pub witness: Option<Word>,
    pub horizon_used: usize,
}

fn require_subset(x: &BifixCode, s: &FactorSet) -> Result<()> {
    match x.words.iter().find(|w| !s.contains(w)) {
        Some(w) => Err(Error::NotInSet(s.alphabet().render(w))),
        None => Ok(()),
    }
}

/// S-maximality of a finite bifix code inside a recurrent set: every word of
/// `S` of length `max_len(X)` must have a prefix in `X`.
pub fn is_s_maximal(x: &BifixCode, s: &FactorSet) -> Result<SMaximality> {
    if x.is_empty() {
        return Ok(SMaximality {
            maximal: false,
            witness: s.words_of_length(1).first().cloned(),
            horizon_used: 1,
        });
    }
    let needed = 2 * x.max_len;
    s.require_horizon(needed, "S-maximality test")?;
    require_subset(x, s)?;
    let witness = s.words_of_length(x.max_len).iter().find(|u| !x.has_prefix_in(u)).cloned();
    Ok(SMaximality { maximal: witness.is_none(), witness, horizon_used: needed })
}

/// `d_X(S)`, read off the words of `S` of length `max_len(X)`, none of which
/// can be an internal factor.
pub fn s_degree(x: &BifixCode, s: &FactorSet) -> Result<usize> {
    if x.is_empty() {
        return Err(Error::Precondition("the empty code has no S-degree".into()));
    }
    s.require_horizon(x.max_len + 1, "S-degree")?;
    require_subset(x, s)?;
    let mut first: Option<(&Word, usize)> = None;
    for u in s.words_of_length(x.max_len) {
        let d = x.parse_count(u);
        match first {
            None => first = Some((u, d)),
            Some((v, e)) if e != d => {
                let a = s.alphabet();
                return Err(Error::DegreeDisagreement(a.render(v), e, a.render(u), d));
            }
            _ => {}
        }
    }
    Ok(first.map_or(0, |(_, d)| d))
}

/// `Σ_{p ∈ P} (r(p) − 1)` over the proper prefixes `P` of the code.
pub fn right_special_prefix_sum(x: &BifixCode, s: &FactorSet) -> Result<i64> {
    s.require_horizon(x.max_len, "prefix arity sum")?;
    Ok(x.proper_prefixes()
        .iter()
        .map(|p| s.right_extensions(p).len() as i64 - 1)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::Morphism;

    fn fib(n: usize) -> FactorSet {
        let m = Morphism::from_compact(&Alphabet::from_chars("ab").unwrap(), &[("a", "ab"), ("b", "a")]).unwrap();
        FactorSet::of_fixpoint(&m, 0, None, n).unwrap()
    }

    fn words(s: &FactorSet, t: &str) -> Vec<Word> {
        s.alphabet().parse_words(t).unwrap()
    }

    fn code(s: &FactorSet, t: &str) -> BifixCode {
        BifixCode::new(words(s, t)).unwrap()
    }

    #[test]
    fn predicates() {
        let s = fib(4);
        assert!(code_predicates(&words(&s, "a baab bab")).unwrap().bifix);
        let p = code_predicates(&words(&s, "a ab")).unwrap();
        assert!(!p.prefix && p.suffix);
        assert_eq!(p.prefix_witness, Some((words(&s, "a")[0].clone(), words(&s, "ab")[0].clone())));
        assert!(code_predicates(&words(&s, "aa ab ba")).unwrap().bifix);
        assert_eq!(code_predicates(&[Word::empty()]), Err(Error::EmptyWordInCode));
        assert!(matches!(BifixCode::new(words(&s, "b ab")), Err(Error::NotBifix(_, "suffix", _))));
    }

    #[test]
    fn parses_of_bab() {
        let s = fib(8);
        let x = code(&s, "a baab bab");
        let w = words(&s, "bab").remove(0);
        let ps = x.parses(&w);
        let r: Vec<(String, String, String)> = ps
            .iter()
            .map(|p| {
                let a = s.alphabet();
                (a.render(&p.left), a.render(&p.middle), a.render(&p.right))
            })
            .collect();
        assert_eq!(
            r,
            vec![("ε".into(), "bab".into(), "ε".into()), ("b".into(), "a".into(), "b".into())]
        );
        assert_eq!(x.parse_count(&w), 2);
    }

    #[test]
    fn trivial_parse_counts() {
        let s = fib(4);
        let x = code(&s, "a baab bab");
        assert_eq!(x.parses(&[]), vec![Parse { left: Word::empty(), middle: Word::empty(), right: Word::empty() }]);
        let a = code(&s, "a");
        assert_eq!(a.parse_count(&words(&s, "bab")[0]), 3);
        assert_eq!(a.parses(&words(&s, "bab")[0]).len(), 3);
    }

    #[test]
    fn s_maximality() {
        let s = fib(8);
        let m = is_s_maximal(&code(&s, "a baab bab"), &s).unwrap();
        assert!(m.maximal);
        let m = is_s_maximal(&code(&s, "a"), &s).unwrap();
        assert!(!m.maximal);
        assert_eq!(m.witness, Some(words(&s, "b").remove(0)));
        for n in 1..=4 {
            let x = BifixCode::new(s.words_of_length(n).to_vec()).unwrap();
            assert!(is_s_maximal(&x, &s).unwrap().maximal);
            assert_eq!(s_degree(&x, &s).unwrap(), n);
        }
        assert!(matches!(is_s_maximal(&code(&s, "bb"), &s), Err(Error::NotInSet(_))));
        assert!(matches!(
            is_s_maximal(&code(&s, "abaab"), &fib(6)),
            Err(Error::HorizonInsufficient { needed: 10, .. })
        ));
    }

    #[test]
    fn degree_and_kernel() {
        let s = fib(8);
        let x = code(&s, "a baab bab");
        assert_eq!(s_degree(&x, &s).unwrap(), 2);
        assert_eq!(x.kernel().words(), &words(&s, "a")[..]);
        let x3 = BifixCode::new(s.words_of_length(3).to_vec()).unwrap();
        assert_eq!(s_degree(&x3, &s).unwrap(), 3);
        let internal: Vec<Word> = x3.internal_factors().into_iter().collect();
        assert_eq!(internal, vec![Word::empty(), words(&s, "a").remove(0), words(&s, "b").remove(0)]);
        assert!(x3.kernel().is_empty());
    }

    #[test]
    fn degree_disagreement_signals_non_maximal() {
        let s = fib(8);
        assert!(matches!(s_degree(&code(&s, "a"), &s), Err(Error::DegreeDisagreement(..))));
    }

    #[test]
    fn star_membership() {
        let s = fib(8);
        let x = code(&s, "a baab bab");
        assert!(x.in_star(&words(&s, "abaaba")[0]));
        assert!(!x.in_star(&words(&s, "ab")[0]));
        assert!(x.in_star(&[]));
    }

    #[test]
    fn arity_sum() {
        let s = fib(8);
        for t in ["a baab bab", "aa ab ba", "aa aba b"] {
            let x = code(&s, t);
            assert_eq!(right_special_prefix_sum(&x, &s).unwrap() + 1, x.len() as i64);
        }
    }
}
