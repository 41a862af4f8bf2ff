//! First right return words, read off a fixpoint prefix.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::alphabet::{Letter, Word};
use crate::error::{Error, Result};
use crate::factors::FactorSet;
use crate::morphism::Morphism;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReturnWords {
    pub word: Word,
    pub returns: BTreeSet<Word>,
    /// True when scanning twice as far finds no further return word.
    pub complete: bool,
    pub scan_len: usize,
}

/// Prefix of length `len` of `m^ω(seed)`, or of its image under `post_image`.
pub fn fixpoint_text(m: &Morphism, seed: Letter, post_image: Option<&Morphism>, len: usize) -> Result<Word> {
    let u = m.fixpoint_prefix(seed, len)?;
    let mut text = match post_image {
        Some(p) => {
            if !p.is_nonerasing() {
                return Err(Error::Precondition("post image must be nonerasing".into()));
            }
            p.apply(&u).into_vec()
        }
        None => u.into_vec(),
    };
    text.truncate(len);
    Ok(Word::from(text))
}

fn scan(text: &[Letter], w: &[Letter]) -> Vec<Word> {
    let occurrences: Vec<usize> = text
        .windows(w.len())
        .enumerate()
        .filter(|(_, x)| *x == w)
        .map(|(i, _)| i)
        .collect();
    occurrences
        .windows(2)
        .map(|p| Word::from(&text[p[0] + w.len()..p[1] + w.len()]))
        .collect()
}

/// Words `x` between consecutive occurrences of `w` in the first `scan_len`
/// letters of the fixpoint, so that `w x` has `w` as a suffix and no other
/// interior occurrence of `w`.
pub fn return_words(
    m: &Morphism,
    seed: Letter,
    post_image: Option<&Morphism>,
    w: &[Letter],
    scan_len: usize,
) -> Result<ReturnWords> {
    let alphabet = post_image.map_or(m.source(), |p| p.target());
    if w.is_empty() {
        return Err(Error::Precondition("return words need a nonempty word".into()));
    }
    let text = fixpoint_text(m, seed, post_image, 2 * scan_len)?;
    let short = &text[..scan_len.min(text.len())];
    let found = scan(short, w);
    if found.is_empty() {
        let occurs = short.windows(w.len()).any(|x| x == w);
        return Err(if occurs {
            Error::TooFewOccurrences(alphabet.render(w))
        } else {
            Error::NotInSet(alphabet.render(w))
        });
    }
    let returns: BTreeSet<Word> = found.into_iter().collect();
    let doubled: BTreeSet<Word> = scan(&text, w).into_iter().collect();
    Ok(ReturnWords { word: Word::from(w), complete: doubled == returns, returns, scan_len })
}

/// First right return words to `w` read off the factor set itself: every
/// extension `wx ∈ S` is grown letter by letter until it ends with `w` again.
/// `complete` is true when every branch closed within the horizon, in which
/// case `scan_len` is the longest `wx` examined.
pub fn return_words_in(s: &FactorSet, w: &[Letter]) -> Result<ReturnWords> {
    if w.is_empty() {
        return Err(Error::Precondition("return words need a nonempty word".into()));
    }
    if !s.contains(w) {
        return Err(Error::NotInSet(s.alphabet().render(w)));
    }
    let mut returns = BTreeSet::new();
    let mut open = false;
    let mut longest = w.len();
    let mut frontier = vec![Word::from(w)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for u in &frontier {
            if u.len() == s.horizon() {
                open = true;
                continue;
            }
            let extensions = s.right_extensions(u);
            // a dead end means the set is not right-extendable here
            open |= extensions.is_empty();
            for a in extensions {
                let v = u.append(a);
                longest = longest.max(v.len());
                if v.ends_with(w) {
                    returns.insert(Word::from(&v[w.len()..]));
                } else {
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    Ok(ReturnWords { word: Word::from(w), returns, complete: !open, scan_len: longest })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{is_proper_prefix, Alphabet};

    fn fib() -> Morphism {
        Morphism::from_compact(&Alphabet::from_chars("ab").unwrap(), &[("a", "ab"), ("b", "a")]).unwrap()
    }

    fn trib() -> Morphism {
        Morphism::from_compact(&Alphabet::from_chars("abc").unwrap(), &[("a", "ab"), ("b", "ac"), ("c", "a")])
            .unwrap()
    }

    fn returns_of(m: &Morphism, w: &str) -> (Vec<String>, bool) {
        let a = m.source();
        let r = return_words(m, 0, None, &a.parse_word(w).unwrap(), 2000).unwrap();
        (r.returns.iter().map(|x| a.render(x)).collect(), r.complete)
    }

    #[test]
    fn fibonacci_returns() {
        assert_eq!(returns_of(&fib(), "a"), (vec!["a".to_string(), "ba".into()], true));
        assert_eq!(returns_of(&fib(), "b"), (vec!["ab".to_string(), "aab".into()], true));
    }

    #[test]
    fn tribonacci_returns() {
        assert_eq!(returns_of(&trib(), "a"), (vec!["a".to_string(), "ba".into(), "ca".into()], true));
    }

    #[test]
    fn first_return_property() {
        let m = trib();
        for w in ["a", "ab", "aba", "bac"] {
            let w = m.source().parse_word(w).unwrap();
            let r = return_words(&m, 0, None, &w, 3000).unwrap();
            for x in &r.returns {
                assert!(w.concat(x).ends_with(&w));
                for y in &r.returns {
                    assert!(!is_proper_prefix(x, y));
                }
            }
        }
    }

    #[test]
    fn errors() {
        let m = fib();
        let a = m.source();
        assert!(matches!(return_words(&m, 0, None, &a.parse_word("bb").unwrap(), 500), Err(Error::NotInSet(_))));
        assert!(matches!(return_words(&m, 0, None, &[], 500), Err(Error::Precondition(_))));
        // `abaab` occurs once in the first 6 letters `abaaba`.
        assert!(matches!(
            return_words(&m, 0, None, &a.parse_word("abaab").unwrap(), 6),
            Err(Error::TooFewOccurrences(_))
        ));
    }

    #[test]
    fn factor_set_variant_agrees_with_scan() {
        for m in [fib(), trib()] {
            let s = FactorSet::of_fixpoint(&m, 0, None, 40).unwrap();
            for n in 1..=3 {
                for w in s.words_of_length(n) {
                    let a = return_words_in(&s, w).unwrap();
                    let b = return_words(&m, 0, None, w, 4000).unwrap();
                    assert!(a.complete && b.complete);
                    assert_eq!(a.returns, b.returns);
                }
            }
        }
    }

    #[test]
    fn factor_set_variant_reports_open_branches() {
        // b is never followed by a second b inside a^i bc a^j
        let a = Alphabet::from_chars("abc").unwrap();
        let words: Vec<Word> = (0..6).map(|i| a.parse_word(&format!("{}bc{}", "a".repeat(i), "a".repeat(i))).unwrap()).collect();
        let s = FactorSet::from_words(&a, &words, 8);
        let r = return_words_in(&s, &[1]).unwrap();
        assert!(r.returns.is_empty() && !r.complete);
    }

    #[test]
    fn short_scan_flags_incomplete() {
        let m = trib();
        // abacaba: only returns `ba` and `ca` seen, `a` appears later.
        let r = return_words(&m, 0, None, &[0], 7).unwrap();
        assert!(!r.complete);
    }
}
