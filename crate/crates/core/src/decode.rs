//! Maximal bifix decoding: the preimage `f⁻¹(S)` of a factor set under a
//! coding morphism `f: B* → A*` whose images form an S-maximal bifix code.

use crate::alphabet::{Alphabet, Word};
use crate::code::{is_s_maximal, BifixCode};
use crate::error::{Error, Result};
use crate::factors::{FactorSet, Provenance};
use crate::morphism::Morphism;

/// The coding morphism sending the `i`-th name to the `i`-th word.
pub fn coding_morphism(names: &Alphabet, words: &[Word], target: &Alphabet) -> Result<Morphism> {
    if names.len() != words.len() {
        return Err(Error::AlphabetMismatch(format!(
            "{} names for {} code words",
            names.len(),
            words.len()
        )));
    }
    let rules: Vec<(&str, Vec<&str>)> = names
        .names()
        .iter()
        .zip(words)
        .map(|(b, x)| (b.as_str(), x.iter().map(|&l| target.name(l)).collect()))
        .collect();
    Morphism::from_rules(names, target, &rules)
}

/// `{u ∈ B*, |u| ≤ max_len : f(u) ∈ S}` where the images of `f` must form an
/// S-maximal bifix code.
pub fn bifix_decode(s: &FactorSet, f: &Morphism, max_len: usize) -> Result<FactorSet> {
    if f.target() != s.alphabet() {
        return Err(Error::AlphabetMismatch("coding morphism must map into the alphabet of S".into()));
    }
    let code = BifixCode::with_alphabet(f.images().to_vec(), s.alphabet())?;
    if code.len() != f.images().len() {
        return Err(Error::Precondition("coding morphism must be injective on letters".into()));
    }
    for x in code.words() {
        if !s.contains(x) {
            return Err(Error::NotInSet(s.alphabet().render(x)));
        }
    }
    if let Some(u) = is_s_maximal(&code, s)?.witness {
        return Err(Error::NotSMaximal(s.alphabet().render(&u)));
    }
    s.require_horizon(max_len * code.max_len() + code.max_len(), "bifix decoding")?;

    let mut words = vec![Word::empty()];
    let mut frontier = vec![(Word::empty(), s.root())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (u, node) in &frontier {
            for b in f.source().letters() {
                let end = f.image(b).iter().try_fold(*node, |n, &l| s.child(n, l));
                if let Some(end) = end {
                    next.push((u.append(b), end));
                }
            }
        }
        words.extend(next.iter().map(|(u, _)| u.clone()));
        frontier = next;
    }
    let provenance = Provenance::Decoded { source_horizon: s.horizon(), code_size: code.len() };
    Ok(FactorSet::from_prefix_closed(f.source(), &words, max_len, provenance))
}
