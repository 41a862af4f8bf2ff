//! Internal transformation of an S-maximal bifix code with respect to a
//! pivot word `w`.
//!
//! With `G = X w⁻¹`, `D = w⁻¹ X`, `G₀ = (wD) w⁻¹`, `D₀ = w⁻¹ (Gw)`,
//! `G₁ = G ∖ G₀` and `D₁ = D ∖ D₀`, the transformed code is
//!
//! ```text
//! Y = (X ∪ w ∪ (G₁ w D₀* D₁ ∩ S)) ∖ (Gw ∪ wD)
//! ```

use std::collections::BTreeSet;

use serde::Serialize;

use crate::alphabet::{Letter, Word};
use crate::code::{is_s_maximal, s_degree, BifixCode};
use crate::error::{Error, Result};
use crate::factors::FactorSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformParts {
    pub g: BTreeSet<Word>,
    pub d: BTreeSet<Word>,
    pub g0: BTreeSet<Word>,
    pub d0: BTreeSet<Word>,
    pub g1: BTreeSet<Word>,
    pub d1: BTreeSet<Word>,
}

impl TransformParts {
    pub fn new(x: &BifixCode, w: &[Letter]) -> Self {
        // X w⁻¹ and w⁻¹ X
        let g: BTreeSet<Word> = x.words().iter().filter(|v| v.ends_with(w)).map(|v| Word::from(&v[..v.len() - w.len()])).collect();
        let d: BTreeSet<Word> = x.words().iter().filter(|v| v.starts_with(w)).map(|v| Word::from(&v[w.len()..])).collect();
        let wd: BTreeSet<Word> = d.iter().map(|v| Word::from(w).concat(v)).collect();
        let gw: BTreeSet<Word> = g.iter().map(|v| v.concat(w)).collect();
        let g0: BTreeSet<Word> = wd.iter().filter(|v| v.ends_with(w)).map(|v| Word::from(&v[..v.len() - w.len()])).collect();
        let d0: BTreeSet<Word> = gw.iter().filter(|v| v.starts_with(w)).map(|v| Word::from(&v[w.len()..])).collect();
        let g1 = g.difference(&g0).cloned().collect();
        let d1 = d.difference(&d0).cloned().collect();
        TransformParts { g, d, g0, d0, g1, d1 }
    }

    /// `G₀ w = w D₀`.
    pub fn overlap_consistent(&self, w: &[Letter]) -> bool {
        let left: BTreeSet<Word> = self.g0.iter().map(|v| v.concat(w)).collect();
        let right: BTreeSet<Word> = self.d0.iter().map(|v| Word::from(w).concat(v)).collect();
        left == right
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transformation {
    pub pivot: Word,
    pub parts: TransformParts,
    /// `G₁ w D₀* D₁ ∩ S`.
    pub bridges: BTreeSet<Word>,
    #[serde(skip)]
    pub code: BifixCode,
    pub words: Vec<Word>,
    pub original_degree: usize,
    /// Observed S-degree of the result; never assumed equal to the original.
    pub degree: usize,
    pub horizon_used: usize,
}

/// `G₁ w D₀* D₁ ∩ S`, refusing to look past the horizon.
fn bridges(s: &FactorSet, parts: &TransformParts, w: &[Letter]) -> Result<(BTreeSet<Word>, usize)> {
    let mut out = BTreeSet::new();
    let mut longest = 0;
    let mut frontier: Vec<Word> = parts.g1.iter().map(|g| g.concat(w)).filter(|u| s.contains(u)).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for (tails, keep) in [(&parts.d1, true), (&parts.d0, false)] {
                for t in tails {
                    let u = f.concat(t);
                    s.require_horizon(u.len(), "D₀* expansion of the internal transformation")?;
                    longest = longest.max(u.len());
                    if s.contains(&u) {
                        if keep {
                            out.insert(u);
                        } else {
                            next.push(u);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    Ok((out, longest))
}

pub fn internal_transformation(x: &BifixCode, s: &FactorSet, w: &[Letter]) -> Result<Transformation> {
    let render = |u: &[Letter]| s.alphabet().render(u);
    if w.is_empty() {
        return Err(Error::Precondition("the pivot must be nonempty".into()));
    }
    if !s.contains(w) {
        return Err(Error::NotInSet(render(w)));
    }
    let maximality = is_s_maximal(x, s)?;
    if let Some(u) = maximality.witness {
        return Err(Error::NotSMaximal(render(&u)));
    }
    let original_degree = s_degree(x, s)?;
    let parts = TransformParts::new(x, w);
    if parts.g1.is_empty() || parts.d1.is_empty() {
        return Err(Error::Precondition(format!("G₁ and D₁ must be nonempty for pivot {}", render(w))));
    }
    let (bridges, longest) = bridges(s, &parts, w)?;

    let removed: BTreeSet<Word> = parts
        .g
        .iter()
        .map(|g| g.concat(w))
        .chain(parts.d.iter().map(|d| Word::from(w).concat(d)))
        .collect();
    let words: BTreeSet<Word> = x
        .words()
        .iter()
        .cloned()
        .chain(std::iter::once(Word::from(w)))
        .chain(bridges.iter().cloned())
        .filter(|u| !removed.contains(u))
        .collect();
    let code = BifixCode::with_alphabet(words.into_iter().collect(), s.alphabet())?;
    let check = is_s_maximal(&code, s)?;
    if let Some(u) = check.witness {
        return Err(Error::NotSMaximal(render(&u)));
    }
    let degree = s_degree(&code, s)?;
    Ok(Transformation {
        pivot: Word::from(w),
        parts,
        bridges,
        words: code.words().to_vec(),
        code,
        original_degree,
        degree,
        horizon_used: longest.max(check.horizon_used),
    })
}
