//! JSON interchange: morphism specs, code files, factor sets and subgroup
//! graphs. Words are always arrays of symbol names.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::code::BifixCode;
use crate::error::{Error, Result};
use crate::factors::{FactorSet, Provenance};
use crate::morphism::Morphism;
use crate::returns::{fixpoint_text, return_words, ReturnWords};
use crate::stallings::{Edge, SubgroupGraph};

/// `{"alphabet": [...], "rules": {"a": ["a","b"], ...}, "seed": "a",
/// "post_image": {...}}`. A nested post image reads its source from
/// `alphabet` and its target from `target_alphabet` (default: the source).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_alphabet: Option<Vec<String>>,
    pub rules: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub post_image: Option<Box<MorphismSpec>>,
}

/// A fixpoint `m^ω(seed)`, optionally pushed through a second morphism.
#[derive(Clone, Debug)]
pub struct Fixpoint {
    pub morphism: Morphism,
    pub seed: Letter,
    pub post_image: Option<Morphism>,
}

impl MorphismSpec {
    pub fn morphism(&self) -> Result<Morphism> {
        let source = Alphabet::new(self.alphabet.iter().cloned())?;
        let target = match &self.target_alphabet {
            Some(t) => Alphabet::new(t.iter().cloned())?,
            None => source.clone(),
        };
        let rules: Vec<(&String, Vec<&String>)> = self.rules.iter().map(|(k, v)| (k, v.iter().collect())).collect();
        Morphism::from_rules(&source, &target, &rules)
    }

    pub fn fixpoint(&self) -> Result<Fixpoint> {
        let morphism = self.morphism()?;
        let seed = self.seed.as_deref().ok_or_else(|| Error::Precondition("morphism spec has no seed".into()))?;
        let seed = morphism.source().letter(seed)?;
        let post_image = self.post_image.as_ref().map(|p| p.morphism()).transpose()?;
        Ok(Fixpoint { morphism, seed, post_image })
    }

    pub fn from_morphism(m: &Morphism, seed: Option<Letter>) -> Self {
        let rules = m
            .source()
            .letters()
            .map(|a| (m.source().name(a).to_string(), m.target().symbols(m.image(a))))
            .collect();
        MorphismSpec {
            alphabet: m.source().names().to_vec(),
            target_alphabet: (!m.is_endomorphism()).then(|| m.target().names().to_vec()),
            rules,
            seed: seed.map(|s| m.source().name(s).to_string()),
            post_image: None,
        }
    }
}

impl Fixpoint {
    pub fn spec(&self) -> MorphismSpec {
        let mut spec = MorphismSpec::from_morphism(&self.morphism, Some(self.seed));
        spec.post_image = self.post_image.as_ref().map(|p| Box::new(MorphismSpec::from_morphism(p, None)));
        spec
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.post_image.as_ref().map_or(self.morphism.source(), |p| p.target())
    }

    pub fn factor_set(&self, horizon: usize) -> Result<FactorSet> {
        FactorSet::of_fixpoint(&self.morphism, self.seed, self.post_image.as_ref(), horizon)
    }

    pub fn text(&self, len: usize) -> Result<Word> {
        fixpoint_text(&self.morphism, self.seed, self.post_image.as_ref(), len)
    }

    pub fn return_words(&self, w: &[Letter], scan_len: usize) -> Result<ReturnWords> {
        return_words(&self.morphism, self.seed, self.post_image.as_ref(), w, scan_len)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub alphabet: Vec<String>,
    pub words: Vec<Vec<String>>,
}

impl CodeFile {
    pub fn new(alphabet: &Alphabet, code: &BifixCode) -> Self {
        CodeFile {
            alphabet: alphabet.names().to_vec(),
            words: code.lex_sorted().iter().map(|w| alphabet.symbols(w)).collect(),
        }
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(self.alphabet.iter().cloned())
    }

    /// Words without any code check.
    pub fn words(&self) -> Result<(Alphabet, Vec<Word>)> {
        let alphabet = self.alphabet()?;
        let words = self.words.iter().map(|w| alphabet.word_from_symbols(w)).collect::<Result<_>>()?;
        Ok((alphabet, words))
    }

    pub fn code(&self) -> Result<(Alphabet, BifixCode)> {
        let (alphabet, words) = self.words()?;
        let code = BifixCode::with_alphabet(words, &alphabet)?;
        Ok((alphabet, code))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSetFile {
    pub alphabet: Vec<String>,
    pub horizon: usize,
    pub provenance: Provenance,
    pub words_by_length: Vec<Vec<Vec<String>>>,
}

impl FactorSetFile {
    pub fn new(s: &FactorSet) -> Self {
        let a = s.alphabet();
        FactorSetFile {
            alphabet: a.names().to_vec(),
            horizon: s.horizon(),
            provenance: s.provenance().clone(),
            words_by_length: (0..=s.max_stored_len())
                .map(|n| s.words_of_length(n).iter().map(|w| a.symbols(w)).collect())
                .collect(),
        }
    }

    /// Rebuilds the set; rejects lists that are not factorial or exceed the
    /// declared horizon.
    pub fn factor_set(&self) -> Result<FactorSet> {
        let alphabet = Alphabet::new(self.alphabet.iter().cloned())?;
        let mut words = vec![Word::empty()];
        for (n, slice) in self.words_by_length.iter().enumerate() {
            for symbols in slice {
                let w = alphabet.word_from_symbols(symbols)?;
                if w.len() != n {
                    return Err(Error::Precondition(format!(
                        "{} listed among words of length {n}",
                        alphabet.render(&w)
                    )));
                }
                if n > self.horizon {
                    return Err(Error::Precondition(format!("{} exceeds the horizon", alphabet.render(&w))));
                }
                words.push(w);
            }
        }
        let s = FactorSet::from_prefix_closed(&alphabet, &words, self.horizon, self.provenance.clone());
        let listed: usize = words.iter().filter(|w| !w.is_empty()).count();
        let stored = s.len() - 1;
        let factorial = words.iter().all(|w| w.is_empty() || s.contains(&w[1..]));
        if stored != listed || !factorial {
            return Err(Error::Precondition("word list is not factorial".into()));
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub source: usize,
    pub letter: String,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub alphabet: Vec<String>,
    pub base: usize,
    pub vertices: usize,
    pub edges: Vec<GraphEdge>,
}

impl GraphFile {
    pub fn new(alphabet: &Alphabet, g: &SubgroupGraph) -> Self {
        GraphFile {
            alphabet: alphabet.names().to_vec(),
            base: 0,
            vertices: g.vertices,
            edges: g
                .edges
                .iter()
                .map(|e| GraphEdge { source: e.source, letter: alphabet.name(e.letter).to_string(), target: e.target })
                .collect(),
        }
    }

    pub fn graph(&self) -> Result<(Alphabet, SubgroupGraph)> {
        let alphabet = Alphabet::new(self.alphabet.iter().cloned())?;
        if self.base != 0 {
            return Err(Error::Precondition("the base vertex must be 0".into()));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Ok(Edge { source: e.source, letter: alphabet.letter(&e.letter)?, target: e.target }))
            .collect::<Result<Vec<_>>>()?;
        let g = SubgroupGraph::from_edges(alphabet.len(), self.vertices, edges)?;
        Ok((alphabet, g))
    }
}
