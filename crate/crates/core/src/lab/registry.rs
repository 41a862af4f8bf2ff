//! The example sets, with what is known about each.

use std::collections::BTreeMap;

use serde::Serialize;

use super::Expect;
use crate::alphabet::{Alphabet, Word};
use crate::code::BifixCode;
use crate::decode::{bifix_decode, coding_morphism};
use crate::error::{Error, Result};
use crate::factors::FactorSet;
use crate::io::{Fixpoint, MorphismSpec};
use crate::transform::internal_transformation;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    Fixpoint { spec: MorphismSpec },
    /// Factors of `a^i {bc, bcbc} a^j`, with `i, j` up to the horizon.
    PowersAroundBc,
    /// Preimage of another registry set under a coding morphism.
    Decoded { source: &'static str, names: Vec<&'static str>, words: Vec<&'static str> },
}

/// A code attached to an entry.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CodeRecipe {
    Listed { words: &'static str },
    /// `S ∩ A^n` transformed at `pivot`.
    Transformed { uniform: usize, pivot: &'static str },
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCode {
    pub name: &'static str,
    pub recipe: CodeRecipe,
}

#[derive(Clone, Debug, Serialize)]
pub struct Expectations {
    /// As reported by `SetVerdict::class_name`.
    pub class: &'static str,
    /// `k` with `p_n = kn + 1`, if claimed.
    pub affine: Option<i64>,
    pub uniformly_recurrent: bool,
    pub cardinality: Expect,
    pub return_words: Expect,
    pub finite_index_basis: Expect,
    pub bifix_decoding: Expect,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: &'static str,
    pub description: &'static str,
    pub citation: &'static str,
    pub recipe: Recipe,
    pub expected: Expectations,
    pub codes: Vec<NamedCode>,
}

fn spec(letters: &str, rules: &[(&str, &str)], seed: &str) -> MorphismSpec {
    let chars = |s: &str| s.chars().map(String::from).collect::<Vec<_>>();
    MorphismSpec {
        alphabet: chars(letters),
        target_alphabet: None,
        rules: rules.iter().map(|(a, w)| (a.to_string(), chars(w))).collect::<BTreeMap<_, _>>(),
        seed: Some(seed.to_string()),
        post_image: None,
    }
}

pub fn fibonacci() -> MorphismSpec {
    spec("ab", &[("a", "ab"), ("b", "a")], "a")
}

pub fn tribonacci() -> MorphismSpec {
    spec("abc", &[("a", "ab"), ("b", "ac"), ("c", "a")], "a")
}

pub fn chacon() -> MorphismSpec {
    spec("abc", &[("a", "aabc"), ("b", "bc"), ("c", "abc")], "a")
}

/// `τ(σ^ω(a))` with `σ: a→ab, b→cda, c→cd, d→abc` and
/// `τ: a→12, b→2, c→3, d→13`.
pub fn cassaigne() -> MorphismSpec {
    let mut s = spec("abcd", &[("a", "ab"), ("b", "cda"), ("c", "cd"), ("d", "abc")], "a");
    let mut tau = spec("abcd", &[("a", "12"), ("b", "2"), ("c", "3"), ("d", "13")], "a");
    tau.seed = None;
    tau.target_alphabet = Some(vec!["1".into(), "2".into(), "3".into()]);
    s.post_image = Some(Box::new(tau));
    s
}

/// Builtin fixpoints by name.
pub fn builtin_fixpoint(name: &str) -> Option<MorphismSpec> {
    match name {
        "fibonacci" => Some(fibonacci()),
        "tribonacci" => Some(tribonacci()),
        "chacon" => Some(chacon()),
        "cassaigne" => Some(cassaigne()),
        _ => None,
    }
}

pub fn registry() -> Vec<Entry> {
    use Expect::*;
    vec![
        Entry {
            name: "fibonacci",
            description: "fixpoint of a→ab, b→a",
            citation: "binary Sturmian set: complexity n+1, uniformly recurrent tree set",
            recipe: Recipe::Fixpoint { spec: fibonacci() },
            expected: Expectations {
                class: "tree",
                affine: Some(1),
                uniformly_recurrent: true,
                cardinality: Holds,
                return_words: Holds,
                finite_index_basis: Holds,
                bifix_decoding: Holds,
            },
            codes: vec![
                NamedCode { name: "Y", recipe: CodeRecipe::Listed { words: "aa aba b" } },
                NamedCode { name: "Y'", recipe: CodeRecipe::Listed { words: "a baab bab" } },
            ],
        },
        Entry {
            name: "tribonacci",
            description: "fixpoint of a→ab, b→ac, c→a",
            citation: "Sturmian set on three letters: complexity 2n+1, uniformly recurrent tree set",
            recipe: Recipe::Fixpoint { spec: tribonacci() },
            expected: Expectations {
                class: "tree",
                affine: Some(2),
                uniformly_recurrent: true,
                cardinality: Holds,
                return_words: Holds,
                finite_index_basis: Holds,
                bifix_decoding: Holds,
            },
            codes: vec![],
        },
        Entry {
            name: "chacon",
            description: "fixpoint of a→aabc, b→bc, c→abc",
            citation: "complexity 2n+1 with a strong word abc and a weak word bca; S∩A² is S-maximal of degree 2 \
                       but not a basis since ca(aa)⁻¹ab = cb; decoding by Z gives 17 words of length 2",
            recipe: Recipe::Fixpoint { spec: chacon() },
            expected: Expectations {
                class: "mixed",
                affine: Some(2),
                uniformly_recurrent: true,
                cardinality: Fails,
                return_words: Unclaimed,
                finite_index_basis: Fails,
                bifix_decoding: Fails,
            },
            codes: vec![
                NamedCode { name: "Y", recipe: CodeRecipe::Transformed { uniform: 4, pivot: "abc" } },
                NamedCode { name: "Z", recipe: CodeRecipe::Transformed { uniform: 4, pivot: "bca" } },
            ],
        },
        Entry {
            name: "cassaigne",
            description: "τ(σ^ω(a)) with σ: a→ab, b→cda, c→cd, d→abc and τ: a→12, b→2, c→3, d→13",
            citation: "uniformly recurrent neutral set whose extension graph of ε is neither acyclic nor \
                       connected; S∩B² is not a basis since 13 = 12(22)⁻¹23",
            recipe: Recipe::Fixpoint { spec: cassaigne() },
            expected: Expectations {
                class: "neutral",
                affine: Some(2),
                uniformly_recurrent: true,
                cardinality: Holds,
                return_words: Unclaimed,
                finite_index_basis: Fails,
                bifix_decoding: Unclaimed,
            },
            codes: vec![NamedCode { name: "S∩B²", recipe: CodeRecipe::Listed { words: "12 13 22 23 31" } }],
        },
        Entry {
            name: "neutral-not-tree",
            description: "factors of a*{bc,bcbc}a*",
            citation: "biextendable neutral set, not recurrent, G(ε) has a cycle and two components; \
                       S∩A² equals Chacon's and is not a basis",
            recipe: Recipe::PowersAroundBc,
            expected: Expectations {
                class: "neutral",
                affine: Some(2),
                uniformly_recurrent: false,
                cardinality: Unclaimed,
                return_words: Unclaimed,
                finite_index_basis: Fails,
                bifix_decoding: Unclaimed,
            },
            codes: vec![],
        },
        Entry {
            name: "decoded-fibonacci",
            description: "Fibonacci set decoded by x→a, y→baabaab, z→baabab, t→babaab",
            citation: "maximal bifix decoding of a Sturmian set: uniformly recurrent tree set on four letters; \
                       Y and Z are G-maximal of G-degree 2 with 7 elements",
            recipe: Recipe::Decoded {
                source: "fibonacci",
                names: vec!["x", "y", "z", "t"],
                words: vec!["a", "baabaab", "baabab", "babaab"],
            },
            expected: Expectations {
                class: "tree",
                affine: Some(3),
                uniformly_recurrent: true,
                cardinality: Holds,
                return_words: Holds,
                finite_index_basis: Holds,
                bifix_decoding: Holds,
            },
            codes: vec![
                NamedCode { name: "Y", recipe: CodeRecipe::Listed { words: "x,x x,y,x x,z x,t y z,x t,x" } },
                NamedCode {
                    name: "Z",
                    recipe: CodeRecipe::Listed { words: "x y,x,y y,x,z z,x,x,z z,x,x,t t,x,x,t t,x,y" },
                },
            ],
        },
    ]
}

pub fn entry(name: &str) -> Option<Entry> {
    registry().into_iter().find(|e| e.name == name)
}

pub fn names() -> Vec<&'static str> {
    registry().iter().map(|e| e.name).collect()
}

impl Entry {
    pub fn fixpoint(&self) -> Option<Result<Fixpoint>> {
        match &self.recipe {
            Recipe::Fixpoint { spec } => Some(spec.fixpoint()),
            _ => None,
        }
    }

    /// The factor set up to `horizon`.
    pub fn build(&self, horizon: usize) -> Result<FactorSet> {
        match &self.recipe {
            Recipe::Fixpoint { spec } => spec.fixpoint()?.factor_set(horizon),
            Recipe::PowersAroundBc => {
                let a = Alphabet::from_chars("abc")?;
                let mut words = Vec::new();
                for i in 0..=horizon {
                    for j in 0..=horizon {
                        for mid in ["bc", "bcbc"] {
                            words.push(a.parse_word(&format!("{}{mid}{}", "a".repeat(i), "a".repeat(j)))?);
                        }
                    }
                }
                Ok(FactorSet::from_words(&a, &words, horizon))
            }
            Recipe::Decoded { source, names, words } => {
                let source = entry(source).ok_or_else(|| Error::Precondition(format!("no registry set {source}")))?;
                let longest = words.iter().map(|w| w.chars().count()).max().unwrap_or(1);
                let s = source.build(horizon * longest + longest)?;
                let names = Alphabet::new(names.iter().copied())?;
                let words: Vec<Word> = words.iter().map(|w| s.alphabet().parse_word(w)).collect::<Result<_>>()?;
                let f = coding_morphism(&names, &words, s.alphabet())?;
                bifix_decode(&s, &f, horizon)
            }
        }
    }

    pub fn code(&self, s: &FactorSet, code: &NamedCode) -> Result<BifixCode> {
        match code.recipe {
            CodeRecipe::Listed { words } => BifixCode::parse(s.alphabet(), words),
            CodeRecipe::Transformed { uniform, pivot } => {
                let x = BifixCode::new(s.words_of_length(uniform).to_vec())?;
                let w = s.alphabet().parse_word(pivot)?;
                Ok(internal_transformation(&x, s, &w)?.code)
            }
        }
    }
}
