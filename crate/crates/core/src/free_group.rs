//! Words of the free group on an alphabet.

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Signed {
    pub letter: Letter,
    pub inverse: bool,
}

impl Signed {
    pub fn pos(letter: Letter) -> Self {
        Signed { letter, inverse: false }
    }

    pub fn neg(letter: Letter) -> Self {
        Signed { letter, inverse: true }
    }

    pub fn inv(self) -> Self {
        Signed { letter: self.letter, inverse: !self.inverse }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupWord(Vec<Signed>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn new(letters: Vec<Signed>) -> Self {
        GroupWord(letters)
    }

    pub fn letters(&self) -> &[Signed] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inv())
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|s| s.inv()).collect())
    }

    /// Reduced product.
    pub fn mul(&self, other: &GroupWord) -> Self {
        free_reduce(&GroupWord(self.0.iter().chain(&other.0).copied().collect()))
    }

    /// The word itself when every exponent is positive.
    pub fn as_positive(&self) -> Option<Word> {
        self.0.iter().map(|s| (!s.inverse).then_some(s.letter)).collect()
    }

    /// `a·b⁻¹·c`, with `ε` for the identity.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.0.is_empty() {
            return "ε".into();
        }
        let mut out = String::new();
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                out.push('·');
            }
            out.push_str(alphabet.name(s.letter));
            if s.inverse {
                out.push_str("⁻¹");
            }
        }
        out
    }

    /// Accepts `c·a·a⁻¹`, `c a a^-1`, or, over single-character alphabets,
    /// the compact `caa^-1` and `ca(aa)^-1ab`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Self::identity());
        }
        let tokens: Vec<&str> = text.split(|c: char| c.is_whitespace() || c == '·' || c == '.').filter(|t| !t.is_empty()).collect();
        if tokens.len() > 1 || alphabet.letter(strip_inverse(tokens[0]).0).is_ok() {
            let mut out = Vec::new();
            for t in tokens {
                let (name, inverse) = strip_inverse(t);
                if let Ok(l) = alphabet.letter(name) {
                    out.push(Signed { letter: l, inverse });
                } else {
                    let g = Self::parse_compact(alphabet, t)?;
                    out.extend(g.0);
                }
            }
            return Ok(GroupWord(out));
        }
        Self::parse_compact(alphabet, tokens[0])
    }

    fn parse_compact(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let unknown = || Error::UnknownSymbol(text.to_string());
        if alphabet.names().iter().any(|n| n.chars().count() != 1) {
            return Err(unknown());
        }
        let chars: Vec<char> = text.chars().collect();
        let mut stack: Vec<Vec<Signed>> = vec![Vec::new()];
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            i += 1;
            let atom: Vec<Signed> = match c {
                '(' => {
                    stack.push(Vec::new());
                    continue;
                }
                ')' => {
                    if stack.len() < 2 {
                        return Err(unknown());
                    }
                    stack.pop().unwrap()
                }
                _ => {
                    let l = alphabet.letter(&c.to_string()).map_err(|_| unknown())?;
                    vec![Signed::pos(l)]
                }
            };
            let rest: String = chars[i..].iter().collect();
            let atom = if let Some(n) = ["^-1", "⁻¹"].iter().find(|p| rest.starts_with(**p)) {
                i += n.chars().count();
                GroupWord(atom).inverse().0
            } else {
                atom
            };
            stack.last_mut().unwrap().extend(atom);
        }
        if stack.len() != 1 {
            return Err(unknown());
        }
        Ok(GroupWord(stack.pop().unwrap()))
    }
}

fn strip_inverse(token: &str) -> (&str, bool) {
    for suffix in ["^-1", "⁻¹"] {
        if let Some(name) = token.strip_suffix(suffix) {
            return (name, true);
        }
    }
    (token, false)
}

impl From<&Word> for GroupWord {
    fn from(w: &Word) -> Self {
        GroupWord(w.iter().map(|&l| Signed::pos(l)).collect())
    }
}

impl From<Word> for GroupWord {
    fn from(w: Word) -> Self {
        GroupWord::from(&w)
    }
}

pub fn free_reduce(w: &GroupWord) -> GroupWord {
    let mut out: Vec<Signed> = Vec::with_capacity(w.len());
    for &s in &w.0 {
        if out.last() == Some(&s.inv()) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    GroupWord(out)
}

/// Rendering without an alphabet: `0 1⁻¹ 2`.
impl std::fmt::Display for GroupWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", l.letter, if l.inverse { "⁻¹" } else { "" })?;
        }
        Ok(())
    }
}
