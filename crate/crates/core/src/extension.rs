//! Extension sets, extension graphs and the multiplicity `m(w)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::alphabet::{Letter, Word};
use crate::error::{Error, Result};
use crate::factors::FactorSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionProfile {
    pub word: Word,
    pub left: BTreeSet<Letter>,
    pub right: BTreeSet<Letter>,
    pub pairs: BTreeSet<(Letter, Letter)>,
    /// `e − ℓ − r + 1`
    pub multiplicity: i64,
}

impl ExtensionProfile {
    pub fn l(&self) -> usize {
        self.left.len()
    }

    pub fn r(&self) -> usize {
        self.right.len()
    }

    pub fn e(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_bispecial(&self) -> bool {
        self.l() >= 2 && self.r() >= 2
    }

    /// `E(w) ⊂ a×A ∪ A×b` for some `(a, b) ∈ E(w)`.
    pub fn is_ordinary(&self) -> bool {
        self.pairs
            .iter()
            .any(|&(a, b)| self.pairs.iter().all(|&(x, y)| x == a || y == b))
    }

    pub fn class(&self) -> WordClass {
        match self.multiplicity {
            m if m > 0 => WordClass::Strong,
            m if m < 0 => WordClass::Weak,
            _ => WordClass::Neutral,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WordClass {
    Strong,
    Weak,
    Neutral,
}

/// A vertex of an extension graph: a left copy or a right copy of a letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Left(Letter),
    Right(Letter),
}

/// Bipartite graph on `L(w) ⊔ R(w)` with edges `E(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionGraph {
    pub left: Vec<Letter>,
    pub right: Vec<Letter>,
    pub edges: Vec<(Letter, Letter)>,
}

impl ExtensionGraph {
    fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    fn index(&self, v: Side) -> usize {
        match v {
            Side::Left(a) => self.left.iter().position(|&x| x == a).unwrap(),
            Side::Right(b) => self.left.len() + self.right.iter().position(|&x| x == b).unwrap(),
        }
    }

    fn vertex(&self, i: usize) -> Side {
        if i < self.left.len() {
            Side::Left(self.left[i])
        } else {
            Side::Right(self.right[i - self.left.len()])
        }
    }

    /// Union-find over the edge list. Returns the number of components and,
    /// for the first edge closing a cycle, the cycle it closes.
    pub fn analyze(&self) -> GraphShape {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut forest: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut components = n;
        let mut cycle = None;
        for &(a, b) in &self.edges {
            let u = self.index(Side::Left(a));
            let v = self.index(Side::Right(b));
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                if cycle.is_none() {
                    let mut path = forest_path(&forest, v, u);
                    path.push(v);
                    cycle = Some(path.into_iter().map(|i| self.vertex(i)).collect());
                }
            } else {
                parent[ru] = rv;
                components -= 1;
                forest[u].push(v);
                forest[v].push(u);
            }
        }
        GraphShape { components, cycle }
    }
}

/// Path from `from` to `to` in a forest, both endpoints included.
fn forest_path(forest: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; forest.len()];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in &forest[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    let mut x = to;
    while x != from {
        x = prev[x];
        path.push(x);
    }
    path.reverse();
    path
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphShape {
    pub components: usize,
    /// Closed walk `v0, v1, …, v0` through the graph, if one exists.
    pub cycle: Option<Vec<Side>>,
}

impl GraphShape {
    pub fn is_acyclic(&self) -> bool {
        self.cycle.is_none()
    }

    pub fn is_tree(&self) -> bool {
        self.is_acyclic() && self.components == 1
    }
}

fn check_word(s: &FactorSet, w: &[Letter]) -> Result<()> {
    s.require_horizon(w.len() + 2, "extension profile")?;
    if !s.contains(w) {
        return Err(Error::NotInSet(s.alphabet().render(w)));
    }
    Ok(())
}

pub fn extension_profile(s: &FactorSet, w: &[Letter]) -> Result<ExtensionProfile> {
    check_word(s, w)?;
    let left: BTreeSet<Letter> = s.left_extensions(w).into_iter().collect();
    let right: BTreeSet<Letter> = s.right_extensions(w).into_iter().collect();
    let mut pairs = BTreeSet::new();
    let mut buf = Vec::with_capacity(w.len() + 2);
    for &a in &left {
        buf.clear();
        buf.push(a);
        buf.extend_from_slice(w);
        for b in s.right_extensions(&buf) {
            pairs.insert((a, b));
        }
    }
    let multiplicity = pairs.len() as i64 - left.len() as i64 - right.len() as i64 + 1;
    Ok(ExtensionProfile { word: Word::from(w), left, right, pairs, multiplicity })
}

pub fn extension_graph(s: &FactorSet, w: &[Letter]) -> Result<ExtensionGraph> {
    Ok(graph_of(&extension_profile(s, w)?))
}

pub fn graph_of(p: &ExtensionProfile) -> ExtensionGraph {
    ExtensionGraph {
        left: p.left.iter().copied().collect(),
        right: p.right.iter().copied().collect(),
        edges: p.pairs.iter().copied().collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordVerdict {
    pub class: WordClass,
    pub ordinary: bool,
    pub acyclic: bool,
    pub tree: bool,
    pub multiplicity: i64,
}

pub fn classify_word(s: &FactorSet, w: &[Letter]) -> Result<WordVerdict> {
    let p = extension_profile(s, w)?;
    verdict_of(s, &p)
}

fn verdict_of(s: &FactorSet, p: &ExtensionProfile) -> Result<WordVerdict> {
    if p.e() == 0 {
        return Err(Error::NotBiextendable(s.alphabet().render(&p.word)));
    }
    let shape = graph_of(p).analyze();
    Ok(WordVerdict {
        class: p.class(),
        ordinary: p.is_ordinary(),
        acyclic: shape.is_acyclic(),
        tree: shape.is_tree(),
        multiplicity: p.multiplicity,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LengthTally {
    pub length: usize,
    pub strong: usize,
    pub weak: usize,
    pub neutral: usize,
    pub non_tree: usize,
}

/// A property of the set, established for all words up to `certified_up_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetFlag {
    pub holds: bool,
    pub certified_up_to: usize,
    /// First word (shortlex) breaking the property.
    pub witness: Option<Word>,
}

impl SetFlag {
    fn new(up_to: usize) -> Self {
        SetFlag { holds: true, certified_up_to: up_to, witness: None }
    }

    fn fail(&mut self, w: &Word) {
        if self.holds {
            self.holds = false;
            self.witness = Some(w.clone());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetVerdict {
    pub up_to: usize,
    pub tallies: Vec<LengthTally>,
    pub strong: SetFlag,
    pub weak: SetFlag,
    pub neutral: SetFlag,
    pub acyclic: SetFlag,
    pub tree: SetFlag,
    /// Cycle in the extension graph of the first non-acyclic word.
    pub cycle: Option<Vec<Side>>,
    /// Every word classified, shortlex.
    pub words: BTreeMap<Word, WordVerdict>,
}

impl SetVerdict {
    pub fn class_name(&self) -> &'static str {
        if self.tree.holds {
            "tree"
        } else if self.neutral.holds {
            "neutral"
        } else if self.acyclic.holds {
            "acyclic"
        } else if self.strong.holds {
            "strong"
        } else if self.weak.holds {
            "weak"
        } else {
            "mixed"
        }
    }

    /// `tree ⇒ acyclic`, `tree ⇒ neutral`, `acyclic ⇒ weak`.
    pub fn cross_flags_consistent(&self) -> bool {
        (!self.tree.holds || (self.acyclic.holds && self.neutral.holds)) && (!self.acyclic.holds || self.weak.holds)
    }
}

/// Classifies every word of length at most `up_to`.
pub fn classify_set(s: &FactorSet, up_to: usize) -> Result<SetVerdict> {
    s.require_horizon(up_to + 2, "set classification")?;
    let mut v = SetVerdict {
        up_to,
        tallies: Vec::new(),
        strong: SetFlag::new(up_to),
        weak: SetFlag::new(up_to),
        neutral: SetFlag::new(up_to),
        acyclic: SetFlag::new(up_to),
        tree: SetFlag::new(up_to),
        cycle: None,
        words: BTreeMap::new(),
    };
    for n in 0..=up_to {
        let mut tally = LengthTally { length: n, ..Default::default() };
        for w in s.words_of_length(n) {
            let p = extension_profile(s, w)?;
            let wv = verdict_of(s, &p)?;
            match wv.class {
                WordClass::Strong => {
                    tally.strong += 1;
                    v.weak.fail(w);
                    v.neutral.fail(w);
                }
                WordClass::Weak => {
                    tally.weak += 1;
                    v.strong.fail(w);
                    v.neutral.fail(w);
                }
                WordClass::Neutral => tally.neutral += 1,
            }
            if !wv.acyclic {
                if v.acyclic.holds {
                    v.cycle = graph_of(&p).analyze().cycle;
                }
                v.acyclic.fail(w);
            }
            if !wv.tree {
                tally.non_tree += 1;
                v.tree.fail(w);
            }
            v.words.insert(w.clone(), wv);
        }
        v.tallies.push(tally);
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationCheck {
    pub n: usize,
    pub b_n: i64,
    pub sum_m: i64,
    pub s_n: i64,
    pub sum_r_minus_one: i64,
}

impl EnumerationCheck {
    pub fn holds(&self) -> bool {
        self.b_n == self.sum_m && self.s_n == self.sum_r_minus_one
    }
}

/// `b_n = Σ m(w)` and `s_n = Σ (r(w) − 1)` over `S ∩ A^n`.
pub fn check_enumeration_identities(s: &FactorSet, n: usize) -> Result<EnumerationCheck> {
    s.require_horizon(n + 2, "enumeration identities")?;
    let profile = s.complexity_profile();
    let mut sum_m = 0;
    let mut sum_r = 0;
    for w in s.words_of_length(n) {
        let p = extension_profile(s, w)?;
        sum_m += p.multiplicity;
        sum_r += p.r() as i64 - 1;
    }
    Ok(EnumerationCheck { n, b_n: profile.b[n], sum_m, s_n: profile.s[n], sum_r_minus_one: sum_r })
}
