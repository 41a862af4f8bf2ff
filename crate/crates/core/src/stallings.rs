//! Stallings graphs of finitely generated subgroups of a free group.
//!
//! Generators are laid out as loops at the base vertex and folded to a fixed
//! point: whenever two edges with the same label leave (or enter) the same
//! vertex, their other endpoints are identified. The folded graph is then
//! pruned to its core and relabelled in a canonical breadth-first order, so
//! two generating sets of the same subgroup give identical graphs.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::free_group::{free_reduce, GroupWord, Signed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub letter: Letter,
    pub target: usize,
}

/// Vertex 0 is the base. Edges are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupGraph {
    pub letters: usize,
    pub vertices: usize,
    pub edges: Vec<Edge>,
    pub folded: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl Serialize for Index {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Index::Finite(n) => s.serialize_u64(*n as u64),
            Index::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl std::fmt::Display for Index {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

struct Folder {
    k: usize,
    parent: Vec<usize>,
    // out[v * k + a], inn[v * k + a]; entries are raw ids, resolved with find
    out: Vec<Option<usize>>,
    inn: Vec<Option<usize>>,
    pending: VecDeque<(usize, usize)>,
}

impl Folder {
    fn new(k: usize) -> Self {
        Folder { k, parent: vec![0], out: vec![None; k], inn: vec![None; k], pending: VecDeque::new() }
    }

    fn vertex(&mut self) -> usize {
        let v = self.parent.len();
        self.parent.push(v);
        self.out.extend(std::iter::repeat(None).take(self.k));
        self.inn.extend(std::iter::repeat(None).take(self.k));
        v
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn edge(&mut self, u: usize, a: Letter, v: usize) {
        let (u, v) = (self.find(u), self.find(v));
        let a = a as usize;
        if let Some(w) = self.out[u * self.k + a] {
            // (u,a,v) and (u,a,w) coincide once v and w are identified
            self.pending.push_back((v, w));
            return;
        }
        if let Some(w) = self.inn[v * self.k + a] {
            self.pending.push_back((u, w));
            return;
        }
        self.out[u * self.k + a] = Some(v);
        self.inn[v * self.k + a] = Some(u);
    }

    fn merge(&mut self, x: usize, y: usize) {
        let (x, y) = (self.find(x), self.find(y));
        if x == y {
            return;
        }
        // the smaller id survives, so the base stays 0
        let (keep, gone) = if x < y { (x, y) } else { (y, x) };
        self.parent[gone] = keep;
        for a in 0..self.k {
            if let Some(t) = self.out[gone * self.k + a].take() {
                match self.out[keep * self.k + a] {
                    Some(w) => self.pending.push_back((w, t)),
                    None => self.out[keep * self.k + a] = Some(t),
                }
            }
            if let Some(s) = self.inn[gone * self.k + a].take() {
                match self.inn[keep * self.k + a] {
                    Some(w) => self.pending.push_back((w, s)),
                    None => self.inn[keep * self.k + a] = Some(s),
                }
            }
        }
    }

    fn drain(&mut self) {
        while let Some((x, y)) = self.pending.pop_front() {
            self.merge(x, y);
        }
    }

    fn add_loop(&mut self, w: &GroupWord) {
        let n = w.len();
        let mut at = 0;
        for (i, s) in w.letters().iter().enumerate() {
            let next = if i + 1 == n { 0 } else { self.vertex() };
            if s.inverse {
                self.edge(next, s.letter, at);
            } else {
                self.edge(at, s.letter, next);
            }
            at = next;
            self.drain();
        }
    }

    fn edges(&mut self) -> Vec<Edge> {
        let mut edges = Vec::new();
        for v in 0..self.parent.len() {
            if self.find(v) != v {
                continue;
            }
            for a in 0..self.k {
                if let Some(t) = self.out[v * self.k + a] {
                    let target = self.find(t);
                    edges.push(Edge { source: v, letter: a as Letter, target });
                }
            }
        }
        edges
    }
}

/// Removes non-base vertices of degree one until none is left.
fn prune(edges: &mut Vec<Edge>) {
    loop {
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for e in edges.iter() {
            *degree.entry(e.source).or_default() += 1;
            *degree.entry(e.target).or_default() += 1;
        }
        let leaves: Vec<usize> = degree.iter().filter(|&(&v, &d)| v != 0 && d == 1).map(|(&v, _)| v).collect();
        if leaves.is_empty() {
            return;
        }
        edges.retain(|e| !leaves.contains(&e.source) && !leaves.contains(&e.target));
    }
}

/// Breadth-first relabelling from the base; neighbours in (letter, out before
/// in) order.
fn canonical(edges: &[Edge]) -> (usize, Vec<Edge>) {
    let mut adj: BTreeMap<usize, Vec<(Letter, bool, usize)>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.source).or_default().push((e.letter, false, e.target));
        adj.entry(e.target).or_default().push((e.letter, true, e.source));
    }
    for list in adj.values_mut() {
        list.sort();
    }
    let mut label: BTreeMap<usize, usize> = BTreeMap::from([(0, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &(_, _, w) in adj.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            if !label.contains_key(&w) {
                label.insert(w, label.len());
                queue.push_back(w);
            }
        }
    }
    let mut out: Vec<Edge> = edges
        .iter()
        .map(|e| Edge { source: label[&e.source], letter: e.letter, target: label[&e.target] })
        .collect();
    out.sort();
    (label.len(), out)
}

fn fold_in_order(letters: usize, gens: &[GroupWord]) -> SubgroupGraph {
    let mut folder = Folder::new(letters);
    for g in gens {
        let g = free_reduce(g);
        if !g.is_empty() {
            folder.add_loop(&g);
        }
    }
    let mut edges = folder.edges();
    prune(&mut edges);
    let (vertices, edges) = canonical(&edges);
    SubgroupGraph { letters, vertices, edges, folded: true }
}

/// Folded core graph of the subgroup generated by `gens`.
pub fn stallings_fold_group(alphabet: &Alphabet, gens: &[GroupWord]) -> SubgroupGraph {
    fold_in_order(alphabet.len(), gens)
}

pub fn stallings_fold(alphabet: &Alphabet, words: &[Word]) -> SubgroupGraph {
    let gens: Vec<GroupWord> = words.iter().map(GroupWord::from).collect();
    fold_in_order(alphabet.len(), &gens)
}

/// Folds the same graph after inserting the generator edges one at a time in
/// the order given by `order`, a permutation of all edge positions (the
/// `j`-th letter of generator `i` is position `Σ_{i'<i} |g_i'| + j`).
pub fn stallings_fold_with_order(alphabet: &Alphabet, gens: &[GroupWord], order: &[usize]) -> SubgroupGraph {
    let k = alphabet.len();
    let mut folder = Folder::new(k);
    let mut edges = Vec::new();
    for g in gens {
        let g = free_reduce(g);
        let n = g.len();
        let mut at = 0;
        for (i, s) in g.letters().iter().enumerate() {
            let next = if i + 1 == n { 0 } else { folder.vertex() };
            edges.push(if s.inverse { (next, s.letter, at) } else { (at, s.letter, next) });
            at = next;
        }
    }
    for &i in order {
        let (u, a, v) = edges[i];
        folder.edge(u, a, v);
        folder.drain();
    }
    let mut edges = folder.edges();
    prune(&mut edges);
    let (vertices, edges) = canonical(&edges);
    SubgroupGraph { letters: k, vertices, edges, folded: true }
}

impl SubgroupGraph {
    /// A graph given by hand (for instance read back from JSON); the folded
    /// flag is recomputed.
    pub fn from_edges(letters: usize, vertices: usize, mut edges: Vec<Edge>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::Precondition("a subgroup graph needs a base vertex".into()));
        }
        for e in &edges {
            if e.source >= vertices || e.target >= vertices || e.letter as usize >= letters {
                return Err(Error::Precondition(format!("edge {e:?} out of range")));
            }
        }
        edges.sort();
        edges.dedup();
        let mut g = SubgroupGraph { letters, vertices, edges, folded: false };
        g.folded = g.check_folded();
        Ok(g)
    }

    fn check_folded(&self) -> bool {
        let mut out = std::collections::HashSet::new();
        let mut inn = std::collections::HashSet::new();
        self.edges.iter().all(|e| out.insert((e.source, e.letter)) && inn.insert((e.target, e.letter)))
    }

    fn require_folded(&self) -> Result<()> {
        if self.folded {
            Ok(())
        } else {
            Err(Error::Precondition("graph is not folded".into()))
        }
    }

    fn step(&self, v: usize, s: Signed) -> Option<usize> {
        self.edges.iter().find_map(|e| match s.inverse {
            false if e.source == v && e.letter == s.letter => Some(e.target),
            true if e.target == v && e.letter == s.letter => Some(e.source),
            _ => None,
        })
    }

    /// Every vertex has one outgoing and one incoming edge per letter.
    pub fn is_complete(&self) -> bool {
        self.folded && self.edges.len() == self.vertices * self.letters
    }

    pub fn index(&self) -> Result<Index> {
        self.require_folded()?;
        Ok(if self.is_complete() { Index::Finite(self.vertices) } else { Index::Infinite })
    }

    pub fn rank(&self) -> Result<usize> {
        self.require_folded()?;
        Ok(self.edges.len() + 1 - self.vertices)
    }

    pub fn contains(&self, w: &GroupWord) -> Result<bool> {
        self.require_folded()?;
        let mut v = 0;
        for &s in free_reduce(w).letters() {
            match self.step(v, s) {
                Some(t) => v = t,
                None => return Ok(false),
            }
        }
        Ok(v == 0)
    }

    /// Labels of breadth-first spanning tree paths from the base, one per
    /// vertex: a set of coset representatives.
    pub fn coset_transversal(&self) -> Result<Vec<GroupWord>> {
        if self.index()? == Index::Infinite {
            return Err(Error::InfiniteIndex);
        }
        let mut label: Vec<Option<GroupWord>> = vec![None; self.vertices];
        label[0] = Some(GroupWord::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for a in 0..self.letters as Letter {
                for s in [Signed::pos(a), Signed::neg(a)] {
                    if let Some(t) = self.step(v, s) {
                        if label[t].is_none() {
                            let mut path = label[v].clone().unwrap().letters().to_vec();
                            path.push(s);
                            label[t] = Some(GroupWord::new(path));
                            queue.push_back(t);
                        }
                    }
                }
            }
        }
        Ok(label.into_iter().map(Option::unwrap).collect())
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("digraph subgroup {\n  rankdir=LR;\n  0 [shape=doublecircle];\n");
        for v in 1..self.vertices {
            let _ = writeln!(out, "  {v} [shape=circle];");
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", e.source, e.target, alphabet.name(e.letter));
        }
        out.push_str("}\n");
        out
    }
}

pub fn subgroup_index(g: &SubgroupGraph) -> Result<Index> {
    g.index()
}

pub fn subgroup_rank(g: &SubgroupGraph) -> Result<usize> {
    g.rank()
}

/// `X` freely generates `⟨X⟩` exactly when the rank equals `Card(X)`.
pub fn is_basis(alphabet: &Alphabet, words: &[Word]) -> bool {
    let mut distinct = words.to_vec();
    distinct.sort();
    distinct.dedup();
    distinct.len() == words.len() && !distinct.iter().any(|w| w.is_empty()) && {
        let g = stallings_fold(alphabet, &distinct);
        g.edges.len() + 1 - g.vertices == distinct.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(letters: &str, words: &str) -> (Alphabet, SubgroupGraph) {
        let a = Alphabet::from_chars(letters).unwrap();
        let w = a.parse_words(words).unwrap();
        let g = stallings_fold(&a, &w);
        (a, g)
    }

    fn gw(a: &Alphabet, s: &str) -> GroupWord {
        GroupWord::parse(a, s).unwrap()
    }

    // Folding by brute force: merge until no two edges share (source, letter)
    // or (target, letter), scanning the whole edge list each round.
    fn naive(gens: &[Word]) -> (usize, usize) {
        let mut edges: Vec<(usize, u8, usize)> = Vec::new();
        let mut n = 1;
        for g in gens {
            let mut at = 0;
            for (i, &l) in g.iter().enumerate() {
                let next = if i + 1 == g.len() { 0 } else { n += 1; n - 1 };
                edges.push((at, l, next));
                at = next;
            }
        }
        let mut rep: Vec<usize> = (0..n).collect();
        loop {
            let mut merged = false;
            'scan: for i in 0..edges.len() {
                for j in 0..edges.len() {
                    let (e, f) = (edges[i], edges[j]);
                    let pair = if e.1 == f.1 && e.0 == f.0 && e.2 != f.2 {
                        Some((e.2, f.2))
                    } else if e.1 == f.1 && e.2 == f.2 && e.0 != f.0 {
                        Some((e.0, f.0))
                    } else {
                        None
                    };
                    if let Some((x, y)) = pair {
                        let (keep, gone) = (x.min(y), x.max(y));
                        for v in rep.iter_mut() {
                            if *v == gone {
                                *v = keep;
                            }
                        }
                        for e in edges.iter_mut() {
                            if e.0 == gone {
                                e.0 = keep;
                            }
                            if e.2 == gone {
                                e.2 = keep;
                            }
                        }
                        edges.sort();
                        edges.dedup();
                        merged = true;
                        break 'scan;
                    }
                }
            }
            if !merged {
                break;
            }
        }
        let mut vs: Vec<usize> = rep;
        vs.sort();
        vs.dedup();
        (vs.len(), edges.len())
    }

    #[test]
    fn degree_two_code() {
        let (a, g) = graph("ab", "a bab baab");
        assert_eq!((g.vertices, g.edges.len()), (2, 4));
        assert!(g.is_complete());
        assert_eq!(g.index().unwrap(), Index::Finite(2));
        assert_eq!(g.rank().unwrap(), 3);
        let t: Vec<String> = g.coset_transversal().unwrap().iter().map(|w| w.render(&a)).collect();
        assert_eq!(t, ["ε", "b"]);
        assert!(g.contains(&gw(&a, "bb")).unwrap());
        assert!(!g.contains(&gw(&a, "b")).unwrap());
        assert!(is_basis(&a, &a.parse_words("a bab baab").unwrap()));
    }

    #[test]
    fn even_length_subgroup() {
        let (a, g) = graph("ab", "aa ab ba");
        assert_eq!((g.vertices, g.edges.len()), (2, 4));
        assert_eq!(g.index().unwrap(), Index::Finite(2));
        let t: Vec<String> = g.coset_transversal().unwrap().iter().map(|w| w.render(&a)).collect();
        assert_eq!(t, ["ε", "a"]);
    }

    #[test]
    fn whole_group() {
        let (a, g) = graph("ab", "a b");
        assert_eq!((g.vertices, g.edges.len()), (1, 2));
        assert_eq!(g.index().unwrap(), Index::Finite(1));
        assert_eq!(g.coset_transversal().unwrap(), vec![GroupWord::identity()]);
        assert!(g.contains(&gw(&a, "ab^-1a^-1b")).unwrap());
    }

    #[test]
    fn chacon_pairs_are_dependent() {
        let (a, g) = graph("abc", "aa ab bc ca cb");
        assert_eq!((g.vertices, g.edges.len()), (3, 6));
        assert_eq!(g.rank().unwrap(), 4);
        assert_eq!(g.index().unwrap(), Index::Infinite);
        assert!(matches!(g.coset_transversal(), Err(Error::InfiniteIndex)));
        assert!(!is_basis(&a, &a.parse_words("aa ab bc ca cb").unwrap()));
        let (a, h) = graph("abc", "aa ab ca");
        assert!(h.contains(&gw(&a, "cb")).unwrap());
        assert!(h.contains(&gw(&a, "ca(aa)^-1ab")).unwrap());
        let digits = Alphabet::from_chars("123").unwrap();
        assert!(!is_basis(&digits, &digits.parse_words("12 13 22 23 31").unwrap()));
    }

    #[test]
    fn matches_naive_folding() {
        for (letters, words) in [
            ("ab", "a bab baab"),
            ("ab", "aa ab ba"),
            ("abc", "aa ab bc ca cb"),
            ("ab", "aba bab abba"),
            ("abc", "abc bca cab acb"),
            ("ab", "aab abb baa bba aaa"),
        ] {
            let a = Alphabet::from_chars(letters).unwrap();
            let w = a.parse_words(words).unwrap();
            let g = stallings_fold(&a, &w);
            assert_eq!(naive(&w), (g.vertices, g.edges.len()), "{words}");
        }
    }

    #[test]
    fn inverse_generators_and_pruning() {
        let a = Alphabet::from_chars("ab").unwrap();
        // a b a⁻¹ is conjugate to b: the base hangs off a one-edge stem
        let g = stallings_fold_group(&a, &[gw(&a, "aba^-1")]);
        assert_eq!((g.vertices, g.edges.len()), (2, 2));
        assert_eq!(g.rank().unwrap(), 1);
        let g = stallings_fold_group(&a, &[gw(&a, "aa^-1"), gw(&a, "b")]);
        assert_eq!((g.vertices, g.edges.len()), (1, 1));
    }

    #[test]
    fn hand_made_graphs() {
        let e = |source, letter, target| Edge { source, letter, target };
        let g = SubgroupGraph::from_edges(2, 2, vec![e(0, 0, 1), e(0, 0, 0)]).unwrap();
        assert!(!g.folded);
        assert!(g.index().is_err());
        let g = SubgroupGraph::from_edges(2, 1, vec![e(0, 0, 0), e(0, 1, 0)]).unwrap();
        assert_eq!(g.index().unwrap(), Index::Finite(1));
        assert!(SubgroupGraph::from_edges(2, 1, vec![e(0, 2, 0)]).is_err());
    }

    #[test]
    fn dot_export() {
        let (a, g) = graph("ab", "a bab baab");
        let dot = g.to_dot(&a);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("->").count(), 4);
    }
}
