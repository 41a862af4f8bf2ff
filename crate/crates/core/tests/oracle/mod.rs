//! Naive string-based reimplementations used as test oracles. Nothing here
//! calls into the library.

#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::rc::Rc;

/// Iterates a substitution on strings until the prefix reaches `len`.
pub fn fixpoint(rules: &[(char, &str)], seed: char, len: usize) -> String {
    let rule = |c: char| rules.iter().find(|r| r.0 == c).unwrap().1;
    let mut w = seed.to_string();
    while w.chars().count() < len {
        let next: String = w.chars().map(rule).collect();
        assert!(next.len() > w.len(), "substitution does not grow");
        w = next;
    }
    w.chars().take(len).collect()
}

pub fn apply(rules: &[(char, &str)], w: &str) -> String {
    w.chars().map(|c| rules.iter().find(|r| r.0 == c).unwrap().1).collect()
}

pub const FIBONACCI: &[(char, &str)] = &[('a', "ab"), ('b', "a")];
pub const TRIBONACCI: &[(char, &str)] = &[('a', "ab"), ('b', "ac"), ('c', "a")];
pub const CHACON: &[(char, &str)] = &[('a', "aabc"), ('b', "bc"), ('c', "abc")];
pub const CASSAIGNE_SIGMA: &[(char, &str)] = &[('a', "ab"), ('b', "cda"), ('c', "cd"), ('d', "abc")];
pub const CASSAIGNE_TAU: &[(char, &str)] = &[('a', "12"), ('b', "2"), ('c', "3"), ('d', "13")];

pub fn cassaigne_text(len: usize) -> String {
    apply(CASSAIGNE_TAU, &fixpoint(CASSAIGNE_SIGMA, 'a', len))
}

/// Factors of a long prefix, computed per length on demand. A length is only
/// trusted if the first half of the text already shows every factor.
pub struct NaiveSet {
    pub text: String,
    pub alphabet: Vec<char>,
    levels: RefCell<BTreeMap<usize, Rc<BTreeSet<String>>>>,
}

fn windows(text: &[char], n: usize) -> BTreeSet<String> {
    if n > text.len() {
        return BTreeSet::new();
    }
    text.windows(n.max(1)).map(|w| if n == 0 { String::new() } else { w.iter().collect() }).collect()
}

impl NaiveSet {
    pub fn new(text: String) -> Self {
        let mut alphabet: Vec<char> = text.chars().collect::<BTreeSet<_>>().into_iter().collect();
        alphabet.sort();
        NaiveSet { text, alphabet, levels: RefCell::new(BTreeMap::new()) }
    }

    pub fn level(&self, n: usize) -> Rc<BTreeSet<String>> {
        if let Some(l) = self.levels.borrow().get(&n) {
            return l.clone();
        }
        let chars: Vec<char> = self.text.chars().collect();
        let full = windows(&chars, n);
        let half = windows(&chars[..chars.len() / 2], n);
        assert_eq!(full, half, "prefix too short to trust factors of length {n}");
        let l = Rc::new(full);
        self.levels.borrow_mut().insert(n, l.clone());
        l
    }

    pub fn has(&self, w: &str) -> bool {
        self.level(w.chars().count()).contains(w)
    }

    pub fn right(&self, w: &str) -> Vec<char> {
        self.alphabet.iter().copied().filter(|&c| self.has(&format!("{w}{c}"))).collect()
    }

    pub fn left(&self, w: &str) -> Vec<char> {
        self.alphabet.iter().copied().filter(|&c| self.has(&format!("{c}{w}"))).collect()
    }

    pub fn pairs(&self, w: &str) -> BTreeSet<(char, char)> {
        let mut out = BTreeSet::new();
        for &a in &self.alphabet {
            for &b in &self.alphabet {
                if self.has(&format!("{a}{w}{b}")) {
                    out.insert((a, b));
                }
            }
        }
        out
    }

    pub fn multiplicity(&self, w: &str) -> i64 {
        self.pairs(w).len() as i64 - self.left(w).len() as i64 - self.right(w).len() as i64 + 1
    }

    /// Connected and acyclic, by union-find over the bipartite graph.
    pub fn is_tree_word(&self, w: &str) -> bool {
        let pairs = self.pairs(w);
        let (l, r) = (self.left(w), self.right(w));
        let idx = |side: usize, c: char| side * 256 + c as usize;
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &l {
            parent.insert(idx(0, c), idx(0, c));
        }
        for &c in &r {
            parent.insert(idx(1, c), idx(1, c));
        }
        fn find(p: &mut BTreeMap<usize, usize>, x: usize) -> usize {
            let up = p[&x];
            if up == x {
                x
            } else {
                let root = find(p, up);
                p.insert(x, root);
                root
            }
        }
        for &(a, b) in &pairs {
            let (x, y) = (find(&mut parent, idx(0, a)), find(&mut parent, idx(1, b)));
            if x == y {
                return false;
            }
            parent.insert(x, y);
        }
        pairs.len() + 1 == l.len() + r.len()
    }
}

/// Factor sets given as explicit word lists (for sets that are not fixpoints).
pub struct ListedSet {
    pub alphabet: Vec<char>,
    pub levels: Vec<BTreeSet<String>>,
}

impl ListedSet {
    pub fn has(&self, w: &str) -> bool {
        self.levels.get(w.chars().count()).is_some_and(|l| l.contains(w))
    }
}

/// `f⁻¹(S)` up to length `max_n` for a coding morphism given by `images`.
pub fn decode(set: &NaiveSet, images: &[(char, &str)], max_n: usize) -> ListedSet {
    let mut levels = vec![BTreeSet::from([String::new()])];
    for _ in 0..max_n {
        let mut next = BTreeSet::new();
        for w in levels.last().unwrap() {
            for &(b, _) in images {
                let v = format!("{w}{b}");
                if set.has(&apply(images, &v)) {
                    next.insert(v);
                }
            }
        }
        levels.push(next);
    }
    ListedSet { alphabet: images.iter().map(|i| i.0).collect(), levels }
}

pub fn in_star(code: &[&str], w: &str) -> bool {
    let n = w.len();
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for i in 0..n {
        if ok[i] {
            for x in code {
                if w[i..].starts_with(x) {
                    ok[i + x.len()] = true;
                }
            }
        }
    }
    ok[n]
}

/// All parses `(v, x, u)`, by brute force over every split.
pub fn parses(code: &[&str], w: &str) -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    for i in 0..=w.len() {
        let v = &w[..i];
        if code.iter().any(|x| v.ends_with(x)) {
            continue;
        }
        for j in i..=w.len() {
            let u = &w[j..];
            if !code.iter().any(|x| u.starts_with(x)) && in_star(code, &w[i..j]) {
                out.push((v.to_string(), w[i..j].to_string(), u.to_string()));
            }
        }
    }
    out
}

pub fn is_bifix(code: &[&str]) -> bool {
    code.iter().all(|x| {
        code.iter().all(|y| x == y || (!y.starts_with(x) && !y.ends_with(x)))
    })
}

/// The common number of parses of the words of length `max_len(X)`, which
/// are never internal factors. Panics if they disagree.
pub fn degree(code: &[&str], words_of_max_len: &BTreeSet<String>) -> usize {
    let counts: BTreeSet<usize> = words_of_max_len.iter().map(|w| parses(code, w).len()).collect();
    assert_eq!(counts.len(), 1, "parse counts {counts:?} for {code:?}");
    *counts.iter().next().unwrap()
}

/// No word of `S` up to `2 · max_len(X)` can be added keeping the code bifix.
pub fn is_s_maximal(code: &[&str], levels: impl Fn(usize) -> BTreeSet<String>) -> bool {
    let max = code.iter().map(|x| x.len()).max().unwrap();
    (1..=2 * max).all(|n| {
        levels(n).iter().all(|w| {
            code.contains(&w.as_str()) || code.iter().any(|x| x.starts_with(w.as_str()) || x.ends_with(w.as_str()) || w.starts_with(x) || w.ends_with(x))
        })
    })
}

/// Words between consecutive occurrences of `w` in `text`, read after `w`.
pub fn return_words(text: &str, w: &str) -> BTreeSet<String> {
    let starts: Vec<usize> = (0..=text.len() - w.len()).filter(|&i| text[i..].starts_with(w)).collect();
    starts.windows(2).map(|p| text[p[0] + w.len()..p[1] + w.len()].to_string()).collect()
}

/// A letter with an inverse flag.
pub type Sym = (char, bool);

pub fn positive(w: &str) -> Vec<Sym> {
    w.chars().map(|c| (c, false)).collect()
}

pub fn inverse(w: &[Sym]) -> Vec<Sym> {
    w.iter().rev().map(|&(c, i)| (c, !i)).collect()
}

pub fn reduce(w: &[Sym]) -> Vec<Sym> {
    let mut out: Vec<Sym> = Vec::new();
    for &s in w {
        if out.last() == Some(&(s.0, !s.1)) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

/// Result of folding by repeated pairwise merging.
#[derive(Debug, PartialEq, Eq)]
pub struct Folded {
    pub vertices: usize,
    pub edges: Vec<(usize, char, usize)>,
    pub complete: bool,
}

impl Folded {
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices
    }

    pub fn index(&self) -> Option<usize> {
        self.complete.then_some(self.vertices)
    }

    /// Reads a reduced word from the base; membership iff it returns to 0.
    pub fn contains(&self, w: &[Sym]) -> bool {
        let mut at = 0;
        for &(c, inv) in &reduce(w) {
            let next = self.edges.iter().find_map(|&(s, l, t)| match inv {
                false if s == at && l == c => Some(t),
                true if t == at && l == c => Some(s),
                _ => None,
            });
            match next {
                Some(v) => at = v,
                None => return false,
            }
        }
        at == 0
    }
}

pub fn fold(alphabet: &[char], gens: &[Vec<Sym>]) -> Folded {
    let mut edges: Vec<(usize, char, usize)> = Vec::new();
    let mut fresh = 1;
    for g in gens {
        let g = reduce(g);
        let mut at = 0;
        for (i, &(c, inv)) in g.iter().enumerate() {
            let next = if i + 1 == g.len() {
                0
            } else {
                fresh += 1;
                fresh - 1
            };
            edges.push(if inv { (next, c, at) } else { (at, c, next) });
            at = next;
        }
    }
    loop {
        edges.sort();
        edges.dedup();
        let mut merge = None;
        'search: for (i, e) in edges.iter().enumerate() {
            for f in &edges[i + 1..] {
                if e.1 == f.1 && e.0 == f.0 && e.2 != f.2 {
                    merge = Some((e.2.min(f.2), e.2.max(f.2)));
                    break 'search;
                }
                if e.1 == f.1 && e.2 == f.2 && e.0 != f.0 {
                    merge = Some((e.0.min(f.0), e.0.max(f.0)));
                    break 'search;
                }
            }
        }
        let Some((keep, gone)) = merge else { break };
        for e in &mut edges {
            if e.0 == gone {
                e.0 = keep;
            }
            if e.2 == gone {
                e.2 = keep;
            }
        }
    }
    // prune hanging vertices other than the base
    loop {
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for &(s, _, t) in &edges {
            *degree.entry(s).or_default() += 1;
            *degree.entry(t).or_default() += 1;
        }
        match degree.iter().find(|&(&v, &d)| v != 0 && d == 1) {
            Some((&v, _)) => edges.retain(|&(s, _, t)| s != v && t != v),
            None => break,
        }
    }
    let vertices: HashSet<usize> = edges.iter().flat_map(|&(s, _, t)| [s, t]).chain([0]).collect();
    let complete = vertices.iter().all(|&v| {
        alphabet.iter().all(|&c| {
            edges.iter().any(|&(s, l, _)| s == v && l == c) && edges.iter().any(|&(_, l, t)| t == v && l == c)
        })
    });
    Folded { vertices: vertices.len(), edges, complete }
}

pub fn fold_words(alphabet: &[char], words: &[&str]) -> Folded {
    fold(alphabet, &words.iter().map(|w| positive(w)).collect::<Vec<_>>())
}
