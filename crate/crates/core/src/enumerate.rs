//! Exhaustive search for the S-maximal bifix codes of a given S-degree with
//! bounded word length.
//!
//! A finite S-maximal prefix code is determined by its set of proper prefixes,
//! a prefix-closed subset of the trie. The search decides every trie node up
//! to depth `max_len` in shortlex order as dead, in the code, or expanded.
//! Because every proper suffix of a node is decided before the node itself,
//! the suffix-code condition and the parse count `δ(v)` (the number of
//! expanded suffixes of `v`, the empty word included) are both known the
//! moment the node is decided.

use std::cmp::Ordering;

use crate::alphabet::Word;
use crate::code::{is_s_maximal, BifixCode};
use crate::error::Result;
use crate::factors::FactorSet;

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Dead,
    InCode,
    Expanded,
}

struct Search<'a> {
    nodes: &'a [&'a Word],
    parent: Vec<usize>,
    link: Vec<usize>,
    state: Vec<State>,
    // number of expanded suffixes, the node itself included
    delta: Vec<usize>,
    // some suffix of the node is in the code
    tail_in_code: Vec<bool>,
    degree: usize,
    max_len: usize,
    found: Vec<BifixCode>,
}

impl Search<'_> {
    fn decide(&mut self, i: usize, state: State) -> bool {
        let link = self.link[i];
        let len = self.nodes[i].len();
        let delta = self.delta[link] + usize::from(state == State::Expanded);
        if delta > self.degree || (len == self.max_len && delta != self.degree) {
            return false;
        }
        self.state[i] = state;
        self.delta[i] = delta;
        self.tail_in_code[i] = state == State::InCode || self.tail_in_code[link];
        true
    }

    fn run(&mut self, i: usize) {
        if i == self.nodes.len() {
            let words = (1..self.nodes.len())
                .filter(|&j| self.state[j] == State::InCode)
                .map(|j| self.nodes[j].clone())
                .collect();
            self.found.push(BifixCode::new_unchecked(words));
            return;
        }
        if self.state[self.parent[i]] != State::Expanded {
            if self.decide(i, State::Dead) {
                self.run(i + 1);
            }
            return;
        }
        // Shortest words first: closing the branch here before expanding it.
        if !self.tail_in_code[self.link[i]] && self.decide(i, State::InCode) {
            self.run(i + 1);
        }
        if self.nodes[i].len() < self.max_len && self.decide(i, State::Expanded) {
            self.run(i + 1);
        }
    }
}

/// Canonical order on codes: by cardinality, then by the shortlex-sorted
/// word list.
pub fn canonical_order(x: &BifixCode, y: &BifixCode) -> Ordering {
    x.len().cmp(&y.len()).then_with(|| x.words().cmp(y.words()))
}

/// All S-maximal bifix codes of S-degree `degree` whose words have length at
/// most `max_len`, in canonical order.
pub fn enumerate_s_maximal_bifix(s: &FactorSet, degree: usize, max_len: usize) -> Result<Vec<BifixCode>> {
    s.require_horizon(2 * max_len, "enumeration of S-maximal bifix codes")?;
    if degree == 0 || max_len == 0 {
        return Ok(Vec::new());
    }
    let nodes: Vec<&Word> = s.words_up_to(max_len).collect();
    let index: std::collections::HashMap<&[u8], usize> =
        nodes.iter().enumerate().map(|(i, w)| (w.letters(), i)).collect();
    let parent = nodes.iter().map(|w| if w.is_empty() { 0 } else { index[&w[..w.len() - 1]] }).collect();
    let link = nodes.iter().map(|w| if w.is_empty() { 0 } else { index[&w[1..]] }).collect();
    let n = nodes.len();
    let mut search = Search {
        nodes: &nodes,
        parent,
        link,
        state: vec![State::Dead; n],
        delta: vec![0; n],
        tail_in_code: vec![false; n],
        degree,
        max_len,
        found: Vec::new(),
    };
    search.state[0] = State::Expanded;
    search.delta[0] = 1;
    search.run(1);
    let mut found = search.found;
    found.sort_by(canonical_order);
    found.dedup();
    Ok(found)
}

/// The kernel test: a bifix code `K` can be the kernel of an S-maximal bifix
/// code of S-degree `d` only if `K` is not S-maximal and every `y ∈ K` has
/// at most `d - 1` parses.
pub fn kernel_admissible(k: &BifixCode, s: &FactorSet, degree: usize) -> Result<bool> {
    if k.words().iter().any(|y| k.parse_count(y) + 1 > degree) {
        return Ok(false);
    }
    if k.is_empty() {
        return Ok(true);
    }
    Ok(!is_s_maximal(k, s)?.maximal)
}

/// Sanity cross-check on enumeration output; returns the first code whose
/// kernel is rejected.
pub fn check_kernels<'a>(codes: &'a [BifixCode], s: &FactorSet, degree: usize) -> Result<Option<&'a BifixCode>> {
    for x in codes {
        if !kernel_admissible(&x.kernel(), s, degree)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}
