use std::collections::HashSet;

use rayon::prelude::*;

use super::{sort_classes, GeodesicClass, LengthSpectrum};
use crate::error::{Error, Result};
use crate::group::{length_to_trace, ConjugacyClosure, GeneratorSet, Letter, Mat2, Relator, Word};
use crate::pool::run_with_workers;

/// Largest supported length cutoff.
pub const MAX_CUTOFF: f64 = 30.0;

/// Tuning knobs for [`enumerate_classes_with`].
#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    /// Number of worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    /// Allowed excess of a prefix's displacement of the base point over the cutoff.
    pub displacement_slack: f64,
    /// Words longer than `ceil(letter_horizon · L_max)` letters are not explored.
    pub letter_horizon: f64,
    /// Length of the prefixes that are distributed over workers.
    pub split_depth: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { workers: None, displacement_slack: 11.0, letter_horizon: 3.0, split_depth: 3 }
    }
}

/// Enumerates every primitive oriented conjugacy class with length at most `l_max`.
pub fn enumerate_classes(gens: &GeneratorSet, l_max: f64) -> Result<LengthSpectrum> {
    enumerate_classes_with(gens, l_max, &EnumerationOptions::default())
}

pub fn enumerate_classes_with(gens: &GeneratorSet, l_max: f64, opts: &EnumerationOptions) -> Result<LengthSpectrum> {
    if !(l_max > 0.0) {
        return Err(Error::InvalidParameter(format!("length cutoff must be positive, got {l_max}")));
    }
    if l_max > MAX_CUTOFF {
        return Err(Error::CutoffTooLarge { requested: l_max, limit: MAX_CUTOFF });
    }
    gens.validate()?;
    let search = Search::new(gens, l_max, opts);
    let (shallow, roots) = search.split(opts.split_depth);
    let run = || -> Vec<GeodesicClass> {
        let mut found = search.check_all(&shallow);
        let deep: Vec<Vec<GeodesicClass>> = roots.par_iter().map(|root| search.explore(root)).collect();
        found.extend(deep.into_iter().flatten());
        found
    };
    let mut classes = run_with_workers(opts.workers, run)?;
    sort_classes(&mut classes);
    classes.dedup_by(|a, b| a.normal_form == b.normal_form);
    Ok(LengthSpectrum::new(gens.label(), l_max, classes))
}

/// Largest amount by which the displacement of `i` under a prefix of `word`
/// exceeds the translation length of the whole word.
pub fn max_prefix_excess(gens: &GeneratorSet, word: &Word) -> f64 {
    let total = gens.word_to_matrix(word).trace();
    let length = crate::group::trace_to_length(total).unwrap_or(0.0);
    let mut m = Mat2::IDENTITY;
    let mut worst = f64::NEG_INFINITY;
    for &l in word.letters() {
        m = m * gens.letter_matrix(l);
        worst = worst.max(m.displacement_of_i() - length);
    }
    worst
}

/// A partial word under construction together with incremental pruning state.
#[derive(Clone)]
struct Node {
    letters: Vec<Letter>,
    matrix: Mat2,
    /// Period of the longest Lyndon prefix (FKM necklace generation).
    period: usize,
    run_forward: usize,
    run_backward: usize,
}

struct Search<'a> {
    gens: &'a GeneratorSet,
    relator: &'a Relator,
    l_max: f64,
    max_trace: f64,
    max_displacement_cosh: f64,
    max_letters: usize,
    alphabet: Vec<Letter>,
}

impl<'a> Search<'a> {
    fn new(gens: &'a GeneratorSet, l_max: f64, opts: &EnumerationOptions) -> Self {
        let rank_count = 4 * gens.genus();
        Search {
            gens,
            relator: gens.relator(),
            l_max,
            max_trace: length_to_trace(l_max) * (1.0 + 1e-12),
            max_displacement_cosh: (l_max + opts.displacement_slack).cosh(),
            max_letters: (opts.letter_horizon * l_max).ceil() as usize,
            alphabet: (0..rank_count).map(Letter::from_rank).collect(),
        }
    }

    fn root(&self) -> Node {
        Node { letters: Vec::new(), matrix: Mat2::IDENTITY, period: 1, run_forward: 0, run_backward: 0 }
    }

    /// Extends `node` by `x` if the result can still be a prefix of a
    /// cyclically Dehn-reduced least rotation within the displacement bound.
    fn extend(&self, node: &Node, x: Letter) -> Option<Node> {
        let n = node.letters.len();
        if n >= self.max_letters {
            return None;
        }
        let mut period = node.period;
        let (run_forward, run_backward);
        if let Some(&last) = node.letters.last() {
            if x == last.inverse() {
                return None;
            }
            let reference = node.letters[n - period];
            match x.cmp(&reference) {
                std::cmp::Ordering::Less => return None,
                std::cmp::Ordering::Equal => {}
                std::cmp::Ordering::Greater => period = n + 1,
            }
            let step = |dir, run: usize| if self.relator.follows(dir, last, x) { run + 1 } else { 1 };
            run_forward = step(crate::group::Direction::Forward, node.run_forward);
            run_backward = step(crate::group::Direction::Backward, node.run_backward);
            if run_forward.max(run_backward) > self.relator.half() {
                return None;
            }
        } else {
            run_forward = 1;
            run_backward = 1;
        }
        let matrix = node.matrix * self.gens.letter_matrix(x);
        let m = &matrix;
        let cosh_d = 0.5 * (m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d);
        if cosh_d > self.max_displacement_cosh {
            return None;
        }
        let mut letters = Vec::with_capacity(n + 1);
        letters.extend_from_slice(&node.letters);
        letters.push(x);
        Some(Node { letters, matrix, period, run_forward, run_backward })
    }

    /// Splits the search tree at `depth`: returns the shallower nodes, which
    /// are only checked as candidates, and the nodes at `depth`, whose
    /// subtrees are explored independently.
    fn split(&self, depth: usize) -> (Vec<Node>, Vec<Node>) {
        let mut shallow = Vec::new();
        let mut level = vec![self.root()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for node in &level {
                for &x in &self.alphabet {
                    if let Some(child) = self.extend(node, x) {
                        next.push(child);
                    }
                }
            }
            shallow.append(&mut level);
            level = next;
        }
        (shallow, level)
    }

    fn check_all(&self, nodes: &[Node]) -> Vec<GeodesicClass> {
        let mut seen = HashSet::new();
        let mut found = Vec::new();
        for node in nodes {
            self.consider(node, &mut seen, &mut found);
        }
        found
    }

    fn explore(&self, root: &Node) -> Vec<GeodesicClass> {
        let mut seen: HashSet<Vec<Letter>> = HashSet::new();
        let mut found = Vec::new();
        let mut stack = vec![root.clone()];
        while let Some(node) = stack.pop() {
            self.consider(&node, &mut seen, &mut found);
            for &x in self.alphabet.iter().rev() {
                if let Some(child) = self.extend(&node, x) {
                    stack.push(child);
                }
            }
        }
        found
    }

    fn consider(&self, node: &Node, seen: &mut HashSet<Vec<Letter>>, found: &mut Vec<GeodesicClass>) {
        let w = &node.letters;
        let n = w.len();
        if n == 0 || n % node.period != 0 || (n > 1 && w[0] == w[n - 1].inverse()) {
            return;
        }
        let t = node.matrix.trace().abs();
        if !(t > 2.0 && t <= self.max_trace) {
            return;
        }
        if seen.contains(w) || !self.relator.is_cyclically_dehn_reduced(w) {
            return;
        }
        let Ok(closure) = ConjugacyClosure::of(self.relator, w) else { return };
        seen.insert(w.clone());
        for m in closure.members() {
            seen.insert(m.clone());
        }
        if !closure.is_primitive() {
            return;
        }
        if let Ok(class) = GeodesicClass::from_normal_form(self.gens, closure.normal_form()) {
            if class.length <= self.l_max {
                found.push(class);
            }
        }
    }
}
