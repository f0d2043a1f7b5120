use std::collections::BTreeSet;

use super::relator::{Direction, Relator};
use super::word::{canonical_rotation, primitive_period, Letter, Word};
use crate::error::{Error, Result};

/// The set of shortest cyclic words representing one conjugacy class, each
/// stored as its least rotation.
#[derive(Clone, Debug)]
pub struct ConjugacyClosure {
    members: BTreeSet<Vec<Letter>>,
}

impl ConjugacyClosure {
    /// Explores all cyclic words reachable from `w` by half-relator exchanges
    /// and ring flips, restarting whenever a shorter representative appears.
    pub fn of(relator: &Relator, w: &[Letter]) -> Result<Self> {
        let mut start = relator.cyclic_reduce(w);
        'restart: loop {
            if start.is_empty() {
                return Err(Error::TrivialWord);
            }
            let n = start.len();
            let first = canonical_rotation(&start);
            let mut members = BTreeSet::new();
            members.insert(first.clone());
            let mut stack = vec![first];
            while let Some(c) = stack.pop() {
                let mut shorter = None;
                for_each_neighbour(relator, &c, |candidate| {
                    if shorter.is_some() {
                        return;
                    }
                    let reduced = relator.cyclic_reduce(&candidate);
                    if reduced.len() < n {
                        shorter = Some(reduced);
                    } else {
                        let key = canonical_rotation(&reduced);
                        if !members.contains(&key) {
                            members.insert(key.clone());
                            stack.push(key);
                        }
                    }
                });
                if let Some(s) = shorter {
                    start = s;
                    continue 'restart;
                }
            }
            return Ok(ConjugacyClosure { members });
        }
    }

    pub fn normal_form(&self) -> Word {
        Word(self.members.first().cloned().unwrap_or_default())
    }

    pub fn members(&self) -> impl Iterator<Item = &Vec<Letter>> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Cyclic length shared by every member.
    pub fn word_length(&self) -> usize {
        self.members.first().map_or(0, |m| m.len())
    }

    pub fn contains(&self, canonical: &[Letter]) -> bool {
        self.members.contains(canonical)
    }

    /// False if some shortest representative is a proper power.
    pub fn is_primitive(&self) -> bool {
        self.members.iter().all(|m| primitive_period(m) == m.len())
    }
}

/// Calls `visit` with every cyclic word obtained from `c` by one
/// half-exchange or one ring flip. Outputs are conjugate to `c` and have the
/// same length before reduction.
fn for_each_neighbour(relator: &Relator, c: &[Letter], mut visit: impl FnMut(Vec<Letter>)) {
    let n = c.len();
    let half = relator.half();
    let at = |i: usize| c[i % n];

    if n >= half {
        for i in 0..n {
            for dir in Direction::BOTH {
                if (1..half).all(|k| relator.follows(dir, at(i + k - 1), at(i + k))) {
                    let run: Vec<Letter> = (0..half).map(|k| at(i + k)).collect();
                    let mut out = relator.complement_inverse(dir, &run);
                    out.extend((half..n).map(|k| at(i + k)));
                    visit(out);
                }
            }
        }
    }

    let block = half - 1;
    if block == 0 || n % block != 0 {
        return;
    }
    for i in 0..n {
        for dir in Direction::BOTH {
            if !(1..block).all(|k| relator.follows(dir, at(i + k - 1), at(i + k))) {
                continue;
            }
            let entry = relator.prev(dir, at(i));
            if let Some(out) = ring_flip(relator, c, i, entry) {
                visit(out);
            }
        }
    }
}

/// Pushes the single letter `entry` once around the cyclic word, starting at
/// position `i`: each block of `2g - 1` letters plus the incoming letter forms
/// a half relator, which is swapped for the opposite half. Succeeds when the
/// letter that emerges at the end is `entry` again, so that conjugation by it
/// closes up.
fn ring_flip(relator: &Relator, c: &[Letter], i: usize, entry: Letter) -> Option<Vec<Letter>> {
    let n = c.len();
    let block = relator.half() - 1;
    let mut out = Vec::with_capacity(n);
    let mut piece = entry;
    let mut run = Vec::with_capacity(block + 1);
    for b in 0..n / block {
        run.clear();
        run.push(piece);
        run.extend((0..block).map(|k| c[(i + b * block + k) % n]));
        let dir = Direction::BOTH
            .into_iter()
            .find(|&d| relator.is_run(d, &run))?;
        let swapped = relator.complement_inverse(dir, &run);
        out.extend_from_slice(&swapped[..block]);
        piece = swapped[block];
    }
    (piece == entry).then_some(out)
}

/// Canonical representative of the conjugacy class of `w`: the least
/// rotation among all shortest cyclic representatives.
pub fn cyclic_normal_form(relator: &Relator, w: &Word) -> Result<Word> {
    Ok(ConjugacyClosure::of(relator, w.letters())?.normal_form())
}

/// True unless the class of `w` is a proper power.
pub fn is_primitive(relator: &Relator, w: &Word) -> Result<bool> {
    Ok(ConjugacyClosure::of(relator, w.letters())?.is_primitive())
}
