use super::word::{cyclic_free_reduce_letters, free_reduce_letters, Letter, Word};

/// Reading direction along the relator: forwards along `r`, or along `r^-1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Forward, Direction::Backward];

    fn slot(self) -> usize {
        match self {
            Direction::Forward => 0,
            Direction::Backward => 1,
        }
    }
}

/// The single defining relator `[a_1,b_1]...[a_g,b_g]` together with
/// successor tables that make run detection a table lookup.
///
/// Each letter occurs exactly once in `r` and once in `r^-1`, so a subword of
/// a cyclic shift of `r` (or `r^-1`) is exactly a stretch of letters in which
/// each one is the tabulated successor of the previous one.
#[derive(Clone, Debug)]
pub struct Relator {
    genus: usize,
    word: Word,
    next: [Vec<Letter>; 2],
    prev: [Vec<Letter>; 2],
}

impl Relator {
    pub fn new(genus: usize) -> Self {
        assert!(genus >= 1, "genus must be positive");
        let mut letters = Vec::with_capacity(4 * genus);
        for i in 1..=genus {
            let a = Letter::a(i);
            let b = Letter::b(genus, i);
            letters.extend_from_slice(&[a, b, a.inverse(), b.inverse()]);
        }
        let word = Word(letters);
        let inverse = word.inverse();
        let size = 4 * genus;
        let mut next = [vec![Letter::new(1); size], vec![Letter::new(1); size]];
        let mut prev = [vec![Letter::new(1); size], vec![Letter::new(1); size]];
        for (slot, cycle) in [word.letters(), inverse.letters()].into_iter().enumerate() {
            for k in 0..size {
                let here = cycle[k];
                let after = cycle[(k + 1) % size];
                next[slot][here.rank()] = after;
                prev[slot][after.rank()] = here;
            }
        }
        Relator { genus, word, next, prev }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Length of the relator, `4g`.
    pub fn len(&self) -> usize {
        4 * self.genus
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Half the relator length, `2g`.
    pub fn half(&self) -> usize {
        2 * self.genus
    }

    pub fn next(&self, dir: Direction, l: Letter) -> Letter {
        self.next[dir.slot()][l.rank()]
    }

    pub fn prev(&self, dir: Direction, l: Letter) -> Letter {
        self.prev[dir.slot()][l.rank()]
    }

    pub fn follows(&self, dir: Direction, before: Letter, after: Letter) -> bool {
        self.next(dir, before) == after
    }

    /// True when `letters` is a subword of a cyclic shift of the relator read in `dir`.
    pub fn is_run(&self, dir: Direction, letters: &[Letter]) -> bool {
        letters.len() <= self.len() && letters.windows(2).all(|p| self.follows(dir, p[0], p[1]))
    }

    /// Given a run `u` in direction `dir`, returns the word `t^-1` where `u t`
    /// is a full cyclic shift of the relator, so that `u = t^-1` in the group.
    pub fn complement_inverse(&self, dir: Direction, run: &[Letter]) -> Vec<Letter> {
        debug_assert!(!run.is_empty() && self.is_run(dir, run));
        let m = run.len();
        let mut tail = Vec::with_capacity(self.len() - m);
        let mut cur = run[m - 1];
        for _ in m..self.len() {
            cur = self.next(dir, cur);
            tail.push(cur);
        }
        tail.iter().rev().map(|l| l.inverse()).collect()
    }

    /// Greedy Dehn algorithm on a linear word: repeatedly replaces any run
    /// longer than half the relator by the inverse of its complement.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        let mut cur = free_reduce_letters(w.letters());
        while let Some(next) = self.linear_dehn_step(&cur) {
            cur = free_reduce_letters(&next);
        }
        Word(cur)
    }

    fn linear_dehn_step(&self, w: &[Letter]) -> Option<Vec<Letter>> {
        for dir in Direction::BOTH {
            if let Some((start, len)) = self.find_long_run(dir, w) {
                return Some(self.replace_run(dir, w, start, len));
            }
        }
        None
    }

    /// First maximal run in `w` (non-cyclic) with more than `2g` letters.
    fn find_long_run(&self, dir: Direction, w: &[Letter]) -> Option<(usize, usize)> {
        let n = w.len();
        let mut start = 0;
        for j in 1..=n {
            if j == n || !self.follows(dir, w[j - 1], w[j]) {
                if j - start > self.half() {
                    return Some((start, j - start));
                }
                start = j;
            }
        }
        None
    }

    fn replace_run(&self, dir: Direction, w: &[Letter], start: usize, run_len: usize) -> Vec<Letter> {
        let take = run_len.min(self.len());
        let replacement = self.complement_inverse(dir, &w[start..start + take]);
        let mut out = Vec::with_capacity(w.len());
        out.extend_from_slice(&w[..start]);
        out.extend_from_slice(&replacement);
        out.extend_from_slice(&w[start + take..]);
        out
    }

    /// Cyclic free reduction plus cyclic Dehn reduction. The result is a
    /// cyclic word conjugate to the input with no cyclic run longer than `2g`.
    pub fn cyclic_reduce(&self, w: &[Letter]) -> Vec<Letter> {
        let mut cur = cyclic_free_reduce_letters(w);
        'outer: loop {
            if cur.is_empty() {
                return cur;
            }
            for dir in Direction::BOTH {
                if let Some(next) = self.cyclic_dehn_step(dir, &cur) {
                    cur = cyclic_free_reduce_letters(&next);
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    fn cyclic_dehn_step(&self, dir: Direction, c: &[Letter]) -> Option<Vec<Letter>> {
        let n = c.len();
        let start = (0..n).find(|&i| !self.follows(dir, c[(i + n - 1) % n], c[i]));
        let Some(s) = start else {
            // The whole cyclic word is a power of a relator rotation.
            return Some(Vec::new());
        };
        let mut rotated = Vec::with_capacity(n);
        rotated.extend_from_slice(&c[s..]);
        rotated.extend_from_slice(&c[..s]);
        self.find_long_run(dir, &rotated)
            .map(|(p, len)| self.replace_run(dir, &rotated, p, len))
    }

    /// True when no cyclic run in either direction exceeds `2g` letters.
    pub fn is_cyclically_dehn_reduced(&self, c: &[Letter]) -> bool {
        let reduced = cyclic_free_reduce_letters(c);
        reduced.len() == c.len()
            && !c.is_empty()
            && Direction::BOTH.iter().all(|&d| self.cyclic_dehn_step(d, c).is_none())
    }
}
