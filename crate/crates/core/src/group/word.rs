use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A generator or inverse generator of a genus-`g` surface group.
///
/// Stored as a signed, 1-based index: `a_i` is `i`, `b_i` is `g + i`, and a
/// negative value denotes the formal inverse. Letters compare in the order
/// `a_1 < a_1^-1 < a_2 < ... < b_g < b_g^-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Letter(i16);

impl Letter {
    /// Builds a letter from its signed index. Panics on zero.
    pub fn new(index: i16) -> Self {
        assert!(index != 0, "generator index must be nonzero");
        Letter(index)
    }

    pub fn a(i: usize) -> Self {
        Letter(i as i16)
    }

    pub fn b(genus: usize, i: usize) -> Self {
        Letter((genus + i) as i16)
    }

    pub fn index(self) -> i16 {
        self.0
    }

    /// Zero-based generator number, ignoring the sign.
    pub fn generator(self) -> usize {
        self.0.unsigned_abs() as usize - 1
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Position of the letter in the fixed total order, in `0..4g`.
    pub fn rank(self) -> usize {
        self.generator() * 2 + usize::from(self.is_inverse())
    }

    pub fn from_rank(rank: usize) -> Self {
        let index = (rank / 2 + 1) as i16;
        if rank % 2 == 1 {
            Letter(-index)
        } else {
            Letter(index)
        }
    }

    /// Human-readable name such as `a1`, `b2^-1`.
    pub fn name(self, genus: usize) -> String {
        let k = self.generator();
        let (family, i) = if k < genus { ('a', k + 1) } else { ('b', k + 1 - genus) };
        if self.is_inverse() {
            format!("{family}{i}^-1")
        } else {
            format!("{family}{i}")
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite sequence of letters. Most operations expect it to be freely reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from signed generator indices.
    pub fn from_indices(indices: &[i16]) -> Self {
        Word(indices.iter().map(|&i| Letter::new(i)).collect())
    }

    pub fn indices(&self) -> Vec<i16> {
        self.0.iter().map(|l| l.index()).collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Literal `n`-fold repetition; no reduction is performed.
    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn rotate(&self, shift: usize) -> Word {
        let mut letters = self.0.clone();
        if !letters.is_empty() {
            let k = shift % letters.len();
            letters.rotate_left(k);
        }
        Word(letters)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&f), Some(&l)) => self.0.len() == 1 || f != l.inverse(),
                _ => true,
            }
    }

    /// Comma-separated signed indices, as used by the spectrum cache.
    pub fn to_index_string(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|l| l.index().to_string()).collect();
        parts.join(",")
    }

    pub fn parse_index_string(s: &str) -> Option<Word> {
        if s.is_empty() {
            return Some(Word::empty());
        }
        let mut letters = Vec::new();
        for part in s.split(',') {
            let i: i16 = part.trim().parse().ok()?;
            if i == 0 {
                return None;
            }
            letters.push(Letter(i));
        }
        Some(Word(letters))
    }

    /// Space-separated generator names, e.g. `a1 b1 a1^-1 b1^-1`.
    pub fn display(&self, genus: usize) -> String {
        let parts: Vec<String> = self.0.iter().map(|l| l.name(genus)).collect();
        parts.join(" ")
    }

    /// Parses generator names such as `a1 b2^-1 A1` (an uppercase family
    /// letter also denotes an inverse).
    pub fn parse_names(s: &str, genus: usize) -> Option<Word> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            let (body, inverted) = match token.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (token, false),
            };
            let mut chars = body.chars();
            let family = chars.next()?;
            let i: usize = chars.as_str().parse().ok()?;
            if i == 0 || i > genus {
                return None;
            }
            let upper = family.is_ascii_uppercase();
            let letter = match family.to_ascii_lowercase() {
                'a' => Letter::a(i),
                'b' => Letter::b(genus, i),
                _ => return None,
            };
            letters.push(if inverted ^ upper { letter.inverse() } else { letter });
        }
        Some(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_index_string())
    }
}

impl FromStr for Word {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']');
        Word::parse_index_string(trimmed).ok_or_else(|| format!("malformed word: {s}"))
    }
}

/// Cancels adjacent letter/inverse pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    Word(free_reduce_letters(&w.0))
}

pub(crate) fn free_reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by cancelling inverse pairs across the ends.
pub(crate) fn cyclic_free_reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let reduced = free_reduce_letters(letters);
    let mut lo = 0;
    let mut hi = reduced.len();
    while hi - lo >= 2 && reduced[lo] == reduced[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    reduced[lo..hi].to_vec()
}

/// Integer vector of length `2g` in the basis `(a_1..a_g, b_1..b_g)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomologyVector(pub Vec<i64>);

impl HomologyVector {
    pub fn zero(genus: usize) -> Self {
        HomologyVector(vec![0; 2 * genus])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn genus(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, n: i64) -> HomologyVector {
        HomologyVector(self.0.iter().map(|&x| x * n).collect())
    }

    pub fn negated(&self) -> HomologyVector {
        self.scaled(-1)
    }
}

impl Add for &HomologyVector {
    type Output = HomologyVector;

    fn add(self, rhs: &HomologyVector) -> HomologyVector {
        assert_eq!(self.0.len(), rhs.0.len(), "homology vectors of different genus");
        HomologyVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// Signed generator counts of `w`.
pub fn abelianize(w: &Word, genus: usize) -> HomologyVector {
    let mut h = vec![0i64; 2 * genus];
    for l in &w.0 {
        h[l.generator()] += if l.is_inverse() { -1 } else { 1 };
    }
    HomologyVector(h)
}

/// Index of the lexicographically least rotation (Booth's algorithm).
pub(crate) fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| s[i % n].rank();
    let mut failure = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = failure[j - k - 1];
        while i != usize::MAX && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = failure[i];
        }
        if i == usize::MAX && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            failure[j - k] = usize::MAX;
        } else {
            failure[j - k] = if i == usize::MAX { 0 } else { i + 1 };
        }
    }
    k % n
}

pub(crate) fn canonical_rotation(s: &[Letter]) -> Vec<Letter> {
    let k = least_rotation(s);
    let mut v = Vec::with_capacity(s.len());
    v.extend_from_slice(&s[k..]);
    v.extend_from_slice(&s[..k]);
    v
}

/// Smallest period `p` dividing `len` such that `s` is `len / p` copies of its prefix.
pub(crate) fn primitive_period(s: &[Letter]) -> usize {
    let n = s.len();
    (1..=n)
        .filter(|p| n % p == 0)
        .find(|&p| (p..n).all(|i| s[i] == s[i - p]))
        .unwrap_or(n)
}
