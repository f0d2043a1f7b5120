//! Independent oracles shared by the integration tests. The root module
//! enumerates closed geodesics of the Bolza surface geometrically.
#![allow(dead_code)]

pub mod quadrature;

use std::collections::{HashMap, VecDeque};

use hypspec::group::{bolza_side_pairing_words, bolza_side_pairings, free_reduce, trace_to_length, GeneratorSet, Mat2, Word};

type Key = [i64; 4];

fn projective_key(m: &Mat2) -> Key {
    let flip = m.a < -1e-9 || (m.a.abs() <= 1e-9 && m.b < 0.0);
    let s = if flip { -1.0 } else { 1.0 };
    let q = |x: f64| (x * s * 1e6).round() as i64;
    [q(m.a), q(m.b), q(m.c), q(m.d)]
}

/// Circumradius of the regular octagon with interior angles π/4.
pub fn octagon_circumradius() -> f64 {
    let ch = 1.0 + 2f64.sqrt();
    (ch * ch).acosh()
}

struct Tile {
    matrix: Mat2,
    parent: u32,
    step: u8,
}

/// Group elements reached by crossing octagon sides, within a displacement radius.
pub struct TileBall {
    tiles: Vec<Tile>,
    index: HashMap<Key, usize>,
    steps: [Mat2; 8],
    step_words: Vec<Word>,
}

impl TileBall {
    pub fn new(radius: f64) -> Self {
        let pairings = bolza_side_pairings();
        let words = bolza_side_pairing_words();
        let mut steps = [Mat2::IDENTITY; 8];
        let mut step_words = Vec::new();
        for k in 0..4 {
            steps[2 * k] = pairings[k];
            steps[2 * k + 1] = pairings[k].inverse_unimodular();
        }
        for w in words.iter() {
            step_words.push(w.clone());
            step_words.push(w.inverse());
        }
        let cosh_radius = radius.cosh();
        let mut tiles = vec![Tile { matrix: Mat2::IDENTITY, parent: u32::MAX, step: 0 }];
        let mut index = HashMap::new();
        index.insert(projective_key(&Mat2::IDENTITY), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(t) = queue.pop_front() {
            let base = tiles[t].matrix;
            for (s, step) in steps.iter().enumerate() {
                let m = base * *step;
                let cosh_d = 0.5 * (m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d);
                if cosh_d > cosh_radius {
                    continue;
                }
                let key = projective_key(&m);
                if index.contains_key(&key) {
                    continue;
                }
                index.insert(key, tiles.len());
                tiles.push(Tile { matrix: m, parent: t as u32, step: s as u8 });
                queue.push_back(tiles.len() - 1);
            }
        }
        TileBall { tiles, index, steps, step_words }
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn matrix(&self, t: usize) -> Mat2 {
        self.tiles[t].matrix
    }

    pub fn find(&self, m: &Mat2) -> Option<usize> {
        self.index.get(&projective_key(m)).copied()
    }

    /// The element as a freely reduced word in the standard generators.
    pub fn word(&self, t: usize) -> Word {
        let mut path = Vec::new();
        let mut cur = t;
        while self.tiles[cur].parent != u32::MAX {
            path.push(self.tiles[cur].step as usize);
            cur = self.tiles[cur].parent as usize;
        }
        path.reverse();
        let mut w = Word::empty();
        for s in path {
            w = w.concat(&self.step_words[s]);
        }
        free_reduce(&w)
    }
}

/// Whether the axis of hyperbolic `m` meets the closed fundamental octagon.
fn axis_meets_octagon(m: &Mat2) -> bool {
    use num_complex::Complex64;
    let to_disk = |z: Option<f64>| -> Complex64 {
        match z {
            None => Complex64::new(1.0, 0.0),
            Some(x) => {
                let z = Complex64::new(x, 0.0);
                (z - Complex64::i()) / (z + Complex64::i())
            }
        }
    };
    let (p, q) = if m.c.abs() < 1e-14 {
        (None, Some(m.b / (m.d - m.a)))
    } else {
        let disc = ((m.d - m.a).powi(2) + 4.0 * m.b * m.c).sqrt();
        (Some((m.a - m.d + disc) / (2.0 * m.c)), Some((m.a - m.d - disc) / (2.0 * m.c)))
    };
    let (p, q) = (to_disk(p), to_disk(q));
    let r = octagon_circumradius().tanh();
    let mut pos = false;
    let mut neg = false;
    for k in 0..8 {
        let angle = std::f64::consts::PI / 8.0 + k as f64 * std::f64::consts::PI / 4.0;
        let v = Complex64::from_polar(r, angle);
        let cross = (q - p).re * (v - p).im - (q - p).im * (v - p).re;
        if cross > 1e-12 {
            pos = true;
        } else if cross < -1e-12 {
            neg = true;
        } else {
            return true;
        }
    }
    pos && neg
}

fn find_root(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = x;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

/// One primitive oriented class found geometrically: its length and the
/// words of all elements in the class whose axes cross the octagon.
pub struct OracleClass {
    pub length: f64,
    pub member_words: Vec<Word>,
}

/// All primitive oriented classes of the Bolza group with length at most `l_max`.
pub fn geometric_classes(l_max: f64) -> Vec<OracleClass> {
    let rv = octagon_circumradius();
    let ball = TileBall::new(l_max + 3.0 * rv + 1e-6);
    let axis_cap = l_max + 2.0 * rv + 1e-6;
    let max_trace = 2.0 * (l_max / 2.0).cosh() * (1.0 + 1e-12);

    let mut members: Vec<usize> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for t in 1..ball.len() {
        let m = ball.matrix(t);
        if m.displacement_of_i() > axis_cap {
            continue;
        }
        let tr = m.trace().abs();
        if tr > 2.0 && tr <= max_trace && axis_meets_octagon(&m) {
            slot.insert(t, members.len());
            members.push(t);
        }
    }

    let neighbours: Vec<Mat2> = (1..ball.len())
        .map(|t| ball.matrix(t))
        .filter(|m| m.displacement_of_i() <= 2.0 * rv + 1e-6)
        .collect();
    let mut parent: Vec<usize> = (0..members.len()).collect();
    for (i, &t) in members.iter().enumerate() {
        let gamma = ball.matrix(t);
        for delta in &neighbours {
            let conj = delta.inverse_unimodular() * gamma * *delta;
            if let Some(u) = ball.find(&conj) {
                if let Some(&j) = slot.get(&u) {
                    let (a, b) = (find_root(&mut parent, i), find_root(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
    }

    let mut imprimitive = vec![false; members.len()];
    for &t in &members {
        let m = ball.matrix(t);
        let l = trace_to_length(m.trace()).unwrap();
        let mut k = 2;
        while k as f64 * l <= l_max + 1e-9 {
            if let Some(u) = ball.find(&m.pow(k)) {
                if let Some(&j) = slot.get(&u) {
                    let r = find_root(&mut parent, j);
                    imprimitive[r] = true;
                }
            }
            k += 1;
        }
    }

    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..members.len() {
        let r = find_root(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out = Vec::new();
    for (root, idx) in groups {
        if imprimitive[root] {
            continue;
        }
        let length = trace_to_length(ball.matrix(members[idx[0]]).trace()).unwrap();
        let member_words = idx.iter().map(|&i| ball.word(members[i])).collect();
        out.push(OracleClass { length, member_words });
    }
    out.sort_by(|a, b| a.length.total_cmp(&b.length));
    out
}

/// The generator set used throughout the tests.
pub fn bolza() -> GeneratorSet {
    GeneratorSet::bolza()
}
