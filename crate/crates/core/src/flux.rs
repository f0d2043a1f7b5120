//! Flux measures on the torus `T^{2g}`, flux characters, and the arithmetic
//! kernels that make θ-averages exact.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::HomologyVector;

/// The denominator `q` of the flux measure; `Infinite` is Lebesgue measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FluxIndex {
    Finite(u32),
    Infinite,
}

impl FluxIndex {
    pub fn finite(self) -> Option<u32> {
        match self {
            FluxIndex::Finite(q) => Some(q),
            FluxIndex::Infinite => None,
        }
    }

    pub fn is_even_or_infinite(self) -> bool {
        match self {
            FluxIndex::Finite(q) => q % 2 == 0,
            FluxIndex::Infinite => true,
        }
    }
}

impl fmt::Display for FluxIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FluxIndex::Finite(q) => write!(f, "{q}"),
            FluxIndex::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for FluxIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(FluxIndex::Infinite),
            other => match other.parse::<u32>() {
                Ok(q) if q >= 1 => Ok(FluxIndex::Finite(q)),
                _ => Err(Error::InvalidFluxSpec(format!("q must be a positive integer or 'inf', got '{s}'"))),
            },
        }
    }
}

/// A flux measure `ν_q` on the torus of a genus-`g` surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FluxSpec {
    pub q: FluxIndex,
    pub genus: usize,
}

impl FluxSpec {
    pub fn new(q: FluxIndex, genus: usize) -> Result<Self> {
        if q == FluxIndex::Finite(0) {
            return Err(Error::InvalidFluxSpec("q must be at least 1".into()));
        }
        if genus == 0 {
            return Err(Error::InvalidFluxSpec("genus must be positive".into()));
        }
        Ok(FluxSpec { q, genus })
    }

    pub fn dimension(&self) -> usize {
        2 * self.genus
    }

    /// Number of atoms `q^{2g}` for finite `q`, if it fits in a `u64`.
    pub fn atom_count(&self) -> Option<u64> {
        let q = self.q.finite()? as u64;
        q.checked_pow(self.dimension() as u32)
    }
}

/// A point `θ` of the torus. Points drawn from a finite-`q` measure keep
/// their exact numerators so that characters can be evaluated exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluxVector {
    theta: Vec<f64>,
    exact: Option<(u32, Vec<u32>)>,
}

impl FluxVector {
    pub fn zero(genus: usize) -> Self {
        FluxVector::from_fractions(1, vec![0; 2 * genus])
    }

    /// `θ_k = numerators[k] / q`, with numerators reduced mod `q`.
    pub fn from_fractions(q: u32, numerators: Vec<u32>) -> Self {
        assert!(q >= 1, "denominator must be positive");
        let numerators: Vec<u32> = numerators.into_iter().map(|m| m % q).collect();
        let theta = numerators.iter().map(|&m| m as f64 / q as f64).collect();
        FluxVector { theta, exact: Some((q, numerators)) }
    }

    /// Entries are reduced into `[0, 1)`.
    pub fn from_reals(theta: Vec<f64>) -> Self {
        let theta = theta.into_iter().map(|t| t - t.floor()).map(|t| if t >= 1.0 { 0.0 } else { t }).collect();
        FluxVector { theta, exact: None }
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn denominator(&self) -> Option<u32> {
        self.exact.as_ref().map(|(q, _)| *q)
    }

    pub fn numerators(&self) -> Option<&[u32]> {
        self.exact.as_ref().map(|(_, m)| m.as_slice())
    }

    /// Exact fractions such as `(1/2, 0, 3/4, 0)` when available.
    pub fn display(&self) -> String {
        let parts: Vec<String> = match &self.exact {
            Some((q, nums)) => nums
                .iter()
                .map(|&m| if m == 0 { "0".into() } else { format!("{m}/{q}") })
                .collect(),
            None => self.theta.iter().map(|t| format!("{t}")).collect(),
        };
        format!("({})", parts.join(", "))
    }
}

/// Counter-based generator for stream `stream` of `seed`; distinct streams
/// are independent, so parallel workers can own disjoint streams.
pub fn flux_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws `θ ~ ν_q`.
pub fn sample_flux<R: Rng + ?Sized>(spec: &FluxSpec, rng: &mut R) -> FluxVector {
    match spec.q {
        FluxIndex::Finite(q) => {
            let nums = (0..spec.dimension()).map(|_| rng.random_range(0..q)).collect();
            FluxVector::from_fractions(q, nums)
        }
        FluxIndex::Infinite => {
            FluxVector { theta: (0..spec.dimension()).map(|_| rng.random::<f64>()).collect(), exact: None }
        }
    }
}

/// `e(x) = exp(2πi x)` for `x = r/q` given as an exact residue.
pub(crate) fn root_of_unity(r: u64, q: u64) -> Complex64 {
    let r = r % q;
    if r == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * r == q {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * r == q {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * r == 3 * q {
        return Complex64::new(0.0, -1.0);
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * r as f64 / q as f64)
}

/// `e(x)` for real `x`, reduced mod 1 first.
pub(crate) fn unit_phase(x: f64) -> Complex64 {
    let frac = x - x.round();
    Complex64::from_polar(1.0, std::f64::consts::TAU * frac)
}

/// `χ_θ(γ)^n = e(n θ·h)`.
pub fn char_eval(theta: &FluxVector, h: &HomologyVector, n: i64) -> Complex64 {
    assert_eq!(theta.theta.len(), h.entries().len(), "flux and homology dimensions differ");
    match &theta.exact {
        Some((q, nums)) => {
            let q = *q as i128;
            let dot: i128 = nums.iter().zip(h.entries()).map(|(&m, &x)| m as i128 * x as i128).sum();
            let r = (dot * n as i128).rem_euclid(q);
            root_of_unity(r as u64, q as u64)
        }
        None => {
            let dot: f64 = theta.theta.iter().zip(h.entries()).map(|(t, &x)| t * x as f64).sum();
            unit_phase(dot * n as f64)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `q / gcd(gcd|h_k|, q)`, with `gcd(0, q) = q`.
pub fn q_star(h: &HomologyVector, q: u32) -> u32 {
    assert!(q >= 1, "q must be positive");
    let content = h.entries().iter().fold(0u64, |g, &x| gcd(g, x.unsigned_abs()));
    (q as u64 / gcd(content, q as u64)) as u32
}

/// The residues `n` with `n·h ≡ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kernel {
    Residues(Vec<u32>),
    /// Every integer (the homology class is zero and `q` is infinite).
    All,
}

pub fn ker_q(h: &HomologyVector, q: FluxIndex) -> Kernel {
    match q {
        FluxIndex::Finite(q) => {
            let step = q_star(h, q);
            Kernel::Residues((0..q).step_by(step as usize).collect())
        }
        FluxIndex::Infinite if h.is_zero() => Kernel::All,
        FluxIndex::Infinite => Kernel::Residues(vec![0]),
    }
}

/// `n1·h1 = n2·h2`, entrywise mod `q` for finite `q` and exactly otherwise.
pub fn pairing_ok(n1: i64, h1: &HomologyVector, n2: i64, h2: &HomologyVector, q: FluxIndex) -> bool {
    let pairs = h1.entries().iter().zip(h2.entries());
    match q {
        FluxIndex::Finite(q) => {
            let q = q as i128;
            pairs.into_iter().all(|(&a, &b)| (n1 as i128 * a as i128 - n2 as i128 * b as i128).rem_euclid(q) == 0)
        }
        FluxIndex::Infinite => pairs.into_iter().all(|(&a, &b)| n1 as i128 * a as i128 == n2 as i128 * b as i128),
    }
}

/// True when every entry is `0` or `1/2` (within `1e-12`, modulo 1).
pub fn is_real_character(theta: &FluxVector) -> bool {
    if let Some((q, nums)) = &theta.exact {
        return nums.iter().all(|&m| m == 0 || 2 * m == *q);
    }
    theta.theta.iter().all(|&t| {
        let d0 = (t - t.round()).abs();
        let d_half = (t - 0.5 - (t - 0.5).round()).abs();
        d0 <= 1e-12 || d_half <= 1e-12
    })
}
