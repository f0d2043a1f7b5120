use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::conjugacy::{cyclic_normal_form, is_primitive, ConjugacyClosure};
use super::matrix::{trace_to_length, Mat2};
use super::relator::Relator;
use super::word::{abelianize, HomologyVector, Word};
use crate::error::{Error, Result};

const DET_TOL: f64 = 1e-12;
const RELATOR_TOL: f64 = 1e-9;

/// Positive-trace SL(2,R) lifts of the standard generators
/// `a_1..a_g, b_1..b_g` of a closed surface group.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    genus: usize,
    label: String,
    matrices: Vec<Mat2>,
    inverses: Vec<Mat2>,
    relator: Relator,
    relator_sign: i8,
}

/// Outcome of checking a generator set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub label: String,
    pub genus: usize,
    pub max_det_residual: f64,
    pub min_trace: f64,
    pub relator_sign: i8,
    pub relator_residual: f64,
    pub min_generator_length: f64,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generator set '{}' (genus {}): PASS", self.label, self.genus)?;
        writeln!(f, "  max |det - 1|        {:.3e}", self.max_det_residual)?;
        writeln!(f, "  min generator trace  {:.12}", self.min_trace)?;
        writeln!(f, "  relator sign         {:+}", self.relator_sign)?;
        writeln!(f, "  relator residual     {:.3e}", self.relator_residual)?;
        write!(f, "  shortest generator   {:.12}", self.min_generator_length)
    }
}

#[derive(Deserialize)]
struct GeneratorConfig {
    label: String,
    genus: usize,
    matrices: Vec<[f64; 4]>,
}

impl GeneratorSet {
    /// Validates the matrices and normalizes them to exact unit determinant.
    /// `matrices` lists the lifts of `a_1..a_g` followed by `b_1..b_g`.
    pub fn new(label: impl Into<String>, genus: usize, matrices: Vec<Mat2>) -> Result<Self> {
        let label = label.into();
        let (report, set) = Self::checked(label, genus, matrices)?;
        debug_assert!(report.relator_residual <= RELATOR_TOL);
        Ok(set)
    }

    fn checked(label: String, genus: usize, matrices: Vec<Mat2>) -> Result<(ValidationReport, Self)> {
        if genus == 0 {
            return Err(Error::InvalidGenerators("genus must be positive".into()));
        }
        if matrices.len() != 2 * genus {
            return Err(Error::InvalidGenerators(format!(
                "expected {} matrices for genus {genus}, found {}",
                2 * genus,
                matrices.len()
            )));
        }
        let mut max_det_residual: f64 = 0.0;
        let mut min_trace = f64::INFINITY;
        let mut normalized = Vec::with_capacity(matrices.len());
        for (k, m) in matrices.iter().enumerate() {
            let det = m.det();
            let residual = (det - 1.0).abs();
            if !(residual <= DET_TOL) {
                return Err(Error::InvalidGenerators(format!(
                    "generator {k} has determinant {det}, not 1 within {DET_TOL:e}"
                )));
            }
            max_det_residual = max_det_residual.max(residual);
            let t = m.trace();
            if !(t > 2.0) {
                return Err(Error::InvalidGenerators(format!(
                    "generator {k} has trace {t}; a hyperbolic positive-trace lift needs trace > 2"
                )));
            }
            min_trace = min_trace.min(t);
            normalized.push(m.scale(1.0 / det.sqrt()));
        }
        let inverses = normalized.iter().map(Mat2::inverse_unimodular).collect();
        let mut set = GeneratorSet {
            genus,
            label: label.clone(),
            matrices: normalized,
            inverses,
            relator: Relator::new(genus),
            relator_sign: 1,
        };
        let product = set.word_to_matrix(set.relator.word());
        let plus = product.max_abs_diff(&Mat2::IDENTITY);
        let minus = product.max_abs_diff(&Mat2::IDENTITY.neg());
        let (relator_sign, relator_residual) = if plus <= minus { (1, plus) } else { (-1, minus) };
        if !(relator_residual <= RELATOR_TOL) {
            return Err(Error::InvalidGenerators(format!(
                "relator product differs from ±I by {relator_residual:e}"
            )));
        }
        set.relator_sign = relator_sign;
        let shortest_trace = min_trace.max(2.0 + f64::EPSILON);
        let report = ValidationReport {
            label,
            genus,
            max_det_residual,
            min_trace,
            relator_sign,
            relator_residual,
            min_generator_length: trace_to_length(shortest_trace)?,
        };
        Ok((report, set))
    }

    /// The genus-2 group of the regular hyperbolic octagon with opposite sides
    /// identified (the Bolza surface).
    pub fn bolza() -> Self {
        let matrices = bolza_standard_generators().to_vec();
        GeneratorSet::new("bolza", 2, matrices).expect("built-in Bolza generators are valid")
    }

    /// Resolves the built-in label `bolza`, otherwise reads a TOML file with
    /// keys `label`, `genus`, and `matrices` (row-major 4-element arrays).
    pub fn load(spec: &str) -> Result<Self> {
        if spec == "bolza" {
            return Ok(Self::bolza());
        }
        Self::from_file(Path::new(spec))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let config: GeneratorConfig =
            toml::from_str(text).map_err(|e| Error::InvalidGenerators(format!("config: {e}")))?;
        let matrices = config.matrices.iter().map(|&e| Mat2::from_row_major(e)).collect();
        GeneratorSet::new(config.label, config.genus, matrices)
    }

    pub fn to_toml(&self) -> String {
        let mut out = format!("label = \"{}\"\ngenus = {}\nmatrices = [\n", self.label, self.genus);
        for m in &self.matrices {
            let e = m.to_row_major();
            out.push_str(&format!("  [{:?}, {:?}, {:?}, {:?}],\n", e[0], e[1], e[2], e[3]));
        }
        out.push_str("]\n");
        out
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrices(&self) -> &[Mat2] {
        &self.matrices
    }

    pub fn relator(&self) -> &Relator {
        &self.relator
    }

    /// `+1` if the relator lifts to `+I`, `-1` if it lifts to `-I`.
    pub fn relator_sign(&self) -> i8 {
        self.relator_sign
    }

    pub fn letter_matrix(&self, letter: super::word::Letter) -> Mat2 {
        let k = letter.generator();
        if letter.is_inverse() {
            self.inverses[k]
        } else {
            self.matrices[k]
        }
    }

    /// Product of the generator lifts in word order.
    pub fn word_to_matrix(&self, w: &Word) -> Mat2 {
        w.letters()
            .iter()
            .fold(Mat2::IDENTITY, |acc, &l| acc * self.letter_matrix(l))
    }

    pub fn dehn_reduce(&self, w: &Word) -> Word {
        self.relator.dehn_reduce(w)
    }

    pub fn cyclic_normal_form(&self, w: &Word) -> Result<Word> {
        cyclic_normal_form(&self.relator, w)
    }

    pub fn conjugacy_closure(&self, w: &Word) -> Result<ConjugacyClosure> {
        ConjugacyClosure::of(&self.relator, w.letters())
    }

    pub fn is_primitive(&self, w: &Word) -> Result<bool> {
        is_primitive(&self.relator, w)
    }

    pub fn abelianize(&self, w: &Word) -> HomologyVector {
        abelianize(w, self.genus)
    }

    /// Sign of the trace of the literal lift product.
    pub fn sigma_sign(&self, w: &Word) -> Result<i8> {
        let t = self.word_to_matrix(w).trace();
        if t.abs() <= 2.0 {
            return Err(Error::NotHyperbolic(t.abs()));
        }
        Ok(if t > 0.0 { 1 } else { -1 })
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        validate_generators(&self.label, self.genus, &self.matrices)
    }
}

/// Checks determinant, trace, and relator conditions on raw matrices.
pub fn validate_generators(label: &str, genus: usize, matrices: &[Mat2]) -> Result<ValidationReport> {
    GeneratorSet::checked(label.to_string(), genus, matrices.to_vec()).map(|(report, _)| report)
}

fn su11_to_sl2r(m: [[Complex64; 2]; 2]) -> Mat2 {
    // Conjugate by the Cayley map w -> i(1+w)/(1-w) from the disk to the upper half-plane.
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let c = [[i, i], [-one, one]];
    let c_inv = [[one / (2.0 * i), -i / (2.0 * i)], [one / (2.0 * i), i / (2.0 * i)]];
    let mul = |x: [[Complex64; 2]; 2], y: [[Complex64; 2]; 2]| {
        let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (row, out) in r.iter_mut().enumerate() {
            for (col, v) in out.iter_mut().enumerate() {
                *v = x[row][0] * y[0][col] + x[row][1] * y[1][col];
            }
        }
        r
    };
    let r = mul(mul(c, m), c_inv);
    Mat2::new(r[0][0].re, r[0][1].re, r[1][0].re, r[1][1].re)
}

/// The four side pairings `g_0..g_3` of the regular octagon centred at `i`;
/// `g_k` translates along the geodesic through `i` at angle `kπ/4` (in the
/// disk picture) by the systole `2·arccosh(1+√2)`.
pub fn bolza_side_pairings() -> [Mat2; 4] {
    let ch = 1.0 + std::f64::consts::SQRT_2;
    let sh = (ch * ch - 1.0).sqrt();
    std::array::from_fn(|k| {
        let phase = Complex64::from_polar(1.0, k as f64 * std::f64::consts::PI / 8.0);
        let conj = phase.conj();
        let g = [
            [Complex64::new(ch, 0.0), phase * phase * sh],
            [conj * conj * sh, Complex64::new(ch, 0.0)],
        ];
        su11_to_sl2r(g)
    })
}

/// Words in the standard generators representing the side pairings, up to sign.
pub fn bolza_side_pairing_words() -> [Word; 4] {
    [
        Word::from_indices(&[1]),
        Word::from_indices(&[-3, 2, 4, -2]),
        Word::from_indices(&[-3, 2, 4]),
        Word::from_indices(&[-3, 2]),
    ]
}

fn bolza_standard_generators() -> [Mat2; 4] {
    let [g0, g1, g2, g3] = bolza_side_pairings();
    let x = g0;
    let y = g1.inverse_unimodular();
    let z = g2;
    let w = g3.inverse_unimodular();
    let a1 = x;
    let b1 = y * z * w;
    let a2 = y * z;
    let b2 = w * z;
    let positive = |m: Mat2| if m.trace() < 0.0 { m.neg() } else { m };
    [positive(a1), positive(a2), positive(b1), positive(b2)]
}
