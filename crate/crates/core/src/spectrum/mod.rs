//! Primitive oriented closed geodesics up to a length cutoff.

mod cache;
mod enumerate;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{abelianize, trace_to_length, GeneratorSet, HomologyVector, Relator, Word};

pub use cache::{read_spectrum, spectrum_from_str, spectrum_to_string, write_spectrum, FORMAT_VERSION};
pub use enumerate::{enumerate_classes, enumerate_classes_with, max_prefix_excess, EnumerationOptions, MAX_CUTOFF};

const LENGTH_TOL: f64 = 1e-9;

/// One primitive oriented closed geodesic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicClass {
    pub normal_form: Word,
    pub length: f64,
    pub homology: HomologyVector,
    pub sigma: i8,
    pub trace: f64,
}

impl GeodesicClass {
    /// Decorates a normal-form word with its matrix data.
    pub fn from_normal_form(gens: &GeneratorSet, normal_form: Word) -> Result<Self> {
        let trace = gens.word_to_matrix(&normal_form).trace();
        let length = trace_to_length(trace)?;
        Ok(GeodesicClass {
            homology: gens.abelianize(&normal_form),
            sigma: if trace > 0.0 { 1 } else { -1 },
            normal_form,
            length,
            trace,
        })
    }
}

/// All primitive oriented classes with length at most `l_max`, sorted by
/// `(length, normal_form)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthSpectrum {
    pub gens_label: String,
    pub l_max: f64,
    pub classes: Vec<GeodesicClass>,
    pub format_version: u32,
}

/// A primitive class together with a positive power.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerTerm {
    pub class_index: usize,
    pub power: u32,
    pub total_length: f64,
}

impl LengthSpectrum {
    pub fn new(gens_label: impl Into<String>, l_max: f64, mut classes: Vec<GeodesicClass>) -> Self {
        sort_classes(&mut classes);
        LengthSpectrum { gens_label: gens_label.into(), l_max, classes, format_version: FORMAT_VERSION }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn genus(&self) -> Option<usize> {
        self.classes.first().map(|c| c.homology.genus())
    }

    pub fn systole(&self) -> Option<f64> {
        self.classes.first().map(|c| c.length)
    }

    /// The classes of length at most `cutoff`, as a spectrum complete to `cutoff`.
    pub fn truncated(&self, cutoff: f64) -> Result<LengthSpectrum> {
        self.require(cutoff)?;
        let classes = self.classes.iter().filter(|c| c.length <= cutoff).cloned().collect();
        Ok(LengthSpectrum {
            gens_label: self.gens_label.clone(),
            l_max: cutoff,
            classes,
            format_version: self.format_version,
        })
    }

    /// Fails with `IncompleteSpectrum` unless the spectrum covers `cutoff`.
    pub fn require(&self, cutoff: f64) -> Result<()> {
        if cutoff > self.l_max {
            return Err(Error::IncompleteSpectrum { available: self.l_max, required: cutoff });
        }
        Ok(())
    }

    /// Every (class, power) pair whose total length is at most `nl_max`.
    pub fn power_extend(&self, nl_max: f64) -> Result<Vec<PowerTerm>> {
        self.require(nl_max)?;
        let mut out = Vec::new();
        for (class_index, c) in self.classes.iter().enumerate() {
            let mut power = 1u32;
            while power as f64 * c.length <= nl_max {
                out.push(PowerTerm { class_index, power, total_length: power as f64 * c.length });
                power += 1;
            }
        }
        Ok(out)
    }

    /// Checks every structural invariant; expensive because each normal form
    /// is recomputed.
    pub fn validate(&self) -> Result<()> {
        let violation = |msg: String| Err(Error::InvariantViolation(msg));
        let Some(genus) = self.genus() else { return Ok(()) };
        let relator = Relator::new(genus);
        let mut index: HashMap<&Word, usize> = HashMap::with_capacity(self.classes.len());
        for (k, c) in self.classes.iter().enumerate() {
            let name = c.normal_form.to_string();
            if c.homology.entries().len() != 2 * genus {
                return violation(format!("class {name}: homology has wrong dimension"));
            }
            if c.normal_form.letters().iter().any(|l| l.generator() >= 2 * genus) {
                return violation(format!("class {name}: letter outside the alphabet"));
            }
            if !(c.length > 0.0 && c.length <= self.l_max + LENGTH_TOL) {
                return violation(format!("class {name}: length {} outside (0, {}]", c.length, self.l_max));
            }
            match trace_to_length(c.trace) {
                Ok(l) if (l - c.length).abs() <= LENGTH_TOL => {}
                _ => return violation(format!("class {name}: length {} does not match trace {}", c.length, c.trace)),
            }
            let expected_sigma = if c.trace > 0.0 { 1 } else { -1 };
            if c.sigma != expected_sigma {
                return violation(format!("class {name}: sigma {} disagrees with trace sign", c.sigma));
            }
            if abelianize(&c.normal_form, genus) != c.homology {
                return violation(format!("class {name}: homology does not match the word"));
            }
            if index.insert(&c.normal_form, k).is_some() {
                return violation(format!("class {name}: duplicate normal form"));
            }
            if k > 0 && compare_classes(&self.classes[k - 1], c) != std::cmp::Ordering::Less {
                return violation(format!("class {name}: records are not sorted"));
            }
        }
        use rayon::prelude::*;
        self.classes.par_iter().try_for_each(|c| {
            let closure = crate::group::ConjugacyClosure::of(&relator, c.normal_form.letters())
                .map_err(|_| Error::InvariantViolation(format!("class {}: trivial word", c.normal_form)))?;
            if closure.normal_form() != c.normal_form {
                return Err(Error::InvariantViolation(format!("class {}: word is not in normal form", c.normal_form)));
            }
            if !closure.is_primitive() {
                return Err(Error::InvariantViolation(format!("class {}: not primitive", c.normal_form)));
            }
            let inverse = crate::group::cyclic_normal_form(&relator, &c.normal_form.inverse())?;
            let Some(&j) = index.get(&inverse) else {
                return Err(Error::InvariantViolation(format!("class {}: reversed orientation missing", c.normal_form)));
            };
            let partner = &self.classes[j];
            if (partner.length - c.length).abs() > LENGTH_TOL
                || partner.sigma != c.sigma
                || partner.homology != c.homology.negated()
            {
                return Err(Error::InvariantViolation(format!(
                    "class {}: reversed orientation has inconsistent data",
                    c.normal_form
                )));
            }
            Ok(())
        })
    }
}

fn compare_classes(x: &GeodesicClass, y: &GeodesicClass) -> std::cmp::Ordering {
    x.length.total_cmp(&y.length).then_with(|| x.normal_form.cmp(&y.normal_form))
}

pub(crate) fn sort_classes(classes: &mut [GeodesicClass]) {
    classes.sort_by(compare_classes);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_spectrum() -> LengthSpectrum {
        let gens = GeneratorSet::bolza();
        let classes = [[1i16], [-1], [2], [-2]]
            .iter()
            .map(|ix| GeodesicClass::from_normal_form(&gens, Word::from_indices(ix)).unwrap())
            .collect();
        LengthSpectrum::new("bolza", 3.1, classes)
    }

    #[test]
    fn powers_below_cutoff() {
        let s = toy_spectrum();
        assert!(s.power_extend(3.0).unwrap().is_empty());
        let terms = s.power_extend(3.1).unwrap();
        assert_eq!(terms.len(), 4);
        assert!(matches!(s.power_extend(9.5), Err(Error::IncompleteSpectrum { .. })));
    }

    #[test]
    fn power_counts_follow_floor() {
        let mut s = toy_spectrum();
        s.l_max = 9.5;
        let terms = s.power_extend(9.5).unwrap();
        let expected: usize = s.classes.iter().map(|c| (9.5 / c.length).floor() as usize).sum();
        assert_eq!(terms.len(), expected);
        let powers: Vec<u32> = terms.iter().filter(|t| t.class_index == 0).map(|t| t.power).collect();
        assert_eq!(powers, vec![1, 2, 3]);
    }
}
