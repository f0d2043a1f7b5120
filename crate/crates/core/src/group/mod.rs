//! Word and matrix arithmetic in a closed surface group.

mod conjugacy;
mod generators;
mod matrix;
mod relator;
mod word;

pub use conjugacy::{cyclic_normal_form, is_primitive, ConjugacyClosure};
pub use generators::{
    bolza_side_pairing_words, bolza_side_pairings, validate_generators, GeneratorSet, ValidationReport,
};
pub use matrix::{length_to_trace, trace_to_length, Mat2};
pub use relator::{Direction, Relator};
pub use word::{abelianize, free_reduce, HomologyVector, Letter, Word};

