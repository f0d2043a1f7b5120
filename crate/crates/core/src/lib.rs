//! Length spectra, flux characters, and trace-formula statistics for a
//! compact hyperbolic surface, with random-matrix baselines.
//!
//! ```
//! use hypspec::flux::{FluxIndex, FluxSpec};
//! use hypspec::group::GeneratorSet;
//! use hypspec::kernels::{TestFunction, WindowParams};
//! use hypspec::spectrum::enumerate_classes;
//! use hypspec::stats::{mc_flux_experiment, McOptions, OperatorKind};
//!
//! # fn main() -> hypspec::Result<()> {
//! let gens = GeneratorSet::bolza();
//! let spectrum = enumerate_classes(&gens, 8.0)?;
//! let tf = TestFunction::bump(1.0)?;
//! let window = WindowParams::new(8.0, 1.5)?;
//! let flux = FluxSpec::new(FluxIndex::Finite(4), 2)?;
//! let report = mc_flux_experiment(
//!     &spectrum, &flux, &tf, &window, &OperatorKind::laplace(), &McOptions::new(10_000, 7),
//! )?;
//! assert!(report.variance_agrees(4.0));
//! # Ok(())
//! # }
//! ```

pub mod error;
pub mod flux;
pub mod group;
pub mod kernels;
mod pool;
pub mod rmt;
pub mod spectrum;
pub mod stats;

pub use error::{Error, Result};
