//! Test functions, counting windows, smooth terms and correction integrals.

pub mod density;
pub mod ifq;
pub mod quad;
pub mod testfn;
pub mod weyl;
pub mod window;

pub use density::{rmt_density, EnsembleKind};
pub use ifq::{hurwitz_zeta, i_fq, IfqValue, SinhSquareSum};
pub use quad::{integrate, Integral};
pub use testfn::{Family, TestFunction, DEFAULT_TOLERANCE};
pub use weyl::{plancherel_weight, weyl_term, SpectralKind};
pub use window::{h_window, hhat_window, WindowParams};
