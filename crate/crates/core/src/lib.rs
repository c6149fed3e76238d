//! Idempotent (max-plus style) measure theory on finite spaces: maxitive
//! measures, pseudo-multiplications, the ⊙-integral, Radon–Nikodym
//! densities and quotients by σ-ideals of negligible sets.

pub mod arith;
pub mod cli;
pub mod error;
pub mod ext;
pub mod integral;
pub mod measure;
pub mod quotient;
pub mod radon_nikodym;

pub use arith::PseudoMul;
pub use error::{Error, Result};
pub use ext::ExtNonneg;
pub use measure::{MaxMeasure, MeasurableFn, Space, Subset};
