//! Closed-form geometry of the Janowski class `S*(A, B, b)` of starlike
//! functions of complex order, with numerical oracles that certify every
//! closed form against members built from Schwarz functions.
//!
//! A normalized analytic `f` on the unit disk belongs to `S*(A, B, b)` when
//! `1 + (z f'(z)/f(z) - 1) / b = (1 + A ω(z)) / (1 + B ω(z))` for some
//! Schwarz function `ω`.

pub mod class_params;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod function_rep;
pub mod oracles;

pub use class_params::{ClassParams, NamedClass};
pub use closed_forms::{Bounds, Disk, StarlikeRadius};
pub use error::{Error, Result};
pub use function_rep::{ClassMember, QuadratureConfig, SchwarzSampler, SchwarzSpec};
pub use oracles::{OracleReport, ScanConfig, Verdict};
