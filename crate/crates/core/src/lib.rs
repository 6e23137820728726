//! Deep holes of generalized Reed-Solomon codes over small finite fields:
//! exact field and polynomial arithmetic, two independent error-distance
//! engines, constructive deep-hole families with verifiers, the
//! subset-sum census N(t,b,D) with its closed formulas, and the
//! quadratic-system solver behind the degree-(k+2) verdict.

pub mod census;
pub mod error;
pub mod families;
pub mod field;
pub mod grs;
pub mod poly;
pub mod solver;
pub mod subsets;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Fe, Field};
pub use grs::{DistanceReport, GrsCode, Word};
pub use poly::Poly;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
