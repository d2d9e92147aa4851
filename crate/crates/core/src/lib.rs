//! Exact knot polynomial invariants by skein recursion, the surgery
//! invariants built from them, and the 4-manifold arithmetic used to tell
//! smooth structures apart.

pub mod diagram;
pub mod family;
pub mod fourmanifold;
pub mod invariants;
pub mod laurent;
pub mod report;
pub mod skein;

pub use diagram::{parse_pd, PDDiagram};
pub use laurent::{LaurentPoly, TruncatedSeries};
pub use report::{Check, RunReport};
pub use skein::SkeinEngine;
