//! Knowledge-graph embeddings in the translational family.
//!
//! Entities and relations are embedded as d-dimensional vectors so that a
//! true fact `(h, r, t)` satisfies `h + r ≈ t`. Training minimizes a
//! two-part large-margin objective: a *pull* term that draws co-occurring
//! positive entities together, and a *push* term that keeps corrupted
//! triples at least a margin `γ` farther than true ones. A TransE-style
//! baseline (negatives-only margin ranking) is available as a trainer mode.
//!
//! The crate is organised around the pipeline:
//!
//! * [`data`] — TSV triple files, vocabularies, membership indices, and
//!   relation mapping categories (1-1 / 1-N / N-1 / N-N).
//! * [`embed`] — embedding tables: uniform init, row normalization,
//!   persistence.
//! * [`model`] — the scoring function, pull/push losses, and their
//!   (sub)gradients.
//! * [`train`] — seeded SGD over training triples with corruption
//!   sampling.
//! * [`eval`] — link prediction (mean rank / Hits@10, raw and filtered),
//!   triplet classification (per-relation thresholds), and parameter
//!   complexity reporting.

pub mod data;
pub mod embed;
mod error;
pub mod eval;
pub mod model;
pub mod train;

pub use error::{Error, Result};
