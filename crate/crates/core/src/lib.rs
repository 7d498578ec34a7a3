//! Pythagorean fuzzy numbers, φ-soft sets over them, and a two-expert
//! decision procedure built on weighted aggregation.
//!
//! ```
//! use phisoft::{Pfn, OrderKind};
//!
//! let a = Pfn::new(0.6, 0.3).unwrap();
//! let b = Pfn::new(0.5, 0.5).unwrap();
//! assert!(a.compare(&b, OrderKind::ESThenMembership).is_ge());
//! ```

pub mod aggregation;
pub mod decision;
pub mod io;
pub mod laws;
pub mod par;
pub mod pfn;
pub mod soft_set;

pub use aggregation::{apfdv, apfdv_all, pfwa_geometric, pfwa_linear, weights_from_importances, AggregationError, Aggregator, WeightVector};
pub use decision::{decide, decide_single, DecisionConfig, DecisionError, DecisionReport, Combine, RankingLine, RankingOrder};
pub use io::IoError;
pub use par::Execution;
pub use pfn::{OrderKind, Pfn, PfnError, PfnOrdering};
pub use soft_set::{constant_set, null_set, whole_set, AlternativeId, CellEntry, PfParameter, PhiSoftSet, SetError};
