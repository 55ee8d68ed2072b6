//! Construction, validation, exhaustive search and rate bounds for DNA
//! codes over even `q`-ary alphabets.

pub mod bounds;
pub mod cli;
pub mod clique;
pub mod code;
pub mod combinatorics;
pub mod construct;
pub mod error;
pub mod limits;
pub mod numeric;
pub mod report;
pub mod search;
pub mod sequence;
pub mod similarity;
pub mod text;

pub use bounds::{BoundMode, BoundReport, BoundValue, CriticalPoint};
pub use construct::{CaseUsed, ClaimedSize, ConstructionReport};
pub use code::{DnaCode, ValidationReport, Violation};
pub use error::{Error, Result};
pub use limits::EnumerationCap;
pub use search::{DistributionTable, SearchMode, SearchResult};
pub use sequence::{Composition, Orbit, OrbitClass, QarySequence};
pub use similarity::SimilarityKind;
