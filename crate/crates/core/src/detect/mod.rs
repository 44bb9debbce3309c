//! Pair counting and the three structure detectors: concurrent lines,
//! coplanar lines and reguli, plus the report that ties them together.

mod analyze;
mod concurrent;
mod coplanar;
mod counts;
mod lines;
mod locus;
mod regulus;
mod subcase;

pub use analyze::{analyze, AnalyzeOptions, RegulusReport, RulingAnalysis, StructureReport};
pub use concurrent::{detect_concurrent, ConcurrencyWitness};
pub use coplanar::{detect_coplanar, plane_to_pencil, CoplanarWitness, Pencil};
pub use counts::{count_pairs, PairCounts};
pub use lines::UniqueLines;
pub use locus::{fit_endpoint_locus, EndpointLocus, Line2};
pub use regulus::{detect_regulus, RegulusStrategy, RegulusWitness, EXHAUSTIVE_LIMIT};
pub use subcase::{classify_subcase, Subcase, SubcaseParams, SubcaseWitness};
