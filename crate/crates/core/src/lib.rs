//! Trapezoid-forming pairs of directed intervals in the plane and the
//! structures behind them.
//!
//! An interval `(a,b;c,d)` corresponds to the line `(b,d,0) + t(a,c,1)` in R³.
//! Pairs of intervals whose endpoints span a trapezoid become pairs of
//! meeting lines, so large trapezoid counts force concurrent lines, coplanar
//! lines or a regulus. This crate counts the pairs, finds those structures
//! and generates the configuration families that realize them.
//!
//! All geometry is generic over [`Scalar`]: [`Exact`] rationals for
//! detection and [`Approx`] floats for trigonometric inputs.

pub mod conic;
pub mod correspondence;
pub mod detect;
pub mod error;
pub mod generate;
pub mod interval;
pub mod linalg;
pub mod quadric;
pub mod relation;
pub mod scalar;
pub mod space;

pub use conic::{conic_classify, fit_conic, Conic, ConicClass, ConicFit};
pub use correspondence::{
    find_exceptional_pair, from_line, from_line_perp, from_line_ratio, generic_rotation, line_set, rotate_x_action,
    to_line, to_line_perp, to_line_ratio, translate_action, verify_i2l, I2lReport, LineRef, PlanarRotation,
    RigidMotion3,
};
pub use error::{Error, Result};
pub use interval::{ensure_distinct, Interval, Point2};
pub use quadric::{line_on_quadric, quadric_classify, quadric_through_skew_lines, Quadric, QuadricClass, QuadricFit};
pub use relation::{
    classify_orthodiagonal, orthodiagonal_relation, ratio_relation, trapezoid_relation, Degeneracy,
    OrthodiagonalClass, PairRelation, Relation,
};
pub use scalar::{q, qi, Approx, Exact, Mode, Scalar, DEFAULT_TOLERANCE};
pub use space::{line_intersect, Line3, LineIntersection, Plane3, Plucker, Vec3};
pub use detect::{
    analyze, classify_subcase, count_pairs, detect_concurrent, detect_coplanar, detect_regulus, fit_endpoint_locus,
    plane_to_pencil, AnalyzeOptions, ConcurrencyWitness, CoplanarWitness, EndpointLocus, Line2, PairCounts, Pencil,
    RegulusReport, RegulusStrategy, RegulusWitness, RulingAnalysis, StructureReport, Subcase, SubcaseParams,
    SubcaseWitness,
};
pub use generate::{
    circle_points, gen_hyperboloid_rulings, gen_parallel_lines, gen_paraboloid_rulings, gen_pencil, gen_perp_pullback,
    gen_ratio_pullback, gen_subcase_ii, gen_transformed, random_intervals, DropReason, Family, Which,
};
