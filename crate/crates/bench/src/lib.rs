//! Inputs shared by the benchmarks.

use trapezoid_core::generate::spread_tangents;
use trapezoid_core::{circle_points, gen_hyperboloid_rulings, random_intervals, Interval, Scalar, Which};

/// `n` random intervals with small rational coordinates.
pub fn noise<S: Scalar>(n: usize, seed: u64) -> Vec<Interval<S>> {
    random_intervals(n, seed, 1000, 50)
}

/// Both rulings of the unit hyperboloid, `per_ruling` lines each.
pub fn hyperboloid<S: Scalar>(per_ruling: usize) -> Vec<Interval<S>> {
    let points = circle_points(&spread_tangents::<S>(per_ruling));
    gen_hyperboloid_rulings(&S::one(), &S::one(), &S::one(), &points, Which::Both)
        .expect("unit hyperboloid parameters are valid")
        .intervals
}

/// A hyperboloid family padded with random intervals.
pub fn planted<S: Scalar>(per_ruling: usize, extra: usize, seed: u64) -> Vec<Interval<S>> {
    let mut out = hyperboloid(per_ruling);
    out.extend(noise::<S>(extra, seed));
    out
}
