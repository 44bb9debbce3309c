use rayon::prelude::*;

use crate::error::Result;
use crate::interval::{ensure_distinct, Interval};
use crate::relation::Relation;
use crate::scalar::Scalar;

/// Pair counts by which equation holds.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PairCounts {
    pub n: usize,
    pub left_only: u64,
    pub right_only: u64,
    pub both: u64,
    /// `left_only + right_only + 2 * both`.
    pub total_with_multiplicity: u64,
    /// `N^{3/2} ln N`; informational only.
    pub threshold: f64,
}

impl PairCounts {
    pub fn exceeds_threshold(&self) -> bool {
        self.total_with_multiplicity as f64 > self.threshold
    }
}

/// Brute force over all unordered pairs.
pub fn count_pairs<S: Scalar>(intervals: &[Interval<S>], relation: &Relation<S>) -> Result<PairCounts> {
    ensure_distinct(intervals)?;
    let n = intervals.len();
    let per_row = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = [0u64; 3];
            for j in i + 1..n {
                let r = relation.evaluate(&intervals[i], &intervals[j])?;
                match (r.left, r.right) {
                    (true, true) => acc[2] += 1,
                    (true, false) => acc[0] += 1,
                    (false, true) => acc[1] += 1,
                    _ => {}
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let [left_only, right_only, both] = per_row
        .iter()
        .fold([0u64; 3], |s, r| [s[0] + r[0], s[1] + r[1], s[2] + r[2]]);
    let nf = n as f64;
    Ok(PairCounts {
        n,
        left_only,
        right_only,
        both,
        total_with_multiplicity: left_only + right_only + 2 * both,
        threshold: if n > 1 { nf.powf(1.5) * nf.ln() } else { 0.0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Exact};

    fn ivi(v: [i64; 4]) -> Interval<Exact> {
        let [a, b, c, d] = v.map(qi);
        Interval::new(a, b, c, d).unwrap()
    }

    #[test]
    fn vertical_translates() {
        let set: Vec<_> = (0..3).map(|k| ivi([k, 0, k, 1])).collect();
        let c = count_pairs(&set, &Relation::Trapezoid).unwrap();
        assert_eq!((c.left_only, c.right_only, c.both, c.total_with_multiplicity), (3, 0, 0, 3));
    }

    #[test]
    fn collinear_on_diagonal() {
        let set = [ivi([0, 0, 1, 1]), ivi([2, 2, 3, 3]), ivi([5, 5, 4, 4])];
        let c = count_pairs(&set, &Relation::Trapezoid).unwrap();
        assert_eq!((c.both, c.total_with_multiplicity), (3, 6));
    }

    #[test]
    fn single_interval() {
        let c = count_pairs(&[ivi([0, 0, 1, 2])], &Relation::Trapezoid).unwrap();
        assert_eq!((c.n, c.left_only, c.right_only, c.both, c.total_with_multiplicity), (1, 0, 0, 0, 0));
        assert_eq!(c.threshold, 0.0);
    }

    #[test]
    fn duplicates_rejected() {
        assert!(count_pairs(&[ivi([0, 0, 1, 2]), ivi([0, 0, 1, 2])], &Relation::Trapezoid).is_err());
    }
}
