use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point2<S> {
    pub fn new(x: S, y: S) -> Self {
        Point2 { x, y }
    }

    pub fn same(&self, other: &Self) -> bool {
        self.x.same(&other.x) && self.y.same(&other.y)
    }

    pub fn sub(&self, other: &Self) -> Point2<S> {
        Point2::new(self.x.clone() - other.x.clone(), self.y.clone() - other.y.clone())
    }

    pub fn dot(&self, other: &Self) -> S {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    pub fn cross(&self, other: &Self) -> S {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    pub fn norm_squared(&self) -> S {
        self.dot(self)
    }
}

/// Twice the signed area of `(p, q, r)`; positive for a counter-clockwise turn.
pub fn orient2d<S: Scalar>(p: &Point2<S>, q: &Point2<S>, r: &Point2<S>) -> S {
    q.sub(p).cross(&r.sub(p))
}

/// Directed segment `(a,b;c,d)` from `(a,b)` to `(c,d)`, never of zero length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval<S> {
    a: S,
    b: S,
    c: S,
    d: S,
}

impl<S: Scalar> Interval<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self> {
        if a.same(&c) && b.same(&d) {
            return Err(Error::ZeroLength);
        }
        Ok(Interval { a, b, c, d })
    }

    pub fn from_points(initial: Point2<S>, terminal: Point2<S>) -> Result<Self> {
        Self::new(initial.x, initial.y, terminal.x, terminal.y)
    }

    pub fn a(&self) -> &S {
        &self.a
    }

    pub fn b(&self) -> &S {
        &self.b
    }

    pub fn c(&self) -> &S {
        &self.c
    }

    pub fn d(&self) -> &S {
        &self.d
    }

    pub fn coords(&self) -> [&S; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn initial(&self) -> Point2<S> {
        Point2::new(self.a.clone(), self.b.clone())
    }

    pub fn terminal(&self) -> Point2<S> {
        Point2::new(self.c.clone(), self.d.clone())
    }

    /// `(a,b;c,d) -> (c,d;a,b)`.
    pub fn reverse(&self) -> Self {
        Interval {
            a: self.c.clone(),
            b: self.d.clone(),
            c: self.a.clone(),
            d: self.b.clone(),
        }
    }

    /// Four-tuple equality under the scalar mode.
    pub fn same(&self, other: &Self) -> bool {
        self.a.same(&other.a) && self.b.same(&other.b) && self.c.same(&other.c) && self.d.same(&other.d)
    }

    pub fn key(&self) -> [S::Key; 4] {
        [self.a.key(), self.b.key(), self.c.key(), self.d.key()]
    }

    /// Coordinates rounded to `f64`, for rendering.
    pub fn to_f64(&self) -> [f64; 4] {
        [self.a.to_f64(), self.b.to_f64(), self.c.to_f64(), self.d.to_f64()]
    }
}

impl<S: fmt::Display> fmt::Debug for Interval<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

impl<S: fmt::Display> fmt::Display for Interval<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Checks that no two intervals are equal as four-tuples.
pub fn ensure_distinct<S: Scalar>(intervals: &[Interval<S>]) -> Result<()> {
    if S::MODE == crate::scalar::Mode::Exact {
        let mut seen = std::collections::HashMap::with_capacity(intervals.len());
        for (idx, iv) in intervals.iter().enumerate() {
            if let Some(first) = seen.insert(iv.key(), idx) {
                return Err(Error::DuplicateInterval { first, second: idx });
            }
        }
        return Ok(());
    }
    for (j, jv) in intervals.iter().enumerate() {
        if let Some(i) = intervals[..j].iter().position(|iv| iv.same(jv)) {
            return Err(Error::DuplicateInterval { first: i, second: j });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi, Exact};

    fn iv(a: Exact, b: Exact, c: Exact, d: Exact) -> Interval<Exact> {
        Interval::new(a, b, c, d).unwrap()
    }

    #[test]
    fn reverse_examples() {
        let i = iv(qi(0), qi(0), qi(1), qi(2));
        assert_eq!(i.reverse(), iv(qi(1), qi(2), qi(0), qi(0)));
        assert_eq!(i.reverse().reverse(), i);
        let j = iv(q(1, 2), qi(-3), q(1, 2), qi(5));
        assert_eq!(j.reverse(), iv(q(1, 2), qi(5), q(1, 2), qi(-3)));
    }

    #[test]
    fn zero_length_rejected() {
        assert_eq!(Interval::new(qi(1), qi(1), qi(1), qi(1)), Err(Error::ZeroLength));
    }

    #[test]
    fn duplicates_detected() {
        let a = iv(qi(0), qi(0), qi(1), qi(1));
        let b = iv(qi(0), qi(1), qi(1), qi(1));
        assert!(ensure_distinct(&[a.clone(), b.clone()]).is_ok());
        assert_eq!(
            ensure_distinct(&[a.clone(), b, a]),
            Err(Error::DuplicateInterval { first: 0, second: 2 })
        );
    }
}
