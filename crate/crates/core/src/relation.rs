//! Pairwise predicates: trapezoid pairs, orthodiagonal pairs and the fixed
//! slope-ratio generalisation.

use crate::error::{Error, Result};
use crate::interval::{orient2d, Interval, Point2};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Degeneracy {
    /// All four endpoints lie on one line.
    pub collinear: bool,
    /// Some endpoint of one interval equals some endpoint of the other.
    pub shared_endpoint: bool,
    /// The second interval is the reverse of the first.
    pub reverse_pair: bool,
}

impl Degeneracy {
    pub fn any(&self) -> bool {
        self.collinear || self.shared_endpoint || self.reverse_pair
    }
}

/// Which of the two cross-pairing equations a pair satisfies.
///
/// `left` pairs initial with initial and terminal with terminal endpoints;
/// `right` pairs each initial endpoint with the other terminal endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct PairRelation {
    pub left: bool,
    pub right: bool,
    pub degeneracy: Degeneracy,
}

impl PairRelation {
    /// Number of equations that hold: a pair satisfying both counts twice.
    pub fn multiplicity(&self) -> u8 {
        self.left as u8 + self.right as u8
    }

    pub fn any(&self) -> bool {
        self.left || self.right
    }
}

/// The pairwise relation being counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation<S> {
    Trapezoid,
    Orthodiagonal,
    Ratio(S),
}

impl<S: Scalar> Relation<S> {
    pub fn evaluate(&self, i: &Interval<S>, j: &Interval<S>) -> Result<PairRelation> {
        match self {
            Relation::Trapezoid => trapezoid_relation(i, j),
            Relation::Orthodiagonal => orthodiagonal_relation(i, j),
            Relation::Ratio(rho) => ratio_relation(i, j, rho),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Relation::Trapezoid => "trapezoid",
            Relation::Orthodiagonal => "orthodiagonal",
            Relation::Ratio(_) => "ratio",
        }
    }
}

fn degeneracy<S: Scalar>(i: &Interval<S>, j: &Interval<S>) -> Degeneracy {
    let (p, q) = (i.initial(), i.terminal());
    let (r, s) = (j.initial(), j.terminal());
    let collinear = orient2d(&p, &q, &r).is_zero() && orient2d(&p, &q, &s).is_zero();
    let shared_endpoint = [&p, &q].iter().any(|e| e.same(&r) || e.same(&s));
    Degeneracy {
        collinear,
        shared_endpoint,
        reverse_pair: j.same(&i.reverse()),
    }
}

fn distinct<S: Scalar>(i: &Interval<S>, j: &Interval<S>) -> Result<()> {
    if i.same(j) {
        Err(Error::IdenticalPair)
    } else {
        Ok(())
    }
}

/// `left: (a-a')(d-d') = (b-b')(c-c')`, `right: (a-c')(d-b') = (c-a')(b-d')`.
pub fn trapezoid_relation<S: Scalar>(i: &Interval<S>, j: &Interval<S>) -> Result<PairRelation> {
    ratio_relation_unchecked(i, j, &S::one())
}

/// `left: (b-b')(d-d') = -(a-a')(c-c')`, `right: (b-d')(d-b') = -(a-c')(c-a')`.
pub fn orthodiagonal_relation<S: Scalar>(i: &Interval<S>, j: &Interval<S>) -> Result<PairRelation> {
    distinct(i, j)?;
    let [a, b, c, d] = i.coords().map(Clone::clone);
    let [a2, b2, c2, d2] = j.coords().map(Clone::clone);
    let left_lhs = (b.clone() - b2.clone()) * (d.clone() - d2.clone());
    let left_rhs = -((a.clone() - a2.clone()) * (c.clone() - c2.clone()));
    let right_lhs = (b - d2) * (d - b2);
    let right_rhs = -((a - c2) * (c - a2));
    Ok(PairRelation {
        left: left_lhs.same(&left_rhs),
        right: right_lhs.same(&right_rhs),
        degeneracy: degeneracy(i, j),
    })
}

/// `left: (a-a')(d-d') = rho (b-b')(c-c')`,
/// `right: (a-c')(d-b') = rho (c-a')(b-d')`.
///
/// `right(i, j)` is `left(i, reverse(j))`: the slope ratio between the segment
/// from `i`'s initial point to `j`'s terminal point and the segment from `i`'s
/// terminal point to `j`'s initial point. For `rho != 1` it is not symmetric in
/// `i` and `j`.
pub fn ratio_relation<S: Scalar>(i: &Interval<S>, j: &Interval<S>, rho: &S) -> Result<PairRelation> {
    if rho.is_zero() {
        return Err(Error::ZeroRatio);
    }
    ratio_relation_unchecked(i, j, rho)
}

fn ratio_relation_unchecked<S: Scalar>(i: &Interval<S>, j: &Interval<S>, rho: &S) -> Result<PairRelation> {
    distinct(i, j)?;
    let [a, b, c, d] = i.coords().map(Clone::clone);
    let [a2, b2, c2, d2] = j.coords().map(Clone::clone);
    let left_lhs = (a.clone() - a2.clone()) * (d.clone() - d2.clone());
    let left_rhs = rho.clone() * (b.clone() - b2.clone()) * (c.clone() - c2.clone());
    let right_lhs = (a - c2) * (d - b2.clone());
    let right_rhs = rho.clone() * (c - a2) * (b - d2);
    Ok(PairRelation {
        left: left_lhs.same(&left_rhs),
        right: right_lhs.same(&right_rhs),
        degeneracy: degeneracy(i, j),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrthodiagonalClass {
    /// Strictly convex quadrilateral with `i` and `j` as opposite sides and
    /// perpendicular diagonals crossing in their interiors.
    Quadrilateral,
    /// An equation holds but the hull is not such a quadrilateral.
    EquationOnly,
    None,
}

fn segments_cross<S: Scalar>(p: &Point2<S>, q: &Point2<S>, r: &Point2<S>, s: &Point2<S>) -> bool {
    let o1 = orient2d(p, q, r).signum();
    let o2 = orient2d(p, q, s).signum();
    let o3 = orient2d(r, s, p).signum();
    let o4 = orient2d(r, s, q).signum();
    o1 * o2 < 0 && o3 * o4 < 0
}

pub fn classify_orthodiagonal<S: Scalar>(i: &Interval<S>, j: &Interval<S>) -> Result<OrthodiagonalClass> {
    let rel = orthodiagonal_relation(i, j)?;
    if !rel.any() {
        return Ok(OrthodiagonalClass::None);
    }
    let (p, q) = (i.initial(), i.terminal());
    let (r, s) = (j.initial(), j.terminal());
    // A proper crossing of two segments with no three of the four points
    // collinear is exactly a strictly convex quadrilateral with those segments
    // as diagonals; the remaining pairs, including i and j, are its sides.
    let quad = (rel.left && segments_cross(&p, &r, &q, &s)) || (rel.right && segments_cross(&p, &s, &q, &r));
    Ok(if quad {
        OrthodiagonalClass::Quadrilateral
    } else {
        OrthodiagonalClass::EquationOnly
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi, Exact};

    fn iv(v: [Exact; 4]) -> Interval<Exact> {
        let [a, b, c, d] = v;
        Interval::new(a, b, c, d).unwrap()
    }

    fn ivi(v: [i64; 4]) -> Interval<Exact> {
        iv(v.map(qi))
    }

    #[test]
    fn trapezoid_examples() {
        let r = trapezoid_relation(&ivi([0, 0, 1, 1]), &ivi([1, 1, 2, 2])).unwrap();
        assert!(r.left && r.right && r.degeneracy.collinear && r.degeneracy.shared_endpoint);

        let r = trapezoid_relation(&ivi([0, 0, 1, 1]), &ivi([1, 0, 0, 1])).unwrap();
        assert!(r.left && r.right && !r.degeneracy.collinear);

        let r = trapezoid_relation(&ivi([0, 0, 1, 2]), &ivi([2, 1, 3, 3])).unwrap();
        assert!(r.left && !r.right);

        let r = trapezoid_relation(&ivi([0, 0, 1, 0]), &ivi([0, 1, 2, 3])).unwrap();
        assert!(!r.left && !r.right);
        assert_eq!(r.multiplicity(), 0);
    }

    #[test]
    fn reverse_pair_flags_and_left() {
        let i = iv([q(1, 3), qi(2), qi(-5), q(7, 2)]);
        let r = trapezoid_relation(&i, &i.reverse()).unwrap();
        assert!(r.left && r.degeneracy.reverse_pair && r.degeneracy.shared_endpoint);
    }

    #[test]
    fn identical_pair_is_error() {
        let i = ivi([0, 0, 1, 1]);
        assert_eq!(trapezoid_relation(&i, &i), Err(Error::IdenticalPair));
        assert_eq!(orthodiagonal_relation(&i, &i), Err(Error::IdenticalPair));
        assert_eq!(classify_orthodiagonal(&i, &i), Err(Error::IdenticalPair));
    }

    #[test]
    fn orthodiagonal_examples() {
        let r = orthodiagonal_relation(&ivi([0, 0, 1, 0]), &ivi([1, 1, 0, 1])).unwrap();
        assert!(r.left && !r.right);

        let tri_a = iv([qi(0), qi(0), q(3, 2), qi(3)]);
        let tri_b = iv([q(3, 2), qi(3), qi(3), qi(0)]);
        let r = orthodiagonal_relation(&tri_a, &tri_b).unwrap();
        assert!(r.right && !r.left && r.degeneracy.shared_endpoint);

        let r = orthodiagonal_relation(&ivi([0, 0, 1, 0]), &ivi([2, 1, 3, 1])).unwrap();
        assert!(!r.any());
    }

    #[test]
    fn classify_orthodiagonal_examples() {
        assert_eq!(
            classify_orthodiagonal(&ivi([0, 0, 1, 0]), &ivi([1, 1, 0, 1])).unwrap(),
            OrthodiagonalClass::Quadrilateral
        );
        let tri_a = iv([qi(0), qi(0), q(3, 2), qi(3)]);
        let tri_b = iv([q(3, 2), qi(3), qi(3), qi(0)]);
        assert_eq!(classify_orthodiagonal(&tri_a, &tri_b).unwrap(), OrthodiagonalClass::EquationOnly);
        assert_eq!(
            classify_orthodiagonal(&ivi([0, 0, 1, 0]), &ivi([2, 2, 3, 3])).unwrap(),
            OrthodiagonalClass::None
        );
    }

    #[test]
    fn orthodiagonal_diagonals_must_be_the_perpendicular_pair() {
        // initial-initial is perpendicular to terminal-terminal, but i and j
        // are themselves the diagonals of the convex hull
        let i = ivi([0, 0, 5, 1]);
        let j = ivi([2, 0, 5, 3]);
        let r = orthodiagonal_relation(&i, &j).unwrap();
        assert!(r.left && !r.right);
        assert_eq!(classify_orthodiagonal(&i, &j).unwrap(), OrthodiagonalClass::EquationOnly);
    }

    #[test]
    fn ratio_examples() {
        let r = ratio_relation(&ivi([0, 0, 1, 1]), &ivi([1, 2, 3, 4]), &q(3, 4)).unwrap();
        assert!(r.left);
        let r = ratio_relation(&ivi([0, 0, 1, 2]), &ivi([2, 1, 3, 3]), &qi(2)).unwrap();
        assert!(!r.left && !r.right);
        assert_eq!(
            ratio_relation(&ivi([0, 0, 1, 2]), &ivi([2, 1, 3, 3]), &qi(0)),
            Err(Error::ZeroRatio)
        );
    }

    #[test]
    fn ratio_right_is_left_against_reverse() {
        let i = ivi([0, 1, 4, 3]);
        let j = ivi([2, -1, 5, 7]);
        let rho = q(2, 3);
        let a = ratio_relation(&i, &j, &rho).unwrap();
        let b = ratio_relation(&i, &j.reverse(), &rho).unwrap();
        assert_eq!(a.right, b.left);
    }
}
