use crate::correspondence::from_line;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::rank;
use crate::scalar::Scalar;
use crate::space::{line_intersect, Line3, LineIntersection, Vec3};

/// How the linear system for transversals of three same-ruling lines
/// degenerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subcase {
    /// One of the two 2×2 blocks is invertible.
    I,
    /// Both blocks are singular but the system has rank 2.
    II,
    /// Rank at most 1; the lines are forced through one point.
    III,
}

impl Subcase {
    pub fn name(self) -> &'static str {
        match self {
            Subcase::I => "I",
            Subcase::II => "II",
            Subcase::III => "III",
        }
    }
}

/// `b = m1 a + r1`, `c = m2 a + r2`, `d = m3 a + r3` across the three intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcaseParams<S> {
    pub m1: S,
    pub m2: S,
    pub m3: S,
    pub r1: S,
    pub r2: S,
    pub r3: S,
}

impl<S: Scalar> SubcaseParams<S> {
    /// `(r1, r3 - r2 m1, -m1)`.
    pub fn point(&self) -> Vec3<S> {
        Vec3::new(
            self.r1.clone(),
            self.r3.clone() - self.r2.clone() * self.m1.clone(),
            -self.m1.clone(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubcaseWitness<S> {
    pub case: Subcase,
    /// Rows `[a, b, c, d | rhs]` of the two difference equations.
    pub system: [[S; 5]; 2],
    /// Case III only, when the `a` values are distinct.
    pub params: Option<SubcaseParams<S>>,
    /// Case III only: the common point of the three lines.
    pub point: Option<Vec3<S>>,
}

/// Row of the transversal equation for `(a,b;c,d)` meeting the line of
/// `j` minus the one for `i`, as `[a, b, c, d | rhs]`.
fn difference_row<S: Scalar>(i: &Interval<S>, j: &Interval<S>) -> [S; 5] {
    let (ai, bi, ci, di) = (i.a().clone(), i.b().clone(), i.c().clone(), i.d().clone());
    let (aj, bj, cj, dj) = (j.a().clone(), j.b().clone(), j.c().clone(), j.d().clone());
    [
        di.clone() - dj.clone(),
        cj.clone() - ci.clone(),
        bj.clone() - bi.clone(),
        ai.clone() - aj.clone(),
        bj * cj - bi * ci + ai * di - aj * dj,
    ]
}

fn affine_fit<S: Scalar>(xs: &[S; 3], ys: &[S; 3]) -> Option<(S, S)> {
    let m = (ys[1].clone() - ys[0].clone()) / (xs[1].clone() - xs[0].clone());
    let r = ys[0].clone() - m.clone() * xs[0].clone();
    (m.clone() * xs[2].clone() + r.clone()).same(&ys[2]).then_some((m, r))
}

/// Classifies three distinct graph-form lines by the rank structure of the
/// two linear equations any common transversal's interval must satisfy.
pub fn classify_subcase<S: Scalar>(l1: &Line3<S>, l2: &Line3<S>, l3: &Line3<S>) -> Result<SubcaseWitness<S>> {
    if l1.same(l2) || l1.same(l3) || l2.same(l3) {
        return Err(Error::CoincidentLines);
    }
    let iv = [from_line(l1)?, from_line(l2)?, from_line(l3)?];
    let system = [difference_row(&iv[0], &iv[1]), difference_row(&iv[1], &iv[2])];
    let block = |c0: usize| {
        system[0][c0].clone() * system[1][c0 + 1].clone() - system[0][c0 + 1].clone() * system[1][c0].clone()
    };
    let coeffs: Vec<Vec<S>> = system.iter().map(|r| r[..4].to_vec()).collect();
    let case = if !block(0).is_zero() || !block(2).is_zero() {
        Subcase::I
    } else if rank(&coeffs, 4) == 2 {
        Subcase::II
    } else {
        Subcase::III
    };
    if case != Subcase::III {
        return Ok(SubcaseWitness {
            case,
            system,
            params: None,
            point: None,
        });
    }
    let point = match line_intersect(l1, l2) {
        LineIntersection::Point(p) if l3.contains(&p) => p,
        _ => return Err(Error::RankOneWithoutConcurrency),
    };
    let a = [iv[0].a().clone(), iv[1].a().clone(), iv[2].a().clone()];
    let distinct_a = !a[0].same(&a[1]) && !a[0].same(&a[2]) && !a[1].same(&a[2]);
    let params = if distinct_a {
        let col = |f: fn(&Interval<S>) -> &S| [f(&iv[0]).clone(), f(&iv[1]).clone(), f(&iv[2]).clone()];
        match (
            affine_fit(&a, &col(Interval::b)),
            affine_fit(&a, &col(Interval::c)),
            affine_fit(&a, &col(Interval::d)),
        ) {
            (Some((m1, r1)), Some((m2, r2)), Some((m3, r3))) => {
                let p = SubcaseParams { m1, m2, m3, r1, r2, r3 };
                let consistent = p.m3.same(&(p.m1.clone() * p.m2.clone())) && p.point().same(&point);
                consistent.then_some(p)
            }
            _ => None,
        }
    } else {
        None
    };
    Ok(SubcaseWitness {
        case,
        system,
        params,
        point: Some(point),
    })
}
