use crate::conic::{fit_conic, Conic, ConicFit};
use crate::correspondence::PlanarRotation;
use crate::error::{Error, Result};
use crate::interval::{orient2d, Point2};
use crate::linalg::normalize_first_nonzero;
use crate::scalar::Scalar;

/// Planar line `a x + b y + c = 0`, scaled so the first nonzero coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line2<S> {
    coeffs: [S; 3],
}

impl<S: Scalar> Line2<S> {
    pub fn new(a: S, b: S, c: S) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroNormal);
        }
        Ok(Line2 {
            coeffs: normalize_first_nonzero(&[a, b, c]),
        })
    }

    /// `y = slope x + intercept`.
    pub fn slope_intercept(slope: S, intercept: S) -> Self {
        Line2::new(-slope, S::one(), -intercept).expect("b = 1")
    }

    pub fn through(p: &Point2<S>, q: &Point2<S>) -> Result<Self> {
        let d = q.sub(p);
        Line2::new(d.y.clone(), -d.x.clone(), d.x * p.y.clone() - d.y * p.x.clone())
    }

    pub fn coeffs(&self) -> &[S; 3] {
        &self.coeffs
    }

    pub fn contains(&self, p: &Point2<S>) -> bool {
        let [a, b, c] = self.coeffs.clone();
        (a * p.x.clone() + b * p.y.clone() + c).is_zero()
    }

    /// The line `{p : rot(p) ∈ self}`.
    pub fn pull_back(&self, rot: &PlanarRotation<S>) -> Self {
        let [a, b, c] = self.coeffs.clone();
        let (cs, sn) = (rot.cos().clone(), rot.sin().clone());
        Line2::new(
            a.clone() * cs.clone() + b.clone() * sn.clone(),
            b * cs - a * sn,
            c,
        )
        .expect("rotations preserve nonzero normals")
    }

    /// `[0, 0, 0, a, b, c]` as conic coefficients.
    pub fn as_conic(&self) -> Conic<S> {
        let [a, b, c] = self.coeffs.clone();
        Conic::new([S::zero(), S::zero(), S::zero(), a, b, c]).expect("nonzero linear part")
    }
}

/// Curve through a cloud of interval endpoints.
#[derive(Debug, Clone, PartialEq)]
pub enum EndpointLocus<S> {
    Line(Line2<S>),
    Conic(Conic<S>),
    /// At least five points in general position, but no unique conic.
    Degenerate { nullspace_dim: usize },
    /// Too few distinct, non-collinear points to pin down a conic.
    Underdetermined { distinct_points: usize },
}

impl<S: Scalar> EndpointLocus<S> {
    pub fn contains(&self, p: &Point2<S>) -> Option<bool> {
        match self {
            EndpointLocus::Line(l) => Some(l.contains(p)),
            EndpointLocus::Conic(c) => Some(c.contains(&p.x, &p.y)),
            _ => None,
        }
    }
}

/// A line when the distinct points are collinear, the unique conic through
/// them when there are at least five, and an explanation otherwise.
pub fn fit_endpoint_locus<S: Scalar>(points: &[Point2<S>]) -> EndpointLocus<S> {
    let mut distinct: Vec<Point2<S>> = Vec::new();
    for p in points {
        if !distinct.iter().any(|q| q.same(p)) {
            distinct.push(p.clone());
        }
    }
    if distinct.len() < 2 {
        return EndpointLocus::Underdetermined {
            distinct_points: distinct.len(),
        };
    }
    let (p0, p1) = (&distinct[0], &distinct[1]);
    if distinct[2..].iter().all(|r| orient2d(p0, p1, r).is_zero()) {
        return EndpointLocus::Line(Line2::through(p0, p1).expect("distinct points"));
    }
    if distinct.len() < 5 {
        return EndpointLocus::Underdetermined {
            distinct_points: distinct.len(),
        };
    }
    let pairs: Vec<(S, S)> = distinct.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
    match fit_conic(&pairs).expect("at least five points") {
        ConicFit::Conic { conic, .. } => EndpointLocus::Conic(conic),
        ConicFit::Degenerate { nullspace_dim } => EndpointLocus::Degenerate { nullspace_dim },
    }
}
