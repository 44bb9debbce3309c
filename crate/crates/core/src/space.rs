//! Points, lines and planes in R³.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec3<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Vec3<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero() -> Self {
        Vec3::new(S::zero(), S::zero(), S::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Vec3::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone(), self.z.clone() + o.z.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Vec3::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone(), self.z.clone() - o.z.clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Vec3::new(self.x.clone() * k.clone(), self.y.clone() * k.clone(), self.z.clone() * k.clone())
    }

    pub fn dot(&self, o: &Self) -> S {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone() + self.z.clone() * o.z.clone()
    }

    pub fn cross(&self, o: &Self) -> Self {
        Vec3::new(
            self.y.clone() * o.z.clone() - self.z.clone() * o.y.clone(),
            self.z.clone() * o.x.clone() - self.x.clone() * o.z.clone(),
            self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn same(&self, o: &Self) -> bool {
        self.x.same(&o.x) && self.y.same(&o.y) && self.z.same(&o.z)
    }

    pub fn key(&self) -> [S::Key; 3] {
        [self.x.key(), self.y.key(), self.z.key()]
    }

    pub fn to_array(&self) -> [S; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }
}

/// Line `base + t * dir` in R³.
///
/// Lines built from intervals are in graph form: `base.z == 0`, `dir.z == 1`.
/// Rigid motions produce lines in general form; [`Line3::canonical`] maps both
/// to one normal form so equal lines compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line3<S> {
    base: Vec3<S>,
    dir: Vec3<S>,
}

impl<S: Scalar> Line3<S> {
    pub fn new(base: Vec3<S>, dir: Vec3<S>) -> Result<Self> {
        if dir.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(Line3 { base, dir })
    }

    /// `(x0, y0, 0) + t (dx, dy, 1)`.
    pub fn graph(x0: S, y0: S, dx: S, dy: S) -> Self {
        Line3 {
            base: Vec3::new(x0, y0, S::zero()),
            dir: Vec3::new(dx, dy, S::one()),
        }
    }

    pub fn base(&self) -> &Vec3<S> {
        &self.base
    }

    pub fn dir(&self) -> &Vec3<S> {
        &self.dir
    }

    pub fn point_at(&self, t: &S) -> Vec3<S> {
        self.base.add(&self.dir.scale(t))
    }

    pub fn is_graph_form(&self) -> bool {
        self.base.z.is_zero() && self.dir.z.same(&S::one())
    }

    pub fn contains(&self, p: &Vec3<S>) -> bool {
        p.sub(&self.base).cross(&self.dir).is_zero()
    }

    /// Graph form when the line crosses `z = 0` transversally; otherwise the
    /// direction is scaled so its first nonzero component is 1 and the base
    /// slides to where that coordinate vanishes.
    pub fn canonical(&self) -> Self {
        let axis = if !self.dir.z.is_zero() {
            2
        } else if !self.dir.y.is_zero() {
            1
        } else {
            0
        };
        let comp = |v: &Vec3<S>| match axis {
            2 => v.z.clone(),
            1 => v.y.clone(),
            _ => v.x.clone(),
        };
        let dir = self.dir.scale(&comp(&self.dir).recip());
        let t = -comp(&self.base);
        let mut base = self.base.add(&dir.scale(&t));
        // pin the eliminated coordinate so approximate rounding cannot leak into keys
        match axis {
            2 => base.z = S::zero(),
            1 => base.y = S::zero(),
            _ => base.x = S::zero(),
        }
        let mut dir = dir;
        match axis {
            2 => dir.z = S::one(),
            1 => dir.y = S::one(),
            _ => dir.x = S::one(),
        }
        Line3 { base, dir }
    }

    pub fn key(&self) -> LineKey<S::Key> {
        let c = self.canonical();
        LineKey {
            base: c.base.key(),
            dir: c.dir.key(),
        }
    }

    pub fn same(&self, other: &Self) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a.base.same(&b.base) && a.dir.same(&b.dir)
    }

    pub fn plucker(&self) -> Plucker<S> {
        Plucker {
            dir: self.dir.clone(),
            moment: self.base.cross(&self.dir),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineKey<K> {
    pub base: [K; 3],
    pub dir: [K; 3],
}

/// Plücker coordinates `(direction, moment)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plucker<S> {
    pub dir: Vec3<S>,
    pub moment: Vec3<S>,
}

impl<S: Scalar> Plucker<S> {
    /// Zero exactly when the two lines are coplanar (meeting or parallel).
    pub fn reciprocal(&self, other: &Self) -> S {
        self.dir.dot(&other.moment) + other.dir.dot(&self.moment)
    }

    pub fn to_array(&self) -> [S; 6] {
        [
            self.dir.x.clone(),
            self.dir.y.clone(),
            self.dir.z.clone(),
            self.moment.x.clone(),
            self.moment.y.clone(),
            self.moment.z.clone(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineIntersection<S> {
    Point(Vec3<S>),
    Parallel,
    Skew,
    Identical,
}

impl<S> LineIntersection<S> {
    pub fn is_point(&self) -> bool {
        matches!(self, LineIntersection::Point(_))
    }

    /// Meets in affine space or at infinity.
    pub fn is_coplanar(&self) -> bool {
        !matches!(self, LineIntersection::Skew)
    }
}

pub fn line_intersect<S: Scalar>(l: &Line3<S>, m: &Line3<S>) -> LineIntersection<S> {
    let normal = l.dir.cross(&m.dir);
    let offset = m.base.sub(&l.base);
    if normal.is_zero() {
        return if offset.cross(&l.dir).is_zero() {
            LineIntersection::Identical
        } else {
            LineIntersection::Parallel
        };
    }
    if !offset.dot(&normal).is_zero() {
        return LineIntersection::Skew;
    }
    let t = offset.cross(&m.dir).dot(&normal) / normal.dot(&normal);
    LineIntersection::Point(l.point_at(&t))
}

/// Plane `A x + B y + C z + D = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Plane3<S> {
    coeffs: [S; 4],
}

impl<S: Scalar> Plane3<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::ZeroNormal);
        }
        Ok(Plane3 { coeffs: [a, b, c, d] })
    }

    pub fn a(&self) -> &S {
        &self.coeffs[0]
    }

    pub fn b(&self) -> &S {
        &self.coeffs[1]
    }

    pub fn c(&self) -> &S {
        &self.coeffs[2]
    }

    pub fn d(&self) -> &S {
        &self.coeffs[3]
    }

    pub fn coeffs(&self) -> &[S; 4] {
        &self.coeffs
    }

    pub fn normal(&self) -> Vec3<S> {
        Vec3::new(self.coeffs[0].clone(), self.coeffs[1].clone(), self.coeffs[2].clone())
    }

    pub fn eval(&self, p: &Vec3<S>) -> S {
        self.normal().dot(p) + self.coeffs[3].clone()
    }

    pub fn contains_point(&self, p: &Vec3<S>) -> bool {
        self.eval(p).is_zero()
    }

    pub fn contains_line(&self, l: &Line3<S>) -> bool {
        self.normal().dot(l.dir()).is_zero() && self.contains_point(l.base())
    }

    /// Scaled so the first nonzero coefficient is 1.
    pub fn canonical(&self) -> Self {
        Plane3 {
            coeffs: crate::linalg::normalize_first_nonzero(&self.coeffs),
        }
    }

    pub fn key(&self) -> [S::Key; 4] {
        let c = self.canonical();
        [c.coeffs[0].key(), c.coeffs[1].key(), c.coeffs[2].key(), c.coeffs[3].key()]
    }

    /// The plane spanned by two distinct coplanar lines.
    pub fn through_lines(l: &Line3<S>, m: &Line3<S>) -> Option<Self> {
        let mut normal = l.dir().cross(m.dir());
        if normal.is_zero() {
            normal = l.dir().cross(&m.base().sub(l.base()));
            if normal.is_zero() {
                return None;
            }
        } else if !m.base().sub(l.base()).dot(&normal).is_zero() {
            return None;
        }
        let d = -normal.dot(l.base());
        Some(Plane3 {
            coeffs: [normal.x, normal.y, normal.z, d],
        })
    }
}
