//! The interval ↔ line correspondence and the group actions it carries.
//!
//! `to_line` sends `(a,b;c,d)` to `(b,d,0) + t(a,c,1)`. Two intervals
//! satisfy the left trapezoid equation exactly when their lines meet, and the
//! right equation exactly when one line meets the other's reversed line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interval::{ensure_distinct, Interval, Point2};
use crate::relation::trapezoid_relation;
use crate::scalar::Scalar;
use crate::space::{line_intersect, Line3, LineIntersection, Vec3};

/// Which copy of an interval a line stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineRef {
    pub interval: usize,
    pub reversed: bool,
}

impl LineRef {
    pub fn forward(interval: usize) -> Self {
        LineRef { interval, reversed: false }
    }

    pub fn reversed(interval: usize) -> Self {
        LineRef { interval, reversed: true }
    }

    pub fn flipped(self) -> Self {
        LineRef {
            interval: self.interval,
            reversed: !self.reversed,
        }
    }

    /// The oriented interval this reference denotes.
    pub fn resolve<S: Scalar>(&self, intervals: &[Interval<S>]) -> Interval<S> {
        let iv = &intervals[self.interval];
        if self.reversed {
            iv.reverse()
        } else {
            iv.clone()
        }
    }
}

pub fn to_line<S: Scalar>(i: &Interval<S>) -> Line3<S> {
    Line3::graph(i.b().clone(), i.d().clone(), i.a().clone(), i.c().clone())
}

fn graph_parts<S: Scalar>(l: &Line3<S>) -> Result<(S, S, S, S)> {
    if l.dir().z.is_zero() {
        return Err(Error::ParallelToXyPlane);
    }
    let c = l.canonical();
    Ok((c.base().x.clone(), c.base().y.clone(), c.dir().x.clone(), c.dir().y.clone()))
}

/// Inverse of [`to_line`] on lines not parallel to the xy-plane.
pub fn from_line<S: Scalar>(l: &Line3<S>) -> Result<Interval<S>> {
    let (x0, y0, dx, dy) = graph_parts(l)?;
    Interval::new(dx, x0, dy, y0)
}

/// `(b, -a, 0) + t(c, d, 1)`: meeting lines correspond to the left
/// orthodiagonal equation.
pub fn to_line_perp<S: Scalar>(i: &Interval<S>) -> Line3<S> {
    Line3::graph(i.b().clone(), -i.a().clone(), i.c().clone(), i.d().clone())
}

pub fn from_line_perp<S: Scalar>(l: &Line3<S>) -> Result<Interval<S>> {
    let (x0, y0, dx, dy) = graph_parts(l)?;
    Interval::new(-y0, x0, dx, dy)
}

/// `(b, d, 0) + t(a, rho c, 1)`: meeting lines correspond to the left
/// ratio equation.
pub fn to_line_ratio<S: Scalar>(i: &Interval<S>, rho: &S) -> Result<Line3<S>> {
    if rho.is_zero() {
        return Err(Error::ZeroRatio);
    }
    Ok(Line3::graph(
        i.b().clone(),
        i.d().clone(),
        i.a().clone(),
        rho.clone() * i.c().clone(),
    ))
}

pub fn from_line_ratio<S: Scalar>(l: &Line3<S>, rho: &S) -> Result<Interval<S>> {
    if rho.is_zero() {
        return Err(Error::ZeroRatio);
    }
    let (x0, y0, dx, dy) = graph_parts(l)?;
    Interval::new(dx, x0, dy / rho.clone(), y0)
}

/// Images of every interval followed by the images of every reverse.
pub fn line_set<S: Scalar>(intervals: &[Interval<S>]) -> Result<Vec<Line3<S>>> {
    ensure_distinct(intervals)?;
    Ok(intervals
        .iter()
        .map(to_line)
        .chain(intervals.iter().map(|i| to_line(&i.reverse())))
        .collect())
}

/// Position `k` of [`line_set`] as a [`LineRef`].
pub fn line_set_ref(n: usize, k: usize) -> LineRef {
    if k < n {
        LineRef::forward(k)
    } else {
        LineRef::reversed(k - n)
    }
}

/// A pair among intervals and reverses with equal `(a,c)` but different
/// `(b,d)`: their lines are parallel and meet only at infinity.
pub fn find_exceptional_pair<S: Scalar>(intervals: &[Interval<S>]) -> Option<(LineRef, LineRef)> {
    let n = intervals.len();
    let oriented: Vec<Interval<S>> = (0..2 * n).map(|k| line_set_ref(n, k).resolve(intervals)).collect();
    let exceptional = |x: &Interval<S>, y: &Interval<S>| {
        x.a().same(y.a()) && x.c().same(y.c()) && !(x.b().same(y.b()) && x.d().same(y.d()))
    };
    match S::MODE {
        crate::scalar::Mode::Exact => {
            // bucket by (a, c) so the scan stays near linear
            let mut buckets: std::collections::HashMap<[S::Key; 2], Vec<usize>> = Default::default();
            for (k, iv) in oriented.iter().enumerate() {
                buckets.entry([iv.a().key(), iv.c().key()]).or_default().push(k);
            }
            let mut found: Option<(usize, usize)> = None;
            for members in buckets.values() {
                for (x, &p) in members.iter().enumerate() {
                    for &r in &members[x + 1..] {
                        if exceptional(&oriented[p], &oriented[r]) {
                            let pair = (p.min(r), p.max(r));
                            if found.is_none_or(|f| pair < f) {
                                found = Some(pair);
                            }
                        }
                    }
                }
            }
            found.map(|(p, r)| (line_set_ref(n, p), line_set_ref(n, r)))
        }
        crate::scalar::Mode::Float => {
            for p in 0..2 * n {
                for r in p + 1..2 * n {
                    if exceptional(&oriented[p], &oriented[r]) {
                        return Some((line_set_ref(n, p), line_set_ref(n, r)));
                    }
                }
            }
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct I2lReport {
    pub n: usize,
    /// Trapezoid pairs counted with multiplicity.
    pub trapezoids: u64,
    /// Unordered pairs of positions in the line set whose lines meet.
    pub intersecting_pairs: u64,
    pub holds: bool,
}

/// Checks `2 T = P - N`. Positions holding the same line (an interval and
/// the reverse of another) count as meeting.
pub fn verify_i2l<S: Scalar>(intervals: &[Interval<S>]) -> Result<I2lReport> {
    let lines = line_set(intervals)?;
    if let Some((first, second)) = find_exceptional_pair(intervals) {
        return Err(Error::ExceptionalPair { first, second });
    }
    let n = intervals.len();
    let trapezoids: u64 = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .map(|j| trapezoid_relation(&intervals[i], &intervals[j]).map(|r| r.multiplicity() as u64))
                .sum::<Result<u64>>()
        })
        .sum::<Result<u64>>()?;
    let intersecting_pairs: u64 = (0..lines.len())
        .into_par_iter()
        .map(|p| {
            (p + 1..lines.len())
                .filter(|&r| {
                    matches!(
                        line_intersect(&lines[p], &lines[r]),
                        LineIntersection::Point(_) | LineIntersection::Identical
                    )
                })
                .count() as u64
        })
        .sum();
    Ok(I2lReport {
        n,
        trapezoids,
        intersecting_pairs,
        holds: 2 * trapezoids + n as u64 == intersecting_pairs,
    })
}

/// Rotation of the plane by `(cos, sin)` with `cos² + sin² = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarRotation<S> {
    cos: S,
    sin: S,
}

impl<S: Scalar> PlanarRotation<S> {
    pub fn new(cos: S, sin: S) -> Result<Self> {
        if !(cos.square() + sin.square()).same(&S::one()) {
            return Err(Error::InvalidRotation("cos² + sin² must equal 1"));
        }
        Ok(PlanarRotation { cos, sin })
    }

    pub fn identity() -> Self {
        PlanarRotation {
            cos: S::one(),
            sin: S::zero(),
        }
    }

    /// Rational point `((1 - t²)/(1 + t²), 2t/(1 + t²))` of the unit circle,
    /// i.e. the rotation by `2 atan(t)`.
    pub fn from_half_angle_tan(t: &S) -> Self {
        let den = S::one() + t.square();
        PlanarRotation {
            cos: (S::one() - t.square()) / den.clone(),
            sin: S::from_int(2) * t.clone() / den,
        }
    }

    pub fn from_angle(radians: f64) -> Option<Self> {
        Some(PlanarRotation {
            cos: S::from_f64(radians.cos())?,
            sin: S::from_f64(radians.sin())?,
        })
    }

    pub fn cos(&self) -> &S {
        &self.cos
    }

    pub fn sin(&self) -> &S {
        &self.sin
    }

    pub fn is_identity(&self) -> bool {
        self.cos.same(&S::one()) && self.sin.is_zero()
    }

    pub fn inverse(&self) -> Self {
        PlanarRotation {
            cos: self.cos.clone(),
            sin: -self.sin.clone(),
        }
    }

    pub fn apply(&self, p: &Point2<S>) -> Point2<S> {
        Point2::new(
            self.cos.clone() * p.x.clone() - self.sin.clone() * p.y.clone(),
            self.sin.clone() * p.x.clone() + self.cos.clone() * p.y.clone(),
        )
    }

    pub fn apply_interval(&self, i: &Interval<S>) -> Interval<S> {
        Interval::from_points(self.apply(&i.initial()), self.apply(&i.terminal()))
            .expect("rotations preserve positive length")
    }
}

/// Rotates all intervals by one rational rotation so that no exceptional
/// parallel pair remains. Returns the identity when the input is already
/// generic; otherwise draws tan-half-angle parameters from a seeded stream
/// until the finitely many bad angles are avoided.
pub fn generic_rotation<S: Scalar>(intervals: &[Interval<S>], seed: u64) -> (Vec<Interval<S>>, PlanarRotation<S>) {
    if find_exceptional_pair(intervals).is_none() {
        return (intervals.to_vec(), PlanarRotation::identity());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let t = S::from_frac(rng.gen_range(1..=97), rng.gen_range(1..=89));
        let rot = PlanarRotation::from_half_angle_tan(&t);
        let rotated: Vec<_> = intervals.iter().map(|i| rot.apply_interval(i)).collect();
        if find_exceptional_pair(&rotated).is_none() {
            return (rotated, rot);
        }
    }
}

/// Image of the interval under translation of its line by `(p, q, r)`:
/// `(a, b + p - r a; c, d + q - r c)`.
pub fn translate_action<S: Scalar>(i: &Interval<S>, p: &S, q: &S, r: &S) -> Result<Interval<S>> {
    let (a, b, c, d) = (i.a().clone(), i.b().clone(), i.c().clone(), i.d().clone());
    Interval::new(
        a.clone(),
        b + p.clone() - r.clone() * a,
        c.clone(),
        d + q.clone() - r.clone() * c,
    )
}

/// Image of the interval under rotation of its line about the x-axis.
pub fn rotate_x_action<S: Scalar>(i: &Interval<S>, rot: &PlanarRotation<S>) -> Result<Interval<S>> {
    let (a, b, c, d) = (i.a().clone(), i.b().clone(), i.c().clone(), i.d().clone());
    let (cs, sn) = (rot.cos().clone(), rot.sin().clone());
    let den = c.clone() * sn.clone() + cs.clone();
    if den.is_zero() {
        return Err(Error::ImageParallelToXyPlane);
    }
    Interval::new(
        a.clone() / den.clone(),
        ((b.clone() * c.clone() - a * d.clone()) * sn.clone() + b * cs.clone()) / den.clone(),
        (c * cs - sn) / den.clone(),
        d / den,
    )
}

/// Proper rigid motion `x ↦ R x + t` of R³.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidMotion3<S> {
    rotation: [[S; 3]; 3],
    translation: Vec3<S>,
}

impl<S: Scalar> RigidMotion3<S> {
    pub fn new(rotation: [[S; 3]; 3], translation: Vec3<S>) -> Result<Self> {
        for r in 0..3 {
            for s in 0..3 {
                let dot = (0..3).fold(S::zero(), |acc, k| acc + rotation[r][k].clone() * rotation[s][k].clone());
                let want = if r == s { S::one() } else { S::zero() };
                if !dot.same(&want) {
                    return Err(Error::InvalidRotation("matrix is not orthogonal"));
                }
            }
        }
        if !crate::linalg::det3(&rotation).same(&S::one()) {
            return Err(Error::InvalidRotation("determinant must be 1"));
        }
        Ok(RigidMotion3 { rotation, translation })
    }

    pub fn identity() -> Self {
        Self::translation(S::zero(), S::zero(), S::zero())
    }

    pub fn translation(p: S, q: S, r: S) -> Self {
        let (o, z) = (S::one(), S::zero());
        RigidMotion3 {
            rotation: [
                [o.clone(), z.clone(), z.clone()],
                [z.clone(), o.clone(), z.clone()],
                [z.clone(), z, o],
            ],
            translation: Vec3::new(p, q, r),
        }
    }

    pub fn rotation_x(rot: &PlanarRotation<S>) -> Self {
        let (c, s, o, z) = (rot.cos().clone(), rot.sin().clone(), S::one(), S::zero());
        RigidMotion3 {
            rotation: [
                [o, z.clone(), z.clone()],
                [z.clone(), c.clone(), -s.clone()],
                [z.clone(), s, c],
            ],
            translation: Vec3::zero(),
        }
    }

    pub fn rotation_z(rot: &PlanarRotation<S>) -> Self {
        let (c, s, o, z) = (rot.cos().clone(), rot.sin().clone(), S::one(), S::zero());
        RigidMotion3 {
            rotation: [
                [c.clone(), -s.clone(), z.clone()],
                [s, c, z.clone()],
                [z.clone(), z, o],
            ],
            translation: Vec3::zero(),
        }
    }

    pub fn rotation(&self) -> &[[S; 3]; 3] {
        &self.rotation
    }

    pub fn translation_vector(&self) -> &Vec3<S> {
        &self.translation
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &Self) -> Self {
        let rotation = std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                (0..3).fold(S::zero(), |acc, k| {
                    acc + other.rotation[r][k].clone() * self.rotation[k][c].clone()
                })
            })
        });
        let translation = other.rotate(&self.translation).add(&other.translation);
        RigidMotion3 { rotation, translation }
    }

    fn rotate(&self, v: &Vec3<S>) -> Vec3<S> {
        let row = |r: usize| {
            self.rotation[r][0].clone() * v.x.clone()
                + self.rotation[r][1].clone() * v.y.clone()
                + self.rotation[r][2].clone() * v.z.clone()
        };
        Vec3::new(row(0), row(1), row(2))
    }

    pub fn apply_point(&self, p: &Vec3<S>) -> Vec3<S> {
        self.rotate(p).add(&self.translation)
    }

    pub fn apply_line(&self, l: &Line3<S>) -> Line3<S> {
        Line3::new(self.apply_point(l.base()), self.rotate(l.dir())).expect("rotations keep directions nonzero")
    }

    /// `Some((cos, sin))` when the rotation part is a rotation about the x-axis.
    pub fn as_x_rotation(&self) -> Option<PlanarRotation<S>> {
        let m = &self.rotation;
        let (o, z) = (S::one(), S::zero());
        let axis_fixed = m[0][0].same(&o)
            && m[0][1].same(&z)
            && m[0][2].same(&z)
            && m[1][0].same(&z)
            && m[2][0].same(&z);
        axis_fixed.then(|| PlanarRotation {
            cos: m[1][1].clone(),
            sin: m[2][1].clone(),
        })
    }
}
