//! Constructors for the configuration families: parallel-line pullbacks,
//! pencils, both rulings of the hyperboloid and paraboloid, the two
//! families on `xy = z² + z(u+1) + u + vx`, their images under
//! translations and rotations, and pullbacks through the perpendicular and
//! ratio maps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::correspondence::{
    from_line, from_line_perp, from_line_ratio, rotate_x_action, to_line, translate_action, PlanarRotation,
    RigidMotion3,
};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::quadric::Quadric;
use crate::scalar::Scalar;
use crate::space::{Line3, Plane3};

/// Which ruling(s) of a doubly ruled surface to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Which {
    Family1,
    Family2,
    Both,
}

impl Which {
    fn includes(self, family: u8) -> bool {
        matches!((self, family), (Which::Both, _) | (Which::Family1, 1) | (Which::Family2, 2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DropReason {
    /// Same four-tuple as an earlier member.
    Duplicate,
    /// Initial and terminal point coincide.
    ZeroLength,
    /// The transformed line is parallel to the xy-plane.
    ParallelToXyPlane,
}

/// Generated intervals plus the sample positions that produced nothing.
#[derive(Clone, PartialEq)]
pub struct Family<S> {
    pub intervals: Vec<Interval<S>>,
    /// Ruling of each member: 1 or 2, or 0 for single-family generators.
    pub labels: Vec<u8>,
    /// `(sample position, reason)`.
    pub dropped: Vec<(usize, DropReason)>,
}

impl<S: Scalar> std::fmt::Debug for Family<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Family")
            .field("intervals", &self.intervals)
            .field("labels", &self.labels)
            .field("dropped", &self.dropped)
            .finish()
    }
}

impl<S: Scalar> Family<S> {
    fn new() -> Self {
        Family {
            intervals: Vec::new(),
            labels: Vec::new(),
            dropped: Vec::new(),
        }
    }

    fn push(&mut self, sample: usize, label: u8, candidate: Result<Interval<S>>) {
        match candidate {
            Ok(iv) if self.intervals.iter().any(|j| j.same(&iv)) => self.dropped.push((sample, DropReason::Duplicate)),
            Ok(iv) => {
                self.intervals.push(iv);
                self.labels.push(label);
            }
            Err(Error::ZeroLength) => self.dropped.push((sample, DropReason::ZeroLength)),
            Err(_) => self.dropped.push((sample, DropReason::ParallelToXyPlane)),
        }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Members carrying the given label.
    pub fn ruling(&self, label: u8) -> Vec<Interval<S>> {
        self.intervals
            .iter()
            .zip(&self.labels)
            .filter(|(_, &l)| l == label)
            .map(|(i, _)| i.clone())
            .collect()
    }
}

fn nonzero<S: Scalar>(v: &S, name: &str) -> Result<()> {
    if v.is_zero() {
        return Err(Error::InvalidParameter(format!("{name} must be nonzero")));
    }
    Ok(())
}

/// Rational points on the unit circle, `t ↦ ((1-t²)/(1+t²), 2t/(1+t²))`.
pub fn circle_points<S: Scalar>(ts: &[S]) -> Vec<PlanarRotation<S>> {
    ts.iter().map(PlanarRotation::from_half_angle_tan).collect()
}

/// `k` distinct rational half-angle tangents spread over the circle.
pub fn spread_tangents<S: Scalar>(k: usize) -> Vec<S> {
    // t = tan(θ/2) for θ spread around the circle, rounded to small rationals
    (0..k)
        .map(|i| {
            let theta = std::f64::consts::TAU * (i as f64 + 0.5) / k as f64 - std::f64::consts::PI;
            let t = (theta / 2.0).tan();
            let den = 24i64;
            S::from_frac((t * den as f64).round() as i64, den)
        })
        .fold(Vec::new(), |mut acc: Vec<S>, t| {
            let mut t = t;
            while acc.iter().any(|s| s.same(&t)) {
                t = t + S::from_frac(1, 97);
            }
            acc.push(t);
            acc
        })
}

/// Intervals from a point on `y = m x + k1` to a point on `y = m x + k2`;
/// their lines all pass through `(k1, k2, -m)`.
pub fn gen_parallel_lines<S: Scalar>(m: &S, k1: &S, k2: &S, abscissae: &[(S, S)]) -> Result<Family<S>> {
    if k1.same(k2) {
        return Err(Error::InvalidParameter(
            "k1 and k2 must differ (equal intercepts give a collinear family)".into(),
        ));
    }
    let mut out = Family::new();
    for (s, (x1, x2)) in abscissae.iter().enumerate() {
        let y1 = m.clone() * x1.clone() + k1.clone();
        let y2 = m.clone() * x2.clone() + k2.clone();
        out.push(s, 0, Interval::new(x1.clone(), y1, x2.clone(), y2));
    }
    Ok(out)
}

/// Intervals with `A a + B c + C = 0` and `A b + B d + D = 0`, i.e. lines in
/// the plane `A x + B y + C z + D = 0`. Each sample is the free endpoint:
/// the initial point when `B ≠ 0`, otherwise the terminal point.
pub fn gen_pencil<S: Scalar>(a: &S, b: &S, c: &S, d: &S, samples: &[(S, S)]) -> Result<Family<S>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::VerticalPencil);
    }
    let mut out = Family::new();
    for (s, (x, y)) in samples.iter().enumerate() {
        let candidate = if !b.is_zero() {
            let tx = -(c.clone() + a.clone() * x.clone()) / b.clone();
            let ty = -(d.clone() + a.clone() * y.clone()) / b.clone();
            Interval::new(x.clone(), y.clone(), tx, ty)
        } else {
            Interval::new(-c.clone() / a.clone(), -d.clone() / a.clone(), x.clone(), y.clone())
        };
        out.push(s, 0, candidate);
    }
    Ok(out)
}

pub fn pencil_plane<S: Scalar>(a: &S, b: &S, c: &S, d: &S) -> Result<Plane3<S>> {
    Plane3::new(a.clone(), b.clone(), c.clone(), d.clone())
}

/// Both rulings of `x²/A² + y²/B² - z²/C² = 1` as intervals:
/// family 1 is `(A/C cos, A sin; B/C sin, -B cos)`, family 2 is
/// `(A/C cos, A sin; -B/C sin, B cos)`.
///
/// With `A = B` and `C = 1`, family 2 at angle `θ - π/2` is the reverse of
/// family 1 at `θ`.
pub fn gen_hyperboloid_rulings<S: Scalar>(
    a: &S,
    b: &S,
    c: &S,
    points: &[PlanarRotation<S>],
    which: Which,
) -> Result<Family<S>> {
    nonzero(a, "A")?;
    nonzero(b, "B")?;
    nonzero(c, "C")?;
    let mut out = Family::new();
    for family in [1u8, 2] {
        if !which.includes(family) {
            continue;
        }
        let sign = if family == 1 { S::one() } else { -S::one() };
        for (s, p) in points.iter().enumerate() {
            let (cs, sn) = (p.cos().clone(), p.sin().clone());
            let iv = Interval::new(
                a.clone() / c.clone() * cs.clone(),
                a.clone() * sn.clone(),
                sign.clone() * b.clone() / c.clone() * sn,
                -sign.clone() * b.clone() * cs,
            );
            out.push(s, family, iv);
        }
    }
    Ok(out)
}

/// `x²/A² + y²/B² - z²/C² - 1`.
pub fn hyperboloid_quadric<S: Scalar>(a: &S, b: &S, c: &S) -> Result<Quadric<S>> {
    let (o, z) = (S::one(), S::zero());
    Quadric::new([
        a.square().recip(),
        b.square().recip(),
        -c.square().recip(),
        z.clone(),
        z.clone(),
        z.clone(),
        z.clone(),
        z.clone(),
        z,
        -o,
    ])
}

/// Both rulings of `z = x²/A² - y²/B²`: family 1 is
/// `(Aλ/2, A/(2λ); Bλ/2, -B/(2λ))`, family 2 is
/// `(Aλ/2, A/(2λ); -Bλ/2, B/(2λ))`. Initial points lie on `y = A²/(4x)`,
/// terminal points on `y = -B²/(4x)`.
pub fn gen_paraboloid_rulings<S: Scalar>(a: &S, b: &S, lambdas: &[S], which: Which) -> Result<Family<S>> {
    nonzero(a, "A")?;
    nonzero(b, "B")?;
    if lambdas.iter().any(Scalar::is_zero) {
        return Err(Error::InvalidParameter("λ must be nonzero".into()));
    }
    let two = S::from_int(2);
    let mut out = Family::new();
    for family in [1u8, 2] {
        if !which.includes(family) {
            continue;
        }
        let sign = if family == 1 { S::one() } else { -S::one() };
        for (s, l) in lambdas.iter().enumerate() {
            let half = l.clone() / two.clone();
            let inv_half = (two.clone() * l.clone()).recip();
            let iv = Interval::new(
                a.clone() * half.clone(),
                a.clone() * inv_half.clone(),
                sign.clone() * b.clone() * half,
                -sign.clone() * b.clone() * inv_half,
            );
            out.push(s, family, iv);
        }
    }
    Ok(out)
}

/// `x²/A² - y²/B² - z`.
pub fn paraboloid_quadric<S: Scalar>(a: &S, b: &S) -> Result<Quadric<S>> {
    let z = S::zero();
    Quadric::new([
        a.square().recip(),
        -b.square().recip(),
        z.clone(),
        z.clone(),
        z.clone(),
        z.clone(),
        z.clone(),
        z.clone(),
        -S::one(),
        z,
    ])
}

/// The two families `(t, t; 1/t, u/t + v)` and `(t, u t; 1/t, v + 1/t)`,
/// whose lines lie on `xy = z² + z(u+1) + u + v x`. At `u = 1` the two
/// families coincide and the surface is a cone.
pub fn gen_subcase_ii<S: Scalar>(u: &S, v: &S, ts: &[S]) -> Result<(Family<S>, Family<S>)> {
    if ts.iter().any(Scalar::is_zero) {
        return Err(Error::InvalidParameter("t must be nonzero".into()));
    }
    let (mut f1, mut f2) = (Family::new(), Family::new());
    for (s, t) in ts.iter().enumerate() {
        let inv = t.recip();
        f1.push(
            s,
            1,
            Interval::new(t.clone(), t.clone(), inv.clone(), u.clone() * inv.clone() + v.clone()),
        );
        f2.push(
            s,
            2,
            Interval::new(t.clone(), u.clone() * t.clone(), inv.clone(), v.clone() + inv),
        );
    }
    Ok((f1, f2))
}

/// `xy - z² - (u+1) z - v x - u`.
pub fn subcase_ii_quadric<S: Scalar>(u: &S, v: &S) -> Result<Quadric<S>> {
    let z = S::zero();
    Quadric::new([
        z.clone(),
        z.clone(),
        -S::one(),
        S::one(),
        z.clone(),
        z.clone(),
        -v.clone(),
        z,
        -(u.clone() + S::one()),
        -u.clone(),
    ])
}

/// Moves every member's line by `motion`. Rotations about the x-axis and
/// translations use the closed-form induced maps; other rotations go
/// through the line, the matrix and back. Members whose image is parallel
/// to the xy-plane are dropped.
pub fn gen_transformed<S: Scalar>(intervals: &[Interval<S>], motion: &RigidMotion3<S>) -> Family<S> {
    let t = motion.translation_vector();
    let mut out = Family::new();
    for (s, iv) in intervals.iter().enumerate() {
        let image = match motion.as_x_rotation() {
            Some(rot) => rotate_x_action(iv, &rot).and_then(|r| translate_action(&r, &t.x, &t.y, &t.z)),
            None => from_line(&motion.apply_line(&to_line(iv))),
        };
        out.push(s, 0, image);
    }
    out
}

/// Intervals whose perpendicular-map lines are the given lines; lines of
/// different rulings of one regulus pull back to pairs satisfying the left
/// orthodiagonal equation.
pub fn gen_perp_pullback<S: Scalar>(lines: &[Line3<S>]) -> Family<S> {
    let mut out = Family::new();
    for (s, l) in lines.iter().enumerate() {
        out.push(s, 0, from_line_perp(l));
    }
    out
}

pub fn gen_ratio_pullback<S: Scalar>(lines: &[Line3<S>], rho: &S) -> Result<Family<S>> {
    nonzero(rho, "ρ")?;
    let mut out = Family::new();
    for (s, l) in lines.iter().enumerate() {
        out.push(s, 0, from_line_ratio(l, rho));
    }
    Ok(out)
}

/// `n` distinct intervals with coordinates `p/q`, `|p| ≤ max_num`,
/// `1 ≤ q ≤ max_den`, drawn from a seeded stream.
pub fn random_intervals<S: Scalar>(n: usize, seed: u64, max_num: i64, max_den: i64) -> Vec<Interval<S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| S::from_frac(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den));
    let mut out: Vec<Interval<S>> = Vec::with_capacity(n);
    while out.len() < n {
        let (a, b, c, d) = (draw(&mut rng), draw(&mut rng), draw(&mut rng), draw(&mut rng));
        if let Ok(iv) = Interval::new(a, b, c, d) {
            if !out.iter().any(|j| j.same(&iv)) {
                out.push(iv);
            }
        }
    }
    out
}
