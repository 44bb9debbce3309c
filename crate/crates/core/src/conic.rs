//! Plane conics `q1 x² + q2 xy + q3 y² + q4 x + q5 y + q6 = 0`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{det3, normalize_first_nonzero, nullspace};
use crate::scalar::{Mode, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConicClass {
    Ellipse,
    Parabola,
    Hyperbola,
    LinePair,
    ParallelLinePair,
    DoubleLine,
    Point,
    Empty,
    /// Degree one: the quadratic part vanishes.
    Line,
}

impl ConicClass {
    pub fn name(self) -> &'static str {
        match self {
            ConicClass::Ellipse => "ellipse",
            ConicClass::Parabola => "parabola",
            ConicClass::Hyperbola => "hyperbola",
            ConicClass::LinePair => "line-pair",
            ConicClass::ParallelLinePair => "parallel-line-pair",
            ConicClass::DoubleLine => "double-line",
            ConicClass::Point => "point",
            ConicClass::Empty => "empty",
            ConicClass::Line => "line",
        }
    }
}

/// Classifies by the sign of the 3×3 determinant, the quadratic-part
/// discriminant and (for the rank-deficient parabolic case) the sum of the
/// 2×2 principal minors containing the constant term.
pub fn conic_classify<S: Scalar>(coeffs: &[S; 6]) -> Result<ConicClass> {
    if coeffs.iter().all(Scalar::is_zero) {
        return Err(Error::AllZeroCoefficients);
    }
    let [q1, q2, q3, q4, q5, q6] = coeffs.clone();
    if q1.is_zero() && q2.is_zero() && q3.is_zero() {
        return Ok(if q4.is_zero() && q5.is_zero() {
            ConicClass::Empty
        } else {
            ConicClass::Line
        });
    }
    let half = S::from_frac(1, 2);
    let (h2, h4, h5) = (q2.clone() * half.clone(), q4.clone() * half.clone(), q5.clone() * half);
    let m = [
        [q1.clone(), h2.clone(), h4.clone()],
        [h2.clone(), q3.clone(), h5.clone()],
        [h4.clone(), h5.clone(), q6.clone()],
    ];
    let det = det3(&m);
    // delta = q1 q3 - q2²/4, the negated quarter discriminant
    let delta = q1.clone() * q3.clone() - h2.square();
    let class = if !det.is_zero() {
        match delta.signum() {
            1 => {
                if (q1.clone() * det).is_negative() {
                    ConicClass::Ellipse
                } else {
                    ConicClass::Empty
                }
            }
            -1 => ConicClass::Hyperbola,
            _ => ConicClass::Parabola,
        }
    } else {
        match delta.signum() {
            -1 => ConicClass::LinePair,
            1 => ConicClass::Point,
            _ => {
                let k = (q1 * q6.clone() - h4.square()) + (q3 * q6 - h5.square());
                match k.signum() {
                    -1 => ConicClass::ParallelLinePair,
                    0 => ConicClass::DoubleLine,
                    _ => ConicClass::Empty,
                }
            }
        }
    };
    Ok(class)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conic<S> {
    coeffs: [S; 6],
    class: ConicClass,
}

impl<S: Scalar> Conic<S> {
    pub fn new(coeffs: [S; 6]) -> Result<Self> {
        let class = conic_classify(&coeffs)?;
        Ok(Conic { coeffs, class })
    }

    pub fn coeffs(&self) -> &[S; 6] {
        &self.coeffs
    }

    pub fn class(&self) -> ConicClass {
        self.class
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        let [q1, q2, q3, q4, q5, q6] = self.coeffs.clone();
        q1 * x.square() + q2 * x.clone() * y.clone() + q3 * y.square() + q4 * x.clone() + q5 * y.clone() + q6
    }

    pub fn contains(&self, x: &S, y: &S) -> bool {
        self.eval(x, y).is_zero()
    }

    /// Coefficients scaled so the first nonzero one is 1.
    pub fn normalized(&self) -> Self {
        Conic {
            coeffs: normalize_first_nonzero(&self.coeffs),
            class: self.class,
        }
    }

    /// Proportional coefficient vectors, i.e. the same zero set description.
    pub fn proportional_to(&self, other: &[S; 6]) -> bool {
        let a = normalize_first_nonzero(&self.coeffs);
        let b = normalize_first_nonzero(other);
        a.iter().zip(&b).all(|(x, y)| x.same(y))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConicFit<S> {
    /// Unique conic through the points. `residual` is the largest
    /// |value| over the inputs after normalisation (always 0 in exact mode).
    Conic { conic: Conic<S>, residual: f64 },
    /// The incidence system has a nullspace of the given dimension (≠ 1).
    Degenerate { nullspace_dim: usize },
}

fn conic_row<S: Scalar>(x: &S, y: &S) -> Vec<S> {
    vec![x.square(), x.clone() * y.clone(), y.square(), x.clone(), y.clone(), S::one()]
}

/// Conic through at least five points via the nullspace of the incidence
/// system. Approximate mode takes the smallest right singular vector and
/// counts singular values below `1e-9 · σ_max` as the nullspace dimension.
pub fn fit_conic<S: Scalar>(points: &[(S, S)]) -> Result<ConicFit<S>> {
    if points.len() < 5 {
        return Err(Error::TooFewPoints {
            needed: 5,
            got: points.len(),
        });
    }
    let rows: Vec<Vec<S>> = points.iter().map(|(x, y)| conic_row(x, y)).collect();
    let coeffs: [S; 6] = match S::MODE {
        Mode::Exact => {
            let ns = nullspace(&rows, 6);
            if ns.len() != 1 {
                return Ok(ConicFit::Degenerate {
                    nullspace_dim: ns.len(),
                });
            }
            let v = &ns[0];
            std::array::from_fn(|k| v[k].clone())
        }
        Mode::Float => match smallest_singular_direction(&rows, 6) {
            (1, v) => std::array::from_fn(|k| S::from_f64(v[k]).unwrap_or_else(S::zero)),
            (dim, _) => return Ok(ConicFit::Degenerate { nullspace_dim: dim }),
        },
    };
    let conic = Conic::new(normalize_first_nonzero(&coeffs))?.normalized();
    let residual = points
        .iter()
        .map(|(x, y)| conic.eval(x, y).to_f64().abs())
        .fold(0.0, f64::max);
    Ok(ConicFit::Conic { conic, residual })
}

/// Returns `(numerical nullity, right singular vector of the smallest singular value)`.
pub(crate) fn smallest_singular_direction<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> (usize, Vec<f64>) {
    let nrows = rows.len().max(ncols);
    let m = DMatrix::from_fn(nrows, ncols, |r, c| rows.get(r).map_or(0.0, |row| row[c].to_f64()));
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sv = &svd.singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    let tol = crate::scalar::DEFAULT_TOLERANCE * max.max(1.0);
    let nullity = sv.iter().filter(|&&s| s <= tol).count();
    let (idx, _) = sv
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    (nullity, v_t.row(idx).iter().copied().collect())
}
