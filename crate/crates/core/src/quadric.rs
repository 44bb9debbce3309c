//! Quadric surfaces in R³ and the quadric through three skew lines.
//!
//! Coefficients are ordered `x², y², z², xy, xz, yz, x, y, z, 1`.

use crate::error::{Error, Result};
use crate::linalg::{inertia, normalize_first_nonzero, nullspace, Inertia};
use crate::scalar::{Mode, Scalar};
use crate::space::{Line3, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuadricClass {
    HyperboloidOneSheet,
    HyperbolicParaboloid,
    Cone,
    PlanePair,
    OtherNonDoublyRuled,
    Degenerate,
}

impl QuadricClass {
    pub fn name(self) -> &'static str {
        match self {
            QuadricClass::HyperboloidOneSheet => "hyperboloid-one-sheet",
            QuadricClass::HyperbolicParaboloid => "hyperbolic-paraboloid",
            QuadricClass::Cone => "cone",
            QuadricClass::PlanePair => "plane-pair",
            QuadricClass::OtherNonDoublyRuled => "other-nondoubly-ruled",
            QuadricClass::Degenerate => "degenerate",
        }
    }

    /// Nonplanar doubly ruled surfaces, i.e. the ones carrying reguli.
    pub fn is_doubly_ruled(self) -> bool {
        matches!(self, QuadricClass::HyperboloidOneSheet | QuadricClass::HyperbolicParaboloid)
    }
}

/// Symmetric 4×4 matrix of a coefficient vector.
fn matrix<S: Scalar>(c: &[S; 10]) -> Vec<Vec<S>> {
    let h = |k: usize| c[k].clone() * S::from_frac(1, 2);
    vec![
        vec![c[0].clone(), h(3), h(4), h(6)],
        vec![h(3), c[1].clone(), h(5), h(7)],
        vec![h(4), h(5), c[2].clone(), h(8)],
        vec![h(6), h(7), h(8), c[9].clone()],
    ]
}

/// Classifies from the inertia of the full 4×4 matrix and of its leading
/// 3×3 (quadratic) block.
pub fn quadric_classify<S: Scalar>(coeffs: &[S; 10]) -> Result<QuadricClass> {
    if coeffs.iter().all(Scalar::is_zero) {
        return Err(Error::AllZeroCoefficients);
    }
    let full = matrix(coeffs);
    let block: Vec<Vec<S>> = full[..3].iter().map(|r| r[..3].to_vec()).collect();
    let q: Inertia = inertia(&full);
    let e: Inertia = inertia(&block);
    let class = match q.rank() {
        4 if q.unsigned() == (2, 2) => match e.rank() {
            3 => QuadricClass::HyperboloidOneSheet,
            _ => QuadricClass::HyperbolicParaboloid,
        },
        4 => QuadricClass::OtherNonDoublyRuled,
        3 if e.rank() == 3 && e.positive > 0 && e.negative > 0 => QuadricClass::Cone,
        3 => QuadricClass::OtherNonDoublyRuled,
        2 if q.unsigned() == (1, 1) && e.rank() > 0 => QuadricClass::PlanePair,
        _ => QuadricClass::Degenerate,
    };
    Ok(class)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadric<S> {
    coeffs: [S; 10],
    class: QuadricClass,
}

impl<S: Scalar> Quadric<S> {
    pub fn new(coeffs: [S; 10]) -> Result<Self> {
        let class = quadric_classify(&coeffs)?;
        Ok(Quadric { coeffs, class })
    }

    pub fn coeffs(&self) -> &[S; 10] {
        &self.coeffs
    }

    pub fn class(&self) -> QuadricClass {
        self.class
    }

    pub fn eval(&self, p: &Vec3<S>) -> S {
        let c = &self.coeffs;
        let (x, y, z) = (p.x.clone(), p.y.clone(), p.z.clone());
        c[0].clone() * x.square()
            + c[1].clone() * y.square()
            + c[2].clone() * z.square()
            + c[3].clone() * x.clone() * y.clone()
            + c[4].clone() * x.clone() * z.clone()
            + c[5].clone() * y.clone() * z.clone()
            + c[6].clone() * x
            + c[7].clone() * y
            + c[8].clone() * z
            + c[9].clone()
    }

    /// Coefficients of `t², t, 1` in the restriction to `base + t dir`.
    pub fn restrict(&self, line: &Line3<S>) -> [S; 3] {
        let rows = restriction_rows(line);
        std::array::from_fn(|k| {
            rows[k]
                .iter()
                .zip(&self.coeffs)
                .fold(S::zero(), |acc, (m, c)| acc + m.clone() * c.clone())
        })
    }

    pub fn contains_line(&self, line: &Line3<S>) -> bool {
        self.restrict(line).iter().all(Scalar::is_zero)
    }

    pub fn normalized(&self) -> Self {
        Quadric {
            coeffs: normalize_first_nonzero(&self.coeffs),
            class: self.class,
        }
    }

    pub fn key(&self) -> Vec<S::Key> {
        normalize_first_nonzero(&self.coeffs).iter().map(Scalar::key).collect()
    }

    pub fn proportional_to(&self, other: &[S; 10]) -> bool {
        let a = normalize_first_nonzero(&self.coeffs);
        let b = normalize_first_nonzero(other);
        a.iter().zip(&b).all(|(x, y)| x.same(y))
    }
}

pub fn line_on_quadric<S: Scalar>(quadric: &Quadric<S>, line: &Line3<S>) -> bool {
    quadric.contains_line(line)
}

/// For each monomial, its `(t², t, 1)` coefficients along the line, transposed
/// into three rows of ten.
fn restriction_rows<S: Scalar>(line: &Line3<S>) -> [Vec<S>; 3] {
    let p = line.base();
    let v = line.dir();
    // linear forms as (constant, slope)
    let x = (p.x.clone(), v.x.clone());
    let y = (p.y.clone(), v.y.clone());
    let z = (p.z.clone(), v.z.clone());
    let prod = |a: &(S, S), b: &(S, S)| -> [S; 3] {
        [
            a.1.clone() * b.1.clone(),
            a.0.clone() * b.1.clone() + a.1.clone() * b.0.clone(),
            a.0.clone() * b.0.clone(),
        ]
    };
    let lin = |a: &(S, S)| -> [S; 3] { [S::zero(), a.1.clone(), a.0.clone()] };
    let monomials: [[S; 3]; 10] = [
        prod(&x, &x),
        prod(&y, &y),
        prod(&z, &z),
        prod(&x, &y),
        prod(&x, &z),
        prod(&y, &z),
        lin(&x),
        lin(&y),
        lin(&z),
        [S::zero(), S::zero(), S::one()],
    ];
    std::array::from_fn(|k| monomials.iter().map(|m| m[k].clone()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadricFit<S> {
    Quadric(Quadric<S>),
    /// The 9×10 containment system has a nullspace of this dimension (≠ 1).
    Degenerate { nullspace_dim: usize },
}

/// The unique quadric containing three lines, when the containment system
/// has a one-dimensional nullspace (three pairwise skew lines).
pub fn quadric_through_skew_lines<S: Scalar>(l1: &Line3<S>, l2: &Line3<S>, l3: &Line3<S>) -> Result<QuadricFit<S>> {
    if l1.same(l2) || l1.same(l3) || l2.same(l3) {
        return Err(Error::CoincidentLines);
    }
    let rows: Vec<Vec<S>> = [l1, l2, l3].iter().flat_map(|l| restriction_rows(l)).collect();
    let coeffs: [S; 10] = match S::MODE {
        Mode::Exact => {
            let ns = nullspace(&rows, 10);
            if ns.len() != 1 {
                return Ok(QuadricFit::Degenerate {
                    nullspace_dim: ns.len(),
                });
            }
            std::array::from_fn(|k| ns[0][k].clone())
        }
        Mode::Float => match crate::conic::smallest_singular_direction(&rows, 10) {
            (1, v) => std::array::from_fn(|k| S::from_f64(v[k]).unwrap_or_else(S::zero)),
            (dim, _) => return Ok(QuadricFit::Degenerate { nullspace_dim: dim }),
        },
    };
    Ok(QuadricFit::Quadric(Quadric::new(normalize_first_nonzero(&coeffs))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi, Exact};

    fn coeffs(v: [Exact; 10]) -> [Exact; 10] {
        v
    }

    fn hyperboloid() -> [Exact; 10] {
        // x² + y² - z² - 1
        [qi(1), qi(1), qi(-1), qi(0), qi(0), qi(0), qi(0), qi(0), qi(0), qi(-1)]
    }

    #[test]
    fn classify_standard_forms() {
        assert_eq!(quadric_classify(&hyperboloid()).unwrap(), QuadricClass::HyperboloidOneSheet);
        // z = x² - y²
        let hp = coeffs([qi(1), qi(-1), qi(0), qi(0), qi(0), qi(0), qi(0), qi(0), qi(-1), qi(0)]);
        assert_eq!(quadric_classify(&hp).unwrap(), QuadricClass::HyperbolicParaboloid);
        // two sheets
        let two = coeffs([qi(1), qi(1), qi(-1), qi(0), qi(0), qi(0), qi(0), qi(0), qi(0), qi(1)]);
        assert_eq!(quadric_classify(&two).unwrap(), QuadricClass::OtherNonDoublyRuled);
        // x² + y² - z²
        let cone = coeffs([qi(1), qi(1), qi(-1), qi(0), qi(0), qi(0), qi(0), qi(0), qi(0), qi(0)]);
        assert_eq!(quadric_classify(&cone).unwrap(), QuadricClass::Cone);
        // xy
        let planes = coeffs([qi(0), qi(0), qi(0), qi(1), qi(0), qi(0), qi(0), qi(0), qi(0), qi(0)]);
        assert_eq!(quadric_classify(&planes).unwrap(), QuadricClass::PlanePair);
        // x
        let plane = coeffs([qi(0), qi(0), qi(0), qi(0), qi(0), qi(0), qi(1), qi(0), qi(0), qi(0)]);
        assert_eq!(quadric_classify(&plane).unwrap(), QuadricClass::Degenerate);
        // ellipsoid
        let ell = coeffs([qi(1), qi(2), qi(3), qi(0), qi(0), qi(0), qi(0), qi(0), qi(0), qi(-1)]);
        assert_eq!(quadric_classify(&ell).unwrap(), QuadricClass::OtherNonDoublyRuled);
    }

    #[test]
    fn all_zero_is_error() {
        assert_eq!(quadric_classify(&[0; 10].map(qi)), Err(Error::AllZeroCoefficients));
    }

    #[test]
    fn paraboloid_contains_ruling_line() {
        // z = x² - y²/4
        let hp = Quadric::new([qi(1), q(-1, 4), qi(0), qi(0), qi(0), qi(0), qi(0), qi(0), qi(-1), qi(0)]).unwrap();
        let line = Line3::graph(q(1, 2), qi(-1), q(1, 2), qi(1));
        assert!(line_on_quadric(&hp, &line));
        let off = Line3::graph(q(1, 2), qi(-1), q(1, 2), qi(2));
        assert!(!line_on_quadric(&hp, &off));
    }

    #[test]
    fn quadric_through_hyperboloid_ruling() {
        let lines = [
            Line3::graph(qi(0), qi(-1), qi(1), qi(0)),
            Line3::graph(qi(1), qi(0), qi(0), qi(1)),
            Line3::graph(qi(0), qi(1), qi(-1), qi(0)),
        ];
        match quadric_through_skew_lines(&lines[0], &lines[1], &lines[2]).unwrap() {
            QuadricFit::Quadric(qd) => {
                assert!(qd.proportional_to(&hyperboloid()));
                assert_eq!(qd.class(), QuadricClass::HyperboloidOneSheet);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn concurrent_lines_are_degenerate() {
        let lines = [
            Line3::graph(qi(0), qi(0), qi(1), qi(0)),
            Line3::graph(qi(0), qi(0), qi(0), qi(1)),
            Line3::graph(qi(0), qi(0), qi(1), qi(1)),
        ];
        match quadric_through_skew_lines(&lines[0], &lines[1], &lines[2]).unwrap() {
            QuadricFit::Degenerate { nullspace_dim } => assert!(nullspace_dim > 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn classification_scale_invariant() {
        for k in [qi(-1), q(3, 7), q(-9, 2)] {
            let scaled = hyperboloid().map(|x| x * k.clone());
            assert_eq!(quadric_classify(&scaled).unwrap(), QuadricClass::HyperboloidOneSheet);
        }
    }
}
