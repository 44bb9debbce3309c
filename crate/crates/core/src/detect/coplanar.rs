use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::lines::UniqueLines;
use crate::correspondence::PlanarRotation;
use crate::error::{Error, Result};
use crate::interval::Point2;
use crate::scalar::{Mode, Scalar};
use crate::space::{Line3, Plane3};

/// What a plane `A x + B y + C z + D = 0` says about the intervals whose
/// lines it contains: `A a + B c + C = 0` and `A b + B d + D = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pencil<S> {
    /// Every interval's supporting line passes through `center`, and a
    /// homothety about it with ratio `-A/B` takes terminal points to
    /// initial points.
    Center {
        center: Point2<S>,
        /// `(B, A)`.
        ratio: (S, S),
        /// `A B > 0`: the center lies strictly inside every interval.
        interior: bool,
        /// `A B = 0`: the center is an endpoint of every interval.
        endpoint: bool,
    },
    /// `A + B = 0`: every interval is the same translation vector.
    Translation { vector: Point2<S> },
}

impl<S: Scalar> Pencil<S> {
    /// The same pencil in the frame before `rot` was applied.
    pub fn pull_back(&self, rot: &PlanarRotation<S>) -> Self {
        let inv = rot.inverse();
        match self {
            Pencil::Center {
                center,
                ratio,
                interior,
                endpoint,
            } => Pencil::Center {
                center: inv.apply(center),
                ratio: ratio.clone(),
                interior: *interior,
                endpoint: *endpoint,
            },
            Pencil::Translation { vector } => Pencil::Translation {
                vector: inv.apply(vector),
            },
        }
    }
}

pub fn plane_to_pencil<S: Scalar>(plane: &Plane3<S>) -> Result<Pencil<S>> {
    let [a, b, c, d] = plane.coeffs().clone();
    if a.is_zero() && b.is_zero() {
        return Err(Error::VerticalPencil);
    }
    let sum = a.clone() + b.clone();
    if sum.is_zero() {
        return Ok(Pencil::Translation {
            vector: Point2::new(c / a.clone(), d / a),
        });
    }
    let ab = a.clone() * b.clone();
    Ok(Pencil::Center {
        center: Point2::new(-c / sum.clone(), -d / sum),
        ratio: (b, a),
        interior: ab.is_positive(),
        endpoint: ab.is_zero(),
    })
}

/// At least three lines in one plane.
#[derive(Debug, Clone, PartialEq)]
pub struct CoplanarWitness<S, M = usize> {
    /// Canonical: first nonzero coefficient is 1.
    pub plane: Plane3<S>,
    pub members: Vec<M>,
    /// `None` only for planes parallel to the xy-plane, which contain no
    /// graph-form line.
    pub pencil: Option<Pencil<S>>,
}

impl<S: Scalar, M> CoplanarWitness<S, M> {
    pub fn map_members<N>(self, f: impl FnMut(M) -> N) -> CoplanarWitness<S, N> {
        CoplanarWitness {
            plane: self.plane,
            members: self.members.into_iter().map(f).collect(),
            pencil: self.pencil,
        }
    }
}

/// Groups the planes spanned by coplanar line pairs (meeting or parallel)
/// and keeps planes containing at least three distinct lines.
pub fn detect_coplanar<S: Scalar>(lines: &[Line3<S>]) -> Vec<CoplanarWitness<S>> {
    let uniq = UniqueLines::new(lines);
    let n = uniq.len();
    let planes: Vec<(Vec<S::Key>, Plane3<S>, usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let uniq = &uniq;
            (i + 1..n).filter_map(move |j| {
                let p = Plane3::through_lines(&uniq.lines[i], &uniq.lines[j])?.canonical();
                Some((p.key().to_vec(), p, i, j))
            })
        })
        .collect();
    let mut groups: BTreeMap<Vec<S::Key>, (Plane3<S>, Vec<usize>)> = BTreeMap::new();
    for (key, p, i, j) in planes {
        groups.entry(key).or_insert_with(|| (p, Vec::new())).1.extend([i, j]);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (plane, mut found) in groups.into_values() {
        found.sort_unstable();
        found.dedup();
        let unique_members: Vec<usize> = match S::MODE {
            Mode::Exact if found.len() < 3 => continue,
            Mode::Exact => found,
            Mode::Float => (0..n).filter(|&k| plane.contains_line(&uniq.lines[k])).collect(),
        };
        if unique_members.len() < 3 || !unique_members.iter().all(|&k| plane.contains_line(&uniq.lines[k])) {
            continue;
        }
        let members = uniq.expand(unique_members);
        if !seen.insert(members.clone()) {
            continue;
        }
        out.push(CoplanarWitness {
            pencil: plane_to_pencil(&plane).ok(),
            plane,
            members,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::to_line;
    use crate::interval::Interval;
    use crate::scalar::{q, qi, Exact};
    use crate::space::Vec3;

    fn ivi(v: [i64; 4]) -> Interval<Exact> {
        let [a, b, c, d] = v.map(qi);
        Interval::new(a, b, c, d).unwrap()
    }

    fn plane(v: [i64; 4]) -> Plane3<Exact> {
        let [a, b, c, d] = v.map(qi);
        Plane3::new(a, b, c, d).unwrap()
    }

    #[test]
    fn three_lines_in_a_plane() {
        let lines: Vec<_> = [[0, 1, -1, 1], [1, 0, -2, 2], [-1, 3, 0, -1]]
            .map(|v| to_line(&ivi(v)))
            .to_vec();
        let found = detect_coplanar(&lines);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].plane, plane([1, 1, 1, -2]));
        assert_eq!(found[0].members, vec![0, 1, 2]);
        match found[0].pencil.as_ref().unwrap() {
            Pencil::Center { center, ratio, interior, endpoint } => {
                assert_eq!(center, &Point2::new(q(-1, 2), qi(1)));
                assert_eq!(ratio, &(qi(1), qi(1)));
                assert!(*interior && !*endpoint);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn skew_lines_have_no_plane() {
        let v = |x: i64, y: i64, z: i64| Vec3::new(qi(x), qi(y), qi(z));
        let lines = [
            Line3::new(v(0, 0, 0), v(1, 0, 0)).unwrap(),
            Line3::new(v(0, 0, 1), v(0, 1, 0)).unwrap(),
            Line3::new(v(1, 1, 2), v(1, 1, 1)).unwrap(),
        ];
        assert!(detect_coplanar(&lines).is_empty());
    }

    #[test]
    fn translates_give_a_translation_pencil() {
        let lines: Vec<_> = (0..4).map(|t| to_line(&ivi([t, t, t + 1, t + 1]))).collect();
        let found = detect_coplanar(&lines);
        assert_eq!(found.len(), 1);
        let [a, b, _, _] = found[0].plane.coeffs().clone();
        assert_eq!(a + b, qi(0));
        assert_eq!(
            found[0].pencil,
            Some(Pencil::Translation { vector: Point2::new(qi(1), qi(1)) })
        );
    }

    #[test]
    fn pencil_examples() {
        assert!(matches!(
            plane_to_pencil(&plane([1, 1, 1, -2])).unwrap(),
            Pencil::Center { interior: true, endpoint: false, .. }
        ));
        assert_eq!(
            plane_to_pencil(&plane([1, -1, 2, 3])).unwrap(),
            Pencil::Translation { vector: Point2::new(qi(2), qi(3)) }
        );
        match plane_to_pencil(&plane([0, 1, 5, 7])).unwrap() {
            Pencil::Center { center, endpoint, interior, .. } => {
                assert!(endpoint && !interior);
                assert_eq!(center, Point2::new(qi(-5), qi(-7)));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(plane_to_pencil(&plane([0, 0, 1, 0])), Err(Error::VerticalPencil));
    }
}
