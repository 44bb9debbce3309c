use std::collections::BTreeMap;

use rayon::prelude::*;

use super::lines::UniqueLines;
use super::locus::Line2;
use crate::scalar::{Mode, Scalar};
use crate::space::{line_intersect, Line3, LineIntersection, Vec3};

/// Three or more lines through one point `(u, v, w)`.
///
/// When the lines are images of intervals under the standard map, every
/// interval has its initial point on `y = u - w x` and its terminal point on
/// `y = v - w x`. Those two lines are `None` in reports built from the
/// perpendicular or ratio maps, where that reading does not apply.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrencyWitness<S, M = usize> {
    pub point: Vec3<S>,
    pub members: Vec<M>,
    pub initial_line: Option<Line2<S>>,
    pub terminal_line: Option<Line2<S>>,
}

impl<S: Scalar, M> ConcurrencyWitness<S, M> {
    pub fn map_members<N>(self, f: impl FnMut(M) -> N) -> ConcurrencyWitness<S, N> {
        ConcurrencyWitness {
            point: self.point,
            members: self.members.into_iter().map(f).collect(),
            initial_line: self.initial_line,
            terminal_line: self.terminal_line,
        }
    }
}

/// Groups pairwise intersection points by canonical key and keeps points on
/// at least three distinct lines. Members are indices into `lines`; repeated
/// copies of one line are all listed.
pub fn detect_concurrent<S: Scalar>(lines: &[Line3<S>]) -> Vec<ConcurrencyWitness<S>> {
    let uniq = UniqueLines::new(lines);
    let n = uniq.len();
    let points: Vec<(Vec<S::Key>, Vec3<S>, usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let uniq = &uniq;
            (i + 1..n).filter_map(move |j| match line_intersect(&uniq.lines[i], &uniq.lines[j]) {
                LineIntersection::Point(p) => Some((p.key().to_vec(), p, i, j)),
                _ => None,
            })
        })
        .collect();
    let mut groups: BTreeMap<Vec<S::Key>, (Vec3<S>, Vec<usize>)> = BTreeMap::new();
    for (key, p, i, j) in points {
        let entry = groups.entry(key).or_insert_with(|| (p, Vec::new()));
        entry.1.extend([i, j]);
    }
    let mut seen_members: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
    let mut out = Vec::new();
    for (point, mut found) in groups.into_values() {
        found.sort_unstable();
        found.dedup();
        let unique_members: Vec<usize> = match S::MODE {
            Mode::Exact if found.len() < 3 => continue,
            // exact keys are complete, so the pairs already name every member
            Mode::Exact => found,
            // quantised keys may split a cluster: rescan every line
            Mode::Float => (0..n).filter(|&k| uniq.lines[k].contains(&point)).collect(),
        };
        if unique_members.len() < 3 || !unique_members.iter().all(|&k| uniq.lines[k].contains(&point)) {
            continue;
        }
        let members = uniq.expand(unique_members);
        if seen_members.insert(members.clone(), ()).is_some() {
            continue;
        }
        let (u, v, w) = (point.x.clone(), point.y.clone(), point.z.clone());
        out.push(ConcurrencyWitness {
            initial_line: Some(Line2::slope_intercept(-w.clone(), u)),
            terminal_line: Some(Line2::slope_intercept(-w, v)),
            point,
            members,
        });
    }
    out
}
