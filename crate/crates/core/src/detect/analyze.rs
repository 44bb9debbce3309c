use std::collections::HashMap;

use super::concurrent::{detect_concurrent, ConcurrencyWitness};
use super::coplanar::{detect_coplanar, CoplanarWitness};
use super::counts::{count_pairs, PairCounts};
use super::locus::{fit_endpoint_locus, EndpointLocus};
use super::regulus::{detect_regulus, RegulusStrategy, RegulusWitness};
use super::subcase::{classify_subcase, Subcase, SubcaseWitness};
use crate::correspondence::{
    find_exceptional_pair, generic_rotation, line_set_ref, to_line, to_line_perp, to_line_ratio, LineRef,
    PlanarRotation,
};
use crate::error::Result;
use crate::interval::{ensure_distinct, Interval, Point2};
use crate::relation::Relation;
use crate::scalar::Scalar;
use crate::space::Line3;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeOptions<S> {
    pub relation: Relation<S>,
    /// `None` picks [`RegulusStrategy::default_for`] the input size.
    pub strategy: Option<RegulusStrategy>,
    pub seed: u64,
}

impl<S> Default for AnalyzeOptions<S> {
    fn default() -> Self {
        AnalyzeOptions {
            relation: Relation::Trapezoid,
            strategy: None,
            seed: 0,
        }
    }
}

/// Endpoint curves of one ruling, in input coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct RulingAnalysis<S> {
    /// From three distinct lines of the ruling (trapezoid relation only).
    pub subcase: Option<SubcaseWitness<S>>,
    pub initial: EndpointLocus<S>,
    pub terminal: EndpointLocus<S>,
    /// The `(a, d)` cloud, fitted in subcase II.
    pub mixed: Option<EndpointLocus<S>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegulusReport<S> {
    pub witness: RegulusWitness<S, LineRef>,
    pub rulings: [RulingAnalysis<S>; 2],
}

/// Everything [`analyze`] found.
///
/// Three-dimensional geometry (points, planes, quadrics) lives in the frame
/// obtained by applying `rotation` to the input; planar descriptions
/// (pullback lines, pencil centers, endpoint curves) are in input
/// coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport<S> {
    pub counts: PairCounts,
    pub relation: Relation<S>,
    pub rotation: PlanarRotation<S>,
    pub strategy: RegulusStrategy,
    pub concurrencies: Vec<ConcurrencyWitness<S, LineRef>>,
    pub coplanarities: Vec<CoplanarWitness<S, LineRef>>,
    pub reguli: Vec<RegulusReport<S>>,
    /// Witnesses dropped because they are the reverse image of a kept one.
    pub mirrors_collapsed: usize,
}

impl<S: Scalar> StructureReport<S> {
    pub fn is_empty(&self) -> bool {
        self.concurrencies.is_empty() && self.coplanarities.is_empty() && self.reguli.is_empty()
    }
}

fn relation_line<S: Scalar>(relation: &Relation<S>, i: &Interval<S>) -> Result<Line3<S>> {
    match relation {
        Relation::Trapezoid => Ok(to_line(i)),
        Relation::Orthodiagonal => Ok(to_line_perp(i)),
        Relation::Ratio(rho) => to_line_ratio(i, rho),
    }
}

/// Drops each witness whose members, with every orientation flipped, are
/// exactly the members of another witness. Of a mirror pair the one with
/// more forward members stays.
fn collapse_mirrors<W>(items: Vec<W>, members: impl Fn(&W) -> Vec<LineRef>) -> (Vec<W>, usize) {
    let sets: Vec<Vec<LineRef>> = items
        .iter()
        .map(|w| {
            let mut m = members(w);
            m.sort_unstable();
            m
        })
        .collect();
    let index: HashMap<&[LineRef], usize> = sets.iter().enumerate().map(|(k, s)| (s.as_slice(), k)).collect();
    let forward = |s: &[LineRef]| s.iter().filter(|r| !r.reversed).count();
    let mut drop = vec![false; items.len()];
    let mut collapsed = 0;
    for i in 0..items.len() {
        if drop[i] {
            continue;
        }
        let mut flipped: Vec<LineRef> = sets[i].iter().map(|r| r.flipped()).collect();
        flipped.sort_unstable();
        let Some(&j) = index.get(flipped.as_slice()) else { continue };
        if j == i || drop[j] {
            continue;
        }
        let keep_i = (forward(&sets[i]), std::cmp::Reverse(&sets[i])) >= (forward(&sets[j]), std::cmp::Reverse(&sets[j]));
        drop[if keep_i { j } else { i }] = true;
        collapsed += 1;
    }
    let kept = items.into_iter().zip(drop).filter(|(_, d)| !d).map(|(w, _)| w).collect();
    (kept, collapsed)
}

/// Lines of one interval and its reverse always meet, so a point or plane
/// holding lines of only two intervals says nothing about the set.
fn spans_three(members: &[LineRef]) -> bool {
    let mut ids: Vec<usize> = members.iter().map(|r| r.interval).collect();
    ids.sort_unstable();
    ids.dedup();
    ids.len() >= 3
}

fn analyze_ruling<S: Scalar>(
    ruling: &[LineRef],
    intervals: &[Interval<S>],
    working: &[Interval<S>],
    relation: &Relation<S>,
) -> RulingAnalysis<S> {
    let oriented: Vec<Interval<S>> = ruling.iter().map(|r| r.resolve(intervals)).collect();
    let subcase = match relation {
        Relation::Trapezoid => {
            let mut distinct: Vec<Line3<S>> = Vec::new();
            for r in ruling {
                let l = to_line(&r.resolve(working));
                if distinct.len() < 3 && !distinct.iter().any(|m| m.same(&l)) {
                    distinct.push(l);
                }
            }
            match distinct.as_slice() {
                [l1, l2, l3] => classify_subcase(l1, l2, l3).ok(),
                _ => None,
            }
        }
        _ => None,
    };
    let mixed = subcase
        .as_ref()
        .filter(|w| w.case == Subcase::II)
        .map(|_| fit_endpoint_locus(&oriented.iter().map(|i| Point2::new(i.a().clone(), i.d().clone())).collect::<Vec<_>>()));
    RulingAnalysis {
        subcase,
        initial: fit_endpoint_locus(&oriented.iter().map(Interval::initial).collect::<Vec<_>>()),
        terminal: fit_endpoint_locus(&oriented.iter().map(Interval::terminal).collect::<Vec<_>>()),
        mixed,
    }
}

/// Counts pairs and runs the three detectors on the lines of the intervals
/// and their reverses.
///
/// Under the trapezoid relation, inputs containing an exceptional parallel
/// pair are first rotated by a seeded rational rotation, which turns
/// parallel classes into concurrent ones.
pub fn analyze<S: Scalar>(intervals: &[Interval<S>], options: &AnalyzeOptions<S>) -> Result<StructureReport<S>> {
    ensure_distinct(intervals)?;
    let n = intervals.len();
    let counts = count_pairs(intervals, &options.relation)?;
    let trapezoid = matches!(options.relation, Relation::Trapezoid);
    let (working, rotation) = if trapezoid && find_exceptional_pair(intervals).is_some() {
        generic_rotation(intervals, options.seed)
    } else {
        (intervals.to_vec(), PlanarRotation::identity())
    };
    let lines: Vec<Line3<S>> = working
        .iter()
        .map(|i| relation_line(&options.relation, i))
        .chain(working.iter().map(|i| relation_line(&options.relation, &i.reverse())))
        .collect::<Result<_>>()?;
    let to_ref = |k: usize| line_set_ref(n, k);
    let strategy = options
        .strategy
        .unwrap_or_else(|| RegulusStrategy::default_for(n, options.seed));

    let (concurrent, (coplanar, reguli)) = rayon::join(
        || detect_concurrent(&lines),
        || rayon::join(|| detect_coplanar(&lines), || detect_regulus(&lines, strategy)),
    );

    let concurrencies: Vec<_> = concurrent
        .into_iter()
        .map(|w| {
            let mut w = w.map_members(to_ref);
            if trapezoid {
                w.initial_line = w.initial_line.map(|l| l.pull_back(&rotation));
                w.terminal_line = w.terminal_line.map(|l| l.pull_back(&rotation));
            } else {
                w.initial_line = None;
                w.terminal_line = None;
            }
            w
        })
        .collect();
    let coplanarities: Vec<_> = coplanar
        .into_iter()
        .map(|w| {
            let mut w = w.map_members(to_ref);
            w.pencil = if trapezoid { w.pencil.map(|p| p.pull_back(&rotation)) } else { None };
            w
        })
        .collect();
    let reguli: Vec<_> = reguli.into_iter().map(|w| w.map_members(to_ref)).collect();

    let concurrencies: Vec<_> = concurrencies.into_iter().filter(|w| spans_three(&w.members)).collect();
    let coplanarities: Vec<_> = coplanarities.into_iter().filter(|w| spans_three(&w.members)).collect();
    let (concurrencies, c1) = collapse_mirrors(concurrencies, |w| w.members.clone());
    let (coplanarities, c2) = collapse_mirrors(coplanarities, |w| w.members.clone());
    let (reguli, c3) = collapse_mirrors(reguli, |w| [w.ruling1.clone(), w.ruling2.clone()].concat());

    let reguli = reguli
        .into_iter()
        .map(|witness| {
            let rulings = [
                analyze_ruling(&witness.ruling1, intervals, &working, &options.relation),
                analyze_ruling(&witness.ruling2, intervals, &working, &options.relation),
            ];
            RegulusReport { witness, rulings }
        })
        .collect();

    Ok(StructureReport {
        counts,
        relation: options.relation.clone(),
        rotation,
        strategy,
        concurrencies,
        coplanarities,
        reguli,
        mirrors_collapsed: c1 + c2 + c3,
    })
}
