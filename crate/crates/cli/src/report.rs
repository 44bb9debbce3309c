//! Report files written by `analyze`.
//!
//! Scalars use the dataset's encoding (strings in exact mode, numbers in
//! float mode), so a report parses back to the identical JSON value.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use trapezoid_core::{
    ConcurrencyWitness, CoplanarWitness, EndpointLocus, Line2, LineRef, PairCounts, Pencil, RegulusReport,
    RegulusStrategy, Relation, RulingAnalysis, Scalar, StructureReport, SubcaseWitness, Vec3,
};

use crate::dataset::scalar_value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub counts: Counts,
    pub structures: Structures,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub n: usize,
    pub left_only: u64,
    pub right_only: u64,
    pub both: u64,
    pub total_with_multiplicity: u64,
    pub threshold: f64,
    pub exceeds_threshold: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub interval: usize,
    pub reversed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    pub applied: bool,
    pub cos: Value,
    pub sin: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Structures {
    /// 3D coordinates below are in the frame rotated by this rotation.
    pub rotation: Rotation,
    pub concurrencies: Vec<Concurrency>,
    pub coplanarities: Vec<Coplanarity>,
    pub reguli: Vec<Regulus>,
    pub mirrors_collapsed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Concurrency {
    pub point: Vec<Value>,
    pub members: Vec<Member>,
    /// `[a, b, c]` of `a x + b y + c = 0` through the initial endpoints.
    pub initial_line: Option<Vec<Value>>,
    pub terminal_line: Option<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PencilJson {
    Center {
        center: Vec<Value>,
        ratio: Vec<Value>,
        interior: bool,
        endpoint: bool,
    },
    Translation {
        vector: Vec<Value>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coplanarity {
    pub plane: Vec<Value>,
    pub members: Vec<Member>,
    pub pencil: Option<PencilJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Locus {
    Line { coeffs: Vec<Value> },
    Conic { coeffs: Vec<Value>, class: String },
    Degenerate { nullspace_dim: usize },
    Underdetermined { distinct_points: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Subcase {
    pub case: String,
    pub system: Vec<Vec<Value>>,
    /// `[m1, m2, m3, r1, r2, r3]`.
    pub params: Option<Vec<Value>>,
    pub point: Option<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ruling {
    pub members: Vec<Member>,
    pub subcase: Option<Subcase>,
    pub initial: Locus,
    pub terminal: Locus,
    pub mixed: Option<Locus>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Regulus {
    pub quadric: Vec<Value>,
    pub class: String,
    pub rulings: Vec<Ruling>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Strategy {
    pub kind: String,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub command: Vec<String>,
    pub version: String,
    pub seed: u64,
    pub mode: String,
    /// Relative tolerance of float comparisons; absent in exact mode.
    pub tolerance: Option<f64>,
    pub relation: String,
    pub rho: Option<Value>,
    pub strategy: Strategy,
}

fn values<S: Scalar>(v: &[S]) -> Vec<Value> {
    v.iter().map(scalar_value).collect()
}

fn point3<S: Scalar>(p: &Vec3<S>) -> Vec<Value> {
    values(&p.to_array())
}

fn line2<S: Scalar>(l: &Line2<S>) -> Vec<Value> {
    values(l.coeffs())
}

fn members(m: &[LineRef]) -> Vec<Member> {
    m.iter()
        .map(|r| Member {
            interval: r.interval,
            reversed: r.reversed,
        })
        .collect()
}

fn counts(c: &PairCounts) -> Counts {
    Counts {
        n: c.n,
        left_only: c.left_only,
        right_only: c.right_only,
        both: c.both,
        total_with_multiplicity: c.total_with_multiplicity,
        threshold: c.threshold,
        exceeds_threshold: c.exceeds_threshold(),
    }
}

fn concurrency<S: Scalar>(w: &ConcurrencyWitness<S, LineRef>) -> Concurrency {
    Concurrency {
        point: point3(&w.point),
        members: members(&w.members),
        initial_line: w.initial_line.as_ref().map(line2),
        terminal_line: w.terminal_line.as_ref().map(line2),
    }
}

fn pencil<S: Scalar>(p: &Pencil<S>) -> PencilJson {
    match p {
        Pencil::Center {
            center,
            ratio,
            interior,
            endpoint,
        } => PencilJson::Center {
            center: values(&[center.x.clone(), center.y.clone()]),
            ratio: values(&[ratio.0.clone(), ratio.1.clone()]),
            interior: *interior,
            endpoint: *endpoint,
        },
        Pencil::Translation { vector } => PencilJson::Translation {
            vector: values(&[vector.x.clone(), vector.y.clone()]),
        },
    }
}

fn coplanarity<S: Scalar>(w: &CoplanarWitness<S, LineRef>) -> Coplanarity {
    Coplanarity {
        plane: values(w.plane.coeffs()),
        members: members(&w.members),
        pencil: w.pencil.as_ref().map(pencil),
    }
}

fn locus<S: Scalar>(l: &EndpointLocus<S>) -> Locus {
    match l {
        EndpointLocus::Line(line) => Locus::Line { coeffs: line2(line) },
        EndpointLocus::Conic(c) => Locus::Conic {
            coeffs: values(c.coeffs()),
            class: c.class().name().to_string(),
        },
        EndpointLocus::Degenerate { nullspace_dim } => Locus::Degenerate {
            nullspace_dim: *nullspace_dim,
        },
        EndpointLocus::Underdetermined { distinct_points } => Locus::Underdetermined {
            distinct_points: *distinct_points,
        },
    }
}

fn subcase<S: Scalar>(w: &SubcaseWitness<S>) -> Subcase {
    Subcase {
        case: w.case.name().to_string(),
        system: w.system.iter().map(|row| values(row)).collect(),
        params: w.params.as_ref().map(|p| {
            values(&[
                p.m1.clone(),
                p.m2.clone(),
                p.m3.clone(),
                p.r1.clone(),
                p.r2.clone(),
                p.r3.clone(),
            ])
        }),
        point: w.point.as_ref().map(point3),
    }
}

fn ruling<S: Scalar>(m: &[LineRef], a: &RulingAnalysis<S>) -> Ruling {
    Ruling {
        members: members(m),
        subcase: a.subcase.as_ref().map(subcase),
        initial: locus(&a.initial),
        terminal: locus(&a.terminal),
        mixed: a.mixed.as_ref().map(locus),
    }
}

fn regulus<S: Scalar>(r: &RegulusReport<S>) -> Regulus {
    Regulus {
        quadric: values(r.witness.quadric.coeffs()),
        class: r.witness.quadric.class().name().to_string(),
        rulings: vec![
            ruling(&r.witness.ruling1, &r.rulings[0]),
            ruling(&r.witness.ruling2, &r.rulings[1]),
        ],
    }
}

pub fn relation_name<S: Scalar>(r: &Relation<S>) -> (String, Option<Value>) {
    let rho = match r {
        Relation::Ratio(rho) => Some(scalar_value(rho)),
        _ => None,
    };
    (r.name().to_string(), rho)
}

fn strategy(s: &RegulusStrategy) -> Strategy {
    match s {
        RegulusStrategy::ExhaustiveTriples => Strategy {
            kind: "exhaustive".into(),
            samples: None,
            seed: None,
        },
        RegulusStrategy::Sampled { k, seed } => Strategy {
            kind: "sampled".into(),
            samples: Some(*k),
            seed: Some(*seed),
        },
    }
}

impl ReportFile {
    pub fn build<S: Scalar>(report: &StructureReport<S>, command: Vec<String>, seed: u64) -> Self {
        let (relation, rho) = relation_name(&report.relation);
        ReportFile {
            counts: counts(&report.counts),
            structures: Structures {
                rotation: Rotation {
                    applied: !report.rotation.is_identity(),
                    cos: scalar_value(report.rotation.cos()),
                    sin: scalar_value(report.rotation.sin()),
                },
                concurrencies: report.concurrencies.iter().map(concurrency).collect(),
                coplanarities: report.coplanarities.iter().map(coplanarity).collect(),
                reguli: report.reguli.iter().map(regulus).collect(),
                mirrors_collapsed: report.mirrors_collapsed,
            },
            provenance: Provenance {
                command,
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed,
                mode: S::MODE.as_str().to_string(),
                tolerance: (S::MODE == trapezoid_core::Mode::Float).then_some(trapezoid_core::DEFAULT_TOLERANCE),
                relation,
                rho,
                strategy: strategy(&report.strategy),
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Every member index, for range checks.
    pub fn member_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let s = &self.structures;
        s.concurrencies
            .iter()
            .flat_map(|w| &w.members)
            .chain(s.coplanarities.iter().flat_map(|w| &w.members))
            .chain(s.reguli.iter().flat_map(|r| r.rulings.iter().flat_map(|ru| &ru.members)))
            .map(|m| m.interval)
    }
}
