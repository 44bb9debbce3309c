use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::lines::UniqueLines;
use crate::quadric::{quadric_through_skew_lines, Quadric, QuadricFit};
use crate::scalar::{Mode, Scalar};
use crate::space::{Line3, Plucker};

/// Above this many intervals the default strategy samples triples.
pub const EXHAUSTIVE_LIMIT: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegulusStrategy {
    ExhaustiveTriples,
    Sampled { k: usize, seed: u64 },
}

impl RegulusStrategy {
    /// Exhaustive up to [`EXHAUSTIVE_LIMIT`] intervals, 2000 sampled triples above.
    pub fn default_for(intervals: usize, seed: u64) -> Self {
        if intervals <= EXHAUSTIVE_LIMIT {
            RegulusStrategy::ExhaustiveTriples
        } else {
            RegulusStrategy::Sampled { k: 2000, seed }
        }
    }
}

/// Lines on one doubly ruled quadric, split into its two rulings.
///
/// Lines within a ruling are pairwise skew; lines from different rulings
/// meet or are parallel.
#[derive(Debug, Clone, PartialEq)]
pub struct RegulusWitness<S, M = usize> {
    pub quadric: Quadric<S>,
    pub ruling1: Vec<M>,
    pub ruling2: Vec<M>,
}

impl<S: Scalar, M> RegulusWitness<S, M> {
    pub fn map_members<N>(self, mut f: impl FnMut(M) -> N) -> RegulusWitness<S, N> {
        RegulusWitness {
            quadric: self.quadric,
            ruling1: self.ruling1.into_iter().map(&mut f).collect(),
            ruling2: self.ruling2.into_iter().map(&mut f).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ruling1.len() + self.ruling2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    fn get(&self, k: usize) -> bool {
        self.0[k / 64] >> (k % 64) & 1 == 1
    }

    fn and3_count(a: &Bits, b: &Bits, c: &Bits) -> u32 {
        a.0.iter().zip(&b.0).zip(&c.0).map(|((x, y), z)| (x & y & z).count_ones()).sum()
    }
}

fn coplanar<S: Scalar>(p: &Plucker<S>, q: &Plucker<S>) -> bool {
    let r = p.reciprocal(q);
    match S::MODE {
        Mode::Exact => r.is_zero(),
        Mode::Float => {
            let norm = |v: &crate::space::Vec3<S>| v.dot(v).to_f64().sqrt();
            let scale = 1f64.max(norm(&p.dir) * norm(&q.moment) + norm(&q.dir) * norm(&p.moment));
            r.to_f64().abs() <= crate::scalar::DEFAULT_TOLERANCE * scale
        }
    }
}

/// Rounded, scale-free Grassmann coordinates (the twenty 3×3 minors) of
/// the span of three Plücker vectors. Lines of one ruling span the same
/// 3-space, so triples from one ruling share this key. It is only a
/// prefilter: every candidate is re-fitted exactly.
fn span_key(rows: [&[f64; 6]; 3]) -> Vec<i64> {
    let mut minors = Vec::with_capacity(20);
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let m = |r: usize, c: usize| rows[r][[i, j, k][c]];
                minors.push(
                    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)),
                );
            }
        }
    }
    let max = minors.iter().fold(0f64, |a, x| a.max(x.abs()));
    if max == 0.0 {
        return vec![0; 20];
    }
    let lead = minors.iter().find(|x| x.abs() > 1e-6 * max).copied().unwrap_or(max);
    let scale = lead.signum() / max;
    minors.iter().map(|x| (x * scale * 1e6).round() as i64).collect()
}

fn unit_plucker<S: Scalar>(p: &Plucker<S>) -> [f64; 6] {
    let v = p.to_array().map(|x| x.to_f64());
    let max = v.iter().fold(0f64, |a, x| a.max(x.abs()));
    v.map(|x| x / max)
}

/// Witness sizes worth reporting. Lines meeting three skew lines lie on
/// their quadric, and two skew lines with three common transversals always
/// lie on one, so a `p + q` split says nothing beyond its intersections
/// unless one ruling has four lines. Three lines in each ruling is kept as
/// a rich intersection pattern in its own right.
fn enough(r1: usize, r2: usize) -> bool {
    r1.min(r2) >= 3 || r1.max(r2) >= 4
}

/// Finds lines lying on a common hyperboloid of one sheet or hyperbolic
/// paraboloid. A pairwise skew triple is fitted when at least two other
/// input lines meet all three, or when another triple appears to span the
/// same Plücker subspace; every input line on the fitted quadric then joins
/// the witness. Witnesses need two lines in each ruling or four in one.
pub fn detect_regulus<S: Scalar>(lines: &[Line3<S>], strategy: RegulusStrategy) -> Vec<RegulusWitness<S>> {
    let uniq = UniqueLines::new(lines);
    let n = uniq.len();
    if n < 4 {
        return Vec::new();
    }
    let pl: Vec<Plucker<S>> = uniq.lines.iter().map(Line3::plucker).collect();
    let meets: Vec<Bits> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut b = Bits::new(n);
            for j in (0..n).filter(|&j| j != i) {
                if coplanar(&pl[i], &pl[j]) {
                    b.set(j);
                }
            }
            b
        })
        .collect();
    let skew = |i: usize, j: usize| !meets[i].get(j);

    let triples: Vec<[usize; 3]> = match strategy {
        RegulusStrategy::ExhaustiveTriples => (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let skew = &skew;
                (i + 1..n).filter(move |&j| skew(i, j)).flat_map(move |j| {
                    (j + 1..n)
                        .filter(move |&k| skew(i, k) && skew(j, k))
                        .map(move |k| [i, j, k])
                })
            })
            .collect(),
        RegulusStrategy::Sampled { k, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut set = BTreeSet::new();
            for _ in 0..k {
                let mut t = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
                t.sort_unstable();
                if t[0] < t[1] && t[1] < t[2] && skew(t[0], t[1]) && skew(t[0], t[2]) && skew(t[1], t[2]) {
                    set.insert(t);
                }
            }
            set.into_iter().collect()
        }
    };

    let (with_transversal, rest): (Vec<[usize; 3]>, Vec<[usize; 3]>) = triples
        .into_par_iter()
        .partition(|t| Bits::and3_count(&meets[t[0]], &meets[t[1]], &meets[t[2]]) >= 2);
    let unit: Vec<[f64; 6]> = pl.iter().map(unit_plucker).collect();
    let keyed: Vec<(Vec<i64>, [usize; 3])> = rest
        .into_par_iter()
        .map(|t| (span_key([&unit[t[0]], &unit[t[1]], &unit[t[2]]]), t))
        .collect();
    let mut span_count: HashMap<&[i64], usize> = HashMap::new();
    for (key, _) in &keyed {
        *span_count.entry(key.as_slice()).or_default() += 1;
    }
    let mut candidates = with_transversal;
    candidates.extend(
        keyed
            .iter()
            .filter(|(key, _)| span_count[key.as_slice()] >= 2)
            .map(|(_, t)| *t),
    );
    candidates.sort_unstable();

    let mut covered: Vec<Bits> = Vec::new();
    let mut seen_keys = BTreeSet::new();
    let mut out: Vec<(Vec<S::Key>, RegulusWitness<S>)> = Vec::new();
    for t in candidates {
        if covered.iter().any(|c| t.iter().all(|&k| c.get(k))) {
            continue;
        }
        let Ok(QuadricFit::Quadric(quadric)) =
            quadric_through_skew_lines(&uniq.lines[t[0]], &uniq.lines[t[1]], &uniq.lines[t[2]])
        else {
            continue;
        };
        if !quadric.class().is_doubly_ruled() {
            continue;
        }
        let on: Vec<usize> = (0..n)
            .into_par_iter()
            .filter(|&k| quadric.contains_line(&uniq.lines[k]))
            .collect();
        let mut bits = Bits::new(n);
        on.iter().for_each(|&k| bits.set(k));
        covered.push(bits);
        let Some((r1, r2)) = bipartition(&on, &meets) else {
            continue;
        };
        if !enough(r1.len(), r2.len()) {
            continue;
        }
        let key = quadric.key();
        if !seen_keys.insert(key.clone()) {
            continue;
        }
        let (mut ruling1, mut ruling2) = (uniq.expand(r1), uniq.expand(r2));
        if ruling1.is_empty() || ruling2.first().is_some_and(|&f| f < ruling1[0]) {
            std::mem::swap(&mut ruling1, &mut ruling2);
        }
        out.push((key, RegulusWitness { quadric, ruling1, ruling2 }));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, w)| w).collect()
}

/// Splits members into two classes of pairwise skew lines with every cross
/// pair coplanar; `None` when no such split exists.
fn bipartition(members: &[usize], meets: &[Bits]) -> Option<(Vec<usize>, Vec<usize>)> {
    let first = members[0];
    let (same, other): (Vec<usize>, Vec<usize>) = members.iter().partition(|&&k| k == first || !meets[first].get(k));
    let pairwise_skew = |s: &[usize]| s.iter().enumerate().all(|(x, &p)| s[x + 1..].iter().all(|&q| !meets[p].get(q)));
    let cross = same.iter().all(|&p| other.iter().all(|&q| meets[p].get(q)));
    (pairwise_skew(&same) && pairwise_skew(&other) && cross).then_some((same, other))
}
