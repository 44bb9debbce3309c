//! Small dense linear algebra over [`Scalar`]: row reduction, nullspaces and
//! the inertia of symmetric matrices. Everything is division-exact in exact
//! mode; approximate mode pivots on the largest magnitude.

use crate::scalar::{Mode, Scalar};

/// Scales `v` so its first nonzero entry is 1. An all-zero vector is returned unchanged.
pub fn normalize_first_nonzero<S: Scalar, const N: usize>(v: &[S; N]) -> [S; N] {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.recip();
            std::array::from_fn(|k| {
                if v[k].is_zero() {
                    S::zero()
                } else {
                    v[k].clone() * inv.clone()
                }
            })
        }
        None => v.clone(),
    }
}

pub fn normalize_vec<S: Scalar>(v: &[S]) -> Vec<S> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.recip();
            v.iter()
                .map(|x| if x.is_zero() { S::zero() } else { x.clone() * inv.clone() })
                .collect()
        }
        None => v.to_vec(),
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<S: Scalar>(m: &mut [Vec<S>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let pick = match S::MODE {
            Mode::Exact => (row..nrows).find(|&r| !m[r][col].is_zero()),
            Mode::Float => (row..nrows)
                .filter(|&r| !m[r][col].is_zero())
                .max_by(|&p, &q| m[p][col].to_f64().abs().total_cmp(&m[q][col].to_f64().abs())),
        };
        let Some(p) = pick else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for k in col..ncols {
            m[row][k] = m[row][k].clone() * inv.clone();
        }
        m[row][col] = S::one();
        for r in 0..nrows {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for k in col..ncols {
                let delta = f.clone() * m[row][k].clone();
                m[r][k] = m[r][k].clone() - delta;
            }
            m[r][col] = S::zero();
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : M x = 0}`, one vector per free column.
pub fn nullspace<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); ncols];
            v[f] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    /// `(max, min)` of the positive and negative counts, i.e. inertia up to an
    /// overall sign of the matrix.
    pub fn unsigned(&self) -> (usize, usize) {
        (self.positive.max(self.negative), self.positive.min(self.negative))
    }
}

/// Sylvester inertia of a symmetric matrix by congruence diagonalisation.
///
/// Pivots are taken from the diagonal; when the remaining diagonal is zero but
/// an off-diagonal entry is not, row/column `j` is added to row/column `i`
/// first, which produces the nonzero diagonal entry `2 m[i][j]`.
pub fn inertia<S: Scalar>(matrix: &[Vec<S>]) -> Inertia {
    let mut m: Vec<Vec<S>> = matrix.to_vec();
    let n = m.len();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
    while !active.is_empty() {
        let diag = match S::MODE {
            Mode::Exact => active.iter().copied().find(|&i| !m[i][i].is_zero()),
            Mode::Float => active
                .iter()
                .copied()
                .filter(|&i| !m[i][i].is_zero())
                .max_by(|&p, &q| m[p][p].to_f64().abs().total_cmp(&m[q][q].to_f64().abs())),
        };
        let pivot = match diag {
            Some(p) => p,
            None => {
                let pair = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !m[i][j].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = pair else {
                    out.zero += active.len();
                    break;
                };
                // congruence: row_i += row_j, col_i += col_j
                for k in 0..n {
                    m[i][k] = m[i][k].clone() + m[j][k].clone();
                }
                for k in 0..n {
                    m[k][i] = m[k][i].clone() + m[k][j].clone();
                }
                i
            }
        };
        let p = m[pivot][pivot].clone();
        if p.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        active.retain(|&k| k != pivot);
        for &r in &active {
            if m[r][pivot].is_zero() {
                continue;
            }
            let f = m[r][pivot].clone() / p.clone();
            for &c in &active {
                let delta = f.clone() * m[pivot][c].clone();
                m[r][c] = m[r][c].clone() - delta;
            }
        }
    }
    out
}

pub fn det3<S: Scalar>(m: &[[S; 3]; 3]) -> S {
    m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
        - m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
        + m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone())
}
