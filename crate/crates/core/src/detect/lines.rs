use std::collections::HashMap;

use crate::scalar::{Mode, Scalar};
use crate::space::Line3;

/// Distinct lines of an input list, each with the input positions it came from.
#[derive(Debug, Clone)]
pub struct UniqueLines<S> {
    pub lines: Vec<Line3<S>>,
    pub owners: Vec<Vec<usize>>,
}

impl<S: Scalar> UniqueLines<S> {
    pub fn new(input: &[Line3<S>]) -> Self {
        let mut lines: Vec<Line3<S>> = Vec::new();
        let mut owners: Vec<Vec<usize>> = Vec::new();
        match S::MODE {
            Mode::Exact => {
                let mut seen = HashMap::new();
                for (k, l) in input.iter().enumerate() {
                    let slot = *seen.entry(l.key()).or_insert_with(|| {
                        lines.push(l.clone());
                        owners.push(Vec::new());
                        lines.len() - 1
                    });
                    owners[slot].push(k);
                }
            }
            Mode::Float => {
                for (k, l) in input.iter().enumerate() {
                    match lines.iter().position(|m| m.same(l)) {
                        Some(slot) => owners[slot].push(k),
                        None => {
                            lines.push(l.clone());
                            owners.push(vec![k]);
                        }
                    }
                }
            }
        }
        UniqueLines { lines, owners }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Sorted input positions of the given unique lines.
    pub fn expand(&self, unique: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut out: Vec<usize> = unique.into_iter().flat_map(|u| self.owners[u].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}
