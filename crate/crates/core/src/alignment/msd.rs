use std::fmt;

use serde::Serialize;

use super::AlignmentMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Monotone,
    Swap,
    Discontinuous,
}

impl Orientation {
    pub const ALL: [Orientation; 3] = [Orientation::Monotone, Orientation::Swap, Orientation::Discontinuous];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Monotone => "M",
            Orientation::Swap => "S",
            Orientation::Discontinuous => "D",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MsdDirection {
    /// orientation with respect to the previous unit
    #[serde(rename = "fe")]
    Forward,
    /// previous and following units
    #[serde(rename = "bidirectional-fe")]
    Bidirectional,
}

/// Orientation counts, conditioned on the foreign side, per direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientationCounts {
    pub direction: MsdDirection,
    /// M, S, D relative to the previous unit.
    pub previous: [u64; 3],
    /// M, S, D relative to the following unit (bidirectional only).
    pub next: [u64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrientationRecord {
    pub orientation: Orientation,
    /// `"previous"` or `"next"`.
    pub relative_to: &'static str,
    pub direction: MsdDirection,
    pub count: u64,
    pub probability: f64,
}

impl OrientationCounts {
    pub fn new(direction: MsdDirection) -> Self {
        OrientationCounts { direction, previous: [0; 3], next: [0; 3] }
    }

    pub fn add(&mut self, other: &OrientationCounts) {
        for k in 0..3 {
            self.previous[k] += other.previous[k];
            self.next[k] += other.next[k];
        }
    }

    pub fn previous_count(&self, o: Orientation) -> u64 {
        self.previous[o.index()]
    }

    pub fn next_count(&self, o: Orientation) -> u64 {
        self.next[o.index()]
    }

    /// Probabilities relative to the previous unit; all zero without events.
    pub fn previous_probabilities(&self) -> [f64; 3] {
        normalize(&self.previous)
    }

    pub fn next_probabilities(&self) -> [f64; 3] {
        normalize(&self.next)
    }

    pub fn records(&self) -> Vec<OrientationRecord> {
        let mut out = Vec::new();
        let mut push = |relative_to, counts: &[u64; 3]| {
            let p = normalize(counts);
            for o in Orientation::ALL {
                out.push(OrientationRecord {
                    orientation: o,
                    relative_to,
                    direction: self.direction,
                    count: counts[o.index()],
                    probability: p[o.index()],
                });
            }
        };
        push("previous", &self.previous);
        if self.direction == MsdDirection::Bidirectional {
            push("next", &self.next);
        }
        out
    }
}

fn normalize(c: &[u64; 3]) -> [f64; 3] {
    let total: u64 = c.iter().sum();
    if total == 0 {
        return [0.0; 3];
    }
    c.map(|x| x as f64 / total as f64)
}

/// Word-level orientation of every aligned target position.
///
/// With `S_j` the source positions linked to target `j`: monotone if the
/// link `(min S_j − 1, j − 1)` exists, swap if `(max S_j + 1, j − 1)` exists,
/// discontinuous otherwise. Position 0 is monotone iff `min S_0 = 0`. The
/// bidirectional direction also classifies each unit against `j + 1`
/// (monotone via `(max S_j + 1, j + 1)`, swap via `(min S_j − 1, j + 1)`),
/// the last position being monotone iff `max S_j` is the last source word.
/// Unaligned target positions are not units.
pub fn extract_msd(alignment: &AlignmentMatrix, direction: MsdDirection) -> OrientationCounts {
    let mut counts = OrientationCounts::new(direction);
    let (slen, tlen) = (alignment.source_len(), alignment.target_len());
    let link = |i: Option<usize>, j: Option<usize>| match (i, j) {
        (Some(i), Some(j)) => alignment.contains(i, j),
        _ => false,
    };
    for j in 0..tlen {
        let s = alignment.sources_of(j);
        let (Some(&lo), Some(&hi)) = (s.first(), s.last()) else { continue };
        let prev = if j == 0 {
            if lo == 0 { Orientation::Monotone } else { Orientation::Discontinuous }
        } else if link(lo.checked_sub(1), Some(j - 1)) {
            Orientation::Monotone
        } else if link(Some(hi + 1), Some(j - 1)) {
            Orientation::Swap
        } else {
            Orientation::Discontinuous
        };
        counts.previous[prev.index()] += 1;
        if direction == MsdDirection::Bidirectional {
            let next = if j + 1 == tlen {
                if hi + 1 == slen { Orientation::Monotone } else { Orientation::Discontinuous }
            } else if link(Some(hi + 1), Some(j + 1)) {
                Orientation::Monotone
            } else if link(lo.checked_sub(1), Some(j + 1)) {
                Orientation::Swap
            } else {
                Orientation::Discontinuous
            };
            counts.next[next.index()] += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, links: &[(usize, usize)]) -> AlignmentMatrix {
        AlignmentMatrix::from_links(n, n, links.iter().copied()).unwrap()
    }

    #[test]
    fn diagonal_is_monotone() {
        let c = extract_msd(&m(3, &[(0, 0), (1, 1), (2, 2)]), MsdDirection::Bidirectional);
        assert_eq!(c.previous, [3, 0, 0]);
        assert_eq!(c.next, [3, 0, 0]);
    }

    #[test]
    fn reversal_is_swap_inside() {
        let c = extract_msd(&m(3, &[(0, 2), (1, 1), (2, 0)]), MsdDirection::Forward);
        assert_eq!(c.previous, [0, 2, 1]);
        assert_eq!(c.next, [0, 0, 0]);
        let b = extract_msd(&m(3, &[(0, 2), (1, 1), (2, 0)]), MsdDirection::Bidirectional);
        assert_eq!(b.next, [0, 2, 1]);
    }

    #[test]
    fn empty_alignment_has_no_units() {
        let c = extract_msd(&m(4, &[]), MsdDirection::Bidirectional);
        assert_eq!((c.previous, c.next), ([0; 3], [0; 3]));
        assert_eq!(c.previous_probabilities(), [0.0; 3]);
    }

    #[test]
    fn one_class_per_aligned_unit() {
        let a = m(5, &[(0, 1), (0, 2), (3, 0), (4, 4), (2, 4)]);
        let c = extract_msd(&a, MsdDirection::Bidirectional);
        assert_eq!(c.previous.iter().sum::<u64>(), 4);
        assert_eq!(c.next.iter().sum::<u64>(), 4);
        let p = c.previous_probabilities();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn records_cover_directions() {
        let c = extract_msd(&m(2, &[(0, 0), (1, 1)]), MsdDirection::Forward);
        assert_eq!(c.records().len(), 3);
        let c = extract_msd(&m(2, &[(0, 0), (1, 1)]), MsdDirection::Bidirectional);
        assert_eq!(c.records().len(), 6);
    }
}
