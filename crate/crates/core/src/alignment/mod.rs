//! Word-alignment matrices, symmetrization heuristics and MSD orientation
//! statistics.

mod msd;

pub use msd::{extract_msd, MsdDirection, Orientation, OrientationCounts, OrientationRecord};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlignmentError {
    #[error("cannot parse alignment token `{0}`")]
    ParseError(String),
    #[error("link {0}-{1} outside the sentence pair")]
    IndexOutOfRange(usize, usize),
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("seed alignment is not a subset of the candidates")]
    SeedNotSubset,
    #[error("unknown heuristic `{0}`")]
    UnknownHeuristic(String),
}

/// Links `(i, j)` between source word `i` and target word `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlignmentMatrix {
    source_len: usize,
    target_len: usize,
    links: BTreeSet<(usize, usize)>,
}

impl AlignmentMatrix {
    pub fn new(source_len: usize, target_len: usize) -> Self {
        AlignmentMatrix { source_len, target_len, links: BTreeSet::new() }
    }

    pub fn from_links<I: IntoIterator<Item = (usize, usize)>>(
        source_len: usize,
        target_len: usize,
        links: I,
    ) -> Result<Self, AlignmentError> {
        let mut m = AlignmentMatrix::new(source_len, target_len);
        for (i, j) in links {
            m.insert(i, j)?;
        }
        Ok(m)
    }

    /// Parses whitespace-separated `i-j` pairs.
    pub fn parse(text: &str, source_len: usize, target_len: usize) -> Result<Self, AlignmentError> {
        let mut m = AlignmentMatrix::new(source_len, target_len);
        for tok in text.split_whitespace() {
            let (i, j) = parse_pair(tok)?;
            m.insert(i, j)?;
        }
        Ok(m)
    }

    pub fn insert(&mut self, i: usize, j: usize) -> Result<bool, AlignmentError> {
        if i >= self.source_len || j >= self.target_len {
            return Err(AlignmentError::IndexOutOfRange(i, j));
        }
        Ok(self.links.insert((i, j)))
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.links.contains(&(i, j))
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// Links in `(i, j)` order.
    pub fn links(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.links.iter().copied()
    }

    pub fn is_subset(&self, other: &AlignmentMatrix) -> bool {
        self.links.is_subset(&other.links)
    }

    /// Swaps the roles of source and target.
    pub fn transpose(&self) -> AlignmentMatrix {
        AlignmentMatrix {
            source_len: self.target_len,
            target_len: self.source_len,
            links: self.links.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    /// Source positions linked to target position `j`, ascending.
    pub fn sources_of(&self, j: usize) -> Vec<usize> {
        self.links.iter().filter(|l| l.1 == j).map(|l| l.0).collect()
    }

    fn check_dims(&self, other: &AlignmentMatrix) -> Result<(), AlignmentError> {
        if (self.source_len, self.target_len) != (other.source_len, other.target_len) {
            return Err(AlignmentError::DimensionMismatch(
                self.source_len,
                self.target_len,
                other.source_len,
                other.target_len,
            ));
        }
        Ok(())
    }
}

impl fmt::Display for AlignmentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, j)) in self.links.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}-{j}")?;
        }
        Ok(())
    }
}

fn parse_pair(tok: &str) -> Result<(usize, usize), AlignmentError> {
    let err = || AlignmentError::ParseError(tok.to_owned());
    let (a, b) = tok.split_once('-').ok_or_else(err)?;
    Ok((a.parse().map_err(|_| err())?, b.parse().map_err(|_| err())?))
}

/// Largest indices mentioned on a line, for inputs without sentence lengths.
pub fn implied_dimensions(text: &str) -> Result<(usize, usize), AlignmentError> {
    let mut dims = (0, 0);
    for tok in text.split_whitespace() {
        let (i, j) = parse_pair(tok)?;
        dims = (dims.0.max(i + 1), dims.1.max(j + 1));
    }
    Ok(dims)
}

pub fn intersect(a: &AlignmentMatrix, b: &AlignmentMatrix) -> Result<AlignmentMatrix, AlignmentError> {
    a.check_dims(b)?;
    Ok(AlignmentMatrix {
        links: a.links.intersection(&b.links).copied().collect(),
        ..a.clone()
    })
}

pub fn union(a: &AlignmentMatrix, b: &AlignmentMatrix) -> Result<AlignmentMatrix, AlignmentError> {
    a.check_dims(b)?;
    Ok(AlignmentMatrix {
        links: a.links.union(&b.links).copied().collect(),
        ..a.clone()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Neighborhood {
    /// left, right, above, below
    Cross,
    /// cross plus the four diagonals
    Diag,
}

impl Neighborhood {
    fn offsets(self) -> &'static [(isize, isize)] {
        const CROSS: [(isize, isize); 4] = [(-1, 0), (0, -1), (1, 0), (0, 1)];
        const DIAG: [(isize, isize); 8] = [(-1, 0), (0, -1), (1, 0), (0, 1), (-1, -1), (-1, 1), (1, -1), (1, 1)];
        match self {
            Neighborhood::Cross => &CROSS,
            Neighborhood::Diag => &DIAG,
        }
    }
}

struct Coverage {
    src: Vec<bool>,
    tgt: Vec<bool>,
}

impl Coverage {
    fn of(m: &AlignmentMatrix) -> Self {
        let mut c = Coverage { src: vec![false; m.source_len], tgt: vec![false; m.target_len] };
        for (i, j) in m.links() {
            c.src[i] = true;
            c.tgt[j] = true;
        }
        c
    }
}

/// Adds candidate links that neighbor a current link and touch at least one
/// unaligned word, scanning target-major until nothing changes.
pub fn grow_diag(
    seed: &AlignmentMatrix,
    candidates: &AlignmentMatrix,
    neighborhood: Neighborhood,
) -> Result<AlignmentMatrix, AlignmentError> {
    seed.check_dims(candidates)?;
    if !seed.is_subset(candidates) {
        return Err(AlignmentError::SeedNotSubset);
    }
    let mut cur = seed.clone();
    let mut cov = Coverage::of(&cur);
    let pending: Vec<(usize, usize)> = {
        let mut v: Vec<(usize, usize)> = candidates.links().filter(|&(i, j)| !cur.contains(i, j)).collect();
        v.sort_by_key(|&(i, j)| (j, i));
        v
    };
    loop {
        let mut added = false;
        for &(i, j) in &pending {
            if cur.contains(i, j) || (cov.src[i] && cov.tgt[j]) {
                continue;
            }
            let neighbor = neighborhood.offsets().iter().any(|&(di, dj)| {
                match (i.checked_add_signed(di), j.checked_add_signed(dj)) {
                    (Some(a), Some(b)) => cur.contains(a, b),
                    _ => false,
                }
            });
            if neighbor {
                cur.links.insert((i, j));
                cov.src[i] = true;
                cov.tgt[j] = true;
                added = true;
            }
        }
        if !added {
            return Ok(cur);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinalMode {
    /// add links where either word is unaligned
    Final,
    /// add links where both words are unaligned
    FinalAnd,
}

/// Final step of the grow heuristics.
///
/// `Final` judges alignment status on `current` as given, so its output
/// always contains the `FinalAnd` output; `FinalAnd` updates the status as
/// links are added, scanning target-major.
pub fn finalize(
    current: &AlignmentMatrix,
    candidates: &AlignmentMatrix,
    mode: FinalMode,
) -> Result<AlignmentMatrix, AlignmentError> {
    current.check_dims(candidates)?;
    if !current.is_subset(candidates) {
        return Err(AlignmentError::SeedNotSubset);
    }
    let mut out = current.clone();
    let mut cov = Coverage::of(current);
    let mut order: Vec<(usize, usize)> = candidates.links().collect();
    order.sort_by_key(|&(i, j)| (j, i));
    match mode {
        FinalMode::Final => {
            for (i, j) in order {
                if !cov.src[i] || !cov.tgt[j] {
                    out.links.insert((i, j));
                }
            }
        }
        FinalMode::FinalAnd => {
            for (i, j) in order {
                if !cov.src[i] && !cov.tgt[j] {
                    out.links.insert((i, j));
                    cov.src[i] = true;
                    cov.tgt[j] = true;
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Heuristic {
    Intersection,
    Union,
    GrowDiag,
    GrowDiagFinal,
    GrowDiagFinalAnd,
    #[serde(rename = "src2tgt-only")]
    SrcToTgtOnly,
    #[serde(rename = "tgt2src-only")]
    TgtToSrcOnly,
}

impl Heuristic {
    pub const ALL: [Heuristic; 7] = [
        Heuristic::Intersection,
        Heuristic::Union,
        Heuristic::GrowDiag,
        Heuristic::GrowDiagFinal,
        Heuristic::GrowDiagFinalAnd,
        Heuristic::SrcToTgtOnly,
        Heuristic::TgtToSrcOnly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Heuristic::Intersection => "intersection",
            Heuristic::Union => "union",
            Heuristic::GrowDiag => "grow-diag",
            Heuristic::GrowDiagFinal => "grow-diag-final",
            Heuristic::GrowDiagFinalAnd => "grow-diag-final-and",
            Heuristic::SrcToTgtOnly => "src2tgt-only",
            Heuristic::TgtToSrcOnly => "tgt2src-only",
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Heuristic {
    type Err = AlignmentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Heuristic::ALL
            .into_iter()
            .find(|h| h.name() == s)
            .ok_or_else(|| AlignmentError::UnknownHeuristic(s.to_owned()))
    }
}

/// Combines a source→target alignment with a target→source one. `tgt2src`
/// is in its own orientation (`j-i` links) and is transposed here.
pub fn symmetrize(
    src2tgt: &AlignmentMatrix,
    tgt2src: &AlignmentMatrix,
    heuristic: Heuristic,
) -> Result<AlignmentMatrix, AlignmentError> {
    let rev = tgt2src.transpose();
    let inter = intersect(src2tgt, &rev)?;
    let uni = union(src2tgt, &rev)?;
    Ok(match heuristic {
        Heuristic::Intersection => inter,
        Heuristic::Union => uni,
        Heuristic::SrcToTgtOnly => src2tgt.clone(),
        Heuristic::TgtToSrcOnly => rev,
        Heuristic::GrowDiag => grow_diag(&inter, &uni, Neighborhood::Diag)?,
        Heuristic::GrowDiagFinal => finalize(&grow_diag(&inter, &uni, Neighborhood::Diag)?, &uni, FinalMode::Final)?,
        Heuristic::GrowDiagFinalAnd => {
            finalize(&grow_diag(&inter, &uni, Neighborhood::Diag)?, &uni, FinalMode::FinalAnd)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: usize, t: usize, links: &[(usize, usize)]) -> AlignmentMatrix {
        AlignmentMatrix::from_links(s, t, links.iter().copied()).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(AlignmentMatrix::parse("0-0 1-1", 2, 2).unwrap(), m(2, 2, &[(0, 0), (1, 1)]));
        assert!(AlignmentMatrix::parse("", 2, 2).unwrap().is_empty());
        assert_eq!(AlignmentMatrix::parse("5-0", 3, 3), Err(AlignmentError::IndexOutOfRange(5, 0)));
        assert_eq!(AlignmentMatrix::parse("0:1", 3, 3), Err(AlignmentError::ParseError("0:1".into())));
        assert_eq!(implied_dimensions("0-2 3-1").unwrap(), (4, 3));
    }

    #[test]
    fn display_roundtrip() {
        let a = m(3, 3, &[(2, 0), (0, 1)]);
        assert_eq!(a.to_string(), "0-1 2-0");
        assert_eq!(AlignmentMatrix::parse(&a.to_string(), 3, 3).unwrap(), a);
    }

    #[test]
    fn set_operations() {
        let a = m(3, 3, &[(0, 0), (1, 1)]);
        let b = m(3, 3, &[(0, 0), (1, 1), (2, 2)]);
        assert_eq!(intersect(&a, &b).unwrap(), a);
        assert_eq!(intersect(&a, &a).unwrap(), a);
        assert!(intersect(&m(3, 3, &[(0, 1)]), &m(3, 3, &[(1, 0)])).unwrap().is_empty());
        assert_eq!(union(&m(3, 3, &[(0, 0)]), &m(3, 3, &[(1, 1)])).unwrap(), a);
        assert_eq!(union(&a, &m(3, 3, &[(0, 0), (2, 2)])).unwrap().len(), 3);
        assert!(matches!(intersect(&a, &m(2, 3, &[])), Err(AlignmentError::DimensionMismatch(..))));
    }

    #[test]
    fn growing() {
        let seed = m(3, 3, &[(0, 0), (1, 1)]);
        let cand = m(3, 3, &[(0, 0), (1, 1), (2, 2)]);
        assert_eq!(grow_diag(&seed, &cand, Neighborhood::Diag).unwrap(), cand);
        assert_eq!(grow_diag(&seed, &cand, Neighborhood::Cross).unwrap(), seed);
        assert_eq!(grow_diag(&seed, &seed, Neighborhood::Diag).unwrap(), seed);
        let far = m(3, 3, &[(0, 0), (2, 0)]);
        assert_eq!(grow_diag(&m(3, 3, &[(0, 0)]), &far, Neighborhood::Diag).unwrap(), m(3, 3, &[(0, 0)]));
        assert_eq!(grow_diag(&cand, &seed, Neighborhood::Diag), Err(AlignmentError::SeedNotSubset));
    }

    #[test]
    fn growing_chains_to_fixed_point() {
        let seed = m(4, 4, &[(0, 0)]);
        let cand = m(4, 4, &[(0, 0), (1, 1), (2, 2), (3, 3)]);
        assert_eq!(grow_diag(&seed, &cand, Neighborhood::Diag).unwrap(), cand);
    }

    #[test]
    fn final_or_versus_and() {
        let cur = m(2, 2, &[(0, 0)]);
        let cand = m(2, 2, &[(0, 0), (1, 1)]);
        for mode in [FinalMode::Final, FinalMode::FinalAnd] {
            assert_eq!(finalize(&cur, &cand, mode).unwrap(), cand);
        }
        let cur = m(2, 2, &[(0, 0), (0, 1)]);
        let cand = m(2, 2, &[(0, 0), (0, 1), (1, 1)]);
        assert_eq!(finalize(&cur, &cand, FinalMode::Final).unwrap(), cand);
        assert_eq!(finalize(&cur, &cand, FinalMode::FinalAnd).unwrap(), cur);
        let full = m(2, 2, &[(0, 0), (1, 1)]);
        let cand = m(2, 2, &[(0, 0), (1, 1), (0, 1)]);
        assert_eq!(finalize(&full, &cand, FinalMode::Final).unwrap(), full);
        assert_eq!(finalize(&full, &cand, FinalMode::FinalAnd).unwrap(), full);
    }

    #[test]
    fn worked_example() {
        let fwd = m(3, 3, &[(0, 0), (1, 1), (2, 2)]);
        let rev = m(3, 3, &[(0, 0), (1, 1)]);
        let out = symmetrize(&fwd, &rev, Heuristic::GrowDiagFinalAnd).unwrap();
        assert_eq!(out, m(3, 3, &[(0, 0), (1, 1), (2, 2)]));
    }

    #[test]
    fn reverse_input_is_transposed() {
        let fwd = m(2, 3, &[(0, 2)]);
        let rev = m(3, 2, &[(2, 0)]);
        assert_eq!(symmetrize(&fwd, &rev, Heuristic::Intersection).unwrap(), fwd);
        assert_eq!(symmetrize(&fwd, &rev, Heuristic::TgtToSrcOnly).unwrap(), fwd);
    }

    #[test]
    fn identical_inputs_are_fixed() {
        let a = m(3, 4, &[(0, 1), (2, 3), (1, 0)]);
        for h in Heuristic::ALL {
            assert_eq!(symmetrize(&a, &a.transpose(), h).unwrap(), a, "{h}");
        }
    }

    #[test]
    fn heuristic_names_roundtrip() {
        for h in Heuristic::ALL {
            assert_eq!(h.name().parse::<Heuristic>().unwrap(), h);
        }
        assert!("grow".parse::<Heuristic>().is_err());
    }
}
