//! Vertex labelling disciplines and the cyclic-sequence calculus.
//!
//! Labels are plain integers attached to vertices. The validators implement
//! the disciplines used by the bijections: suitable (labels differ by
//! exactly one across every edge), well-labelled (labels drop by at most one
//! along the canonical direction around dark faces) and its mirror variant,
//! plus the geodesic labelling coming from directed distances.
//!
//! The cyclic-sequence side provides completions and complements of
//! Łukasiewicz cyclic sequences: insert a rising run between every weak
//! ascent, take the inserted elements in reverse order.

use crate::maps::{Dart, DartMap, Hypermap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("label vector has length {0}, map has {1} vertices")]
    WrongLength(usize, usize),
    #[error("sequence is not a Łukasiewicz cyclic sequence")]
    NotLukasiewicz,
    #[error("cyclic sequence must be nonempty")]
    Empty,
}

/// A nonempty cyclic list of integers. Equality is up to cyclic rotation
/// unless both sides carry a distinguished start (rooted contexts attach
/// one).
#[derive(Debug, Clone, Eq)]
pub struct CyclicSequence {
    entries: Vec<i64>,
    anchored: bool,
}

impl CyclicSequence {
    pub fn new(entries: Vec<i64>) -> Result<Self, LabelError> {
        if entries.is_empty() {
            return Err(LabelError::Empty);
        }
        Ok(CyclicSequence { entries, anchored: false })
    }

    /// A sequence with a distinguished starting entry.
    pub fn anchored(entries: Vec<i64>) -> Result<Self, LabelError> {
        let mut s = CyclicSequence::new(entries)?;
        s.anchored = true;
        Ok(s)
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_anchored(&self) -> bool {
        self.anchored
    }

    /// Forget the distinguished start.
    pub fn unanchored(&self) -> CyclicSequence {
        CyclicSequence { entries: self.entries.clone(), anchored: false }
    }

    /// Cyclic steps `entry[i+1] - entry[i]`.
    fn steps(&self) -> impl Iterator<Item = i64> + '_ {
        let n = self.entries.len();
        (0..n).map(move |i| self.entries[(i + 1) % n] - self.entries[i])
    }

    /// Backward steps are at most one: every step is `>= -1`.
    pub fn is_lukasiewicz(&self) -> bool {
        self.steps().all(|s| s >= -1)
    }

    /// A descending sequence of length `r` has a unique rise and `r - 1`
    /// descents by one.
    pub fn is_descending(&self) -> bool {
        let descents = self.steps().filter(|&s| s == -1).count();
        let rises = self.steps().filter(|&s| s >= 0).count();
        descents == self.len() - 1 && rises == 1
    }

    /// A stretched type of degree `2s`: `s` rises by one followed by `s`
    /// descents by one (up to rotation).
    pub fn is_stretched(&self) -> bool {
        let n = self.len();
        if n % 2 != 0 {
            return false;
        }
        let steps: Vec<i64> = self.steps().collect();
        if steps.iter().any(|&s| s != 1 && s != -1) {
            return false;
        }
        // Exactly one sign change from -1 to +1 around the cycle.
        let changes = (0..n).filter(|&i| steps[i] == -1 && steps[(i + 1) % n] == 1).count();
        changes == 1 && steps.iter().filter(|&&s| s == 1).count() == n / 2
    }

    fn completion_with_positions(&self, upper: bool) -> (Vec<i64>, Vec<bool>) {
        // Walk the cycle once; after each entry, if the next is >= it,
        // insert the rising run. `inserted[k]` marks inserted entries.
        let n = self.entries.len();
        let mut out = Vec::new();
        let mut inserted = Vec::new();
        for idx in 0..n {
            let i = self.entries[idx];
            let j = self.entries[(idx + 1) % n];
            out.push(i);
            inserted.push(false);
            if j >= i {
                let (lo, hi) = if upper { (i + 1, j + 1) } else { (i - 1, j - 1) };
                for v in lo..=hi {
                    out.push(v);
                    inserted.push(true);
                }
            }
        }
        (out, inserted)
    }

    /// Insert the rising run `i+1..=j+1` (upper) or `i-1..=j-1` (lower)
    /// between every pair of cyclically consecutive entries `i, j` with
    /// `j >= i`.
    pub fn completion(&self, upper: bool) -> Result<CyclicSequence, LabelError> {
        if !self.is_lukasiewicz() {
            return Err(LabelError::NotLukasiewicz);
        }
        let (out, _) = self.completion_with_positions(upper);
        CyclicSequence::new(out)
    }

    /// The inserted part of the completion, taken in reverse order.
    pub fn complement(&self, upper: bool) -> Result<CyclicSequence, LabelError> {
        if !self.is_lukasiewicz() {
            return Err(LabelError::NotLukasiewicz);
        }
        let (out, inserted) = self.completion_with_positions(upper);
        let mut comp: Vec<i64> =
            out.into_iter().zip(inserted).filter(|(_, ins)| *ins).map(|(v, _)| v).collect();
        comp.reverse();
        CyclicSequence::new(comp)
    }

    fn min_rotation(&self) -> Vec<i64> {
        let n = self.entries.len();
        let mut best: Option<Vec<i64>> = None;
        for r in 0..n {
            let rot: Vec<i64> = (0..n).map(|i| self.entries[(i + r) % n]).collect();
            if best.as_ref().map_or(true, |b| rot < *b) {
                best = Some(rot);
            }
        }
        best.unwrap()
    }
}

impl PartialEq for CyclicSequence {
    fn eq(&self, other: &Self) -> bool {
        if self.entries.len() != other.entries.len() {
            return false;
        }
        if self.anchored && other.anchored {
            self.entries == other.entries
        } else {
            self.min_rotation() == other.min_rotation()
        }
    }
}

fn check_len(labels: &[i64], m: &DartMap) -> Result<(), LabelError> {
    if labels.len() != m.n_vertices() {
        Err(LabelError::WrongLength(labels.len(), m.n_vertices()))
    } else {
        Ok(())
    }
}

/// Every edge joins labels differing by exactly one.
pub fn validate_suitable(m: &DartMap, labels: &[i64]) -> Result<bool, LabelError> {
    check_len(labels, m)?;
    Ok((0..m.n_darts())
        .all(|d| (labels[m.vertex_of(d)] - labels[m.head_of(d)]).abs() == 1))
}

/// Along every canonically directed edge `v -> u` (dark face on the right),
/// `label(u) >= label(v) - 1`.
pub fn validate_well_labelled(h: &Hypermap, labels: &[i64]) -> Result<bool, LabelError> {
    check_len(labels, h.map())?;
    Ok(h.canonical_darts()
        .all(|d| labels[h.map().head_of(d)] >= labels[h.map().vertex_of(d)] - 1))
}

/// Mirror variant: the traversal with the dark face on its left may drop by
/// at most one, i.e. `label(tail) >= label(head) - 1` on canonical darts.
pub fn validate_mirror_well_labelled(h: &Hypermap, labels: &[i64]) -> Result<bool, LabelError> {
    check_len(labels, h.map())?;
    Ok(h.canonical_darts()
        .all(|d| labels[h.map().vertex_of(d)] >= labels[h.map().head_of(d)] - 1))
}

/// Local minima and maxima: vertices all of whose neighbors have strictly
/// greater (resp. smaller) labels.
pub fn local_extrema(m: &DartMap, labels: &[i64]) -> (Vec<usize>, Vec<usize>) {
    let mut mins = Vec::new();
    let mut maxs = Vec::new();
    for v in 0..m.n_vertices() {
        let mut is_min = true;
        let mut is_max = true;
        for u in m.neighbors(v) {
            if labels[u] <= labels[v] {
                is_min = false;
            }
            if labels[u] >= labels[v] {
                is_max = false;
            }
        }
        if is_min {
            mins.push(v);
        }
        if is_max {
            maxs.push(v);
        }
    }
    (mins, maxs)
}

/// Right local minima and maxima of a hypermap: `v` is a right neighbor of
/// `u` when the edge traversed `v -> u` has its dark face on the right.
pub fn right_local_extrema(h: &Hypermap, labels: &[i64]) -> (Vec<usize>, Vec<usize>) {
    let m = h.map();
    let mut mins = Vec::new();
    let mut maxs = Vec::new();
    for u in 0..m.n_vertices() {
        let mut is_min = true;
        let mut is_max = true;
        // Right neighbors of u are tails of canonical darts with head u.
        for &d in m.vertex_darts_ccw(u) {
            let c = m.alpha(d);
            if !h.is_canonical(c) {
                continue;
            }
            let v = m.vertex_of(c);
            if labels[v] < labels[u] {
                is_min = false;
            }
            if labels[v] > labels[u] {
                is_max = false;
            }
        }
        if is_min {
            mins.push(u);
        }
        if is_max {
            maxs.push(u);
        }
    }
    (mins, maxs)
}

/// Labels read along a face contour. Counterclockwise follows the
/// phi-orbit; clockwise reverses it. When `start` is given it must lie on
/// the face and the sequence is anchored at its vertex.
pub fn face_type(
    m: &DartMap,
    labels: &[i64],
    face: usize,
    clockwise: bool,
    start: Option<Dart>,
) -> CyclicSequence {
    let orbit = m.face_darts_ccw(face);
    let pos = match start {
        None => 0,
        Some(d) => {
            let p = orbit.iter().position(|&x| x == d);
            p.expect("start dart must lie on the face")
        }
    };
    let n = orbit.len();
    let mut seq = Vec::with_capacity(n);
    for k in 0..n {
        let idx = if clockwise {
            // Same starting vertex, contour walked backwards.
            (pos + n - k) % n
        } else {
            (pos + k) % n
        };
        seq.push(labels[m.vertex_of(orbit[idx])]);
    }
    if start.is_some() {
        CyclicSequence::anchored(seq).unwrap()
    } else {
        CyclicSequence::new(seq).unwrap()
    }
}

/// Negate every label (the `opp` involution on labelled objects).
pub fn opp(labels: &[i64]) -> Vec<i64> {
    labels.iter().map(|&l| -l).collect()
}

/// Shift labels so the minimum is zero.
pub fn normalize_min_zero(labels: &[i64]) -> Vec<i64> {
    let min = labels.iter().copied().min().unwrap_or(0);
    labels.iter().map(|&l| l - min).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{build, Hypermap};

    fn cyc(v: &[i64]) -> CyclicSequence {
        CyclicSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn suitable_edge_cases() {
        let b = build::bridge();
        assert!(validate_suitable(&b, &[0, 1]).unwrap());
        assert!(!validate_suitable(&b, &[0, 0]).unwrap());
        // 4-cycle labelled 0,1,0,1.
        let mut sigma = vec![0; 8];
        for (a, b) in [(0, 7), (7, 0), (2, 1), (1, 2), (4, 3), (3, 4), (6, 5), (5, 6)] {
            sigma[a] = b;
        }
        let c4 = crate::maps::DartMap::new(sigma, vec![1, 0, 3, 2, 5, 4, 7, 6]).unwrap();
        assert!(validate_suitable(&c4, &[0, 1, 0, 1]).unwrap());
    }

    #[test]
    fn well_labelled_dark_2_face() {
        let h = Hypermap::bicolor(build::double_edge(), None).unwrap();
        assert!(validate_well_labelled(&h, &[1, 0]).unwrap());
        assert!(validate_well_labelled(&h, &[0, 1]).unwrap());
        assert!(!validate_well_labelled(&h, &[2, 0]).unwrap());
        // A geodesic labelling is mirror-valid.
        let d = h.directed_distances(0).unwrap();
        let labels: Vec<i64> = d.iter().map(|&x| x as i64).collect();
        assert!(validate_mirror_well_labelled(&h, &labels).unwrap());
    }

    #[test]
    fn extrema_small() {
        let b = build::bridge();
        let (mins, maxs) = local_extrema(&b, &[0, 1]);
        assert_eq!((mins, maxs), (vec![0], vec![1]));
        // Path 0-1-0: middle vertex is the unique local max.
        let m = crate::maps::DartMap::new(vec![0, 2, 1, 3], vec![1, 0, 3, 2]).unwrap();
        let labels = [0, 1, 0];
        let middle = (0..3).find(|&v| m.degree(v) == 2).unwrap();
        let (mins, maxs) = local_extrema(&m, &labels);
        assert_eq!(maxs, vec![middle]);
        assert_eq!(mins.len(), 2);
    }

    #[test]
    fn geodesic_pointed_vertex_is_unique_right_local_min() {
        let m = build::triangle();
        let inner = m.face_of(0);
        let h = Hypermap::bicolor(m, Some(inner)).unwrap();
        let d = h.directed_distances(0).unwrap();
        let labels: Vec<i64> = d.iter().map(|&x| x as i64).collect();
        let (mins, _) = right_local_extrema(&h, &labels);
        assert_eq!(mins, vec![0]);
    }

    #[test]
    fn completion_and_complement_examples() {
        // Lower completion of (1,1) is (1,0,1,0); lower complement is (0,0).
        let t = cyc(&[1, 1]);
        assert_eq!(t.completion(false).unwrap(), cyc(&[1, 0, 1, 0]));
        assert_eq!(t.complement(false).unwrap(), cyc(&[0, 0]));
        // Upper complement of (j, j-1) is (j, j+1); here j = 1.
        assert_eq!(cyc(&[1, 0]).complement(true).unwrap(), cyc(&[1, 2]));
        // Singleton: c_down((1)) = (1, 0).
        assert_eq!(cyc(&[1]).completion(false).unwrap(), cyc(&[1, 0]));
        assert_eq!(cyc(&[1]).complement(true).unwrap(), cyc(&[2]));
    }

    #[test]
    fn complement_rejects_non_lukasiewicz() {
        let t = cyc(&[2, 0]);
        assert!(!t.is_lukasiewicz());
        assert_eq!(t.complement(true), Err(LabelError::NotLukasiewicz));
    }

    #[test]
    fn complements_are_mutually_inverse_exhaustively() {
        // All Łukasiewicz cyclic sequences with entries in [-3,3], length <= 8
        // (generated with the step constraint to keep the search tight).
        let mut checked = 0u64;
        for len in 1..=8usize {
            let mut seq = vec![0i64; len];
            fn rec(seq: &mut Vec<i64>, pos: usize, len: usize, checked: &mut u64) {
                if pos == len {
                    let t = CyclicSequence::new(seq.clone()).unwrap();
                    if !t.is_lukasiewicz() {
                        return;
                    }
                    let up = t.complement(true).unwrap();
                    assert!(up.is_lukasiewicz());
                    let back = up.complement(false).unwrap();
                    assert_eq!(back, t, "sequence {:?}", seq);
                    // Completion length bookkeeping.
                    let comp = t.completion(true).unwrap();
                    assert_eq!(comp.len(), t.len() + up.len());
                    *checked += 1;
                    return;
                }
                let lo = if pos == 0 { -3 } else { (seq[pos - 1] - 1).max(-3) };
                for v in lo..=3 {
                    seq[pos] = v;
                    rec(seq, pos + 1, len, checked);
                }
            }
            rec(&mut seq, 0, len, &mut checked);
        }
        assert!(checked > 30_000, "exhaustive sweep covered {} sequences", checked);
    }

    #[test]
    fn descending_and_stretched_detectors() {
        assert!(cyc(&[2, 1, 0]).is_descending()); // unique rise 0 -> 2
        assert!(cyc(&[1, 0, 2]).is_descending());
        assert!(!cyc(&[1, 1, 0]).is_descending());
        assert!(cyc(&[0, 1]).is_descending());
        assert!(cyc(&[1, 0]).is_descending());
        assert!(!cyc(&[1, 1]).is_descending());
        // Stretched degree-6 type: i, i+1, i+2, i+3, i+2, i+1 at i = 0.
        assert!(cyc(&[0, 1, 2, 3, 2, 1]).is_stretched());
        assert!(!cyc(&[0, 1, 2, 1, 2, 1]).is_stretched());
        assert!(cyc(&[0, 1, 0, 1]).eq(&cyc(&[1, 0, 1, 0])));
        assert!(!cyc(&[0, 1, 0, 1]).is_stretched());
        assert!(cyc(&[5, 6, 5, 4]).is_stretched());
        assert!(cyc(&[5, 6, 7, 6]).is_stretched());
    }

    #[test]
    fn face_type_reads_labels_around_contours() {
        let m = build::double_edge();
        let h = Hypermap::bicolor(m.clone(), None).unwrap();
        let labels = [1i64, 0];
        let dark: usize = h.dark_faces().next().unwrap();
        let t = face_type(h.map(), &labels, dark, false, None);
        assert_eq!(t, cyc(&[1, 0]));
        // Anchored start fixes the first entry.
        let d0 = h.map().face_darts_ccw(dark)[0];
        let anchored = face_type(h.map(), &labels, dark, false, Some(d0));
        assert!(anchored.is_anchored());
        assert_eq!(anchored.entries()[0], labels[h.map().vertex_of(d0)]);
    }

    #[test]
    fn anchored_equality_distinguishes_rotations() {
        let a = CyclicSequence::anchored(vec![0, 1, 2]).unwrap();
        let b = CyclicSequence::anchored(vec![1, 2, 0]).unwrap();
        assert_ne!(a, b);
        assert_eq!(a.unanchored(), b.unanchored());
    }
}
