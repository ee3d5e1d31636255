//! Mobiles: plane trees with unlabelled black and labelled white vertices.
//!
//! A mobile is stored planted at a white root corner. Children lists are in
//! **clockwise** order around each vertex, so the cw-type of a black vertex
//! is its parent label followed by its stored children labels. Around every
//! black vertex the cw-type must be a Łukasiewicz cyclic sequence; floating
//! mobiles have an arbitrary positive minimal label, plain ones have minimal
//! label exactly 1.

mod enumerate;
mod sample;

pub use enumerate::enumerate;
pub use sample::{sample_uniform, CountTable, SplitMix64};

use crate::labels::CyclicSequence;
use crate::maps::{DartMap, MapError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MobileError {
    #[error("label rule violated at a black vertex (cw-type {0:?})")]
    LabelRule(Vec<i64>),
    #[error("minimal label is {found}, flavor requires {required}")]
    MinLabel { found: i64, required: &'static str },
    #[error("black vertex has degree {found}, flavor requires {required}")]
    BlackDegree { found: usize, required: usize },
    #[error("black cw-type {0:?} is not descending")]
    NotDescending(Vec<i64>),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("empty mobile has no star map")]
    EmptyMobile,
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Flavor of mobile being validated, enumerated or sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flavor {
    /// Required black degree (`p`), when fixed.
    pub black_degree: Option<usize>,
    /// All black cw-types must be descending.
    pub descending: bool,
    /// Floating: minimal label any positive integer; otherwise exactly 1.
    pub floating: bool,
}

impl Flavor {
    pub fn p_mobile(p: usize, floating: bool) -> Flavor {
        Flavor { black_degree: Some(p), descending: false, floating }
    }

    pub fn p_descending(p: usize, floating: bool) -> Flavor {
        Flavor { black_degree: Some(p), descending: true, floating }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mobile {
    pub root_label: i64,
    pub children: Vec<BlackNode>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlackNode {
    pub children: Vec<WhiteNode>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteNode {
    pub label: i64,
    pub children: Vec<BlackNode>,
}

impl Mobile {
    pub fn bare(root_label: i64) -> Mobile {
        Mobile { root_label, children: Vec::new() }
    }

    pub fn black_count(&self) -> usize {
        fn blacks_w(w: &[BlackNode]) -> usize {
            w.iter().map(|b| 1 + b.children.iter().map(|c| blacks_w(&c.children)).sum::<usize>())
                .sum()
        }
        blacks_w(&self.children)
    }

    pub fn white_count(&self) -> usize {
        1 + self.count_white_descendants()
    }

    fn count_white_descendants(&self) -> usize {
        fn rec(blacks: &[BlackNode]) -> usize {
            blacks
                .iter()
                .map(|b| b.children.iter().map(|w| 1 + rec(&w.children)).sum::<usize>())
                .sum()
        }
        rec(&self.children)
    }

    pub fn min_label(&self) -> i64 {
        let mut min = self.root_label;
        self.for_each_white(|l| min = min.min(l));
        min
    }

    fn for_each_white(&self, mut f: impl FnMut(i64)) {
        fn rec(blacks: &[BlackNode], f: &mut impl FnMut(i64)) {
            for b in blacks {
                for w in &b.children {
                    f(w.label);
                    rec(&w.children, f);
                }
            }
        }
        f(self.root_label);
        rec(&self.children, &mut f);
    }

    /// Shift every label by `delta`.
    pub fn shifted(&self, delta: i64) -> Mobile {
        fn rec(blacks: &[BlackNode], delta: i64) -> Vec<BlackNode> {
            blacks
                .iter()
                .map(|b| BlackNode {
                    children: b
                        .children
                        .iter()
                        .map(|w| WhiteNode { label: w.label + delta, children: rec(&w.children, delta) })
                        .collect(),
                })
                .collect()
        }
        Mobile { root_label: self.root_label + delta, children: rec(&self.children, delta) }
    }

    /// All black cw-types, each as parent label followed by children labels.
    pub fn black_cw_types(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        fn rec(parent: i64, blacks: &[BlackNode], out: &mut Vec<Vec<i64>>) {
            for b in blacks {
                let mut t = vec![parent];
                t.extend(b.children.iter().map(|w| w.label));
                out.push(t);
                for w in &b.children {
                    rec(w.label, &w.children, out);
                }
            }
        }
        rec(self.root_label, &self.children, &mut out);
        out
    }

    /// Validate the mobile against a flavor.
    pub fn validate(&self, flavor: Flavor) -> Result<(), MobileError> {
        let min = self.min_label();
        if flavor.floating {
            if min < 1 {
                return Err(MobileError::MinLabel { found: min, required: "a positive integer" });
            }
        } else if min != 1 {
            return Err(MobileError::MinLabel { found: min, required: "exactly 1" });
        }
        for t in self.black_cw_types() {
            if let Some(p) = flavor.black_degree {
                if t.len() != p {
                    return Err(MobileError::BlackDegree { found: t.len(), required: p });
                }
            }
            let seq = CyclicSequence::new(t.clone()).expect("nonempty");
            if !seq.is_lukasiewicz() {
                return Err(MobileError::LabelRule(t));
            }
            if flavor.descending && !seq.is_descending() {
                return Err(MobileError::NotDescending(t));
            }
        }
        Ok(())
    }

    /// Indexed flat view: white labels, black adjacency (parent-first cw
    /// lists), contour.
    pub fn index(&self) -> MobileIndex {
        let mut labels = vec![self.root_label];
        let mut blacks = Vec::new();
        // DFS assigning ids; whites get ids in discovery order, root = 0.
        fn rec(
            parent_white: usize,
            nodes: &[BlackNode],
            labels: &mut Vec<i64>,
            blacks: &mut Vec<Vec<usize>>,
        ) {
            for b in nodes {
                let mut adj = vec![parent_white];
                let black_id = blacks.len();
                blacks.push(Vec::new());
                for w in &b.children {
                    let wid = labels.len();
                    labels.push(w.label);
                    adj.push(wid);
                    rec(wid, &w.children, labels, blacks);
                }
                blacks[black_id] = adj;
            }
        }
        rec(0, &self.children, &mut labels, &mut blacks);
        MobileIndex { labels, blacks }
    }

    /// White vertices visited along the counterclockwise contour (one entry
    /// per white corner), as ids into [`MobileIndex::labels`]. Since stored
    /// children order is clockwise, the walk descends in reverse order.
    pub fn contour_ccw_white_ids(&self) -> Vec<usize> {
        // Annotate whites with ids in the same forward DFS order as `index`.
        struct Annot {
            id: usize,
            blacks: Vec<Vec<Annot>>,
        }
        fn annotate(nodes: &[BlackNode], next: &mut usize) -> Vec<Vec<Annot>> {
            nodes
                .iter()
                .map(|b| {
                    b.children
                        .iter()
                        .map(|w| {
                            let id = *next;
                            *next += 1;
                            Annot { id, blacks: annotate(&w.children, next) }
                        })
                        .collect()
                })
                .collect()
        }
        fn visit(id: usize, blacks: &[Vec<Annot>], out: &mut Vec<usize>) {
            for group in blacks.iter().rev() {
                out.push(id);
                for w in group.iter().rev() {
                    visit(w.id, &w.blacks, out);
                }
            }
            out.push(id);
        }
        let mut next = 1;
        let root_blacks = annotate(&self.children, &mut next);
        let mut out = Vec::new();
        visit(0, &root_blacks, &mut out);
        // The root's first and last emissions are the same corner.
        if out.len() > 1 {
            out.pop();
        }
        out
    }

    /// Canonical text encoding: `label(child child ...)` with black children
    /// in brackets.
    pub fn encode(&self) -> String {
        fn white(out: &mut String, label: i64, blacks: &[BlackNode]) {
            out.push_str(&label.to_string());
            for b in blacks {
                out.push('[');
                for (i, w) in b.children.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    white(out, w.label, &w.children);
                }
                out.push(']');
            }
        }
        let mut out = String::new();
        white(&mut out, self.root_label, &self.children);
        out
    }

    /// White vertices that are right local maxima: every right neighbor
    /// (clockwise predecessor around a shared black vertex) has a smaller or
    /// equal label.
    pub fn right_local_max_whites(&self) -> Vec<usize> {
        let idx = self.index();
        let n = idx.labels.len();
        let mut ok = vec![true; n];
        for adj in &idx.blacks {
            let k = adj.len();
            for j in 0..k {
                let u = adj[j];
                let rn = adj[(j + k - 1) % k];
                if idx.labels[rn] > idx.labels[u] {
                    ok[u] = false;
                }
            }
        }
        (0..n).filter(|&u| ok[u]).collect()
    }

    /// The star map of the mobile (the mobile is the star representation of
    /// a one-light-face hypermap): a bipartite tree map with black star
    /// centers. Returns the map, the black flags per map vertex, the map
    /// vertex of each white id, and the root corner dart (white side of the
    /// first child edge in clockwise order).
    pub fn to_star_map(&self) -> Result<StarMobile, MobileError> {
        if self.children.is_empty() {
            return Err(MobileError::EmptyMobile);
        }
        let idx = self.index();
        // Darts: two per tree edge. Build rotations: at every vertex the ccw
        // order is parent dart followed by children darts reversed.
        let mut edges: Vec<(usize, usize)> = Vec::new(); // (white endpoint dart owner info) below
        // Collect edges as (black_id, position) pairs; dart numbering:
        // edge e: dart 2e at its white end, 2e+1 at its black end.
        // Edge list: for each black (dfs order): parent edge first, then
        // child edges in stored (cw) order.
        struct Builder {
            white_edges: Vec<Vec<(usize, bool)>>, // per white id: (edge, is_parent_side) in cw order
            black_edges: Vec<Vec<usize>>,         // per black id: edges in cw order, parent first
        }
        let mut b = Builder {
            white_edges: vec![Vec::new(); idx.labels.len()],
            black_edges: vec![Vec::new(); idx.blacks.len()],
        };
        fn rec(
            parent_white: usize,
            nodes: &[BlackNode],
            ctr_black: &mut usize,
            ctr_white: &mut usize,
            edges: &mut Vec<(usize, usize)>,
            b: &mut Builder,
        ) {
            for blk in nodes {
                let black_id = *ctr_black;
                *ctr_black += 1;
                let e_parent = edges.len();
                edges.push((parent_white, black_id));
                b.white_edges[parent_white].push((e_parent, false));
                b.black_edges[black_id].push(e_parent);
                for w in &blk.children {
                    let wid = *ctr_white;
                    *ctr_white += 1;
                    let e = edges.len();
                    edges.push((wid, black_id));
                    b.black_edges[black_id].push(e);
                    b.white_edges[wid].push((e, true));
                    rec(wid, &w.children, ctr_black, ctr_white, edges, b);
                }
            }
        }
        let (mut cb, mut cw) = (0usize, 1usize);
        rec(0, &self.children, &mut cb, &mut cw, &mut edges, &mut b);

        let n_darts = 2 * edges.len();
        let mut sigma = vec![usize::MAX; n_darts];
        let mut alpha = vec![0; n_darts];
        for e in 0..edges.len() {
            alpha[2 * e] = 2 * e + 1;
            alpha[2 * e + 1] = 2 * e;
        }
        // Rotations are clockwise by the crate calibration, matching the
        // stored children order: parent edge (if any) first, then child
        // edges in stored order.
        for w in 0..idx.labels.len() {
            let mut cwlist: Vec<usize> = Vec::new();
            let (parents, children): (Vec<_>, Vec<_>) =
                b.white_edges[w].iter().partition(|(_, is_parent)| *is_parent);
            for (e, _) in parents.into_iter().chain(children) {
                cwlist.push(2 * e);
            }
            let k = cwlist.len();
            for i in 0..k {
                sigma[cwlist[i]] = cwlist[(i + 1) % k];
            }
        }
        for adj in &b.black_edges {
            let k = adj.len();
            for i in 0..k {
                sigma[2 * adj[i] + 1] = 2 * adj[(i + 1) % k] + 1;
            }
        }
        let map = DartMap::new(sigma, alpha)?;
        let mut is_black = vec![false; map.n_vertices()];
        let mut vertex_of_white = vec![usize::MAX; idx.labels.len()];
        let mut vertex_of_black = vec![usize::MAX; idx.blacks.len()];
        for (e, &(w, blk)) in edges.iter().enumerate() {
            vertex_of_white[w] = map.vertex_of(2 * e);
            vertex_of_black[blk] = map.vertex_of(2 * e + 1);
            is_black[map.vertex_of(2 * e + 1)] = true;
        }
        let mut labels = vec![0i64; map.n_vertices()];
        for (w, &v) in vertex_of_white.iter().enumerate() {
            labels[v] = idx.labels[w];
        }
        Ok(StarMobile {
            map,
            is_black,
            labels,
            vertex_of_white,
            vertex_of_black,
            root_corner_dart: 0,
        })
    }
}

/// Flat indexed view of a mobile.
#[derive(Debug, Clone)]
pub struct MobileIndex {
    /// White id -> label (id 0 is the root).
    pub labels: Vec<i64>,
    /// Black id -> white neighbor ids, parent first, then children in
    /// clockwise order.
    pub blacks: Vec<Vec<usize>>,
}

/// A mobile converted to its star-map form.
#[derive(Debug, Clone)]
pub struct StarMobile {
    pub map: DartMap,
    pub is_black: Vec<bool>,
    /// Per map vertex (blacks carry 0).
    pub labels: Vec<i64>,
    pub vertex_of_white: Vec<usize>,
    pub vertex_of_black: Vec<usize>,
    /// White-side dart of the root's first clockwise child edge.
    pub root_corner_dart: usize,
}

/// Extract a mobile from a labelled bipartite tree map, planted at
/// `root_dart` (a white-side dart marking the root corner; children are
/// read clockwise starting from it).
pub fn mobile_from_star_map(
    map: &DartMap,
    is_black: &[bool],
    labels: &[i64],
    root_dart: usize,
) -> Mobile {
    assert!(!is_black[map.vertex_of(root_dart)], "root corner must be at a white vertex");
    fn build_white(
        map: &DartMap,
        is_black: &[bool],
        labels: &[i64],
        entry: usize, // dart at this white vertex toward its parent black, or the root corner dart
        is_root: bool,
    ) -> WhiteNode {
        let v = map.vertex_of(entry);
        let deg = map.degree(v);
        let mut blacks = Vec::new();
        // Stored children order is clockwise = sigma direction; for the root
        // the entry dart itself is the first child edge.
        let mut d = entry;
        let take = if is_root { deg } else { deg - 1 };
        if !is_root {
            d = map.sigma(d);
        }
        for _ in 0..take {
            blacks.push(build_black(map, is_black, labels, map.alpha(d)));
            d = map.sigma(d);
        }
        WhiteNode { label: labels[v], children: blacks }
    }
    fn build_black(map: &DartMap, is_black: &[bool], labels: &[i64], entry: usize) -> BlackNode {
        // `entry` is the black-side dart toward the parent white.
        let v = map.vertex_of(entry);
        debug_assert!(is_black[v]);
        let deg = map.degree(v);
        let mut whites = Vec::new();
        let mut d = map.sigma(entry);
        for _ in 0..(deg - 1) {
            whites.push(build_white(map, is_black, labels, map.alpha(d), false));
            d = map.sigma(d);
        }
        BlackNode { children: whites }
    }
    let root = build_white(map, is_black, labels, root_dart, true);
    Mobile { root_label: root.label, children: root.children }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_1_2() -> Mobile {
        // white(1) - black - white(2)
        Mobile {
            root_label: 1,
            children: vec![BlackNode { children: vec![WhiteNode { label: 2, children: vec![] }] }],
        }
    }

    fn chain_1_2_1() -> Mobile {
        Mobile {
            root_label: 1,
            children: vec![BlackNode {
                children: vec![WhiteNode {
                    label: 2,
                    children: vec![BlackNode {
                        children: vec![WhiteNode { label: 1, children: vec![] }],
                    }],
                }],
            }],
        }
    }

    #[test]
    fn validate_flavors() {
        let m = chain_1_2();
        assert!(m.validate(Flavor::p_mobile(2, false)).is_ok());
        // white(1)-black-white(3): descent by 2 reading cw from 3 to 1.
        let bad = Mobile {
            root_label: 1,
            children: vec![BlackNode { children: vec![WhiteNode { label: 3, children: vec![] }] }],
        };
        assert!(matches!(bad.validate(Flavor::p_mobile(2, false)), Err(MobileError::LabelRule(_))));
        // Bare root labelled 1 is a valid (empty) mobile.
        assert!(Mobile::bare(1).validate(Flavor::p_mobile(2, false)).is_ok());
        // Floating accepts min 3, plain does not.
        let shifted = m.shifted(2);
        assert!(shifted.validate(Flavor::p_mobile(2, true)).is_ok());
        assert!(matches!(
            shifted.validate(Flavor::p_mobile(2, false)),
            Err(MobileError::MinLabel { .. })
        ));
    }

    #[test]
    fn right_local_maxima() {
        let m = chain_1_2();
        let idx = m.index();
        let rlm = m.right_local_max_whites();
        let rlm_labels: Vec<i64> = rlm.iter().map(|&u| idx.labels[u]).collect();
        assert_eq!(rlm_labels, vec![2]);
        // Isolated white root is a right local max.
        assert_eq!(Mobile::bare(1).right_local_max_whites(), vec![0]);
        // Chain 1 - b - 2 - b - 1: only the 2.
        let c = chain_1_2_1();
        let labels = c.index().labels;
        let rlm: Vec<i64> =
            c.right_local_max_whites().iter().map(|&u| labels[u]).collect();
        assert_eq!(rlm, vec![2]);
    }

    #[test]
    fn counts_and_encoding() {
        let c = chain_1_2_1();
        assert_eq!(c.black_count(), 2);
        assert_eq!(c.white_count(), 3);
        assert_eq!(c.encode(), "1[2[1]]");
        assert_eq!(c.min_label(), 1);
    }

    #[test]
    fn contour_of_path_tree() {
        // 1 - b - 2 - b - 3: ccw contour whites read 1, 2, 3, 2 cyclically.
        let m = Mobile {
            root_label: 1,
            children: vec![BlackNode {
                children: vec![WhiteNode {
                    label: 2,
                    children: vec![BlackNode {
                        children: vec![WhiteNode { label: 3, children: vec![] }],
                    }],
                }],
            }],
        };
        let idx = m.index();
        let contour: Vec<i64> =
            m.contour_ccw_white_ids().iter().map(|&u| idx.labels[u]).collect();
        assert_eq!(contour, vec![1, 2, 3, 2]);
    }

    #[test]
    fn star_map_round_trip() {
        for m in [chain_1_2(), chain_1_2_1()] {
            let star = m.to_star_map().unwrap();
            assert_eq!(star.map.genus(), 0);
            assert_eq!(star.map.n_faces(), 1);
            let back = mobile_from_star_map(
                &star.map,
                &star.is_black,
                &star.labels,
                star.root_corner_dart,
            );
            assert_eq!(back, m);
        }
    }

    #[test]
    fn star_map_round_trip_branching() {
        // Root with two black children, one carrying two whites.
        let m = Mobile {
            root_label: 2,
            children: vec![
                BlackNode {
                    children: vec![
                        WhiteNode { label: 3, children: vec![] },
                        WhiteNode { label: 2, children: vec![] },
                    ],
                },
                BlackNode { children: vec![WhiteNode { label: 1, children: vec![] }] },
            ],
        };
        assert!(m.validate(Flavor { black_degree: None, descending: false, floating: true }).is_ok());
        let star = m.to_star_map().unwrap();
        let back =
            mobile_from_star_map(&star.map, &star.is_black, &star.labels, star.root_corner_dart);
        assert_eq!(back, m);
    }
}
