//! Combinatorial maps as rotation systems on darts.
//!
//! A map is a pair of permutations on darts `0..n`: `sigma` rotates the
//! darts leaving a vertex, `alpha` is the fixed-point-free involution
//! pairing the two darts of each edge. Faces are the orbits of
//! `phi = sigma ∘ alpha` (first `alpha`, then `sigma`).
//!
//! Orientation calibration (fixed once, everything else is stated relative
//! to it): `sigma` lists out-darts in **clockwise** order around each
//! vertex. A `phi`-orbit then traverses its face with the face on the
//! **left** of every dart, i.e. counterclockwise for a bounded face of a
//! planar drawing; "clockwise around a face" means walking a `phi`-orbit in
//! reverse. The corner between `sigma_inv(d)` and `d` belongs to `face(d)`:
//! along a counterclockwise contour `..., x, phi(x), ...` the corner swept
//! at the intermediate vertex is the one between the arrival dart
//! `alpha(x) = sigma_inv(phi(x))` and the departure dart `phi(x)`. The
//! calibration was pinned numerically on a loop-plus-bridge embedding (a
//! triangle is too symmetric to distinguish the mirror) and is guarded by
//! the mirror-identity regression tests in the bijection module.

mod hypermap;
pub mod io;

pub use hypermap::{blow_map_to_2hypermap, BrinModel, Collapse, Hypermap, StarRep};

use thiserror::Error;

pub type Dart = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("sigma and alpha must have the same even length, got {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("dart count {0} is odd")]
    OddDartCount(usize),
    #[error("sigma is not a permutation")]
    NotPermutation,
    #[error("alpha is not an involution")]
    AlphaNotInvolution,
    #[error("alpha fixes dart {0}")]
    AlphaFixedPoint(Dart),
    #[error("map is disconnected")]
    Disconnected,
    #[error("vertex {0} has odd degree {1}; an Eulerian map is required")]
    OddDegreeVertex(usize, usize),
    #[error("no proper face bicoloring exists")]
    NotBicolorable,
    #[error("operation requires genus 0, map has genus {0}")]
    GenusNotZero(u32),
    #[error("dark faces must all have degree {expected}, face {face} has degree {found}")]
    WrongDarkDegree { face: usize, expected: usize, found: usize },
    #[error("corners lie on different faces")]
    CornersNotCofacial,
    #[error("deleting these edges would disconnect the map")]
    DeletionDisconnects,
    #[error("vertex {0} is not reachable in the canonical orientation")]
    Unreachable(usize),
}

/// An immutable combinatorial map. Vertex and face orbit decompositions are
/// computed once at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DartMap {
    sigma: Vec<Dart>,
    sigma_inv: Vec<Dart>,
    alpha: Vec<Dart>,
    vertex_of: Vec<usize>,
    face_of: Vec<usize>,
    /// Each vertex as its sigma-orbit, starting at the smallest dart.
    vertices: Vec<Vec<Dart>>,
    /// Each face as its phi-orbit (counterclockwise contour), starting at
    /// the smallest dart.
    faces: Vec<Vec<Dart>>,
    genus: u32,
}

fn orbits(perm: &[Dart]) -> (Vec<usize>, Vec<Vec<Dart>>) {
    let n = perm.len();
    let mut id = vec![usize::MAX; n];
    let mut list = Vec::new();
    for start in 0..n {
        if id[start] != usize::MAX {
            continue;
        }
        let mut orbit = Vec::new();
        let mut d = start;
        loop {
            id[d] = list.len();
            orbit.push(d);
            d = perm[d];
            if d == start {
                break;
            }
        }
        list.push(orbit);
    }
    (id, list)
}

impl DartMap {
    /// Validate and build a map from its two permutations.
    pub fn new(sigma: Vec<Dart>, alpha: Vec<Dart>) -> Result<DartMap, MapError> {
        let n = sigma.len();
        if n != alpha.len() {
            return Err(MapError::SizeMismatch(n, alpha.len()));
        }
        if n == 0 || n % 2 != 0 {
            return Err(MapError::OddDartCount(n));
        }
        let mut seen = vec![false; n];
        for &d in &sigma {
            if d >= n || seen[d] {
                return Err(MapError::NotPermutation);
            }
            seen[d] = true;
        }
        for (d, &a) in alpha.iter().enumerate() {
            if a >= n || alpha[a] != d {
                return Err(MapError::AlphaNotInvolution);
            }
            if a == d {
                return Err(MapError::AlphaFixedPoint(d));
            }
        }
        // Connectivity of the group generated by sigma and alpha.
        let mut reach = vec![false; n];
        let mut stack = vec![0];
        reach[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for e in [sigma[d], alpha[d]] {
                if !reach[e] {
                    reach[e] = true;
                    count += 1;
                    stack.push(e);
                }
            }
        }
        if count != n {
            return Err(MapError::Disconnected);
        }
        let mut sigma_inv = vec![0; n];
        for (d, &s) in sigma.iter().enumerate() {
            sigma_inv[s] = d;
        }
        let (vertex_of, vertices) = orbits(&sigma);
        let phi: Vec<Dart> = (0..n).map(|d| sigma[alpha[d]]).collect();
        let (face_of, faces) = orbits(&phi);
        let v = vertices.len() as i64;
        let e = (n / 2) as i64;
        let f = faces.len() as i64;
        let euler = v - e + f;
        debug_assert!(euler % 2 == 0 && euler <= 2);
        let genus = ((2 - euler) / 2) as u32;
        Ok(DartMap { sigma, sigma_inv, alpha, vertex_of, face_of, vertices, faces, genus })
    }

    pub fn n_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn n_edges(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }

    pub fn sigma_inv(&self, d: Dart) -> Dart {
        self.sigma_inv[d]
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d]
    }

    /// Face permutation `phi = sigma ∘ alpha`.
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[self.alpha[d]]
    }

    pub fn phi_inv(&self, d: Dart) -> Dart {
        self.alpha[self.sigma_inv[d]]
    }

    pub fn vertex_of(&self, d: Dart) -> usize {
        self.vertex_of[d]
    }

    /// Head of the edge seen as leaving `d`'s vertex: the vertex of the
    /// opposite dart.
    pub fn head_of(&self, d: Dart) -> usize {
        self.vertex_of[self.alpha[d]]
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d]
    }

    /// The face on the right of `d` (equal to the face of `alpha(d)`).
    pub fn face_right_of(&self, d: Dart) -> usize {
        self.face_of[self.alpha[d]]
    }

    pub fn vertices(&self) -> &[Vec<Dart>] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    pub fn face_degree(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    /// Counterclockwise contour of a face: its phi-orbit.
    pub fn face_darts_ccw(&self, f: usize) -> &[Dart] {
        &self.faces[f]
    }

    /// Out-darts around a vertex in counterclockwise order.
    pub fn vertex_darts_ccw(&self, v: usize) -> &[Dart] {
        &self.vertices[v]
    }

    /// All vertices adjacent to `v` (with multiplicity).
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.vertices[v].iter().map(move |&d| self.head_of(d))
    }

    /// BFS graph distances from `v`; distance 0 exactly at `v`.
    pub fn graph_distances(&self, v: usize) -> Vec<u32> {
        self.bfs(v, |d| Some(d))
    }

    fn bfs(&self, start: usize, mut step: impl FnMut(Dart) -> Option<Dart>) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n_vertices()];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &d in &self.vertices[v] {
                if let Some(d) = step(d) {
                    let w = self.head_of(d);
                    if dist[w] == u32::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }

    /// Relabel darts by breadth-first discovery from `root` (exploring
    /// `sigma` then `alpha`), producing the canonical representative of the
    /// rooted map. Returns the relabelling `new[old]` and the new map.
    pub fn relabel_bfs(&self, root: Dart) -> (Vec<Dart>, DartMap) {
        let n = self.n_darts();
        let mut new_of = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        new_of[root] = 0;
        order.push(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(d) = queue.pop_front() {
            for e in [self.sigma[d], self.alpha[d]] {
                if new_of[e] == usize::MAX {
                    new_of[e] = order.len();
                    order.push(e);
                    queue.push_back(e);
                }
            }
        }
        let mut sigma = vec![0; n];
        let mut alpha = vec![0; n];
        for old in 0..n {
            sigma[new_of[old]] = new_of[self.sigma[old]];
            alpha[new_of[old]] = new_of[self.alpha[old]];
        }
        let map = DartMap::new(sigma, alpha).expect("relabelling preserves validity");
        (new_of, map)
    }

    /// Canonical text form: one line per vertex orbit, plus the alpha
    /// pairing. Used for golden tests and deduplication.
    pub fn canonical_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for orbit in &self.vertices {
            let mut line = String::new();
            for (i, d) in orbit.iter().enumerate() {
                if i > 0 {
                    line.push(' ');
                }
                write!(line, "{}", d + 1).unwrap();
            }
            out.push_str(&line);
            out.push('\n');
        }
        let mut line = String::from("alpha:");
        for d in 0..self.n_darts() {
            write!(line, " {}", self.alpha[d] + 1).unwrap();
        }
        out.push_str(&line);
        out.push('\n');
        out
    }

    /// Insert a new edge between the corner after dart `a` and the corner
    /// after dart `b`. The corner after `a` is the one between `a` and
    /// `sigma(a)`, which lies on `face(sigma(a))`; both corners must lie on
    /// the same face. Returns the new map and the two new darts, the first
    /// one at `a`'s vertex.
    pub fn with_edge_inserted(&self, a: Dart, b: Dart) -> Result<(DartMap, Dart, Dart), MapError> {
        if self.face_of[self.sigma[a]] != self.face_of[self.sigma[b]] || a == b {
            return Err(MapError::CornersNotCofacial);
        }
        let n = self.n_darts();
        let (da, db) = (n, n + 1);
        let mut sigma = self.sigma.clone();
        sigma.push(0);
        sigma.push(0);
        sigma[da] = sigma[a];
        sigma[a] = da;
        sigma[db] = sigma[b];
        sigma[b] = db;
        let mut alpha = self.alpha.clone();
        alpha.push(db);
        alpha.push(da);
        Ok((DartMap::new(sigma, alpha)?, da, db))
    }

    /// Delete the edges containing the given darts; remaining darts are
    /// compacted in increasing order. Returns the new map and the mapping
    /// from old darts to new (deleted darts map to `usize::MAX`).
    pub fn with_edges_deleted(&self, edges: &[Dart]) -> Result<(DartMap, Vec<Dart>), MapError> {
        let n = self.n_darts();
        let mut dead = vec![false; n];
        for &d in edges {
            dead[d] = true;
            dead[self.alpha[d]] = true;
        }
        // Splice dead darts out of the rotations.
        let mut next = self.sigma.clone();
        for d in 0..n {
            if dead[d] {
                continue;
            }
            let mut s = next[d];
            while dead[s] {
                s = next[s];
            }
            next[d] = s;
        }
        let mut new_of = vec![usize::MAX; n];
        let mut live = 0;
        for d in 0..n {
            if !dead[d] {
                new_of[d] = live;
                live += 1;
            }
        }
        if live == 0 {
            return Err(MapError::DeletionDisconnects);
        }
        let mut sigma = vec![0; live];
        let mut alpha = vec![0; live];
        for d in 0..n {
            if dead[d] {
                continue;
            }
            sigma[new_of[d]] = new_of[next[d]];
            alpha[new_of[d]] = new_of[self.alpha[d]];
        }
        let map = DartMap::new(sigma, alpha).map_err(|e| match e {
            MapError::Disconnected => MapError::DeletionDisconnects,
            other => other,
        })?;
        Ok((map, new_of))
    }
}

/// Convenience builders for the standard small maps used across tests.
pub mod build {
    use super::{DartMap, MapError};

    /// Single loop: one vertex, two faces.
    pub fn loop_map() -> DartMap {
        DartMap::new(vec![1, 0], vec![1, 0]).unwrap()
    }

    /// Single bridge: two vertices, one face.
    pub fn bridge() -> DartMap {
        DartMap::new(vec![0, 1], vec![1, 0]).unwrap()
    }

    /// Two vertices joined by a double edge.
    pub fn double_edge() -> DartMap {
        // Vertex 0 holds darts 0,2; vertex 1 holds darts 1,3.
        DartMap::new(vec![2, 3, 0, 1], vec![1, 0, 3, 2]).unwrap()
    }

    /// Triangle on vertices A{0,5}, B{1,2}, C{3,4} with faces (0,2,4) and
    /// (1,5,3).
    pub fn triangle() -> DartMap {
        // sigma: at A: 0->5->0; at B: 2->1->2; at C: 4->3->4.
        let mut sigma = vec![0; 6];
        sigma[0] = 5;
        sigma[5] = 0;
        sigma[2] = 1;
        sigma[1] = 2;
        sigma[4] = 3;
        sigma[3] = 4;
        DartMap::new(sigma, vec![1, 0, 3, 2, 5, 4]).unwrap()
    }

    /// Path on two edges (odd-degree endpoints).
    pub fn path2() -> Result<DartMap, MapError> {
        // Vertices: {0}, {1,2}, {3}; edges (0,1), (2,3).
        DartMap::new(vec![0, 2, 1, 3], vec![1, 0, 3, 2])
    }
}
