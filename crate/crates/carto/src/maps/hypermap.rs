//! Face-bicolored Eulerian maps (hypermaps), their star representations,
//! canonical orientation and the permutation-pair ("brin") model.

use super::{Dart, DartMap, MapError};

/// A properly face-bicolored Eulerian map. Every edge has a dark face on one
/// side and a light face on the other; dark faces play the role of
/// hyperedges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypermap {
    map: DartMap,
    dark: Vec<bool>,
}

impl Hypermap {
    /// Wrap a map with an explicit face coloring, checking that it is a
    /// proper bicoloring.
    pub fn new(map: DartMap, dark: Vec<bool>) -> Result<Hypermap, MapError> {
        if dark.len() != map.n_faces() {
            return Err(MapError::NotBicolorable);
        }
        for d in 0..map.n_darts() {
            if dark[map.face_of(d)] == dark[map.face_of(map.alpha(d))] {
                return Err(MapError::NotBicolorable);
            }
        }
        Ok(Hypermap { map, dark })
    }

    /// Properly bicolor the faces of an Eulerian map. By convention the face
    /// containing dart 0 is dark unless `dark_face` overrides the choice.
    pub fn bicolor(map: DartMap, dark_face: Option<usize>) -> Result<Hypermap, MapError> {
        for (v, orbit) in map.vertices().iter().enumerate() {
            if orbit.len() % 2 != 0 {
                return Err(MapError::OddDegreeVertex(v, orbit.len()));
            }
        }
        // Two-color the faces so that the two sides of every edge differ.
        let mut color = vec![None; map.n_faces()];
        let seed = dark_face.unwrap_or_else(|| map.face_of(0));
        color[seed] = Some(true);
        let mut queue = std::collections::VecDeque::from([seed]);
        while let Some(f) = queue.pop_front() {
            let c = color[f].unwrap();
            for &d in map.face_darts_ccw(f) {
                let g = map.face_of(map.alpha(d));
                match color[g] {
                    None => {
                        color[g] = Some(!c);
                        queue.push_back(g);
                    }
                    Some(x) if x == c => return Err(MapError::NotBicolorable),
                    Some(_) => {}
                }
            }
        }
        let dark = color.into_iter().map(|c| c.expect("connected dual")).collect();
        Ok(Hypermap { map, dark })
    }

    pub fn map(&self) -> &DartMap {
        &self.map
    }

    pub fn into_map(self) -> DartMap {
        self.map
    }

    pub fn is_dark(&self, face: usize) -> bool {
        self.dark[face]
    }

    pub fn dark_flags(&self) -> &[bool] {
        &self.dark
    }

    pub fn dark_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.map.n_faces()).filter(|&f| self.dark[f])
    }

    pub fn light_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.map.n_faces()).filter(|&f| !self.dark[f])
    }

    /// A dart is canonically directed when its incident dark face lies on
    /// its right.
    pub fn is_canonical(&self, d: Dart) -> bool {
        self.dark[self.map.face_right_of(d)]
    }

    /// The canonically directed dart of the edge containing `d`.
    pub fn canonical_of_edge(&self, d: Dart) -> Dart {
        if self.is_canonical(d) {
            d
        } else {
            self.map.alpha(d)
        }
    }

    /// All canonically directed darts (one per edge).
    pub fn canonical_darts(&self) -> impl Iterator<Item = Dart> + '_ {
        (0..self.map.n_darts()).filter(|&d| self.is_canonical(d))
    }

    /// Check that every dark face has degree `p`.
    pub fn check_dark_degrees(&self, p: usize) -> Result<(), MapError> {
        for f in self.dark_faces() {
            let found = self.map.face_degree(f);
            if found != p {
                return Err(MapError::WrongDarkDegree { face: f, expected: p, found });
            }
        }
        Ok(())
    }

    /// Lengths of shortest directed paths from `v` in the canonical
    /// orientation; the geodesic labelling of a pointed hypermap.
    pub fn directed_distances(&self, v: usize) -> Result<Vec<u32>, MapError> {
        let mut dist = vec![u32::MAX; self.map.n_vertices()];
        dist[v] = 0;
        let mut queue = std::collections::VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &d in self.map.vertex_darts_ccw(u) {
                if !self.is_canonical(d) {
                    continue;
                }
                let w = self.map.head_of(d);
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if let Some(u) = dist.iter().position(|&x| x == u32::MAX) {
            return Err(MapError::Unreachable(u));
        }
        Ok(dist)
    }

    /// Attempt the vertex coloring that makes this a `p`-constellation:
    /// colors advance by one (mod `p`) along every canonically directed
    /// edge. On failure returns a witness dark face.
    pub fn constellation_coloring(&self, p: usize) -> Result<Vec<usize>, usize> {
        let n = self.map.n_vertices();
        let mut color = vec![usize::MAX; n];
        color[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &d in self.map.vertex_darts_ccw(u) {
                let (tail, head, dark_face) = if self.is_canonical(d) {
                    (u, self.map.head_of(d), self.map.face_right_of(d))
                } else {
                    (self.map.head_of(d), u, self.map.face_of(d))
                };
                let (known, other, expect) = if color[tail] != usize::MAX {
                    (tail, head, (color[tail] + 1) % p)
                } else if color[head] != usize::MAX {
                    (head, tail, (color[head] + p - 1) % p)
                } else {
                    continue;
                };
                let _ = known;
                if color[other] == usize::MAX {
                    color[other] = expect;
                    queue.push_back(other);
                } else if color[other] != expect {
                    return Err(dark_face);
                }
            }
        }
        Ok(color)
    }

    /// Canonical string form of the hypermap rooted at `root`, optionally
    /// carrying labels and a pointed vertex. Two rooted (labelled, pointed)
    /// hypermaps are isomorphic exactly when their encodings agree.
    pub fn encode_rooted(
        &self,
        root: Dart,
        labels: Option<&[i64]>,
        pointed: Option<usize>,
    ) -> String {
        use std::fmt::Write;
        let (new_of, canon) = self.map.relabel_bfs(root);
        let mut old_of = vec![0; self.map.n_darts()];
        for (old, &new) in new_of.iter().enumerate() {
            old_of[new] = old;
        }
        let mut out = canon.canonical_text();
        let mut line = String::from("dark:");
        for f in 0..canon.n_faces() {
            let old_dart = old_of[canon.face_darts_ccw(f)[0]];
            let bit = if self.dark[self.map.face_of(old_dart)] { 1 } else { 0 };
            write!(line, " {}", bit).unwrap();
        }
        out.push_str(&line);
        out.push('\n');
        if let Some(labels) = labels {
            let mut line = String::from("labels:");
            for v in 0..canon.n_vertices() {
                let old_dart = old_of[canon.vertex_darts_ccw(v)[0]];
                write!(line, " {}", labels[self.map.vertex_of(old_dart)]).unwrap();
            }
            out.push_str(&line);
            out.push('\n');
        }
        if let Some(p) = pointed {
            let new_dart = self.map.vertex_darts_ccw(p).iter().map(|&d| new_of[d]).min().unwrap();
            out.push_str(&format!("pointed: {}\n", canon.vertex_of(new_dart)));
        }
        out
    }

    /// Extract the permutation-pair model: one brin per edge (its canonical
    /// dart); `x` steps clockwise around dark faces, `y` to the next
    /// canonical out-dart around the tail vertex.
    pub fn to_brins(&self) -> BrinModel {
        let m = &self.map;
        let canon: Vec<Dart> = self.canonical_darts().collect();
        let mut index = vec![usize::MAX; m.n_darts()];
        for (i, &d) in canon.iter().enumerate() {
            index[d] = i;
        }
        let x = canon.iter().map(|&c| index[m.alpha(m.phi_inv(m.alpha(c)))]).collect();
        let y = canon.iter().map(|&c| index[m.sigma(m.sigma(c))]).collect();
        BrinModel { x, y, dart_of_brin: canon }
    }

    /// Rebuild a hypermap from the permutation-pair model. Returns the
    /// hypermap together with the tail vertex of each brin.
    pub fn from_brins(x: &[usize], y: &[usize]) -> Result<(Hypermap, Vec<usize>), MapError> {
        let n = x.len();
        if n == 0 || n != y.len() {
            return Err(MapError::SizeMismatch(n, y.len()));
        }
        let mut x_inv = vec![0; n];
        for (b, &xb) in x.iter().enumerate() {
            if xb >= n {
                return Err(MapError::NotPermutation);
            }
            x_inv[xb] = b;
        }
        // Brin b becomes dart 2b (canonically directed), its partner 2b+1.
        let mut sigma = vec![0; 2 * n];
        let mut alpha = vec![0; 2 * n];
        for b in 0..n {
            if y[b] >= n {
                return Err(MapError::NotPermutation);
            }
            sigma[2 * b] = 2 * x_inv[b] + 1;
            sigma[2 * b + 1] = 2 * y[x[b]];
            alpha[2 * b] = 2 * b + 1;
            alpha[2 * b + 1] = 2 * b;
        }
        let map = DartMap::new(sigma, alpha)?;
        // Dark faces are exactly the orbits made of odd darts.
        let mut dark = vec![false; map.n_faces()];
        for f in 0..map.n_faces() {
            let darts = map.face_darts_ccw(f);
            let odd = darts[0] % 2 == 1;
            if darts.iter().any(|&d| (d % 2 == 1) != odd) {
                return Err(MapError::NotBicolorable);
            }
            dark[f] = odd;
        }
        let tails = (0..n).map(|b| map.vertex_of(2 * b)).collect();
        Ok((Hypermap { map, dark }, tails))
    }

    /// Replace the contour of each dark face of degree `d` by a star of
    /// degree `d` centered at a new black vertex inside the face.
    pub fn star_representation(&self) -> StarRep {
        let m = &self.map;
        // One spoke per dart whose left face is dark: the spoke occupies the
        // dark corner between sigma_inv(d) and d at d's vertex.
        let mut spoke_of_dart = vec![usize::MAX; m.n_darts()];
        let mut dart_of_spoke = Vec::new();
        for d in 0..m.n_darts() {
            if self.dark[m.face_of(d)] {
                spoke_of_dart[d] = dart_of_spoke.len();
                dart_of_spoke.push(d);
            }
        }
        let n_spokes = dart_of_spoke.len();
        // Spoke i: white-side dart 2i at the vertex of its corner, black-side
        // dart 2i+1 at the star center of its dark face.
        let mut sigma = vec![0; 2 * n_spokes];
        let mut alpha = vec![0; 2 * n_spokes];
        for (i, &d) in dart_of_spoke.iter().enumerate() {
            alpha[2 * i] = 2 * i + 1;
            alpha[2 * i + 1] = 2 * i;
            // Next dark corner clockwise around the vertex.
            let mut e = m.sigma(d);
            while spoke_of_dart[e] == usize::MAX {
                e = m.sigma(e);
            }
            sigma[2 * i] = 2 * spoke_of_dart[e];
            // Clockwise around the star center = reverse contour order.
            sigma[2 * i + 1] = 2 * spoke_of_dart[m.phi_inv(d)] + 1;
        }
        let map = DartMap::new(sigma, alpha).expect("star representation is a valid map");
        let mut is_black = vec![false; map.n_vertices()];
        let mut black_of_dark_face = vec![usize::MAX; m.n_faces()];
        let mut white_of_vertex = vec![usize::MAX; m.n_vertices()];
        for (i, &d) in dart_of_spoke.iter().enumerate() {
            is_black[map.vertex_of(2 * i + 1)] = true;
            black_of_dark_face[m.face_of(d)] = map.vertex_of(2 * i + 1);
            white_of_vertex[m.vertex_of(d)] = map.vertex_of(2 * i);
        }
        StarRep { map, is_black, black_of_dark_face, white_of_vertex, dart_of_spoke }
    }

    /// Collapse a star representation back into a hypermap: black vertices
    /// become dark faces whose contour joins consecutive spoke endpoints.
    pub fn star_collapse(star: &DartMap, is_black: &[bool]) -> Result<Collapse, MapError> {
        // Bipartite black/white check, with edges stored by black-side dart.
        let mut black_dart_of_edge = Vec::new();
        let mut brin_index = vec![usize::MAX; star.n_darts()];
        for d in 0..star.n_darts() {
            let b = is_black[star.vertex_of(d)];
            let w = is_black[star.vertex_of(star.alpha(d))];
            if b == w {
                return Err(MapError::NotBicolorable);
            }
            if b {
                brin_index[d] = black_dart_of_edge.len();
                black_dart_of_edge.push(d);
            }
        }
        let n = black_dart_of_edge.len();
        // The hyperedge of the black corner between spokes e and sigma(e)
        // joins their white endpoints; its canonical dart leaves the white
        // end of e. Stepping along the canonical (clockwise) direction of
        // the dark face moves to the corner at sigma(e).
        let x: Vec<usize> = black_dart_of_edge.iter().map(|&e| brin_index[star.sigma(e)]).collect();
        // The canonical out-dart at the white end of spoke s is the brin of
        // its own black corner; consecutive spokes around the white vertex
        // carry consecutive out-darts.
        let brin_at_white = |s: Dart| brin_index[star.alpha(s)];
        let mut y = vec![0; n];
        for s in 0..star.n_darts() {
            if is_black[star.vertex_of(s)] {
                continue;
            }
            y[brin_at_white(s)] = brin_at_white(star.sigma(s));
        }
        let (h, tails) = Hypermap::from_brins(&x, &y)?;
        let mut white_to_hvertex = vec![usize::MAX; star.n_vertices()];
        let mut black_to_dark_face = vec![usize::MAX; star.n_vertices()];
        for s in 0..star.n_darts() {
            let v = star.vertex_of(s);
            if is_black[v] {
                // Dark face of the brin of this corner.
                let brin = brin_index[s];
                black_to_dark_face[v] = h.map.face_of(2 * brin + 1);
            } else {
                white_to_hvertex[v] = tails[brin_at_white(s)];
            }
        }
        Ok(Collapse {
            hypermap: h,
            white_to_hvertex,
            black_to_dark_face,
            black_dart_of_brin: black_dart_of_edge,
        })
    }
}

/// Result of [`Hypermap::star_collapse`], with the bookkeeping linking the
/// star map to the rebuilt hypermap.
#[derive(Clone, Debug)]
pub struct Collapse {
    pub hypermap: Hypermap,
    /// Hypermap vertex of each white star-map vertex.
    pub white_to_hvertex: Vec<usize>,
    /// Hypermap dark face of each black star-map vertex.
    pub black_to_dark_face: Vec<usize>,
    /// For brin `b` (hypermap canonical dart `2b`), the black-side star dart
    /// of the black corner it collapses.
    pub black_dart_of_brin: Vec<Dart>,
}

/// Star representation of a hypermap, with the bookkeeping linking it back.
#[derive(Clone, Debug)]
pub struct StarRep {
    pub map: DartMap,
    /// Per star-map vertex: is it a star center?
    pub is_black: Vec<bool>,
    /// Star-map black vertex of each dark face (indexed by hypermap face id;
    /// `usize::MAX` on light faces).
    pub black_of_dark_face: Vec<usize>,
    /// Star-map white vertex of each hypermap vertex.
    pub white_of_vertex: Vec<usize>,
    /// The hypermap dart whose dark corner carries spoke `i` (spoke `i`
    /// occupies star darts `2i` white-side and `2i+1` black-side).
    pub dart_of_spoke: Vec<Dart>,
}

/// Permutation-pair model of a hypermap: one point ("brin") per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrinModel {
    /// Clockwise successor around the dark face (the canonical direction).
    pub x: Vec<usize>,
    /// Next canonical out-dart around the tail vertex (counterclockwise).
    pub y: Vec<usize>,
    /// The canonical dart realizing each brin.
    pub dart_of_brin: Vec<Dart>,
}

impl BrinModel {
    pub fn n(&self) -> usize {
        self.x.len()
    }
}

/// Blow each edge of a map into a dark face of degree 2, producing the
/// 2-hypermap that trivially encodes it. Returns the hypermap, the hypermap
/// vertex of each map vertex, and the brin (= hypermap edge) of each map
/// dart.
pub fn blow_map_to_2hypermap(m: &DartMap) -> (Hypermap, Vec<usize>, Vec<usize>) {
    let x: Vec<usize> = (0..m.n_darts()).map(|d| m.alpha(d)).collect();
    let y: Vec<usize> = (0..m.n_darts()).map(|d| m.sigma(d)).collect();
    let (h, tails) = Hypermap::from_brins(&x, &y).expect("blowup of a valid map");
    let mut vertex_map = vec![usize::MAX; m.n_vertices()];
    for d in 0..m.n_darts() {
        vertex_map[m.vertex_of(d)] = tails[d];
    }
    (h, vertex_map, (0..m.n_darts()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::build;

    #[test]
    fn bicolor_double_edge() {
        let h = Hypermap::bicolor(build::double_edge(), None).unwrap();
        let dark: Vec<usize> = h.dark_faces().collect();
        assert_eq!(dark.len(), 1);
        assert_eq!(h.map().face_degree(dark[0]), 2);
    }

    #[test]
    fn bicolor_loop() {
        let h = Hypermap::bicolor(build::loop_map(), None).unwrap();
        assert_eq!(h.dark_faces().count(), 1);
        assert_eq!(h.light_faces().count(), 1);
    }

    #[test]
    fn bicolor_rejects_odd_degrees() {
        let m = build::path2().unwrap();
        assert!(matches!(Hypermap::bicolor(m, None), Err(MapError::OddDegreeVertex(_, _))));
    }

    #[test]
    fn canonical_darts_one_per_edge() {
        let h = Hypermap::bicolor(build::triangle(), None).unwrap();
        assert_eq!(h.canonical_darts().count(), 3);
        for d in h.canonical_darts() {
            assert!(h.is_dark(h.map().face_right_of(d)));
            assert!(!h.is_dark(h.map().face_of(d)));
        }
    }

    #[test]
    fn directed_distances_on_dark_triangle() {
        // Triangle with the inner face dark is a directed 3-cycle.
        let m = build::triangle();
        let inner = m.face_of(0);
        let h = Hypermap::bicolor(m, Some(inner)).unwrap();
        let start = h.canonical_darts().next().unwrap();
        let u = h.map().vertex_of(start);
        let v = h.map().head_of(start);
        let dist = h.directed_distances(u).unwrap();
        assert_eq!(dist[u], 0);
        assert_eq!(dist[v], 1);
        let w = (0..3).find(|&w| w != u && w != v).unwrap();
        assert_eq!(dist[w], 2);
        // From v the distances wrap around the cycle.
        let dv = h.directed_distances(v).unwrap();
        assert_eq!(dv[u], 2);
    }

    #[test]
    fn two_hypermap_distances_are_symmetric() {
        let (h, vmap, _) = blow_map_to_2hypermap(&build::double_edge());
        let d0 = h.directed_distances(vmap[0]).unwrap();
        assert_eq!(d0[vmap[1]], 1);
        let d1 = h.directed_distances(vmap[1]).unwrap();
        assert_eq!(d1[vmap[0]], 1);
    }

    #[test]
    fn brin_model_round_trip() {
        for m in [build::loop_map(), build::double_edge(), build::triangle()] {
            let h = Hypermap::bicolor(m, None).unwrap();
            let brins = h.to_brins();
            let (h2, _) = Hypermap::from_brins(&brins.x, &brins.y).unwrap();
            // Same combinatorics: relabel both from corresponding darts.
            let d0 = brins.dart_of_brin[0];
            let (_, c1) = h.map().relabel_bfs(d0);
            let (_, c2) = h2.map().relabel_bfs(0);
            assert_eq!(c1, c2);
        }
    }

    #[test]
    fn star_round_trip_exact() {
        for m in [build::loop_map(), build::double_edge(), build::triangle()] {
            let h = Hypermap::bicolor(m.clone(), None).unwrap();
            let star = h.star_representation();
            assert_eq!(star.map.genus(), h.map().genus());
            let h2 = Hypermap::star_collapse(&star.map, &star.is_black).unwrap().hypermap;
            // The collapse rebuilds the same rooted hypermap dart for dart:
            // the hyperedge whose canonical dart is d is realized by the
            // spoke hosted at the dark corner of sigma(d), and that spoke
            // becomes brin i of the collapse.
            let d = h.canonical_darts().next().unwrap();
            let corner_dart = h.map().sigma(d);
            let spoke =
                star.dart_of_spoke.iter().position(|&x| x == corner_dart).unwrap();
            let enc1 = h.encode_rooted(d, None, None);
            let enc2 = h2.encode_rooted(2 * spoke, None, None);
            assert_eq!(enc1, enc2);
        }
    }

    #[test]
    fn star_of_degree2_dark_face() {
        let h = Hypermap::bicolor(build::double_edge(), None).unwrap();
        let star = h.star_representation();
        // One black vertex adjacent to the two former endpoints.
        let blacks: Vec<usize> =
            (0..star.map.n_vertices()).filter(|&v| star.is_black[v]).collect();
        assert_eq!(blacks.len(), 1);
        assert_eq!(star.map.degree(blacks[0]), 2);
        assert_eq!(star.map.n_vertices(), 3);
        assert_eq!(star.map.n_edges(), 2);
    }

    #[test]
    fn star_of_loop_hypermap() {
        let h = Hypermap::bicolor(build::loop_map(), None).unwrap();
        let star = h.star_representation();
        // Dark degree 1: black vertex with a single edge to the unique vertex.
        assert_eq!(star.map.n_vertices(), 2);
        assert_eq!(star.map.n_edges(), 1);
    }

    #[test]
    fn constellation_coloring_cases() {
        // Double edge = 2-hypermap of a single bipartite edge: 2-colorable.
        let h = Hypermap::bicolor(build::double_edge(), None).unwrap();
        let c = h.constellation_coloring(2).unwrap();
        assert_ne!(c[0], c[1]);
        // 2-hypermap of the loop: not 2-colorable.
        let (hl, _, _) = blow_map_to_2hypermap(&build::loop_map());
        assert!(hl.constellation_coloring(2).is_err());
        // Dark triangle with light triangle: valid 3-coloring.
        let m = build::triangle();
        let inner = m.face_of(0);
        let h3 = Hypermap::bicolor(m, Some(inner)).unwrap();
        let c3 = h3.constellation_coloring(3).unwrap();
        let mut sorted = c3.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
    }

    #[test]
    fn blow_up_preserves_genus_and_counts() {
        let m = build::triangle();
        let (h, _, _) = blow_map_to_2hypermap(&m);
        assert_eq!(h.map().genus(), 0);
        assert_eq!(h.map().n_vertices(), 3);
        assert_eq!(h.dark_faces().count(), 3);
        assert_eq!(h.light_faces().count(), 2);
        // Dark and light face degree sums both equal the edge count.
        let e = h.map().n_edges();
        let dark_sum: usize = h.dark_faces().map(|f| h.map().face_degree(f)).sum();
        let light_sum: usize = h.light_faces().map(|f| h.map().face_degree(f)).sum();
        assert_eq!(dark_sum, e);
        assert_eq!(light_sum, e);
    }
}
