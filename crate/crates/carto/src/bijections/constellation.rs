//! Constellation specializations: descending mobiles, the diagonal shortcut
//! to regular constellations, the classical (non distance-preserving)
//! bijections, and the edge-to-triple correspondence for general hypermaps.

use super::mobile::{pointed_hypermap_to_mobile, MobileImage};
use super::{hypermap_to_map, map_to_hypermap, map_to_mirror_hypermap, BijectionError, LabelledHypermap, LabelledMap};
use crate::labels::{self, CyclicSequence};
use crate::maps::{blow_map_to_2hypermap, Dart, Hypermap};
use crate::mobiles::Mobile;

/// Transport a vertex-pointed `p`-constellation to its descending mobile:
/// the restriction of the mobile bijection, with the descending types
/// certified on every black vertex.
pub fn constellation_to_descending_mobile(
    h: &Hypermap,
    pointed: usize,
    p: usize,
) -> Result<MobileImage, BijectionError> {
    h.check_dark_degrees(p)?;
    if let Err(witness) = h.constellation_coloring(p) {
        return Err(BijectionError::Internal(format!(
            "not a {}-constellation: dark face {} obstructs the coloring",
            p, witness
        )));
    }
    let image = pointed_hypermap_to_mobile(h, pointed)?;
    for &(_, black) in &image.dark_face_to_black {
        let t = black_cw_type(&image, black);
        let seq = CyclicSequence::new(t.clone()).expect("nonempty");
        if !seq.is_descending() {
            return Err(BijectionError::Internal(format!(
                "black vertex carries non-descending cw-type {:?}",
                t
            )));
        }
    }
    Ok(image)
}

/// Clockwise type of a black tree vertex (labels of its neighbors in sigma
/// order).
pub fn black_cw_type(image: &MobileImage, black: usize) -> Vec<i64> {
    image
        .tree
        .vertex_darts_ccw(black)
        .iter()
        .map(|&d| image.tree_labels[image.tree.vertex_of(image.tree.alpha(d))])
        .collect()
}

/// A vertex-pointed regular constellation produced by the diagonal
/// construction, with its geodesic labelling.
#[derive(Clone, Debug)]
pub struct RegularImage {
    pub hypermap: Hypermap,
    pub labels: Vec<i64>,
    pub pointed: usize,
    /// p-constellation face -> regular-constellation vertex (all faces,
    /// each matching a right local max of one larger label).
    pub face_to_vertex: Vec<(usize, usize)>,
    /// p-constellation vertex -> regular-constellation vertex (same label).
    pub vertex_map: Vec<usize>,
}

/// The shortcut from vertex-pointed `p`-constellations to `(p+1)`-regular
/// constellations: close to the stretched `2p`-angulation, then split every
/// face by a diagonal from its largest to its smallest vertex, coloring the
/// right side dark.
pub fn constellation_to_regular(
    h: &Hypermap,
    pointed: usize,
    p: usize,
) -> Result<RegularImage, BijectionError> {
    h.check_dark_degrees(p)?;
    let dist = h.directed_distances(pointed)?;
    let geodesic: Vec<i64> = dist.iter().map(|&d| d as i64).collect();
    let opp_h = LabelledHypermap { hypermap: h.clone(), labels: labels::opp(&geodesic) };
    let (b0, inv) = hypermap_to_map(&opp_h)?;
    let b = LabelledMap { map: b0.map.clone(), labels: labels::opp(&b0.labels) };

    // The intermediate map must be a stretched 2p-angulation.
    for f in 0..b.map.n_faces() {
        if b.map.face_degree(f) != 2 * p {
            return Err(BijectionError::Internal(format!(
                "intermediate face {} has degree {}, expected {}",
                f,
                b.map.face_degree(f),
                2 * p
            )));
        }
        let t = labels::face_type(&b.map, &b.labels, f, false, None);
        if !t.is_stretched() {
            return Err(BijectionError::Internal(format!(
                "intermediate face {} is not stretched: {:?}",
                f,
                t.entries()
            )));
        }
    }

    // Insert one diagonal per face, from the largest to the smallest corner.
    // Insertions only append darts, so original dart and vertex ids are
    // stable; the insertion point is recomputed from the current rotation.
    let mut map = b.map.clone();
    let mut diag_darts: Vec<Dart> = Vec::new();
    for f in 0..b.map.n_faces() {
        let orbit = b.map.face_darts_ccw(f);
        let max_dart = *orbit.iter().max_by_key(|&&x| b.labels[b.map.vertex_of(x)]).unwrap();
        let min_dart = *orbit.iter().min_by_key(|&&x| b.labels[b.map.vertex_of(x)]).unwrap();
        // The corner of dart x lies between sigma_inv(x) and x.
        let a = map.sigma_inv(max_dart);
        let bb = map.sigma_inv(min_dart);
        let (next, da, _db) = map.with_edge_inserted(a, bb)?;
        map = next;
        diag_darts.push(da);
    }
    let labels_e = b.labels.clone();

    // Color: the face on the right of each diagonal (directed max -> min)
    // is dark.
    let mut dark = vec![false; map.n_faces()];
    for &da in &diag_darts {
        dark[map.face_of(map.alpha(da))] = true;
    }
    let e = Hypermap::new(map, dark)?;
    e.check_dark_degrees(p + 1)?;
    for f in e.light_faces() {
        if e.map().face_degree(f) != p + 1 {
            return Err(BijectionError::Internal("light face degree is not p+1".into()));
        }
    }
    if e.constellation_coloring(p + 1).is_err() {
        return Err(BijectionError::Internal("diagonal construction is not a constellation".into()));
    }

    // The induced labelling must be the geodesic labelling of E.
    let pointed_e = inv.vertex_map[pointed];
    let dist_e = e.directed_distances(pointed_e)?;
    if labels_e.iter().zip(&dist_e).any(|(&l, &d)| l != d as i64) {
        return Err(BijectionError::Internal(
            "induced labelling differs from the geodesic labelling".into(),
        ));
    }

    // Light faces of C <-> the closing's new vertices, which survive as
    // vertices of E (right local maxima of one larger label).
    let face_to_vertex: Vec<(usize, usize)> =
        inv.light_face_to_vertex.iter().map(|(&light, &bv)| (light, bv)).collect();
    let vertex_map = inv.vertex_map.clone();
    Ok(RegularImage {
        hypermap: e,
        labels: labels_e,
        pointed: pointed_e,
        face_to_vertex,
        vertex_map,
    })
}


/// A pointed hypermap with its geodesic labelling (inverse-direction
/// results).
#[derive(Clone, Debug)]
pub struct PointedConstellation {
    pub hypermap: Hypermap,
    pub labels: Vec<i64>,
    pub pointed: usize,
}

/// Inverse of the diagonal shortcut: erase the label-wrap edge of every
/// dark face of a `(p+1)`-regular constellation, recover the stretched
/// `2p`-angulation, and reopen it with the mirror rules.
pub fn regular_to_constellation(
    e: &Hypermap,
    pointed: usize,
    p: usize,
) -> Result<PointedConstellation, BijectionError> {
    e.check_dark_degrees(p + 1)?;
    let dist = e.directed_distances(pointed)?;
    // Clockwise around each dark face the labels read i, i+1, ..., i+p; the
    // wrap edge is the canonical dart dropping by p.
    let wrap: Vec<Dart> = e
        .canonical_darts()
        .filter(|&d| {
            dist[e.map().vertex_of(d)] as i64 - dist[e.map().head_of(d)] as i64 == p as i64
        })
        .collect();
    if wrap.len() != e.dark_faces().count() {
        return Err(BijectionError::Internal(format!(
            "{} wrap edges for {} dark faces",
            wrap.len(),
            e.dark_faces().count()
        )));
    }
    let (b_map, new_of) = e.map().with_edges_deleted(&wrap)?;
    let mut b_labels = vec![0i64; b_map.n_vertices()];
    let mut pointed_b = usize::MAX;
    for d in 0..e.map().n_darts() {
        if new_of[d] == usize::MAX {
            continue;
        }
        let old_v = e.map().vertex_of(d);
        b_labels[b_map.vertex_of(new_of[d])] = dist[old_v] as i64;
        if old_v == pointed {
            pointed_b = b_map.vertex_of(new_of[d]);
        }
    }
    if pointed_b == usize::MAX {
        return Err(BijectionError::Internal("pointed vertex lost in erasure".into()));
    }
    let lb = LabelledMap::new(b_map, b_labels)?;
    for f in 0..lb.map.n_faces() {
        let t = labels::face_type(&lb.map, &lb.labels, f, false, None);
        if lb.map.face_degree(f) != 2 * p || !t.is_stretched() {
            return Err(BijectionError::Internal("erasure did not produce a stretched angulation".into()));
        }
    }
    let (h, corr) = map_to_mirror_hypermap(&lb)?;
    let pointed_h = corr
        .vertex_map
        .iter()
        .position(|&bv| bv == pointed_b)
        .ok_or_else(|| BijectionError::Internal("pointed vertex erased by the reopening".into()))?;
    Ok(PointedConstellation { hypermap: h.hypermap, labels: h.labels, pointed: pointed_h })
}

/// The classical bijection from a vertex-pointed bipartite map to a
/// hypermap: apply the opening with the parity labelling (even distance 1,
/// odd distance 0). Faces of degree `2s` become dark faces of degree `s`;
/// distances are not preserved.
pub fn classical_hypermap(
    b: &crate::maps::DartMap,
    pointed: usize,
) -> Result<LabelledHypermap, BijectionError> {
    let dist = b.graph_distances(pointed);
    let labels: Vec<i64> = dist.iter().map(|&d| if d % 2 == 0 { 1 } else { 0 }).collect();
    let lb = LabelledMap::new(b.clone(), labels)?;
    Ok(map_to_hypermap(&lb)?.0)
}

/// The classical bijection from a vertex-pointed `p`-constellation to a
/// `(p+1)`-regular constellation: add a color-`p` vertex in each light face
/// and reroute every edge from color `p-1` to color `0` through the new
/// vertex on the light side.
pub fn classical_regular_constellation(
    h: &Hypermap,
    p: usize,
) -> Result<Hypermap, BijectionError> {
    h.check_dark_degrees(p)?;
    let coloring = h
        .constellation_coloring(p)
        .map_err(|f| BijectionError::Internal(format!("dark face {} obstructs coloring", f)))?;
    let m = h.map();
    // Canonical darts from color p-1 to color 0, grouped per light face on
    // their left.
    let n = m.n_darts();
    let reroute: Vec<Dart> = h
        .canonical_darts()
        .filter(|&d| coloring[m.vertex_of(d)] == p - 1 && coloring[m.head_of(d)] == 0)
        .collect();
    let mut takes_new = vec![false; n];
    for &d in &reroute {
        takes_new[d] = true;
    }
    // New structure: each rerouted edge {a,b} becomes a path a - w_f - b.
    // Keep old darts (d keeps its position at the tail, alpha(d) at the
    // head); add two new darts at w_f per rerouted edge.
    let n_light = h.light_faces().count();
    let mut light_index = vec![usize::MAX; m.n_faces()];
    for (i, f) in h.light_faces().enumerate() {
        light_index[f] = i;
    }
    let mut sigma: Vec<Dart> = (0..n).map(|d| m.sigma(d)).collect();
    let mut alpha: Vec<Dart> = (0..n).map(|d| m.alpha(d)).collect();
    // Per light face, rerouted edges on its contour in contour order.
    let mut per_face: Vec<Vec<Dart>> = vec![Vec::new(); n_light];
    for f in h.light_faces() {
        for &x in m.face_darts_ccw(f) {
            if takes_new[x] {
                per_face[light_index[f]].push(x);
            }
        }
    }
    for face_list in &per_face {
        if face_list.is_empty() {
            return Err(BijectionError::Internal("light face without a wrap edge".into()));
        }
        // New vertex w_f: for each rerouted dart d (in reverse contour
        // order, i.e. clockwise around w_f), two darts: u(d) toward the
        // tail a, v(d) toward the head b, adjacent as (u, v).
        let base = sigma.len();
        let k = face_list.len();
        for (j, &d) in face_list.iter().enumerate() {
            let u = base + 2 * j;
            let v = base + 2 * j + 1;
            // alpha: u pairs with d (tail side), v pairs with old alpha(d).
            let ad = alpha[d];
            alpha.push(d);
            alpha.push(ad);
            alpha[d] = u;
            alpha[ad] = v;
            let _ = (u, v, k);
        }
        // Rotation at w_f: (u_j, v_j) consecutive, blocks in reverse
        // contour order.
        let mut cw: Vec<Dart> = Vec::new();
        for j in (0..face_list.len()).rev() {
            cw.push(base + 2 * j);
            cw.push(base + 2 * j + 1);
        }
        sigma.resize(alpha.len(), usize::MAX);
        for i in 0..cw.len() {
            sigma[cw[i]] = cw[(i + 1) % cw.len()];
        }
    }
    let map = crate::maps::DartMap::new(sigma, alpha)?;
    let e = Hypermap::bicolor(map, None).map_err(BijectionError::Map)?;
    // Normalize colors so dark faces have degree p+1.
    let e = if e.check_dark_degrees(p + 1).is_ok() {
        e
    } else {
        let flipped: Vec<bool> = e.dark_flags().iter().map(|&b| !b).collect();
        Hypermap::new(e.map().clone(), flipped)?
    };
    e.check_dark_degrees(p + 1)?;
    if e.constellation_coloring(p + 1).is_err() {
        return Err(BijectionError::Internal("classical construction failed coloring".into()));
    }
    Ok(e)
}

/// For a vertex-pointed general hypermap, the correspondence between its
/// edges of type `(i-1, i)` and the consecutive white triples of labels
/// `(i, i+1, i+2)` along the counterclockwise contour of the associated
/// descending mobile. Returns `(edge canonical dart, contour position)`
/// pairs together with the contour labels.
pub struct TripleReport {
    /// Counterclockwise contour labels of the mobile (one per white corner).
    pub contour: Vec<i64>,
    /// Canonical darts of the hypermap's (i-1, i) edges, keyed by `i`.
    pub edges_by_level: std::collections::BTreeMap<i64, Vec<Dart>>,
    /// Contour positions starting an (i, i+1, i+2) triple, keyed by `i`.
    pub triples_by_level: std::collections::BTreeMap<i64, Vec<usize>>,
}

pub fn edge_triple_report(h: &Hypermap, pointed: usize) -> Result<TripleReport, BijectionError> {
    let dist = h.directed_distances(pointed)?;
    // The 2-descending mobile of the hypermap: blow the bipartite closing
    // of the mirror into dark 2-gons and take its mobile.
    let geodesic: Vec<i64> = dist.iter().map(|&d| d as i64).collect();
    let opp_h = LabelledHypermap { hypermap: h.clone(), labels: labels::opp(&geodesic) };
    let (b0, inv) = hypermap_to_map(&opp_h)?;
    let b = LabelledMap { map: b0.map.clone(), labels: labels::opp(&b0.labels) };
    let v_b = inv.vertex_map[pointed];
    let (c2, vmap, _) = blow_map_to_2hypermap(&b.map);
    let image = pointed_hypermap_to_mobile(&c2, vmap[v_b])?;
    // Plant anywhere to walk the contour.
    let root = (0..image.tree.n_darts())
        .find(|&d| !image.is_black[image.tree.vertex_of(d)])
        .ok_or_else(|| BijectionError::Internal("empty mobile".into()))?;
    let mobile: Mobile = image.plant(root);
    let idx = mobile.index();
    let contour: Vec<i64> =
        mobile.contour_ccw_white_ids().iter().map(|&u| idx.labels[u]).collect();

    let mut edges_by_level = std::collections::BTreeMap::new();
    for c in h.canonical_darts() {
        let (t, hd) = (dist[h.map().vertex_of(c)] as i64, dist[h.map().head_of(c)] as i64);
        if hd == t + 1 {
            edges_by_level.entry(hd).or_insert_with(Vec::new).push(c);
        }
    }
    let mut triples_by_level = std::collections::BTreeMap::new();
    let k = contour.len();
    for pos in 0..k {
        let (a, b, c) = (contour[pos], contour[(pos + 1) % k], contour[(pos + 2) % k]);
        if b == a + 1 && c == a + 2 {
            triples_by_level.entry(a).or_insert_with(Vec::new).push(pos);
        }
    }
    Ok(TripleReport { contour, edges_by_level, triples_by_level })
}

/// Compare the classical and distance-preserving images of a pointed
/// bipartite map through their distance profiles (the classical bijection
/// does not preserve them).
pub fn classical_vs_mirror_distance_profiles(
    b: &crate::maps::DartMap,
    pointed: usize,
) -> Result<(Vec<u32>, Vec<u32>), BijectionError> {
    let classical = classical_hypermap(b, pointed)?;
    // The classical image forgets the pointed vertex; compare multisets of
    // directed eccentricities from every vertex against the mirror image.
    let dist_b = b.graph_distances(pointed);
    let labels: Vec<i64> = dist_b.iter().map(|&d| d as i64).collect();
    let lb = LabelledMap::new(b.clone(), labels)?;
    let (mirror, corr) = map_to_mirror_hypermap(&lb)?;
    let pointed_m = corr
        .vertex_map
        .iter()
        .position(|&v| v == pointed)
        .ok_or_else(|| BijectionError::Internal("pointed vertex erased".into()))?;
    let mirror_dist = mirror.hypermap.directed_distances(pointed_m)?;
    // Classical image: distances from the image of the pointed vertex.
    let pointed_c = corr_classical_pointed(&classical, b, pointed)?;
    let classical_dist = classical.hypermap.directed_distances(pointed_c)?;
    let mut a: Vec<u32> = mirror_dist;
    let mut c: Vec<u32> = classical_dist;
    a.sort_unstable();
    c.sort_unstable();
    Ok((a, c))
}

fn corr_classical_pointed(
    classical: &LabelledHypermap,
    _b: &crate::maps::DartMap,
    _pointed: usize,
) -> Result<usize, BijectionError> {
    // The pointed vertex has even distance 0, hence label 1 in the parity
    // labelling; pick any label-1 vertex (profile comparison only needs a
    // distance multiset from a deterministic seed).
    classical
        .labels
        .iter()
        .position(|&l| l == 1)
        .ok_or_else(|| BijectionError::Internal("no label-1 vertex".into()))
}
