//! Exhaustive verification suites over oracle-enumerated instances: round
//! trips, the mirror operator identity, and the per-instance parameter
//! correspondences of the structure theorems.

use super::constellation::{
    black_cw_type, constellation_to_descending_mobile, constellation_to_regular,
    edge_triple_report, regular_to_constellation,
};
use super::mobile::{mobile_to_pointed_hypermap, pointed_hypermap_to_mobile, MobileImage};
use super::{
    hypermap_to_map, map_to_hypermap, map_to_mirror_hypermap, Correspondence, LabelledMap,
};
use crate::labels;
use crate::maps::{blow_map_to_2hypermap, Hypermap};
use crate::oracle::{enumerate_labelled_suitable, enumerate_rooted, Constraints};
use serde::Serialize;

/// Result of one verification suite: instance count and failing witnesses.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: u64,
    pub failures: Vec<Witness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub map: crate::maps::io::MapJson,
    pub reason: String,
}

impl SuiteReport {
    fn new(suite: &str) -> SuiteReport {
        SuiteReport { suite: suite.to_string(), instances: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, b: &LabelledMap, result: Result<(), String>) {
        self.instances += 1;
        if let Err(reason) = result {
            let map = crate::maps::io::MapJson::from_map(&b.map).with_labels(&b.labels);
            self.failures.push(Witness { map, reason });
        }
    }
}

/// Both round trips on every rooted suitably labelled map with at most
/// `max_edges` edges and minimum label 0, compared dart-for-dart through
/// the transports.
pub fn roundtrip_suite(max_edges: usize) -> SuiteReport {
    let mut report = SuiteReport::new("roundtrip");
    for n in 1..=max_edges {
        for b in enumerate_labelled_suitable(n).expect("within caps") {
            report.record(&b, roundtrip_one(&b));
        }
    }
    report
}

fn roundtrip_one(b: &LabelledMap) -> Result<(), String> {
    let (h, corr) = map_to_hypermap(b).map_err(|e| e.to_string())?;
    let (b2, inv) = hypermap_to_map(&h).map_err(|e| e.to_string())?;
    for d in 0..b.map.n_darts() {
        let back = inv.dart_map[corr.dart_map[d]];
        if b.encode_rooted(d) != b2.encode_rooted(back) {
            return Err(format!("closing does not invert the opening at dart {}", d));
        }
    }
    // Reopen and compare on the hypermap side.
    let (h2, corr2) = map_to_hypermap(&b2).map_err(|e| e.to_string())?;
    for hd in 0..h.hypermap.map().n_darts() {
        let hd2 = corr2.dart_map[inv.dart_map[hd]];
        if h.encode_rooted(hd) != h2.encode_rooted(hd2) {
            return Err(format!("opening does not invert the closing at dart {}", hd));
        }
    }
    Ok(())
}

/// The mirror identity: the complementary rules equal label negation
/// conjugating the standard rules, dart for dart.
pub fn mirror_suite(max_edges: usize) -> SuiteReport {
    let mut report = SuiteReport::new("mirror");
    for n in 1..=max_edges {
        for b in enumerate_labelled_suitable(n).expect("within caps") {
            let outcome = (|| {
                let (h1, c1) = map_to_mirror_hypermap(&b).map_err(|e| e.to_string())?;
                let (h2o, c2) = map_to_hypermap(&b.opp()).map_err(|e| e.to_string())?;
                let h2 = h2o.opp();
                for d in 0..b.map.n_darts() {
                    if h1.encode_rooted(c1.dart_map[d]) != h2.encode_rooted(c2.dart_map[d]) {
                        return Err(format!("mirror identity fails at dart {}", d));
                    }
                }
                Ok(())
            })();
            report.record(&b, outcome);
        }
    }
    report
}

/// Per-instance parameter correspondence of the opening (labels preserved,
/// extrema matched, light faces over local minima, dark types matched by
/// lower completion), plus the mirror statement on the same set.
pub fn theorem1_suite(max_edges: usize) -> SuiteReport {
    let mut report = SuiteReport::new("theorem1");
    for n in 1..=max_edges {
        for b in enumerate_labelled_suitable(n).expect("within caps") {
            let outcome = (|| {
                let (h, corr) = map_to_hypermap(&b).map_err(|e| e.to_string())?;
                check_open_correspondence(&b, &h, &corr)?;
                check_mirror_correspondence(&b)
            })();
            report.record(&b, outcome);
        }
    }
    report
}

/// The checks behind the opening correspondence, shared with the unit tests.
pub fn check_open_correspondence(
    b: &LabelledMap,
    h: &super::LabelledHypermap,
    corr: &Correspondence,
) -> Result<(), String> {
    use std::collections::BTreeSet;
    let (mins, maxs) = labels::local_extrema(&b.map, &b.labels);
    let mut seen = BTreeSet::new();
    for (hv, &bv) in corr.vertex_map.iter().enumerate() {
        if h.labels[hv] != b.labels[bv] {
            return Err("vertex label not preserved".into());
        }
        if mins.contains(&bv) || !seen.insert(bv) {
            return Err("vertex correspondence is not into the non-minimal vertices".into());
        }
    }
    if seen.len() != b.map.n_vertices() - mins.len() {
        return Err("vertex correspondence is not onto".into());
    }
    let (_, rmaxs) = labels::right_local_extrema(&h.hypermap, &h.labels);
    let mapped: BTreeSet<usize> = rmaxs.iter().map(|&hv| corr.vertex_map[hv]).collect();
    if mapped != maxs.iter().copied().collect::<BTreeSet<_>>() {
        return Err("right local maxima do not match local maxima".into());
    }
    if corr.light_face_to_min.len() != mins.len() {
        return Err("light faces are not in bijection with local minima".into());
    }
    let mut min_seen = BTreeSet::new();
    for (&light, &bv) in &corr.light_face_to_min {
        if h.hypermap.is_dark(light) || !mins.contains(&bv) || !min_seen.insert(bv) {
            return Err("light face mapped incorrectly".into());
        }
        let face_min = h
            .hypermap
            .map()
            .face_darts_ccw(light)
            .iter()
            .map(|&d| h.labels[h.hypermap.map().vertex_of(d)])
            .min()
            .unwrap();
        if b.labels[bv] != face_min - 1 {
            return Err("local minimum label is not min(face) - 1".into());
        }
    }
    if corr.dark_face_to_face.len() != b.map.n_faces() {
        return Err("dark faces are not in bijection with faces".into());
    }
    for (tau, face_type) in corr.dark_types.values() {
        let completed = tau.completion(false).map_err(|e| e.to_string())?;
        if &completed != face_type {
            return Err("dark cw-type completion does not match the face cw-type".into());
        }
    }
    Ok(())
}

/// Corollary-level mirror checks: faces over local maxima with label
/// max(face) + 1, dark ccw-types matching upper completions.
pub fn check_mirror_correspondence(b: &LabelledMap) -> Result<(), String> {
    let (h, corr) = map_to_mirror_hypermap(b).map_err(|e| e.to_string())?;
    let (_, maxs) = labels::local_extrema(&b.map, &b.labels);
    if corr.light_face_to_min.len() != maxs.len() {
        return Err("faces are not in bijection with local maxima".into());
    }
    for (&light, &bv) in &corr.light_face_to_min {
        if !maxs.contains(&bv) {
            return Err("face matched to a non-maximal vertex".into());
        }
        let face_max = h
            .hypermap
            .map()
            .face_darts_ccw(light)
            .iter()
            .map(|&d| h.labels[h.hypermap.map().vertex_of(d)])
            .max()
            .unwrap();
        if b.labels[bv] != face_max + 1 {
            return Err("local maximum label is not max(face) + 1".into());
        }
    }
    // Dark ccw-types: the upper completion of the dark type is the face's
    // ccw-type.
    for (&dark, &bf) in &corr.dark_face_to_face {
        let tau = labels::face_type(h.hypermap.map(), &h.labels, dark, false, None);
        let ft = labels::face_type(&b.map, &b.labels, bf, false, None);
        let completed = tau.completion(true).map_err(|e| e.to_string())?;
        if completed != ft {
            return Err("dark ccw-type completion does not match the face ccw-type".into());
        }
    }
    Ok(())
}

/// Theorem-2 checks on a mobile image, shared with the unit tests.
pub fn check_mobile_image(h: &Hypermap, pointed: usize, image: &MobileImage) -> Result<(), String> {
    use std::collections::BTreeSet;
    let geodesic = &image.geodesic;
    for (hv, &w) in image.vertex_to_white.iter().enumerate() {
        if hv == pointed {
            if w != usize::MAX {
                return Err("pointed vertex must be erased".into());
            }
            continue;
        }
        if image.tree_labels[w] != geodesic[hv] {
            return Err(format!("label mismatch at vertex {}", hv));
        }
    }
    let rlm: BTreeSet<usize> = tree_right_local_maxima(image).into_iter().collect();
    let face_whites: BTreeSet<usize> =
        image.light_face_to_white.iter().map(|&(_, w)| w).collect();
    if rlm != face_whites {
        return Err("right local maxima are not exactly the face images".into());
    }
    for &(light, w) in &image.light_face_to_white {
        let max_f = h
            .map()
            .face_darts_ccw(light)
            .iter()
            .map(|&d| geodesic[h.map().vertex_of(d)])
            .max()
            .unwrap();
        if image.tree_labels[w] != max_f + 1 {
            return Err("face image label is not max(face) + 1".into());
        }
    }
    for (hv, &w) in image.vertex_to_white.iter().enumerate() {
        if hv != pointed && rlm.contains(&w) {
            return Err("vertex image is a right local max".into());
        }
    }
    for &(dark, black) in &image.dark_face_to_black {
        let tau = labels::face_type(h.map(), geodesic, dark, false, None);
        let cw = labels::CyclicSequence::new(black_cw_type(image, black)).unwrap();
        let expected = tau.complement(true).map_err(|e| e.to_string())?;
        if cw != expected {
            return Err("black cw-type is not the upper complement of the dark ccw-type".into());
        }
    }
    Ok(())
}

fn tree_right_local_maxima(image: &MobileImage) -> Vec<usize> {
    let t = &image.tree;
    let mut ok: Vec<bool> = (0..t.n_vertices()).map(|v| !image.is_black[v]).collect();
    for b in 0..t.n_vertices() {
        if !image.is_black[b] {
            continue;
        }
        let adj = t.vertex_darts_ccw(b);
        let k = adj.len();
        for j in 0..k {
            let u = t.vertex_of(t.alpha(adj[j]));
            let rn = t.vertex_of(t.alpha(adj[(j + k - 1) % k]));
            if image.tree_labels[rn] > image.tree_labels[u] {
                ok[u] = false;
            }
        }
    }
    (0..t.n_vertices()).filter(|&v| ok[v] && !image.is_black[v]).collect()
}

/// The pointed-hypermap/mobile bijection on every pointed rooted map with
/// at most `max_edges` edges (as 2-hypermaps), with exact round trips.
pub fn theorem2_suite(max_edges: usize) -> SuiteReport {
    let mut report = SuiteReport::new("theorem2");
    for n in 1..=max_edges {
        for class in enumerate_rooted(n, Constraints::default()).expect("within caps") {
            let map = class.map();
            let (h, vmap, _) = blow_map_to_2hypermap(&map);
            for pointed in 0..map.n_vertices() {
                report.instances += 1;
                let outcome = theorem2_one(&h, vmap[pointed]);
                if let Err(reason) = outcome {
                    report.failures.push(Witness {
                        map: crate::maps::io::MapJson::from_map(&map).with_pointed(pointed),
                        reason,
                    });
                }
            }
        }
    }
    report
}

fn theorem2_one(h: &Hypermap, pointed: usize) -> Result<(), String> {
    let image = pointed_hypermap_to_mobile(h, pointed).map_err(|e| e.to_string())?;
    check_mobile_image(h, pointed, &image)?;
    // Exact round trip through a planted corner.
    let root = (0..image.tree.n_darts())
        .find(|&d| !image.is_black[image.tree.vertex_of(d)])
        .ok_or("empty mobile")?;
    let mobile = image.plant(root);
    let back = mobile_to_pointed_hypermap(&mobile).map_err(|e| e.to_string())?;
    let back_image =
        pointed_hypermap_to_mobile(&back.hypermap, back.pointed).map_err(|e| e.to_string())?;
    // The planted mobile's own star map has the root corner at dart 0.
    let replant = back_image.plant(back_image.dart_to_tree[back.tree_dart_to_hdart[0]]);
    if replant.encode() != mobile.encode() {
        return Err("mobile round trip is not the identity".into());
    }
    // And the rebuilt hypermap matches the original as a pointed object
    // (the planted mobile numbering differs, so compare over all rootings).
    let enc1: std::collections::BTreeSet<String> = h
        .canonical_darts()
        .map(|d| h.encode_rooted(d, Some(&image.geodesic), Some(pointed)))
        .collect();
    let enc2: std::collections::BTreeSet<String> = back
        .hypermap
        .canonical_darts()
        .map(|d| back.hypermap.encode_rooted(d, Some(&back.labels), Some(back.pointed)))
        .collect();
    if enc1 != enc2 {
        return Err("hypermap round trip is not the identity".into());
    }
    Ok(())
}

/// The constellation specializations on pointed rooted bipartite maps (as
/// 2-constellations): descending mobiles and the regular-constellation
/// shortcut, both with their statements checked per instance.
pub fn constellation_suite(max_edges: usize) -> SuiteReport {
    let mut report = SuiteReport::new("constellation");
    for n in 1..=max_edges {
        let classes =
            enumerate_rooted(n, Constraints { bipartite: true, ..Default::default() })
                .expect("within caps");
        for class in classes {
            let map = class.map();
            let (c2, vmap, _) = blow_map_to_2hypermap(&map);
            for pointed in 0..map.n_vertices() {
                report.instances += 1;
                let outcome = constellation_one(&c2, vmap[pointed]);
                if let Err(reason) = outcome {
                    report.failures.push(Witness {
                        map: crate::maps::io::MapJson::from_map(&map).with_pointed(pointed),
                        reason,
                    });
                }
            }
        }
    }
    report
}

fn constellation_one(c2: &Hypermap, pointed: usize) -> Result<(), String> {
    // Descending mobile with certified types.
    let image =
        constellation_to_descending_mobile(c2, pointed, 2).map_err(|e| e.to_string())?;
    check_mobile_image(c2, pointed, &image)?;
    // Regular-constellation shortcut and its statement.
    let reg = constellation_to_regular(c2, pointed, 2).map_err(|e| e.to_string())?;
    let dist = &reg.labels;
    // Vertices keep their labels.
    let geodesic = c2.directed_distances(pointed).map_err(|e| e.to_string())?;
    for (cv, &ev) in reg.vertex_map.iter().enumerate() {
        if dist[ev] != geodesic[cv] as i64 {
            return Err("vertex label not preserved by the shortcut".into());
        }
    }
    // Light faces map to right local maxima of label max(face) + 1.
    let (_, rmax) = labels::right_local_extrema(&reg.hypermap, dist);
    for &(light, ev) in &reg.face_to_vertex {
        if !rmax.contains(&ev) {
            return Err("face image is not a right local max".into());
        }
        let max_f = c2
            .map()
            .face_darts_ccw(light)
            .iter()
            .map(|&d| geodesic[c2.map().vertex_of(d)] as i64)
            .max()
            .unwrap();
        if dist[ev] != max_f + 1 {
            return Err("face image label is not max(face) + 1".into());
        }
    }
    // Round trip back through the erasure of the wrap edges.
    let back = regular_to_constellation(&reg.hypermap, reg.pointed, 2)
        .map_err(|e| e.to_string())?;
    let c = c2.canonical_darts().next().ok_or("no canonical dart")?;
    let geo: Vec<i64> = geodesic.iter().map(|&d| d as i64).collect();
    let back_geo = back
        .hypermap
        .directed_distances(back.pointed)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|&d| d as i64)
        .collect::<Vec<_>>();
    // Compare as unrooted pointed objects through canonical forms over all
    // rootings (the erasure does not carry a dart transport).
    let enc1: std::collections::BTreeSet<String> = c2
        .canonical_darts()
        .map(|d| c2.encode_rooted(d, Some(&geo), Some(pointed)))
        .collect();
    let enc2: std::collections::BTreeSet<String> = back
        .hypermap
        .canonical_darts()
        .map(|d| back.hypermap.encode_rooted(d, Some(&back_geo), Some(back.pointed)))
        .collect();
    let _ = c;
    if enc1 != enc2 {
        return Err("regular-constellation round trip changed the object".into());
    }
    Ok(())
}

/// Claim-level edge/triple counts for general hypermaps: edges of type
/// `(i-1, i)` against counterclockwise contour triples `(i, i+1, i+2)`.
pub fn triples_suite(max_edges: usize) -> SuiteReport {
    let mut report = SuiteReport::new("triples");
    for n in 1..=max_edges {
        let classes = enumerate_rooted(n, Constraints { eulerian: true, ..Default::default() })
            .expect("within caps");
        for class in classes {
            let h = class.hypermap();
            for pointed in 0..h.map().n_vertices() {
                report.instances += 1;
                let outcome = (|| {
                    let rep = edge_triple_report(&h, pointed).map_err(|e| e.to_string())?;
                    let levels: std::collections::BTreeSet<i64> = rep
                        .edges_by_level
                        .keys()
                        .chain(rep.triples_by_level.keys())
                        .copied()
                        .collect();
                    for i in levels {
                        let e = rep.edges_by_level.get(&i).map_or(0, |v| v.len());
                        let t = rep.triples_by_level.get(&i).map_or(0, |v| v.len());
                        if e != t {
                            return Err(format!(
                                "level {}: {} edges vs {} triples",
                                i, e, t
                            ));
                        }
                    }
                    Ok(())
                })();
                if let Err(reason) = outcome {
                    report.failures.push(Witness {
                        map: crate::maps::io::MapJson::from_hypermap(&h).with_pointed(pointed),
                        reason,
                    });
                }
            }
        }
    }
    report
}
