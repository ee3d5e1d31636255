//! Exhaustive labelled objects for the bijection round-trip suites.

use super::{enumerate_rooted, Constraints, OracleError};
use crate::bijections::{LabelledHypermap, LabelledMap};
use crate::labels;
use crate::maps::Hypermap;

/// All rooted suitably labelled maps with `n` edges and minimum label 0:
/// every rooted map class paired with every suitable labelling, normalized
/// to minimum 0. The root is dart 0 of each map.
pub fn enumerate_labelled_suitable(n: usize) -> Result<Vec<LabelledMap>, OracleError> {
    let classes = enumerate_rooted(n, Constraints { bipartite: true, ..Default::default() })?;
    let mut out = Vec::new();
    for class in &classes {
        let map = class.map();
        // Assign labels by depth-first search over vertices; each edge
        // carries a free sign, cycles must close consistently.
        let nv = map.n_vertices();
        let mut labels = vec![i64::MIN; nv];
        labels[0] = 0;
        // Spanning tree via BFS; record tree edges and check edges.
        let mut tree: Vec<(usize, usize)> = Vec::new(); // (parent vertex, child vertex)
        let mut seen = vec![false; nv];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        let mut check_edges: Vec<(usize, usize)> = Vec::new();
        while let Some(v) = queue.pop_front() {
            for &d in map.vertex_darts_ccw(v) {
                let w = map.head_of(d);
                if !seen[w] {
                    seen[w] = true;
                    tree.push((v, w));
                    queue.push_back(w);
                } else if d < map.alpha(d) {
                    check_edges.push((v, w));
                }
            }
        }
        let k = tree.len();
        for mask in 0..(1u32 << k) {
            for (i, &(p, c)) in tree.iter().enumerate() {
                labels[c] = labels[p] + if mask >> i & 1 == 1 { 1 } else { -1 };
            }
            if check_edges.iter().any(|&(a, b)| (labels[a] - labels[b]).abs() != 1) {
                continue;
            }
            let normalized = labels::normalize_min_zero(&labels);
            out.push(LabelledMap::new(map.clone(), normalized).expect("suitable by construction"));
        }
    }
    Ok(out)
}

/// All rooted well-labelled hypermaps with `n` edges whose minimum label is
/// exactly 1 (the image of the minimum-0 suitable maps under the opening).
/// Roots range over all darts-per-class exactly once via the brin root plus
/// an orientation bit, realized here by rooting the rebuilt hypermap at
/// both darts of edge 0.
pub fn enumerate_well_labelled_hypermaps(
    n: usize,
) -> Result<Vec<(LabelledHypermap, usize)>, OracleError> {
    let classes = enumerate_rooted(n, Constraints { eulerian: true, ..Default::default() })?;
    let mut out = Vec::new();
    for class in &classes {
        let h = class.hypermap();
        let nv = h.map().n_vertices();
        // Labels in [1, 1 + n] suffice: along any canonical path labels drop
        // by at most one per edge, and the minimum is 1.
        let hi = 1 + n as i64;
        let mut labels = vec![1i64; nv];
        loop {
            if labels.iter().min() == Some(&1) && labels_well(&h, &labels) {
                for root in [0usize, 1] {
                    out.push((
                        LabelledHypermap { hypermap: h.clone(), labels: labels.clone() },
                        root,
                    ));
                }
            }
            // Odometer.
            let mut i = 0;
            loop {
                if i == nv {
                    break;
                }
                labels[i] += 1;
                if labels[i] <= hi {
                    break;
                }
                labels[i] = 1;
                i += 1;
            }
            if i == nv {
                break;
            }
        }
    }
    Ok(out)
}

fn labels_well(h: &Hypermap, labels: &[i64]) -> bool {
    labels::validate_well_labelled(h, labels).unwrap_or(false)
}
