//! Uniform sampling of pointed rooted maps through the mobile bijection,
//! checked against the enumerated classes by a chi-square test.

use super::{enumerate_rooted, Constraints, OracleError};
use crate::bijections::{mobile_to_pointed_hypermap, pointed_hypermap_to_mobile};
use crate::maps::DartMap;
use crate::mobiles::{BlackNode, CountTable, Flavor, Mobile, SplitMix64, WhiteNode};
use std::collections::BTreeMap;

/// Outcome of the sampler goodness-of-fit check.
#[derive(Debug, Clone)]
pub struct SamplerReport {
    pub n: usize,
    pub trials: u64,
    pub classes: usize,
    pub chi_square: f64,
    pub p_value: f64,
    pub class_counts: BTreeMap<String, u64>,
}

/// Draw `trials` pointed rooted maps with `n` edges via mobiles and the
/// distance-preserving transport, classify them into the oracle's canonical
/// classes, and report the chi-square statistic against uniformity.
pub fn sampler_check(n: usize, trials: u64, seed: u64) -> Result<SamplerReport, OracleError> {
    // Expected classes: every (rooted class, pointed vertex) pair.
    let mut expected = Vec::new();
    for class in enumerate_rooted(n, Constraints::default())? {
        let map = class.map();
        for pointed in 0..map.n_vertices() {
            expected.push(encode_pointed_rooted(&map, 0, pointed));
        }
    }
    expected.sort();
    let k = expected.len();
    let mut counts: BTreeMap<String, u64> = expected.iter().map(|e| (e.clone(), 0)).collect();

    let mut rng = SplitMix64::new(seed);
    let i = n as i64;
    let flavor = Flavor::p_mobile(2, true);
    let mut table = CountTable::load_or_build(flavor, i + 1, n);
    // Marked-black decompositions at the stabilized level i: kinds A and B
    // mark a black of type (i, i+1) with one of its two half-edges, kind C
    // marks a black of type (i+1, i+1) with an ordered pair of subtrees.
    let pair_total = |a: i64, b: i64, table: &mut CountTable| -> u128 {
        (0..n).map(|n1| table.count(a, n1) * table.count(b, n - 1 - n1)).sum()
    };
    let t_a = pair_total(i, i + 1, &mut table);
    let t_c = pair_total(i + 1, i + 1, &mut table);
    let total = 2 * t_a + t_c;

    for _ in 0..trials {
        let r = rng.below(total);
        let (la, lb, anti) = if r < t_a {
            (i, i + 1, false)
        } else if r < 2 * t_a {
            (i, i + 1, true)
        } else {
            (i + 1, i + 1, false)
        };
        // Split sizes proportionally, then sample each planted mobile.
        let block_total = if la == i { t_a } else { t_c };
        let mut s = rng.below(block_total);
        let mut split = 0;
        loop {
            let block = table.count(la, split) * table.count(lb, n - 1 - split);
            if s < block {
                break;
            }
            s -= block;
            split += 1;
        }
        let m1 = table.sample(la, split, &mut rng).expect("counted above");
        let m2 = table.sample(lb, n - 1 - split, &mut rng).expect("counted above");
        let level = la == lb;
        let first_low = !level || m1.encode() <= m2.encode();
        let glued = glue_marked_black(&m1, &m2);
        let shifted = glued.shifted(1 - glued.min_label());
        let (map, root, pointed) = transport_marked(&shifted, anti, first_low);
        let key = encode_pointed_rooted(&map, root, pointed);
        match counts.get_mut(&key) {
            Some(c) => *c += 1,
            None => panic!("sampled unknown class {}", key),
        }
    }

    let e = trials as f64 / k as f64;
    let chi_square: f64 =
        counts.values().map(|&o| (o as f64 - e) * (o as f64 - e) / e).sum();
    let p_value = chi_square_p_value(k as f64 - 1.0, chi_square);
    Ok(SamplerReport { n, trials, classes: k, chi_square, p_value, class_counts: counts })
}

/// Attach `m2` below a new bivalent black vertex placed as the first child
/// of `m1`'s root: the marked black of the decomposition.
fn glue_marked_black(m1: &Mobile, m2: &Mobile) -> Mobile {
    let mut children = vec![BlackNode {
        children: vec![WhiteNode { label: m2.root_label, children: m2.children.clone() }],
    }];
    children.extend(m1.children.iter().cloned());
    Mobile { root_label: m1.root_label, children }
}

/// Transport a mobile with a marked first-child black vertex to a pointed
/// rooted map. The marked black's dark face (through the face
/// correspondence of the forward bijection) is the root edge's 2-gon; the
/// side is chosen by distance for ascending marks and by the `first_low`
/// bit for level marks.
fn transport_marked(mobile: &Mobile, reverse: bool, first_low: bool) -> (DartMap, usize, usize) {
    let image = mobile_to_pointed_hypermap(mobile).expect("valid mobile");
    let h = &image.hypermap;
    let forward =
        pointed_hypermap_to_mobile(h, image.pointed).expect("round trip is total");
    // Identify the marked black in the forward tree: the image of the root
    // corner (tree dart 0) is the white side of its parent edge.
    let td = forward.dart_to_tree[image.tree_dart_to_hdart[0]];
    let bstar = forward.tree.vertex_of(forward.tree.alpha(td));
    let dstar = forward
        .dark_face_to_black
        .iter()
        .find(|&&(_, b)| b == bstar)
        .map(|&(d, _)| d)
        .expect("marked black corresponds to a dark face");

    // Collapse the 2-gons into map edges.
    let brins = h.to_brins();
    let map = DartMap::new(brins.y.clone(), brins.x.clone()).expect("2-hypermap brins form a map");
    let mut brin_of_dart = vec![usize::MAX; h.map().n_darts()];
    for (b, &d) in brins.dart_of_brin.iter().enumerate() {
        brin_of_dart[d] = b;
    }
    let mut vmap = vec![usize::MAX; h.map().n_vertices()];
    for (b, &d) in brins.dart_of_brin.iter().enumerate() {
        vmap[h.map().vertex_of(d)] = map.vertex_of(b);
    }

    // The root 2-gon's two canonical darts.
    let orbit = h.map().face_darts_ccw(dstar);
    debug_assert_eq!(orbit.len(), 2);
    let c1 = h.map().alpha(orbit[0]);
    let c2 = h.map().alpha(orbit[1]);
    let dist = &forward.geodesic;
    let (t1, h1) = (dist[h.map().vertex_of(c1)], dist[h.map().head_of(c1)]);
    let root_c = if t1 == h1 {
        // Level edge: side picked by the ordered-pair bit.
        let (lo, hi) =
            if brin_of_dart[c1] < brin_of_dart[c2] { (c1, c2) } else { (c2, c1) };
        if first_low {
            lo
        } else {
            hi
        }
    } else {
        // Ascending side first; `reverse` flips to the descending side.
        let ascending = if t1 < h1 { c1 } else { c2 };
        if reverse {
            if ascending == c1 {
                c2
            } else {
                c1
            }
        } else {
            ascending
        }
    };
    (map, brin_of_dart[root_c], vmap[image.pointed])
}

/// Canonical key of a pointed rooted map.
pub(crate) fn encode_pointed_rooted(map: &DartMap, root: usize, pointed: usize) -> String {
    let (new_of, canon) = map.relabel_bfs(root);
    let pv = map
        .vertex_darts_ccw(pointed)
        .iter()
        .map(|&d| new_of[d])
        .min()
        .map(|d| canon.vertex_of(d))
        .unwrap();
    format!("{}pointed: {}\n", canon.canonical_text(), pv)
}

/// Upper regularized incomplete gamma `Q(a, x)`, the chi-square upper tail
/// for `a = dof/2`, `x = stat/2`.
pub fn chi_square_p_value(dof: f64, stat: f64) -> f64 {
    gamma_q(dof / 2.0, stat / 2.0)
}

fn ln_gamma(x: f64) -> f64 {
    // Lanczos approximation, g = 7.
    const C: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * x).sin().ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + 7.5;
    for (i, &c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

fn gamma_q(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_contfrac(a, x)
    }
}

fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut ap = a;
    for _ in 0..500 {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * 1e-15 {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

fn gamma_q_contfrac(a: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-15 {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        // Q(0.5, x) = erfc(sqrt(x)); spot values.
        assert!((chi_square_p_value(1.0, 3.841) - 0.05).abs() < 1e-3);
        assert!((chi_square_p_value(17.0, 27.587) - 0.05).abs() < 1e-3);
        assert!((chi_square_p_value(17.0, 8.672) - 0.95).abs() < 1e-3);
    }

    #[test]
    fn sampler_hits_both_classes_at_n1() {
        let report = sampler_check(1, 300, 11).unwrap();
        assert_eq!(report.classes, 3);
        assert!(report.class_counts.values().all(|&c| c > 0), "{:?}", report.class_counts);
    }

    #[test]
    fn sampler_deterministic_in_seed() {
        let a = sampler_check(1, 50, 7).unwrap();
        let b = sampler_check(1, 50, 7).unwrap();
        assert_eq!(a.class_counts, b.class_counts);
    }

    #[test]
    fn sampler_uniform_at_n2() {
        let report = sampler_check(2, 20_000, 42).unwrap();
        assert_eq!(report.classes, 18);
        assert!(
            report.p_value > 1e-3 && report.p_value < 1.0 - 1e-3,
            "chi2 = {}, p = {}",
            report.chi_square,
            report.p_value
        );
    }
}
