//! Distance profiling of pointed rooted classes.

use super::{enumerate_rooted, Constraints, OracleError, RootedBrins};
use std::collections::BTreeMap;

/// Root classification of a pointed rooted object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RootType {
    /// `(tail distance, head distance)` of the root edge.
    Pair(u32, u32),
    /// Counterclockwise type of the root face read from the root edge's
    /// endpoint (triangular dark faces).
    Triple(u32, u32, u32),
}

impl RootType {
    pub fn key(&self) -> String {
        match self {
            RootType::Pair(a, b) => format!("({},{})", a, b),
            RootType::Triple(a, b, c) => format!("({},{},{})", a, b, c),
        }
    }
}

/// Aggregated pointed-rooted counts for one size.
#[derive(Debug, Clone, Default)]
pub struct ProfileTable {
    /// Count of pointed rooted objects per root-edge pair type.
    pub pair_counts: BTreeMap<(u32, u32), u64>,
    /// Count per root-face counterclockwise type (triangular families).
    pub triple_counts: BTreeMap<(u32, u32, u32), u64>,
    /// Total pointed rooted objects.
    pub total: u64,
}

impl ProfileTable {
    /// Pointed rooted count with root type `(j-1, j)` for `j <= i`.
    pub fn cumulative_down_up(&self, i: u32) -> u64 {
        (1..=i).map(|j| self.pair_counts.get(&(j - 1, j)).copied().unwrap_or(0)).sum()
    }

    /// Pointed rooted count with root type `(j, j)` for `j <= i`.
    pub fn cumulative_level(&self, i: u32) -> u64 {
        (0..=i).map(|j| self.pair_counts.get(&(j, j)).copied().unwrap_or(0)).sum()
    }

    /// Pointed rooted count whose root-face type is `(i1-m, i2-m, i3-m)` for
    /// some shift `m >= 0`.
    pub fn cumulative_triple(&self, i1: u32, i2: u32, i3: u32) -> u64 {
        let min = i1.min(i2).min(i3);
        (0..=min)
            .map(|m| self.triple_counts.get(&(i1 - m, i2 - m, i3 - m)).copied().unwrap_or(0))
            .sum()
    }
}

/// Classify every (pointed, rooted) pair over an enumerated family. The
/// root brin's tail and head distances give the pair type; for triangular
/// dark faces the root-face type is also recorded.
pub fn pointed_rooted_profile(
    n: usize,
    constraints: Constraints,
    triples: bool,
) -> Result<ProfileTable, OracleError> {
    let classes = enumerate_rooted(n, constraints)?;
    let mut table = ProfileTable::default();
    for class in &classes {
        profile_class_counts(class, triples, &mut table);
    }
    Ok(table)
}

/// Profile a single class into a table (used by the `enumerate` command).
pub fn profile_class_counts(class: &RootedBrins, triples: bool, table: &mut ProfileTable) {
    let h = class.hypermap();
    // Brin b realizes canonical dart 2b; the root brin is 0.
    let m = h.map();
    let tail = m.vertex_of(0);
    let head = m.head_of(0);
    for pointed in 0..m.n_vertices() {
        let dist = h.directed_distances(pointed).expect("hypermaps are strongly connected");
        *table.pair_counts.entry((dist[tail], dist[head])).or_insert(0) += 1;
        table.total += 1;
        if triples {
            // Counterclockwise root-face type from the root edge's endpoint:
            // (head, tail, head of x(root)).
            let third = m.head_of(2 * class.x[0]);
            *table
                .triple_counts
                .entry((dist[head], dist[tail], dist[third]))
                .or_insert(0) += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_edge_general_profile() {
        let t = pointed_rooted_profile(1, Constraints::default(), false).unwrap();
        // Loop pointed: type (0,0); bridge pointed twice: (0,1) and (1,0).
        assert_eq!(t.total, 3);
        assert_eq!(t.pair_counts.get(&(0, 0)), Some(&1));
        assert_eq!(t.pair_counts.get(&(0, 1)), Some(&1));
        assert_eq!(t.pair_counts.get(&(1, 0)), Some(&1));
    }

    #[test]
    fn totals_match_known_counts() {
        // Pointed rooted maps: 3, 18, 135 for n = 1, 2, 3.
        for (n, expect) in [(1u32, 3u64), (2, 18), (3, 135)] {
            let t = pointed_rooted_profile(n as usize, Constraints::default(), false).unwrap();
            assert_eq!(t.total, expect, "n = {}", n);
        }
    }
}
