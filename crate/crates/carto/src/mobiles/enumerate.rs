//! Exhaustive enumeration of planted mobiles.

use super::{BlackNode, Flavor, Mobile, MobileError, WhiteNode};
use crate::labels::CyclicSequence;

/// Default size caps per black degree (exhaustive enumeration only).
fn size_cap(p: usize) -> usize {
    match p {
        2 => 8,
        3 => 5,
        _ => 4,
    }
}

/// The label tuples allowed for the non-parent neighbors of a black vertex
/// whose parent is labelled `parent`: the cw-type must be Łukasiewicz (and
/// descending for descending flavors) with all labels positive.
pub(crate) fn allowed_child_tuples(parent: i64, p: usize, descending: bool) -> Vec<Vec<i64>> {
    fn rec(
        parent: i64,
        pos: usize,
        tuple: &mut Vec<i64>,
        descending: bool,
        out: &mut Vec<Vec<i64>>,
    ) {
        let k = tuple.len();
        if pos == k {
            let mut t = vec![parent];
            t.extend_from_slice(tuple);
            let seq = CyclicSequence::new(t).unwrap();
            if seq.is_lukasiewicz() && (!descending || seq.is_descending()) {
                out.push(tuple.clone());
            }
            return;
        }
        let prev = if pos == 0 { parent } else { tuple[pos - 1] };
        // Later entries can each recover one unit before closing on parent.
        let hi = parent + (k - pos) as i64;
        for v in (prev - 1).max(1)..=hi {
            tuple[pos] = v;
            rec(parent, pos + 1, tuple, descending, out);
        }
    }
    let mut out = Vec::new();
    if p >= 2 {
        let mut tuple = vec![0i64; p - 1];
        rec(parent, 0, &mut tuple, descending, &mut out);
    }
    out
}

/// Exhaustive, duplicate-free list of planted mobiles with `n_black` black
/// vertices and the given root label. `flavor.black_degree` must be set.
pub fn enumerate(
    flavor: Flavor,
    n_black: usize,
    root_label: i64,
) -> Result<Vec<Mobile>, MobileError> {
    let p = flavor.black_degree.expect("exhaustive enumeration requires a fixed black degree");
    if n_black > size_cap(p) {
        return Err(MobileError::ResourceCap(format!(
            "n_black = {} exceeds the enumeration cap {} for p = {}",
            n_black,
            size_cap(p),
            p
        )));
    }
    if root_label < 1 {
        return Ok(Vec::new());
    }
    let seqs = child_sequences(root_label, n_black, p, flavor.descending);
    let mut mobiles: Vec<Mobile> =
        seqs.into_iter().map(|children| Mobile { root_label, children }).collect();
    if !flavor.floating {
        mobiles.retain(|m| m.min_label() == 1);
    }
    Ok(mobiles)
}

/// All ordered sequences of black subtrees below a white vertex labelled
/// `label`, with `n` black vertices in total.
fn child_sequences(label: i64, n: usize, p: usize, descending: bool) -> Vec<Vec<BlackNode>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for tuple in allowed_child_tuples(label, p, descending) {
        // The first black child consumes one black plus its white subtrees.
        for (subtrees, used) in white_subtree_options(&tuple, n - 1, p, descending) {
            let first = BlackNode { children: subtrees };
            for rest in child_sequences(label, n - 1 - used, p, descending) {
                let mut children = Vec::with_capacity(1 + rest.len());
                children.push(first.clone());
                children.extend(rest);
                out.push(children);
            }
        }
    }
    out
}

/// All ways to grow subtrees below the white children of one black vertex
/// (labels given), using at most `budget` further black vertices; each
/// option is returned with the number of blacks it used.
fn white_subtree_options(
    labels: &[i64],
    budget: usize,
    p: usize,
    descending: bool,
) -> Vec<(Vec<WhiteNode>, usize)> {
    let Some((&first, rest)) = labels.split_first() else {
        return vec![(Vec::new(), 0)];
    };
    let mut out = Vec::new();
    for size in 0..=budget {
        for seq in child_sequences(first, size, p, descending) {
            let node = WhiteNode { label: first, children: seq };
            for (tail, used) in white_subtree_options(rest, budget - size, p, descending) {
                let mut v = Vec::with_capacity(1 + tail.len());
                v.push(node.clone());
                v.extend(tail);
                out.push((v, size + used));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn one_black_floating_root_one() {
        // Child label 1 or 2; label 0 is forbidden by floating positivity.
        let ms = enumerate(Flavor::p_mobile(2, true), 1, 1).unwrap();
        assert_eq!(ms.len(), 2);
        let mut labels: Vec<i64> =
            ms.iter().map(|m| m.children[0].children[0].label).collect();
        labels.sort_unstable();
        assert_eq!(labels, vec![1, 2]);
    }

    #[test]
    fn zero_blacks_is_the_bare_root() {
        let ms = enumerate(Flavor::p_mobile(2, true), 0, 1).unwrap();
        assert_eq!(ms, vec![Mobile::bare(1)]);
    }

    #[test]
    fn descending_one_black() {
        // Only the (1,2)-type neighbor is allowed.
        let ms = enumerate(Flavor::p_descending(2, true), 1, 1).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].children[0].children[0].label, 2);
    }

    #[test]
    fn enumeration_is_duplicate_free_and_valid() {
        for (p, descending, n) in [(2, false, 4), (2, true, 4), (3, false, 3), (3, true, 3)] {
            let flavor =
                Flavor { black_degree: Some(p), descending, floating: true };
            for root in 1..=3 {
                let ms = enumerate(flavor, n, root).unwrap();
                let set: HashSet<String> = ms.iter().map(|m| m.encode()).collect();
                assert_eq!(set.len(), ms.len(), "duplicates at p={} n={} root={}", p, n, root);
                for m in &ms {
                    m.validate(flavor).unwrap();
                    assert_eq!(m.black_count(), n);
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate(Flavor::p_mobile(2, true), 9, 1),
            Err(MobileError::ResourceCap(_))
        ));
    }

    #[test]
    fn tuples_match_the_recurrences() {
        // p = 2 general: children in {l-1, l, l+1}.
        let t = allowed_child_tuples(5, 2, false);
        assert_eq!(t, vec![vec![4], vec![5], vec![6]]);
        // p = 2 descending: children in {l-1, l+1}.
        let t = allowed_child_tuples(5, 2, true);
        assert_eq!(t, vec![vec![4], vec![6]]);
        // p = 3 general: the ten pair kinds from the trivalent recurrence.
        let t = allowed_child_tuples(5, 3, false);
        let expect: Vec<Vec<i64>> = vec![
            vec![4, 3],
            vec![4, 4],
            vec![4, 5],
            vec![4, 6],
            vec![5, 4],
            vec![5, 5],
            vec![5, 6],
            vec![6, 5],
            vec![6, 6],
            vec![7, 6],
        ];
        let mut got = t.clone();
        got.sort();
        let mut want = expect.clone();
        want.sort();
        assert_eq!(got, want);
        // p = 3 descending: exactly three pair kinds.
        let t = allowed_child_tuples(5, 3, true);
        let mut got = t.clone();
        got.sort();
        assert_eq!(got, vec![vec![4, 3], vec![4, 6], vec![7, 6]]);
    }
}
